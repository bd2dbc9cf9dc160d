"""Core computational domain: arithmetic, series algebra, normal forms and flows."""
