"""Stability and instability experiments for perturbed linear Hamiltonians.

The package is split like a small service: `core` holds the computational
domain, `services` wires configurations to it and `cli` is the batch front
door.
"""

__version__ = "0.1.0"
