"""Service layer for the command-line front door.

Each module wires one subcommand's validated `ExperimentConfig` to the core
library and writes its output documents.
"""
