"""
CLI - argparse front end and mesh export
"""

from .commands import (
    build_parser, main, parse_point, COMMANDS,
    EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE, EXIT_INFEASIBLE,
)
from .mesh import boundary_mesh, profile_outline, write_mesh, mesh_paths

__all__ = [
    'build_parser',
    'main',
    'parse_point',
    'COMMANDS',
    'EXIT_OK',
    'EXIT_VERIFY_FAILED',
    'EXIT_USAGE',
    'EXIT_INFEASIBLE',
    'boundary_mesh',
    'profile_outline',
    'write_mesh',
    'mesh_paths',
]
