"""
Main entry point for hedgemap

Commands:
- rho / optset: risk measure and optimal payoff set of a position
- probe-lsc / probe-selection: stability probes of the optimal set mapping
- verify: seeded certification of both canonical models
- mesh: boundary meshes and profile outlines as CSV
"""

import os
import sys

from dotenv import load_dotenv

# Add project root to path for imports
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from src.cli import main as cli_main
from src.config import load_settings
from src.observability import setup_logging

# Load environment variables
load_dotenv()


def main() -> int:
    """Configure logging from HEDGEMAP_* settings and dispatch the command."""
    settings = load_settings()
    if settings.log_file:
        os.makedirs(os.path.dirname(os.path.abspath(settings.log_file)), exist_ok=True)
    setup_logging(level=settings.log_level, json_output=settings.json_logs, log_file=settings.log_file)
    return cli_main()


if __name__ == "__main__":
    sys.exit(main())
