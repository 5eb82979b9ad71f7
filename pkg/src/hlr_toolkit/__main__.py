"""Main entry point for the hlr-toolkit package."""

from hlr_toolkit.main import main as cli_main

if __name__ == "__main__":
    cli_main()
