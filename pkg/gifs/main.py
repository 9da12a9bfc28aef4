"""
GIFS Attractor Toolkit - Main Entry Point
"""

from gifs.cli.app import app


def main():
    app(prog_name="gifs")


if __name__ == "__main__":
    main()
