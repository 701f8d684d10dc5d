# ui/__init__.py

from .entrypoint import build_parser, main

__all__ = ["build_parser", "main"]
