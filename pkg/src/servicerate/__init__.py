"""Exact service rate regions of linear codes over finite fields, with outer bounds and a CLI."""

__version__ = "0.1.0"
