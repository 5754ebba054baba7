"""Static figures for the compaction experiment CSV logs."""

from .render import KINDS, RenderResult, SchemaError, render

__all__ = ["render", "RenderResult", "SchemaError", "KINDS"]

__version__ = "0.1.0"
