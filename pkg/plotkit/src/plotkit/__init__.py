"""CSV-to-image renderer for steerdemon sweep data."""

__version__ = "0.1.0"

from .render import PlotSpec, RenderResult, SchemaError, Series, read_csv, render

__all__ = [
    "PlotSpec",
    "RenderResult",
    "SchemaError",
    "Series",
    "read_csv",
    "render",
    "__version__",
]
