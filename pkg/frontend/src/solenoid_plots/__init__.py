"""Static figure rendering for solenoid-oam scenario CSV output."""

__version__ = "0.1.0"

from .render import RenderReport, SchemaError, read_result_csv, render
