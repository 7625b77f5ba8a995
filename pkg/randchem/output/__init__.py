from .records import CSV_COLUMNS, OutputKind, OutputRecord, format_number, render_json

__all__ = ["CSV_COLUMNS", "OutputKind", "OutputRecord", "format_number", "render_json"]
