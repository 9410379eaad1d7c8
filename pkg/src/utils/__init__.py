from .formatter import format_parameter_table, format_score_table
from .io import read_csv, read_json, write_csv, write_json

__all__ = ["format_score_table", "format_parameter_table", "read_csv", "read_json", "write_csv", "write_json"]
