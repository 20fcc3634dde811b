"""
VariPro Shared Module

Common utilities used across all VariPro modules: CSV/JSON export with file
tracking.
"""

__version__ = "1.0.0"
__author__ = "VariPro Team"

from .data_export import DataExporter, require_written

__all__ = [
    'DataExporter', 'require_written'
]
