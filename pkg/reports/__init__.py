"""
Reports Module

Run summary generation for VariPro commands.
"""

from .run_summary import write_run_summary

__all__ = ['write_run_summary']
