"""
VariPro Core Module

Core functionality for VariPro: logging, the exception hierarchy and the run
configuration layer.
"""

from .logger import ProfessionalLogger
from .config import RunConfig, load_config, parse_config, resolve_thread_count

__all__ = ['ProfessionalLogger', 'RunConfig', 'load_config', 'parse_config', 'resolve_thread_count']
