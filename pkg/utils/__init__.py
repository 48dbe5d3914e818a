"""Utilities package for the wall growth toolkit"""

from .validators import parse_float_list, parse_half_int, parse_kernel_point
from .suite_registry import detect_suite, get_suite_display_name, is_supported_suite
from .export import config_hash, provenance, records_to_dataframe, write_jsonl
