"""
Diagnostics - set distances, lower-semicontinuity and selection probes, report export
"""

from .distance import point_segment_distance, excess, segment_excess
from .sequences import SequenceSpec, constant_sequence
from .probes import (
    LscReport, SelectionReport, lsc_probe, lsc_probe_async, selection_oscillation,
    selection_oscillation_async, SINGLETON_WIDTH,
)
from .export import format_float, to_json, write_json, read_json, write_csv, read_csv, write_report

__all__ = [
    'point_segment_distance',
    'excess',
    'segment_excess',
    'SequenceSpec',
    'constant_sequence',
    'LscReport',
    'SelectionReport',
    'lsc_probe',
    'lsc_probe_async',
    'selection_oscillation',
    'selection_oscillation_async',
    'SINGLETON_WIDTH',
    'format_float',
    'to_json',
    'write_json',
    'read_json',
    'write_csv',
    'read_csv',
    'write_report',
]
