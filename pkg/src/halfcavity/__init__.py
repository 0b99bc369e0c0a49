"""Emission dynamics and early-time non-Markovianity of an atom in front of a mirror."""

from .analytic import PolyAnalysis, abs2_derivative, amplitude_series, amplitude_window2, poly_analysis
from .channel import Probe, QubitState, WitnessReport, blp_witness, evolve, trace_distance
from .classifier import (
    Condition,
    RegionMap,
    ThresholdPoint,
    Verdict,
    classify,
    classify_bruteforce,
    region_map,
    threshold_at,
)
from .core import HalfCavityError, Params, TimeGrid, dimensionless, validate_params
from .dde import AmplitudeTrace, IntegratorConfig, integrate, max_deviation

__all__ = [
    "AmplitudeTrace", "Condition", "HalfCavityError", "IntegratorConfig", "Params", "PolyAnalysis",
    "Probe", "QubitState", "RegionMap", "ThresholdPoint", "TimeGrid", "Verdict", "WitnessReport",
    "abs2_derivative", "amplitude_series", "amplitude_window2", "blp_witness", "classify",
    "classify_bruteforce", "dimensionless", "evolve", "integrate", "max_deviation", "poly_analysis",
    "region_map", "threshold_at", "trace_distance", "validate_params",
]
