"""Flux and charge quantization checks on the nonintegrable phase.

The phase of a flux is e Phi / (hbar c); it is quantized when it lies within
``tolerance`` of 2 pi n for an integer n.  n = 0 is reported but flagged as
trivial.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spacetime import NATURAL, Constants

DEFAULT_TOLERANCE = 1e-6


@dataclass(frozen=True)
class QuantizationReport:
    phase: float
    n_nearest: int
    residual: float
    quantized: bool
    tolerance: float
    trivial: bool


def phase_report(phase: float, tolerance: float = DEFAULT_TOLERANCE) -> QuantizationReport:
    """Report for a phase already in radians."""
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    phase = float(phase)
    n = int(np.rint(phase / (2 * np.pi)))
    residual = abs(phase - 2 * np.pi * n)
    return QuantizationReport(phase, n, residual, residual <= tolerance, tolerance, n == 0)


def check_phase(flux, constants: Constants = NATURAL, tolerance: float = DEFAULT_TOLERANCE) -> QuantizationReport:
    """Quantization report for a flux (a FluxResult or a plain number)."""
    value = getattr(flux, "value", flux)
    return phase_report(constants.e * float(value) / constants.hbar_c, tolerance)


def dirac_condition(e: float, g: float, constants: Constants = NATURAL,
                    tolerance: float = DEFAULT_TOLERANCE) -> QuantizationReport:
    """Phase of the closed-sphere monopole flux 4 pi g seen by charge e.

    Quantized exactly when 2 e g / (hbar c) is an integer.
    """
    return phase_report(e * 4 * np.pi * g / constants.hbar_c, tolerance)


def scan_charges(g: float, e_values, constants: Constants = NATURAL,
                 tolerance: float = DEFAULT_TOLERANCE) -> list[QuantizationReport]:
    e_values = list(e_values)
    if not e_values:
        raise ValueError("scan_charges needs at least one charge")
    return [dirac_condition(e, g, constants, tolerance) for e in e_values]
