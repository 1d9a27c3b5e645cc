"""JSON-able views of the result objects.

Exact rationals are emitted as "num/den" strings next to a float mirror,
never as lossy floats alone.  Timing fields are stripped unless requested so
identical run configurations serialize to identical bytes.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import QSqrt
from .euler import AsymptoticBreakdown
from .moments import MomentReport

TIMING_KEYS = {"seconds", "elapsed_seconds"}


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def qsqrt_view(v: QSqrt) -> dict:
    return {
        "a": frac_str(v.a),
        "b": frac_str(v.b),
        "q": v.q,
        "float": v.to_float(),
        "text": f"{frac_str(v.a)} + {frac_str(v.b)}*sqrt({v.q})",
    }


def breakdown_view(bd: AsymptoticBreakdown) -> dict:
    return {
        "q": bd.q,
        "g": bd.g,
        "cutoff_degree": bd.cutoff,
        "sign_toggle": bd.sign_toggle,
        "T1": bd.T1,
        "T2": bd.T2,
        "T3": bd.T3,
        "T4": bd.T4,
        "total": bd.total,
        "P1": bd.P1,
        "PlogP": bd.PlogP,
        "zetaA_half": qsqrt_view(bd.zetaA_half),
        "zetaA_2": frac_str(bd.zetaA_2),
        "zetaA_2_float": float(bd.zetaA_2),
        "C1": bd.C1,
        "C2": bd.C2,
        "C3": bd.C3,
        "C4": bd.C4,
        "R0": bd.R0,
        "R1": bd.R1,
        "T3_exponent": frac_str(bd.T3_exponent),
        "T3_exponent_float": float(bd.T3_exponent),
        "T4_exponent": frac_str(bd.T4_exponent),
        "T4_exponent_float": float(bd.T4_exponent),
    }


def moment_report_view(rep: MomentReport, timings: bool = False) -> dict:
    from . import __version__

    view = {
        "version": __version__,
        "q": rep.q,
        "g": rep.g,
        "method": rep.method,
        "workers": rep.workers,
        "cutoff_degree": rep.cutoff,
        "ensemble_size": rep.ensemble_size,
        "exact": qsqrt_view(rep.exact),
        "exact_float": rep.exact_float,
        "breakdowns": {str(t): breakdown_view(bd) for t, bd in sorted(rep.breakdowns.items())},
        "residuals": {str(t): dict(r) for t, r in sorted(rep.residuals.items())},
        "sign_resolution": rep.sign_resolution,
        "breakdown": breakdown_view(rep.breakdown),
        "winning_residuals": dict(rep.winning_residuals),
    }
    if timings:
        view["elapsed_seconds"] = rep.elapsed_seconds
    return view


def strip_timings(obj):
    if isinstance(obj, dict):
        return {k: strip_timings(v) for k, v in obj.items() if k not in TIMING_KEYS}
    if isinstance(obj, list):
        return [strip_timings(v) for v in obj]
    return obj
