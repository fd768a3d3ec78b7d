"""Named test functions exercised by the convergence experiments."""

from __future__ import annotations

import math


def one_(t: float) -> float:
    """Constant 1."""
    return 1.0


def bbh_metric(t: float) -> float:
    """t/(1+t), the half-line metric coordinate."""
    return t / (1.0 + t)


def bbh_metric_sq(t: float) -> float:
    """(t/(1+t))^2."""
    u = t / (1.0 + t)
    return u * u


def exp_neg(t: float) -> float:
    """exp(-t)."""
    return math.exp(-t)


def sin_damped(t: float) -> float:
    """sin(t)/(1+t)."""
    return math.sin(t) / (1.0 + t)


REGISTRY = {f.__name__: f for f in (one_, bbh_metric, bbh_metric_sq, exp_neg, sin_damped)}


def registry_function(name: str):
    try:
        return REGISTRY[name]
    except KeyError:
        raise ValueError(
            f"unknown registry function {name!r}; available: {', '.join(sorted(REGISTRY))}"
        ) from None
