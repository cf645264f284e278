"""Special functions needed by the closed-form covariance routes.

Self-contained implementations: complex digamma (upward recurrence into a
Bernoulli asymptotic tail), the exponential integral Ei for negative
arguments and its principal value for positive arguments, and the real
Gamma function.  All are pure, deterministic and thread-safe.
"""

from __future__ import annotations

import math

from ._backend import impl
from .errors import DomainError, PoleError

__all__ = ["digamma", "exp_integral", "gamma_fn", "EULER_GAMMA"]

EULER_GAMMA = 0.5772156649015329

_POLE_TOL = 1e-12


def digamma(z: complex | float) -> complex | float:
    """psi(z) to at least 12 significant digits.

    Real input yields a real result; complex input a complex one.
    Raises :class:`PoleError` within 1e-12 of a non-positive integer.
    """
    zc = complex(z)
    if not (math.isfinite(zc.real) and math.isfinite(zc.imag)):
        raise DomainError("digamma argument must be finite")
    if abs(zc.imag) <= _POLE_TOL:
        nearest = round(zc.real)
        if nearest <= 0 and abs(zc.real - nearest) <= _POLE_TOL:
            raise PoleError(f"digamma pole at non-positive integer {nearest}")
    out = impl.digamma(zc)
    if isinstance(z, complex):
        return out
    return out.real


def exp_integral(x: float, kind: str) -> float:
    """Exponential integral, to at least 10 significant digits.

    kind="negative_arg" evaluates Ei(x) for x < 0; kind="principal_value"
    evaluates the principal value Ei-bar(x) for x > 0.  The logarithmic
    singularity at x = 0 is a domain error for both kinds.
    """
    if not math.isfinite(x):
        raise DomainError("exp_integral argument must be finite")
    if x == 0.0:
        raise DomainError("exponential integral has a logarithmic singularity at 0")
    if kind == "negative_arg":
        if x > 0.0:
            raise DomainError("kind='negative_arg' requires x < 0")
        return impl.ei_neg(x)
    if kind == "principal_value":
        if x < 0.0:
            raise DomainError("kind='principal_value' requires x > 0")
        if x > 700.0:
            raise DomainError("Ei-bar overflows double precision for x > 700")
        return impl.eibar_pos(x)
    raise DomainError(f"unknown exp_integral kind {kind!r}")


def gamma_fn(s: float) -> float:
    """Euler Gamma(s) for s > 0, to at least 12 significant digits."""
    if not (math.isfinite(s) and s > 0.0):
        raise DomainError("gamma_fn requires a finite argument s > 0")
    if s > 170.0:
        raise DomainError("Gamma(s) overflows double precision for s > 170")
    return impl.gamma_real(s)
