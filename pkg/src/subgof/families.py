"""Parametric degree-distribution families used as null hypotheses.

Three scalar families are supported: Poisson (Erdos-Renyi limit),
scale-free (discrete power law), and exponential.  Each family is
evaluated on a finite degree support ``support_min..k_max`` and
renormalized over that support, which keeps every PMF exact on the
finite vertex sets we actually work with.  Evaluation happens in log
space so that large rate parameters do not overflow.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import gammaln, zeta
from scipy.stats import poisson as _poisson_dist

POISSON = "poisson"
SCALE_FREE = "scale-free"
EXPONENTIAL = "exponential"

# Parameter domains the estimator searches over.  Generous enough to
# cover every rate/exponent that shows up in practice with margin.
_DOMAINS = {
    POISSON: (1e-3, 500.0),
    SCALE_FREE: (1.0 + 1e-3, 10.0),
    EXPONENTIAL: (1e-4, 10.0),
}
_SUPPORT_MIN = {POISSON: 0, SCALE_FREE: 1, EXPONENTIAL: 0}

# A family's effective support ends where its CDF passes 1 - _TAIL_TOL.
_TAIL_TOL = 1e-12


@dataclass(frozen=True)
class FamilySpec:
    """A one-parameter degree-distribution family.

    Attributes:
        kind: one of ``"poisson"``, ``"scale-free"``, ``"exponential"``.
        param_domain: open interval of valid parameter values.
        support_min: smallest degree carrying mass (1 for scale-free).
        zero_truncated: if True, mass at degree 0 is removed and the
            PMF renormalized over degrees >= 1.
    """

    kind: str
    param_domain: tuple[float, float]
    support_min: int
    zero_truncated: bool = False

    @property
    def name(self) -> str:
        return self.kind

    def contains(self, theta: float) -> bool:
        lo, hi = self.param_domain
        return lo < theta < hi

    def truncated(self, zero_truncated: bool = True) -> "FamilySpec":
        return replace(self, zero_truncated=zero_truncated)


def family(name: str, zero_truncated: bool = False) -> FamilySpec:
    """Look up a family by its user-facing name (case-insensitive)."""
    key = name.strip().lower().replace("_", "-")
    if key == "scalefree":
        key = SCALE_FREE
    if key not in _DOMAINS:
        raise ValueError(
            f"unknown family {name!r}; expected one of "
            f"{POISSON!r}, {SCALE_FREE!r}, {EXPONENTIAL!r}"
        )
    return FamilySpec(
        kind=key,
        param_domain=_DOMAINS[key],
        support_min=_SUPPORT_MIN[key],
        zero_truncated=zero_truncated,
    )


@dataclass(frozen=True)
class TruncatedPmf:
    """A family PMF renormalized over the finite support 0..k_max.

    ``values[k]`` is the mass at degree k (zero below ``support_min``).
    ``normalization`` is the sum of the raw, unnormalized weights over
    the included support; for the scale-free family it converges to the
    Riemann zeta value as k_max grows.
    """

    values: np.ndarray
    support_min: int
    normalization: float

    @property
    def k_max(self) -> int:
        return len(self.values) - 1

    def cdf(self) -> np.ndarray:
        return np.cumsum(self.values)


def _check_theta(spec: FamilySpec, theta: float) -> None:
    if not np.isfinite(theta) or not spec.contains(theta):
        lo, hi = spec.param_domain
        raise ValueError(
            f"theta={theta} outside the open domain ({lo}, {hi}) "
            f"of the {spec.kind} family"
        )


@functools.lru_cache(maxsize=8)
def _log_support(k_max: int) -> np.ndarray:
    logs = np.log(np.arange(1, k_max + 1, dtype=float))
    logs.flags.writeable = False
    return logs


@functools.lru_cache(maxsize=8)
def _log_factorial(k_max: int) -> np.ndarray:
    lf = gammaln(np.arange(k_max + 1, dtype=float) + 1.0)
    lf.flags.writeable = False
    return lf


def family_pmf(spec: FamilySpec, theta: float, k_max: int) -> TruncatedPmf:
    """Evaluate the family PMF on degrees 0..k_max, renormalized.

    Zero-truncated specs have the mass at degree 0 removed before
    renormalization.  Raises ValueError for theta outside the family
    domain or k_max below the family's minimal support.
    """
    _check_theta(spec, theta)
    if k_max < spec.support_min:
        raise ValueError(
            f"k_max={k_max} below the minimal support {spec.support_min} "
            f"of the {spec.kind} family"
        )

    log_w = np.full(k_max + 1, -np.inf)
    k = np.arange(k_max + 1, dtype=float)
    if spec.kind == POISSON:
        with np.errstate(divide="ignore"):
            log_w = k * math.log(theta) - theta - _log_factorial(k_max)
    elif spec.kind == SCALE_FREE:
        log_w[1:] = -theta * _log_support(k_max)
    elif spec.kind == EXPONENTIAL:
        log_w = -theta * k
    else:  # pragma: no cover - factory prevents this
        raise ValueError(f"unknown family kind {spec.kind!r}")

    effective_min = spec.support_min
    if spec.zero_truncated:
        effective_min = max(effective_min, 1)
    if effective_min > 0:
        log_w[:effective_min] = -np.inf

    # Stable normalization: raw weights here never exceed 1 per term,
    # but a shift keeps tiny exponents accurate for large theta.
    shift = np.max(log_w)
    w = np.exp(log_w - shift)
    total = float(np.sum(w))
    values = w / total
    normalization = float(total * math.exp(shift))
    return TruncatedPmf(values=values, support_min=effective_min,
                        normalization=normalization)


def family_cdf(spec: FamilySpec, theta: float, k_max: int) -> np.ndarray:
    """Cumulative distribution of ``family_pmf`` over 0..k_max."""
    return family_pmf(spec, theta, k_max).cdf()


def _poisson_support(lam: float) -> int:
    # Start past the bulk, then walk until the survival mass drops off.
    k = int(lam + 12.0 * math.sqrt(lam) + 12.0)
    while _poisson_dist.sf(k, lam) > _TAIL_TOL:
        k = int(k * 1.5) + 1
    return k


def _scale_free_support(gamma: float, cap: int) -> int:
    total = float(zeta(gamma, 1))
    lo, hi = 1, cap
    if float(zeta(gamma, hi + 1)) / total > _TAIL_TOL:
        return cap
    while lo < hi:
        mid = (lo + hi) // 2
        if float(zeta(gamma, mid + 1)) / total > _TAIL_TOL:
            lo = mid + 1
        else:
            hi = mid
    return lo


def _exponential_support(theta: float) -> int:
    # Geometric tail: P(K > k) = exp(-theta (k + 1)).
    return max(0, math.ceil(-math.log(_TAIL_TOL) / theta) - 1)


def support_limit(spec: FamilySpec, theta: float | None = None,
                  cap: int | None = None) -> int:
    """Smallest k where the family CDF exceeds 1 - 1e-12, capped.

    With ``theta=None`` the limit is taken at the domain endpoint with
    the heaviest tail, giving a parameter-free width suitable for
    estimation problems where theta is not yet known.
    """
    if cap is not None and cap < spec.support_min:
        raise ValueError(f"cap={cap} below minimal support {spec.support_min}")
    if theta is not None:
        _check_theta(spec, theta)
    hard_cap = cap if cap is not None else 10**9
    lo, hi = spec.param_domain
    if spec.kind == POISSON:
        k = _poisson_support(hi if theta is None else theta)
    elif spec.kind == SCALE_FREE:
        k = _scale_free_support(lo if theta is None else theta, hard_cap)
    elif spec.kind == EXPONENTIAL:
        k = _exponential_support(lo if theta is None else theta)
    else:  # pragma: no cover
        raise ValueError(f"unknown family kind {spec.kind!r}")
    return max(spec.support_min, min(k, hard_cap))
