"""Closed-form optimal averaging weights for the star-mesh hybrid family.

The optimum is parameterized by an angle theta in (0, pi): the
asymptotic convergence factor (SLEM) equals cos(theta), every interior
path weight is exactly 1/2, and the core and bridge weights follow
closed forms in theta. Writing rp = sqrt(n) + sqrt(n-1) and
rm = sqrt(n) - sqrt(n-1) (note rp * rm = 1):

    w1(theta) = (cos(theta)*rm - rp) * sin(m*theta)
                / (rm*sin((m-1)*theta) - (L+1)*rp*sin(m*theta))

    w0(s)     = (rp - s*rm) / (k * sqrt(n*(n-1)) * rp)

and theta is a root of the transcendental equation

    (1 - cos(theta))*F(theta)
        + sqrt((n-1)/n) * (1 - (rm/rp)*cos(theta))
          * (sqrt(L)*sin(m*theta)/sin(theta) - F(theta)) = 0

with the auxiliary factor

    F(theta) = ((1+L)/sqrt(L) + (cos(theta)-1)/(sqrt(L)*w1))
               * sin(m*theta)/sin(theta)
               - sin((m-1)*theta) / (sqrt(L)*sin(theta)).

F is the ratio between the core and leaf coordinates of the optimality
certificate; it does not depend on k, so neither does the optimal
angle. The solver scans (0, pi) for sign changes, bisects each bracket
to machine precision, and certifies the root against the spectrum of
the fully assembled weight matrix before accepting it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectral import assemble_full, slem_full
from .topology import SmhkParams

__all__ = [
    "OrbitWeights",
    "AnalyticalSolution",
    "SingularEvaluationError",
    "NoRootError",
    "InconsistentRootError",
    "bridge_weight",
    "core_weight",
    "angle_factor",
    "angle_residual",
    "solve_theta",
    "analytical_weights",
]

SINGULAR_TOL = 1e-14
SCAN_INTERVALS = 4096
RESIDUAL_TOL = 1e-12
CONSISTENCY_TOL = 1e-8


class SingularEvaluationError(ValueError):
    """A closed-form evaluation hit a vanishing denominator."""


class NoRootError(RuntimeError):
    """The scan of (0, pi) found no sign change of the angle residual."""


class InconsistentRootError(RuntimeError):
    """No residual root matched the spectrum of the assembled matrix."""


@dataclass(frozen=True)
class OrbitWeights:
    """One weight per edge orbit: values[0] on the core edges,
    values[q] on the depth-q path edges."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise ValueError("orbit weights must be non-empty")
        if any(not math.isfinite(v) for v in vals):
            raise ValueError(f"orbit weights must be finite: {vals}")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, q: int) -> float:
        return self.values[q]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.values)


@dataclass(frozen=True)
class AnalyticalSolution:
    """Certified optimum: orbit weights, the angle theta, the SLEM
    cos(theta), and the residual of the angle equation at the root."""

    weights: OrbitWeights
    theta: float
    slem: float
    residual: float


def _radical_split(n: int) -> tuple[float, float]:
    root_n = math.sqrt(n)
    root_n1 = math.sqrt(n - 1)
    return root_n + root_n1, root_n - root_n1


def _bridge_parts(params: SmhkParams, theta):
    """Numerator and denominator of the bridge-weight closed form.

    Vector-safe in theta; callers deal with vanishing denominators.
    """
    rp, rm = _radical_split(params.n)
    m, L = params.m, params.L
    s = np.cos(theta)
    num = (s * rm - rp) * np.sin(m * theta)
    den = rm * np.sin((m - 1) * theta) - (L + 1) * rp * np.sin(m * theta)
    return num, den


def bridge_weight(params: SmhkParams, theta: float) -> float:
    """Optimal weight on the orbit-1 bridge edges at angle theta.

    For m = 1 the first denominator term vanishes and the value reduces
    to (rp - cos(theta)*rm) / ((L+1)*rp). Raises SingularEvaluationError
    when the denominator magnitude falls below 1e-14.
    """
    num, den = _bridge_parts(params, float(theta))
    den = float(den)
    if not math.isfinite(den) or abs(den) < SINGULAR_TOL:
        raise SingularEvaluationError(
            f"bridge weight denominator vanishes at theta={theta!r}"
        )
    return float(num) / den


def core_weight(params: SmhkParams, s: float) -> float:
    """Optimal weight on the orbit-0 core edges at spectral level s.

    Declines linearly in s and scales as 1/k, which is what makes the
    SLEM independent of the number of stars per set.
    """
    rp, rm = _radical_split(params.n)
    n, k = params.n, params.k
    return (rp - float(s) * rm) / (k * math.sqrt(n * (n - 1)) * rp)


def _factor(params: SmhkParams, theta):
    """Auxiliary factor of the angle equation (vector-safe in theta)."""
    m, L = params.m, params.L
    s = np.cos(theta)
    num, den = _bridge_parts(params, theta)
    w1 = num / den
    root_l = math.sqrt(L)
    return (
        ((1 + L) / root_l + (s - 1.0) / (root_l * w1)) * np.sin(m * theta)
        - np.sin((m - 1) * theta) / root_l
    ) / np.sin(theta)


def _residual(params: SmhkParams, theta):
    """Left-hand side of the angle equation (vector-safe in theta)."""
    n, L, m = params.n, params.L, params.m
    rp, rm = _radical_split(n)
    s = np.cos(theta)
    f = _factor(params, theta)
    contraction = rm / rp
    tail = math.sqrt((n - 1) / n) * (1.0 - contraction * s) * (
        math.sqrt(L) * np.sin(m * theta) / np.sin(theta) - f
    )
    return (1.0 - s) * f + tail


def angle_factor(params: SmhkParams, theta: float) -> float:
    """Auxiliary factor of the angle equation at a scalar theta.

    Ratio between the core and leaf coordinates of the optimality
    certificate; independent of k. Singular where sin(theta) or the
    bridge weight vanishes.
    """
    theta = float(theta)
    if abs(math.sin(theta)) < SINGULAR_TOL:
        raise SingularEvaluationError(f"sin(theta) vanishes at theta={theta!r}")
    w1 = bridge_weight(params, theta)
    if abs(w1) < SINGULAR_TOL:
        raise SingularEvaluationError(f"bridge weight vanishes at theta={theta!r}")
    return float(_factor(params, theta))


def angle_residual(params: SmhkParams, theta: float) -> float:
    """Left-hand side of the angle equation at a scalar theta.

    Zero exactly at the candidate optima; independent of k.
    """
    theta = float(theta)
    if abs(math.sin(theta)) < SINGULAR_TOL:
        raise SingularEvaluationError(f"sin(theta) vanishes at theta={theta!r}")
    w1 = bridge_weight(params, theta)
    if abs(w1) < SINGULAR_TOL:
        raise SingularEvaluationError(f"bridge weight vanishes at theta={theta!r}")
    return float(_residual(params, theta))


def _residual_quiet(params: SmhkParams, theta: float) -> float:
    """Residual evaluation that reports singular points as nan."""
    with np.errstate(all="ignore"):
        return float(_residual(params, theta))


def _bisect(params: SmhkParams, lo: float, hi: float, flo: float, fhi: float):
    """Drive a sign-change bracket to floating-point collapse.

    Returns the endpoint with the smaller residual magnitude, or None
    when a non-finite evaluation shows the bracket straddles a pole.
    """
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fmid = _residual_quiet(params, mid)
        if not math.isfinite(fmid):
            return None
        if fmid == 0.0:
            return mid
        if (flo < 0.0) == (fmid < 0.0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    return lo if abs(flo) <= abs(fhi) else hi


def _weight_vector(params: SmhkParams, theta: float) -> OrbitWeights:
    s = math.cos(theta)
    values = (core_weight(params, s), bridge_weight(params, theta))
    return OrbitWeights(values + (0.5,) * (params.m - 1))


def solve_theta(
    params: SmhkParams,
    *,
    intervals: int = SCAN_INTERVALS,
    residual_tol: float = RESIDUAL_TOL,
    consistency_tol: float = CONSISTENCY_TOL,
) -> AnalyticalSolution:
    """Solve the angle equation and certify the root spectrally.

    Scans (0, pi) on a uniform grid for sign changes of the residual,
    rejecting intervals with non-finite evaluations, and bisects each
    bracket to machine precision. Candidate roots are tried in
    increasing order; a root is accepted once the SLEM of the fully
    assembled weight matrix matches cos(theta) within consistency_tol.

    Raises NoRootError when the scan finds no sign change and
    InconsistentRootError when no root passes the spectral check.
    """
    grid = np.linspace(1e-9, math.pi - 1e-9, intervals + 1)
    with np.errstate(all="ignore"):
        values = _residual(params, grid)

    roots: list[float] = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if not (np.isfinite(fa) and np.isfinite(fb)):
            continue
        if fa == 0.0:
            roots.append(float(a))
            continue
        if fa * fb < 0.0:
            root = _bisect(params, float(a), float(b), float(fa), float(fb))
            if root is not None:
                roots.append(root)
    if not roots:
        raise NoRootError(f"no sign change of the angle residual for {params}")

    rejected: list[tuple[float, float]] = []
    for theta in sorted(roots):
        residual = _residual_quiet(params, theta)
        if not math.isfinite(residual) or abs(residual) > residual_tol:
            continue
        s = math.cos(theta)
        if not 0.0 < s < 1.0:
            rejected.append((theta, s))
            continue
        try:
            weights = _weight_vector(params, theta)
        except SingularEvaluationError:
            continue
        spectrum_slem = slem_full(assemble_full(params, weights)).slem
        if abs(spectrum_slem - s) <= consistency_tol:
            return AnalyticalSolution(
                weights=weights, theta=theta, slem=s, residual=residual
            )
        rejected.append((theta, spectrum_slem))
    raise InconsistentRootError(
        f"no residual root matches the assembled spectrum for {params}; "
        f"rejected (theta, slem) pairs: {rejected}"
    )


def analytical_weights(params: SmhkParams) -> AnalyticalSolution:
    """Closed-form optimal weights for params.

    Interior path weights (orbits 2..m) are exactly 1/2.
    """
    return solve_theta(params)
