"""Bound states of the step-harmonic potential.

A bound state at E < U0 must join the interior solution F(alpha x) e^{-y^2/2}
smoothly onto the decaying exterior exponential.  Eliminating the amplitudes
from the junction conditions gives the level equation

    g(beta) = [Gamma((beta+1)/2)/Gamma(beta/2)] * cot(pi beta / 2)
              + sqrt((beta0 - beta)/2) = 0,

whose zeros on (0, beta0) are the levels.  The cotangent confines each root
to an interval (2n+1, 2n+2), one root per interval, which makes bracketed
bisection a guaranteed solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import contour
from .errors import BracketError, DomainError
from .potential import PotentialConfig
from .special import gamma_half_ratio

_ENDPOINT_PULL = 1e-9


@dataclass(frozen=True)
class EnergyLevel:
    """One bound state.

    ``marginal`` marks the threshold state at beta0 = 1 whose exterior decay
    constant vanishes (E = U0); it is reported but is not square-summable.
    """

    n: int
    beta_n: float
    energy: float
    k_n: float
    marginal: bool = False


def level_count(config: PotentialConfig) -> int:
    """Number of bound states for the given step height.

    A level with index n exists for beta0 > 2n+1; the state that sits
    exactly at threshold when beta0 equals an odd integer is excluded
    (zero decay constant), except the documented beta0 = 1 ground state
    which is reported as marginal.
    """
    beta0 = config.beta0
    if beta0 < 1.0:
        return 0
    if beta0 == 1.0:
        return 1
    return int(math.ceil((beta0 - 1.0) / 2.0 - 1e-15))


def level_equation_residual(beta, config: PotentialConfig):
    """Residual g(beta) of the level equation; a bound state is a zero.

    Defined on 0 < beta <= beta0.  The cotangent poles at even integer
    beta are mapped to infinities, which the bracketing in
    :func:`solve_levels` never touches.
    """
    beta0 = config.beta0
    b = np.asarray(beta, dtype=float)
    if np.any((b <= 0.0) | (b > beta0)):
        raise DomainError("level equation is defined on 0 < beta <= beta0")
    with np.errstate(divide="ignore"):
        cot = np.cos(np.pi * b / 2.0) / np.sin(np.pi * b / 2.0)
        g = gamma_half_ratio(b / 2.0) * cot + np.sqrt((beta0 - b) / 2.0)
    return float(g) if np.ndim(beta) == 0 else g


def _bisect(f, lo: float, hi: float, tol: float) -> float:
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0.0:
        raise BracketError(f"no sign change on bracket ({lo}, {hi})")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def solve_levels(config: PotentialConfig, tol: float = 1e-12) -> list[EnergyLevel]:
    """All bound states, sorted by index, each located by bisection.

    Bracket endpoints are pulled slightly inward to stay clear of the
    cotangent pole at the left end and the square-root branch point at
    beta0; the pull shrinks with the bracket so no root is ever skipped.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    beta0 = config.beta0
    if beta0 == 1.0:
        return [EnergyLevel(n=0, beta_n=1.0, energy=config.energy(1.0),
                            k_n=0.0, marginal=True)]
    levels = []
    for n in range(level_count(config)):
        lo = 2.0 * n + 1.0
        hi = min(2.0 * n + 2.0, beta0)
        pull = min(_ENDPOINT_PULL, (hi - lo) * 1e-6)
        root = _bisect(lambda b: level_equation_residual(b, config),
                       lo + pull, hi - pull, tol)
        levels.append(EnergyLevel(n=n, beta_n=root, energy=config.energy(root),
                                  k_n=config.k_bound(root)))
    return levels


def _extend_trapezoid(f, start: float, step: float, direction: int,
                      chunk_width: float = 1.0, rel_tail: float = 1e-8,
                      max_chunks: int = 400) -> float:
    """Integrate f from `start` outward until a chunk adds < rel_tail of the total."""
    total = 0.0
    a = start
    for _ in range(max_chunks):
        b = a + direction * chunk_width
        xs = np.linspace(min(a, b), max(a, b), max(8, int(chunk_width / step)))
        chunk = float(np.trapezoid(f(xs), xs))
        total += chunk
        if total > 0 and chunk < rel_tail * total:
            return total
        a = b
    return total


def bound_eigenfunction(level: EnergyLevel, config: PotentialConfig, xs,
                        contour_spec: contour.ContourSpec = contour.DEFAULT_CONTOUR,
                        normalized: bool = True):
    """Sample the bound-state wavefunction u_n on the given positions.

    u_n(x) = F(alpha x) exp(-(alpha x)^2 / 2) for x < 0 and
    J(beta_n) exp(-k_n x) for x >= 0; both branches equal J(beta_n) at the
    junction.  When ``normalized`` the result carries unit L2 norm, computed
    by trapezoid quadrature with the integration range extended until the
    tails contribute less than 1e-8 of the total.  The marginal beta0 = 1
    state has a non-decaying exterior and is normalized over the sampled
    range instead.
    """
    xs_arr = np.atleast_1d(np.asarray(xs, dtype=float))
    alpha = config.alpha
    beta_n = level.beta_n
    j_val = contour.j_beta(beta_n)

    def evaluate(points: np.ndarray) -> np.ndarray:
        out = np.empty(points.shape, dtype=complex)
        neg = points < 0.0
        if neg.any():
            y = alpha * points[neg]
            out[neg] = contour.f_epsilon(beta_n, y, contour_spec) * np.exp(-0.5 * y * y)
        if (~neg).any():
            out[~neg] = j_val * np.exp(-level.k_n * points[~neg])
        return out

    values = evaluate(xs_arr)
    if normalized:
        step = 0.005 / alpha

        def density(pts):
            return np.abs(evaluate(pts)) ** 2

        if level.marginal:
            grid = np.linspace(xs_arr.min(), xs_arr.max(),
                               max(64, int((xs_arr.max() - xs_arr.min()) / step)))
            norm_sq = float(np.trapezoid(density(grid), grid))
        else:
            # the exterior decay length 1/k_n sets the right-side sampling,
            # keeping near-threshold states affordable and accurate
            width_r = max(1.0 / alpha, 0.5 / level.k_n)
            norm_sq = (_extend_trapezoid(density, 0.0, step, direction=-1,
                                         chunk_width=1.0 / alpha)
                       + _extend_trapezoid(density, 0.0, width_r / 400.0,
                                           direction=+1, chunk_width=width_r))
        values = values / math.sqrt(norm_sq)
    return values[0] if np.ndim(xs) == 0 else values.reshape(np.shape(xs))
