"""Continuum quantities: reflection coefficient, phase shift, delay, resonances.

Above the step (beta > beta0) the spectrum is continuous and reflection is
total: the exterior wave is e^{-ikx} + zeta(beta) e^{ikx} with a
unit-modulus reflection coefficient zeta.  The phase delta = arg(zeta)
carries all the physics; its derivative delta'(beta) has an exact closed
form in terms of Gamma and digamma, and the delay time is
tau = delta'(beta)/omega with the classical half-period pi/omega as its
high-energy limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import contour
from .errors import DomainError, SingularityError
from .potential import PotentialConfig
from .special import digamma, gamma_half_ratio
from .runtime import parallel_map

_SQRT2 = math.sqrt(2.0)
_RESONANCE_SCAN_STEP = 0.01
_RESONANCE_MIN_HEIGHT = 1.05  # in units of the classical limit pi/omega


@dataclass(frozen=True)
class PhaseShiftSample:
    """Reflection data at one continuum energy."""

    beta: float
    zeta: complex
    delta: float
    delta_prime: float
    tau: float


@dataclass(frozen=True)
class Resonance:
    """A local maximum of the delay curve: position, height and FWHM in beta."""

    beta_peak: float
    tau_peak: float
    width: float


def _require_continuum(beta, beta0: float):
    if np.any(np.asarray(beta, dtype=float) <= beta0):
        raise DomainError("continuum quantities require beta > beta0")


def zeta(beta, config: PotentialConfig):
    """Unit-modulus reflection coefficient.

    Computed in the reflection-identity form

        zeta = (a - i b) / (a + i b),
        a = sin(pi beta / 2),
        b = sqrt(2/(beta - beta0)) * [Gamma((beta+1)/2)/Gamma(beta/2)]
            * cos(pi beta / 2),

    which is an explicit ratio of complex conjugates (so |zeta| = 1 to
    rounding) and contains no Gamma poles for beta > beta0.
    """
    beta0 = config.beta0
    _require_continuum(beta, beta0)
    b_arr = np.asarray(beta, dtype=float)
    a = np.sin(np.pi * b_arr / 2.0)
    b = (np.sqrt(2.0 / (b_arr - beta0)) * gamma_half_ratio(b_arr / 2.0)
         * np.cos(np.pi * b_arr / 2.0))
    value = (a - 1j * b) / (a + 1j * b)
    return complex(value) if np.ndim(beta) == 0 else value


def phase_shift(beta, config: PotentialConfig):
    """Principal-value phase shift delta = arg(zeta) in (-pi, pi]."""
    value = np.angle(zeta(beta, config))
    return float(value) if np.ndim(beta) == 0 else value


def delta_prime(beta, config: PotentialConfig):
    """Closed-form derivative of the phase shift with respect to beta.

    The sin(pi beta) factor is distributed into the bracket so the
    expression stays finite at integer beta, where the 2 pi / sin(pi beta)
    term would otherwise pair a zero with an infinity:

        num = (1/2) sqrt(beta-beta0) * [ sin(pi beta) * (1/(beta-beta0)
              + Psi(beta/2) - Psi((beta+1)/2)) + 2 pi ]
        den = (beta-beta0) sin^2(pi beta/2) / (sqrt(2) R)
              + sqrt(2) R cos^2(pi beta/2),      R = Gamma((beta+1)/2)/Gamma(beta/2)

    Near threshold the 1/(beta - beta0) term dominates and the sign of
    sin(pi beta0) decides between +inf and -inf.
    """
    beta0 = config.beta0
    _require_continuum(beta, beta0)
    b = np.asarray(beta, dtype=float)
    x = b - beta0
    ratio = gamma_half_ratio(b / 2.0)
    num = 0.5 * np.sqrt(x) * (
        np.sin(np.pi * b) * (1.0 / x + digamma(b / 2.0) - digamma((b + 1.0) / 2.0))
        + 2.0 * np.pi)
    den = (x / (ratio * _SQRT2) * np.sin(np.pi * b / 2.0) ** 2
           + ratio * _SQRT2 * np.cos(np.pi * b / 2.0) ** 2)
    value = num / den
    return float(value) if np.ndim(beta) == 0 else value


def delay_time(beta, config: PotentialConfig):
    """Reflection delay tau = delta'(beta)/omega."""
    return delta_prime(beta, config) / config.omega


def pi_coefficient(beta, config: PotentialConfig):
    """Interior amplitude Pi(beta) = 2 / [J(beta) + i sqrt(2/(beta-beta0)) J(beta-1)]."""
    beta0 = config.beta0
    _require_continuum(beta, beta0)

    def one(b: float) -> complex:
        den = (contour.j_beta(b)
               + 1j * math.sqrt(2.0 / (b - beta0)) * contour.j_beta(b - 1.0))
        if abs(den) < 1e-300:
            raise SingularityError(f"Pi denominator vanished at beta={b}")
        return 2.0 / den

    if np.ndim(beta) == 0:
        return one(float(beta))
    return np.array([one(float(b)) for b in np.asarray(beta, dtype=float)])


def sample(beta: float, config: PotentialConfig) -> PhaseShiftSample:
    """Bundle zeta, delta, delta' and tau at one continuum beta."""
    z = zeta(beta, config)
    dp = delta_prime(beta, config)
    return PhaseShiftSample(beta=float(beta), zeta=z, delta=float(np.angle(z)),
                            delta_prime=dp, tau=dp / config.omega)


def _golden_max(f, lo: float, hi: float, tol: float = 1e-10) -> float:
    """Golden-section search for the maximizer of f on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _half_crossing(f, inside: float, outside: float, level: float,
                   tol: float = 1e-10) -> float:
    """Bisect f(beta) = level between a point above and a point below it."""
    lo, hi = inside, outside
    f_lo = f(lo) - level
    while abs(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        if (f(mid) - level) * f_lo > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_resonances(config: PotentialConfig, beta_max: float) -> list[Resonance]:
    """Locate delay-curve maxima: coarse scan, golden-section refinement, FWHM.

    Maxima shallower than 1.05 * pi/omega are discarded as non-resonant
    ripple.  The width is measured where tau crosses halfway between the
    peak and the classical baseline pi/omega (the raw half-maximum can lie
    below the baseline and would never be crossed).  The monotone descent
    from a threshold divergence is not a local maximum and is therefore
    never reported.
    """
    beta0 = config.beta0
    if beta_max <= beta0 + 1.0:
        raise DomainError("beta_max must exceed beta0 + 1")
    baseline = math.pi / config.omega
    grid = np.arange(beta0 + _RESONANCE_SCAN_STEP, beta_max, _RESONANCE_SCAN_STEP)
    taus = delay_time(grid, config)
    interior = np.flatnonzero((taus[1:-1] > taus[:-2]) & (taus[1:-1] >= taus[2:])) + 1
    candidates = [i for i in interior if taus[i] > _RESONANCE_MIN_HEIGHT * baseline]

    def refine(i: int) -> Resonance:
        tau_of = lambda b: delay_time(float(b), config)
        peak = _golden_max(tau_of, grid[i - 1], grid[i + 1])
        tau_peak = tau_of(peak)
        half = baseline + 0.5 * (tau_peak - baseline)
        # walk outward on the coarse grid until tau drops through the half level
        left = i
        while left > 0 and taus[left] > half:
            left -= 1
        right = i
        while right < len(grid) - 1 and taus[right] > half:
            right += 1
        b_left = (_half_crossing(tau_of, grid[left + 1], grid[left], half)
                  if taus[left] <= half else grid[left])
        b_right = (_half_crossing(tau_of, grid[right - 1], grid[right], half)
                   if taus[right] <= half else grid[right])
        return Resonance(beta_peak=float(peak), tau_peak=float(tau_peak),
                         width=float(b_right - b_left))

    return sorted(parallel_map(refine, candidates), key=lambda r: r.beta_peak)
