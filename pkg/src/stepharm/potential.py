"""Physical configuration of the step-harmonic potential.

The potential is U(x) = U0 for x >= 0 and kappa x^2 / 2 for x < 0.
:class:`PotentialConfig` is the single source of unit conventions; every
derived quantity (omega, alpha, beta0, the period) is recomputed from the
four stored constants rather than cached, so the object can never become
internally inconsistent.

Dimensionless spectral coordinates used throughout the package:

* ``epsilon = 2 E / (hbar omega)``
* ``beta = (epsilon + 1) / 2``, so E = hbar omega (beta - 1/2)
* ``beta0 = U0 / (hbar omega) + 1/2`` marks the continuum threshold E = U0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class PotentialConfig:
    """Physical constants of the step-harmonic problem."""

    hbar: float = 1.0
    mass: float = 1.0
    kappa: float = 1.0
    u0: float = 0.5

    def __post_init__(self):
        if self.hbar <= 0 or self.mass <= 0 or self.kappa <= 0:
            raise DomainError("hbar, mass and kappa must be positive")
        if self.u0 < 0:
            raise DomainError("step height u0 must be non-negative")

    @classmethod
    def from_beta0(cls, beta0: float, hbar: float = 1.0, mass: float = 1.0,
                   kappa: float = 1.0) -> "PotentialConfig":
        """Build a configuration with the given dimensionless step height.

        With the default constants (hbar = mass = kappa = 1, hence
        omega = alpha = 1) this realizes the dimensionless bookkeeping in
        which all results depend only on beta and beta0.
        """
        if beta0 < 0.5:
            raise DomainError("beta0 must be >= 1/2 (u0 >= 0)")
        omega = math.sqrt(kappa / mass)
        return cls(hbar=hbar, mass=mass, kappa=kappa, u0=hbar * omega * (beta0 - 0.5))

    @property
    def omega(self) -> float:
        """Angular frequency sqrt(kappa/mass) of the harmonic branch."""
        return math.sqrt(self.kappa / self.mass)

    @property
    def alpha(self) -> float:
        """Inverse oscillator length (mass*kappa/hbar^2)^(1/4)."""
        return (self.mass * self.kappa / self.hbar**2) ** 0.25

    @property
    def beta0(self) -> float:
        """Dimensionless step height u0/(hbar*omega) + 1/2."""
        return self.u0 / (self.hbar * self.omega) + 0.5

    @property
    def period(self) -> float:
        """Classical oscillator period T = 2*pi/omega."""
        return 2.0 * math.pi / self.omega

    def energy(self, beta: float) -> float:
        """Absolute energy E = hbar*omega*(beta - 1/2)."""
        return self.hbar * self.omega * (beta - 0.5)

    def beta_from_energy(self, energy: float) -> float:
        return energy / (self.hbar * self.omega) + 0.5

    def k_continuum(self, beta) -> float:
        """Exterior wavenumber, hbar*k = sqrt(2m(E - U0)); requires beta >= beta0."""
        import numpy as np

        b = np.asarray(beta, dtype=float)
        if np.any(b < self.beta0):
            raise DomainError("continuum wavenumber requires beta >= beta0")
        k = self.alpha * np.sqrt(2.0 * (b - self.beta0))
        return float(k) if np.ndim(beta) == 0 else k

    def k_bound(self, beta) -> float:
        """Exterior decay constant, hbar*k = sqrt(2m(U0 - E)); requires beta <= beta0."""
        import numpy as np

        b = np.asarray(beta, dtype=float)
        if np.any(b > self.beta0):
            raise DomainError("bound decay constant requires beta <= beta0")
        k = self.alpha * np.sqrt(2.0 * (self.beta0 - b))
        return float(k) if np.ndim(beta) == 0 else k

    def beta_from_k(self, k: float) -> float:
        """Continuum beta for a given exterior wavenumber."""
        return self.beta0 + 0.5 * (k / self.alpha) ** 2


@dataclass(frozen=True)
class BetaPoint:
    """One spectral point: beta, epsilon, absolute energy and wavenumber.

    ``k`` is the exterior wavenumber for continuum points and the exterior
    decay constant for bound points.
    """

    beta: float
    epsilon: float
    energy: float
    k: float

    @classmethod
    def continuum(cls, config: PotentialConfig, beta: float) -> "BetaPoint":
        return cls(beta=beta, epsilon=2.0 * beta - 1.0,
                   energy=config.energy(beta), k=config.k_continuum(beta))

    @classmethod
    def bound(cls, config: PotentialConfig, beta: float) -> "BetaPoint":
        return cls(beta=beta, epsilon=2.0 * beta - 1.0,
                   energy=config.energy(beta), k=config.k_bound(beta))
