"""Mixing laws for one-factor models.

Each law describes a positive (or unit-interval) random variable M used as a
latent factor.  Laws carry a sampler, a Laplace transform where one is known
in closed form, moments when supported on [0, 1], and a density when
available for quadrature.  JSON serialization uses ``{"family": ..., params}``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate, special

from .errors import SpecValidationError, UnsupportedLawError

__all__ = [
    "MixingLaw",
    "PointMass",
    "FiniteDiscrete",
    "Gamma",
    "Beta",
    "Pareto",
    "PositiveStable",
    "LogSeries",
    "mixing_law_from_json",
    "sample_positive_stable",
]


def sample_positive_stable(theta: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw from the one-sided stable law with Laplace transform exp(-x**theta).

    Kanter's polar method; exact for theta in (0, 1).
    """
    if not 0.0 < theta < 1.0:
        raise SpecValidationError(f"stable index must lie in (0,1), got {theta}")
    u = rng.uniform(0.0, np.pi, size=n)
    e = rng.exponential(size=n)
    return (
        np.sin(theta * u)
        * np.sin((1.0 - theta) * u) ** ((1.0 - theta) / theta)
        / np.sin(u) ** (1.0 / theta)
        * e ** (-(1.0 - theta) / theta)
    )


class MixingLaw:
    """Base class; subclasses are light parameter records with methods."""

    family = "abstract"

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def laplace(self, x):
        """E[exp(-x M)] for x >= 0, vectorized in x."""
        raise UnsupportedLawError(f"{self.family}: no Laplace transform available")

    def moment(self, k: int) -> float:
        """E[M**k]; only for laws supported in [0, 1]."""
        raise UnsupportedLawError(f"{self.family}: moments not implementable")

    def mean(self) -> float:
        raise UnsupportedLawError(f"{self.family}: mean not available")

    def density(self, m):
        raise UnsupportedLawError(f"{self.family}: no density available")

    def support(self) -> tuple[float, float]:
        raise NotImplementedError

    @property
    def unit_interval(self) -> bool:
        lo, hi = self.support()
        return lo >= 0.0 and hi <= 1.0

    def params(self) -> dict:
        raise NotImplementedError

    def to_json(self) -> dict:
        return {"family": self.family, **self.params()}

    def __repr__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.params().items())
        return f"{type(self).__name__}({inner})"

    def __eq__(self, other):
        return type(self) is type(other) and self.to_json() == other.to_json()


class PointMass(MixingLaw):
    family = "point_mass"

    def __init__(self, m: float):
        if not m > 0.0:
            raise SpecValidationError(f"point mass location must be positive, got {m}")
        self.m = float(m)

    def sample(self, n, rng):
        return np.full(n, self.m)

    def laplace(self, x):
        x = np.asarray(x, dtype=float)
        if math.isinf(self.m):
            out = np.where(x > 0, 0.0, 1.0)
            return out if out.ndim else float(out)
        return np.exp(-self.m * x)

    def moment(self, k):
        return self.m**k

    def mean(self):
        return self.m

    def support(self):
        return (self.m, self.m)

    def params(self):
        return {"m": self.m}


class FiniteDiscrete(MixingLaw):
    """Finite discrete law sum_i w_i * delta_{m_i}; weights must sum to 1."""

    family = "finite_discrete"

    def __init__(self, atoms, weights):
        atoms = np.asarray(atoms, dtype=float)
        weights = np.asarray(weights, dtype=float)
        if atoms.shape != weights.shape or atoms.ndim != 1 or atoms.size == 0:
            raise SpecValidationError("atoms and weights must be 1-d arrays of equal length")
        if (atoms < 0).any():
            raise SpecValidationError("atoms must be non-negative")
        if (weights < 0).any() or abs(weights.sum() - 1.0) > 1e-12:
            raise SpecValidationError("weights must be non-negative and sum to 1 within 1e-12")
        self.atoms = atoms
        self.weights = weights

    def sample(self, n, rng):
        idx = rng.choice(self.atoms.size, size=n, p=self.weights)
        return self.atoms[idx]

    def laplace(self, x):
        x = np.asarray(x, dtype=float)
        val = np.sum(self.weights * np.exp(-np.outer(x.ravel(), self.atoms)), axis=1)
        return val.reshape(x.shape) if x.ndim else float(val[0])

    def moment(self, k):
        return float(np.sum(self.weights * self.atoms**k))

    def mean(self):
        return float(np.sum(self.weights * self.atoms))

    def support(self):
        return (float(self.atoms.min()), float(self.atoms.max()))

    def params(self):
        return {"atoms": self.atoms.tolist(), "weights": self.weights.tolist()}


class Gamma(MixingLaw):
    """Gamma law with shape theta and unit scale; E[exp(-xM)] = (1+x)**-theta."""

    family = "gamma"

    def __init__(self, shape: float):
        if not shape > 0:
            raise SpecValidationError(f"gamma shape must be positive, got {shape}")
        self.shape = float(shape)

    def sample(self, n, rng):
        return rng.gamma(self.shape, size=n)

    def laplace(self, x):
        x = np.asarray(x, dtype=float)
        out = (1.0 + x) ** (-self.shape)
        return out if out.ndim else float(out)

    def mean(self):
        return self.shape

    def density(self, m):
        m = np.asarray(m, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(
                m > 0,
                np.exp((self.shape - 1.0) * np.log(np.maximum(m, 1e-300)) - m - special.gammaln(self.shape)),
                0.0,
            )
        return out if out.ndim else float(out)

    def support(self):
        return (0.0, np.inf)

    def params(self):
        return {"shape": self.shape}


class Beta(MixingLaw):
    family = "beta"

    def __init__(self, p: float, q: float):
        if not (p > 0 and q > 0):
            raise SpecValidationError(f"beta parameters must be positive, got ({p}, {q})")
        self.p = float(p)
        self.q = float(q)

    def sample(self, n, rng):
        return rng.beta(self.p, self.q, size=n)

    def laplace(self, x):
        x = np.asarray(x, dtype=float)
        out = special.hyp1f1(self.p, self.p + self.q, -x)
        return out if out.ndim else float(out)

    def moment(self, k):
        # Gamma(p+k) Gamma(p+q) / (Gamma(p) Gamma(p+q+k))
        return float(
            np.exp(
                special.gammaln(self.p + k)
                + special.gammaln(self.p + self.q)
                - special.gammaln(self.p)
                - special.gammaln(self.p + self.q + k)
            )
        )

    def mean(self):
        return self.p / (self.p + self.q)

    def density(self, m):
        m = np.asarray(m, dtype=float)
        inside = (m > 0) & (m < 1)
        safe = np.where(inside, m, 0.5)
        logpdf = (
            (self.p - 1.0) * np.log(safe)
            + (self.q - 1.0) * np.log1p(-safe)
            - special.betaln(self.p, self.q)
        )
        out = np.where(inside, np.exp(logpdf), 0.0)
        return out if out.ndim else float(out)

    def support(self):
        return (0.0, 1.0)

    def params(self):
        return {"p": self.p, "q": self.q}


class Pareto(MixingLaw):
    """Pareto law with tail index alpha and scale 1: P(M > x) = min(1, x**-alpha)."""

    family = "pareto"

    def __init__(self, alpha: float):
        if not alpha > 0:
            raise SpecValidationError(f"pareto tail index must be positive, got {alpha}")
        self.alpha = float(alpha)

    def sample(self, n, rng):
        return rng.random(n) ** (-1.0 / self.alpha)

    def laplace(self, x):
        x = np.asarray(x, dtype=float)

        def one(xi):
            if xi == 0.0:
                return 1.0
            val, _ = integrate.quad(
                lambda m: math.exp(-xi * m) * self.alpha * m ** (-self.alpha - 1.0),
                1.0,
                np.inf,
                epsabs=1e-12,
                epsrel=1e-10,
            )
            return val

        out = np.vectorize(one)(x)
        return out if out.ndim else float(out)

    def mean(self):
        if self.alpha <= 1:
            return math.inf
        return self.alpha / (self.alpha - 1.0)

    def density(self, m):
        m = np.asarray(m, dtype=float)
        out = np.where(m >= 1, self.alpha * m ** (-self.alpha - 1.0), 0.0)
        return out if out.ndim else float(out)

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        out = np.minimum(1.0, np.maximum(x, 1e-300) ** (-self.alpha))
        out = np.where(x <= 0, 1.0, out)
        return out if out.ndim else float(out)

    def support(self):
        return (1.0, np.inf)

    def params(self):
        return {"alpha": self.alpha}


class PositiveStable(MixingLaw):
    """One-sided stable law with E[exp(-xM)] = exp(-x**theta), theta in (0,1)."""

    family = "positive_stable"

    def __init__(self, theta: float):
        if not 0.0 < theta < 1.0:
            raise SpecValidationError(f"stable index must lie in (0,1), got {theta}")
        self.theta = float(theta)

    def sample(self, n, rng):
        return sample_positive_stable(self.theta, n, rng)

    def laplace(self, x):
        x = np.asarray(x, dtype=float)
        out = np.exp(-(x**self.theta))
        return out if out.ndim else float(out)

    def support(self):
        return (0.0, np.inf)

    def params(self):
        return {"theta": self.theta}


class LogSeries(MixingLaw):
    """Logarithmic law on {1,2,...}: P(M=m) = q**m / (m*theta), q = 1-exp(-theta)."""

    family = "log_series"

    def __init__(self, theta: float):
        if not theta > 0:
            raise SpecValidationError(f"log-series parameter must be positive, got {theta}")
        self.theta = float(theta)
        self.q = -math.expm1(-theta)

    def pmf(self, m: int) -> float:
        return self.q**m / (m * self.theta)

    def sample(self, n, rng):
        u = rng.random(n)
        out = np.ones(n, dtype=float)
        m = 1
        acc = np.full(n, self.pmf(1))
        active = u > acc
        while active.any():
            m += 1
            acc[active] += self.pmf(m)
            out[active] = m
            active = u > acc
            if m > 100000:  # cumulative mass is 1; guards float round-off only
                break
        return out

    def laplace(self, x):
        x = np.asarray(x, dtype=float)
        out = -np.log1p(-self.q * np.exp(-x)) / self.theta
        return out if out.ndim else float(out)

    def mean(self):
        return self.q / ((1.0 - self.q) * self.theta)

    def support(self):
        return (1.0, np.inf)

    def params(self):
        return {"theta": self.theta}


_FAMILIES = {
    cls.family: cls
    for cls in (PointMass, FiniteDiscrete, Gamma, Beta, Pareto, PositiveStable, LogSeries)
}


def mixing_law_from_json(obj: dict) -> MixingLaw:
    if "family" not in obj:
        raise SpecValidationError("mixing law JSON needs a 'family' tag")
    fam = obj["family"]
    if fam not in _FAMILIES:
        raise SpecValidationError(f"unknown mixing law family {fam!r}")
    kwargs = {k: v for k, v in obj.items() if k != "family"}
    return _FAMILIES[fam](**kwargs)
