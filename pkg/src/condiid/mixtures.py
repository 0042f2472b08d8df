"""Static one-factor families: normal, spherical, l1- and linf-norm symmetric.

Each family pairs an exact sampler with a closed-form evaluator so the two
can be cross-validated by Monte Carlo.  The latent factor is always a single
mixing variable M drawn once per row.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from .errors import SpecValidationError, UnsupportedLawError
from .mixing import FiniteDiscrete, MixingLaw, Pareto, PointMass
from .sample import SampleMatrix

__all__ = [
    "sample_exch_normal",
    "exch_normal_cdf",
    "sample_uniform_sphere",
    "sample_spherical_ciid",
    "williamson_transform",
    "sample_l1_symmetric",
    "sample_l1_ciid",
    "l1_ciid_survival",
    "ArchimedeanGenerator",
    "archimedean_copula_eval",
    "gnedin_g",
    "sample_linf_ciid",
    "linf_ciid_survival",
    "linf_marginal_cdf",
    "pareto_uniform_copula",
    "pareto_uniform_marginal_cdf",
]


# -- compound-symmetric normal ------------------------------------------------

def sample_exch_normal(mu, sigma, rho, d, n, rng) -> SampleMatrix:
    """X_k = mu + sigma*(sqrt(rho)*M + sqrt(1-rho)*M_k) with iid standard
    normal M, M_1..M_d.

    rho is the common pairwise correlation and must lie in [0, 1]; negative
    equicorrelation admits no such one-factor representation.
    """
    if not 0.0 <= rho <= 1.0:
        raise SpecValidationError(f"correlation must lie in [0,1], got {rho}")
    if sigma <= 0:
        raise SpecValidationError("sigma must be positive")
    shared = rng.standard_normal(n)
    own = rng.standard_normal((n, d))
    data = mu + sigma * (math.sqrt(rho) * shared[:, None] + math.sqrt(1.0 - rho) * own)
    return SampleMatrix(data, meta=f"exch_normal mu={mu} sigma={sigma} rho={rho} d={d}")


_GH_NODES, _GH_WEIGHTS = np.polynomial.hermite_e.hermegauss(80)


def exch_normal_cdf(mu, sigma, rho, x) -> float:
    """Joint cdf of the equicorrelated normal law by mixing over the shared factor."""
    from scipy.stats import norm

    if not 0.0 <= rho <= 1.0:
        raise SpecValidationError(f"correlation must lie in [0,1], got {rho}")
    x = np.asarray(x, dtype=float)
    if rho == 1.0:
        return float(norm.cdf((x.min() - mu) / sigma))
    z = (x[None, :] - mu - sigma * math.sqrt(rho) * _GH_NODES[:, None]) / (
        sigma * math.sqrt(1.0 - rho)
    )
    vals = norm.cdf(z).prod(axis=1)
    return float(np.sum(_GH_WEIGHTS * vals) / math.sqrt(2.0 * math.pi))


# -- spherical ----------------------------------------------------------------

def sample_uniform_sphere(d, n, rng) -> SampleMatrix:
    """Uniform law on the Euclidean unit sphere via normalized iid normals."""
    y = rng.standard_normal((n, d))
    data = y / np.linalg.norm(y, axis=1, keepdims=True)
    return SampleMatrix(data, meta=f"uniform_sphere d={d}")


def sample_spherical_ciid(law: MixingLaw, d, n, rng) -> SampleMatrix:
    """Scale mixture of iid standard normals: one M per row times a normal row."""
    m = law.sample(n, rng)
    data = m[:, None] * rng.standard_normal((n, d))
    return SampleMatrix(data, meta=f"spherical {law!r} d={d}")


# -- l1-norm symmetric --------------------------------------------------------

def _expectation(law: MixingLaw, fn, lower=None) -> float:
    """E[fn(R)] by closed form for discrete laws, adaptive quadrature otherwise."""
    if isinstance(law, PointMass):
        return float(fn(law.m))
    if isinstance(law, FiniteDiscrete):
        return float(np.sum(law.weights * np.vectorize(fn)(law.atoms)))
    lo, hi = law.support()
    if lower is not None:
        lo = max(lo, lower)
    if lo >= hi:
        return 0.0
    density = law.density  # raises UnsupportedLawError when unavailable
    val, _ = integrate.quad(
        lambda r: fn(r) * density(r), lo, hi, epsabs=1e-10, epsrel=1e-10, limit=200
    )
    return float(val)


def williamson_transform(law: MixingLaw, d: int, x) -> float:
    """E[max(1 - x/R, 0)**(d-1)] for a positive radial variable R.

    Equals 1 at x = 0 and is non-increasing in x; closed form for point
    masses and finite discrete laws, quadrature for continuous ones.
    """
    if d < 1:
        raise SpecValidationError("dimension must be at least 1")
    x = float(x)
    if x < 0:
        raise SpecValidationError("argument must be non-negative")
    if x == 0.0:
        return 1.0
    return _expectation(law, lambda r: max(1.0 - x / r, 0.0) ** (d - 1), lower=x)


def sample_l1_symmetric(law: MixingLaw, d, n, rng) -> SampleMatrix:
    """R * (E_1/||E||_1, ..., E_d/||E||_1) with iid unit exponentials E."""
    r = law.sample(n, rng)
    e = rng.exponential(size=(n, d))
    data = r[:, None] * e / e.sum(axis=1, keepdims=True)
    return SampleMatrix(data, meta=f"l1_symmetric {law!r} d={d}")


def sample_l1_ciid(law: MixingLaw, d, n, rng) -> SampleMatrix:
    """X = E / M; the joint survival function is phi(||x||_1) with phi the
    Laplace transform of M."""
    m = law.sample(n, rng)
    if (np.asarray(m) <= 0).any():
        raise SpecValidationError("mixing variable must be strictly positive")
    e = rng.exponential(size=(n, d))
    data = e / m[:, None]
    return SampleMatrix(data, meta=f"l1_ciid {law!r} d={d}")


def l1_ciid_survival(law: MixingLaw, x) -> float:
    x = np.asarray(x, dtype=float)
    if (x < 0).any():
        raise SpecValidationError("survival arguments must be non-negative")
    return float(law.laplace(float(x.sum())))


# -- Archimedean copulas ------------------------------------------------------

class ArchimedeanGenerator:
    """Laplace transform phi of a positive mixing variable, with generalized inverse.

    phi(0) = 1, phi is non-increasing, and phi^{-1}(u) = inf{x : phi(x) <= u}
    is computed by bisection on a bracket grown by doubling.
    """

    def __init__(self, law: MixingLaw, tol: float = 1e-12):
        self.law = law
        self.tol = tol

    def __call__(self, x):
        return self.law.laplace(x)

    def inverse(self, u: float) -> float:
        if not 0.0 <= u <= 1.0:
            raise SpecValidationError(f"generator inverse needs u in [0,1], got {u}")
        if u >= 1.0:
            return 0.0
        hi = 1.0
        for _ in range(200):
            if self(hi) < u:
                break
            hi *= 2.0
        else:
            return math.inf  # phi never drops below u: mass of M at 0
        lo = 0.0
        while hi - lo > self.tol * max(1.0, hi):
            mid = 0.5 * (lo + hi)
            if self(mid) <= u:
                hi = mid
            else:
                lo = mid
        return hi


def archimedean_copula_eval(gen: ArchimedeanGenerator | MixingLaw, u) -> float:
    """phi(phi^{-1}(u_1) + ... + phi^{-1}(u_d)); any zero coordinate gives 0."""
    if isinstance(gen, MixingLaw):
        gen = ArchimedeanGenerator(gen)
    u = np.asarray(u, dtype=float)
    if ((u < 0) | (u > 1)).any():
        raise SpecValidationError("copula arguments must lie in [0,1]")
    if (u == 0).any():
        return 0.0
    total = sum(gen.inverse(float(v)) for v in u)
    if math.isinf(total):
        return 0.0
    return float(gen(total))


# -- linf-norm symmetric ------------------------------------------------------

def gnedin_g(law: MixingLaw, d: int, x) -> float:
    """g_d(x) = E[1_{M > x} M^{-d}], the density generator of M*U laws.

    Non-increasing in x with normalization d * int g_d(x) x^{d-1} dx = 1.
    """
    if d < 1:
        raise SpecValidationError("dimension must be at least 1")
    x = float(x)
    if isinstance(law, Pareto):
        return law.alpha / (d + law.alpha) * max(1.0, x) ** (-d - law.alpha)
    return _expectation(law, lambda m: m ** (-d) if m > x else 0.0, lower=x)


def sample_linf_ciid(law: MixingLaw, d, n, rng, return_mixing: bool = False):
    """X = M * U with U iid uniform on [0,1]; rows are conditionally iid
    uniform on [0, M].

    With ``return_mixing`` the realized M of each row is returned alongside.
    """
    m = law.sample(n, rng)
    if (np.asarray(m) <= 0).any():
        raise SpecValidationError("mixing variable must be strictly positive")
    data = m[:, None] * rng.random((n, d))
    out = SampleMatrix(data, meta=f"linf_ciid {law!r} d={d}")
    if return_mixing:
        return out, m
    return out


def linf_ciid_survival(law: MixingLaw, x) -> float:
    """P(X > x) = E[prod_k max(0, 1 - x_k/M)] for X = M*U."""
    x = np.asarray(x, dtype=float)
    if (x < 0).any():
        raise SpecValidationError("survival arguments must be non-negative")
    xmax = float(x.max())

    def fn(m):
        return float(np.prod(np.maximum(0.0, 1.0 - x / m)))

    return _expectation(law, fn, lower=xmax)


def linf_marginal_cdf(law: MixingLaw, x) -> float:
    """P(M*U <= x) = E[min(1, x/M)] for one component."""
    x = float(x)
    if x <= 0:
        return 0.0
    return _expectation(law, lambda m: min(1.0, x / m))


# -- Pareto mixture of uniforms ----------------------------------------------

def pareto_uniform_marginal_cdf(alpha: float, x) -> float:
    """Marginal cdf of one component of M*U with Pareto(alpha) mixing."""
    x = float(x)
    if x <= 0:
        return 0.0
    if x < 1:
        return alpha / (1.0 + alpha) * x
    return 1.0 - x ** (-alpha) / (1.0 + alpha)


def pareto_uniform_copula(alpha: float, u1: float, u2: float) -> float:
    """Bivariate copula of the Pareto-mixed uniform model, in closed form.

    Piecewise in whether the arguments fall below or above the marginal
    break alpha/(1+alpha); exhibits upper tail dependence 2/(2+alpha).
    """
    if alpha <= 0:
        raise SpecValidationError("alpha must be positive")
    for u in (u1, u2):
        if not 0.0 <= u <= 1.0:
            raise SpecValidationError(f"copula arguments must lie in [0,1], got {u}")
    lo, hi = min(u1, u2), max(u1, u2)
    if lo == 0.0:
        return 0.0
    if hi >= 1.0:
        return lo
    split = alpha / (1.0 + alpha)
    if hi <= split:
        return (1.0 + alpha) ** 2 / (alpha * (alpha + 2.0)) * u1 * u2
    if lo <= split:
        return lo - (1.0 + alpha) ** (1.0 + 1.0 / alpha) / (2.0 + alpha) * lo * (1.0 - hi) ** (
            1.0 + 1.0 / alpha
        )
    return lo - alpha / (2.0 + alpha) * (1.0 - lo) ** (-1.0 / alpha) * (1.0 - hi) ** (
        1.0 + 1.0 / alpha
    )
