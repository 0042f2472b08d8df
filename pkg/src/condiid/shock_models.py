"""Exogenous shock models, Dirichlet-prior sampling, and Sato frailty.

A system of d components is hit by independent shocks, one per non-empty
subset, with the shock law depending only on the subset's cardinality.  The
survival copula of such a model is an ordered product

    chat(u) = u_[1] * prod_{k=2}^d g_k(u_[k]),

and the conditionally iid members correspond to latent processes with
independent (not necessarily stationary) increments, described by a family of
Laplace exponents t -> psi_t.  Two named sub-families get closed forms: the
Dirichlet prior (random distribution function with Dirichlet increments) and
the Sato frailty built from a self-decomposable law via psi_t(x) = psi(x*t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy import integrate, special

from .errors import DimensionCapError, SpecValidationError
from .lack_of_memory import MAX_SHOCK_DIM
from .sample import SampleMatrix

__all__ = [
    "ShockSurvival",
    "ExponentialShock",
    "WeibullShock",
    "ParetoShock",
    "StepShock",
    "ShockSurvivalSpec",
    "exshock_sample",
    "exshock_survival",
    "exshock_marginal_survival",
    "exshock_copula_eval",
    "BaseDistribution",
    "UniformBase",
    "ExponentialBase",
    "NormalBase",
    "AdditiveFamily",
    "PiecewiseLevy",
    "DirichletPriorFamily",
    "SatoFamily",
    "additive_survival",
    "sample_dp",
    "dp_copula_eval",
    "dp_survival",
    "sato_survival",
    "check_self_decomposable",
    "fd_weights",
    "shock_from_json",
    "base_distribution_from_json",
    "additive_family_from_json",
]


# -- one-dimensional shock laws -------------------------------------------------

class ShockSurvival:
    """Parametric survival function on [0, inf) for a single shock arrival."""

    kind = "abstract"

    def survival(self, x):
        raise NotImplementedError

    def sample(self, n, rng):
        raise NotImplementedError

    def params(self) -> dict:
        raise NotImplementedError

    def to_json(self) -> dict:
        return {"kind": self.kind, **self.params()}

    def __repr__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.params().items())
        return f"{type(self).__name__}({inner})"


@dataclass(frozen=True, repr=False)
class ExponentialShock(ShockSurvival):
    rate: float
    kind = "exponential"

    def __post_init__(self):
        if self.rate < 0:
            raise SpecValidationError("rate must be non-negative")

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        out = np.exp(-self.rate * x)
        return out if out.ndim else float(out)

    def sample(self, n, rng):
        if self.rate == 0:
            return np.full(n, np.inf)
        return rng.exponential(1.0 / self.rate, size=n)

    def params(self):
        return {"rate": self.rate}


@dataclass(frozen=True, repr=False)
class WeibullShock(ShockSurvival):
    shape: float
    scale: float = 1.0
    kind = "weibull"

    def __post_init__(self):
        if self.shape <= 0 or self.scale <= 0:
            raise SpecValidationError("shape and scale must be positive")

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        out = np.exp(-((np.maximum(x, 0.0) / self.scale) ** self.shape))
        return out if out.ndim else float(out)

    def sample(self, n, rng):
        return self.scale * rng.weibull(self.shape, size=n)

    def params(self):
        return {"shape": self.shape, "scale": self.scale}


@dataclass(frozen=True, repr=False)
class ParetoShock(ShockSurvival):
    """Lomax survival (1 + x/scale)**-alpha, support [0, inf)."""

    alpha: float
    scale: float = 1.0
    kind = "pareto"

    def __post_init__(self):
        if self.alpha <= 0 or self.scale <= 0:
            raise SpecValidationError("alpha and scale must be positive")

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        out = (1.0 + np.maximum(x, 0.0) / self.scale) ** (-self.alpha)
        return out if out.ndim else float(out)

    def sample(self, n, rng):
        return self.scale * (rng.random(n) ** (-1.0 / self.alpha) - 1.0)

    def params(self):
        return {"alpha": self.alpha, "scale": self.scale}


@dataclass(frozen=True, repr=False)
class StepShock(ShockSurvival):
    """Piecewise-constant survival: value ``values[i]`` from ``points[i]`` on.

    Residual mass ``values[-1]`` sits at +inf (the shock may never arrive).
    """

    points: tuple
    values: tuple
    kind = "step"

    def __post_init__(self):
        points = tuple(float(p) for p in self.points)
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "values", values)
        if len(points) != len(values) or not points:
            raise SpecValidationError("points and values must match and be non-empty")
        if any(p < 0 for p in points) or list(points) != sorted(set(points)):
            raise SpecValidationError("points must be non-negative and increasing")
        if any(not 0 <= v <= 1 for v in values) or list(values) != sorted(values, reverse=True):
            raise SpecValidationError("values must be non-increasing in [0,1]")

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        vals = np.concatenate([[1.0], self.values])
        out = vals[np.searchsorted(self.points, x, side="right")]
        return out if out.ndim else float(out)

    def sample(self, n, rng):
        u = rng.random(n)
        # P(E = points[i]) = values[i-1] - values[i]; P(E = inf) = values[-1]
        vals = np.asarray(self.values)
        cum = 1.0 - vals  # df just after each point
        idx = np.searchsorted(cum, u, side="left")
        pts = np.asarray(self.points + (np.inf,))
        return pts[np.minimum(idx, len(self.points))]

    def params(self):
        return {"points": list(self.points), "values": list(self.values)}


_SHOCK_KINDS = {cls.kind: cls for cls in (ExponentialShock, WeibullShock, ParetoShock, StepShock)}


def shock_from_json(obj: dict) -> ShockSurvival:
    kind = obj.get("kind")
    if kind not in _SHOCK_KINDS:
        raise SpecValidationError(f"unknown shock kind {kind!r}")
    return _SHOCK_KINDS[kind](**{k: v for k, v in obj.items() if k != "kind"})


@dataclass(frozen=True)
class ShockSurvivalSpec:
    """Per-cardinality shock laws hbar_1..hbar_d of an exchangeable shock model."""

    shocks: tuple

    def __post_init__(self):
        shocks = tuple(self.shocks)
        if not shocks or not all(isinstance(s, ShockSurvival) for s in shocks):
            raise SpecValidationError("need one ShockSurvival per cardinality 1..d")
        object.__setattr__(self, "shocks", shocks)

    @property
    def d(self) -> int:
        return len(self.shocks)

    def to_json(self) -> dict:
        return {"shocks": [s.to_json() for s in self.shocks]}


def exshock_sample(spec: ShockSurvivalSpec, d: int, n: int, rng) -> SampleMatrix:
    """X_k = min{E_I : k in I} over all 2^d - 1 independent subset shocks."""
    if d != spec.d:
        raise SpecValidationError(f"spec dimension {spec.d} != requested {d}")
    if d > MAX_SHOCK_DIM:
        raise DimensionCapError(f"shock construction caps d at {MAX_SHOCK_DIM}")
    subsets = [c for size in range(1, d + 1) for c in combinations(range(d), size)]
    data = np.full((n, d), np.inf)
    for sub in subsets:
        e = spec.shocks[len(sub) - 1].sample(n, rng)
        for k in sub:
            np.minimum(data[:, k], e, out=data[:, k])
    return SampleMatrix(data, meta=f"exshock d={d}")


def exshock_survival(spec: ShockSurvivalSpec, x) -> float | np.ndarray:
    """Joint survival prod_{k,m} hbar_m(x_{[d-k+1]})**C(d-k, m-1)."""
    x = np.asarray(x, dtype=float)
    d = spec.d
    if x.shape[-1] != d:
        raise SpecValidationError(f"expected {d} coordinates")
    s = np.sort(x, axis=-1)
    log_sf = np.zeros(x.shape[:-1])
    for k in range(1, d + 1):
        t = s[..., d - k]  # x_{[d-k+1]}
        for m in range(1, d - k + 2):
            with np.errstate(divide="ignore"):
                log_sf = log_sf + math.comb(d - k, m - 1) * np.log(
                    np.maximum(spec.shocks[m - 1].survival(t), 1e-300)
                )
    out = np.exp(log_sf)
    return out if out.ndim else float(out)


def exshock_marginal_survival(spec: ShockSurvivalSpec, x) -> float | np.ndarray:
    """P(X_1 > x) = prod_m hbar_m(x)**C(d-1, m-1)."""
    x = np.asarray(x, dtype=float)
    d = spec.d
    out = np.ones(x.shape)
    for m in range(1, d + 1):
        out = out * spec.shocks[m - 1].survival(x) ** math.comb(d - 1, m - 1)
    return out if out.ndim else float(out)


def _marginal_inverse(spec: ShockSurvivalSpec, u: float, tol: float = 1e-12) -> float:
    """Generalized inverse of the non-increasing marginal survival function."""
    if u >= 1.0:
        return 0.0
    hi = 1.0
    for _ in range(300):
        if exshock_marginal_survival(spec, hi) <= u:
            break
        hi *= 2.0
    else:
        return math.inf
    lo = 0.0
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if exshock_marginal_survival(spec, mid) <= u:
            hi = mid
        else:
            lo = mid
    return hi


def exshock_copula_eval(spec: ShockSurvivalSpec, u) -> float:
    """Survival copula chat(u) = u_[1] * prod_{k>=2} g_k(u_[k]) with
    g_k = prod_m (hbar_m o sfinv_1)**C(d-k, m-1)."""
    u = np.asarray(u, dtype=float)
    if ((u < 0) | (u > 1)).any():
        raise SpecValidationError("copula arguments must lie in [0,1]")
    d = spec.d
    if u.shape != (d,):
        raise SpecValidationError(f"expected {d} coordinates")
    s = np.sort(u)
    if s[0] == 0.0:
        return 0.0
    inv_cache: dict[float, float] = {}

    def inv(v: float) -> float:
        if v not in inv_cache:
            inv_cache[v] = _marginal_inverse(spec, v)
        return inv_cache[v]

    value = float(s[0])
    for k in range(2, d + 1):
        x = inv(float(s[k - 1]))
        gk = 1.0
        for m in range(1, d - k + 2):
            gk *= float(spec.shocks[m - 1].survival(x)) ** math.comb(d - k, m - 1)
        value *= gk
    return value


# -- base distributions for the Dirichlet prior ---------------------------------

class BaseDistribution:
    """Continuous strictly increasing distribution function used as DP base."""

    family = "abstract"

    def cdf(self, x):
        raise NotImplementedError

    def ppf(self, u):
        raise NotImplementedError

    def sample(self, n, rng):
        raise NotImplementedError

    def params(self) -> dict:
        raise NotImplementedError

    def to_json(self) -> dict:
        return {"family": self.family, **self.params()}


@dataclass(frozen=True)
class UniformBase(BaseDistribution):
    a: float = 0.0
    b: float = 1.0
    family = "uniform"

    def __post_init__(self):
        if not self.b > self.a:
            raise SpecValidationError("need b > a")

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        out = np.clip((x - self.a) / (self.b - self.a), 0.0, 1.0)
        return out if out.ndim else float(out)

    def ppf(self, u):
        u = np.asarray(u, dtype=float)
        out = self.a + (self.b - self.a) * u
        return out if out.ndim else float(out)

    def sample(self, n, rng):
        return rng.uniform(self.a, self.b, size=n)

    def params(self):
        return {"a": self.a, "b": self.b}


@dataclass(frozen=True)
class ExponentialBase(BaseDistribution):
    rate: float = 1.0
    family = "exponential"

    def __post_init__(self):
        if self.rate <= 0:
            raise SpecValidationError("rate must be positive")

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        out = -np.expm1(-self.rate * np.maximum(x, 0.0))
        return out if out.ndim else float(out)

    def ppf(self, u):
        u = np.asarray(u, dtype=float)
        out = -np.log1p(-u) / self.rate
        return out if out.ndim else float(out)

    def sample(self, n, rng):
        return rng.exponential(1.0 / self.rate, size=n)

    def params(self):
        return {"rate": self.rate}


@dataclass(frozen=True)
class NormalBase(BaseDistribution):
    mu: float = 0.0
    sigma: float = 1.0
    family = "normal"

    def __post_init__(self):
        if self.sigma <= 0:
            raise SpecValidationError("sigma must be positive")

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        out = special.ndtr((x - self.mu) / self.sigma)
        return out if out.ndim else float(out)

    def ppf(self, u):
        u = np.asarray(u, dtype=float)
        out = self.mu + self.sigma * special.ndtri(u)
        return out if out.ndim else float(out)

    def sample(self, n, rng):
        return self.mu + self.sigma * rng.standard_normal(n)

    def params(self):
        return {"mu": self.mu, "sigma": self.sigma}


_BASES = {cls.family: cls for cls in (UniformBase, ExponentialBase, NormalBase)}


def base_distribution_from_json(obj: dict) -> BaseDistribution:
    fam = obj.get("family")
    if fam not in _BASES:
        raise SpecValidationError(f"unknown base distribution {fam!r}")
    return _BASES[fam](**{k: v for k, v in obj.items() if k != "family"})


# -- additive families -----------------------------------------------------------

class AdditiveFamily:
    """Family of Laplace exponents t -> psi_t of a non-decreasing process with
    independent increments; psi_t(x) non-decreasing in t, psi_t - psi_s a
    Laplace exponent for s <= t."""

    kind = "abstract"

    def psi(self, t, x):
        """psi_t(x); vectorized over t for scalar x >= 0."""
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


class PiecewiseLevy(AdditiveFamily):
    """Stationary-increment pieces glued at breakpoints 0 = t_0 < t_1 < ...;
    piece i runs on [t_i, t_{i+1}) with its own Laplace exponent."""

    kind = "piecewise_levy"

    def __init__(self, breakpoints, pieces):
        from .lack_of_memory import CompoundPoissonSubordinatorSpec

        breakpoints = tuple(float(t) for t in breakpoints)
        pieces = tuple(pieces)
        if not pieces or len(breakpoints) != len(pieces):
            raise SpecValidationError("need one piece per breakpoint")
        if breakpoints[0] != 0.0 or any(
            b >= a for b, a in zip(breakpoints[1:], breakpoints[2:])
        ) or (len(breakpoints) > 1 and any(np.diff(breakpoints) <= 0)):
            raise SpecValidationError("breakpoints must start at 0 and increase")
        if not all(isinstance(p, CompoundPoissonSubordinatorSpec) for p in pieces):
            raise SpecValidationError("pieces must be subordinator specs")
        self.breakpoints = breakpoints
        self.pieces = pieces

    def psi(self, t, x):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape)
        ends = self.breakpoints[1:] + (math.inf,)
        for start, end, piece in zip(self.breakpoints, ends, self.pieces):
            dur = np.clip(np.minimum(t, end) - start, 0.0, None)
            out = out + dur * float(piece.laplace_exponent(x))
        return out if out.ndim else float(out)

    def to_json(self):
        return {
            "kind": self.kind,
            "breakpoints": list(self.breakpoints),
            "pieces": [p.to_json() for p in self.pieces],
        }


class DirichletPriorFamily(AdditiveFamily):
    """Latent process of the Dirichlet prior with concentration c and base G."""

    kind = "dirichlet_prior"

    def __init__(self, c: float, base: BaseDistribution):
        if c <= 0:
            raise SpecValidationError("concentration must be positive")
        self.c = float(c)
        self.base = base

    def psi(self, t, x):
        t = np.asarray(t, dtype=float)
        gbar = self.c * (1.0 - np.asarray(self.base.cdf(t), dtype=float))
        x = float(x)
        if x == 0.0:
            out = np.zeros(gbar.shape)
            return out if out.ndim else float(out)
        with np.errstate(divide="ignore"):
            out = np.where(
                gbar > 0,
                special.gammaln(np.maximum(gbar, 1e-300))
                + special.gammaln(x + self.c)
                - special.gammaln(x + np.maximum(gbar, 1e-300))
                - special.gammaln(self.c),
                np.inf,
            )
        return out if out.ndim else float(out)

    def psi_integral(self, t: float, x: float) -> float:
        """Same exponent by direct quadrature of the jump measure (slow path)."""
        gbar = self.c * (1.0 - float(self.base.cdf(t)))
        if gbar <= 0:
            return math.inf if x > 0 else 0.0

        def integrand(u):
            return (1.0 - math.exp(-x * u)) * (math.exp(-u * gbar) - math.exp(-u * self.c)) / (
                u * -math.expm1(-u)
            )

        val, _ = integrate.quad(integrand, 0.0, np.inf, epsabs=1e-11, epsrel=1e-10, limit=400)
        return float(val)

    def to_json(self):
        return {"kind": self.kind, "c": self.c, "base": self.base.to_json()}


class SatoFamily(AdditiveFamily):
    """Self-similar additive family psi_t(x) = psi(x*t) from a self-decomposable
    Laplace exponent; currently the Gamma exponent alpha*log(1+x)."""

    kind = "sato"

    def __init__(self, alpha: float):
        if alpha <= 0:
            raise SpecValidationError("alpha must be positive")
        self.alpha = float(alpha)

    def bernstein(self, x):
        x = np.asarray(x, dtype=float)
        out = self.alpha * np.log1p(x)
        return out if out.ndim else float(out)

    def psi(self, t, x):
        t = np.asarray(t, dtype=float)
        out = self.alpha * np.log1p(float(x) * t)
        return out if out.ndim else float(out)

    def to_json(self):
        return {"kind": self.kind, "alpha": self.alpha}


def additive_family_from_json(obj: dict) -> AdditiveFamily:
    from .lack_of_memory import CompoundPoissonSubordinatorSpec

    kind = obj.get("kind")
    if kind == "piecewise_levy":
        pieces = [CompoundPoissonSubordinatorSpec.from_json(p) for p in obj["pieces"]]
        return PiecewiseLevy(obj["breakpoints"], pieces)
    if kind == "dirichlet_prior":
        return DirichletPriorFamily(obj["c"], base_distribution_from_json(obj["base"]))
    if kind == "sato":
        return SatoFamily(obj["alpha"])
    raise SpecValidationError(f"unknown additive family {kind!r}")


def additive_survival(spec: AdditiveFamily, x) -> float | np.ndarray:
    """P(X > x) = prod_k exp(-[psi_{x_{[d-k+1]}}(k) - psi_{x_{[d-k+1]}}(k-1)])."""
    x = np.asarray(x, dtype=float)
    if (x < 0).any():
        raise SpecValidationError("coordinates must be non-negative")
    d = x.shape[-1]
    s = np.sort(x, axis=-1)
    total = np.zeros(x.shape[:-1])
    for k in range(1, d + 1):
        t = s[..., d - k]
        total = total + (spec.psi(t, k) - spec.psi(t, k - 1))
    out = np.exp(-total)
    return out if out.ndim else float(out)


# -- Dirichlet prior sampling and copula ------------------------------------------

def sample_dp(c: float, base: BaseDistribution, d: int, n: int, rng) -> SampleMatrix:
    """Predictive (urn) sampler: a fresh base draw with probability c/(c+k),
    otherwise a uniformly chosen previous value."""
    if c <= 0:
        raise SpecValidationError("concentration must be positive")
    data = np.empty((n, d))
    data[:, 0] = base.sample(n, rng)
    rows = np.arange(n)
    for k in range(1, d):
        fresh = rng.random(n) < c / (c + k)
        pick = rng.integers(0, k, size=n)
        new = base.sample(n, rng)
        data[:, k] = np.where(fresh, new, data[rows, pick])
    return SampleMatrix(data, meta=f"dirichlet_prior c={c} base={base.family} d={d}")


def dp_copula_eval(c: float, u) -> float:
    """chat_c(u) = u_[1] * prod_{k=2}^d (c*u_[k] + k - 1)/(c + k - 1)."""
    if c <= 0:
        raise SpecValidationError("concentration must be positive")
    u = np.asarray(u, dtype=float)
    if ((u < 0) | (u > 1)).any():
        raise SpecValidationError("copula arguments must lie in [0,1]")
    s = np.sort(u)
    k = np.arange(2, u.size + 1)
    return float(s[0] * np.prod((c * s[1:] + k - 1) / (c + k - 1)))


def dp_survival(c: float, base: BaseDistribution, x) -> float:
    """P(X > x) for DP samples: the copula applied to marginal survivals."""
    x = np.asarray(x, dtype=float)
    return dp_copula_eval(c, 1.0 - np.asarray(base.cdf(x), dtype=float))


# -- Sato frailty -------------------------------------------------------------------

def sato_survival(alpha: float, x) -> float | np.ndarray:
    """P(X > x) = (prod_k ((d-k)*x_[k] + 1)/((d-k+1)*x_[k] + 1))**alpha."""
    if alpha <= 0:
        raise SpecValidationError("alpha must be positive")
    x = np.asarray(x, dtype=float)
    if (x < 0).any():
        raise SpecValidationError("coordinates must be non-negative")
    d = x.shape[-1]
    s = np.sort(x, axis=-1)
    k = np.arange(1, d + 1, dtype=float)
    num = (d - k) * s + 1.0
    den = (d - k + 1.0) * s + 1.0
    out = np.prod(num / den, axis=-1) ** alpha
    return out if out.ndim else float(out)


# -- self-decomposability probe -------------------------------------------------------

def fd_weights(z: float, nodes, m: int) -> np.ndarray:
    """Fornberg finite-difference weights for derivatives 0..m at z from nodes.

    Returns an array w with shape (len(nodes), m+1); column k gives the
    weights of the k-th derivative.
    """
    nodes = np.asarray(nodes, dtype=float)
    n = nodes.size
    w = np.zeros((n, m + 1))
    w[0, 0] = 1.0
    c1 = 1.0
    c4 = nodes[0] - z
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - z
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    w[i, k] = c1 * (k * w[i - 1, k - 1] - c5 * w[i - 1, k]) / c2
                w[i, 0] = -c1 * c5 * w[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                w[j, k] = (c4 * w[j, k] - k * w[j, k - 1]) / c3
            w[j, 0] = c4 * w[j, 0] / c3
        c1 = c2
    return w


def check_self_decomposable(psi, n_points: int = 20, rel_tol: float = 1e-8) -> bool:
    """Probe whether x -> x*psi'(x) is again a valid Laplace exponent.

    ``psi`` is a callable Laplace exponent (or an object exposing
    ``laplace_exponent``/``bernstein``).  Derivatives up to order four are
    taken by high-order finite differences with step x/100 at log-spaced
    points; the sign pattern of g = x*psi'(x) and its first three derivatives
    is classified with a relative threshold.  A jump at zero fails the probe.
    """
    if hasattr(psi, "bernstein"):
        fn = psi.bernstein
    elif hasattr(psi, "laplace_exponent"):
        fn = psi.laplace_exponent
    else:
        fn = psi
    ref = float(fn(1.0))
    if not math.isfinite(ref):
        return False
    if float(fn(1e-300)) > 1e-9 * max(abs(ref), 1e-12):
        return False  # discontinuous at 0: killed, not self-decomposable
    offsets = np.arange(-4, 5, dtype=float)
    for x in np.geomspace(0.05, 20.0, n_points):
        h = 0.01 * x
        nodes = x + offsets * h
        vals = np.array([float(fn(v)) for v in nodes])
        w = fd_weights(x, nodes, 4)
        d1, d2, d3, d4 = (float(vals @ w[:, k]) for k in range(1, 5))
        g = x * d1
        g1 = d1 + x * d2
        g2 = 2.0 * d2 + x * d3
        g3 = 3.0 * d3 + x * d4
        scale = max(abs(g), 1e-12)
        # FD round-off grows like eps/h^k; widen thresholds accordingly
        if g < -rel_tol * scale:
            return False
        if g1 * x < -rel_tol * scale * 10:
            return False
        if g2 * x * x > max(rel_tol, 1e-7) * scale * 10:
            return False
        if g3 * x**3 < -max(rel_tol, 1e-6) * scale * 10:
            return False
    return True
