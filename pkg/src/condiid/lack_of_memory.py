"""Multivariate lack-of-memory laws: exponential (Marshall-Olkin type) and
wide-sense geometric.

Both families share one algebraic survival form: after sorting the argument,
the k-th largest coordinate gap is raised to a parameter b_k,

    sf(x) = prod_k b_k ** (x_{[d-k+1]} - x_{[d-k]}),   x_{[0]} := 0.

The continuous flavor requires (b_0..b_d) log-d-monotone, the discrete flavor
d-monotone.  Samplers come in two independent constructions that must agree in
law: explicit exogenous shocks, and first passage of a latent non-decreasing
process across iid unit-exponential barriers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionCapError, NotDMonotoneError, SpecValidationError
from .mixing import Beta, MixingLaw
from .moments import (
    ExtendibilityVerdict,
    MonotoneSequence,
    hausdorff_extendible,
    is_d_monotone,
    is_log_d_monotone,
)
from .sample import SampleMatrix

__all__ = [
    "LomParameterSeq",
    "ShockRateSpec",
    "CompoundPoissonSubordinatorSpec",
    "mo_survival",
    "geo_survival",
    "b_from_lambda",
    "lambda_from_b",
    "b_from_p",
    "p_from_b_geo",
    "sample_mo_shocks",
    "sample_geo_shocks",
    "sample_mo_ciid",
    "sample_geo_ciid",
    "is_ciid_extendible",
    "beta_family_bseq",
]

CONTINUOUS = "continuous"
DISCRETE = "discrete"

MAX_SHOCK_DIM = 20


@dataclass(frozen=True)
class LomParameterSeq:
    """Survival-form parameters (b_0..b_d) plus the flavor they belong to."""

    values: tuple
    flavor: str

    def __post_init__(self):
        seq = MonotoneSequence(tuple(self.values))
        object.__setattr__(self, "values", seq.values)
        if self.flavor == CONTINUOUS:
            if not is_log_d_monotone(seq.values):
                raise NotDMonotoneError(
                    f"continuous-flavor parameters must be log-d-monotone, got {seq.values}"
                )
        elif self.flavor == DISCRETE:
            if not is_d_monotone(seq.values):
                raise NotDMonotoneError(
                    f"discrete-flavor parameters must be d-monotone, got {seq.values}"
                )
        else:
            raise SpecValidationError(f"unknown flavor {self.flavor!r}")

    @property
    def d(self) -> int:
        return len(self.values) - 1

    def to_json(self) -> dict:
        return {"b": list(self.values), "flavor": self.flavor}


def _ordered_gap_logsf(values: tuple, x: np.ndarray) -> np.ndarray:
    """log sf(x) = sum_k gap_k * log b_k over (..., d) arguments."""
    b = np.asarray(values[1:], dtype=float)
    s = np.sort(x, axis=-1)
    gaps = np.diff(s, axis=-1, prepend=0.0)
    # exponent of b_k is the gap at sorted position d-k (0-indexed)
    exps = gaps[..., ::-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        logb = np.where(b > 0, np.log(np.maximum(b, 1e-300)), -np.inf)
        terms = np.where(exps > 0, exps * logb, 0.0)
    return terms.sum(axis=-1)


def mo_survival(params: LomParameterSeq, x) -> float | np.ndarray:
    """Closed-form joint survival function of the continuous flavor."""
    if params.flavor != CONTINUOUS:
        raise SpecValidationError("mo_survival needs continuous-flavor parameters")
    x = np.asarray(x, dtype=float)
    if (x < 0).any():
        raise SpecValidationError("coordinates must be non-negative")
    if x.shape[-1] != params.d:
        raise SpecValidationError(f"expected {params.d} coordinates, got {x.shape[-1]}")
    out = np.exp(_ordered_gap_logsf(params.values, x))
    return out if out.ndim else float(out)


def geo_survival(params: LomParameterSeq, nvec) -> float | np.ndarray:
    """Closed-form joint survival of the discrete flavor on the integer grid."""
    if params.flavor != DISCRETE:
        raise SpecValidationError("geo_survival needs discrete-flavor parameters")
    nvec = np.asarray(nvec)
    if not np.issubdtype(nvec.dtype, np.integer):
        rounded = np.rint(np.asarray(nvec, dtype=float))
        if np.abs(np.asarray(nvec, dtype=float) - rounded).max() > 0:
            raise SpecValidationError("geometric survival is defined on integer grids")
        nvec = rounded
    nvec = np.asarray(nvec, dtype=float)
    if (nvec < 0).any():
        raise SpecValidationError("coordinates must be non-negative")
    if nvec.shape[-1] != params.d:
        raise SpecValidationError(f"expected {params.d} coordinates, got {nvec.shape[-1]}")
    out = np.exp(_ordered_gap_logsf(params.values, nvec))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class ShockRateSpec:
    """Shock parameters, either exchangeable per-cardinality or a full subset map.

    ``kind`` is "exponential" (rates lambda_I >= 0, every component covered by
    positive total rate) or "geometric" (subset probabilities p_I summing to 1
    with each component hit with positive probability).  In the exchangeable
    case ``cardinality`` holds lambda_1..lambda_d, respectively p_0..p_d.
    """

    d: int
    kind: str
    cardinality: tuple | None = None
    subsets: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in ("exponential", "geometric"):
            raise SpecValidationError(f"unknown shock kind {self.kind!r}")
        if self.d < 1:
            raise SpecValidationError("dimension must be at least 1")
        if (self.cardinality is None) == (self.subsets is None):
            raise SpecValidationError("specify exactly one of cardinality rates or a subset map")
        if self.cardinality is not None:
            card = tuple(float(v) for v in self.cardinality)
            object.__setattr__(self, "cardinality", card)
            if any(v < 0 for v in card):
                raise SpecValidationError("rates/probabilities must be non-negative")
            if self.kind == "exponential":
                if len(card) != self.d:
                    raise SpecValidationError(f"need lambda_1..lambda_{self.d}")
                if sum(card) <= 0:
                    raise SpecValidationError("at least one shock rate must be positive")
            else:
                if len(card) != self.d + 1:
                    raise SpecValidationError(f"need p_0..p_{self.d}")
                total = sum(math.comb(self.d, k) * card[k] for k in range(self.d + 1))
                if abs(total - 1.0) > 1e-12:
                    raise SpecValidationError(f"subset probabilities sum to {total!r}, not 1")
                miss = sum(math.comb(self.d - 1, i) * card[i] for i in range(self.d))
                if miss >= 1.0 - 1e-15:
                    raise SpecValidationError("every component needs positive hit probability")
        else:
            subsets = {frozenset(k): float(v) for k, v in self.subsets.items()}
            object.__setattr__(self, "subsets", subsets)
            if any(v < 0 for v in subsets.values()):
                raise SpecValidationError("rates/probabilities must be non-negative")
            for key in subsets:
                if not key <= set(range(1, self.d + 1)):
                    raise SpecValidationError(f"subset {sorted(key)} outside 1..{self.d}")
            if self.kind == "exponential":
                if frozenset() in subsets and subsets[frozenset()] > 0:
                    raise SpecValidationError("the empty set carries no exponential shock")
                for k in range(1, self.d + 1):
                    if sum(v for key, v in subsets.items() if k in key) <= 0:
                        raise SpecValidationError(f"component {k} is never hit")
            else:
                total = sum(subsets.values())
                if abs(total - 1.0) > 1e-12:
                    raise SpecValidationError(f"subset probabilities sum to {total!r}, not 1")
                for k in range(1, self.d + 1):
                    if sum(v for key, v in subsets.items() if k not in key) >= 1.0 - 1e-15:
                        raise SpecValidationError(f"component {k} is never hit")

    @property
    def exchangeable(self) -> bool:
        """Parameters depend on the subset only through its cardinality."""
        if self.cardinality is not None:
            return True
        for size in range(0, self.d + 1):
            vals = {v for key, v in self.subsets.items() if len(key) == size}
            present = sum(1 for key in self.subsets if len(key) == size)
            if len(vals) > 1:
                return False
            # subsets absent from the map carry parameter 0
            if vals and max(vals) > 0 and present != math.comb(self.d, size):
                return False
        return True

    def cardinality_values(self) -> tuple:
        """Per-cardinality parameters, requires exchangeability."""
        if self.cardinality is not None:
            return self.cardinality
        if not self.exchangeable:
            raise SpecValidationError("spec is not exchangeable")
        lo = 1 if self.kind == "exponential" else 0
        out = []
        for size in range(lo, self.d + 1):
            vals = [v for key, v in self.subsets.items() if len(key) == size]
            out.append(vals[0] if vals else 0.0)
        return tuple(out)

    def subset_items(self) -> list[tuple[frozenset, float]]:
        """Explicit (subset, parameter) list, expanding exchangeable specs."""
        if self.subsets is not None:
            items = dict(self.subsets)
        else:
            items = {}
            members = list(range(1, self.d + 1))
            from itertools import combinations

            lo = 1 if self.kind == "exponential" else 0
            for size in range(lo, self.d + 1):
                value = (
                    self.cardinality[size - 1] if self.kind == "exponential" else self.cardinality[size]
                )
                for combo in combinations(members, size):
                    items[frozenset(combo)] = value
        if self.kind == "geometric" and frozenset() not in items:
            items[frozenset()] = 0.0
        return sorted(items.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))

    def to_json(self) -> dict:
        if self.cardinality is not None:
            key = "cardinality_rates" if self.kind == "exponential" else "cardinality_probs"
            return {"kind": self.kind, "d": self.d, key: list(self.cardinality)}
        return {
            "kind": self.kind,
            "d": self.d,
            "subsets": {",".join(map(str, sorted(k))): v for k, v in self.subsets.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ShockRateSpec":
        kind = obj.get("kind", "exponential")
        d = obj.get("d")
        card = obj.get("cardinality_rates") or obj.get("cardinality_probs")
        if card is not None:
            if d is None:
                d = len(card) if kind == "exponential" else len(card) - 1
            return cls(d=int(d), kind=kind, cardinality=tuple(card))
        subsets = obj.get("subsets")
        if subsets is None:
            raise SpecValidationError("shock spec JSON needs cardinality values or a subset map")
        parsed = {
            tuple(int(v) for v in key.split(",") if v.strip()): rate
            for key, rate in subsets.items()
        }
        if d is None:
            d = max((max(k) for k in parsed if k), default=0)
        return cls(d=int(d), kind=kind, subsets=parsed)


def b_from_lambda(spec: ShockRateSpec) -> LomParameterSeq:
    """Survival-form parameters from exchangeable exponential shock rates:
    b_k = prod_{i<=k} exp(-sum_j C(d-i, j) lambda_{j+1})."""
    if spec.kind != "exponential":
        raise SpecValidationError("b_from_lambda needs exponential shock rates")
    lam = spec.cardinality_values()  # lam[j] == lambda_{j+1}
    d = spec.d
    log_factors = [
        -sum(math.comb(d - i, j) * lam[j] for j in range(d - i + 1)) for i in range(1, d + 1)
    ]
    values = [1.0]
    acc = 0.0
    for lf in log_factors:
        acc += lf
        values.append(math.exp(acc))
    return LomParameterSeq(tuple(values), CONTINUOUS)


def lambda_from_b(params: LomParameterSeq) -> ShockRateSpec:
    """Invert :func:`b_from_lambda`; valid for any log-d-monotone sequence."""
    if params.flavor != CONTINUOUS:
        raise SpecValidationError("lambda_from_b needs continuous-flavor parameters")
    b = params.values
    d = params.d
    a = [-math.log(b[i] / b[i - 1]) for i in range(1, d + 1)]
    lam = [0.0] * d  # lam[j] == lambda_{j+1}
    for i in range(d, 0, -1):
        rest = sum(math.comb(d - i, j) * lam[j] for j in range(d - i))
        lam[d - i] = a[i - 1] - rest
    lam = [0.0 if -1e-12 < v < 0.0 else v for v in lam]
    if any(v < 0 for v in lam):
        raise SpecValidationError(f"sequence does not correspond to non-negative rates: {lam}")
    return ShockRateSpec(d=d, kind="exponential", cardinality=tuple(lam))


def b_from_p(spec: ShockRateSpec) -> LomParameterSeq:
    """b_k = sum_i C(d-k, i) p_i for exchangeable geometric shock probabilities."""
    if spec.kind != "geometric":
        raise SpecValidationError("b_from_p needs geometric shock probabilities")
    p = spec.cardinality_values()
    d = spec.d
    values = tuple(
        sum(math.comb(d - k, i) * p[i] for i in range(d - k + 1)) for k in range(d + 1)
    )
    return LomParameterSeq((1.0,) + values[1:], DISCRETE)


def p_from_b_geo(params: LomParameterSeq) -> ShockRateSpec:
    """Invert :func:`b_from_p`: p_m = nabla^m b_{d-m}, non-negative for any
    d-monotone input."""
    if params.flavor != DISCRETE:
        raise SpecValidationError("p_from_b_geo needs discrete-flavor parameters")
    from .moments import backward_difference

    d = params.d
    p = [max(0.0, backward_difference(params.values, m, d - m)) for m in range(d + 1)]
    total = sum(math.comb(d, m) * p[m] for m in range(d + 1))
    p = [v / total for v in p]
    return ShockRateSpec(d=d, kind="geometric", cardinality=tuple(p))


def _subset_masks(items, d):
    masks = np.zeros((len(items), d), dtype=bool)
    values = np.empty(len(items))
    for j, (key, v) in enumerate(items):
        for k in key:
            masks[j, k - 1] = True
        values[j] = v
    return masks, values


def sample_mo_shocks(spec: ShockRateSpec, d: int, n: int, rng) -> SampleMatrix:
    """Exogenous-shock construction X_k = min{E_I : k in I} with exponential E_I."""
    if spec.kind != "exponential":
        raise SpecValidationError("sample_mo_shocks needs exponential shock rates")
    if d != spec.d:
        raise SpecValidationError(f"spec dimension {spec.d} != requested {d}")
    if d > MAX_SHOCK_DIM:
        raise DimensionCapError(f"shock construction caps d at {MAX_SHOCK_DIM}")
    items = [kv for kv in spec.subset_items() if len(kv[0]) > 0]
    masks, rates = _subset_masks(items, d)
    data = np.empty((n, d))
    chunk = max(1, int(2e7) // max(1, len(items)))
    for start in range(0, n, chunk):
        m = min(chunk, n - start)
        e = rng.exponential(size=(m, len(items)))
        with np.errstate(divide="ignore"):
            e = np.where(rates > 0, e / np.where(rates > 0, rates, 1.0), np.inf)
        for k in range(d):
            cols = masks[:, k]
            data[start : start + m, k] = e[:, cols].min(axis=1)
    return SampleMatrix(data, meta=f"mo_shocks d={d}")


def sample_geo_shocks(spec: ShockRateSpec, d: int, n: int, rng) -> SampleMatrix:
    """Repeated iid subset draws; X_k is the first round whose subset contains k."""
    if spec.kind != "geometric":
        raise SpecValidationError("sample_geo_shocks needs geometric shock probabilities")
    if d != spec.d:
        raise SpecValidationError(f"spec dimension {spec.d} != requested {d}")
    if d > MAX_SHOCK_DIM:
        raise DimensionCapError(f"shock construction caps d at {MAX_SHOCK_DIM}")
    items = spec.subset_items()
    masks, probs = _subset_masks(items, d)
    data = np.zeros((n, d))
    active = np.arange(n)
    round_no = 0
    while active.size:
        round_no += 1
        draw = rng.choice(len(items), size=active.size, p=probs)
        hit = masks[draw]  # (n_active, d)
        newly = hit & (data[active] == 0)
        r_idx, c_idx = np.nonzero(newly)
        data[active[r_idx], c_idx] = round_no
        active = active[(data[active] == 0).any(axis=1)]
    return SampleMatrix(data, meta=f"geo_shocks d={d}")


@dataclass(frozen=True)
class CompoundPoissonSubordinatorSpec:
    """Non-decreasing latent process: drift, exponential kill, finite jump atoms.

    Laplace exponent lapexp(x) = kill*1_{x>0} + drift*x + sum_j rate_j*(1 - exp(-size_j*x)).
    """

    drift: float = 0.0
    kill: float = 0.0
    jumps: tuple = ()

    def __post_init__(self):
        if self.drift < 0 or self.kill < 0:
            raise SpecValidationError("drift and kill rate must be non-negative")
        jumps = tuple((float(s), float(r)) for s, r in self.jumps)
        if any(s <= 0 or r <= 0 for s, r in jumps):
            raise SpecValidationError("jump sizes and rates must be positive")
        object.__setattr__(self, "jumps", jumps)

    @property
    def degenerate(self) -> bool:
        return self.drift == 0 and self.kill == 0 and not self.jumps

    def laplace_exponent(self, x):
        x = np.asarray(x, dtype=float)
        out = self.drift * x + np.where(x > 0, self.kill, 0.0)
        for size, rate in self.jumps:
            out = out + rate * (-np.expm1(-size * x))
        return out if out.ndim else float(out)

    def b_seq(self, d: int) -> LomParameterSeq:
        vals = tuple(math.exp(-float(self.laplace_exponent(k))) for k in range(d + 1))
        return LomParameterSeq((1.0,) + vals[1:], CONTINUOUS)

    def to_json(self) -> dict:
        return {
            "drift": self.drift,
            "kill": self.kill,
            "jumps": [{"size": s, "rate": r} for s, r in self.jumps],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CompoundPoissonSubordinatorSpec":
        return cls(
            drift=obj.get("drift", 0.0),
            kill=obj.get("kill", 0.0),
            jumps=tuple((j["size"], j["rate"]) for j in obj.get("jumps", ())),
        )


def sample_mo_ciid(
    sub: CompoundPoissonSubordinatorSpec, d: int, n: int, rng
) -> SampleMatrix:
    """First passage of the compound-Poisson path across iid unit-exponential barriers.

    The path is simulated event by event, drift segments are crossed in closed
    form, so the first-passage times are exact.  Kill sends the path to
    infinity, which makes all remaining components fail simultaneously.
    """
    if sub.degenerate:
        raise SpecValidationError("subordinator must be non-degenerate")
    mu, a = sub.drift, sub.kill
    sizes = np.array([s for s, _ in sub.jumps])
    rates = np.array([r for _, r in sub.jumps])
    total_rate = float(rates.sum())
    cum = np.cumsum(rates) / total_rate if total_rate > 0 else None
    data = np.empty((n, d))
    for i in range(n):
        eps = rng.exponential(size=d)
        order = np.argsort(eps)
        levels = eps[order]
        x = np.empty(d)
        t = 0.0
        z = 0.0
        ptr = 0
        kill_t = rng.exponential() / a if a > 0 else math.inf
        next_jump = rng.exponential() / total_rate if total_rate > 0 else math.inf
        while ptr < d:
            t_event = min(kill_t, next_jump)
            if mu > 0:
                reach = z + mu * (t_event - t) if math.isfinite(t_event) else math.inf
                while ptr < d and levels[ptr] < reach:
                    x[ptr] = t + (levels[ptr] - z) / mu
                    ptr += 1
            if ptr >= d:
                break
            if not math.isfinite(t_event):
                x[ptr:] = math.inf  # no drift, no further events: never crossed
                break
            z += mu * (t_event - t)
            t = t_event
            if kill_t <= next_jump:
                x[ptr:] = kill_t
                ptr = d
            else:
                j = int(np.searchsorted(cum, rng.random())) if cum is not None else 0
                z += sizes[j]
                while ptr < d and levels[ptr] < z:
                    x[ptr] = t
                    ptr += 1
                next_jump = t + rng.exponential() / total_rate
        data[i, order] = x
    return SampleMatrix(data, meta=f"mo_ciid drift={mu} kill={a} jumps={len(sizes)} d={d}")


def sample_geo_ciid(law: MixingLaw, d: int, n: int, rng) -> SampleMatrix:
    """First passage of the random walk Z_t = Y_1 + ... + Y_{floor(t)} across
    iid unit-exponential barriers; integer-valued samples.

    The walk is capped once the chance of still being below the largest
    barrier drops under 1e-12 (Chernoff bound); rows exceeding the cap get
    the +inf sentinel.
    """
    b1 = float(law.laplace(1.0))
    if not b1 < 1.0 - 1e-15:
        raise SpecValidationError("the step law must not be identically zero")
    data = np.empty((n, d))
    log_b1 = math.log(b1)
    for i in range(n):
        eps = rng.exponential(size=d)
        top = float(eps.max())
        cap = max(4, math.ceil((top + 12 * math.log(10)) / -log_b1))
        steps = law.sample(min(cap, 64), rng)
        s = np.cumsum(steps)
        while s[-1] <= top and s.size < cap:
            more = law.sample(min(cap - s.size, 2 * s.size), rng)
            s = np.concatenate([s, s[-1] + np.cumsum(more)])
        idx = np.searchsorted(s, eps, side="right")  # first partial sum strictly above
        hit = idx < s.size
        row = np.where(hit, idx + 1.0, math.inf)
        data[i] = row
    return SampleMatrix(data, meta=f"geo_ciid {law!r} d={d}")


def is_ciid_extendible(params: LomParameterSeq) -> ExtendibilityVerdict:
    """Decide whether the law admits a latent-process (conditionally iid)
    representation.

    Continuous flavor: the normalized log-increment sequence must extend to a
    moment sequence; discrete flavor: (b_0..b_d) itself must.  The reported
    Hankel values refer to the sequence actually tested.
    """
    if params.flavor == DISCRETE:
        return hausdorff_extendible(params.values)
    b = params.values
    a = [-math.log(b[i] / b[i - 1]) for i in range(1, len(b))]
    if a[0] <= 0.0:
        # constant sequence: degenerate law, trivially representable
        return ExtendibilityVerdict(extendible=True, hankel_values=(), min_hankel=0.0)
    normalized = tuple(v / a[0] for v in a)
    return hausdorff_extendible((1.0,) + normalized[1:])


def beta_family_bseq(p: float, q: float, d: int) -> LomParameterSeq:
    """Two-parameter discrete-flavor family with b_k the Beta(p, q) moments.

    For q = 2 the matching latent process is of compound Poisson type with
    intensity p + 1 and exponential jumps.
    """
    if d < 0:
        raise SpecValidationError("d must be non-negative")
    law = Beta(p, q)
    values = (1.0,) + tuple(law.moment(k) for k in range(1, d + 1))
    return LomParameterSeq(values, DISCRETE)
