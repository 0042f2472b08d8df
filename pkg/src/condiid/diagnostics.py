"""Empirical necessary-condition tests and the Monte Carlo oracle harness.

One-factor (conditionally iid) laws are positively dependent in several
checkable ways: non-negative pairwise correlation and Kendall's tau, and
order-statistic cdf sums majorized by the iid binomial bound.  This module
implements those tests on samples, a generic sequential-inversion sampler for
closed-form survival functions, and ``mc_verify``: the seeded harness that
compares every sampler in the package against its closed-form law on a grid.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import NonMonotoneConditionalError, SpecValidationError
from .sample import SampleMatrix

__all__ = [
    "EmpiricalDf",
    "empirical_H",
    "empirical_kendall_tau",
    "kendall_tau_null_stderr",
    "binomial_orderstat_bound",
    "majorization_check",
    "radial_symmetry_test",
    "tie_frequency",
    "scarsini_sample",
    "scarsini_cdf",
    "conditional_inversion_sampler",
    "McReport",
    "mc_verify",
    "default_quantile_grid",
    "isotonic_decreasing_fit",
]


# -- empirical distribution of one exchangeable row ------------------------------

@dataclass(frozen=True)
class EmpiricalDf:
    """Right-continuous step distribution function of observed values."""

    points: np.ndarray
    steps: np.ndarray  # value of the df from points[i] onwards

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        vals = np.concatenate([[0.0], self.steps])
        out = vals[np.searchsorted(self.points, t, side="right")]
        return out if out.ndim else float(out)

    def sup_distance(self, cdf) -> float:
        """sup_t |empirical(t) - cdf(t)| against a reference df callable."""
        ref = np.asarray(cdf(self.points), dtype=float)
        before = np.concatenate([[0.0], self.steps[:-1]])
        return float(np.max(np.maximum(np.abs(self.steps - ref), np.abs(before - ref))))


def empirical_H(row) -> EmpiricalDf:
    """Empirical df (1/d) sum_k 1_{X_k <= t} of one exchangeable row."""
    row = np.asarray(row, dtype=float).ravel()
    if row.size < 1:
        raise SpecValidationError("need at least one observation")
    points, counts = np.unique(row, return_counts=True)
    return EmpiricalDf(points=points, steps=np.cumsum(counts) / row.size)


# -- Kendall's tau ----------------------------------------------------------------

def _count_inversions(a: np.ndarray) -> tuple[np.ndarray, int]:
    """Sorted copy of ``a`` and the number of strict inversions, by merge count."""
    n = a.size
    if n <= 64:
        i, j = np.triu_indices(n, 1)
        return np.sort(a), int(np.sum(a[i] > a[j]))
    mid = n // 2
    left, cl = _count_inversions(a[:mid])
    right, cr = _count_inversions(a[mid:])
    pos = np.searchsorted(left, right, side="right")
    cross = int(np.sum(left.size - pos))
    return np.sort(np.concatenate([left, right]), kind="mergesort"), cl + cr + cross


def _tie_pair_count(sorted_vals: np.ndarray) -> int:
    _, counts = np.unique(sorted_vals, return_counts=True)
    return int(np.sum(counts * (counts - 1) // 2))


def empirical_kendall_tau(pairs) -> float:
    """(concordant - discordant) / (n choose 2), ties counted as neither.

    Merge-count algorithm: sort lexicographically by (x, y), count strict
    inversions of the y sequence; tie corrections recover the strict
    concordance count.
    """
    pairs = np.asarray(pairs, dtype=float)
    if pairs.ndim != 2 or pairs.shape[1] != 2 or pairs.shape[0] < 2:
        raise SpecValidationError("need an n x 2 array with n >= 2")
    n = pairs.shape[0]
    order = np.lexsort((pairs[:, 1], pairs[:, 0]))
    x = pairs[order, 0]
    y = pairs[order, 1]
    n0 = n * (n - 1) // 2
    # within equal-x runs y is sorted ascending, so no inversions are counted there
    discordant = _count_inversions(y.copy())[1]
    n1 = _tie_pair_count(x)
    n2 = _tie_pair_count(np.sort(y))
    joint = x + 1j * y
    n3 = _tie_pair_count(np.sort_complex(joint))
    concordant_minus_discordant = n0 - n1 - n2 + n3 - 2 * discordant
    return concordant_minus_discordant / n0


def kendall_tau_null_stderr(n: int) -> float:
    """Standard error of the tau estimator under independence."""
    return math.sqrt(2.0 * (2 * n + 5) / (9.0 * n * (n - 1)))


# -- majorization of order-statistic cdf sums --------------------------------------

def binomial_orderstat_bound(n: int, d: int, p: float) -> float:
    """h_{n,d}(p) = sum_{k=1}^{n} sum_{i=k}^{d} C(d,i) p^i (1-p)^(d-i):
    the iid value of sum_{k<=n} P(X_[k] <= x) at a point with marginal cdf p."""
    if not 1 <= n <= d:
        raise SpecValidationError("need 1 <= n <= d")
    total = 0.0
    for k in range(1, n + 1):
        for i in range(k, d + 1):
            total += math.comb(d, i) * p**i * (1.0 - p) ** (d - i)
    return total


def majorization_check(samples, x: float, marginal_cdf_at_x: float, n_sigma: float = 3.0) -> bool:
    """Check sum_{k<=n} F_hat_{X_[k]}(x) <= h_{n,d}(F_1(x)) for n = 1..d-1.

    The row statistic min(n, #{components <= x}) estimates the left side;
    the inequality must hold within ``n_sigma`` standard errors.
    """
    data = samples.data if isinstance(samples, SampleMatrix) else np.asarray(samples, dtype=float)
    nrows, d = data.shape
    if d < 2:
        raise SpecValidationError("need at least two columns")
    below = (data <= x).sum(axis=1)
    for n in range(1, d):
        stat = np.minimum(n, below)
        mean = float(stat.mean())
        stderr = float(stat.std(ddof=1)) / math.sqrt(nrows)
        bound = binomial_orderstat_bound(n, d, marginal_cdf_at_x)
        if mean > bound + n_sigma * stderr + 1e-12:
            return False
    return True


# -- radial symmetry ----------------------------------------------------------------

def radial_symmetry_test(samples, mu: float, alpha: float = 0.01) -> bool:
    """Two-sample comparison of X - mu against mu - X.

    Per-coordinate Kolmogorov-Smirnov tests (Bonferroni-corrected at level
    ``alpha``) plus a joint orthant comparison on a deterministic grid.
    """
    data = samples.data if isinstance(samples, SampleMatrix) else np.asarray(samples, dtype=float)
    nrows, d = data.shape
    left = data - mu
    right = mu - data
    for k in range(d):
        p = stats.ks_2samp(left[:, k], right[:, k], method="asymp").pvalue
        if p < alpha / d:
            return False
    qs = np.quantile(left, [0.2, 0.4, 0.6, 0.8], axis=0)  # grid from pooled empirical margins
    for row in qs:
        p1 = float((left <= row).all(axis=1).mean())
        p2 = float((right <= row).all(axis=1).mean())
        stderr = math.sqrt((p1 * (1 - p1) + p2 * (1 - p2)) / nrows)
        if abs(p1 - p2) > 3.0 * stderr + 1e-3:
            return False
    return True


def tie_frequency(samples) -> float:
    """Fraction of rows with at least one exactly tied coordinate pair."""
    data = samples.data if isinstance(samples, SampleMatrix) else np.asarray(samples, dtype=float)
    if data.shape[1] < 2:
        raise SpecValidationError("need at least two columns")
    s = np.sort(data, axis=1)
    return float((np.diff(s, axis=1) == 0.0).any(axis=1).mean())


# -- a compact counterexample law ----------------------------------------------------

def scarsini_sample(n: int, rng) -> SampleMatrix:
    """Two-point conditional law: given M uniform on [0, 1/2], each component
    is 1/2 - M or 1/2 + M with equal probability.  Conditionally iid with
    uniform margins, zero correlation and zero Kendall tau, yet not positively
    lower-orthant dependent."""
    m = rng.uniform(0.0, 0.5, size=n)
    signs = np.where(rng.random((n, 2)) < 0.5, -1.0, 1.0)
    return SampleMatrix(0.5 + signs * m[:, None], meta="scarsini")


def scarsini_cdf(x1: float, x2: float) -> float:
    """Joint cdf (1/2) min(x1,x2) + (1/2) max(0, x1 + x2 - 1) on the unit square."""
    for v in (x1, x2):
        if not 0.0 <= v <= 1.0:
            raise SpecValidationError("arguments must lie in [0,1]")
    return 0.5 * min(x1, x2) + 0.5 * max(0.0, x1 + x2 - 1.0)


# -- sequential inversion from a closed-form survival function ------------------------

def _vector_bisect(fn, target, lo, hi, iters: int = 80):
    """Row-wise bisection of a non-increasing fn to fn(x) = target."""
    lo = lo.copy()
    hi = hi.copy()
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        above = fn(mid) > target
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    return 0.5 * (lo + hi)


def _grow_upper(fn, target, start: float = 1.0, max_doublings: int = 120):
    hi = np.full_like(target, start)
    for _ in range(max_doublings):
        need = fn(hi) > target
        if not need.any():
            return hi
        hi = np.where(need, 2.0 * hi, hi)
    return np.where(fn(hi) > target, np.inf, hi)


def conditional_inversion_sampler(survival, d: int, n: int, rng) -> SampleMatrix:
    """Sample a law on [0, inf)^d (d <= 3) given only its joint survival function.

    X_1 inverts the marginal survival; X_2, X_3 invert conditional survival
    ratios built from central finite-difference partial derivatives of the
    supplied function (step 1e-5 relative).  The conditional must be monotone;
    a violation beyond finite-difference noise raises
    NonMonotoneConditionalError.
    """
    if not 1 <= d <= 3:
        raise SpecValidationError("sequential inversion supports d in {1,2,3}")

    def sf(cols):
        pts = np.stack(cols, axis=-1)
        return np.maximum(np.asarray(survival(pts), dtype=float), 0.0)

    zeros = np.zeros(n)
    data = np.empty((n, d))

    u1 = rng.random(n)
    marg = lambda t: sf([t] + [zeros] * (d - 1))
    hi = _grow_upper(marg, u1)
    data[:, 0] = _vector_bisect(marg, u1, zeros.copy(), hi)

    if d >= 2:
        x1 = data[:, 0]
        h1 = 1e-5 * (1.0 + x1)
        lo1 = np.maximum(x1 - h1, 0.0)  # one-sided step at the origin
        spread1 = (x1 + h1) - lo1

        def d1(x2):
            rest = [zeros] * (d - 2)
            return (sf([lo1, x2] + rest) - sf([x1 + h1, x2] + rest)) / spread1

        base = np.maximum(d1(zeros), 1e-300)
        cond2 = lambda x2: d1(x2) / base
        _probe_monotone(cond2, n)
        u2 = rng.random(n)
        hi2 = _grow_upper(cond2, u2)
        data[:, 1] = _vector_bisect(cond2, u2, zeros.copy(), hi2)

    if d == 3:
        x1, x2 = data[:, 0], data[:, 1]
        h1 = 1e-5 * (1.0 + x1)
        h2 = 1e-5 * (1.0 + x2)
        lo1 = np.maximum(x1 - h1, 0.0)
        lo2 = np.maximum(x2 - h2, 0.0)
        spread = ((x1 + h1) - lo1) * ((x2 + h2) - lo2)

        def d12(x3):
            return (
                sf([lo1, lo2, x3])
                - sf([lo1, x2 + h2, x3])
                - sf([x1 + h1, lo2, x3])
                + sf([x1 + h1, x2 + h2, x3])
            ) / spread

        base = np.maximum(d12(zeros), 1e-300)
        cond3 = lambda x3: d12(x3) / base
        _probe_monotone(cond3, n)
        u3 = rng.random(n)
        hi3 = _grow_upper(cond3, u3)
        data[:, 2] = _vector_bisect(cond3, u3, zeros.copy(), hi3)

    return SampleMatrix(data, meta=f"conditional_inversion d={d}")


def _probe_monotone(cond, n: int, tol: float = 1e-4):
    grid = np.geomspace(0.05, 8.0, 12)
    prev = None
    for g in grid:
        val = cond(np.full(n, g))
        if prev is not None and np.any(val > prev + tol):
            raise NonMonotoneConditionalError(
                "conditional survival increased along the grid; "
                "the supplied survival function is not valid"
            )
        prev = val


# -- Monte Carlo verification harness ---------------------------------------------------

@dataclass(frozen=True)
class McReport:
    """Grid-wise comparison of empirical and closed-form survival values."""

    grid: tuple
    closed: tuple
    empirical: tuple
    stderr: tuple
    n: int
    seed: int
    abs_floor: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "grid": [list(g) for g in self.grid],
            "closed": list(self.closed),
            "empirical": list(self.empirical),
            "stderr": list(self.stderr),
            "n": self.n,
            "seed": self.seed,
            "abs_floor": self.abs_floor,
            "passed": self.passed,
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def csv_rows(self) -> list[str]:
        header = "point,closed,empirical,stderr"
        lines = [header]
        for g, c, e, s in zip(self.grid, self.closed, self.empirical, self.stderr):
            lines.append(f"\"{' '.join(repr(v) for v in g)}\",{c!r},{e!r},{s!r}")
        return lines


def mc_verify(
    sampler,
    survival,
    grid,
    n: int,
    seed: int,
    threads: int = 1,
    abs_floor: float = 1e-3,
    mode: str = "survival",
) -> McReport:
    """Compare empirical orthant frequencies against closed-form values.

    ``sampler(n, rng)`` must return a SampleMatrix or array; ``survival``
    evaluates the closed form at one grid point.  ``mode`` selects strict
    survival probabilities P(X > g) (default) or cdf probabilities P(X <= g).
    Rows are generated from ``threads`` independent streams seeded ``seed + i``
    and assembled in stream order, so the report is deterministic for fixed
    arguments.  Pass criterion per point: |empirical - closed| <= 3*stderr +
    abs_floor.
    """
    grid = np.atleast_2d(np.asarray(grid, dtype=float))
    if threads < 1:
        raise SpecValidationError("threads must be >= 1")
    if mode not in ("survival", "cdf"):
        raise SpecValidationError(f"unknown comparison mode {mode!r}")
    sizes = [n // threads] * threads
    sizes[-1] += n - sum(sizes)
    hits = np.zeros(grid.shape[0])
    total = 0

    def run_chunk(i, size):
        rng = np.random.default_rng(seed + i)
        out = sampler(size, rng)
        data = out.data if isinstance(out, SampleMatrix) else np.asarray(out, dtype=float)
        if mode == "survival":
            flags = (data[:, None, :] > grid[None, :, :]).all(axis=2)
        else:
            flags = (data[:, None, :] <= grid[None, :, :]).all(axis=2)
        return flags.sum(axis=0)

    if threads == 1:
        hits += run_chunk(0, sizes[0])
        total = sizes[0]
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(run_chunk, range(threads), sizes):
                hits += part
        total = sum(sizes)

    empirical = hits / total
    closed = np.array([float(survival(g)) for g in grid])
    stderr = np.sqrt(empirical * (1.0 - empirical) / total)
    passed = bool(np.all(np.abs(empirical - closed) <= 3.0 * stderr + abs_floor))
    return McReport(
        grid=tuple(tuple(g) for g in grid),
        closed=tuple(closed.tolist()),
        empirical=tuple(empirical.tolist()),
        stderr=tuple(stderr.tolist()),
        n=total,
        seed=seed,
        abs_floor=abs_floor,
        passed=passed,
    )


def default_quantile_grid(marginal_ppf, d: int, quantiles=(0.1, 0.25, 0.5, 0.75, 0.9)) -> np.ndarray:
    """Ten d-variate grid points built from marginal quantiles: the five
    diagonal points plus five cyclic mixes."""
    qs = [float(marginal_ppf(q)) for q in quantiles]
    m = len(qs)
    points = [[qs[i]] * d for i in range(m)]
    if d > 1:
        for i in range(m):
            points.append([qs[(i + j) % m] for j in range(d)])
    return np.asarray(points, dtype=float)


# -- isotonic helper ---------------------------------------------------------------------

def isotonic_decreasing_fit(y, weights=None) -> np.ndarray:
    """Weighted least-squares non-increasing fit (pool adjacent violators)."""
    y = np.asarray(y, dtype=float)
    w = np.ones_like(y) if weights is None else np.asarray(weights, dtype=float)
    blocks = [[y[i] * w[i], w[i], 1] for i in range(y.size)]  # [weighted sum, weight, count]
    out = []
    for blk in blocks:
        out.append(blk)
        while len(out) > 1 and out[-2][0] / out[-2][1] < out[-1][0] / out[-1][1]:
            s, ww, c = out.pop()
            out[-1][0] += s
            out[-1][1] += ww
            out[-1][2] += c
    fit = np.empty(y.size)
    pos = 0
    for s, ww, c in out:
        fit[pos : pos + c] = s / ww
        pos += c
    return fit
