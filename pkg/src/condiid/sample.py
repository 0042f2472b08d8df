"""Sample containers, CSV round-trips and seed-derived RNG streams."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class SampleMatrix:
    """n x d matrix of real samples; rows are iid replications of a d-variate law.

    Infinities are allowed (killed models place mass at +inf), NaNs are not.
    ``seed`` records the seed that produced the matrix when known, ``meta``
    is a free-form model descriptor.
    """

    data: np.ndarray
    seed: int | None = None
    meta: str = ""

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError(f"sample matrix must be n x d with n,d >= 1, got shape {data.shape}")
        if np.isnan(data).any():
            raise ValueError("sample matrix contains NaN entries")
        object.__setattr__(self, "data", data)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def d(self) -> int:
        return self.data.shape[1]


def _format_value(v: float) -> str:
    if np.isposinf(v):
        return "inf"
    return repr(float(v))


def write_csv(matrix: SampleMatrix | np.ndarray, path_or_buf) -> None:
    """Write samples as CSV with header ``x1,...,xd``, LF line endings.

    +inf is serialized as the literal string ``inf``; identical data yields
    identical bytes.
    """
    data = matrix.data if isinstance(matrix, SampleMatrix) else np.asarray(matrix, dtype=float)
    own = isinstance(path_or_buf, (str, bytes))
    f = open(path_or_buf, "w", newline="\n") if own else path_or_buf
    try:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow([f"x{k + 1}" for k in range(data.shape[1])])
        for row in data:
            writer.writerow([_format_value(v) for v in row])
    finally:
        if own:
            f.close()


def csv_bytes(matrix: SampleMatrix | np.ndarray) -> bytes:
    buf = io.StringIO()
    write_csv(matrix, buf)
    return buf.getvalue().encode()


def read_csv(path_or_buf) -> np.ndarray:
    """Read a sample CSV written by :func:`write_csv` back into an array."""
    own = isinstance(path_or_buf, (str, bytes))
    f = open(path_or_buf, "r", newline="") if own else path_or_buf
    try:
        reader = csv.reader(f)
        header = next(reader)
        d = len(header)
        rows = []
        for row in reader:
            if not row:
                continue
            if len(row) != d:
                raise ValueError(f"row width {len(row)} does not match header width {d}")
            rows.append([float(v) for v in row])
    finally:
        if own:
            f.close()
    if not rows:
        raise ValueError("CSV contains a header but no data rows")
    return np.asarray(rows, dtype=float)


def seed_streams(base_seed: int, count: int) -> list[np.random.Generator]:
    """Independent generators for parallel Monte Carlo, seed_i = base_seed + i."""
    return [np.random.default_rng(base_seed + i) for i in range(count)]
