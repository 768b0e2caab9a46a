"""Defining-set codes C(D) and the function construction D_f.

C(D) = {(y.d_1, ..., y.d_n) : y in F_q^k} for an ordered multiset D of n
vectors in F_q^k.  D_f puts d_x = (f(x), x) for every nonzero x in canonical
order, so k = m+1 and the f-value is coordinate 1 of each d_x.

Weight distributions are exact, computed by streaming over all q^k messages
without materializing codewords (memory stays O(n)); over prime fields the
stream is processed in vectorized blocks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, TextIO, Union

import numpy as np

from .errors import GuardError
from .families import FunctionSpec
from .gf import FieldSpec
from .linalg import (
    Vec,
    dot,
    index_to_vector,
    np_matmul_mod,
    np_rows,
    rank,
    read_matrix,
    unit_vector,
    write_matrix,
)

ENUM_GUARD = 2**31    # ceiling on q^m when building D_f
WDIST_GUARD = 2**26   # ceiling on q^k for exhaustive message enumeration
_BLOCK = 2048


@dataclass(eq=False)
class DefiningSet:
    """Ordered multiset D = {d_1..d_n} in F_q^k; order fixes codeword coordinates."""

    field: FieldSpec
    k: int
    vectors: tuple[Vec, ...]
    origin: tuple = ("generic",)

    def __post_init__(self) -> None:
        for v in self.vectors:
            if len(v) != self.k:
                raise ValueError(f"vector {v} has length {len(v)}, expected {self.k}")

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def n(self) -> int:
        return len(self.vectors)

    @cached_property
    def rank(self) -> int:
        return rank(self.field, self.vectors)

    @cached_property
    def as_array(self) -> np.ndarray:
        return np_rows(self.vectors)

    @cached_property
    def row_index(self) -> dict[Vec, int]:
        """First 1-based position of each distinct vector of D."""
        out: dict[Vec, int] = {}
        for i, v in enumerate(self.vectors):
            out.setdefault(v, i + 1)
        return out


def defining_set(f: FunctionSpec) -> DefiningSet:
    """D_f = {(f(x), x) : x nonzero} in canonical x-order."""
    q, m = f.field.q, f.m
    if q**m > ENUM_GUARD:
        raise GuardError(f"q^m = {q}^{m} exceeds the construction guard")
    values = f.materialize().variant.values
    vectors = tuple(
        (values[idx],) + index_to_vector(q, m, idx) for idx in range(1, q**m)
    )
    return DefiningSet(f.field, m + 1, vectors, origin=("from_function", m))


def linearity_check(f: FunctionSpec) -> Optional[Vec]:
    """The omega with f(x) = omega.x for all nonzero x, if it exists.

    Present exactly when rank(D_f) = m; absent exactly when rank(D_f) = m+1.
    Uses the e_i-interpolation candidate plus one full verification pass.
    """
    field, m, q = f.field, f.m, f.field.q
    omega = tuple(f.eval(unit_vector(m, i)) for i in range(1, m + 1))
    values = f.materialize().variant.values
    if field.e == 1:
        vals = np.fromiter(values, dtype=np.int64, count=q**m)
        digits = np.empty((q**m, m), dtype=np.int64)
        idx = np.arange(q**m)
        for i in range(m - 1, -1, -1):
            idx, digits[:, i] = np.divmod(idx, q)
        expected = (digits @ np.asarray(omega, dtype=np.int64)) % q
        ok = bool(np.array_equal(vals[1:], expected[1:]))
    else:
        ok = all(
            values[i] == dot(field, omega, index_to_vector(q, m, i))
            for i in range(1, q**m)
        )
    return omega if ok else None


def codeword(y: Sequence[int], D: DefiningSet) -> Vec:
    """c(y; D) = (y.d_1, ..., y.d_n)."""
    if len(y) != D.k:
        raise ValueError(f"message length {len(y)} != k = {D.k}")
    field = D.field
    if field.e == 1 and D.n > 64:
        out = (D.as_array @ np.asarray(y, dtype=np.int64)) % field.p
        return tuple(int(a) for a in out)
    return tuple(dot(field, y, d) for d in D.vectors)


@dataclass(frozen=True)
class WeightEnumerator:
    """Exact codeword counts by Hamming weight over all q^k messages."""

    q: int
    n: int
    k: int
    counts: dict[int, int]

    def __post_init__(self) -> None:
        total = sum(self.counts.values())
        if total != self.q**self.k:
            raise ValueError(f"counts sum to {total}, expected q^k = {self.q**self.k}")

    def sorted_items(self) -> list[tuple[int, int]]:
        return sorted((w, c) for w, c in self.counts.items() if c)

    @property
    def text(self) -> str:
        """Single-line enumerator, ascending weights: "1 + c1 z^w1 + ..."."""
        items = self.sorted_items()
        parts = []
        for w, c in items:
            parts.append(str(c) if w == 0 else f"{c} z^{w}")
        return " + ".join(parts)

    def record(self) -> dict:
        """Machine-readable form; weight keys are decimal strings, ascending."""
        return {
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "counts": {str(w): c for w, c in self.sorted_items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.record(), separators=(", ", ": "))

    @property
    def w_min(self) -> int:
        nz = [w for w, c in self.counts.items() if w > 0 and c]
        if not nz:
            raise GuardError("code has no nonzero-weight codeword")
        return min(nz)

    @property
    def w_max(self) -> int:
        nz = [w for w, c in self.counts.items() if w > 0 and c]
        if not nz:
            raise GuardError("code has no nonzero-weight codeword")
        return max(nz)


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int
    w_min: int
    w_max: int
    q: int

    @property
    def ab_ratio_exceeds(self) -> bool:
        """Whether w_min/w_max > (q-1)/q, compared by integer cross-products."""
        return self.q * self.w_min > (self.q - 1) * self.w_max


def weight_distribution(D: DefiningSet) -> WeightEnumerator:
    field, k, n = D.field, D.k, D.n
    q = field.q
    if n == 0:
        raise GuardError("empty defining set")
    if q**k > WDIST_GUARD:
        raise GuardError(f"q^k = {q}^{k} exceeds the enumeration guard {WDIST_GUARD}")
    if field.e == 1:
        counts = _weight_distribution_prime(D)
    else:
        counts = _weight_distribution_generic(D)
    return WeightEnumerator(q, n, k, counts)


def _weight_distribution_prime(D: DefiningSet) -> dict[int, int]:
    p, k, n = D.field.p, D.k, D.n
    total = p**k
    dt = D.as_array.T  # k x n
    acc = np.zeros(n + 1, dtype=np.int64)
    for start in range(0, total, _BLOCK):
        stop = min(start + _BLOCK, total)
        idx = np.arange(start, stop, dtype=np.int64)
        msgs = np.empty((stop - start, k), dtype=np.int64)
        for i in range(k - 1, -1, -1):
            idx, msgs[:, i] = np.divmod(idx, p)
        words = np_matmul_mod(msgs, dt, p)
        weights = np.count_nonzero(words, axis=1)
        acc += np.bincount(weights, minlength=n + 1)
    return {w: int(c) for w, c in enumerate(acc) if c}


def _weight_distribution_generic(D: DefiningSet) -> dict[int, int]:
    field, k = D.field, D.k
    q = field.q
    counts: dict[int, int] = {}
    for idx in range(q**k):
        y = index_to_vector(q, k, idx)
        w = sum(1 for d in D.vectors if dot(field, y, d))
        counts[w] = counts.get(w, 0) + 1
    return counts


def params(D: DefiningSet, enumerator: Optional[WeightEnumerator] = None) -> CodeParams:
    we = enumerator if enumerator is not None else weight_distribution(D)
    return CodeParams(n=we.n, k=we.k, d=we.w_min, w_min=we.w_min, w_max=we.w_max, q=we.q)


def generator_matrix(D: DefiningSet) -> list[Vec]:
    """k rows: the codewords of the standard basis of F_q^k."""
    return [codeword(unit_vector(D.k, i), D) for i in range(1, D.k + 1)]


def write_defining_set(out: Union[str, TextIO], D: DefiningSet) -> None:
    write_matrix(out, D.field, D.vectors)


def read_defining_set(src: Union[str, TextIO]) -> DefiningSet:
    field, rows = read_matrix(src)
    if not rows:
        raise GuardError("empty defining set")
    return DefiningSet(field, len(rows[0]), tuple(rows))
