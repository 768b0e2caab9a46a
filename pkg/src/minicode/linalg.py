"""Dense vectors and matrices over F_q.

Vectors are plain tuples of canonical integers; the field travels alongside
as an explicit argument.  Coordinate indices are 1-based in every reported
support/index, matching the x_1..x_m convention used throughout.

Gaussian elimination uses first-nonzero pivoting and exact field arithmetic;
there are no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, TextIO, Union

import numpy as np

from .errors import GuardError
from .gf import FieldSpec, field_by_order

Vec = tuple[int, ...]

ENUM_GUARD = 2**31  # ceiling on q^m for enumeration streams


def check_same_length(u: Sequence[int], v: Sequence[int]) -> None:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")


@dataclass(frozen=True)
class SubspaceBasis:
    """Linearly independent vectors spanning a subspace of F_q^ambient_dim."""

    vectors: tuple[Vec, ...]
    ambient_dim: int


def dot(field: FieldSpec, u: Sequence[int], v: Sequence[int]) -> int:
    """Euclidean inner product sum_i u_i v_i in F_q."""
    check_same_length(u, v)
    acc = 0
    for a, b in zip(u, v):
        acc = field.add(acc, field.mul(a, b))
    return acc


def support(v: Sequence[int]) -> frozenset[int]:
    """1-based indices of the nonzero coordinates."""
    return frozenset(i + 1 for i, a in enumerate(v) if a)


def weight(v: Sequence[int]) -> int:
    return sum(1 for a in v if a)


def covers(u: Sequence[int], v: Sequence[int]) -> bool:
    """True iff Suppt(u) is contained in Suppt(v), i.e. v covers u."""
    check_same_length(u, v)
    return all(b != 0 for a, b in zip(u, v) if a != 0)


def vec_add(field: FieldSpec, u: Sequence[int], v: Sequence[int]) -> Vec:
    check_same_length(u, v)
    return tuple(field.add(a, b) for a, b in zip(u, v))

def vec_sub(field: FieldSpec, u: Sequence[int], v: Sequence[int]) -> Vec:
    check_same_length(u, v)
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def scale(field: FieldSpec, c: int, v: Sequence[int]) -> Vec:
    return tuple(field.mul(c, a) for a in v)


def unit_vector(m: int, i: int) -> Vec:
    """e_i in F_q^m, 1-based."""
    if not 1 <= i <= m:
        raise ValueError(f"unit index {i} out of range 1..{m}")
    return tuple(1 if j == i - 1 else 0 for j in range(m))


class EchelonBasis:
    """Incremental row-echelon basis: feed rows, track rank, test membership.

    Rows are kept pivot-normalized (leading coefficient 1) and sorted by
    pivot column, so reduction of an incoming vector is a single pass.
    """

    def __init__(self, field: FieldSpec, width: int):
        self.field = field
        self.width = width
        self.rows: list[Vec] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[int]) -> Vec:
        field = self.field
        w = tuple(v)
        for row, piv in zip(self.rows, self.pivots):
            c = w[piv]
            if c:
                w = tuple(field.sub(a, field.mul(c, b)) for a, b in zip(w, row))
        return w

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence[int]) -> bool:
        """Insert v if independent of the current rows; report whether rank grew."""
        if len(v) != self.width:
            raise ValueError(f"row length {len(v)} != width {self.width}")
        w = self.reduce(v)
        for piv, c in enumerate(w):
            if c:
                w = scale(self.field, self.field.inv(c), w)
                at = sum(1 for p in self.pivots if p < piv)
                self.rows.insert(at, w)
                self.pivots.insert(at, piv)
                return True
        return False


def rank(field: FieldSpec, rows: Iterable[Sequence[int]]) -> int:
    """Row rank over F_q by Gaussian elimination."""
    basis: Optional[EchelonBasis] = None
    for row in rows:
        if basis is None:
            basis = EchelonBasis(field, len(row))
        basis.add(row)
    return 0 if basis is None else basis.rank


def row_reduced_basis(field: FieldSpec, rows: Iterable[Sequence[int]]) -> list[Vec]:
    """A row-reduced basis of the row space (pivot order)."""
    basis: Optional[EchelonBasis] = None
    for row in rows:
        if basis is None:
            basis = EchelonBasis(field, len(row))
        basis.add(row)
    return [] if basis is None else list(basis.rows)


def _rref(field: FieldSpec, rows: list[list[int]], width: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form in place; returns (nonzero rows, pivot columns)."""
    r = 0
    pivots: list[int] = []
    for c in range(width):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, a) for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def kernel_basis(field: FieldSpec, rows: Sequence[Sequence[int]], width: int) -> list[Vec]:
    """Basis of {x : A x^T = 0} for the matrix with the given rows.

    Deterministic: free columns ascending, free coordinate set to 1.
    """
    work = [list(r) for r in rows]
    for r in work:
        if len(r) != width:
            raise ValueError("ragged matrix")
    red, pivots = _rref(field, work, width)
    pivot_set = set(pivots)
    basis = []
    for free in range(width):
        if free in pivot_set:
            continue
        v = [0] * width
        v[free] = 1
        for row, piv in zip(red, pivots):
            v[piv] = field.neg(row[free])
        basis.append(tuple(v))
    return basis


def solve(field: FieldSpec, rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> Optional[Vec]:
    """One solution of A x^T = b (free coordinates 0), or None if inconsistent."""
    if len(rows) != len(rhs):
        raise ValueError("rhs length must match row count")
    if not rows:
        return ()
    width = len(rows[0])
    work = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = _rref(field, work, width)
    x = [0] * width
    for row, piv in zip(red, pivots):
        x[piv] = row[width]
    # _rref only pivots on the A-columns, so inconsistency shows up here.
    for r, b in zip(rows, rhs):
        if dot(field, r, x) != b:
            return None
    return tuple(x)


def orthogonal_complement(field: FieldSpec, vectors: Sequence[Sequence[int]], k: int) -> list[Vec]:
    """Basis of S^perp for S the given vectors inside F_q^k."""
    return kernel_basis(field, vectors, k)


# -- canonical enumeration ---------------------------------------------------

def index_to_vector(q: int, m: int, idx: int) -> Vec:
    """Vector with canonical integer index idx; x_1 is the most significant digit."""
    out = [0] * m
    for i in range(m - 1, -1, -1):
        idx, out[i] = divmod(idx, q)
    return tuple(out)


def vector_to_index(q: int, x: Sequence[int]) -> int:
    idx = 0
    for a in x:
        idx = idx * q + a
    return idx


def enumerate_vectors(field: FieldSpec, m: int, include_zero: bool = False) -> Iterator[Vec]:
    """All of F_q^m in ascending canonical-index order (zero first if included)."""
    q = field.q
    if q**m > ENUM_GUARD:
        raise GuardError(f"q^m = {q}^{m} exceeds the enumeration guard {ENUM_GUARD}")
    start = 0 if include_zero else 1
    for idx in range(start, q**m):
        yield index_to_vector(q, m, idx)


# -- numpy helpers (prime fields only) ---------------------------------------

def np_rows(rows: Sequence[Sequence[int]]) -> np.ndarray:
    return np.asarray(rows, dtype=np.int64)


def np_matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact (a @ b) mod p via float64 BLAS; entries must stay below 2^53."""
    prod = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    return prod % p


# -- matrix text format -------------------------------------------------------

def write_matrix(out: Union[str, TextIO], field: FieldSpec, rows: Sequence[Sequence[int]]) -> None:
    """Write the matrix text format: header "q m rows", one row per line."""
    m = len(rows[0]) if rows else 0
    lines = [f"{field.q} {m} {len(rows)}"]
    for r in rows:
        if len(r) != m:
            raise ValueError("ragged matrix")
        lines.append(" ".join(str(a) for a in r))
    text = "\n".join(lines) + "\n"
    if isinstance(out, str):
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)


def read_matrix(src: Union[str, TextIO]) -> tuple[FieldSpec, list[Vec]]:
    if isinstance(src, str):
        with open(src, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = src.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    header = lines[0].split()
    if len(header) != 3:
        raise ValueError(f"bad matrix header {lines[0]!r}")
    q, m, nrows = (int(t) for t in header)
    field = field_by_order(q)
    if len(lines) - 1 != nrows:
        raise ValueError(f"expected {nrows} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        row = tuple(int(t) for t in ln.split())
        if len(row) != m:
            raise ValueError(f"row {ln!r} has length {len(row)}, expected {m}")
        for a in row:
            field.check_scalar(a)
        rows.append(row)
    return field, rows
