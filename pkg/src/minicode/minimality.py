"""Minimality of codewords and codes by four criteria, with certificates.

A codeword is minimal when it covers only its own scalar multiples.  All
checks work on one representative per projective class (first nonzero
coordinate normalized to 1), which is sound because supports are
scalar-invariant and H(cy) = H(y) for c != 0.

Criteria:
  definition  brute force over ordered pairs of classes (oracle scale),
  ab          the one-sided w_min/w_max > (q-1)/q weight-ratio test,
  dhz         the weight-identity test over independent codeword pairs,
  rank        dim Span(D cap H(y)) = k-1 per class, with witness bases.

The rank criterion streams D through an incremental row-echelon basis and
early-exits at rank k-1, and emits a certificate whose per-class entries are
indices into the serialized D order, so verification is exact membership.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, TextIO, Union

import numpy as np

from .code import DefiningSet, defining_set, linearity_check, weight_distribution
from .errors import BudgetExceededError, CertificateFormatError, GuardError
from .families import FunctionSpec
from .gf import FieldSpec
from .linalg import (
    EchelonBasis,
    SubspaceBasis,
    Vec,
    dot,
    index_to_vector,
    np_matmul_mod,
    rank,
    scale,
)

DEFAULT_BUDGET = 10**10
DEF_MAX_CLASSES = 10_000
DEF_MAX_N = 1_000
_BLOCK = 512

MINIMAL = "minimal"
NOT_MINIMAL = "not_minimal"
INCONCLUSIVE = "inconclusive"


def op_budget(budget: Optional[int] = None) -> int:
    """The elementary-field-op budget; MINICODE_BUDGET overrides the default."""
    if budget is not None:
        return budget
    env = os.environ.get("MINICODE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class CoverViolation:
    """Messages a, b with codeword(b) covered by codeword(a), b not scalar to a."""

    a: Vec
    b: Vec


@dataclass(frozen=True)
class DhzViolation:
    """Messages a, b with sum_c wt(a + c b) = (q-1) wt(a) - wt(b)."""

    a: Vec
    b: Vec
    value: int


@dataclass(frozen=True)
class RankWitness:
    """Members of D cap H(y) forming a rank-(k-1) basis, 1-based D indices."""

    y: Vec
    indices: tuple[int, ...]
    basis: SubspaceBasis


@dataclass(frozen=True)
class Certificate:
    """Per projective class: a witness set of rank k-1 inside H(y, D).

    mode "indices" stores 1-based positions into the serialized D order;
    mode "vectors" stores the witness d-vectors by value.
    """

    q: int
    n: int
    k: int
    mode: str
    classes: tuple[tuple[Vec, tuple], ...]


@dataclass(frozen=True)
class MinimalityReport:
    criterion: str
    verdict: str
    witness: object = None

    def __post_init__(self) -> None:
        if self.verdict == INCONCLUSIVE and self.criterion != "ab":
            raise ValueError("only the ab criterion may be inconclusive")
        if self.verdict == NOT_MINIMAL and self.witness is None:
            raise ValueError("a not_minimal verdict must carry a witness")

    @property
    def is_minimal(self) -> bool:
        return self.verdict == MINIMAL


# -- projective classes --------------------------------------------------------

def normalize_class(field: FieldSpec, y: Sequence[int]) -> Vec:
    """Scale y so its first nonzero coordinate is 1 (idempotent)."""
    for a in y:
        if a:
            if a == 1:
                return tuple(y)
            return scale(field, field.inv(a), y)
    raise ValueError("the zero vector has no projective class")


def class_count(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1)


def projective_classes(field: FieldSpec, k: int) -> Iterator[Vec]:
    """Canonical representatives in ascending canonical-index order."""
    q = field.q
    # Representatives are exactly the vectors whose first nonzero entry is 1:
    # (0...0, 1, tail).  More leading zeros means a smaller canonical index.
    for lead in range(k - 1, -1, -1):
        tail = k - lead - 1
        for idx in range(q**tail):
            yield (0,) * lead + (1,) + index_to_vector(q, tail, idx)


def _codeword_matrix(D: DefiningSet, reps: list[Vec]) -> np.ndarray:
    """Codewords of all reps as an R x n int matrix (prime fields)."""
    p = D.field.p
    Y = np.asarray(reps, dtype=np.int64)
    out = np.empty((len(reps), D.n), dtype=np.int64)
    for start in range(0, len(reps), _BLOCK):
        stop = min(start + _BLOCK, len(reps))
        out[start:stop] = np_matmul_mod(Y[start:stop], D.as_array.T, p)
    return out


def _distinct_codeword_reps(D: DefiningSet) -> tuple[list[Vec], np.ndarray]:
    """Class reps with distinct nonzero codewords, in canonical order.

    Collapsing to distinct codewords keeps the definition and dhz checks
    correct when rank(D) < k (several messages can share one codeword).
    """
    field, k = D.field, D.k
    reps = list(projective_classes(field, k))
    if field.e == 1:
        words = _codeword_matrix(D, reps)
    else:
        words = np.asarray(
            [[dot(field, y, d) for d in D.vectors] for y in reps], dtype=np.int64
        )
    keep: list[int] = []
    seen: set[bytes] = set()
    for i, row in enumerate(words):
        key = row.tobytes()
        if not row.any() or key in seen:
            continue
        seen.add(key)
        keep.append(i)
    return [reps[i] for i in keep], words[keep]


def _check_oracle_scale(D: DefiningSet, max_classes: int, max_n: int) -> None:
    P = class_count(D.field.q, D.k)
    if P > max_classes or D.n > max_n:
        raise GuardError(
            f"oracle-scale guard: {P} classes x n = {D.n} exceeds "
            f"{max_classes} x {max_n}"
        )


# -- criteria --------------------------------------------------------------------

def is_minimal_definition(
    D: DefiningSet,
    max_classes: int = DEF_MAX_CLASSES,
    max_n: int = DEF_MAX_N,
) -> MinimalityReport:
    """Brute force over ordered pairs of projective classes."""
    _check_oracle_scale(D, max_classes, max_n)
    reps, words = _distinct_codeword_reps(D)
    supp = words != 0
    for i in range(len(reps)):
        covered = ~((supp & ~supp[i]).any(axis=1))
        covered[i] = False
        hits = np.flatnonzero(covered)
        if hits.size:
            j = int(hits[0])
            return MinimalityReport(
                "definition", NOT_MINIMAL, CoverViolation(a=reps[i], b=reps[j])
            )
    return MinimalityReport("definition", MINIMAL)


def ab_condition(D: DefiningSet) -> MinimalityReport:
    """Sufficient condition w_min/w_max > (q-1)/q, by integer cross-products."""
    we = weight_distribution(D)
    q = we.q
    if q * we.w_min > (q - 1) * we.w_max:
        return MinimalityReport("ab", MINIMAL, witness=(we.w_min, we.w_max))
    return MinimalityReport("ab", INCONCLUSIVE, witness=(we.w_min, we.w_max))


def dhz_criterion(
    D: DefiningSet,
    max_classes: int = DEF_MAX_CLASSES,
    max_n: int = DEF_MAX_N,
) -> MinimalityReport:
    """Weight-identity test over ordered pairs of independent codewords.

    Minimal iff sum_{c != 0} wt(a + c b) != (q-1) wt(a) - wt(b) for every
    pair of linearly independent codewords; projective representatives
    suffice on both sides of the pair.
    """
    _check_oracle_scale(D, max_classes, max_n)
    reps, words = _distinct_codeword_reps(D)
    q = D.field.q
    wt = np.count_nonzero(words, axis=1)
    if D.field.e == 1:
        for i in range(len(reps)):
            lhs = np.zeros(len(reps), dtype=np.int64)
            for c in range(1, q):
                lhs += np.count_nonzero((words[i] + c * words) % q, axis=1)
            rhs = (q - 1) * wt[i] - wt
            bad = lhs == rhs
            bad[i] = False
            hits = np.flatnonzero(bad)
            if hits.size:
                j = int(hits[0])
                return MinimalityReport(
                    "dhz", NOT_MINIMAL,
                    DhzViolation(a=reps[i], b=reps[j], value=int(lhs[j])),
                )
    else:
        field = D.field
        rows = [tuple(int(a) for a in row) for row in words]
        for i, a_row in enumerate(rows):
            for j, b_row in enumerate(rows):
                if i == j:
                    continue
                lhs = 0
                for c in field.nonzero():
                    lhs += sum(
                        1 for x, y_ in zip(a_row, b_row)
                        if field.add(x, field.mul(c, y_))
                    )
                if lhs == (q - 1) * int(wt[i]) - int(wt[j]):
                    return MinimalityReport(
                        "dhz", NOT_MINIMAL,
                        DhzViolation(a=reps[i], b=reps[j], value=lhs),
                    )
    return MinimalityReport("dhz", MINIMAL)


def _hyperplane_members(D: DefiningSet, y: Sequence[int]) -> Iterator[int]:
    """0-based indices of D members orthogonal to y, in D order."""
    field = D.field
    if field.e == 1:
        dots = (D.as_array @ np.asarray(y, dtype=np.int64)) % field.p
        yield from (int(i) for i in np.flatnonzero(dots == 0))
    else:
        for i, d in enumerate(D.vectors):
            if dot(field, y, d) == 0:
                yield i


def rank_criterion_codeword(y: Sequence[int], D: DefiningSet) -> MinimalityReport:
    """c(y) minimal iff rank(D cap H(y)) = k - 1 (requires rank(D) = k)."""
    if not any(y):
        raise ValueError("y must be nonzero")
    if D.rank != D.k:
        raise GuardError(f"rank criterion needs rank(D) = k; got {D.rank} < {D.k}")
    field, k = D.field, D.k

    def minimal_with(chosen: list[int]) -> MinimalityReport:
        witness = RankWitness(
            y=normalize_class(field, y),
            indices=tuple(chosen),
            basis=SubspaceBasis(tuple(D.vectors[j - 1] for j in chosen), k),
        )
        return MinimalityReport("rank", MINIMAL, witness)

    if k == 1:
        return minimal_with([])
    basis = EchelonBasis(field, k)
    chosen: list[int] = []
    for i in _hyperplane_members(D, y):
        if basis.add(D.vectors[i]):
            chosen.append(i + 1)
            if basis.rank == k - 1:
                return minimal_with(chosen)
    return MinimalityReport(
        "rank", NOT_MINIMAL,
        {"y": normalize_class(field, y), "rank": basis.rank},
    )


def rank_criterion_code(
    D: DefiningSet,
    budget: Optional[int] = None,
) -> MinimalityReport:
    """Apply the per-codeword rank criterion to every projective class.

    Minimal verdicts carry an index-mode Certificate covering all classes;
    otherwise the failing class with the smallest canonical index is
    reported.  Refuses (without partial answers) when the estimated cost
    P * n * k exceeds the operation budget.
    """
    if D.rank != D.k:
        raise GuardError(f"rank criterion needs rank(D) = k; got {D.rank} < {D.k}")
    field, k, n = D.field, D.k, D.n
    q = field.q
    P = class_count(q, k)
    limit = op_budget(budget)
    estimated = P * n * k
    if estimated > limit:
        raise BudgetExceededError(
            f"estimated {estimated} field ops exceed the budget {limit}"
        )
    reps = list(projective_classes(field, k))
    entries: list[tuple[Vec, tuple]] = []
    if field.e == 1:
        Y = np.asarray(reps, dtype=np.int64)
        dt = D.as_array.T
        for start in range(0, P, _BLOCK):
            stop = min(start + _BLOCK, P)
            dots = np_matmul_mod(Y[start:stop], dt, field.p)
            for local, y in enumerate(reps[start:stop]):
                zero_idx = np.flatnonzero(dots[local] == 0)
                got = _collect_witness_prime(D, zero_idx)
                if got is None:
                    return MinimalityReport(
                        "rank", NOT_MINIMAL, {"y": y, "rank": None}
                    )
                entries.append((y, got))
    else:
        for y in reps:
            zero_idx = list(_hyperplane_members(D, y))
            got = _collect_witness(D, y, zero_idx)
            if got is None:
                return MinimalityReport("rank", NOT_MINIMAL, {"y": y, "rank": None})
            entries.append((y, got))
    cert = Certificate(q=q, n=n, k=k, mode="indices", classes=tuple(entries))
    return MinimalityReport("rank", MINIMAL, cert)


def _collect_witness(
    D: DefiningSet, y: Vec, zero_idx: Sequence[int]
) -> Optional[tuple[int, ...]]:
    """First k-1 independent members of D cap H(y) (1-based), else None."""
    field, k = D.field, D.k
    if k == 1:
        return ()
    basis = EchelonBasis(field, k)
    chosen: list[int] = []
    for i in zero_idx:
        if basis.add(D.vectors[i]):
            chosen.append(int(i) + 1)
            if basis.rank == k - 1:
                return tuple(chosen)
    return None


_CHUNK = 256


def _collect_witness_prime(D: DefiningSet, zero_idx: np.ndarray) -> Optional[tuple[int, ...]]:
    """Vectorized twin of _collect_witness for prime fields (same greedy choice).

    Candidate rows are reduced against the growing echelon basis one chunk
    at a time; the first row a chunk leaves nonzero is exactly the next row
    the sequential greedy scan would accept.
    """
    p, k = D.field.p, D.k
    target = k - 1
    if target == 0:
        return ()
    pivots: list[int] = []
    basis_rows: list[np.ndarray] = []
    chosen: list[int] = []
    arr = D.as_array
    for start in range(0, len(zero_idx), _CHUNK):
        sel = zero_idx[start:start + _CHUNK]
        chunk = arr[sel].copy()
        for piv, row in zip(pivots, basis_rows):
            coef = chunk[:, piv]
            if coef.any():
                chunk = (chunk - coef[:, None] * row) % p
        live = np.flatnonzero(chunk.any(axis=1))
        while live.size:
            i = int(live[0])
            row = chunk[i]
            piv = int(np.flatnonzero(row)[0])
            row = (row * pow(int(row[piv]), -1, p)) % p
            pivots.append(piv)
            basis_rows.append(row)
            chosen.append(int(sel[i]) + 1)
            if len(chosen) == target:
                return tuple(chosen)
            coef = chunk[:, piv]
            chunk = (chunk - coef[:, None] * row) % p
            live = np.flatnonzero(chunk.any(axis=1))
    return None


def cf_case_check(
    f: FunctionSpec,
    u: int,
    v: Sequence[int],
    D: Optional[DefiningSet] = None,
) -> MinimalityReport:
    """Case-split check for c(u, v) in C_f; verdict equals the rank criterion.

    The case of (u, v) only shapes the witness: the returned vectors are the
    alpha-vectors in F_q^m (the x-parts of the witnessing d-vectors), not the
    d-vectors themselves.
    """
    field, m = f.field, f.m
    f.field.check_scalar(u)
    if len(v) != m:
        raise ValueError(f"v has length {len(v)}, expected m = {m}")
    if u == 0 and not any(v):
        raise ValueError("(u, v) must be nonzero")
    if linearity_check(f) is not None:
        raise ValueError("f is linear; C_f degenerates and the case split does not apply")
    if D is None:
        D = defining_set(f)
    y = (u,) + tuple(v)
    base = rank_criterion_codeword(y, D)
    if u != 0 and not any(v):
        case = 1
    elif u != 0:
        case = 2
    else:
        case = 3
    if not base.is_minimal:
        return MinimalityReport("cf_case", NOT_MINIMAL, {"case": case, "y": y})
    assert isinstance(base.witness, RankWitness)
    alphas = tuple(d[1:] for d in base.witness.basis.vectors)
    return MinimalityReport(
        "cf_case", MINIMAL,
        {"case": case, "y": y, "alphas": alphas, "indices": base.witness.indices},
    )


# -- certificates -----------------------------------------------------------------

def verify_certificate(D: DefiningSet, cert: Certificate) -> bool:
    """Exact check of a certificate against D.

    Every class of F_q^k must appear once, each entry must be a member of D
    (by index or by value), orthogonal to its class representative, and each
    class's k-1 vectors must have rank exactly k-1.
    """
    field, k, n = D.field, D.k, D.n
    q = field.q
    if (cert.q, cert.n, cert.k) != (q, n, k):
        return False
    if cert.mode not in ("indices", "vectors"):
        raise CertificateFormatError(f"unknown certificate mode {cert.mode!r}")
    expected = list(projective_classes(field, k))
    if len(cert.classes) != len(expected):
        return False
    if {rep for rep, _ in cert.classes} != set(expected):
        return False
    for rep, items in cert.classes:
        if len(items) != k - 1:
            return False
        if cert.mode == "indices":
            if any(not 1 <= i <= n for i in items):
                return False
            vectors = [D.vectors[i - 1] for i in items]
        else:
            vectors = [tuple(v) for v in items]
            if any(v not in D.row_index for v in vectors):
                return False
        if any(dot(field, rep, d) != 0 for d in vectors):
            return False
        if rank(field, vectors) != k - 1:
            return False
    return True


def write_certificate(out: Union[str, TextIO], cert: Certificate) -> None:
    lines = [f"{cert.q} {cert.n} {cert.k} {len(cert.classes)} {cert.mode}"]
    for rep, items in cert.classes:
        left = " ".join(str(a) for a in rep)
        if cert.mode == "indices":
            right = " ".join(str(i) for i in items)
        else:
            right = " ".join(str(a) for v in items for a in v)
        lines.append(f"{left} | {right}")
    text = "\n".join(lines) + "\n"
    if isinstance(out, str):
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)


def read_certificate(src: Union[str, TextIO]) -> Certificate:
    if isinstance(src, str):
        with open(src, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = src.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise CertificateFormatError("empty certificate file")
    head = lines[0].split()
    if len(head) != 5:
        raise CertificateFormatError(f"bad certificate header {lines[0]!r}")
    try:
        q, n, k, count = (int(t) for t in head[:4])
    except ValueError as exc:
        raise CertificateFormatError(str(exc)) from None
    mode = head[4]
    if mode not in ("indices", "vectors"):
        raise CertificateFormatError(f"unknown certificate mode {mode!r}")
    if len(lines) - 1 != count:
        raise CertificateFormatError(
            f"expected {count} class lines, found {len(lines) - 1}"
        )
    classes = []
    for ln in lines[1:]:
        if "|" not in ln:
            raise CertificateFormatError(f"class line without separator: {ln!r}")
        left, right = ln.split("|", 1)
        try:
            rep = tuple(int(t) for t in left.split())
            payload = [int(t) for t in right.split()]
        except ValueError as exc:
            raise CertificateFormatError(str(exc)) from None
        if len(rep) != k:
            raise CertificateFormatError(f"representative {rep} has length != k")
        if mode == "indices":
            items: tuple = tuple(payload)
        else:
            if len(payload) % k:
                raise CertificateFormatError("vector payload not a multiple of k")
            items = tuple(
                tuple(payload[i * k:(i + 1) * k]) for i in range(len(payload) // k)
            )
        classes.append((rep, items))
    return Certificate(q=q, n=n, k=k, mode=mode, classes=tuple(classes))
