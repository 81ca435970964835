"""Subspaces of GF(q)^n in canonical reduced row echelon form.

A :class:`Subspace` stores its RREF generator matrix, so equality of
subspaces is equality of matrices.  Over GF(2) the rows are also kept as
packed integers (column j -> bit n-1-j) and every rank computation takes
the XOR-basis fast path.

Canonical order (files, enumeration): dimension, then pivot sets in
colexicographic order, then the free entries of the echelon form read
row-major as a base-q counter.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .errors import (
    AmbientMismatch,
    BadParams,
    CapExceeded,
    DimensionMismatch,
    FieldMismatch,
    TooFewWords,
    UnequalDimensions,
)
from .gf import FieldSpec

DEFAULT_ENUM_CAP = 10 ** 7
METRICS = ("subspace", "injection", "grassmannian")

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


# -- linear algebra -----------------------------------------------------------

def _pack(row: Sequence[int]) -> int:
    v = 0
    for x in row:
        v = (v << 1) | x
    return v


def _unpack(v: int, n: int) -> Vector:
    return tuple((v >> (n - 1 - j)) & 1 for j in range(n))


def _rref2(vals: Iterable[int], n: int) -> list[int]:
    """Packed GF(2) RREF: rows sorted by pivot (leftmost first)."""
    piv: dict[int, int] = {}
    for v in vals:
        while v:
            h = v.bit_length() - 1
            b = piv.get(h)
            if b is None:
                piv[h] = v
                break
            v ^= b
    hs = sorted(piv, reverse=True)
    rows = [piv[h] for h in hs]
    # back-substitute so every pivot column is clean
    for i in range(len(rows) - 1, -1, -1):
        bit = 1 << hs[i]
        for r in range(i):
            if rows[r] & bit:
                rows[r] ^= rows[i]
    return rows


def _rank2(vals: Iterable[int], seed: dict[int, int] | None = None) -> int:
    piv = dict(seed) if seed else {}
    start = len(piv)
    for v in vals:
        while v:
            h = v.bit_length() - 1
            b = piv.get(h)
            if b is None:
                piv[h] = v
                break
            v ^= b
    return len(piv) - start


def _rref_general(matrix: Sequence[Sequence[int]], F: FieldSpec, n: int) -> Matrix:
    rows = [list(r) for r in matrix]
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    out_rows: list[list[int]] = []
    r = 0
    for col in range(n):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][col]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        pr = rows[r]
        c = inv(pr[col])
        if c != 1:
            pr[:] = [mul(c, x) for x in pr]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][col]
                if f:
                    nf = neg(f)
                    ri = rows[i]
                    rows[i] = [add(a, mul(nf, b)) if b else a for a, b in zip(ri, pr)]
        r += 1
        if r == len(rows):
            break
    out_rows = rows[:r]
    return tuple(tuple(x) for x in out_rows)


def rref(matrix: Sequence[Sequence[int]], field: FieldSpec, n: int | None = None) -> tuple[Matrix, int]:
    """Canonical RREF (zero rows dropped) and rank of ``matrix`` over ``field``."""
    if n is None:
        if not matrix:
            return (), 0
        n = len(matrix[0])
    for row in matrix:
        if len(row) != n:
            raise DimensionMismatch(f"row of length {len(row)} in a {n}-column matrix")
        for x in row:
            if not 0 <= x < field.q:
                raise BadParams(f"entry {x} outside GF({field.q})")
    if field.q == 2:
        packed = _rref2((_pack(r) for r in matrix), n)
        return tuple(_unpack(v, n) for v in packed), len(packed)
    out = _rref_general(matrix, field, n)
    return out, len(out)


def rank(matrix: Sequence[Sequence[int]], field: FieldSpec) -> int:
    if not matrix:
        return 0
    if field.q == 2:
        return _rank2(_pack(r) for r in matrix)
    return rref(matrix, field)[1]


# -- subspaces ------------------------------------------------------------------

class Subspace:
    """A subspace of ``GF(q)^n`` held as its RREF generator matrix.

    Build one with :func:`span` or :meth:`from_matrix`; the plain constructor
    trusts that ``rows`` is already canonical.
    """

    __slots__ = ("field", "n", "rows", "_packed", "_hash", "_key")

    def __init__(self, field: FieldSpec, n: int, rows: Matrix):
        self.field = field
        self.n = n
        self.rows = rows
        self._packed = None
        self._hash = None
        self._key = None

    @classmethod
    def from_matrix(cls, field: FieldSpec, n: int, matrix: Sequence[Sequence[int]]) -> "Subspace":
        rows, _ = rref(matrix, field, n)
        return cls(field, n, rows)

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, ())

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def k(self) -> int:
        return len(self.rows)

    dim = k

    @property
    def packed(self) -> tuple[int, ...]:
        if self._packed is None:
            self._packed = tuple(_pack(r) for r in self.rows)
        return self._packed

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.rows)

    def free_entries(self) -> tuple[int, ...]:
        piv = self.pivots
        ps = set(piv)
        out = []
        for i, p in enumerate(piv):
            row = self.rows[i]
            out.extend(row[j] for j in range(p + 1, self.n) if j not in ps)
        return tuple(out)

    def order_key(self) -> tuple:
        if self._key is None:
            self._key = (self.k, tuple(reversed(self.pivots)), self.free_entries())
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows and self.field == other.field

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.rows))
        return self._hash

    def __lt__(self, other: "Subspace") -> bool:
        return self.order_key() < other.order_key()

    def __repr__(self) -> str:
        return f"Subspace(n={self.n}, k={self.k}, rows={to_text(self)})"

    def __contains__(self, v: Sequence[int]) -> bool:
        return contains(self, v)


def _check_ambient(X: Subspace, Y: Subspace) -> None:
    if X.n != Y.n:
        raise AmbientMismatch(f"ambient dimensions {X.n} and {Y.n} differ")
    if X.field != Y.field:
        raise FieldMismatch(f"{X.field.descriptor} vs {Y.field.descriptor}")


def span(vectors: Iterable[Sequence[int]], field: FieldSpec, n: int) -> Subspace:
    vecs = [tuple(v) for v in vectors]
    for v in vecs:
        if len(v) != n:
            raise DimensionMismatch(f"vector of length {len(v)} in GF(q)^{n}")
    return Subspace.from_matrix(field, n, vecs)


def contains(X: Subspace, v: Sequence[int]) -> bool:
    if len(v) != X.n:
        raise DimensionMismatch(f"vector of length {len(v)} vs ambient {X.n}")
    F = X.field
    if F.q == 2:
        w = _pack(v)
        for r in X.packed:
            if w >> (r.bit_length() - 1) & 1:
                w ^= r
        return w == 0
    w = list(v)
    for row, p in zip(X.rows, X.pivots):
        c = w[p]
        if c:
            nc = F.neg(c)
            w = [F.add(a, F.mul(nc, b)) for a, b in zip(w, row)]
    return not any(w)


def vectors_of(X: Subspace) -> Iterator[Vector]:
    """All ``q^k`` vectors of X (the zero vector first)."""
    F, n = X.field, X.n
    if F.q == 2:
        rows = X.packed
        for coeffs in product((0, 1), repeat=X.k):
            v = 0
            for c, r in zip(coeffs, rows):
                if c:
                    v ^= r
            yield _unpack(v, n)
        return
    for coeffs in product(range(F.q), repeat=X.k):
        v = [0] * n
        for c, r in zip(coeffs, X.rows):
            if c:
                v = [F.add(a, F.mul(c, b)) for a, b in zip(v, r)]
        yield tuple(v)


def points_of(X: Subspace) -> Iterator[Vector]:
    """One normalised representative (leading nonzero = 1) per 1-dim subspace."""
    for v in vectors_of(X):
        lead = next((x for x in v if x), 0)
        if lead == 1:
            yield v


def _stack_rank(X: Subspace, Y: Subspace) -> int:
    if X.field.q == 2:
        seed = {r.bit_length() - 1: r for r in X.packed}
        return X.k + _rank2(Y.packed, seed)
    return rank(X.rows + Y.rows, X.field)


def intersection_dim(X: Subspace, Y: Subspace) -> int:
    _check_ambient(X, Y)
    return X.k + Y.k - _stack_rank(X, Y)


def sum_subspace(X: Subspace, Y: Subspace) -> Subspace:
    _check_ambient(X, Y)
    return Subspace.from_matrix(X.field, X.n, X.rows + Y.rows)


def dual(X: Subspace) -> Subspace:
    """Orthogonal complement under the standard dot product."""
    F, n = X.field, X.n
    piv = X.pivots
    ps = set(piv)
    basis = []
    for j in range(n):
        if j in ps:
            continue
        y = [0] * n
        y[j] = 1
        for i, p in enumerate(piv):
            y[p] = F.neg(X.rows[i][j])
        basis.append(y)
    return Subspace.from_matrix(F, n, basis)


def intersection(X: Subspace, Y: Subspace) -> Subspace:
    _check_ambient(X, Y)
    if Y.k == Y.n:
        return X
    if X.k == X.n:
        return Y
    return dual(sum_subspace(dual(X), dual(Y)))


def d_S(X: Subspace, Y: Subspace) -> int:
    return X.k + Y.k - 2 * intersection_dim(X, Y)


def d_I(X: Subspace, Y: Subspace) -> int:
    return max(X.k, Y.k) - intersection_dim(X, Y)


def d_G(X: Subspace, Y: Subspace) -> int:
    if X.k != Y.k:
        raise UnequalDimensions(f"d_G needs equal dimensions, got {X.k} and {Y.k}")
    return X.k - intersection_dim(X, Y)


DISTANCES = {"subspace": d_S, "injection": d_I, "grassmannian": d_G}


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def projective_size(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def identifying_vector(X: Subspace) -> Vector:
    v = [0] * X.n
    for p in X.pivots:
        v[p] = 1
    return tuple(v)


def pivot_sets(n: int, k: int) -> list[tuple[int, ...]]:
    """k-subsets of range(n) in colexicographic order."""
    return sorted(combinations(range(n), k), key=lambda c: tuple(reversed(c)))


def echelon_layer(field: FieldSpec, n: int, pivots: Sequence[int]) -> Iterator[Subspace]:
    """All subspaces whose identifying vector has ones at ``pivots``."""
    k = len(pivots)
    ps = set(pivots)
    free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in ps]
    base = [[0] * n for _ in range(k)]
    for i, p in enumerate(pivots):
        base[i][p] = 1
    for vals in product(range(field.q), repeat=len(free)):
        rows = [r[:] for r in base]
        for (i, j), x in zip(free, vals):
            rows[i][j] = x
        yield Subspace(field, n, tuple(tuple(r) for r in rows))


def enumerate_grassmannian(n: int, k: int, field: FieldSpec, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Subspace]:
    if not 0 <= k <= n:
        return iter(())
    total = gaussian_binomial(n, k, field.q)
    if total > cap:
        raise CapExceeded(f"|G_{field.q}({n},{k})| = {total} exceeds cap {cap}")
    return (X for piv in pivot_sets(n, k) for X in echelon_layer(field, n, piv))


def enumerate_projective(n: int, field: FieldSpec, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Subspace]:
    total = projective_size(n, field.q)
    if total > cap:
        raise CapExceeded(f"|P_{field.q}({n})| = {total} exceeds cap {cap}")
    return (X for k in range(n + 1) for X in enumerate_grassmannian(n, k, field, cap))


def to_text(X: Subspace) -> list[str]:
    """Rows as digit strings (q <= 9); {0} gives an empty list."""
    if X.field.q > 10:
        return [",".join(str(x) for x in r) for r in X.rows]
    return ["".join(str(x) for x in r) for r in X.rows]


@dataclass(frozen=True)
class SubspaceCode:
    """A set of subspaces of one ambient space, kept in canonical order."""

    field: FieldSpec
    n: int
    words: tuple[Subspace, ...]
    metric: str = "subspace"
    claimed_min_distance: int | None = None

    def __post_init__(self):
        if self.metric not in METRICS:
            raise BadParams(f"unknown metric {self.metric!r}")
        for X in self.words:
            if X.n != self.n:
                raise AmbientMismatch(f"word in GF(q)^{X.n} inside a code over GF(q)^{self.n}")
            if X.field != self.field:
                raise FieldMismatch("word over a different field")
        words = tuple(sorted(set(self.words), key=Subspace.order_key))
        object.__setattr__(self, "words", words)
        if self.metric == "grassmannian" and len({X.k for X in words}) > 1:
            raise UnequalDimensions("grassmannian code with words of several dimensions")

    @classmethod
    def of(cls, words: Iterable[Subspace], field: FieldSpec | None = None, n: int | None = None,
           metric: str = "subspace", claimed_min_distance: int | None = None) -> "SubspaceCode":
        words = tuple(words)
        if field is None or n is None:
            if not words:
                raise BadParams("field and n are required for an empty code")
            field, n = words[0].field, words[0].n
        return cls(field, n, words, metric, claimed_min_distance)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.words)

    def __contains__(self, X: object) -> bool:
        return X in set(self.words)

    @property
    def dimensions(self) -> list[int]:
        return sorted({X.k for X in self.words})

    def with_words(self, words: Iterable[Subspace], metric: str | None = None) -> "SubspaceCode":
        return SubspaceCode(self.field, self.n, tuple(words), metric or self.metric, None)


def code_dual(C: SubspaceCode) -> SubspaceCode:
    return SubspaceCode(C.field, C.n, tuple(dual(X) for X in C), C.metric, C.claimed_min_distance)


def min_distance(words: Sequence[Subspace], metric: str) -> int:
    """Minimum pairwise distance; exhaustive over all pairs."""
    if len(words) < 2:
        raise TooFewWords("minimum distance needs at least two words")
    if metric not in DISTANCES:
        raise BadParams(f"unknown metric {metric!r}")
    if metric == "grassmannian" and len({X.k for X in words}) > 1:
        raise UnequalDimensions("grassmannian distance on words of different dimensions")
    best = None
    F = words[0].field
    if F.q == 2:
        seeds = [{r.bit_length() - 1: r for r in X.packed} for X in words]
        ks = [X.k for X in words]
        packed = [X.packed for X in words]
        for a in range(len(words)):
            sa, ka = seeds[a], ks[a]
            for b in range(a + 1, len(words)):
                kb = ks[b]
                inter = kb - _rank2(packed[b], sa)
                if metric == "subspace":
                    d = ka + kb - 2 * inter
                else:
                    d = max(ka, kb) - inter
                if best is None or d < best:
                    best = d
        return best
    dist = DISTANCES[metric]
    for a in range(len(words)):
        for b in range(a + 1, len(words)):
            d = dist(words[a], words[b])
            if best is None or d < best:
                best = d
    return best


def code_min_distance(C: SubspaceCode | Sequence[Subspace], metric: str | None = None) -> int:
    if isinstance(C, SubspaceCode):
        return min_distance(C.words, metric or C.metric)
    return min_distance(list(C), metric or "subspace")
