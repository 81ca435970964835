"""Rank-metric codes: Gabidulin codes, Ferrers diagrams and lifting."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from .errors import BadDelta, CapExceeded, ParseError, ShapeMismatch, TooFewWords, ZeroWeight
from .gf import Extension, FieldSpec
from .subspace import Subspace, SubspaceCode, _pack, _rank2, dual, rank

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_CODE_CAP = 1 << 20
FDRM_SEARCH_BUDGET = 200


# -- matrix helpers -----------------------------------------------------------

def zeros(k: int, l: int) -> Matrix:
    return tuple((0,) * l for _ in range(k))


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def mat_add(F: FieldSpec, A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(F.add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(F: FieldSpec, A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(F.sub(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(F: FieldSpec, c: int, A: Matrix) -> Matrix:
    return tuple(tuple(F.mul(c, a) for a in r) for r in A)


def mat_mul(F: FieldSpec, A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    out = []
    for r in A:
        row = []
        for c in cols:
            acc = 0
            for a, b in zip(r, c):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def mat_rank(F: FieldSpec, A: Matrix) -> int:
    if not A:
        return 0
    return rank(A, F)


def nullspace(F: FieldSpec, M: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of {x : M x = 0}."""
    return list(dual(Subspace.from_matrix(F, ncols, M)).rows)


def d_R(A: Matrix, B: Matrix, field: FieldSpec) -> int:
    if shape(A) != shape(B):
        raise ShapeMismatch(f"shapes {shape(A)} and {shape(B)} differ")
    return mat_rank(field, mat_sub(field, A, B))


def singleton_rank(k: int, l: int, delta: int) -> int:
    if not 1 <= delta <= min(k, l):
        raise BadDelta(f"delta={delta} outside [1, {min(k, l)}]")
    return min(k * (l - delta + 1), l * (k - delta + 1))


# -- linear rank codes ----------------------------------------------------------

@dataclass(frozen=True)
class RankCode:
    """Linear code of k x l matrices spanned by ``basis``."""

    field: FieldSpec
    k: int
    l: int
    basis: tuple[Matrix, ...]
    delta: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.field.q ** self.dim

    def codewords(self, cap: int = DEFAULT_CODE_CAP) -> Iterator[Matrix]:
        if self.size > cap:
            raise CapExceeded(f"code has {self.size} words, cap {cap}")
        return iter(_span_matrices(self.field, self.k, self.l, self.basis))

    def min_rank_distance(self, cap: int = DEFAULT_CODE_CAP) -> int:
        """Exhaustive minimum rank over nonzero codewords."""
        if self.dim == 0:
            raise TooFewWords("zero code has a single codeword")
        if self.size > cap:
            raise CapExceeded(f"code has {self.size} words, cap {cap}")
        return _min_rank(self.field, self.k, self.l, self.basis)


def _span_matrices(F: FieldSpec, k: int, l: int, basis: Sequence[Matrix]) -> list[Matrix]:
    words = [zeros(k, l)]
    for B in basis:
        scaled = [mat_scale(F, c, B) for c in range(1, F.q)]
        words = words + [mat_add(F, w, s) for s in scaled for w in words]
    return words


def _min_rank(F: FieldSpec, k: int, l: int, basis: Sequence[Matrix]) -> int:
    if F.q == 2:
        # each codeword as a tuple of packed rows, built by XOR doubling
        prow = [tuple(_pack(r) for r in B) for B in basis]
        words = [(0,) * k]
        best = k
        for B in prow:
            new = [tuple(a ^ b for a, b in zip(w, B)) for w in words]
            for w in new:
                r = _rank2(w)
                if r < best:
                    best = r
            words += new
        return best
    return min(mat_rank(F, w) for w in _span_matrices(F, k, l, basis)[1:])


def gabidulin(k: int, l: int, delta: int, q: int | FieldSpec) -> RankCode:
    """MRD code of k x l matrices over GF(q) with minimum rank distance delta.

    Codewords are the evaluations of q-linearized polynomials of q-degree
    below ``min(k, l) - delta + 1`` at ``1, a, ..., a^(s-1)`` in GF(q^N),
    written as s x N matrices (N = max(k, l)) and transposed when k > l.
    """
    from .gf import gf

    F = gf(q) if isinstance(q, int) else q
    singleton_rank(k, l, delta)
    s, N = min(k, l), max(k, l)
    K = s - delta + 1
    ext = Extension(F, N)
    big = ext.big
    qq = F.q
    points = [big.alpha_pow(i) for i in range(s)]
    basis = []
    for j in range(K):
        frob = [big.pow(g, qq ** j) for g in points]
        for t in range(N):
            b = big.alpha_pow(t)
            M = tuple(ext.elem_to_vec(big.mul(b, g)) for g in frob)
            basis.append(M if k <= l else transpose(M))
    return RankCode(F, k, l, tuple(basis), delta)


def is_mrd(C: RankCode, cap: int = DEFAULT_CODE_CAP) -> bool:
    if C.size > cap:
        raise CapExceeded(f"code has {C.size} words, cap {cap}")
    if not 1 <= C.delta <= min(C.k, C.l):
        return False
    if C.dim != singleton_rank(C.k, C.l, C.delta):
        return False
    return C.min_rank_distance(cap) == C.delta


def lift(A: Matrix, field: FieldSpec) -> Subspace:
    """Row space of [I | A]."""
    k, l = shape(A)
    rows = tuple(tuple(int(i == j) for j in range(k)) + tuple(A[i]) for i in range(k))
    return Subspace(field, k + l, rows)


def lift_code(C: RankCode, cap: int = DEFAULT_CODE_CAP) -> SubspaceCode:
    words = tuple(lift(A, C.field) for A in C.codewords(cap))
    return SubspaceCode(C.field, C.k + C.l, words, "grassmannian", C.delta)


# -- Ferrers diagrams -------------------------------------------------------------

@dataclass(frozen=True)
class FerrersDiagram:
    """Right-justified rows of dots, top row first."""

    row_lengths: tuple[int, ...]

    def __post_init__(self):
        rl = tuple(int(x) for x in self.row_lengths)
        object.__setattr__(self, "row_lengths", rl)
        if any(x <= 0 for x in rl):
            raise ValueError(f"row lengths must be positive: {rl}")
        if any(a < b for a, b in zip(rl, rl[1:])):
            raise ValueError(f"row lengths must be nonincreasing: {rl}")

    @classmethod
    def parse(cls, text: str) -> "FerrersDiagram":
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(tuple(int(x) for x in text.split(",")))
        except ValueError as exc:
            raise ParseError(f"bad Ferrers diagram {text!r}: {exc}") from None

    @classmethod
    def rectangle(cls, m: int, eta: int) -> "FerrersDiagram":
        return cls((eta,) * m if eta > 0 else ())

    @property
    def m(self) -> int:
        return len(self.row_lengths)

    @property
    def eta(self) -> int:
        return self.row_lengths[0] if self.row_lengths else 0

    @property
    def dots(self) -> int:
        return sum(self.row_lengths)

    def cells(self) -> list[tuple[int, int]]:
        """Dot positions (row, column) inside the m x eta box."""
        eta = self.eta
        return [(r, c) for r, L in enumerate(self.row_lengths) for c in range(eta - L, eta)]

    def off_cells(self) -> list[tuple[int, int]]:
        on = set(self.cells())
        return [(r, c) for r in range(self.m) for c in range(self.eta) if (r, c) not in on]

    def __str__(self) -> str:
        return ",".join(map(str, self.row_lengths))

    def render(self) -> str:
        return "\n".join(" " * (self.eta - L) + "*" * L for L in self.row_lengths)


def ferrers_of(v: Sequence[int]) -> FerrersDiagram:
    """Dot diagram of the echelon Ferrers form with pivots at the ones of v."""
    n = len(v)
    piv = [j for j, x in enumerate(v) if x]
    k = len(piv)
    if k == 0:
        raise ZeroWeight("identifying vector of weight 0")
    lengths = [(n - 1 - p) - (k - 1 - j) for j, p in enumerate(piv)]
    return FerrersDiagram(tuple(L for L in lengths if L > 0))


def ferrers_bound(F: FerrersDiagram, delta: int) -> int:
    if delta < 1:
        raise BadDelta(f"delta={delta} < 1")
    best = None
    for i in range(delta):
        cut = delta - 1 - i
        nu = sum(max(0, L - cut) for L in F.row_lengths[i:])
        if best is None or nu < best:
            best = nu
    return best


@dataclass(frozen=True)
class FDRMCode:
    """Linear rank code whose matrices vanish off a Ferrers diagram."""

    field: FieldSpec
    diagram: FerrersDiagram
    delta: int
    basis: tuple[Matrix, ...]
    bound: int
    method: str = "subcode"
    trials: int = dc_field(default=0, compare=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def attained(self) -> bool:
        return self.dim == self.bound

    @property
    def gap(self) -> int:
        return self.bound - self.dim

    def as_rank_code(self) -> RankCode:
        return RankCode(self.field, self.diagram.m, self.diagram.eta, self.basis, self.delta)


def _random_invertible(F: FieldSpec, size: int, rng: random.Random) -> Matrix:
    while True:
        M = tuple(tuple(rng.randrange(F.q) for _ in range(size)) for _ in range(size))
        if mat_rank(F, M) == size:
            return M


def _supported_subcode(F: FieldSpec, basis: Sequence[Matrix], off: Sequence[tuple[int, int]]) -> list[Matrix]:
    D = len(basis)
    if not off:
        return list(basis)
    system = [[B[r][c] for B in basis] for (r, c) in off]
    out = []
    for coeffs in nullspace(F, system, D):
        acc = None
        for c, B in zip(coeffs, basis):
            if c:
                term = mat_scale(F, c, B)
                acc = term if acc is None else mat_add(F, acc, term)
        out.append(acc)
    return out


def fdrm_construct(diagram: FerrersDiagram, delta: int, q: int | FieldSpec,
                   seed: int = 0, budget: int = FDRM_SEARCH_BUDGET) -> FDRMCode:
    """Linear code supported on ``diagram`` with minimum rank distance >= delta.

    The subcode of a Gabidulin code on the bounding box that vanishes off
    the diagram is taken first.  When that falls short of the dot bound, up
    to ``budget`` random equivalent Gabidulin codes P*G*Q are tried
    (seeded, so results are reproducible) and the largest subcode is kept.
    """
    from .gf import gf

    F = gf(q) if isinstance(q, int) else q
    if delta < 1:
        raise BadDelta(f"delta={delta} < 1")
    m, eta = diagram.m, diagram.eta
    bound = ferrers_bound(diagram, delta)
    if m == 0 or delta > min(m, eta):
        return FDRMCode(F, diagram, delta, (), bound, "trivial")
    cells = diagram.cells()
    if delta == 1:
        basis = []
        for r, c in cells:
            basis.append(tuple(tuple(int((i, j) == (r, c)) for j in range(eta)) for i in range(m)))
        return FDRMCode(F, diagram, delta, tuple(basis), bound, "unit")
    G = gabidulin(m, eta, delta, F)
    off = diagram.off_cells()
    best = _supported_subcode(F, G.basis, off)
    trials = 0
    if len(best) < bound:
        rng = random.Random(seed)
        while trials < budget and len(best) < bound:
            trials += 1
            P = _random_invertible(F, m, rng)
            Q = _random_invertible(F, eta, rng)
            moved = [mat_mul(F, mat_mul(F, P, B), Q) for B in G.basis]
            sub = _supported_subcode(F, moved, off)
            if len(sub) > len(best):
                best = sub
    method = "subcode" if trials == 0 else "subcode+search"
    return FDRMCode(F, diagram, delta, tuple(best), bound, method, trials)


def embed_in_echelon(v: Sequence[int], A: Matrix, field: FieldSpec) -> Subspace:
    """Echelon subspace with pivots at the ones of v and the dots filled from A.

    ``A`` is an m x eta matrix on the bounding box of ``ferrers_of(v)``.
    """
    n = len(v)
    piv = [j for j, x in enumerate(v) if x]
    k = len(piv)
    ps = set(piv)
    nonpiv = [j for j in range(n) if j not in ps]
    m = len(A)
    eta = len(A[0]) if A else 0
    offset = len(nonpiv) - eta
    rows = []
    for i, p in enumerate(piv):
        row = [0] * n
        row[p] = 1
        if i < m:
            for c in range(eta):
                x = A[i][c]
                if x:
                    row[nonpiv[offset + c]] = x
        rows.append(tuple(row))
    return Subspace(field, n, tuple(rows))
