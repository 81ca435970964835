"""Exhaustive checks for q-designs, spreads, transversal designs and coverings."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import BadParams, CapExceeded, DimTooSmall, NotConstantDimension
from .gf import FieldSpec
from .subspace import (
    DEFAULT_ENUM_CAP,
    Subspace,
    SubspaceCode,
    _pack,
    _rank2,
    _rref2,
    _unpack,
    enumerate_grassmannian,
    gaussian_binomial,
    intersection_dim,
    pivot_sets,
    rank,
)


def sub_subspaces(X: Subspace, t: int) -> Iterator[Subspace]:
    """All t-dimensional subspaces of X, each exactly once."""
    F, n = X.field, X.n
    if t > X.k or t < 0:
        return
    if F.q == 2:
        rows = X.packed
        for S in enumerate_grassmannian(X.k, t, F):
            vals = []
            for coeffs in S.rows:
                v = 0
                for c, r in zip(coeffs, rows):
                    if c:
                        v ^= r
                vals.append(v)
            red = _rref2(vals, n)
            yield Subspace(F, n, tuple(_unpack(v, n) for v in red))
        return
    for S in enumerate_grassmannian(X.k, t, F):
        vecs = []
        for coeffs in S.rows:
            v = [0] * n
            for c, r in zip(coeffs, X.rows):
                if c:
                    v = [F.add(a, F.mul(c, b)) for a, b in zip(v, r)]
            vecs.append(v)
        yield Subspace.from_matrix(F, n, vecs)


@dataclass
class CoverageReport:
    t: int
    histogram: dict[int, int]
    total: int
    trivial: bool = False

    def is_design(self, lam: int) -> bool:
        return self.histogram.get(lam, 0) == self.total

    @property
    def is_steiner(self) -> bool:
        return self.is_design(1)

    @property
    def is_covering(self) -> bool:
        return self.histogram.get(0, 0) == 0

    @property
    def max_multiplicity(self) -> int:
        return max((m for m, c in self.histogram.items() if c), default=0)

    def as_dict(self) -> dict:
        return {"t": self.t, "total": self.total, "trivial": self.trivial,
                "histogram": {str(m): c for m, c in sorted(self.histogram.items())},
                "steiner": self.is_steiner, "covering": self.is_covering}


def coverage(C: SubspaceCode | Sequence[Subspace], t: int, cap: int = DEFAULT_ENUM_CAP,
             field: FieldSpec | None = None, n: int | None = None) -> CoverageReport:
    words = list(C)
    if isinstance(C, SubspaceCode):
        field, n = C.field, C.n
    elif words:
        field, n = words[0].field, words[0].n
    if field is None or n is None:
        raise BadParams("field and n are needed for an empty word list")
    total = gaussian_binomial(n, t, field.q)
    if total > cap:
        raise CapExceeded(f"[{n},{t}]_{field.q} = {total} exceeds cap {cap}")
    for X in words:
        if X.k < t:
            raise DimTooSmall(f"word of dimension {X.k} < t = {t}")
    counts: Counter = Counter()
    for X in words:
        counts.update(sub_subspaces(X, t))
    hist = Counter(counts.values())
    hist[0] = total - len(counts)
    dims = {X.k for X in words}
    trivial = len(dims) == 1 and len(set(words)) == gaussian_binomial(n, dims.pop(), field.q)
    return CoverageReport(t, dict(hist), total, trivial)


def verify_design(C, t: int, lam: int) -> bool:
    return coverage(C, t).is_design(lam)


def verify_steiner(C, t: int) -> bool:
    return coverage(C, t).is_steiner


def verify_covering(C, r: int) -> bool:
    return coverage(C, r).is_covering


def steiner_divisibility(t: int, k: int, n: int, q: int) -> tuple[bool, list[tuple[int, Fraction, bool]]]:
    """Necessary integrality conditions [n-i, t-i]_q / [k-i, t-i]_q, i < t."""
    if not 0 < t < k < n:
        raise BadParams(f"need 0 < t < k < n, got t={t}, k={k}, n={n}")
    rows = []
    for i in range(t):
        f = Fraction(gaussian_binomial(n - i, t - i, q), gaussian_binomial(k - i, t - i, q))
        rows.append((i, f, f.denominator == 1))
    return all(r[2] for r in rows), rows


def _constant_dim(C) -> int:
    dims = {X.k for X in C}
    if len(dims) > 1:
        raise NotConstantDimension(f"words of dimensions {sorted(dims)}")
    return dims.pop() if dims else 0


def verify_partial_spread(C) -> bool:
    words = list(C)
    if not words:
        return True
    k = _constant_dim(words)
    if k == 0:
        return False
    return coverage(words, 1).max_multiplicity <= 1


def verify_spread(C) -> bool:
    words = list(C)
    if not words:
        return False
    k = _constant_dim(words)
    return k > 0 and coverage(words, 1).is_steiner


def cover_check(C) -> bool:
    """Every 1-dimensional subspace lies in some word."""
    words = [X for X in C if X.k > 0]
    if not words:
        return False
    return coverage(words, 1).is_covering


# -- subspace transversal designs --------------------------------------------------

@dataclass
class STDReport:
    n: int
    k: int
    t: int
    group_count: int
    group_size: int
    properties: dict[int, bool] = field(default_factory=dict)
    details: dict[int, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.properties.values())

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "t": self.t, "group_count": self.group_count,
                "group_size": self.group_size, "properties": {str(i): v for i, v in self.properties.items()},
                "details": {str(i): v for i, v in self.details.items()}, "ok": self.ok}


def _normalise(F: FieldSpec, v: Sequence[int]) -> tuple[int, ...] | None:
    lead = next((x for x in v if x), 0)
    if lead == 0:
        return None
    c = F.inv(lead)
    return tuple(F.mul(c, x) for x in v)


def verify_std(C: SubspaceCode, k: int, n: int, t: int | None = None) -> STDReport:
    """Check the five transversal-design properties for the words of C.

    Points are the projective points whose first k coordinates are not all
    zero; the group of a point is the 1-subspace spanned by its head.
    ``t`` defaults to k - delta + 1 with delta the claimed (or computed)
    minimum Grassmannian distance.
    """
    from .subspace import min_distance, points_of

    words = list(C)
    F = C.field
    q = F.q
    if C.n != n:
        raise BadParams(f"code lives in dimension {C.n}, not {n}")
    if words and _constant_dim(words) != k:
        raise NotConstantDimension(f"words are not all of dimension {k}")
    if t is None:
        delta = C.claimed_min_distance
        if delta is None:
            delta = min_distance(words, "grassmannian") if len(words) > 1 else k
        t = k - delta + 1
    group_count = (q ** k - 1) // (q - 1)
    group_size = q ** (n - k)
    rep = STDReport(n, k, t, group_count, group_size)

    # 1 + 2: points and groups
    groups: dict[tuple, list] = {}
    for v in product(range(q), repeat=n):
        head = _normalise(F, v[:k])
        if head is None or _normalise(F, v) != v:
            continue
        groups.setdefault(head, []).append(v)
    npts = sum(len(g) for g in groups.values())
    rep.properties[1] = npts == group_count * group_size
    rep.details[1] = f"{npts} points"
    rep.properties[2] = len(groups) == group_count and all(len(g) == group_size for g in groups.values())
    rep.details[2] = f"{len(groups)} groups"

    # 3: blocks avoid the vectors with zero head
    V0 = Subspace(F, n, tuple(tuple(int(j == i) for j in range(n)) for i in range(k, n)))
    bad3 = sum(1 for X in words if intersection_dim(X, V0) > 0)
    rep.properties[3] = bad3 == 0
    rep.details[3] = f"{bad3} blocks meet V_0"

    # 4: one point per group
    bad4 = 0
    for X in words:
        heads = Counter(_normalise(F, p[:k]) for p in points_of(X))
        if None in heads or len(heads) != group_count or any(c != 1 for c in heads.values()):
            bad4 += 1
    rep.properties[4] = bad4 == 0
    rep.details[4] = f"{bad4} blocks miss or repeat a group"

    # 5: admissible t-subspaces (trivial meet with V_0) each in exactly one block
    admissible = gaussian_binomial(k, t, q) * q ** (t * (n - k))
    seen: Counter = Counter()
    for X in words:
        seen.update(sub_subspaces(X, t))
    inadmissible = sum(1 for T in seen if any(p >= k for p in T.pivots))
    repeats = sum(1 for c in seen.values() if c > 1)
    rep.properties[5] = inadmissible == 0 and repeats == 0 and len(seen) == admissible
    rep.details[5] = f"{len(seen)} of {admissible} admissible {t}-subspaces covered, {repeats} more than once"
    return rep


# -- complements -----------------------------------------------------------------

def limit_constant(q: int, tol: float = 1e-12) -> float:
    """prod_{i >= 1} 1 / (1 + q^-i)."""
    prod, i = 1.0, 1
    while True:
        term = q ** -i
        prod /= 1.0 + term
        if term < tol:
            return prod
        i += 1


def _packed_layer(n: int, piv: Sequence[int]) -> Iterator[list[int]]:
    ps = set(piv)
    frees = [[j for j in range(p + 1, n) if j not in ps] for p in piv]
    bits = [[1 << (n - 1 - j) for j in fr] for fr in frees]
    base = [1 << (n - 1 - p) for p in piv]
    choices = []
    for b0, bs in zip(base, bits):
        row_vals = [b0]
        for b in bs:
            row_vals = row_vals + [v | b for v in row_vals]
        choices.append(row_vals)
    for rows in product(*choices):
        yield list(rows)


def _hull_dim2(rows: list[int]) -> int:
    k = len(rows)
    gram = []
    for a in rows:
        g = 0
        for b in rows:
            g = (g << 1) | (bin(a & b).count("1") & 1)
        gram.append(g)
    return k - _rank2(gram)


@dataclass(frozen=True)
class Census:
    n: int
    q: int
    count: int
    total: int
    by_dim: tuple[tuple[int, int, int], ...]
    limit: float

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.count, self.total)


def complements_census(n: int, q: int | FieldSpec, cap: int = DEFAULT_ENUM_CAP) -> Census:
    """Count subspaces X of GF(q)^n with X meet X^perp = {0}, exhaustively."""
    from .gf import gf

    F = gf(q) if isinstance(q, int) else q
    total = sum(gaussian_binomial(n, k, F.q) for k in range(n + 1))
    if total > cap:
        raise CapExceeded(f"|P_{F.q}({n})| = {total} exceeds cap {cap}")
    by_dim = []
    count = 0
    for k in range(n + 1):
        good = 0
        if F.q == 2:
            for piv in pivot_sets(n, k):
                for rows in _packed_layer(n, piv):
                    if _hull_dim2(rows) == 0:
                        good += 1
        else:
            for X in enumerate_grassmannian(n, k, F, cap):
                G = X.rows
                gram = [[_dot(F, a, b) for b in G] for a in G]
                if k == 0 or rank(gram, F) == k:
                    good += 1
        by_dim.append((k, good, gaussian_binomial(n, k, F.q)))
        count += good
    return Census(n, F.q, count, total, tuple(by_dim), limit_constant(F.q))


def _dot(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc
