"""Code constructions: multilevel, puncturing, spreads, cyclic orbit codes."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import (
    AmbientMismatch,
    BadHyperplane,
    BadParams,
    MetricMismatch,
    NotASubspace,
    NotDivisible,
    SkeletonDistanceTooSmall,
    UnitVectorInside,
    VInQ,
)
from .gf import Extension, FieldSpec, gf
from .rank_metric import embed_in_echelon, fdrm_construct, ferrers_of, gabidulin, lift_code
from .subspace import (
    DISTANCES,
    Subspace,
    SubspaceCode,
    contains,
    enumerate_grassmannian,
    enumerate_projective,
    intersection,
    min_distance,
    span,
)

Word = tuple[int, ...]


def _field(q: int | FieldSpec) -> FieldSpec:
    return gf(q) if isinstance(q, int) else q


# -- skeleton codes -------------------------------------------------------------

def hamming(u: Word, v: Word) -> int:
    return sum(a != b for a, b in zip(u, v))


def asymmetric(u: Word, v: Word) -> int:
    a = sum(1 for x, y in zip(u, v) if x and not y)
    b = sum(1 for x, y in zip(u, v) if y and not x)
    return max(a, b)


_SKELETON_DIST = {"hamming": hamming, "asymmetric": asymmetric}


@dataclass(frozen=True)
class SkeletonCode:
    """Binary code whose words pick the echelon layers of a multilevel code."""

    n: int
    words: tuple[Word, ...]
    kind: str = "hamming"
    distance: int = 1
    constant_weight: int | None = None

    def __post_init__(self):
        if self.kind not in _SKELETON_DIST:
            raise BadParams(f"unknown skeleton distance {self.kind!r}")
        words = tuple(tuple(int(x) for x in w) for w in self.words)
        for w in words:
            if len(w) != self.n or any(x not in (0, 1) for x in w):
                raise BadParams(f"skeleton word {w} is not a binary word of length {self.n}")
            if self.constant_weight is not None and sum(w) != self.constant_weight:
                raise BadParams(f"word {w} does not have weight {self.constant_weight}")
        if len(set(words)) != len(words):
            raise BadParams("repeated skeleton word")
        object.__setattr__(self, "words", words)

    @classmethod
    def from_strings(cls, lines: Iterable[str], kind: str = "hamming", distance: int | None = None,
                     constant_weight: int | None = None) -> "SkeletonCode":
        words = [tuple(int(c) for c in s.strip()) for s in lines if s.strip()]
        if not words:
            raise BadParams("empty skeleton")
        n = len(words[0])
        code = cls(n, tuple(words), kind, 1, constant_weight)
        d = code.min_distance() if distance is None else distance
        return cls(n, code.words, kind, d, constant_weight)

    def min_distance(self) -> int | None:
        if len(self.words) < 2:
            return None
        dist = _SKELETON_DIST[self.kind]
        return min(dist(u, v) for u, v in combinations(self.words, 2))

    def verify(self) -> bool:
        d = self.min_distance()
        return d is None or d >= self.distance

    def is_constant_weight(self) -> bool:
        return len({sum(w) for w in self.words}) <= 1

    def to_strings(self) -> list[str]:
        return ["".join(map(str, w)) for w in self.words]


def _greedy(candidates: Iterable[Word], seed: Word, dist, d: int) -> list[Word]:
    chosen = [seed]
    for w in candidates:
        if w != seed and all(dist(w, c) >= d for c in chosen):
            chosen.append(w)
    return chosen


def skeleton_default(n: int, k: int, delta: int, metric: str = "grassmannian") -> SkeletonCode:
    """Greedy lexicographic skeleton that always starts with 1^k 0^(n-k).

    grassmannian: weight-k words at Hamming distance >= 2*delta;
    subspace: all words at Hamming distance >= 2*delta - 1;
    injection: all words at asymmetric distance >= delta.
    """
    if not 0 <= k <= n or delta < 1:
        raise BadParams(f"bad skeleton parameters n={n}, k={k}, delta={delta}")
    seed = tuple([1] * k + [0] * (n - k))
    if metric == "grassmannian":
        cands = (tuple(int(i in c) for i in range(n)) for c in combinations(range(n), k))
        words = _greedy(cands, seed, hamming, 2 * delta)
        return SkeletonCode(n, tuple(words), "hamming", 2 * delta, k)
    everything = (tuple((x >> (n - 1 - j)) & 1 for j in range(n)) for x in range(2 ** n))
    if metric == "subspace":
        words = _greedy(everything, seed, hamming, 2 * delta - 1)
        return SkeletonCode(n, tuple(words), "hamming", 2 * delta - 1)
    if metric == "injection":
        words = _greedy(everything, seed, asymmetric, delta)
        return SkeletonCode(n, tuple(words), "asymmetric", delta)
    raise BadParams(f"unknown metric {metric!r}")


# -- multilevel construction ----------------------------------------------------

@dataclass(frozen=True)
class MultilevelReport:
    code: SubspaceCode
    layer_sizes: tuple[int, ...]
    layer_dims: tuple[int, ...]
    attained: tuple[bool, ...]
    target: int
    verified_distance: int | None


def _layer(v: Word, delta: int, F: FieldSpec, seed: int) -> tuple[list[Subspace], int, bool]:
    n, k = len(v), sum(v)
    if k == 0:
        return [Subspace.zero(F, n)], 0, True
    diagram = ferrers_of(v)
    code = fdrm_construct(diagram, delta, F, seed=seed)
    words = [embed_in_echelon(v, A, F) for A in code.as_rank_code().codewords()]
    return words, code.dim, code.attained


def multilevel_report(skeleton: SkeletonCode, delta: int, q: int | FieldSpec, metric: str = "grassmannian",
                      verify: bool = True, verify_cap: int = 4000, seed: int = 0) -> MultilevelReport:
    F = _field(q)
    if delta < 1:
        raise BadParams(f"delta={delta} < 1")
    actual = skeleton.min_distance()
    if metric == "grassmannian":
        if skeleton.kind != "hamming":
            raise MetricMismatch("grassmannian codes need a Hamming-distance skeleton")
        if not skeleton.is_constant_weight():
            raise MetricMismatch("grassmannian codes need a constant-weight skeleton")
        need, target = 2 * delta, delta
    elif metric == "subspace":
        if skeleton.kind != "hamming":
            raise MetricMismatch("subspace codes need a Hamming-distance skeleton")
        need = 2 * delta - 1
        target = min(actual, 2 * delta) if actual is not None else 2 * delta
    elif metric == "injection":
        if skeleton.kind != "asymmetric":
            raise MetricMismatch("injection codes need an asymmetric-distance skeleton")
        need, target = delta, delta
    else:
        raise BadParams(f"unknown metric {metric!r}")
    if actual is not None and actual < need:
        raise SkeletonDistanceTooSmall(f"skeleton {skeleton.kind} distance {actual} < required {need}")
    words: list[Subspace] = []
    sizes, dims, att = [], [], []
    for v in skeleton.words:
        layer, dim, ok = _layer(v, delta, F, seed)
        words.extend(layer)
        sizes.append(len(layer))
        dims.append(dim)
        att.append(ok)
    code = SubspaceCode(F, skeleton.n, tuple(words), metric, target)
    if len(code) != sum(sizes):
        raise AssertionError("layers overlap; identifying vectors must be distinct")
    verified = None
    if verify and 2 <= len(code) <= verify_cap:
        verified = min_distance(code.words, metric)
        if verified < target:
            raise AssertionError(f"multilevel code has distance {verified} < {target}")
    return MultilevelReport(code, tuple(sizes), tuple(dims), tuple(att), target, verified)


def multilevel(skeleton: SkeletonCode, delta: int, q: int | FieldSpec, metric: str = "grassmannian",
               verify: bool = True) -> SubspaceCode:
    return multilevel_report(skeleton, delta, q, metric, verify).code


# -- puncturing -----------------------------------------------------------------

def puncture_subspace(X: Subspace, i: int) -> Subspace:
    """Delete coordinate i (0-based) from every vector of X."""
    n = X.n
    if not 0 <= i < n:
        raise BadParams(f"coordinate {i} outside [0, {n})")
    e = tuple(int(j == i) for j in range(n))
    if contains(X, e):
        raise UnitVectorInside(f"unit vector e_{i} lies in X")
    return Subspace.from_matrix(X.field, n - 1, [r[:i] + r[i + 1:] for r in X.rows])


def hyperplane_tau(Q: Subspace) -> int:
    """Position of the single zero of Q's identifying vector."""
    if Q.k != Q.n - 1:
        raise BadHyperplane(f"Q has dimension {Q.k}, expected {Q.n - 1}")
    ps = set(Q.pivots)
    return next(j for j in range(Q.n) if j not in ps)


def puncture_code(C: SubspaceCode, Q: Subspace, v: Sequence[int]) -> SubspaceCode:
    if Q.n != C.n:
        raise AmbientMismatch(f"Q lives in dimension {Q.n}, code in {C.n}")
    tau = hyperplane_tau(Q)
    v = tuple(v)
    if contains(Q, v):
        raise VInQ("v lies in Q")
    out = []
    for X in C:
        if _inside(X, Q):
            out.append(puncture_subspace(X, tau))
        elif contains(X, v):
            out.append(puncture_subspace(intersection(X, Q), tau))
    return SubspaceCode(C.field, C.n - 1, tuple(out), "subspace")


def _inside(X: Subspace, Q: Subspace) -> bool:
    return all(contains(Q, r) for r in X.rows)


def _points(F: FieldSpec, n: int) -> list[tuple[int, ...]]:
    return [X.rows[0] for X in enumerate_grassmannian(n, 1, F)]


@dataclass(frozen=True)
class PunctureChoice:
    Q: Subspace
    v: tuple[int, ...]
    size: int


def choose_Q(C: SubspaceCode, cap: int = 10 ** 5) -> PunctureChoice:
    """Exhaustive search over hyperplanes Q and points v outside Q.

    Ties go to the first Q, then the first v, in canonical order.
    """
    F, n = C.field, C.n
    hyper = list(enumerate_grassmannian(n, n - 1, F, cap))
    pts = _points(F, n)
    words = list(C)
    # for each word, the set of points it contains
    word_pts = []
    pt_index = {p: i for i, p in enumerate(pts)}
    from .subspace import points_of
    for X in words:
        word_pts.append({pt_index[p] for p in points_of(X)})
    best = None
    for Q in hyper:
        inside = [_inside(X, Q) for X in words]
        base = {X for X, ins in zip(words, inside) if ins}
        tau = hyperplane_tau(Q)
        base_p = {puncture_subspace(X, tau) for X in base}
        for vi, v in enumerate(pts):
            if contains(Q, v):
                continue
            extra = {puncture_subspace(intersection(X, Q), tau)
                     for X, ins, wp in zip(words, inside, word_pts) if not ins and vi in wp}
            size = len(base_p | extra)
            if best is None or size > best.size:
                best = PunctureChoice(Q, v, size)
    if best is None:
        raise BadParams("no hyperplane available")
    return best


def augment_greedy(C: SubspaceCode, target: int, metric: str | None = None, max_new: int | None = None,
                   dims: Sequence[int] | None = None) -> SubspaceCode:
    """Add words of the projective space, in canonical order, while distance >= target holds."""
    metric = metric or C.metric
    dist = DISTANCES[metric]
    words = list(C)
    have = set(words)
    added = 0
    pool = enumerate_projective(C.n, C.field)
    for X in pool:
        if max_new is not None and added >= max_new:
            break
        if X in have or (dims is not None and X.k not in dims):
            continue
        if metric == "grassmannian" and words and X.k != words[0].k:
            continue
        if all(dist(X, Y) >= target for Y in words):
            words.append(X)
            have.add(X)
            added += 1
    return SubspaceCode(C.field, C.n, tuple(words), metric, target)


def augment_trivial(C: SubspaceCode, metric: str | None = None, target_distance: int = 1) -> SubspaceCode:
    """Add {0} and then F_q^n whenever the minimum distance stays >= target."""
    metric = metric or C.metric
    if metric == "grassmannian":
        metric = "subspace" if C.metric == "grassmannian" else C.metric
    dist = DISTANCES[metric]
    words = list(C)
    for X in (Subspace.zero(C.field, C.n), Subspace.full(C.field, C.n)):
        if X in words:
            continue
        if all(dist(X, Y) >= target_distance for Y in words):
            words.append(X)
    return SubspaceCode(C.field, C.n, tuple(words), metric, target_distance)


# -- spreads ------------------------------------------------------------------------

def spread(n: int, k: int, q: int | FieldSpec) -> SubspaceCode:
    """The subfield spread {a^i * GF(q^k)} inside GF(q^n)."""
    F = _field(q)
    if k < 1 or n % k:
        raise NotDivisible(f"k={k} does not divide n={n}")
    ext = Extension(F, n)
    big = ext.big
    qq = F.q
    count = (qq ** n - 1) // (qq ** k - 1)
    beta = count
    words = []
    for i in range(count):
        gens = [ext.elem_to_vec(big.alpha_pow(i + beta * j)) for j in range(k)]
        words.append(span(gens, F, n))
    return SubspaceCode(F, n, tuple(words), "grassmannian", k)


def _lifted_mrd_block(n: int, k: int, F: FieldSpec) -> list[Subspace]:
    return list(lift_code(gabidulin(k, n - k, k, F)))


def _shift_right(X: Subspace, n: int) -> Subspace:
    pad = n - X.n
    return Subspace(X.field, n, tuple((0,) * pad + r for r in X.rows))


def partial_spread(n: int, k: int, q: int | FieldSpec) -> SubspaceCode:
    """Lifted MRD layers on shrinking tails plus one closing subspace.

    Size q^(n-k) + q^(n-2k) + ... + q^(k+r) + 1 with r = n mod k.
    """
    F = _field(q)
    if k < 1 or k > n:
        raise BadParams(f"need 1 <= k <= n, got k={k}, n={n}")
    if n % k == 0:
        return spread(n, k, F)
    words = _partial_words(n, k, F)
    return SubspaceCode(F, n, tuple(words), "grassmannian", k)


def _partial_words(n: int, k: int, F: FieldSpec) -> list[Subspace]:
    if n < 2 * k:
        # first k-subspace of GF(q)^n in canonical order
        return [next(iter(enumerate_grassmannian(n, k, F)))]
    head = _lifted_mrd_block(n, k, F)
    tail = [_shift_right(X, n) for X in _partial_words(n - k, k, F)]
    return head + tail


# -- cyclic orbit codes -------------------------------------------------------------

@dataclass(frozen=True)
class OrbitGenerator:
    """A subspace of GF(q^n) given by the exponents of its nonzero elements."""

    ext: Extension
    exponents: tuple[int, ...]

    def __post_init__(self):
        N = self.ext.big.q - 1
        exps = tuple(sorted({e % N for e in self.exponents}))
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def parse(cls, text: str, ext: Extension) -> "OrbitGenerator":
        return cls(ext, tuple(int(x) for x in text.replace(" ", "").split(",") if x))

    def subspace(self) -> Subspace:
        ext = self.ext
        F, n = ext.base, ext.n
        vecs = [ext.elem_to_vec(ext.big.alpha_pow(e)) for e in self.exponents]
        X = span(vecs, F, n)
        if F.q ** X.k != len(vecs) + 1:
            raise NotASubspace(f"{len(vecs) + 1} elements do not form a subspace")
        return X


def _basis_elements(X: Subspace, ext: Extension) -> list[int]:
    return [ext.vec_to_elem(r) for r in X.rows]


def shift_map(X: Subspace, j: int, ext: Extension) -> Subspace:
    """Multiply every element by a^j."""
    big = ext.big
    a = big.alpha_pow(j)
    return span([ext.elem_to_vec(big.mul(a, e)) for e in _basis_elements(X, ext)], X.field, X.n)


def frobenius_map(X: Subspace, l: int, ext: Extension) -> Subspace:
    """Raise every element to the power q^l."""
    big = ext.big
    e_pow = ext.base.q ** l
    return span([ext.elem_to_vec(big.pow(e, e_pow)) for e in _basis_elements(X, ext)], X.field, X.n)


def orbit(X: Subspace, ext: Extension) -> list[Subspace]:
    seen, out = set(), []
    for j in range(ext.big.q - 1):
        Y = shift_map(X, j, ext)
        if Y in seen:
            break
        seen.add(Y)
        out.append(Y)
    return out


def equivalence_class(X: Subspace, ext: Extension) -> set[Subspace]:
    out: set[Subspace] = set()
    for l in range(ext.n):
        out.update(orbit(frobenius_map(X, l, ext), ext))
    return out


def cyclic_orbit_code(gens: Sequence[OrbitGenerator], include_zero: bool = False, include_full: bool = False,
                      metric: str = "injection") -> SubspaceCode:
    if not gens:
        raise BadParams("at least one generator is required")
    ext = gens[0].ext
    F, n = ext.base, ext.n
    words: list[Subspace] = []
    for g in gens:
        if g.ext.big != ext.big or g.ext.base != ext.base:
            raise BadParams("generators over different fields")
        words.extend(orbit(g.subspace(), ext))
    if include_zero:
        words.append(Subspace.zero(F, n))
    if include_full:
        words.append(Subspace.full(F, n))
    return SubspaceCode(F, n, tuple(words), metric)


GF64_ORBIT_GENERATORS = (
    (0, 21, 42),
    (0, 1, 4, 6, 16, 24, 33),
    (0, 1, 6, 8, 18, 21, 22, 27, 29, 39, 42, 43, 48, 50, 60),
)


def gf64_orbit_code(include_trivial: bool = True) -> SubspaceCode:
    """The three-generator cyclic orbit code in GF(2^6) with modulus x^6+x+1."""
    ext = Extension(gf(2), 6)
    gens = [OrbitGenerator(ext, g) for g in GF64_ORBIT_GENERATORS]
    return cyclic_orbit_code(gens, include_trivial, include_trivial)


def lifted_mrd_code(n: int, k: int, delta: int, q: int | FieldSpec) -> SubspaceCode:
    """Lifted Gabidulin code in G_q(n, k) with Grassmannian distance delta."""
    return lift_code(gabidulin(k, n - k, delta, _field(q)))
