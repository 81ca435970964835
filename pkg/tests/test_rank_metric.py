"""Rank-metric codes, Ferrers diagrams and lifting."""

import random
from itertools import combinations, product

import pytest

from qspace.errors import BadDelta, CapExceeded, ParseError, ShapeMismatch, TooFewWords, ZeroWeight
from qspace.gf import gf
from qspace.rank_metric import (
    FerrersDiagram,
    RankCode,
    d_R,
    embed_in_echelon,
    fdrm_construct,
    ferrers_bound,
    ferrers_of,
    gabidulin,
    is_mrd,
    lift,
    lift_code,
    mat_rank,
    singleton_rank,
    transpose,
    zeros,
)
from qspace.subspace import (
    code_min_distance,
    d_G,
    enumerate_grassmannian,
    gaussian_binomial,
    identifying_vector,
    rref,
    vectors_of,
)

F2, F3 = gf(2), gf(3)


def brute_rank(A, F):
    """Rank as log_q of the number of distinct row combinations."""
    k = len(A)
    l = len(A[0]) if A else 0
    seen = set()
    for cs in product(range(F.q), repeat=k):
        v = [0] * l
        for c, row in zip(cs, A):
            for j, x in enumerate(row):
                v[j] = F.add(v[j], F.mul(c, x))
        seen.add(tuple(v))
    r = 0
    while F.q ** r < len(seen):
        r += 1
    return r


def random_mat(rng, F, k, l):
    return tuple(tuple(rng.randrange(F.q) for _ in range(l)) for _ in range(k))


def all_diagrams(max_m, max_eta):
    def rec(prefix, cap):
        if prefix:
            yield FerrersDiagram(tuple(prefix))
        if len(prefix) == max_m:
            return
        for L in range(1, cap + 1):
            yield from rec(prefix + [L], L)
    yield from rec([], max_eta)


def weight_vectors(n, k):
    for piv in combinations(range(n), k):
        yield tuple(int(j in piv) for j in range(n))


# -- rank distance ------------------------------------------------------------------

def test_rank_distance_examples():
    I3 = tuple(tuple(int(i == j) for j in range(3)) for i in range(3))
    assert d_R(I3, I3, F2) == 0
    assert d_R(I3, zeros(3, 3), F2) == 3
    with pytest.raises(ShapeMismatch):
        d_R(I3, zeros(3, 4), F2)


@pytest.mark.parametrize("F", [F2, F3], ids=["q2", "q3"])
def test_rank_distance_matches_brute_force(F):
    rng = random.Random(F.q)
    for _ in range(200):
        A, B = random_mat(rng, F, 3, 4), random_mat(rng, F, 3, 4)
        diff = tuple(tuple(F.sub(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))
        assert d_R(A, B, F) == brute_rank(diff, F) == mat_rank(F, diff)
        assert d_R(A, B, F) == d_R(B, A, F)
        assert mat_rank(F, transpose(A)) == mat_rank(F, A)


def test_singleton_rank_values():
    assert singleton_rank(2, 3, 2) == 3
    assert singleton_rank(3, 3, 1) == 9
    assert singleton_rank(3, 4, 2) == 8
    for bad in ((3, 3, 0), (2, 3, 3)):
        with pytest.raises(BadDelta):
            singleton_rank(*bad)


# -- Gabidulin codes ------------------------------------------------------------

@pytest.mark.parametrize("k,l,delta,q", [
    (3, 3, 3, 2), (3, 3, 2, 2), (2, 2, 2, 2), (2, 3, 2, 2), (3, 2, 2, 2),
    (2, 4, 2, 2), (4, 2, 2, 2), (3, 4, 3, 2), (2, 2, 2, 3), (2, 3, 2, 3), (4, 4, 4, 2),
])
def test_gabidulin_is_mrd(k, l, delta, q):
    C = gabidulin(k, l, delta, q)
    assert (C.k, C.l) == (k, l)
    assert C.dim == singleton_rank(k, l, delta)
    assert C.min_rank_distance() == delta
    assert is_mrd(C)
    assert all(len(A) == k and all(len(r) == l for r in A) for A in C.basis)


def test_gabidulin_333_pairwise_full_rank():
    C = gabidulin(3, 3, 3, 2)
    words = list(C.codewords())
    assert C.dim == 3 and len(words) == 8 == len(set(words))
    for A, B in combinations(words, 2):
        assert d_R(A, B, F2) == 3


def test_gabidulin_delta_one_is_full_space():
    for k, l in ((2, 2), (2, 3), (3, 2)):
        C = gabidulin(k, l, 1, 2)
        assert C.dim == k * l
        assert len(set(C.codewords())) == 2 ** (k * l)


def test_is_mrd_negative_cases():
    zero = RankCode(F2, 3, 3, (), 2)
    assert not is_mrd(zero)
    full = gabidulin(2, 2, 1, 2)
    assert not is_mrd(RankCode(F2, 2, 2, full.basis, 2))
    with pytest.raises(TooFewWords):
        zero.min_rank_distance()
    with pytest.raises(CapExceeded):
        is_mrd(gabidulin(4, 4, 1, 2), cap=1000)
    with pytest.raises(BadDelta):
        gabidulin(2, 3, 3, 2)


# -- lifting --------------------------------------------------------------------

def test_lift_of_zero_and_canonical():
    X = lift(zeros(2, 3), F2)
    assert X.rows == ((1, 0, 0, 0, 0), (0, 1, 0, 0, 0))
    rng = random.Random(1)
    for _ in range(50):
        A = random_mat(rng, F3, 2, 3)
        X = lift(A, F3)
        assert rref(X.rows, F3, 5) == (X.rows, 2)
        assert identifying_vector(X) == (1, 1, 0, 0, 0)


@pytest.mark.parametrize("k,l,delta,q", [(2, 2, 2, 2), (3, 3, 2, 2), (2, 3, 2, 3), (3, 3, 3, 2)])
def test_lift_preserves_distance_on_all_pairs(k, l, delta, q):
    C = gabidulin(k, l, delta, q)
    F = C.field
    words = list(C.codewords())
    lifted = [lift(A, F) for A in words]
    assert len(set(lifted)) == len(words)
    for (A, X), (B, Y) in combinations(zip(words, lifted), 2):
        assert d_G(X, Y) == d_R(A, B, F)


def test_lifted_mrd_633():
    L = lift_code(gabidulin(3, 3, 2, 2))
    assert len(L) == 64 == 2 ** ((6 - 3) * (3 - 2 + 1))
    assert all(X.k == 3 and X.n == 6 for X in L)
    assert code_min_distance(L) == 2


# -- Ferrers diagrams -----------------------------------------------------------

def test_ferrers_of_examples():
    full = ferrers_of((1, 1, 1, 0, 0, 0))
    assert full == FerrersDiagram.rectangle(3, 3) and full.dots == 9
    assert ferrers_of((0, 0, 0, 1, 1, 1)).dots == 0
    D = ferrers_of((1, 0, 1, 1, 0, 0))
    assert D.row_lengths == (3, 2, 2)
    with pytest.raises(ZeroWeight):
        ferrers_of((0, 0, 0))


def test_ferrers_shape_invariants():
    for n in range(1, 8):
        for k in range(1, n + 1):
            for v in weight_vectors(n, k):
                D = ferrers_of(v)
                assert D.m <= k and D.eta <= n - k
                assert list(D.row_lengths) == sorted(D.row_lengths, reverse=True)
                # the rightmost column holds m dots and the top row holds eta dots
                assert sum(1 for r, c in D.cells() if c == D.eta - 1) == D.m
                assert sum(1 for r, c in D.cells() if r == 0) == D.eta


@pytest.mark.parametrize("q", [2, 3])
def test_layer_sizes_sum_to_gaussian_binomial(q):
    nmax = 7 if q == 2 else 5
    for n in range(1, nmax + 1):
        for k in range(1, n + 1):
            total = sum(q ** ferrers_of(v).dots for v in weight_vectors(n, k))
            assert total == gaussian_binomial(n, k, q)


def test_layers_partition_grassmannian_5_2():
    counts = {}
    for X in enumerate_grassmannian(5, 2, F2):
        v = identifying_vector(X)
        counts[v] = counts.get(v, 0) + 1
    assert len(counts) == 10
    for v, c in counts.items():
        assert c == 2 ** ferrers_of(v).dots


def test_embed_in_echelon_fills_ferrers_form():
    v = (1, 0, 1, 1, 0, 0)
    D = ferrers_of(v)
    cells = D.cells()
    seen = set()
    for fill in product(range(2), repeat=len(cells)):
        A = [[0] * D.eta for _ in range(D.m)]
        for (r, c), x in zip(cells, fill):
            A[r][c] = x
        X = embed_in_echelon(v, tuple(map(tuple, A)), F2)
        assert identifying_vector(X) == v
        assert rref(X.rows, F2, 6)[0] == X.rows
        seen.add(X)
    assert len(seen) == 2 ** D.dots
    assert seen == {X for X in enumerate_grassmannian(6, 3, F2) if identifying_vector(X) == v}


def test_diagram_parse_and_text():
    D = FerrersDiagram.parse("3,3,2")
    assert str(D) == "3,3,2" and D.dots == 8 and (D.m, D.eta) == (3, 3)
    assert D.render() == "***\n***\n **"
    assert FerrersDiagram.parse("") == FerrersDiagram(())
    with pytest.raises(ParseError):
        FerrersDiagram.parse("3,x")
    with pytest.raises(ParseError):
        FerrersDiagram.parse("2,3")


# -- the dot bound --------------------------------------------------------------

def test_ferrers_bound_examples():
    assert ferrers_bound(FerrersDiagram.rectangle(2, 3), 2) == 3
    assert ferrers_bound(FerrersDiagram.rectangle(3, 3), 3) == 3
    for D in all_diagrams(3, 4):
        assert ferrers_bound(D, 1) == D.dots
    with pytest.raises(BadDelta):
        ferrers_bound(FerrersDiagram.rectangle(2, 2), 0)


def test_ferrers_bound_on_rectangles_is_singleton():
    for k in range(1, 7):
        for l in range(1, 7):
            for delta in range(1, min(k, l) + 1):
                assert ferrers_bound(FerrersDiagram.rectangle(k, l), delta) == singleton_rank(k, l, delta)


def test_ferrers_bound_brute_force_nu():
    # direct count of dots outside the first i rows and the last delta-1-i columns
    for D in all_diagrams(4, 4):
        for delta in range(1, 5):
            nus = []
            for i in range(delta):
                cut = delta - 1 - i
                nus.append(sum(1 for r, c in D.cells() if r >= i and c < D.eta - cut))
            assert ferrers_bound(D, delta) == min(nus)


# -- Ferrers-diagram rank-metric codes ---------------------------------------------

def _supported(C):
    on = set(C.diagram.cells())
    return all(B[r][c] == 0 for B in C.basis for r in range(C.diagram.m)
               for c in range(C.diagram.eta) if (r, c) not in on)


def test_fdrm_examples():
    D = FerrersDiagram((3, 2, 1))
    C = fdrm_construct(D, 1, 2)
    assert C.dim == 6 and C.attained and C.method == "unit"
    R = fdrm_construct(FerrersDiagram.rectangle(3, 3), 2, 2)
    assert R.dim == singleton_rank(3, 3, 2) == R.bound
    E = fdrm_construct(FerrersDiagram(()), 2, 2)
    assert E.dim == 0
    with pytest.raises(BadDelta):
        fdrm_construct(D, 0, 2)


@pytest.mark.parametrize("q", [2, 3])
def test_fdrm_sound_and_within_bound(q):
    F = gf(q)
    maxd = 4 if q == 2 else 3
    for D in all_diagrams(maxd, maxd):
        for delta in range(1, min(D.m, D.eta) + 1):
            C = fdrm_construct(D, delta, F)
            assert C.dim <= C.bound == ferrers_bound(D, delta)
            assert _supported(C)
            assert C.gap == C.bound - C.dim
            if delta <= 2:
                assert C.attained, (str(D), delta)
            if C.dim:
                R = C.as_rank_code()
                assert mat_rank(F, [tuple(x for row in B for x in row) for B in C.basis]) == C.dim
                if R.size <= 2 ** 12:
                    assert R.min_rank_distance() >= delta


@pytest.mark.parametrize("m,eta", [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)])
def test_fdrm_rectangle_matches_mrd(m, eta):
    for delta in range(1, min(m, eta) + 1):
        C = fdrm_construct(FerrersDiagram.rectangle(m, eta), delta, 2)
        assert C.dim == singleton_rank(m, eta, delta)


def test_fdrm_is_deterministic():
    D = FerrersDiagram((4, 4, 3, 1))
    a, b = fdrm_construct(D, 3, 2, seed=7), fdrm_construct(D, 3, 2, seed=7)
    assert a == b


def test_lifted_vectors_match_subspace_oracle():
    A = ((1, 0, 1), (0, 1, 1))
    X = lift(A, F2)
    rows = {tuple(r) for r in ((1, 0) + A[0], (0, 1) + A[1])}
    assert rows <= set(vectors_of(X))
    assert len(set(vectors_of(X))) == 4
