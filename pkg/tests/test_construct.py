"""Constructions: multilevel, puncturing, spreads, orbit codes."""

import random
from itertools import combinations

import pytest

from qspace.construct import (
    GF64_ORBIT_GENERATORS,
    OrbitGenerator,
    SkeletonCode,
    asymmetric,
    augment_greedy,
    augment_trivial,
    choose_Q,
    cyclic_orbit_code,
    equivalence_class,
    frobenius_map,
    gf64_orbit_code,
    hamming,
    hyperplane_tau,
    lifted_mrd_code,
    multilevel,
    multilevel_report,
    orbit,
    partial_spread,
    puncture_code,
    puncture_subspace,
    shift_map,
    skeleton_default,
    spread,
)
from qspace.designs import verify_partial_spread, verify_spread, verify_steiner
from qspace.errors import (
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
from qspace.gf import Extension, gf
from qspace.rank_metric import ferrers_bound, ferrers_of, singleton_rank
from qspace.subspace import (
    Subspace,
    SubspaceCode,
    code_min_distance,
    contains,
    d_I,
    d_S,
    enumerate_grassmannian,
    enumerate_projective,
    min_distance,
    span,
    vectors_of,
)

F2 = gf(2)


def sk(*words, **kw):
    return SkeletonCode.from_strings(words, **kw)


# -- skeletons ------------------------------------------------------------------

def test_skeleton_distances():
    assert hamming((1, 1, 0), (0, 1, 1)) == 2
    assert asymmetric((1, 1, 0, 0), (0, 0, 0, 1)) == 2
    assert asymmetric((1, 0), (1, 0)) == 0


def test_skeleton_default_examples():
    assert skeleton_default(6, 3, 2).words[0] == (1, 1, 1, 0, 0, 0)
    assert skeleton_default(6, 3, 3).to_strings() == ["111000", "000111"]
    assert skeleton_default(4, 2, 2).to_strings() == ["1100", "0011"]
    assert skeleton_default(6, 3, 2) == skeleton_default(6, 3, 2)
    for metric in ("grassmannian", "subspace", "injection"):
        S = skeleton_default(7, 3, 2, metric)
        assert S.words[0] == (1, 1, 1, 0, 0, 0, 0)
        assert S.verify()
    with pytest.raises(BadParams):
        skeleton_default(4, 5, 1)
    with pytest.raises(BadParams):
        skeleton_default(4, 2, 1, "hamming")


def test_skeleton_validation():
    with pytest.raises(BadParams):
        SkeletonCode(3, ((1, 0, 1), (1, 0, 1)))
    with pytest.raises(BadParams):
        SkeletonCode(3, ((1, 2, 0),))
    with pytest.raises(BadParams):
        SkeletonCode(3, ((1, 1, 0),), constant_weight=1)
    with pytest.raises(BadParams):
        SkeletonCode(3, ((1, 1, 0),), kind="lee")
    S = sk("1100", "0011")
    assert S.min_distance() == 4 and S.is_constant_weight()


# -- multilevel construction ----------------------------------------------------

def test_multilevel_two_words_delta3_is_steiner():
    C = multilevel(sk("111000", "000111"), 3, 2)
    assert len(C) == 9
    assert all(X.k == 3 for X in C)
    assert code_min_distance(C) == 3
    assert verify_steiner(C, 1)


def test_multilevel_two_words_delta2():
    R = multilevel_report(sk("111000", "000111"), 2, 2)
    assert R.layer_sizes == (64, 1)
    assert len(R.code) == 65
    assert R.verified_distance == 2 == code_min_distance(R.code)


def test_multilevel_degenerate_and_optimal_n4():
    one = multilevel(sk("1100"), 2, 2)
    assert len(one) == 4 == len(lifted_mrd_code(4, 2, 2, 2))
    assert set(one) == set(lifted_mrd_code(4, 2, 2, 2))
    two = multilevel(sk("1100", "0011"), 2, 2)
    assert len(two) == 5
    assert code_min_distance(two) == 2


@pytest.mark.parametrize("n,k,delta", [(6, 3, 2), (6, 2, 2), (7, 3, 2), (7, 2, 2), (8, 4, 3), (8, 3, 2)])
def test_multilevel_size_law_and_distance_grassmannian(n, k, delta):
    S = skeleton_default(n, k, delta)
    R = multilevel_report(S, delta, 2, verify=False)
    assert R.layer_sizes == tuple(2 ** d for d in R.layer_dims)
    assert len(R.code) == sum(R.layer_sizes)
    assert all(X.k == k for X in R.code)
    for v, dim in zip(S.words, R.layer_dims):
        assert dim <= ferrers_bound(ferrers_of(v), delta)
    assert R.layer_dims[0] == singleton_rank(k, n - k, delta)
    if len(R.code) <= 1500:
        assert code_min_distance(R.code) >= delta


@pytest.mark.parametrize("n,delta,metric", [(5, 2, "subspace"), (6, 2, "subspace"), (5, 2, "injection"),
                                            (6, 2, "injection"), (6, 3, "subspace")])
def test_multilevel_mixed_dimension_metrics(n, delta, metric):
    S = skeleton_default(n, n // 2, delta, metric)
    R = multilevel_report(S, delta, 2, metric, verify=False)
    assert len(R.code) == sum(R.layer_sizes)
    words = R.code.words
    dist = d_S if metric == "subspace" else d_I
    assert min(dist(X, Y) for X, Y in combinations(words, 2)) >= R.target


def test_multilevel_errors():
    with pytest.raises(SkeletonDistanceTooSmall):
        multilevel(sk("1100", "1010"), 2, 2)
    with pytest.raises(MetricMismatch):
        multilevel(sk("1100", "0010"), 1, 2)
    with pytest.raises(MetricMismatch):
        multilevel(sk("1100", "0011"), 2, 2, "injection")
    with pytest.raises(MetricMismatch):
        multilevel(sk("1100", "0000", kind="asymmetric"), 2, 2, "subspace")


# -- puncturing -----------------------------------------------------------------

def test_puncture_subspace_example():
    X = span([(1, 1, 0), (0, 1, 1)], F2, 3)
    # the third coordinate is index 2 here
    assert puncture_subspace(X, 2) == Subspace.full(F2, 2)
    with pytest.raises(UnitVectorInside):
        puncture_subspace(span([(0, 0, 1)], F2, 3), 2)
    with pytest.raises(BadParams):
        puncture_subspace(X, 3)


def test_puncture_subspace_deletes_coordinates_and_keeps_dimension():
    rng = random.Random(4)
    words = list(enumerate_projective(6, F2))
    checked = 0
    while checked < 300:
        X = words[rng.randrange(len(words))]
        i = rng.randrange(6)
        if contains(X, tuple(int(j == i) for j in range(6))):
            continue
        P = puncture_subspace(X, i)
        assert P.k == X.k
        assert set(vectors_of(P)) == {v[:i] + v[i + 1:] for v in vectors_of(X)}
        checked += 1


def test_puncture_code_of_lifted_mrd():
    C = lifted_mrd_code(6, 3, 2, 2)
    choice = choose_Q(C)
    assert choice.size == 16
    inside = sum(1 for X in C if all(contains(choice.Q, r) for r in X.rows))
    assert inside == 8
    P = puncture_code(C, choice.Q, choice.v)
    assert len(P) == 16 and P.n == 5
    # d_S of the lifted code is 4, so the punctured code keeps at least 3
    assert min_distance(C.words, "subspace") == 4
    assert min_distance(P.words, "subspace") >= 3
    A = augment_greedy(P, 3, "subspace", max_new=1)
    assert len(A) == 17
    assert min_distance(A.words, "subspace") >= 3


def test_puncture_code_trivial_cases():
    Q = span([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)], F2, 4)
    v = (0, 0, 0, 1)
    assert hyperplane_tau(Q) == 3
    words = [span([(1, 0, 0, 0)], F2, 4), span([(0, 1, 0, 0), (0, 0, 1, 0)], F2, 4)]
    out = puncture_code(SubspaceCode.of(words), Q, v)
    assert set(out) == {puncture_subspace(X, 3) for X in words}
    empty = SubspaceCode(F2, 4, (), "subspace")
    assert len(puncture_code(empty, Q, v)) == 0
    with pytest.raises(VInQ):
        puncture_code(empty, Q, (1, 0, 0, 0))
    with pytest.raises(BadHyperplane):
        puncture_code(empty, span([(1, 0, 0, 0)], F2, 4), v)
    with pytest.raises(AmbientMismatch):
        puncture_code(empty, span([(1, 0, 0), (0, 1, 0)], F2, 3), (0, 0, 1))


def test_puncture_distance_drop_at_most_one():
    for C in (spread(4, 2, 2), spread(6, 2, 2), lifted_mrd_code(5, 2, 2, 2)):
        d = min_distance(C.words, "subspace")
        for Q in list(enumerate_grassmannian(C.n, C.n - 1, F2))[:12]:
            v = next(p for p in (X.rows[0] for X in enumerate_grassmannian(C.n, 1, F2)) if not contains(Q, p))
            P = puncture_code(C, Q, v)
            if len(P) >= 2:
                assert min_distance(P.words, "subspace") >= d - 1


def test_choose_Q_single_word_and_tie_break():
    X = span([(1, 0, 0)], F2, 3)
    choice = choose_Q(SubspaceCode.of([X]))
    assert choice.size == 1
    first_hyper = next(Q for Q in enumerate_grassmannian(3, 2, F2) if contains(Q, (1, 0, 0)))
    assert choice.Q == first_hyper
    assert choose_Q(spread(4, 2, 2)) == choose_Q(spread(4, 2, 2))


# -- augmentation ---------------------------------------------------------------

def test_augment_trivial_examples():
    S = spread(4, 2, 2)
    inj = augment_trivial(S, "injection", 2)
    assert len(inj) == 7
    assert min_distance(inj.words, "injection") == 2
    sub = augment_trivial(S, "subspace", 4)
    assert len(sub) == 5
    empty = augment_trivial(SubspaceCode(F2, 3, (), "subspace"), "subspace", 3)
    assert set(empty) == {Subspace.zero(F2, 3), Subspace.full(F2, 3)}


def test_augment_greedy_respects_target_and_dims():
    P = puncture_code(lifted_mrd_code(6, 3, 2, 2), *(lambda c: (c.Q, c.v))(choose_Q(lifted_mrd_code(6, 3, 2, 2))))
    full = augment_greedy(P, 3, "subspace")
    assert len(full) == 18
    assert min_distance(full.words, "subspace") >= 3
    only2 = augment_greedy(P, 3, "subspace", dims=[2])
    assert all(X in P or X.k == 2 for X in only2)


# -- spreads --------------------------------------------------------------------

@pytest.mark.parametrize("n,k,q,size", [(4, 2, 2, 5), (6, 3, 2, 9), (8, 4, 2, 17), (6, 2, 2, 21), (4, 2, 3, 10)])
def test_spreads(n, k, q, size):
    C = spread(n, k, q)
    assert len(C) == size == (q ** n - 1) // (q ** k - 1)
    assert code_min_distance(C) == k
    assert verify_steiner(C, 1)
    assert verify_spread(C)
    # every nonzero vector is covered exactly once
    seen = {}
    for X in C:
        for v in vectors_of(X):
            if any(v):
                seen[v] = seen.get(v, 0) + 1
    assert len(seen) == q ** n - 1 and set(seen.values()) == {1}


def test_spread_errors():
    with pytest.raises(NotDivisible):
        spread(5, 2, 2)


@pytest.mark.parametrize("n,k,size", [(5, 2, 9), (7, 2, 41), (7, 3, 17), (5, 3, 1), (8, 3, 33)])
def test_partial_spreads(n, k, size):
    C = partial_spread(n, k, 2)
    assert len(C) == size
    assert all(X.k == k for X in C)
    assert verify_partial_spread(C)
    if len(C) > 1:
        assert code_min_distance(C) == k
    r = n % k
    assert len(C) >= (2 ** n - 2 ** k * (2 ** r - 1) - 1) // (2 ** k - 1)


def test_partial_spread_delegates_to_spread():
    assert partial_spread(6, 2, 2) == spread(6, 2, 2)
    with pytest.raises(BadParams):
        partial_spread(3, 4, 2)


# -- cyclic orbit codes ------------------------------------------------------------

EXT64 = Extension(F2, 6)


def test_gf64_orbit_code_size_and_distance():
    C = gf64_orbit_code()
    assert len(C) == 107
    assert min_distance(C.words, "injection") == 2
    assert len(gf64_orbit_code(include_trivial=False)) == 105
    sizes = [len(orbit(OrbitGenerator(EXT64, g).subspace(), EXT64)) for g in GF64_ORBIT_GENERATORS]
    assert sizes == [21, 63, 21]


def test_orbit_code_is_shift_invariant():
    C = gf64_orbit_code()
    assert {shift_map(X, 1, EXT64) for X in C} == set(C)


def test_single_generator_orbit():
    g = OrbitGenerator(EXT64, (0, 21, 42))
    X = g.subspace()
    assert X.k == 2
    C = cyclic_orbit_code([g])
    assert len(C) == 21 and all(Y.k == 2 for Y in C)
    full = OrbitGenerator(EXT64, tuple(range(63)))
    assert len(cyclic_orbit_code([full])) == 1


def test_orbit_generator_validation():
    with pytest.raises(NotASubspace):
        OrbitGenerator(EXT64, (0, 1)).subspace()
    with pytest.raises(BadParams):
        cyclic_orbit_code([])
    assert OrbitGenerator.parse("0, 21,42", EXT64).exponents == (0, 21, 42)


def test_shift_and_frobenius_group_laws():
    ext = Extension(F2, 4)
    for X in enumerate_grassmannian(4, 2, F2):
        assert shift_map(X, 0, ext) == X
        assert frobenius_map(X, 0, ext) == X
        assert shift_map(shift_map(X, 5, ext), 13, ext) == shift_map(X, (5 + 13) % 15, ext)
        assert frobenius_map(X, 4, ext) == X
        assert frobenius_map(X, 1, ext).k == X.k
        size = len(equivalence_class(X, ext))
        assert (4 * 15) % size == 0


def test_equivalence_classes_partition_g2_4_2():
    ext = Extension(F2, 4)
    remaining = set(enumerate_grassmannian(4, 2, F2))
    total = len(remaining)
    classes = []
    while remaining:
        X = min(remaining)
        cls = equivalence_class(X, ext)
        assert cls <= remaining
        remaining -= cls
        classes.append(len(cls))
    assert sum(classes) == total == 35
