from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heckext.linalg import QMatrix
from heckext.rootsys import (KNOWN_ORDERS, GroupTooLargeError, RootDatum, RootDatumError,
                             build_root_datum, elliptic_classes, enumerate_weyl_group,
                             minimal_coset_reps)

from helpers import datum

TYPES = ["A1", "A2", "A3", "B2", "B3", "G2"]


def all_roots(d):
    return [r.vector for r in d.positive_roots] + [tuple(-x for x in r.vector)
                                                  for r in d.positive_roots]


def test_a1_one_positive_root():
    d = build_root_datum("A1", 1)
    assert len(d.positive_roots) == 1 and d.ambient_dim == 1


def test_a2_three_positive_roots_against_brute_force_closure():
    d = build_root_datum("A2", 1)
    # brute force: apply simple reflections until nothing new appears
    refl = [d.simple_reflection_matrix(i) for i in range(2)]
    seen = {tuple(a) for a in d.simple_roots}
    frontier = list(seen)
    while frontier:
        v = frontier.pop()
        for s in refl:
            w = tuple((s @ QMatrix.from_columns([list(v)], nrows=2)).col(0))
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    assert len(seen) == 6
    assert len(d.positive_roots) == 3


def test_g2_cartan_and_six_positive_roots():
    d = build_root_datum("G2", 1)
    alpha, beta = 0, 1
    assert d.pairing(d.simple_roots[alpha], d.simple_coroots[beta]) == -1
    assert d.pairing(d.simple_roots[beta], d.simple_coroots[alpha]) == -3
    assert len(d.positive_roots) == 6


@pytest.mark.parametrize("t", TYPES)
def test_group_orders(t):
    assert enumerate_weyl_group(datum(t)).order == KNOWN_ORDERS[t]


@pytest.mark.parametrize("t", TYPES)
def test_roots_are_permuted_by_every_element(t):
    d = datum(t)
    W = d.weyl_group()
    roots = set(all_roots(d))
    for e in W.elements:
        for a in roots:
            image = tuple((e.matrix @ QMatrix.from_columns([list(a)], nrows=d.ambient_dim)).col(0))
            assert image in roots


@pytest.mark.parametrize("t", TYPES)
def test_root_coroot_pairing_is_two(t):
    d = datum(t)
    for r in d.positive_roots:
        assert d.pairing(r.vector, r.coroot) == 2


@pytest.mark.parametrize("t", TYPES)
def test_element_invariants(t):
    W = datum(t).weyl_group()
    n = W.datum.ambient_dim
    for e in W.elements:
        m = QMatrix.identity(n)
        for i in e.word:
            m = m @ W.datum.simple_reflection_matrix(i)
        assert m == e.matrix
        assert e.matrix.det() == e.sign == (-1) ** e.length
    assert sum(e.sign for e in W.elements) == 0


@pytest.mark.parametrize("t", TYPES)
def test_longest_element(t):
    d = datum(t)
    W = d.weyl_group()
    w0 = W.elements[W.longest]
    assert w0.length == max(e.length for e in W.elements) == len(d.positive_roots)
    assert W.mul[W.longest][W.longest] == 0
    # w0 maps the simple roots to minus a permutation of them
    simple = {tuple(a) for a in d.simple_roots}
    for a in d.simple_roots:
        img = tuple(-x for x in (w0.matrix @ QMatrix.from_columns([list(a)], nrows=d.n)).col(0))
        assert img in simple


@pytest.mark.parametrize("t", TYPES)
def test_conjugacy_classes_partition_and_are_closed(t):
    W = datum(t).weyl_group()
    members = sorted(i for c in W.classes for i in c)
    assert members == list(range(W.order))
    for c in W.classes:
        for g in range(W.order):
            assert W.conj(g, c[0]) in c


@pytest.mark.parametrize("t", TYPES)
def test_parabolic_factorization(t):
    d = datum(t)
    W = d.weyl_group()
    r = d.rank
    for J in (J for mask in product([0, 1], repeat=r)
              for J in [tuple(i for i in range(r) if mask[i])]):
        P = W.parabolic(J)
        assert len(P.reps) * len(P.subgroup) == W.order
        assert sorted(P.factor) == list(range(W.order))
        for w, (u, x) in P.factor.items():
            assert W.mul[u][x] == w
            assert W.length(w) == W.length(u) + W.length(x)


@pytest.mark.parametrize("t,count", [("A1", 1), ("A2", 1), ("B2", 2), ("G2", 3), ("A3", 1),
                                     ("B3", 3)])
def test_elliptic_class_counts(t, count):
    W = datum(t).weyl_group()
    ell = elliptic_classes(W, datum(t))
    assert len(ell) == count
    d = W.det_one_minus()
    for c in ell:
        assert all(d[i] != 0 for i in W.classes[c])


def test_a1_elliptic_class_is_the_reflection_with_det_two():
    W = datum("A1").weyl_group()
    (c,) = elliptic_classes(W)
    assert W.classes[c] == [1]
    assert W.det_one_minus()[1] == 2


def test_gl_realization_has_no_elliptic_classes():
    d = build_root_datum("A2", 1, realization="gl")
    assert not d.spans_V
    assert elliptic_classes(d.weyl_group()) == []


def test_minimal_coset_reps_examples():
    W1 = datum("A1").weyl_group()
    assert [e.index for e in minimal_coset_reps(W1, [0])] == [0]
    assert [e.index for e in minimal_coset_reps(W1, [])] == [0, 1]
    W2 = datum("A2").weyl_group()
    reps = minimal_coset_reps(W2, [0])
    assert [e.length for e in reps] == [0, 1, 2]
    keys = [(e.length, e.word) for e in reps]
    assert keys == sorted(keys)


def test_minimal_coset_reps_invalid_index():
    with pytest.raises(RootDatumError):
        minimal_coset_reps(datum("A2").weyl_group(), [5])


def test_errors():
    with pytest.raises(RootDatumError, match="unsupported type"):
        build_root_datum("E8", 1)
    with pytest.raises(RootDatumError, match="expected"):
        build_root_datum("B2", [1, 2, 3])
    with pytest.raises(RootDatumError, match="not constant"):
        build_root_datum("A2", [1, 2])
    with pytest.raises(RootDatumError, match="linearly dependent"):
        RootDatum.from_simple_data("bad", [[1, 0], [2, 0]], [[2, 0], [1, 0]], 1)


def test_group_order_cap():
    with pytest.raises(GroupTooLargeError):
        enumerate_weyl_group(build_root_datum("B3", 1), max_order=10)


def test_dihedral_aliases_match_crystallographic_types():
    for alias, base in [("I2(3)", "A2"), ("I2(4)", "B2"), ("I2(6)", "G2")]:
        a, b = build_root_datum(alias, 1), build_root_datum(base, 1)
        assert a.cartan == b.cartan
        assert a.weyl_group().order == KNOWN_ORDERS[alias]


def test_parameters_per_orbit_and_per_root():
    d = build_root_datum("B2", [1, 2])
    assert [d.k_simple(i) for i in range(2)] == [1, 2]
    d = build_root_datum("A2", [Fraction(1, 2), Fraction(1, 2)])
    assert d.parameters == (Fraction(1, 2),)
    # every positive root carries the parameter of its orbit
    g = build_root_datum("G2", [3, 5])
    for r in g.positive_roots:
        assert r.k == g.parameters[r.orbit]


@given(st.integers(-5, 5).filter(bool), st.integers(-5, 5).filter(bool))
def test_orbit_constant_parameters_accepted(a, b):
    d = build_root_datum("B2", [a, b])
    assert d.parameters == (Fraction(a), Fraction(b))
