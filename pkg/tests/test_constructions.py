from fractions import Fraction

import pytest
from hypothesis import given, strategies as st_

from heckext.algebra import (HModule, InvalidModuleError, direct_sum, iota, is_isomorphic,
                             validate_module, w_character, ClassFunction)
from heckext.constructions import (MultipleCentralCharactersError, NonSplitSpectrumError,
                                   central_character, central_characters, coroot_expansion,
                                   is_discrete_series, is_tempered, one_dim_module,
                                   parabolic_induction, principal_series, restrict_to_parabolic,
                                   theta_weight, trivial_module,
                                   weight_from_simple_values, weights)
from heckext.linalg import QMatrix
from heckext.rootsys import RootDatumError, build_root_datum

from helpers import BATTERY_KEYS, battery, datum, ps, st, triv

TYPES = ["A1", "A2", "B2", "G2"]
F = Fraction


# ------------------------------------------------------------ one-dimensional


def test_steinberg_a1():
    S = st("A1")
    assert S.gen_W == (QMatrix([[-1]]),)
    assert S.gen_V == (QMatrix([[-1]]),)


def test_trivial_a2():
    T = triv("A2")
    assert [g[0, 0] for g in T.gen_V] == [1, 1]


def test_steinberg_b2_unequal_parameters():
    d = datum("B2", (1, 2))
    S = one_dim_module(d, -1)
    assert S.label == "St"
    assert [g[0, 0] for g in S.gen_V] == [-d.k_simple(i) for i in range(2)]
    assert sorted(g[0, 0] for g in S.gen_V) == [-2, -1]


def test_sign_pattern_must_extend_to_character():
    with pytest.raises(ValueError, match="character of W"):
        one_dim_module(datum("A2"), [1, -1])
    with pytest.raises(ValueError):
        one_dim_module(datum("A2"), [1, 0])


def test_mixed_sign_pattern_on_b2():
    # long and short simple roots are not conjugate, so (+1, -1) is allowed
    X = one_dim_module(datum("B2"), [1, -1])
    assert validate_module(X).ok
    assert X.label == "chi+-"


# ------------------------------------------------------------ principal series


def test_principal_series_a1_matrices():
    M = ps("A1", (3,))
    assert M.gen_V[0] == QMatrix([[3, 2], [0, -3]])
    assert M.gen_W[0] == QMatrix([[0, 1], [1, 0]])


@pytest.mark.parametrize("t", TYPES)
def test_principal_series_dimension_and_character(t):
    M = ps(t, (3,) * datum(t).rank)
    assert M.dim == M.W.order
    assert w_character(M) == ClassFunction.regular(M.W)
    assert validate_module(M).ok


@given(st_.lists(st_.fractions(min_value=-5, max_value=5, max_denominator=3),
                 min_size=2, max_size=2))
def test_principal_series_validates_for_any_weight(gamma):
    assert validate_module(principal_series(datum("B2"), gamma)).ok


# ------------------------------------------------------------ induction / restriction


def test_induction_from_full_subset_is_identity():
    for X in battery("A2")[:4]:
        Y = parabolic_induction(X.datum, [0, 1], restrict_to_parabolic(X, [0, 1]))
        assert Y.dim == X.dim
        assert is_isomorphic(X, Y)


@pytest.mark.parametrize("t", TYPES)
def test_induction_from_empty_subset_is_principal_series(t):
    d = datum(t)
    for gamma in [(3, 5)[:d.rank], (0,) * d.rank]:
        M = principal_series(d, gamma)
        values = weight_from_simple_values(d, gamma)
        one = HModule(d.parabolic([]), [], [QMatrix([[x]]) for x in values])
        Y = parabolic_induction(d, [], one)
        assert is_isomorphic(Y, M)


def test_induced_steinberg_restricted_to_torus_a1():
    S = st("A1")
    Y = parabolic_induction(S.datum, [], restrict_to_parabolic(S, []))
    assert Y.dim == 2
    assert w_character(Y).values == (2, 0)


@pytest.mark.parametrize("key", BATTERY_KEYS, ids=[f"{t}-{k}" for t, k in BATTERY_KEYS])
def test_induction_dimension(key):
    d = datum(*key)
    W = d.weyl_group()
    for X in battery(*key)[:4]:
        if X.dim > 6:
            continue
        for J in [(), (0,), (1,)][: 1 + d.rank]:
            Y = parabolic_induction(d, J, restrict_to_parabolic(X, J))
            assert Y.dim == len(W.parabolic(J).reps) * X.dim
            assert validate_module(Y).ok


def test_induction_rejects_invalid_module():
    d = datum("A1")
    bad = HModule(d.parabolic([0]), [QMatrix([[-1]])], [QMatrix([[1]])])
    with pytest.raises(InvalidModuleError):
        parabolic_induction(d, [0], bad)


def test_restriction_examples():
    T = triv("A2")
    R = restrict_to_parabolic(T, [0])
    assert R.datum.rank == 1 and R.gen_W == (QMatrix([[1]]),)
    assert validate_module(R).ok
    R0 = restrict_to_parabolic(T, [])
    assert R0.gen_W == () and R0.gen_V == T.gen_V
    assert restrict_to_parabolic(T, [0, 1]).same_matrices(T)


# ------------------------------------------------------------ weights


def test_weight_examples():
    assert weights(st("A1")) == [((F(-1),), 1)]
    assert weights(ps("A1", (3,))) == [((F(-3),), 1), ((F(3),), 1)]
    assert weights(ps("A2", (0, 0))) == [((F(0), F(0)), 6)]


@pytest.mark.parametrize("key", BATTERY_KEYS, ids=[f"{t}-{k}" for t, k in BATTERY_KEYS])
def test_weights_of_iota_are_negated(key):
    for X in battery(*key):
        neg = sorted((tuple(-x for x in g), m) for g, m in weights(X))
        assert weights(iota(X)) == neg
        assert sum(m for _, m in weights(X)) == X.dim


def _gl_nonsplit():
    d = build_root_datum("A1", 1, realization="gl")
    # t_s = 1, α acts by k = 1, e1 + e2 acts by a matrix with char poly x^2 - 2
    a = QMatrix([[1, 0], [0, 1]])
    c = QMatrix([[0, 2], [1, 0]])
    e1, e2 = (c + a) * F(1, 2), (c - a) * F(1, 2)
    return HModule(d, [QMatrix.identity(2)], [e1, e2], "nonsplit")


def test_non_split_spectrum_is_reported():
    X = _gl_nonsplit()
    assert validate_module(X).ok
    with pytest.raises(NonSplitSpectrumError, match="2"):
        weights(X)


def test_tempered_needs_spanning_roots():
    d = build_root_datum("A1", 1, realization="gl")
    with pytest.raises(RootDatumError):
        is_tempered(trivial_module(d))


# ------------------------------------------------------------ central characters


def test_central_character_examples():
    O = central_character(triv("A1"))
    assert O == central_character(st("A1"))
    assert set(O.members) == {(F(1),), (F(-1),)}
    assert set(central_character(ps("A1", (3,))).members) == {(F(3),), (F(-3),)}


def test_multiple_central_characters_reported():
    X = direct_sum(ps("A1", (3,)), ps("A1", (5,)))
    assert len(central_characters(X)) == 2
    with pytest.raises(MultipleCentralCharactersError):
        central_character(X)


@pytest.mark.parametrize("key", BATTERY_KEYS, ids=[f"{t}-{k}" for t, k in BATTERY_KEYS])
def test_central_character_is_an_orbit(key):
    d = datum(*key)
    W = d.weyl_group()
    for X in battery(*key):
        for O in central_characters(X):
            for g in O.members:
                for w in range(W.order):
                    assert W.act_on_weight(w, g) in O


# ------------------------------------------------------------ temperedness


@pytest.mark.parametrize("t", TYPES)
def test_classification_examples(t):
    r = datum(t).rank
    assert is_discrete_series(st(t))
    assert not is_tempered(triv(t))
    M0 = ps(t, (0,) * r)
    assert is_tempered(M0) and not is_discrete_series(M0)


def test_coroot_expansions():
    assert coroot_expansion(datum("A1"), (-1,)) == (F(-1, 2),)
    assert coroot_expansion(datum("A1"), (1,)) == (F(1, 2),)


@pytest.mark.parametrize("t", TYPES)
def test_theta_preserves_steinberg_weight_orbit(t):
    S = st(t)
    (g, _), = weights(S)
    assert theta_weight(S.datum, g) in central_character(S)
