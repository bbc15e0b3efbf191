from fractions import Fraction

import pytest

from heckext.algebra import (ClassFunction, HModule, InconclusiveError, InvalidModuleError,
                             act_w, dD, direct_sum, dual_bullet, dual_star, hom_space, iota,
                             is_irreducible, is_isomorphic, theta, tilde_matrix,
                             validate_module, w_character)
from heckext.linalg import QMatrix

from helpers import BATTERY_KEYS, battery, datum, ps, st, triv

ALL_BATTERY = [X for key in BATTERY_KEYS for X in battery(*key)]


def ids(mods):
    return [f"{X.datum.type_label}:{X.label}" for X in mods]


# ------------------------------------------------------------ validation


def test_steinberg_a1_validates():
    X = HModule(datum("A1"), [QMatrix([[-1]])], [QMatrix([[-1]])], "St")
    assert validate_module(X).ok


def test_corrupted_steinberg_fails_cross_relation():
    X = HModule(datum("A1"), [QMatrix([[-1]])], [QMatrix([[1]])], "bad")
    rep = validate_module(X)
    assert rep.failed_families() == ["cross relation"]
    with pytest.raises(InvalidModuleError):
        X.checked()


def test_principal_series_a1_validates():
    assert validate_module(ps("A1", (3,))).ok


def test_corrupted_w_relation_named():
    M = ps("A2", (3, 5))
    bad = HModule(M.datum, [M.gen_W[0], M.gen_W[0] * 2], M.gen_V)
    assert "W-relations" in validate_module(bad).failed_families()


def test_braid_relation_failure_named():
    # both t_s squares are 1 but (t_0 t_1)^3 != 1
    d = datum("A2")
    t0 = QMatrix([[0, 1], [1, 0]])
    t1 = QMatrix([[1, 0], [0, -1]])
    bad = HModule(d, [t0, t1], [QMatrix.zeros(2, 2)] * 2)
    rep = validate_module(bad)
    assert "W-relations" in rep.failed_families()
    assert "(t_0 t_1)^3" in rep.summary()


def test_non_commuting_v_action_named():
    M = ps("A2", (3, 5))
    bad = HModule(M.datum, M.gen_W, [M.gen_V[0], M.gen_V[0] + M.gen_W[0]])
    assert "V-commutativity" in validate_module(bad).failed_families()


def test_shape_failure_skips_other_families():
    bad = HModule(datum("A1"), [QMatrix([[1]])], [QMatrix.zeros(2, 2)])
    rep = validate_module(bad)
    assert rep.failed_families()[0] == "shape"
    assert not rep.ok


@pytest.mark.parametrize("X", ALL_BATTERY, ids=ids(ALL_BATTERY))
def test_battery_modules_validate(X):
    assert validate_module(X).ok


# ------------------------------------------------------------ act_w, tilde


def test_act_w_examples():
    X = st("A1")
    W = X.W
    assert act_w(X, 0) == QMatrix.identity(1)
    assert act_w(X, 1) == QMatrix([[-1]])
    T = triv("A2")
    assert act_w(T, T.W.longest) == QMatrix.identity(1)


def test_act_w_is_independent_of_reduced_word():
    M = ps("A2", (3, 5))
    W = M.W
    # s0 s1 s0 = s1 s0 s1 = w0
    a = M.gen_W[0] @ M.gen_W[1] @ M.gen_W[0]
    b = M.gen_W[1] @ M.gen_W[0] @ M.gen_W[1]
    assert a == b == act_w(M, W.longest)


def test_tilde_examples():
    for X in (st("A1"), triv("A1")):
        assert tilde_matrix(X, [1]).is_zero()
    M = ps("A1", (3,))
    assert tilde_matrix(M, [1]) == QMatrix([[3, 1], [-1, -3]])


@pytest.mark.parametrize("X", ALL_BATTERY, ids=ids(ALL_BATTERY))
def test_tilde_commutes_with_group(X):
    # t_w ṽ = (w v)~ t_w on simple reflections and a basis of V
    d = X.datum
    for i in range(d.rank):
        s = d.simple_reflection_matrix(i)
        for j in range(d.n):
            v = d.basis_vector(j)
            sv = [sum((s[r, c] * v[c] for c in range(d.n)), Fraction(0)) for r in range(d.n)]
            assert X.gen_W[i] @ X.tilde(v) == X.tilde(sv) @ X.gen_W[i]


@pytest.mark.parametrize("X", ALL_BATTERY, ids=ids(ALL_BATTERY))
def test_tilde_under_dualities(X):
    d = X.datum
    W = X.W
    w0m = W.elements[W.longest].matrix
    tX, tI, tT = X.tilde_basis(), iota(X).tilde_basis(), theta(X).tilde_basis()
    tS, tB = dual_star(X).tilde_basis(), dual_bullet(X).tilde_basis()
    for j in range(d.n):
        assert tI[j] == -tX[j]
        assert tS[j] == -(tX[j].T)
        assert tB[j] == tX[j].T
        # on θ(X), ṽ acts as θ(v)~ acts on X
        thv = [-w0m[r, j] for r in range(d.n)]
        assert tT[j] == X.tilde(thv)


# ------------------------------------------------------------ dualities


@pytest.mark.parametrize("X", ALL_BATTERY, ids=ids(ALL_BATTERY))
def test_involutions_return_the_input(X):
    for op in (iota, theta, dual_star, dual_bullet):
        assert op(op(X)).same_matrices(X)


@pytest.mark.parametrize("X", ALL_BATTERY, ids=ids(ALL_BATTERY))
def test_duals_validate_and_keep_dimension(X):
    for op in (iota, theta, dual_star, dual_bullet, dD):
        Y = op(X)
        assert Y.dim == X.dim
        assert validate_module(Y).ok


def test_dual_examples_a1():
    T, S = triv("A1"), st("A1")
    assert is_isomorphic(dual_star(T), T)
    assert is_isomorphic(dual_star(S), S)
    assert is_isomorphic(dual_bullet(T), T)
    assert is_isomorphic(iota(T), S)
    assert theta(T).same_matrices(T)
    assert is_isomorphic(dD(T), S)


@pytest.mark.parametrize("key", BATTERY_KEYS, ids=[f"{t}-{k}" for t, k in BATTERY_KEYS])
def test_star_is_bullet_of_theta(key):
    for X in battery(*key)[:4]:
        assert is_isomorphic(dual_star(X), dual_bullet(theta(X)))


@pytest.mark.parametrize("key", BATTERY_KEYS, ids=[f"{t}-{k}" for t, k in BATTERY_KEYS])
def test_D_is_iota_theta(key):
    for X in battery(*key):
        assert is_isomorphic(dD(X), iota(theta(X)))


# ------------------------------------------------------------ characters


def test_character_examples():
    T = triv("A2")
    assert w_character(T).values == (1, 1, 1)
    assert w_character(ps("A1", (3,))).values == (2, 0)
    assert w_character(st("A2")) == ClassFunction.sign(T.W)


@pytest.mark.parametrize("X", ALL_BATTERY, ids=ids(ALL_BATTERY))
def test_character_identities(X):
    chi = w_character(X)
    assert w_character(iota(X)) == ClassFunction.sign(X.W) * chi
    assert w_character(theta(X)) == chi
    assert w_character(dual_star(X)) == chi


def test_regular_character_of_principal_series():
    for t in ("A2", "B2", "G2"):
        M = ps(t, (3, 5))
        assert w_character(M) == ClassFunction.regular(M.W)


def test_class_function_inner_product_orthonormal_for_linear_characters():
    W = datum("B2").weyl_group()
    one, sgn = ClassFunction.trivial(W), ClassFunction.sign(W)
    assert one.inner(one) == sgn.inner(sgn) == 1
    assert one.inner(sgn) == 0


def test_class_function_wrong_length():
    W = datum("A2").weyl_group()
    with pytest.raises(ValueError):
        ClassFunction(W, [1, 2])


# ------------------------------------------------------------ hom / iso


def test_hom_space_examples():
    assert len(hom_space(st("A1"), st("A1"))) == 1
    assert len(hom_space(triv("A1"), st("A1"))) == 0
    assert len(hom_space(ps("A1", (3,)), ps("A1", (3,)))) == 1


def test_hom_space_elements_intertwine():
    M = ps("A2", (3, 5))
    X = dD(M)
    for f in hom_space(M, X) + hom_space(X, M):
        src, dst = (M, X) if f.ncols == M.dim and f.nrows == X.dim else (X, M)
        for a, b in zip(dst.gen_W + dst.gen_V, src.gen_W + src.gen_V):
            assert a @ f == f @ b


def test_is_isomorphic_examples():
    S, T = st("A1"), triv("A1")
    assert is_isomorphic(S, S)
    assert not is_isomorphic(T, S)
    assert is_isomorphic(iota(T), S)


def test_isomorphism_search_uses_combinations():
    # Hom(St+triv, triv+St) has a singular basis; the sum is invertible
    S, T = st("A1"), triv("A1")
    X, Y = direct_sum(S, T), direct_sum(T, S)
    assert is_isomorphic(X, Y)
    with pytest.raises(InconclusiveError):
        is_isomorphic(X, Y, max_candidates=1)


def test_non_isomorphic_with_equal_characters():
    M = ps("A1", (3,))
    N = ps("A1", (5,))
    assert not is_isomorphic(M, N)


def test_irreducibility():
    assert is_irreducible(st("G2"))
    assert is_irreducible(ps("G2", (3, 5)))
    assert is_irreducible(ps("A2", (0, 0)))
    # γ(α) = k: the principal series has a one-dimensional quotient
    assert not is_irreducible(ps("A1", (1,)))
    assert not is_irreducible(ps("G2", (1, 0)))
    assert not is_irreducible(direct_sum(st("A1"), triv("A1")))
