"""Concrete modules and their weights.

Induced modules use the basis ``t_u ⊗ x_b`` (``u`` a minimal coset
representative in (length, word) order, ``b`` a basis index of the inducing
module), flattened as ``position(u) * dim X + b``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .algebra import HModule, InvalidModuleError, lincomb
from .linalg import QMatrix, to_scalar
from .rootsys import RootDatum, RootDatumError

__all__ = [
    "one_dim_module", "trivial_module", "steinberg_module", "principal_series",
    "parabolic_induction", "restrict_to_parabolic", "weight_from_simple_values",
    "weights", "central_characters", "central_character", "CentralCharacter",
    "MultipleCentralCharactersError", "NonSplitSpectrumError", "is_tempered",
    "is_discrete_series", "coroot_expansion", "charpoly", "rational_roots",
]

HALF = Fraction(1, 2)
Weight = tuple  # values γ(e_j) on the basis of V


class NonSplitSpectrumError(ValueError):
    def __init__(self, poly: Sequence[Fraction]):
        self.poly = tuple(poly)
        super().__init__("characteristic polynomial does not split over Q: " + _poly_str(self.poly))


class MultipleCentralCharactersError(ValueError):
    def __init__(self, orbits):
        self.orbits = orbits
        super().__init__(f"weights lie in {len(orbits)} distinct W-orbits")


# ----------------------------------------------------------- one-dim modules


def _solve_in_coroot_span(datum: RootDatum, values: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Covector γ in span of the simple coroots with ``γ(α_i) = values[i]``."""
    r = datum.rank
    if r == 0:
        return tuple(Fraction(0) for _ in range(datum.ambient_dim))
    C = QMatrix(datum.cartan, shape=(r, r))      # C[i][j] = α_j^∨(α_i)
    c = C.inverse() @ QMatrix.from_columns([list(values)], nrows=r)
    return tuple((c.T @ datum.coroot_matrix()).row(0))


def weight_from_simple_values(datum: RootDatum, values: Sequence) -> tuple[Fraction, ...]:
    """The weight with ``γ(α_i) = values[i]``; unique when R spans V, otherwise
    the solution lying in the span of the coroots."""
    values = [to_scalar(x) for x in values]
    if len(values) != datum.rank:
        raise ValueError(f"need {datum.rank} values, got {len(values)}")
    return _solve_in_coroot_span(datum, values)


def one_dim_module(datum: RootDatum, sign_pattern=1, label: str | None = None) -> HModule:
    """``t_{s_i} -> ε_i``, ``v -> γ(v)`` with ``γ(α_i) = ε_i k_i``.

    ``sign_pattern`` is ``+1``/``-1`` or one sign per simple root; it must be
    constant on W-orbits of simple roots to extend to a character of W.
    """
    r = datum.rank
    if isinstance(sign_pattern, int):
        eps = [sign_pattern] * r
    else:
        eps = list(sign_pattern)
    if len(eps) != r or any(e not in (1, -1) for e in eps):
        raise ValueError(f"sign pattern must be {r} entries from {{+1, -1}}")
    for i in range(r):
        for j in range(r):
            if datum.simple_orbit[i] == datum.simple_orbit[j] and eps[i] != eps[j]:
                raise ValueError(
                    f"sign pattern does not extend to a character of W: simple roots {i} and {j} "
                    "are conjugate but have different signs")
    gamma = weight_from_simple_values(datum, [eps[i] * datum.k_simple(i) for i in range(r)])
    if label is None:
        label = "triv" if all(e == 1 for e in eps) else ("St" if all(e == -1 for e in eps)
                                                          else "chi" + "".join("+" if e > 0 else "-" for e in eps))
    return HModule(datum, [QMatrix([[e]]) for e in eps], [QMatrix([[g]]) for g in gamma],
                   label).checked()


def trivial_module(datum: RootDatum) -> HModule:
    return one_dim_module(datum, 1, "triv")


def steinberg_module(datum: RootDatum) -> HModule:
    return one_dim_module(datum, -1, "St")


# ---------------------------------------------------------- push rules


def _reflect(datum: RootDatum, i: int, v):
    c = datum.pairing(v, datum.simple_coroots[i])
    return [x - c * y for x, y in zip(v, datum.simple_roots[i])]


def push_raw(datum: RootDatum, v, w: int):
    """Write ``v t_w = t_w w^{-1}(v) + Σ_h c_h t_h``.

    Uses ``v t_s = t_s s(v) + k_s <v, α_s^∨>`` along the reduced word of w.
    Returns ``(w^{-1}(v), {h: c_h})``.
    """
    W = datum.weyl_group()
    word = W.elements[w].word
    terms: dict[int, Fraction] = defaultdict(Fraction)
    state = [to_scalar(x) for x in v]
    p = 0
    for pos, s in enumerate(word):
        c = datum.k_simple(s) * datum.pairing(state, datum.simple_coroots[s])
        if c:
            terms[W.mul[p][W.from_word(word[pos + 1:])]] += c
        p = W._rmul[s][p]
        state = _reflect(datum, s, state)
    return state, {h: c for h, c in terms.items() if c}


def push_tilde(datum: RootDatum, v, w: int):
    """Same decomposition as :func:`push_raw`, via ``ṽ t_w = t_w (w^{-1}v)~``.

    ``v t_w = t_w w^{-1}(v) - ½ Σ_β k_β <w^{-1}v, β^∨> t_{w s_β}
    + ½ Σ_β k_β <v, β^∨> t_{s_β w}``.
    """
    W = datum.weyl_group()
    winv = W.elements[W.inv[w]].matrix
    n = datum.ambient_dim
    v = [to_scalar(x) for x in v]
    u = [sum((winv[r, c] * v[c] for c in range(n)), Fraction(0)) for r in range(n)]
    terms: dict[int, Fraction] = defaultdict(Fraction)
    for beta in datum.positive_roots:
        sb = W.reflection_index(beta)
        a = beta.k * datum.pairing(u, beta.coroot)
        if a:
            terms[W.mul[w][sb]] -= HALF * a
        b = beta.k * datum.pairing(v, beta.coroot)
        if b:
            terms[W.mul[sb][w]] += HALF * b
    return u, {h: c for h, c in terms.items() if c}


# ----------------------------------------------------------- principal series


def principal_series(datum: RootDatum, gamma: Sequence, label: str | None = None) -> HModule:
    """``M(γ) = H ⊗_{S(V)} C_γ`` on the basis ``t_w ⊗ 1`` in W index order.

    ``gamma`` gives the values ``γ(e_j)`` on the basis of V.
    """
    gamma = tuple(to_scalar(x) for x in gamma)
    n = datum.ambient_dim
    if len(gamma) != n:
        raise ValueError(f"weight needs {n} values, got {len(gamma)}")
    W = datum.weyl_group()
    N = W.order
    gen_W = []
    for s in W.simple:
        rows = [[0] * N for _ in range(N)]
        for w in range(N):
            rows[W.mul[s][w]][w] = 1
        gen_W.append(QMatrix(rows, shape=(N, N)))
    gen_V = []
    for j in range(n):
        v = datum.basis_vector(j)
        rows = [[Fraction(0)] * N for _ in range(N)]
        for w in range(N):
            u, terms = push_raw(datum, v, w)
            rows[w][w] += sum((g * x for g, x in zip(gamma, u)), Fraction(0))
            for h, c in terms.items():
                rows[h][w] += c
        gen_V.append(QMatrix(rows, shape=(N, N)))
    if label is None:
        label = "M(" + ",".join(_fmt(x) for x in gamma) + ")"
    return HModule(datum, gen_W, gen_V, label).checked()


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ----------------------------------------------------------- parabolic data


def restrict_to_parabolic(X: HModule, J: Iterable[int]) -> HModule:
    """``Res_{H_J} X``: same matrices over the sub-datum for J."""
    J = X.datum.check_subset(J)
    sub = X.datum.parabolic(J)
    return HModule(sub, [X.gen_W[j] for j in J], X.gen_V, f"Res_{list(J)}({X.label})")


def parabolic_induction(datum: RootDatum, J: Iterable[int], XJ: HModule,
                        label: str | None = None, crosscheck: bool = True) -> HModule:
    """``H ⊗_{H_J} X_J`` on the basis ``t_u ⊗ x_b``, ``u`` in ``W^J``.

    The V-action uses :func:`push_tilde`; with ``crosscheck`` the raw push
    rule is evaluated too and the two matrices must agree.
    """
    J = datum.check_subset(J)
    if not XJ.datum.same_as(datum.parabolic(J)):
        raise ValueError("inducing module is not over the parabolic subalgebra H_J")
    from .algebra import validate_module
    rep = validate_module(XJ)
    if not rep.ok:
        raise InvalidModuleError(rep)
    W = datum.weyl_group()
    P = W.parabolic(J)
    reps = P.reps
    pos = {u: i for i, u in enumerate(reps)}
    m = XJ.dim
    N = len(reps) * m
    WJ = XJ.W
    acts_J = XJ.act_w_all()
    sub_act = {x: acts_J[WJ.index(W.elements[x].matrix)] for x in P.subgroup}

    def add_bracket(rows, h, coeff, col_u):
        # coeff * [t_h ⊗ x_b] for all b, written into columns of u-block col_u
        u2, x = P.factor[h]
        blk = sub_act[x]
        r0, c0 = pos[u2] * m, pos[col_u] * m
        for a in range(m):
            for b in range(m):
                e = blk[a, b]
                if e:
                    rows[r0 + a][c0 + b] += coeff * e

    gen_W = []
    for s in W.simple:
        rows = [[Fraction(0)] * N for _ in range(N)]
        for u in reps:
            add_bracket(rows, W.mul[s][u], Fraction(1), u)
        gen_W.append(QMatrix(rows, shape=(N, N)))

    def v_matrix(v, push):
        rows = [[Fraction(0)] * N for _ in range(N)]
        for u in reps:
            uv, terms = push(datum, v, u)
            blk = XJ.act_v(uv)
            r0 = pos[u] * m
            for a in range(m):
                for b in range(m):
                    e = blk[a, b]
                    if e:
                        rows[r0 + a][r0 + b] += e
            for h, c in terms.items():
                add_bracket(rows, h, c, u)
        return QMatrix(rows, shape=(N, N))

    gen_V = []
    for j in range(datum.ambient_dim):
        v = datum.basis_vector(j)
        a = v_matrix(v, push_tilde)
        if crosscheck and a != v_matrix(v, push_raw):
            raise AssertionError("raw and tilde push rules disagree on the induced V-action")
        gen_V.append(a)
    if label is None:
        label = f"Ind_{list(J)}({XJ.label})"
    return HModule(datum, gen_W, gen_V, label).checked()


# --------------------------------------------------------------- polynomials
# coefficient lists are lowest degree first


def charpoly(A: QMatrix) -> list[Fraction]:
    """Characteristic polynomial ``det(x - A)`` by Faddeev-LeVerrier."""
    n = A.nrows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = QMatrix.zeros(n, n)
    ident = QMatrix.identity(n)
    for k in range(1, n + 1):
        M = A @ M + ident * coeffs[n - k + 1]
        coeffs[n - k] = -(A @ M).trace() / k
    return coeffs


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        d = len(a) - len(b)
        q[d] = c
        for i, x in enumerate(b):
            a[i + d] -= c * x
        a = _trim(a)
    return q, a


def _poly_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    return [x / a[-1] for x in a] if a else a


def _poly_eval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_str(p) -> str:
    terms = []
    for d in range(len(p) - 1, -1, -1):
        c = p[d]
        if c:
            terms.append(f"({_fmt(c)})x^{d}" if d else f"({_fmt(c)})")
    return " + ".join(terms) or "0"


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Sequence[Fraction]) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicity; raises if ``p`` does not split over Q."""
    p = _trim([to_scalar(x) for x in p])
    deg = len(p) - 1
    # roots of the square-free part, by the rational root theorem
    deriv = [i * c for i, c in enumerate(p)][1:]
    g = _poly_gcd(p, deriv) if deriv else [Fraction(1)]
    sqf = _poly_divmod(p, g)[0]
    cands: list[Fraction] = []
    q = _trim(sqf)
    if q and q[0] == 0:
        cands.append(Fraction(0))
        q = q[1:]
    if len(q) > 1:
        L = 1
        for c in q:
            L = lcm(L, c.denominator)
        ints = [int(c * L) for c in q]
        for a in _divisors(ints[0]):
            for b in _divisors(ints[-1]):
                for sgn in (1, -1):
                    x = Fraction(sgn * a, b)
                    if x not in cands and _poly_eval(q, x) == 0:
                        cands.append(x)
    out = []
    total = 0
    for x in sorted(cands):
        mult = 0
        cur = p
        while True:
            qq, rem = _poly_divmod(cur, [-x, Fraction(1)])
            if _trim(rem):
                break
            cur = qq
            mult += 1
        out.append((x, mult))
        total += mult
    if total != deg:
        raise NonSplitSpectrumError(p)
    return out


# -------------------------------------------------------------------- weights


def weights(X: HModule) -> list[tuple[tuple[Fraction, ...], int]]:
    """Joint generalized eigenvalues of the V-action with multiplicities.

    Generalized eigenspaces of ``ρ(e_1)`` are split further by ``ρ(e_2)``
    restricted to them, and so on.  Sorted by weight.
    """
    n = X.datum.ambient_dim
    pieces: list[tuple[QMatrix, tuple]] = [(QMatrix.identity(X.dim), ())]
    for j in range(n):
        A = X.gen_V[j]
        nxt = []
        for B, partial in pieces:
            sub = B.solve_left_inverse() @ A @ B
            d = sub.nrows
            for lam, mult in rational_roots(charpoly(sub)):
                N = ((sub - QMatrix.scalar(d, lam)) ** mult).nullspace()
                if N.ncols != mult:
                    raise AssertionError("generalized eigenspace dimension mismatch")
                nxt.append((B @ N, partial + (lam,)))
        pieces = nxt
    out = [(w, B.ncols) for B, w in pieces]
    out.sort()
    return out


@dataclass(frozen=True)
class CentralCharacter:
    """A W-orbit in ``V^∨``, members sorted."""

    members: tuple[tuple[Fraction, ...], ...]

    def __contains__(self, gamma) -> bool:
        return tuple(gamma) in self.members

    def __str__(self) -> str:
        return "{" + ", ".join("(" + ",".join(_fmt(x) for x in g) + ")" for g in self.members) + "}"


def weight_orbit(datum: RootDatum, gamma: Sequence) -> CentralCharacter:
    W = datum.weyl_group()
    gamma = tuple(to_scalar(x) for x in gamma)
    return CentralCharacter(tuple(sorted({W.act_on_weight(i, gamma) for i in range(W.order)})))


def central_characters(X: HModule) -> list[CentralCharacter]:
    """Distinct W-orbits of the weights of X, in order of first weight."""
    out: list[CentralCharacter] = []
    for g, _ in weights(X):
        if not any(g in o for o in out):
            out.append(weight_orbit(X.datum, g))
    return out


def central_character(X: HModule) -> CentralCharacter:
    orbits = central_characters(X)
    if len(orbits) != 1:
        raise MultipleCentralCharactersError(orbits)
    return orbits[0]


def theta_weight(datum: RootDatum, gamma: Sequence) -> tuple[Fraction, ...]:
    """``θ(γ) = γ∘θ`` with ``θ(v) = -w0(v)`` on V."""
    W = datum.weyl_group()
    w0m = W.elements[W.longest].matrix
    n = datum.ambient_dim
    return tuple(-sum((to_scalar(gamma[r]) * w0m[r, c] for r in range(n)), Fraction(0))
                 for c in range(n))


# ----------------------------------------------------------------- tempered


def coroot_expansion(datum: RootDatum, gamma: Sequence) -> tuple[Fraction, ...]:
    """Coefficients ``a`` with ``γ = Σ a_i α_i^∨``; needs R to span V."""
    if not datum.spans_V:
        raise RootDatumError("coroot expansion needs the roots to span V")
    g = QMatrix([[to_scalar(x) for x in gamma]], shape=(1, datum.ambient_dim))
    return tuple((g @ datum.coroot_matrix().inverse()).row(0))


def is_tempered(X: HModule) -> bool:
    if not X.datum.spans_V:
        raise RootDatumError("temperedness is only defined here when R spans V")
    return all(a <= 0 for g, _ in weights(X) for a in coroot_expansion(X.datum, g))


def is_discrete_series(X: HModule) -> bool:
    if not X.datum.spans_V:
        raise RootDatumError("discrete series is only defined here when R spans V")
    return all(a < 0 for g, _ in weights(X) for a in coroot_expansion(X.datum, g))
