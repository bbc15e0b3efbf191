"""Ext groups through the Koszul-type Hom-complex, and the checks built on it.

Degree ``i`` of the complex for ``(X, Y)`` is ``Hom_W(X ⊗ ∧^i V, Y)``.  A map
is stored as a ``dim Y x (C(n,i) dim X)`` matrix whose column ``I*dim X + a``
is the image of ``x_a ⊗ e_I``; ``I`` runs over increasing index tuples in
lexicographic order.  Every sign below comes from this one convention.

The complex has the differential

    (dη)(x ⊗ e_J) = Σ_j (-1)^{j+1} (ẽ_{J_j} η(x ⊗ e_{J∖J_j}) - η(ẽ_{J_j} x ⊗ e_{J∖J_j}))

and its homology is ``Ext^i_H(X, Y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm
from itertools import combinations
from typing import Sequence

from .algebra import (ClassFunction, HModule, dD, dual_bullet, dual_star, hom_space, iota,
                      is_isomorphic, theta, w_character)
from .constructions import parabolic_induction, restrict_to_parabolic
from .linalg import QMatrix
from .rootsys import RootDatumError, WeylGroup

__all__ = [
    "HomComplex", "build_complex", "ext_dims", "dual_differential_crosscheck",
    "wedge_basis", "wedge_power", "wedge_sign", "wedge_pairing_matrix", "DualityResult",
    "duality_pairing", "euler_poincare", "elliptic_pairing", "induced_character",
    "aubert_virtual_character", "IndResReport", "indres_complex", "coxeter_sign",
    "ext_symmetry_checks",
]


# ------------------------------------------------------------ exterior powers


def wedge_basis(n: int, i: int) -> list[tuple[int, ...]]:
    return list(combinations(range(n), i))


def wedge_sign(K: Sequence[int], L: Sequence[int]) -> int:
    """``det(e_K ∧ e_L)`` for increasing tuples K, L."""
    seq = list(K) + list(L)
    if len(set(seq)) != len(seq):
        return 0
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inv % 2 else 1


def wedge_power(A: QMatrix, i: int) -> QMatrix:
    """Matrix of ``∧^i A``: entry ``(I, J)`` is the minor ``det A[I, J]``."""
    n = A.nrows
    subs = wedge_basis(n, i)
    if i == 0:
        return QMatrix.identity(1)
    return QMatrix([[A.submatrix(I, J).det() for J in subs] for I in subs],
                   shape=(len(subs), len(subs)))


def wedge_pairing_matrix(n: int, i: int) -> QMatrix:
    """``<e_K, e_L>`` for ``K`` in ``∧^i``, ``L`` in ``∧^{n-i}``."""
    return QMatrix([[wedge_sign(K, L) for L in wedge_basis(n, n - i)] for K in wedge_basis(n, i)],
                   shape=(len(wedge_basis(n, i)), len(wedge_basis(n, n - i))))


# ------------------------------------------------------------- row spaces


class RowSpace:
    """A subspace given by its reduced echelon basis (primitive integer rows)."""

    def __init__(self, rows: list[tuple[int, ...]], pivots: list[int], ncols: int):
        self.rows = rows
        self.pivots = pivots
        self.ncols = ncols
        self.matrix = QMatrix(rows, shape=(len(rows), ncols))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def coordinates(self, M: QMatrix) -> QMatrix:
        """Coordinates of the rows of M; raises if a row is outside the space."""
        c = M.nrows
        if self.dim == 0:
            if not M.is_zero():
                raise AssertionError("vector outside the target space")
            return QMatrix.zeros(c, 0)
        sub = M.columns(self.pivots)
        scale = QMatrix([[Fraction(int(a == b), self.rows[a][self.pivots[a]])
                          for b in range(self.dim)] for a in range(self.dim)],
                        shape=(self.dim, self.dim))
        coords = sub @ scale
        if coords @ self.matrix != M:
            raise AssertionError("vector outside the target space")
        return coords


def _character_dim(X: HModule, Y: HModule, i: int) -> int:
    """``dim Hom_W(X ⊗ ∧^i V, Y)`` from characters."""
    W = X.W
    n = X.datum.ambient_dim
    wedge = ClassFunction.from_elements(W, lambda w: wedge_power(W.elements[w].matrix, i).trace())
    d = w_character(Y).inner(w_character(X) * wedge)
    if d.denominator != 1:
        raise AssertionError("non-integral character inner product")
    return int(d)


def equivariant_space(X: HModule, Y: HModule, i: int) -> RowSpace:
    """Basis of ``Hom_W(X ⊗ ∧^i V, Y)`` from the averaging projector.

    The projection of the elementary map ``E_{y,c}`` is
    ``Σ_w ρ_Y(w)[:, y] ⊗ T(w^{-1})[c, :]`` with ``T = ∧^i ⊗ ρ_X``; all maps with
    one ``y`` come out of a single product.  Candidates are added until the
    rank reaches the dimension predicted by characters.
    """
    W = X.W
    n = X.datum.ambient_dim
    dX, dY = X.dim, Y.dim
    m = len(wedge_basis(n, i)) * dX
    target = _character_dim(X, Y, i)
    if target == 0:
        return RowSpace([], [], dY * m)
    acts_X, acts_Y = X.act_w_all(), Y.act_w_all()
    wedges = [wedge_power(e.matrix, i) for e in W.elements]
    # rows: w, columns (c, b) of T(w^{-1})
    tk = [wedges[W.inv[w]].kron(acts_X[W.inv[w]]) for w in range(W.order)]
    tden = lcm(*(t.denominator for t in tk))
    tflat = QMatrix.from_numerators(
        [[x * (tden // t.denominator) for r in t.numerators for x in r] for t in tk],
        tden, W.order, m * m)
    rows: list[tuple[int, ...]] = []
    piv: list[int] = []
    for y in range(dY):
        ycol = QMatrix.from_columns([acts_Y[w].col(y) for w in range(W.order)], nrows=dY)
        Q = ycol @ tflat            # Q[a, c*m + b] = projected E_{y,c} at (a, b)
        num, den = Q.numerators, Q.denominator
        cand = [[num[a][c * m + b] for a in range(dY) for b in range(m)] for c in range(m)]
        cand = [r for r in cand if any(r)]
        if not cand:
            continue
        stacked = QMatrix.from_numerators([list(r) for r in rows] + cand, 1,
                                          len(rows) + len(cand), dY * m)
        rows, piv = stacked.row_basis()
        if len(rows) >= target:
            break
    if len(rows) != target:
        raise AssertionError(f"equivariant basis has rank {len(rows)}, characters say {target}")
    return RowSpace(rows, piv, dY * m)


# ---------------------------------------------------------- Koszul operators


def _apply_blocks(B: QMatrix, dY: int, dA: int, nin: int, nout: int, terms, L, R) -> QMatrix:
    """Apply a Koszul-type operator to every row of B.

    Each row of B is a ``dY x (nin*dA)`` map in block form.  Output block o is
    ``Σ sign * (L[k] @ blk_in - blk_in @ R[k])`` over ``(in_idx, k, sign)`` in
    ``terms[o]``.  Returns the outputs as rows.
    """
    c = B.nrows
    m_in, m_out = nin * dA, nout * dA
    num, den = B.numerators, B.denominator
    # every product below has a denominator dividing this one
    common = den
    for M in list(L) + list(R):
        common = lcm(common, den * M.denominator)
    out = [[0] * (dY * m_out) for _ in range(c)]
    cache: dict[int, tuple[QMatrix, QMatrix]] = {}

    def stacks(K):
        if K not in cache:
            # horizontal: dY x (c*dA); vertical: (c*dY) x dA
            H = QMatrix.from_numerators(
                [[num[e][a * m_in + K * dA + b] for e in range(c) for b in range(dA)]
                 for a in range(dY)], den, dY, c * dA)
            V = QMatrix.from_numerators(
                [[num[e][a * m_in + K * dA + b] for b in range(dA)]
                 for e in range(c) for a in range(dY)], den, c * dY, dA)
            cache[K] = (H, V)
        return cache[K]

    for o, lst in enumerate(terms):
        for K, k, sign in lst:
            H, V = stacks(K)
            lp, rp = L[k] @ H, V @ R[k]
            left, ls = lp.numerators, sign * (common // lp.denominator)
            right, rs = rp.numerators, sign * (common // rp.denominator)
            for e in range(c):
                row = out[e]
                for a in range(dY):
                    lrow = left[a]
                    rrow = right[e * dY + a]
                    base = a * m_out + o * dA
                    off = e * dA
                    for b in range(dA):
                        row[base + b] += ls * lrow[off + b] - rs * rrow[b]
    return QMatrix.from_numerators(out, common, c, dY * m_out)


def _hom_terms(n: int, i: int):
    """For ``∧^{i+1}`` block J: ``(index of J∖J_j, J_j, (-1)^{j+1})``."""
    src = {K: t for t, K in enumerate(wedge_basis(n, i))}
    out = []
    for J in wedge_basis(n, i + 1):
        out.append([(src[J[:p] + J[p + 1:]], J[p], -1 if p % 2 else 1) for p in range(len(J))])
    return out


def _tensor_terms(n: int, i: int):
    """Tensor side, degree i -> i+1: blocks are ``(∧^i V)^∨ = φ(∧^{n-i} V)``.

    Output block ``K'`` (size n-i-1) collects ``K = K' ∪ {k}`` with the sign of
    ``k``'s position in K.
    """
    src = {K: t for t, K in enumerate(wedge_basis(n, n - i))}
    out = []
    for Kp in wedge_basis(n, n - i - 1):
        lst = []
        for k in range(n):
            if k in Kp:
                continue
            K = tuple(sorted(Kp + (k,)))
            p = K.index(k)
            lst.append((src[K], k, -1 if p % 2 else 1))
        out.append(lst)
    return out


@lru_cache(maxsize=None)
def _psi_matrix(n: int, i: int, dA: int) -> QMatrix:
    """Signed permutation S with ``η = Z @ S`` (tensor form Z to Hom form η).

    Column ``(K, a)`` of Z (K of size n-i) goes to column ``(K^c, a)`` of η with
    sign ``det(e_K ∧ e_{K^c})``.
    """
    zs = wedge_basis(n, n - i)
    hs = {I: t for t, I in enumerate(wedge_basis(n, i))}
    m = len(zs) * dA
    rows = [[0] * m for _ in range(m)]
    for t, K in enumerate(zs):
        Kc = tuple(x for x in range(n) if x not in K)
        sgn = wedge_sign(K, Kc)
        for a in range(dA):
            rows[t * dA + a][hs[Kc] * dA + a] = sgn
    return QMatrix.from_numerators(rows, 1, m, m)


# ------------------------------------------------------------------ complex


class HomComplex:
    """The Hom-complex ``Hom_W(X ⊗ ∧^• V, Y)`` with bases and differentials."""

    def __init__(self, X: HModule, Y: HModule):
        if not X.datum.same_as(Y.datum):
            raise ValueError("modules over different root data")
        self.X, self.Y = X, Y
        self.n = n = X.datum.ambient_dim
        self.terms = [equivariant_space(X, Y, i) for i in range(n + 1)]
        self.D = [self._differential(i, X.tilde_basis(), Y.tilde_basis()) for i in range(n)]

    @property
    def term_dims(self) -> list[int]:
        return [t.dim for t in self.terms]

    def basis_map(self, i: int, k: int) -> QMatrix:
        dY = self.Y.dim
        row = self.terms[i].rows[k]
        m = len(row) // dY if dY else 0
        return QMatrix([row[a * m:(a + 1) * m] for a in range(dY)], shape=(dY, m))

    def _differential(self, i: int, TX, TY) -> QMatrix:
        src, dst = self.terms[i], self.terms[i + 1]
        if src.dim == 0 or dst.dim == 0:
            if src.dim and dst.dim == 0:
                pass
            return QMatrix.zeros(dst.dim, src.dim)
        n = self.n
        out = _apply_blocks(src.matrix, self.Y.dim, self.X.dim, len(wedge_basis(n, i)),
                            len(wedge_basis(n, i + 1)), _hom_terms(n, i), TY, TX)
        return dst.coordinates(out).T

    def raw_differentials(self) -> list[QMatrix]:
        """Differentials with ``ρ(e_j)`` in place of ``ρ(ẽ_j)``."""
        return [self._differential(i, list(self.X.gen_V), list(self.Y.gen_V))
                for i in range(self.n)]

    @cached_property
    def ranks(self) -> list[int]:
        return [d.rank() for d in self.D]

    def ext_dims(self) -> list[int]:
        out = []
        for i in range(self.n + 1):
            r_out = self.ranks[i] if i < self.n else 0
            r_in = self.ranks[i - 1] if i > 0 else 0
            out.append(self.terms[i].dim - r_out - r_in)
        return out

    def check_d_squared(self) -> bool:
        return all((self.D[i + 1] @ self.D[i]).is_zero() for i in range(self.n - 1))

    def homology_representatives(self, i: int) -> QMatrix:
        """Cycles (as coordinate columns) spanning a complement of the boundaries.

        Boundary columns come first, then a kernel basis; greedy column
        selection keeps the kernel vectors that are new.
        """
        dim = self.terms[i].dim
        K = self.D[i].nullspace() if i < self.n else QMatrix.identity(dim)
        if i > 0 and self.D[i - 1].ncols:
            img, _ = self.D[i - 1].column_basis()
        else:
            img = QMatrix.zeros(dim, 0)
        both = QMatrix.hstack([img, K], nrows=dim)
        _, cols = both.column_basis()
        keep = [c for c in cols if c >= img.ncols]
        return both.columns(keep)

    # tensor-side transport -----------------------------------------------
    def tensor_rows(self, i: int) -> QMatrix:
        """Basis of degree i as tensors ``Ψ^{-1}(η)`` (rows)."""
        S = _psi_matrix(self.n, i, self.X.dim)
        return self._reshape_apply(self.terms[i].matrix, S.T)

    def _reshape_apply(self, B: QMatrix, S: QMatrix) -> QMatrix:
        # right-multiply each dY x m block row by S
        dY = self.Y.dim
        c = B.nrows
        if c == 0 or dY == 0:
            return B
        m = B.ncols // dY
        V = QMatrix.from_numerators([list(B.numerators[e][a * m:(a + 1) * m])
                                     for e in range(c) for a in range(dY)], B.denominator, c * dY, m)
        Z = (V @ S)
        zn, zd = Z.numerators, Z.denominator
        return QMatrix.from_numerators([[x for a in range(dY) for x in zn[e * dY + a]]
                                        for e in range(c)], zd, c, dY * m)

    def tensor_differentials(self, slot: HModule) -> list[QMatrix]:
        """Matrices of the tensor-side operator ``D̄`` in the transported bases.

        ``slot`` is the module whose dual space holds the first tensor factor
        (the ``*``-slot): the action on that factor uses ``ρ_slot(ẽ)``.
        """
        n = self.n
        dA, dY = self.X.dim, self.Y.dim
        TY = self.Y.tilde_basis()
        R = [-(t.T) for t in slot.tilde_basis()]
        out = []
        for i in range(n):
            src, dst = self.terms[i], self.terms[i + 1]
            if src.dim == 0 or dst.dim == 0:
                out.append(QMatrix.zeros(dst.dim, src.dim))
                continue
            Z = self.tensor_rows(i)
            Zn = _apply_blocks(Z, dY, dA, len(wedge_basis(n, n - i)),
                               len(wedge_basis(n, n - i - 1)), _tensor_terms(n, i), TY, R)
            eta = self._reshape_apply(Zn, _psi_matrix(n, i + 1, dA))
            out.append(dst.coordinates(eta).T)
        return out


def build_complex(X: HModule, Y: HModule) -> HomComplex:
    return HomComplex(X, Y)


def ext_dims(X: HModule, Y: HModule, complex_: HomComplex | None = None) -> list[int]:
    return (complex_ or HomComplex(X, Y)).ext_dims()


def dual_differential_crosscheck(X: HModule, Y: HModule, complex_: HomComplex | None = None) -> bool:
    """Differentials from raw ``v`` and from ``ṽ`` coincide (raises otherwise)."""
    C = complex_ or HomComplex(X, Y)
    for i, (a, b) in enumerate(zip(C.D, C.raw_differentials())):
        if a != b:
            raise AssertionError(f"raw and tilde differentials differ in degree {i}")
    return True


# ------------------------------------------------------------------ duality


@dataclass
class DualityResult:
    degree: int
    ext_dim: int
    dual_ext_dim: int
    pairing: QMatrix
    rank: int
    adjoint_identity: bool
    transport_identity: bool

    @property
    def ok(self) -> bool:
        return (self.ext_dim == self.dual_ext_dim == self.rank
                and self.adjoint_identity and self.transport_identity)


def _tensor_gram(C1: HomComplex, C2: HomComplex, i: int) -> QMatrix:
    """Gram matrix of the product pairing between degree i of C1 and degree n-i of C2.

    ``<f⊗y⊗φ_{e_K}, x⊗g⊗φ_{e_L}> = f(x) g(y) det(e_K ∧ e_L)``.
    """
    n = C1.n
    dY, dA = C1.Y.dim, C1.X.dim
    Z1, Z2 = C1.tensor_rows(i), C2.tensor_rows(n - i)
    if Z1.nrows == 0 or Z2.nrows == 0:
        return QMatrix.zeros(Z1.nrows, Z2.nrows)
    Ks, Ls = wedge_basis(n, n - i), wedge_basis(n, i)
    lidx = {L: t for t, L in enumerate(Ls)}
    m1, m2 = len(Ks) * dA, len(Ls) * dA
    # column j of Z1 meets column match[j] of Z2 with sign sgn[j]
    match, sgn = [0] * (dY * m1), [0] * (dY * m1)
    for t, K in enumerate(Ks):
        Kc = tuple(x for x in range(n) if x not in K)
        s = wedge_sign(K, Kc)
        for b in range(dY):
            for a in range(dA):
                match[b * m1 + t * dA + a] = b * m2 + lidx[Kc] * dA + a
                sgn[b * m1 + t * dA + a] = s
    z2 = Z2.numerators
    Z2p = QMatrix.from_numerators([[s * r[j] for j, s in zip(match, sgn)] for r in z2],
                                  Z2.denominator, Z2.nrows, dY * m1)
    return Z1 @ Z2p.T


def duality_pairing(X: HModule, Y: HModule, i: int | None = None,
                    C1: HomComplex | None = None, C2: HomComplex | None = None) -> list[DualityResult]:
    """Pairing of ``Ext^i(X, Y)`` with ``Ext^{n-i}(X*, ι(Y)•)`` on homology.

    Both complexes are carried to tensor form; there the product pairing, the
    operators ``D̄`` and the adjointness identity
    ``<D¹_i ω1, ω2> = (-1)^{n-i} <ω1, D²_{n-i-1} ω2>`` are evaluated exactly.
    Returns one result per requested degree.
    """
    n = X.datum.ambient_dim
    C1 = C1 or HomComplex(X, Y)
    Xs = dual_star(X)
    C2 = C2 or HomComplex(Xs, dual_bullet(iota(Y)))
    # first tensor factor: X* for C1 and (X*)* = X for C2
    TD1 = C1.tensor_differentials(Xs)
    TD2 = C2.tensor_differentials(X)
    grams = [_tensor_gram(C1, C2, j) for j in range(n + 1)]
    transport = all(TD1[j] == C1.D[j] * (-1) ** (n - j + 1) for j in range(n)) and \
        all(TD2[j] == C2.D[j] * (-1) ** (n - j + 1) for j in range(n))
    adjoint = all((TD1[j].T @ grams[j + 1]) == (grams[j] @ TD2[n - j - 1]) * (-1) ** (n - j)
                  for j in range(n))
    e1, e2 = C1.ext_dims(), C2.ext_dims()
    degrees = range(n + 1) if i is None else [i]
    out = []
    for j in degrees:
        R1 = C1.homology_representatives(j)
        R2 = C2.homology_representatives(n - j)
        H = R1.T @ grams[j] @ R2
        out.append(DualityResult(j, e1[j], e2[n - j], H, H.rank(), adjoint, transport))
    return out


# ------------------------------------------------------ Euler-Poincaré etc.


def euler_poincare(X: HModule, Y: HModule, dims: Sequence[int] | None = None) -> int:
    dims = dims if dims is not None else ext_dims(X, Y)
    return sum((-1) ** i * d for i, d in enumerate(dims))


def elliptic_pairing(chi1: ClassFunction, chi2: ClassFunction) -> Fraction:
    """``(1/|W|) Σ_w χ1(w) χ2(w) det_V(1 - w)``, summed classwise."""
    W = chi1.W
    if chi2.W is not W:
        raise ValueError("class functions on different groups")
    d = W.det_one_minus()
    tot = Fraction(0)
    for c, members in enumerate(W.classes):
        tot += len(members) * chi1.values[c] * chi2.values[c] * d[members[0]]
    return tot / W.order


def induced_character(W: WeylGroup, J: Sequence[int], chi: ClassFunction) -> ClassFunction:
    """``Ind_{W_J}^W Res_{W_J} χ`` by the induced-character formula."""
    sub = set(W.parabolic(J).subgroup)
    size = len(sub)
    vals = []
    for members in W.classes:
        g = members[0]
        tot = Fraction(0)
        for h in range(W.order):
            x = W.conj(W.inv[h], g)
            if x in sub:
                tot += chi.at(x)
        vals.append(tot / size)
    return ClassFunction(W, vals)


def _subsets(r: int):
    for size in range(r + 1):
        yield from combinations(range(r), size)


def aubert_virtual_character(X: HModule) -> ClassFunction:
    """``Σ_J (-1)^{|J|} Ind_{W_J}^W Res_{W_J} χ_X``."""
    W = X.W
    chi = w_character(X)
    tot = ClassFunction(W, [0] * W.num_classes)
    for J in _subsets(X.datum.rank):
        term = induced_character(W, J, chi)
        tot = tot + term if len(J) % 2 == 0 else tot - term
    return tot


# ------------------------------------------------------------- Ind-Res complex


def coxeter_sign(r: int, J: Sequence[int], Jp: Sequence[int]) -> int:
    """``ε_J^{J'} = (-1)^{j+1}``, j the 1-based position in ``Π∖J`` of the added root."""
    rest = [a for a in range(r) if a not in J]
    (added,) = set(Jp) - set(J)
    return 1 if rest.index(added) % 2 == 0 else -1


@dataclass
class IndResReport:
    stage_dims: list[int]
    kernel_dim: int
    exact: list[bool]                 # exactness at C_0 .. C_m (surjective at the end)
    composites_zero: bool
    chi_in_kernel: bool
    chi_intertwines: bool
    kernel_isomorphic_to_D: bool
    euler_check: bool
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (all(self.exact) and self.composites_zero and self.chi_in_kernel
                and self.chi_intertwines and self.kernel_isomorphic_to_D and self.euler_check)


def _submodule(X: HModule, K: QMatrix, label: str) -> HModule:
    """Action restricted to the invariant subspace spanned by the columns of K."""
    L = K.solve_left_inverse()
    return HModule(X.datum, [L @ g @ K for g in X.gen_W], [L @ g @ K for g in X.gen_V], label)


def indres_complex(X: HModule) -> IndResReport:
    """Build ``0 -> ker π_0 -> C_0 -> ... -> C_{m-1} -> X -> 0`` and check it."""
    datum = X.datum
    if not datum.spans_V:
        raise RootDatumError("the Ind-Res complex is checked only when R spans V")
    W = X.W
    r = datum.rank
    levels = [list(combinations(range(r), i)) for i in range(r + 1)]
    mods = {}
    for lvl in levels:
        for J in lvl:
            if len(J) == r:
                mods[J] = X
            else:
                mods[J] = parabolic_induction(datum, J, restrict_to_parabolic(X, J),
                                              label=f"C_{list(J)}")
    dX = X.dim

    def block(J, Jp) -> QMatrix:
        # t_u ⊗ x  ->  ε t_{u'} ⊗ ρ(t_{w'}) x,  u = u' w'
        P, Pp = W.parabolic(J), W.parabolic(Jp)
        pos = {u: t for t, u in enumerate(Pp.reps)}
        acts = X.act_w_all()
        eps = coxeter_sign(r, J, Jp)
        rows = [[Fraction(0)] * (len(P.reps) * dX) for _ in range(len(Pp.reps) * dX)]
        for t, u in enumerate(P.reps):
            up, wp = Pp.factor[u]
            A = acts[wp]
            for a in range(dX):
                for b in range(dX):
                    if A[a, b]:
                        rows[pos[up] * dX + a][t * dX + b] += eps * A[a, b]
        return QMatrix(rows, shape=(len(Pp.reps) * dX, len(P.reps) * dX))

    pis = []
    for i in range(r):
        src, dst = levels[i], levels[i + 1]
        brows = []
        for Jp in dst:
            bl = []
            for J in src:
                if set(J) <= set(Jp):
                    bl.append(block(J, Jp))
                else:
                    bl.append(QMatrix.zeros(mods[Jp].dim, mods[J].dim))
            brows.append(QMatrix.hstack(bl))
        pis.append(QMatrix.vstack(brows))
    stage_dims = [sum(mods[J].dim for J in lvl) for lvl in levels]

    # π is an H-map: check against the block-diagonal actions
    def stage_action(lvl, which, k):
        mats = [getattr(mods[J], which)[k] for J in lvl]
        dims = [a.nrows for a in mats]
        rows = []
        for t, a in enumerate(mats):
            rows.append(QMatrix.hstack([a if s == t else QMatrix.zeros(dims[t], dims[s])
                                        for s in range(len(mats))]))
        return QMatrix.vstack(rows)

    equivariant = True
    for i in range(r):
        for which, count in (("gen_W", r), ("gen_V", datum.ambient_dim)):
            for k in range(count):
                if pis[i] @ stage_action(levels[i], which, k) != stage_action(levels[i + 1], which, k) @ pis[i]:
                    equivariant = False

    composites_zero = all((pis[i + 1] @ pis[i]).is_zero() for i in range(r - 1)) and equivariant
    ranks = [p.rank() for p in pis]
    exact = []
    for i in range(1, r):
        # im π_{i-1} = ker π_i at C_i
        exact.append(stage_dims[i] - ranks[i] == ranks[i - 1])
    exact.append(ranks[r - 1] == stage_dims[r] if r else True)   # onto X
    kernel_dim = stage_dims[0] - (ranks[0] if r else 0)

    # χ(x) = Σ_w (-1)^{l(w)} t_w ⊗ t_w^{-1} x inside C_∅ (basis t_w ⊗ x_b)
    C0 = mods[()]
    acts = X.act_w_all()
    chi_rows = [[Fraction(0)] * dX for _ in range(W.order * dX)]
    for w in range(W.order):
        s = W.sign(w)
        A = acts[W.inv[w]]
        for b in range(dX):
            for a in range(dX):
                if A[b, a]:
                    chi_rows[w * dX + b][a] += s * A[b, a]
    Chi = QMatrix(chi_rows, shape=(W.order * dX, dX))
    chi_in_kernel = (r == 0) or ((pis[0] @ Chi).is_zero() and Chi.rank() == kernel_dim)
    DX = dD(X)
    chi_intertwines = all(g @ Chi == Chi @ h for g, h in zip(C0.gen_W, DX.gen_W)) and \
        all(g @ Chi == Chi @ h for g, h in zip(C0.gen_V, DX.gen_V))
    K = pis[0].nullspace() if r else QMatrix.identity(C0.dim)
    kernel_mod = _submodule(C0, K, f"ker({X.label})")
    iso = is_isomorphic(kernel_mod, DX)
    # Σ_J (-1)^{|J|} |W/W_J| = 1 when R spans V
    euler = sum((-1) ** len(J) * len(W.parabolic(J).reps) for lvl in levels for J in lvl) == 1
    return IndResReport(stage_dims, kernel_dim, exact, composites_zero, chi_in_kernel,
                        chi_intertwines, iso, euler, {"ranks": ranks})


# -------------------------------------------------------------- symmetries


def ext_symmetry_checks(X: HModule, Y: HModule, cache: dict | None = None) -> dict[str, bool]:
    """Dimension-level Ext symmetries under the dualities."""
    cache = {} if cache is None else cache

    def E(A, B):
        key = (id(A), id(B))
        if key not in cache:
            cache[key] = (A, B, ext_dims(A, B))
        return cache[key][2]

    n = X.datum.ambient_dim
    Xs, Ys, Xb, Yb = dual_star(X), dual_star(Y), dual_bullet(X), dual_bullet(Y)
    e = E(X, Y)
    return {
        "star_swap": E(X, Ys) == E(Y, Xs),
        "bullet_swap": E(X, Yb) == E(Y, Xb),
        "theta_swap": E(X, theta(Y)) == E(theta(X), Y),
        "iota_swap": E(X, iota(Y)) == E(iota(X), Y),
        "duality": e == E(Xs, dual_bullet(iota(Y)))[::-1],
        "duality_bullet_star": e == E(Xb, dual_star(iota(Y)))[::-1],
        "top_vanishing": len(e) == n + 1,
        "ext0_is_hom": e[0] == len(hom_space(X, Y)),
    }
