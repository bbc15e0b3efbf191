"""Modules over the graded affine Hecke algebra.

A module is given by matrices for the simple reflections ``t_{s_i}`` and for
the basis vectors ``e_j`` of ``V``.  The defining relations are

* the ``t_s`` satisfy the Coxeter relations of ``W``,
* the ``e_j`` commute,
* ``t_s v - s(v) t_s = k_s <v, α_s^∨>``.

This module also holds the dualities ``θ``, ``*``, ``•``, ``ι`` and ``𝔻``,
W-characters (:class:`ClassFunction`) and intertwiner spaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Sequence

from .linalg import QMatrix, to_scalar
from .rootsys import RootDatum, WeylGroup

__all__ = [
    "HModule", "InvalidModuleError", "InconclusiveError", "ValidationReport",
    "ClassFunction", "validate_module", "act_w", "tilde_matrix", "dual_star",
    "dual_bullet", "iota", "theta", "dD", "w_character", "hom_space",
    "is_isomorphic", "is_irreducible", "generated_submodule", "direct_sum", "lincomb",
]

HALF = Fraction(1, 2)


class InvalidModuleError(ValueError):
    def __init__(self, report: "ValidationReport"):
        super().__init__(report.summary())
        self.report = report


class InconclusiveError(RuntimeError):
    pass


def lincomb(coeffs: Sequence[Fraction], mats: Sequence[QMatrix], shape) -> QMatrix:
    out = QMatrix.zeros(*shape)
    for c, m in zip(coeffs, mats):
        if c:
            out = out + m * c
    return out


# ---------------------------------------------------------------- modules


class HModule:
    """A finite-dimensional module, given on generators."""

    def __init__(self, datum: RootDatum, gen_W: Sequence[QMatrix], gen_V: Sequence[QMatrix],
                 label: str = "X"):
        self.datum = datum
        self.gen_W = tuple(gen_W)
        self.gen_V = tuple(gen_V)
        self.label = label
        self.dim = self.gen_V[0].nrows if self.gen_V else (self.gen_W[0].nrows if self.gen_W else 0)
        self._act_w: list[QMatrix] | None = None
        self._tilde_basis: list[QMatrix] | None = None

    def __repr__(self) -> str:
        return f"HModule({self.label!r}, {self.datum.type_label}, dim={self.dim})"

    @property
    def W(self) -> WeylGroup:
        return self.datum.weyl_group()

    def relabel(self, label: str) -> "HModule":
        return HModule(self.datum, self.gen_W, self.gen_V, label)

    def same_matrices(self, other: "HModule") -> bool:
        return self.gen_W == other.gen_W and self.gen_V == other.gen_V

    def checked(self) -> "HModule":
        rep = validate_module(self)
        if not rep.ok:
            raise InvalidModuleError(rep)
        return self

    # ------------------------------------------------------------- actions
    def act_w_all(self) -> list[QMatrix]:
        """``ρ(t_w)`` for every element of W, by index."""
        if self._act_w is None:
            W = self.W
            mats: list[QMatrix] = [QMatrix.identity(self.dim)]
            for e in W.elements[1:]:
                prefix = W.from_word(e.word[:-1])
                mats.append(mats[prefix] @ self.gen_W[e.word[-1]])
            self._act_w = mats
        return self._act_w

    def act_v(self, v: Sequence) -> QMatrix:
        v = [to_scalar(x) for x in v]
        return lincomb(v, self.gen_V, (self.dim, self.dim))

    def tilde(self, v: Sequence) -> QMatrix:
        """Matrix of ``ṽ = v - ½ Σ_{β>0} k_β <v, β^∨> t_{s_β}``."""
        v = [to_scalar(x) for x in v]
        if self._tilde_basis is not None:
            return lincomb(v, self._tilde_basis, (self.dim, self.dim))
        return self._tilde(v)

    def _tilde(self, v) -> QMatrix:
        W = self.W
        acts = self.act_w_all()
        out = self.act_v(v)
        for beta in self.datum.positive_roots:
            c = beta.k * self.datum.pairing(v, beta.coroot)
            if c:
                out = out - acts[W.reflection_index(beta)] * (HALF * c)
        return out

    def tilde_basis(self) -> list[QMatrix]:
        """``ρ(ẽ_j)`` for the basis vectors of V."""
        if self._tilde_basis is None:
            self._tilde_basis = [self._tilde(self.datum.basis_vector(j))
                                 for j in range(self.datum.ambient_dim)]
        return self._tilde_basis


def act_w(X: HModule, w) -> QMatrix:
    """``ρ(t_w)`` for an element (or element index) of W."""
    idx = w if isinstance(w, int) else w.index
    return X.act_w_all()[idx]


def tilde_matrix(X: HModule, v: Sequence) -> QMatrix:
    return X.tilde(v)


# ------------------------------------------------------------- validation


@dataclass
class ValidationReport:
    entries: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(p for _, p, _ in self.entries)

    def failed_families(self) -> list[str]:
        return [f for f, p, _ in self.entries if not p]

    def add(self, family: str, passed: bool, detail: str = "") -> None:
        self.entries.append((family, passed, detail))

    def summary(self) -> str:
        return "; ".join(f"{f}: {'pass' if p else 'FAIL ' + d}" for f, p, d in self.entries)


FAMILIES = ("shape", "W-relations", "V-commutativity", "cross relation")


def validate_module(X: HModule) -> ValidationReport:
    """Check every defining relation family; failures name the first violation."""
    rep = ValidationReport()
    d = X.datum
    r, n, m = d.rank, d.ambient_dim, X.dim
    bad = ""
    if len(X.gen_W) != r:
        bad = f"expected {r} t_s matrices, got {len(X.gen_W)}"
    elif len(X.gen_V) != n:
        bad = f"expected {n} V matrices, got {len(X.gen_V)}"
    else:
        for name, mats in (("t", X.gen_W), ("e", X.gen_V)):
            for i, a in enumerate(mats):
                if a.shape != (m, m):
                    bad = f"{name}_{i} has shape {a.shape}, expected {(m, m)}"
                    break
            if bad:
                break
    rep.add("shape", not bad, bad)
    if bad:
        for fam in FAMILIES[1:]:
            rep.add(fam, False, "skipped: shape check failed")
        return rep

    # Coxeter presentation: s_i^2 = 1, (s_i s_j)^{m_ij} = 1
    W = d.weyl_group()
    ident = QMatrix.identity(m)
    bad = ""
    for i in range(r):
        if X.gen_W[i] @ X.gen_W[i] != ident:
            bad = f"t_{i}^2 != 1"
            break
    if not bad:
        for i in range(r):
            for j in range(i + 1, r):
                x = W.mul[W.simple[i]][W.simple[j]]
                mij, y = 1, x
                while y != 0:
                    y = W.mul[y][x]
                    mij += 1
                if (X.gen_W[i] @ X.gen_W[j]) ** mij != ident:
                    bad = f"(t_{i} t_{j})^{mij} != 1"
                    break
            if bad:
                break
    rep.add("W-relations", not bad, bad)

    bad = ""
    for i in range(n):
        for j in range(i + 1, n):
            if X.gen_V[i] @ X.gen_V[j] != X.gen_V[j] @ X.gen_V[i]:
                bad = f"e_{i} e_{j} != e_{j} e_{i}"
                break
        if bad:
            break
    rep.add("V-commutativity", not bad, bad)

    bad = ""
    for i in range(r):
        t = X.gen_W[i]
        a, ac = d.simple_roots[i], d.simple_coroots[i]
        for j in range(n):
            v = d.basis_vector(j)
            c = d.pairing(v, ac)
            sv = [x - c * y for x, y in zip(v, a)]
            lhs = t @ X.gen_V[j] - X.act_v(sv) @ t
            if lhs != QMatrix.scalar(m, d.k_simple(i) * c):
                bad = f"t_{i} e_{j} - s_{i}(e_{j}) t_{i} != k<e_{j}, alpha_{i}^v>"
                break
        if bad:
            break
    rep.add("cross relation", not bad, bad)
    return rep


# ---------------------------------------------------------------- dualities


def iota(X: HModule) -> HModule:
    """Twist by ``v -> -v``, ``t_s -> -t_s``."""
    return HModule(X.datum, [-a for a in X.gen_W], [-a for a in X.gen_V], f"iota({X.label})")


def _w0_data(X: HModule):
    W = X.W
    w0 = W.longest
    w0m = W.elements[w0].matrix
    # w0 s_i w0 = s_{sigma(i)}
    sigma = [W.simple.index(W.conj(w0, s)) for s in W.simple]
    return w0, w0m, sigma


def _theta_v(X: HModule) -> list[QMatrix]:
    """``ρ(θ(e_j))`` with ``θ(v) = -w0(v)``."""
    _, w0m, _ = _w0_data(X)
    n = X.datum.ambient_dim
    return [X.act_v([-w0m[i, j] for i in range(n)]) for j in range(n)]


def theta(X: HModule) -> HModule:
    _, _, sigma = _w0_data(X)
    gw = [X.gen_W[sigma[i]] for i in range(X.datum.rank)]
    return HModule(X.datum, gw, _theta_v(X), f"theta({X.label})")


def dual_star(X: HModule) -> HModule:
    """Contragredient for ``v* = t_{w0} θ(v) t_{w0}^{-1}``, ``t_w* = t_w^{-1}``."""
    w0, _, _ = _w0_data(X)
    a = X.act_w_all()[w0]
    ainv = X.act_w_all()[X.W.inv[w0]]
    gv = [(a @ tv @ ainv).T for tv in _theta_v(X)]
    return HModule(X.datum, [g.T for g in X.gen_W], gv, f"star({X.label})")


def dual_bullet(X: HModule) -> HModule:
    """Contragredient for ``v• = v``, ``t_w• = t_w^{-1}``."""
    return HModule(X.datum, [g.T for g in X.gen_W], [g.T for g in X.gen_V],
                   f"bullet({X.label})")


def dD(X: HModule) -> HModule:
    """``𝔻(X) = ι(X•)*``."""
    return dual_star(iota(dual_bullet(X))).relabel(f"D({X.label})")


def direct_sum(X: HModule, Y: HModule, label: str | None = None) -> HModule:
    if not X.datum.same_as(Y.datum):
        raise ValueError("direct sum of modules over different root data")
    z1 = QMatrix.zeros(X.dim, Y.dim)
    z2 = QMatrix.zeros(Y.dim, X.dim)

    def blk(a, b):
        return QMatrix.vstack([QMatrix.hstack([a, z1]), QMatrix.hstack([z2, b])])

    return HModule(X.datum, [blk(a, b) for a, b in zip(X.gen_W, Y.gen_W)],
                   [blk(a, b) for a, b in zip(X.gen_V, Y.gen_V)],
                   label or f"{X.label}+{Y.label}")


# ----------------------------------------------------------- class functions


class ClassFunction:
    """Exact values on the conjugacy classes of W."""

    __slots__ = ("W", "values")

    def __init__(self, W: WeylGroup, values: Sequence):
        if len(values) != W.num_classes:
            raise ValueError(f"need {W.num_classes} class values, got {len(values)}")
        self.W = W
        self.values = tuple(to_scalar(x) for x in values)

    @classmethod
    def from_elements(cls, W: WeylGroup, f) -> "ClassFunction":
        return cls(W, [f(c[0]) for c in W.classes])

    @classmethod
    def trivial(cls, W: WeylGroup) -> "ClassFunction":
        return cls(W, [1] * W.num_classes)

    @classmethod
    def sign(cls, W: WeylGroup) -> "ClassFunction":
        return cls.from_elements(W, W.sign)

    @classmethod
    def regular(cls, W: WeylGroup) -> "ClassFunction":
        return cls.from_elements(W, lambda i: W.order if i == 0 else 0)

    def at(self, w: int) -> Fraction:
        return self.values[self.W.class_of[w]]

    def _same(self, other):
        if not isinstance(other, ClassFunction) or other.W is not self.W:
            raise TypeError("class functions on different groups")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.W is other.W and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __add__(self, other):
        self._same(other)
        return ClassFunction(self.W, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._same(other)
        return ClassFunction(self.W, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return ClassFunction(self.W, [-a for a in self.values])

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._same(other)
            return ClassFunction(self.W, [a * b for a, b in zip(self.values, other.values)])
        c = to_scalar(other)
        return ClassFunction(self.W, [a * c for a in self.values])

    __rmul__ = __mul__

    def inner(self, other: "ClassFunction") -> Fraction:
        """``(1/|W|) Σ_w χ1(w) χ2(w^{-1})``."""
        self._same(other)
        W = self.W
        tot = Fraction(0)
        for c, members in enumerate(W.classes):
            tot += len(members) * self.values[c] * other.at(W.inv[members[0]])
        return tot / W.order

    def __repr__(self) -> str:
        return f"ClassFunction({[str(x) for x in self.values]})"


def w_character(X: HModule) -> ClassFunction:
    """Traces of ``ρ(t_w)`` per class; every class member is checked."""
    W = X.W
    acts = X.act_w_all()
    vals = []
    for members in W.classes:
        t = acts[members[0]].trace()
        for j in members[1:]:
            if acts[j].trace() != t:
                raise InvalidModuleError(ValidationReport(
                    [("W-relations", False, f"trace not constant on class of element {members[0]}")]))
        vals.append(t)
    return ClassFunction(W, vals)


# ------------------------------------------------------------ intertwiners


def _commutant_constraint(A: QMatrix, B: QMatrix) -> QMatrix:
    """Matrix of ``M -> A M - M B`` on row-major ``vec(M)``."""
    return A.kron(QMatrix.identity(B.nrows)) - QMatrix.identity(A.nrows).kron(B.T)


def _unvec(col: Sequence[Fraction], m: int, n: int) -> QMatrix:
    return QMatrix([col[i * n:(i + 1) * n] for i in range(m)], shape=(m, n))


def hom_space(X: HModule, Y: HModule) -> list[QMatrix]:
    """Basis of ``Hom_H(X, Y)`` as ``dim Y x dim X`` matrices.

    The generators are imposed one at a time; each step restricts the current
    solution space to the kernel of the next constraint.
    """
    if not X.datum.same_as(Y.datum):
        raise ValueError("modules over different root data")
    m, n = Y.dim, X.dim
    basis = QMatrix.identity(m * n)
    for A, B in list(zip(Y.gen_W, X.gen_W)) + list(zip(Y.gen_V, X.gen_V)):
        if basis.ncols == 0:
            break
        K = (_commutant_constraint(A, B) @ basis).nullspace()
        basis = basis @ K
    if basis.ncols:
        basis = basis.T.rref()[0].T
    return [_unvec(basis.col(j), m, n) for j in range(basis.ncols)]


def _coefficient_grid(size: int):
    vals = [0]
    k = 1
    while len(vals) < size:
        vals.append(k)
        if len(vals) < size:
            vals.append(-k)
        k += 1
    return vals


def is_isomorphic(X: HModule, Y: HModule, max_candidates: int = 200000) -> bool:
    """Decide ``X ≅ Y`` by searching ``Hom_H(X, Y)`` for an invertible element.

    After the basis itself, combinations with coefficients from a fixed set of
    ``dim + 1`` integers are tried.  ``det`` of a generic combination is a
    polynomial of degree ``dim`` in the coefficients, so this grid finds an
    invertible element whenever one exists.  :class:`InconclusiveError` is
    raised if the grid is larger than ``max_candidates``.
    """
    if X.dim != Y.dim:
        return False
    if X.dim == 0:
        return True
    if w_character(X) != w_character(Y):
        return False
    basis = hom_space(X, Y)
    if not basis:
        return False
    for b in basis:
        if b.det() != 0:
            return True
    if len(basis) == 1:
        return False
    grid = _coefficient_grid(X.dim + 1)
    if len(grid) ** len(basis) > max_candidates:
        raise InconclusiveError(
            f"hom space of dimension {len(basis)} needs {len(grid)}^{len(basis)} candidates")
    shape = (Y.dim, X.dim)
    for coeffs in product(grid, repeat=len(basis)):
        if not any(coeffs):
            continue
        if lincomb([Fraction(c) for c in coeffs], basis, shape).det() != 0:
            return True
    return False


def generated_submodule(X: HModule, vectors: QMatrix) -> QMatrix:
    """Column basis of the submodule generated by the columns of ``vectors``."""
    gens = list(X.gen_W) + list(X.gen_V)
    B = vectors.column_basis()[0]
    while True:
        grown = QMatrix.hstack([B] + [g @ B for g in gens], nrows=X.dim)
        nb = grown.column_basis()[0]
        if nb.ncols == B.ncols:
            return B
        B = nb


def _burnside(X: HModule) -> bool:
    d = X.dim
    gens = list(X.gen_W) + list(X.gen_V)
    basis = [QMatrix.identity(d)]
    rank = 1
    while rank < d * d:
        cand = basis + [g @ b for b in basis for g in gens]
        den = 1
        for c in cand:
            den = den * c.denominator // gcd(den, c.denominator)
        rows = [[x * (den // c.denominator) for r in c.numerators for x in r] for c in cand]
        red, _ = QMatrix.from_numerators(rows, 1, len(rows), d * d).row_basis()
        if len(red) == rank:
            break
        rank = len(red)
        basis = [QMatrix.from_numerators([list(r[a * d:(a + 1) * d]) for a in range(d)], 1, d, d)
                 for r in red]
    return rank == d * d


def is_irreducible(X: HModule) -> bool:
    """Absolute irreducibility.

    A nonzero submodule contains a joint eigenvector of the V-action.  When
    every joint eigenspace is a line it is enough to check that each of those
    eigenvectors generates X.  Otherwise (or if the V-spectrum does not split
    over Q) fall back to Burnside: the matrices must span ``M_d(Q)``.
    """
    d = X.dim
    if d == 0:
        return False
    from .constructions import NonSplitSpectrumError, weights
    try:
        wts = weights(X)
    except NonSplitSpectrumError:
        return _burnside(X)
    lines = []
    for gamma, _ in wts:
        K = QMatrix.vstack([g - QMatrix.scalar(d, c) for g, c in zip(X.gen_V, gamma)],
                           ncols=d).nullspace()
        if K.ncols != 1:
            return _burnside(X)
        lines.append(K)
    return all(generated_submodule(X, K).ncols == d for K in lines)
