"""Root data, parameter functions and finite Weyl groups.

Conventions used everywhere in the package:

* ``V`` has a fixed ordered basis ``e_1..e_n``; vectors are column vectors
  and covectors (elements of ``V^∨``) are row vectors, so ``<v, a^∨>`` is a
  row-times-column product.
* In the default ``"span"`` realization ``e_i = α_i``.  The ``"gl"``
  realization (type A only) uses ``V = Q^{r+1}`` with ``α_i = e_i - e_{i+1}``.
* ``cartan[i][j] = <α_i, α_j^∨>``.
* A reduced word ``(i_1, ..., i_l)`` stands for ``s_{i_1} ... s_{i_l}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import QMatrix, to_scalar

__all__ = [
    "RootDatumError", "GroupTooLargeError", "PositiveRoot", "RootDatum",
    "WeylGroupElement", "WeylGroup", "build_root_datum", "enumerate_weyl_group",
    "elliptic_classes", "minimal_coset_reps", "SUPPORTED_TYPES", "KNOWN_ORDERS",
]


class RootDatumError(ValueError):
    pass


class GroupTooLargeError(RuntimeError):
    pass


_CARTAN = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    # alpha_1 long, alpha_2 short
    "B2": [[2, -2], [-1, 2]],
    # alpha_1, alpha_2 long, alpha_3 short
    "B3": [[2, -1, 0], [-1, 2, -2], [0, -1, 2]],
    # alpha_1 short, alpha_2 long
    "G2": [[2, -1], [-3, 2]],
}
# dihedral types with a rational Cartan pairing
_DIHEDRAL = {"I2(3)": "A2", "I2(4)": "B2", "I2(6)": "G2"}

SUPPORTED_TYPES = tuple(_CARTAN) + tuple(_DIHEDRAL)
KNOWN_ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "G2": 12,
                "I2(3)": 6, "I2(4)": 8, "I2(6)": 12}


def _vec(xs) -> tuple[Fraction, ...]:
    return tuple(to_scalar(x) for x in xs)


def _dot(row, col) -> Fraction:
    return sum((a * b for a, b in zip(row, col)), Fraction(0))


@dataclass(frozen=True)
class PositiveRoot:
    vector: tuple[Fraction, ...]      # root in V
    coroot: tuple[Fraction, ...]      # covector in V^∨
    orbit: int                        # W-orbit id (same ids as the simple roots)
    k: Fraction                       # parameter value k_α
    coefficients: tuple[Fraction, ...]  # expansion in the simple roots

    @property
    def height(self) -> Fraction:
        return sum(self.coefficients, Fraction(0))


@dataclass(eq=False)
class RootDatum:
    """A based root datum together with an orbit-constant parameter function."""

    type_label: str
    ambient_dim: int
    simple_roots: tuple[tuple[Fraction, ...], ...]
    simple_coroots: tuple[tuple[Fraction, ...], ...]
    parameters: tuple[Fraction, ...]          # one value per orbit id
    simple_orbit: tuple[int, ...]             # orbit id of each simple root
    positive_roots: tuple[PositiveRoot, ...]
    cartan: tuple[tuple[Fraction, ...], ...]
    _weyl: "WeylGroup | None" = field(default=None, repr=False)

    # ---------------------------------------------------------------- basics
    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def n(self) -> int:
        return self.ambient_dim

    @property
    def spans_V(self) -> bool:
        return self.rank == self.ambient_dim

    def k_simple(self, i: int) -> Fraction:
        return self.parameters[self.simple_orbit[i]]

    def pairing(self, v: Sequence, coroot: Sequence) -> Fraction:
        """``<v, coroot>`` for a vector and a covector."""
        return _dot(coroot, v)

    def simple_reflection_matrix(self, i: int) -> QMatrix:
        a, ac = self.simple_roots[i], self.simple_coroots[i]
        n = self.ambient_dim
        return QMatrix([[int(r == c) - a[r] * ac[c] for c in range(n)] for r in range(n)],
                       shape=(n, n))

    def reflection_matrix(self, root: PositiveRoot) -> QMatrix:
        a, ac = root.vector, root.coroot
        n = self.ambient_dim
        return QMatrix([[int(r == c) - a[r] * ac[c] for c in range(n)] for r in range(n)],
                       shape=(n, n))

    def basis_vector(self, i: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(j == i)) for j in range(self.ambient_dim))

    def weyl_group(self, max_order: int = 10000) -> "WeylGroup":
        if self._weyl is None:
            self._weyl = WeylGroup(self, max_order=max_order)
        return self._weyl

    def parabolic(self, J: Iterable[int]) -> "RootDatum":
        """The sub-datum ``(R_J, V, R_J^∨, V^∨, J)`` with inherited parameters."""
        J = self.check_subset(J)
        label = f"{self.type_label}[{','.join(str(j) for j in J)}]"
        ks = [self.k_simple(j) for j in J]
        return RootDatum.from_simple_data(label, [self.simple_roots[j] for j in J],
                                          [self.simple_coroots[j] for j in J], ks,
                                          ambient_dim=self.ambient_dim)

    def check_subset(self, J: Iterable[int]) -> tuple[int, ...]:
        J = tuple(sorted(set(J)))
        for j in J:
            if not isinstance(j, int) or not 0 <= j < self.rank:
                raise RootDatumError(f"invalid simple root index {j!r} (rank {self.rank})")
        return J

    def coroot_matrix(self) -> QMatrix:
        """Rows are the simple coroots."""
        return QMatrix(self.simple_coroots, shape=(self.rank, self.ambient_dim))

    def root_matrix(self) -> QMatrix:
        """Columns are the simple roots."""
        return QMatrix.from_columns(self.simple_roots, nrows=self.ambient_dim)

    def same_as(self, other: "RootDatum") -> bool:
        return (self.ambient_dim == other.ambient_dim
                and self.simple_roots == other.simple_roots
                and self.simple_coroots == other.simple_coroots
                and [self.k_simple(i) for i in range(self.rank)]
                == [other.k_simple(i) for i in range(other.rank)])

    # ----------------------------------------------------------- construction
    @classmethod
    def from_simple_data(cls, type_label: str, simple_roots, simple_coroots, parameters,
                         ambient_dim: int | None = None) -> "RootDatum":
        """Build a datum from explicit simple roots/coroots.

        ``parameters`` is a scalar, one value per orbit of simple roots, or one
        value per simple root (which must then be orbit-constant).
        """
        roots = tuple(_vec(a) for a in simple_roots)
        coroots = tuple(_vec(a) for a in simple_coroots)
        r = len(roots)
        if len(coroots) != r:
            raise RootDatumError("number of simple roots and coroots differ")
        if ambient_dim is None:
            if not roots:
                raise RootDatumError("ambient_dim is required when there are no simple roots")
            ambient_dim = len(roots[0])
        n = ambient_dim
        if n <= 0:
            raise RootDatumError("ambient_dim must be positive")
        if any(len(a) != n for a in roots + coroots):
            raise RootDatumError("root/coroot length differs from ambient_dim")
        cartan = tuple(tuple(_dot(coroots[j], roots[i]) for j in range(r)) for i in range(r))
        for i in range(r):
            if cartan[i][i] != 2:
                raise RootDatumError(f"<alpha_{i}, alpha_{i}^v> = {cartan[i][i]}, expected 2")
        if r and QMatrix.from_columns(roots, nrows=n).rank() != r:
            raise RootDatumError("simple roots are linearly dependent")

        # orbits of simple roots: joined by edges with m_ij odd, i.e. a_ij a_ji = 1
        parent = list(range(r))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in combinations(range(r), 2):
            if cartan[i][j] * cartan[j][i] == 1:
                parent[find(j)] = find(i)
        reps = sorted({find(i) for i in range(r)})
        orbit_ids = tuple(reps.index(find(i)) for i in range(r))
        norb = len(reps)

        params = _resolve_parameters(parameters, r, norb, orbit_ids)

        obj = cls(type_label=type_label, ambient_dim=n, simple_roots=roots,
                  simple_coroots=coroots, parameters=params, simple_orbit=orbit_ids,
                  positive_roots=(), cartan=cartan)
        obj.positive_roots = _close_roots(obj)
        return obj


def _resolve_parameters(values, r, norb, orbit_ids) -> tuple[Fraction, ...]:
    if isinstance(values, (int, Fraction, str)):
        return tuple(to_scalar(values) for _ in range(norb))
    vals = [to_scalar(x) for x in values]
    if len(vals) == norb:
        return tuple(vals)
    if len(vals) == r:
        out: list[Fraction | None] = [None] * norb
        for i, x in enumerate(vals):
            o = orbit_ids[i]
            if out[o] is None:
                out[o] = x
            elif out[o] != x:
                raise RootDatumError(
                    f"parameter is not constant on the W-orbit of simple root {i}: {out[o]} vs {x}")
        return tuple(out)  # type: ignore[arg-type]
    raise RootDatumError(
        f"expected {norb} parameter value(s) (one per orbit) or {r} (one per simple root), "
        f"got {len(vals)}")


def _close_roots(datum: RootDatum, limit: int = 5000) -> tuple[PositiveRoot, ...]:
    """All positive roots with their coroots, by closure under simple reflections."""
    r, n = datum.rank, datum.ambient_dim
    if r == 0:
        return ()
    # coordinates with respect to the simple roots: solve via a left inverse
    left = datum.root_matrix().solve_left_inverse()
    seen: dict[tuple, tuple] = {}
    frontier = []
    for i in range(r):
        key = datum.simple_roots[i]
        seen[key] = (datum.simple_coroots[i], datum.simple_orbit[i])
        frontier.append(key)
    while frontier:
        nxt = []
        for a in frontier:
            ac, orb = seen[a]
            for i in range(r):
                ai, aci = datum.simple_roots[i], datum.simple_coroots[i]
                c = _dot(aci, a)
                b = tuple(x - c * y for x, y in zip(a, ai))
                # s_i acts on covectors by f -> f - f(alpha_i) alpha_i^v
                d = _dot(ac, ai)
                bc = tuple(x - d * y for x, y in zip(ac, aci))
                if b not in seen:
                    seen[b] = (bc, orb)
                    nxt.append(b)
                    if len(seen) > limit:
                        raise GroupTooLargeError("root system closure exceeded the size limit")
                elif seen[b][0] != bc:
                    raise RootDatumError("coroot assignment is inconsistent; not a root datum")
        frontier = nxt
    out = []
    for a, (ac, orb) in seen.items():
        coeff = tuple((left @ QMatrix.from_columns([a], nrows=n)).col(0))
        if all(x >= 0 for x in coeff):
            out.append(PositiveRoot(a, ac, orb, datum.parameters[orb], coeff))
        elif not all(x <= 0 for x in coeff):
            raise RootDatumError("root with mixed-sign coefficients; not a root system")
        if _dot(ac, a) != 2:
            raise RootDatumError("<alpha, alpha^v> != 2 for a non-simple root")
    out.sort(key=lambda p: (p.height, tuple(-x for x in p.coefficients)))
    return tuple(out)


def build_root_datum(type_label: str, parameter_values=1, realization: str = "span") -> RootDatum:
    """Standard root datum of a supported type.

    ``realization="span"`` takes ``V = span(R)`` with ``e_i = α_i``;
    ``realization="gl"`` (type A only) uses ``V = Q^{r+1}``.
    """
    base = _DIHEDRAL.get(type_label, type_label)
    if base not in _CARTAN:
        raise RootDatumError(
            f"unsupported type {type_label!r}; supported: {', '.join(SUPPORTED_TYPES)}")
    C = _CARTAN[base]
    r = len(C)
    if realization == "span":
        roots = [[int(i == j) for j in range(r)] for i in range(r)]
        # alpha_j^v(e_i) = <alpha_i, alpha_j^v> = C[i][j]
        coroots = [[C[i][j] for i in range(r)] for j in range(r)]
    elif realization == "gl":
        if not base.startswith("A"):
            raise RootDatumError("the 'gl' realization is only available for type A")
        roots = [[int(c == i) - int(c == i + 1) for c in range(r + 1)] for i in range(r)]
        coroots = [list(a) for a in roots]
    else:
        raise RootDatumError(f"unknown realization {realization!r}")
    return RootDatum.from_simple_data(type_label, roots, coroots, parameter_values)


# --------------------------------------------------------------------------
# Weyl group


@dataclass(frozen=True)
class WeylGroupElement:
    index: int
    matrix: QMatrix
    word: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def sign(self) -> int:
        return -1 if len(self.word) % 2 else 1


class WeylGroup:
    """The finite reflection group of a root datum, fully enumerated.

    Elements are indexed ``0..|W|-1`` in (length, reduced word) order, so 0 is
    the identity and ``1..r`` are the simple reflections.
    """

    def __init__(self, datum: RootDatum, max_order: int = 10000):
        self.datum = datum
        r, n = datum.rank, datum.ambient_dim
        gens = [datum.simple_reflection_matrix(i) for i in range(r)]
        ident = QMatrix.identity(n)
        words: dict[QMatrix, tuple[int, ...]] = {ident: ()}
        level = [ident]
        while level:
            nxt: list[QMatrix] = []
            # i outer, elements in word order: first hit gives the lex-min word
            for i in range(r):
                for w in level:
                    x = gens[i] @ w
                    if x not in words:
                        words[x] = (i,) + words[w]
                        nxt.append(x)
                        if len(words) > max_order:
                            raise GroupTooLargeError(
                                f"Weyl group order exceeds the cap {max_order}")
            nxt.sort(key=lambda m: words[m])
            level = nxt
        ordered = sorted(words.items(), key=lambda kv: (len(kv[1]), kv[1]))
        self.elements = [WeylGroupElement(idx, m, wd) for idx, (m, wd) in enumerate(ordered)]
        self._index = {e.matrix: e.index for e in self.elements}
        N = len(self.elements)
        self.order = N
        self.simple = [self._index[g] for g in gens]

        # right multiplication by simple reflections, then the full table
        rmul = [[self._index[e.matrix @ g] for e in self.elements] for g in gens]
        self._rmul = rmul
        mul = [[0] * N for _ in range(N)]
        for a in range(N):
            row = mul[a]
            for b, e in enumerate(self.elements):
                x = a
                for s in e.word:
                    x = rmul[s][x]
                row[b] = x
        self.mul = mul
        self.inv = [row.index(0) for row in mul]
        self.longest = max(range(N), key=lambda i: self.elements[i].length)

        self.classes: list[list[int]] = []
        self.class_of = [-1] * N
        for i in range(N):
            if self.class_of[i] >= 0:
                continue
            cls = sorted({mul[mul[g][i]][self.inv[g]] for g in range(N)})
            cid = len(self.classes)
            for j in cls:
                self.class_of[j] = cid
            self.classes.append(cls)
        self._parabolic_cache: dict = {}
        self._det1: list[Fraction] | None = None

    # --------------------------------------------------------------- queries
    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> WeylGroupElement:
        return self.elements[i]

    def index(self, matrix: QMatrix) -> int:
        return self._index[matrix]

    def from_word(self, word: Iterable[int]) -> int:
        x = 0
        for s in word:
            x = self._rmul[s][x]
        return x

    def length(self, i: int) -> int:
        return len(self.elements[i].word)

    def sign(self, i: int) -> int:
        return self.elements[i].sign

    def conj(self, g: int, x: int) -> int:
        """``g x g^{-1}``."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def reflection_index(self, root: PositiveRoot) -> int:
        return self._index[self.datum.reflection_matrix(root)]

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def class_representatives(self) -> list[int]:
        return [c[0] for c in self.classes]

    def det_one_minus(self) -> list[Fraction]:
        """``det_V(1 - w)`` per element."""
        if self._det1 is None:
            n = self.datum.ambient_dim
            ident = QMatrix.identity(n)
            self._det1 = [(ident - e.matrix).det() for e in self.elements]
        return self._det1

    def act_on_weight(self, i: int, gamma: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """``(w·γ)(v) = γ(w^{-1} v)`` for a covector γ given by its values on e_j."""
        m = self.elements[self.inv[i]].matrix
        n = self.datum.ambient_dim
        return tuple(sum((gamma[r] * m[r, c] for r in range(n)), Fraction(0)) for c in range(n))

    # -------------------------------------------------------------- parabolic
    def parabolic(self, J: Iterable[int]) -> "ParabolicData":
        J = self.datum.check_subset(J)
        if J not in self._parabolic_cache:
            self._parabolic_cache[J] = ParabolicData(self, J)
        return self._parabolic_cache[J]


class ParabolicData:
    """``W_J``, its longest element, and the factorization ``w = u·w_J``."""

    def __init__(self, W: WeylGroup, J: tuple[int, ...]):
        self.J = J
        Js = set(J)
        self.subgroup = [e.index for e in W.elements if Js.issuperset(e.word)]
        self.longest = max(self.subgroup, key=W.length)
        self.reps = [e.index for e in W.elements
                     if all(W.length(W._rmul[j][e.index]) > e.length for j in J)]
        # factorization table: w -> (u, w_J)
        self.factor: dict[int, tuple[int, int]] = {}
        for u in self.reps:
            for x in self.subgroup:
                w = W.mul[u][x]
                if w in self.factor:
                    raise AssertionError("coset factorization is not unique")
                if W.length(w) != W.length(u) + W.length(x):
                    raise AssertionError("coset factorization is not length-additive")
                self.factor[w] = (u, x)
        if len(self.factor) != W.order:
            raise AssertionError("coset factorization does not cover W")


def enumerate_weyl_group(datum: RootDatum, max_order: int = 10000) -> WeylGroup:
    return datum.weyl_group(max_order=max_order)


def elliptic_classes(W: WeylGroup, datum: RootDatum | None = None) -> list[int]:
    """Class ids with ``det_V(1 - w) != 0``."""
    d = W.det_one_minus()
    return [c for c, members in enumerate(W.classes) if d[members[0]] != 0]


def minimal_coset_reps(W: WeylGroup, J: Iterable[int]) -> list[WeylGroupElement]:
    return [W.elements[i] for i in W.parabolic(J).reps]
