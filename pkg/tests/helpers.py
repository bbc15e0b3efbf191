"""Shared builders and independent oracles for the test-suite."""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import sympy

from heckext.battery import BATTERY_DATA, Workspace, battery_modules
from heckext.constructions import principal_series, steinberg_module, trivial_module
from heckext.rootsys import build_root_datum


@lru_cache(maxsize=None)
def datum(type_label, params=1):
    return build_root_datum(type_label, params)


@lru_cache(maxsize=None)
def triv(type_label, params=1):
    return trivial_module(datum(type_label, params))


@lru_cache(maxsize=None)
def st(type_label, params=1):
    return steinberg_module(datum(type_label, params))


@lru_cache(maxsize=None)
def ps(type_label, gamma, params=1):
    return principal_series(datum(type_label, params), gamma)


@lru_cache(maxsize=None)
def battery(type_label, params=1):
    for t, k, g in BATTERY_DATA:
        if t == type_label and k == params:
            return tuple(battery_modules(datum(t, k), g))
    raise KeyError((type_label, params))


BATTERY_KEYS = [(t, k) for t, k, _ in BATTERY_DATA]
WORKSPACE = Workspace()


def sym(M):
    """QMatrix -> sympy Matrix."""
    return sympy.Matrix(M.nrows, M.ncols, [sympy.Rational(x.numerator, x.denominator)
                                           for x in M.flat()])


def oracle_rank(rows):
    if not rows or not rows[0]:
        return 0
    return sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator)
                          for x in r] for r in rows]).rank()


def koszul_ext_oracle(Y, gamma):
    """``dim Ext^i_{S(V)}(C_γ, Y)`` from the plain Koszul complex, via sympy.

    Terms ``Hom(∧^i V, Y)``; ``d(η)(e_J) = Σ_p (-1)^p (ρ_Y(e_{j_p}) - γ_{j_p}) η(e_{J∖j_p})``.
    By Frobenius reciprocity this is ``Ext_H(M(γ), Y)``.
    """
    n, dY = Y.datum.ambient_dim, Y.dim
    ops = [sym(g) - sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * sympy.eye(dY)
           for g, c in zip(Y.gen_V, gamma)]
    wedges = [list(combinations(range(n), i)) for i in range(n + 1)]
    ranks = []
    for i in range(n):
        src = {J: t for t, J in enumerate(wedges[i])}
        D = sympy.zeros(dY * len(wedges[i + 1]), dY * len(wedges[i]))
        for o, J in enumerate(wedges[i + 1]):
            for p, j in enumerate(J):
                K = J[:p] + J[p + 1:]
                D[o * dY:(o + 1) * dY, src[K] * dY:(src[K] + 1) * dY] += (-1) ** p * ops[j]
        ranks.append(D.rank())
    dims = [dY * len(w) for w in wedges]
    return [dims[i] - (ranks[i] if i < n else 0) - (ranks[i - 1] if i else 0)
            for i in range(n + 1)]
