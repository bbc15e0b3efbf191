"""The standard verification battery.

Per root datum: the trivial and Steinberg modules, a regular principal series
``M(γ)``, ``M(0)``, and every single-step dual of those (ι, θ, *, •, 𝔻),
deduplicated by exact matrix equality.  :class:`Workspace` caches complexes and
Ext profiles so the checks over all ordered pairs share work.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import (ClassFunction, HModule, dD, dual_bullet, dual_star, hom_space, iota,
                      is_irreducible, is_isomorphic, theta, validate_module, w_character)
from .constructions import (central_characters, is_discrete_series, is_tempered,
                            principal_series, steinberg_module, theta_weight, trivial_module,
                            weights)
from .homology import (HomComplex, aubert_virtual_character, duality_pairing, elliptic_pairing,
                       euler_poincare)
from .rootsys import RootDatum, build_root_datum

__all__ = ["BATTERY_DATA", "DUAL_OPS", "battery_datum", "battery_modules", "module_key",
           "Workspace", "PairReport", "ModuleReport", "battery_scenario_text"]

# (type, parameters, simple-root values of the regular weight)
BATTERY_DATA: list[tuple[str, object, tuple[int, ...]]] = [
    ("A1", 1, (3,)),
    ("A2", 1, (3, 5)),
    ("B2", 1, (3, 5)),
    ("G2", 1, (3, 5)),
    ("B2", (1, 2), (3, 5)),
]

DUAL_OPS: dict[str, Callable[[HModule], HModule]] = {
    "iota": iota,
    "theta": theta,
    "star": dual_star,
    "bullet": dual_bullet,
    "D": dD,
}


def battery_datum(type_label: str, params=1) -> RootDatum:
    return build_root_datum(type_label, params)


def module_key(X: HModule) -> tuple:
    d = X.datum
    return (d.type_label, d.simple_roots, d.simple_coroots, d.parameters,
            tuple(X.gen_W), tuple(X.gen_V))


def battery_modules(datum: RootDatum, gamma: Sequence, composites: bool = True) -> list[HModule]:
    """Base modules then their single duals, dropping exact repeats."""
    base = [trivial_module(datum), steinberg_module(datum), principal_series(datum, gamma),
            principal_series(datum, [0] * datum.ambient_dim)]
    out, seen = [], set()

    def add(X):
        k = module_key(X)
        if k not in seen:
            seen.add(k)
            out.append(X)

    for X in base:
        add(X)
    if composites:
        for X in base:
            for op in DUAL_OPS.values():
                add(op(X))
    return out


@dataclass
class PairReport:
    x: str
    y: str
    outputs: dict
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


@dataclass
class ModuleReport:
    label: str
    outputs: dict
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


class Workspace:
    """Caches keyed by module content, plus the grouped checks.

    Each ``*_checks`` method returns ``(outputs, checks)``: plain values
    (ints, Fractions, QMatrix) and named booleans.
    """

    def __init__(self):
        self._cache: dict = {}

    def _memo(self, tag: str, key, fn):
        k = (tag, key)
        if k not in self._cache:
            self._cache[k] = fn()
        return self._cache[k]

    def complex(self, X: HModule, Y: HModule) -> HomComplex:
        return self._memo("complex", (module_key(X), module_key(Y)), lambda: HomComplex(X, Y))

    def ext(self, X: HModule, Y: HModule) -> list[int]:
        return self.complex(X, Y).ext_dims()

    def character(self, X: HModule) -> ClassFunction:
        return self._memo("char", module_key(X), lambda: w_character(X))

    def central_orbits(self, X: HModule) -> list:
        return self._memo("cc", module_key(X), lambda: central_characters(X))

    def irreducible(self, X: HModule) -> bool:
        return self._memo("irr", module_key(X), lambda: is_irreducible(X))

    def tempered(self, X: HModule) -> bool:
        return self._memo("temp", module_key(X), lambda: is_tempered(X))

    def discrete(self, X: HModule) -> bool:
        return self._memo("ds", module_key(X), lambda: is_discrete_series(X))

    def isomorphic(self, X: HModule, Y: HModule) -> bool:
        return self._memo("iso", (module_key(X), module_key(Y)), lambda: is_isomorphic(X, Y))

    def shares_central_character(self, X: HModule, Y: HModule) -> bool:
        ox = {o.members for o in self.central_orbits(X)}
        return any(o.members in ox for o in self.central_orbits(Y))

    # ---------------------------------------------------------- pair checks

    def ext_checks(self, X: HModule, Y: HModule):
        return self._memo("ext_checks", (module_key(X), module_key(Y)),
                          lambda: self._ext_checks(X, Y))

    def _ext_checks(self, X: HModule, Y: HModule):
        n = X.datum.ambient_dim
        C = self.complex(X, Y)
        e = C.ext_dims()
        out = {"term_dims": list(C.term_dims), "ext": e}
        checks = {
            "d_squared": C.check_d_squared(),
            "raw_equals_tilde": all(a == b for a, b in zip(C.D, C.raw_differentials())),
            "top_vanishing": len(e) == n + 1,
            "ext0_is_hom": e[0] == len(hom_space(X, Y)),
        }
        if not self.shares_central_character(X, Y):
            checks["distinct_central_vanishing"] = not any(e)
        if (X.datum.spans_V and self.irreducible(X) and self.irreducible(Y)
                and self.tempered(X) and self.discrete(Y)):
            expect = [int(self.isomorphic(X, Y))] + [0] * n
            checks["tempered_discrete_ext"] = e == expect
        return out, checks

    def duality_checks(self, X: HModule, Y: HModule):
        return self._memo("duality_checks", (module_key(X), module_key(Y)),
                          lambda: self._duality_checks(X, Y))

    def _duality_checks(self, X: HModule, Y: HModule):
        n = X.datum.ambient_dim
        C = self.complex(X, Y)
        C2 = self.complex(dual_star(X), dual_bullet(iota(Y)))
        res = duality_pairing(X, Y, C1=C, C2=C2)
        e, e2 = C.ext_dims(), C2.ext_dims()
        out = {"ext": e, "dual_ext": e2, "pairing_ranks": [r.rank for r in res],
               "pairings": [r.pairing for r in res]}
        checks = {
            "duality_dims": e == e2[::-1],
            "adjointness": all(r.adjoint_identity for r in res),
            "transport": all(r.transport_identity for r in res),
            "pairing_full_rank": all(r.rank == r.ext_dim == r.dual_ext_dim for r in res),
        }
        if self.irreducible(X) and self.irreducible(Y):
            partner = self.isomorphic(Y, dD(X))
            checks["top_degree_partner"] = e[n] == int(partner)
        return out, checks

    def ep_checks(self, X: HModule, Y: HModule):
        return self._memo("ep_checks", (module_key(X), module_key(Y)),
                          lambda: self._ep_checks(X, Y))

    def _ep_checks(self, X: HModule, Y: HModule):
        e = self.ext(X, Y)
        ep = euler_poincare(X, Y, e)
        ell = elliptic_pairing(self.character(X), self.character(Y))
        return {"ep": Fraction(ep), "elliptic": ell}, {"ep_equals_elliptic": ep == ell}

    def symmetry_checks(self, X: HModule, Y: HModule):
        return self._memo("symmetry_checks", (module_key(X), module_key(Y)),
                          lambda: self._symmetry_checks(X, Y))

    def _symmetry_checks(self, X: HModule, Y: HModule):
        E = self.ext
        Xs, Ys, Xb, Yb = dual_star(X), dual_star(Y), dual_bullet(X), dual_bullet(Y)
        e = E(X, Y)
        checks = {
            "star_swap": E(X, Ys) == E(Y, Xs),
            "bullet_swap": E(X, Yb) == E(Y, Xb),
            "theta_swap": E(X, theta(Y)) == E(theta(X), Y),
            "iota_swap": E(X, iota(Y)) == E(iota(X), Y),
            "bullet_star_duality": e == E(Xb, dual_star(iota(Y)))[::-1],
        }
        return {"ext": e}, checks

    def pair_report(self, X: HModule, Y: HModule, duality: bool = True,
                    symmetries: bool = False) -> PairReport:
        outputs, checks = {}, {}
        groups = [self.ext_checks, self.ep_checks]
        if duality:
            groups.append(self.duality_checks)
        if symmetries:
            groups.append(self.symmetry_checks)
        for g in groups:
            o, c = g(X, Y)
            outputs.update(o)
            checks.update(c)
        return PairReport(X.label, Y.label, outputs, checks)

    # -------------------------------------------------------- module checks

    def module_checks(self, X: HModule):
        return self._memo("module_checks", module_key(X), lambda: self._module_checks(X))

    def _module_checks(self, X: HModule):
        n = X.datum.ambient_dim
        rep = validate_module(X)
        checks = {"valid": rep.ok}
        out = {"dim": X.dim, "failed_families": rep.failed_families()}
        if not rep.ok:
            return out, checks
        DX = dD(X)
        checks["D_iso_iota_theta"] = self.isomorphic(DX, iota(theta(X)))
        if self.irreducible(X):
            checks["top_ext_with_D"] = self.ext(X, DX)[n] == 1
        return out, checks

    def aubert_checks(self, X: HModule):
        return self._memo("aubert_checks", module_key(X), lambda: self._aubert_checks(X))

    def _aubert_checks(self, X: HModule):
        chi = self.character(X)
        a = aubert_virtual_character(X)
        target = ClassFunction.sign(X.W) * chi
        return ({"aubert": list(a.values), "sign_twisted_character": list(target.values)},
                {"aubert_equals_sign_twist": a == target})

    def classify(self, X: HModule):
        return self._memo("classify", module_key(X), lambda: self._classify(X))

    def _classify(self, X: HModule):
        """Irreducibility, weights, central character, temperedness.

        For an irreducible discrete series the self-duality statements are
        checked: X is isomorphic to X*, X• and θ(X), and its central character
        is θ-stable.
        """
        d = X.datum
        irr = self.irreducible(X)
        orbits = self.central_orbits(X)
        out = {"dim": X.dim, "irreducible": irr,
               "weights": [[list(g), m] for g, m in weights(X)],
               "central_characters": [[list(g) for g in o.members] for o in orbits]}
        checks = {}
        if d.spans_V:
            out["tempered"] = self.tempered(X)
            out["discrete_series"] = self.discrete(X)
            if irr and out["discrete_series"]:
                checks["iso_star"] = self.isomorphic(X, dual_star(X))
                checks["iso_bullet"] = self.isomorphic(X, dual_bullet(X))
                checks["iso_theta"] = self.isomorphic(X, theta(X))
                checks["central_character_theta_stable"] = all(
                    theta_weight(d, o.members[0]) in o for o in orbits)
        return out, checks

    def module_report(self, X: HModule) -> ModuleReport:
        outputs, checks = {}, {}
        for g in (self.module_checks, self.aubert_checks, self.classify):
            o, c = g(X)
            outputs.update(o)
            checks.update(c)
            if not checks.get("valid", True):
                break
        return ModuleReport(X.label, outputs, checks)

    def top_vanishing_report(self, modules: Sequence[HModule]) -> dict[tuple[str, str], bool]:
        """``Ext^n(X, Y) = 0`` for irreducible ``Y`` not isomorphic to ``𝔻(X)``."""
        n = modules[0].datum.ambient_dim if modules else 0
        out = {}
        for X in modules:
            if not self.irreducible(X):
                continue
            DX = dD(X)
            for Y in modules:
                if not self.irreducible(Y) or self.isomorphic(Y, DX):
                    continue
                out[(X.label, Y.label)] = self.ext(X, Y)[n] == 0
        return out


def battery_scenario_text(entries=None, indres_types=("A1", "A2")) -> str:
    """Scenario text for the battery over the given ``(type, params, γ)`` entries.

    Each datum gets its own section; modules are the base four and their
    single duals, labelled ``<datum>.<base>`` and ``<datum>.<op>.<base>``.
    """
    entries = BATTERY_DATA if entries is None else entries
    out = ["# generated by heckext.battery.battery_scenario_text", ""]
    for t, k, g in entries:
        ks = "_".join(str(x) for x in k) if isinstance(k, (tuple, list)) else str(k)
        dn = f"{t}_k{ks}"
        params = " ".join(str(x) for x in k) if isinstance(k, (tuple, list)) else str(k)
        out += [f"[datum.{dn}]", f"type = {t}", f"parameters = {params}", ""]
        base = [("triv", ["kind = one_dim", "sign = 1"]),
                ("St", ["kind = one_dim", "sign = -1"]),
                ("M", ["kind = principal_series",
                       "simple_values = " + " ".join(str(x) for x in g)]),
                ("M0", ["kind = principal_series",
                        "simple_values = " + " ".join("0" for _ in g)])]
        for b, lines in base:
            out += [f"[module.{dn}.{b}]", f"datum = {dn}"] + lines + [""]
        for b, _ in base:
            for op in DUAL_OPS:
                out += [f"[module.{dn}.{op}.{b}]", f"datum = {dn}", "kind = dual",
                        f"op = {op}", f"of = {dn}.{b}", ""]
        tasks = [("validate", "modules = all"), ("ext_dims", "pairs = all"),
                 ("duality_check", "pairs = all"), ("ep_check", "pairs = all"),
                 ("aubert_check", "modules = all"), ("classify", "modules = all"),
                 ("elliptic_count", "modules = all")]
        if t in indres_types:
            tasks.append(("indres_check", f"modules = {dn}.St {dn}.triv"))
        for kind, target in tasks:
            out += [f"[task.{dn}.{kind}]", f"datum = {dn}", f"kind = {kind}", target, ""]
    return "\n".join(out)
