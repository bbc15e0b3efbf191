"""Scenario files: root data, module recipes and tasks.

Grammar (see :mod:`heckext.textfmt` for the line format)::

    [datum]                     # or [datum.<name>] when there are several
    type = A1
    parameters = 1

    [module.St]
    kind = one_dim
    sign = -1

    [module.M]
    kind = principal_series
    simple_values = 3           # or: gamma = <values on the basis of V>

    [module.Ms]
    kind = dual
    op = star                   # star | bullet | iota | theta | D
    of = M

    [task.ext]
    kind = ext_dims
    pairs = all                 # or: St:St, M:St

Module kinds: ``one_dim``, ``principal_series``, ``parabolic_induction``
(``J`` and ``of``; induces ``Res_J`` of a module), ``dual``, ``direct_sum``
(``of = A B``) and ``explicit`` (``dim``, ``gen_W.i``, ``gen_V.j``).
Modules may name their datum with ``datum = <name>``.

Task kinds over pairs: ``ext_dims``, ``duality_check``, ``ep_check``,
``symmetry_check``.  Over modules: ``aubert_check``, ``indres_check``,
``classify``, ``validate``.  Per datum: ``elliptic_count``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .algebra import HModule, direct_sum, validate_module
from .battery import DUAL_OPS, Workspace
from .constructions import (one_dim_module, parabolic_induction, principal_series,
                            restrict_to_parabolic, weight_from_simple_values)
from .homology import indres_complex
from .linalg import QMatrix, format_scalar
from .rootsys import RootDatum, elliptic_classes
from .textfmt import (Entry, ParseError, Section, datum_from_section, parse_rows,
                      parse_sections)

__all__ = ["Scenario", "Recipe", "Task", "ScenarioError", "TaskError", "parse_scenario",
           "run_scenario", "PAIR_TASKS", "MODULE_TASKS", "DATUM_TASKS"]

PAIR_TASKS = ("ext_dims", "duality_check", "ep_check", "symmetry_check")
MODULE_TASKS = ("aubert_check", "indres_check", "classify", "validate")
DATUM_TASKS = ("elliptic_count",)

_RECIPE_KEYS = {
    "one_dim": {"sign"},
    "principal_series": {"gamma", "simple_values"},
    "parabolic_induction": {"J", "of"},
    "dual": {"op", "of"},
    "direct_sum": {"of"},
    "explicit": {"dim"},
}


class ScenarioError(ParseError):
    pass


class TaskError(RuntimeError):
    def __init__(self, task_id: str, exc: BaseException):
        super().__init__(f"task {task_id}: {type(exc).__name__}: {exc}")
        self.task_id = task_id
        self.__cause__ = exc


@dataclass
class Recipe:
    label: str
    kind: str
    datum: str
    section: Section
    refs: list[str] = field(default_factory=list)


@dataclass
class Task:
    id: str
    kind: str
    datum: str
    targets: list      # pairs (x, y) or labels
    expect: list[int] | None
    section: Section


@dataclass
class Scenario:
    data: dict[str, RootDatum]
    recipes: dict[str, Recipe]
    tasks: list[Task]

    def labels_for(self, datum: str) -> list[str]:
        return [r.label for r in self.recipes.values() if r.datum == datum]


# ------------------------------------------------------------------ parsing


def _err(entry: Entry | Section, message: str) -> ScenarioError:
    col = entry.col if isinstance(entry, Entry) else 1
    return ScenarioError(message, entry.line, col)


def _datum_name(sec: Section, data: dict[str, RootDatum]) -> str:
    e = sec.get("datum")
    if e is not None:
        if e.value not in data:
            raise _err(e, f"unknown datum {e.value!r}")
        return e.value
    if len(data) != 1:
        raise _err(sec, f"[{sec.name}] must name its datum (several are defined)")
    return next(iter(data))


def _labels(entry: Entry) -> list[str]:
    return entry.value.replace(",", " ").split()


def _token_err(entry: Entry, token: str, message: str) -> ScenarioError:
    """Error pointing at the first whole-word occurrence of ``token`` in the value."""
    v = entry.value
    pos = 0
    while True:
        at = v.find(token, pos)
        if at < 0:
            return _err(entry, message)
        end = at + len(token)
        before = v[at - 1] if at else " "
        after = v[end] if end < len(v) else " "
        if not (before.isalnum() or before == "_") and not (after.isalnum() or after == "_"):
            return ScenarioError(message, entry.line, entry.col + at)
        pos = at + 1


def parse_scenario(text: str) -> Scenario:
    sections = parse_sections(text)
    data: dict[str, RootDatum] = {}
    recipes: dict[str, Recipe] = {}
    tasks: list[Task] = []
    for sec in sections:
        if sec.kind not in ("datum", "module", "task"):
            raise _err(sec, f"unknown section kind [{sec.name}]")
        if sec.kind in ("module", "task") and not sec.suffix:
            raise _err(sec, f"[{sec.kind}] needs a name: [{sec.kind}.<name>]")
    for sec in sections:
        if sec.kind == "datum":
            data[sec.suffix] = datum_from_section(sec)
    if not data:
        raise ScenarioError("no [datum] section", 1, 1)

    for sec in sections:
        if sec.kind != "module":
            continue
        kind_e = sec.require("kind")
        kind = kind_e.value
        if kind not in _RECIPE_KEYS:
            raise _err(kind_e, f"unknown module kind {kind!r}; expected one of "
                               f"{', '.join(_RECIPE_KEYS)}")
        dname = _datum_name(sec, data)
        allowed = _RECIPE_KEYS[kind] | {"kind", "datum"}
        if kind == "explicit":
            allowed |= {f"gen_W.{i}" for i in range(data[dname].rank)}
            allowed |= {f"gen_V.{j}" for j in range(data[dname].ambient_dim)}
        for e in sec.entries:
            if e.key not in allowed:
                raise _err(e, f"unexpected key '{e.key}' for a {kind} module")
        refs = []
        if kind in ("dual", "parabolic_induction"):
            refs = [sec.require("of").value]
        elif kind == "direct_sum":
            refs = _labels(sec.require("of"))
            if len(refs) < 2:
                raise _err(sec.require("of"), "direct_sum needs at least two modules")
        if kind == "dual" and sec.require("op").value not in DUAL_OPS:
            op = sec.require("op")
            raise _err(op, f"unknown op {op.value!r}; expected one of {', '.join(DUAL_OPS)}")
        if kind == "principal_series" and (sec.get("gamma") is None) == (sec.get("simple_values") is None):
            raise _err(sec, "principal_series needs exactly one of 'gamma' or 'simple_values'")
        recipes[sec.suffix] = Recipe(sec.suffix, kind, dname, sec, refs)

    for rec in recipes.values():
        for ref in rec.refs:
            if ref not in recipes:
                raise _token_err(rec.section.get("of"), ref, f"unresolved label {ref!r}")
            if recipes[ref].datum != rec.datum:
                raise _err(rec.section.get("of"), f"module {ref!r} lives over another datum")
    _check_acyclic(recipes)

    for sec in sections:
        if sec.kind != "task":
            continue
        tasks.append(_parse_task(sec, data, recipes))
    return Scenario(data, recipes, tasks)


def _check_acyclic(recipes: dict[str, Recipe]) -> None:
    state: dict[str, int] = {}

    def visit(label, path):
        if state.get(label) == 2:
            return
        if state.get(label) == 1:
            cyc = " -> ".join(path + [label])
            raise _err(recipes[label].section, f"recipe cycle: {cyc}")
        state[label] = 1
        for ref in recipes[label].refs:
            visit(ref, path + [label])
        state[label] = 2

    for label in recipes:
        visit(label, [])


def _parse_task(sec: Section, data, recipes) -> Task:
    kind_e = sec.require("kind")
    kind = kind_e.value
    if kind not in PAIR_TASKS + MODULE_TASKS + DATUM_TASKS:
        raise _err(kind_e, f"unknown task kind {kind!r}")
    dname = _datum_name(sec, data) if sec.get("datum") or len(data) == 1 else None
    allowed = {"kind", "datum"}
    targets: list = []

    def resolve(label, entry):
        if label not in recipes:
            raise _token_err(entry, label, f"unresolved label {label!r}")
        return label

    if kind in PAIR_TASKS:
        allowed |= {"pairs", "expect"}
        e = sec.require("pairs")
        if e.value == "all":
            if dname is None:
                raise _err(e, "'all' needs the task to name its datum")
            labels = [r.label for r in recipes.values() if r.datum == dname]
            targets = [(x, y) for x in labels for y in labels]
        else:
            for chunk in e.value.split(","):
                parts = chunk.strip().split(":")
                if len(parts) != 2 or not all(p.strip() for p in parts):
                    raise _err(e, f"bad pair {chunk.strip()!r}; write X:Y")
                targets.append(tuple(resolve(p.strip(), e) for p in parts))
    elif kind in MODULE_TASKS:
        allowed |= {"modules"}
        e = sec.require("modules")
        if e.value == "all":
            if dname is None:
                raise _err(e, "'all' needs the task to name its datum")
            targets = [r.label for r in recipes.values() if r.datum == dname]
        else:
            targets = [resolve(x, e) for x in _labels(e)]
    else:
        allowed |= {"modules"}
        if dname is None:
            raise _err(sec, f"{kind} needs a datum")
        e = sec.get("modules")
        if e is None or e.value == "all":
            targets = [r.label for r in recipes.values() if r.datum == dname]
        else:
            targets = [resolve(x, e) for x in _labels(e)]
    for ent in sec.entries:
        if ent.key not in allowed:
            raise _err(ent, f"unexpected key '{ent.key}' for a {kind} task")
    labels = [x for t in targets for x in (t if isinstance(t, tuple) else (t,))]
    dset = {recipes[x].datum for x in labels}
    if len(dset) > 1:
        raise _err(sec, "task mixes modules over different data")
    if dset:
        dname = dset.pop() if dname is None else dname
        if recipes[labels[0]].datum != dname:
            raise _err(sec, "task modules do not live over the task's datum")
    expect = None
    ee = sec.get("expect")
    if ee is not None:
        if len(targets) != 1:
            raise _err(ee, "'expect' needs exactly one pair")
        try:
            expect = [int(x) for x in ee.value.split()]
        except ValueError:
            raise _err(ee, "expect is a list of integers") from None
    return Task(sec.suffix, kind, dname, targets, expect, sec)


# ------------------------------------------------------------------ running


class _Builder:
    def __init__(self, scenario: Scenario):
        self.sc = scenario
        self.built: dict[str, HModule] = {}

    def get(self, label: str) -> HModule:
        if label in self.built:
            return self.built[label]
        rec = self.sc.recipes[label]
        datum = self.sc.data[rec.datum]
        sec = rec.section
        try:
            X = self._build(rec, datum, sec)
        except ParseError:
            raise
        except (ValueError, ArithmeticError) as exc:
            raise ScenarioError(f"module {label}: {exc}", sec.line, 1) from None
        self.built[label] = X
        return X

    def _build(self, rec: Recipe, datum: RootDatum, sec: Section) -> HModule:
        label = rec.label
        if rec.kind == "one_dim":
            e = sec.require("sign")
            vals = [int(x) for x in parse_rows(e)[0]] if e.value else []
            sign = vals[0] if len(vals) == 1 else vals
            return one_dim_module(datum, sign, label)
        if rec.kind == "principal_series":
            e = sec.get("gamma")
            if e is not None:
                gamma = parse_rows(e, nrows=1, ncols=datum.ambient_dim)[0]
            else:
                e = sec.require("simple_values")
                gamma = weight_from_simple_values(datum, parse_rows(e, nrows=1, ncols=datum.rank)[0])
            return principal_series(datum, gamma, label)
        if rec.kind == "parabolic_induction":
            e = sec.require("J")
            try:
                J = [int(x) for x in e.value.replace(",", " ").split()]
            except ValueError:
                raise _err(e, "J is a list of simple-root indices") from None
            X = self.get(rec.refs[0])
            J = datum.check_subset(J)
            return parabolic_induction(datum, J, restrict_to_parabolic(X, J), label)
        if rec.kind == "dual":
            return DUAL_OPS[sec.require("op").value](self.get(rec.refs[0])).relabel(label)
        if rec.kind == "direct_sum":
            X = self.get(rec.refs[0])
            for ref in rec.refs[1:]:
                X = direct_sum(X, self.get(ref))
            return X.relabel(label)
        # explicit
        d = int(sec.require("dim").value)
        gw = [QMatrix(parse_rows(sec.require(f"gen_W.{i}"), d, d), shape=(d, d))
              for i in range(datum.rank)]
        gv = [QMatrix(parse_rows(sec.require(f"gen_V.{j}"), d, d), shape=(d, d))
              for j in range(datum.ambient_dim)]
        return HModule(datum, gw, gv, label)


def _plain(x: Any):
    """Convert outputs to JSON-ready values; scalars become ``p/q`` strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return format_scalar(x)
    if isinstance(x, QMatrix):
        return [[format_scalar(v) for v in row] for row in x.tolist()]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    raise TypeError(f"cannot encode {type(x).__name__}")


def _item(inputs: dict, outputs: dict, checks: dict) -> dict:
    return {"inputs": inputs, "outputs": _plain(outputs), "checks": dict(checks),
            "pass": all(checks.values())}


def _run_task(task: Task, b: _Builder, ws: Workspace) -> dict:
    items = []
    valid_needed = task.kind != "validate"
    for lab in dict.fromkeys(x for t in task.targets for x in (t if isinstance(t, tuple) else (t,))):
        if valid_needed:
            rep = validate_module(b.get(lab))
            if not rep.ok:
                raise ValueError(f"module {lab} is not a valid module: {rep.summary()}")
    if task.kind in PAIR_TASKS:
        fn = {"ext_dims": ws.ext_checks, "duality_check": ws.duality_checks,
              "ep_check": ws.ep_checks, "symmetry_check": ws.symmetry_checks}[task.kind]
        for x, y in task.targets:
            out, checks = fn(b.get(x), b.get(y))
            checks = dict(checks)
            if task.expect is not None:
                checks["expected_ext"] = ws.ext(b.get(x), b.get(y)) == task.expect
            items.append(_item({"x": x, "y": y}, out, checks))
    elif task.kind == "elliptic_count":
        datum = b.sc.data[task.datum]
        W = datum.weyl_group()
        ell = elliptic_classes(W, datum)
        mods = [b.get(lab) for lab in task.targets]
        ds = []
        for X in mods:
            if datum.spans_V and ws.irreducible(X) and ws.discrete(X):
                if not any(ws.isomorphic(X, Y) for Y in ds):
                    ds.append(X)
        out = {"elliptic_classes": len(ell),
               "class_words": [list(W.elements[W.classes[c][0]].word) for c in ell],
               "discrete_series_found": [X.label for X in ds]}
        items.append(_item({"datum": datum.type_label}, out,
                           {"discrete_series_bound": len(ds) <= len(ell)}))
    else:
        for lab in task.targets:
            X = b.get(lab)
            if task.kind == "validate":
                rep = validate_module(X)
                out = {"dim": X.dim, "failed_families": rep.failed_families(),
                       "details": [f"{f}: {d}" for f, ok, d in rep.entries if not ok]}
                checks = {"valid": rep.ok}
            elif task.kind == "aubert_check":
                out, checks = ws.aubert_checks(X)
            elif task.kind == "classify":
                out, checks = ws.classify(X)
            else:
                r = indres_complex(X)
                out = {"stage_dims": r.stage_dims, "kernel_dim": r.kernel_dim}
                checks = {"exact": all(r.exact), "composites_zero": r.composites_zero,
                          "chi_in_kernel": r.chi_in_kernel, "chi_intertwines": r.chi_intertwines,
                          "kernel_isomorphic_to_D": r.kernel_isomorphic_to_D,
                          "euler_check": r.euler_check}
            items.append(_item({"module": lab}, out, checks))
    return {"task": task.id, "kind": task.kind,
            "datum": b.sc.data[task.datum].type_label if task.datum is not None else None,
            "items": items, "pass": all(it["pass"] for it in items)}


def run_scenario(scenario: Scenario) -> list[dict]:
    """One record per task, in declaration order."""
    b = _Builder(scenario)
    ws = Workspace()
    records = []
    for task in scenario.tasks:
        try:
            records.append(_run_task(task, b, ws))
        except ParseError:
            raise
        except Exception as exc:    # annotate with the task id
            raise TaskError(task.id, exc) from exc
    return records
