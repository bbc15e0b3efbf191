"""Line-oriented ``key = value`` text with bracketed sections.

Used for root data, modules and scenarios::

    # comment
    [datum]
    type = B2
    ambient_dim = 2
    simple_roots = 1 0; 0 1
    simple_coroots = 2 -1; -2 2
    cartan = 2 -2; -1 2
    parameters = 0:1 1:2

Vectors and matrices are written row by row: entries are ``p/q`` strings
separated by blanks, rows separated by ``;``.  Writers emit a canonical form,
so ``to_text(from_text(s)) == s`` whenever ``s`` came from a writer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import HModule
from .linalg import QMatrix, format_scalar, parse_scalar
from .rootsys import RootDatum, RootDatumError, build_root_datum

__all__ = ["ParseError", "Entry", "Section", "parse_sections", "format_rows", "parse_rows",
           "datum_to_text", "datum_from_section", "datum_from_text", "module_to_text",
           "module_from_section", "module_from_text"]


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message, self.line, self.col = message, line, col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


@dataclass
class Entry:
    key: str
    value: str
    line: int
    col: int        # column of the first character of the value (1-based)

    def error(self, message: str) -> ParseError:
        return ParseError(f"{self.key}: {message}", self.line, self.col)


@dataclass
class Section:
    name: str
    line: int
    entries: list[Entry] = field(default_factory=list)

    @property
    def kind(self) -> str:
        return self.name.split(".", 1)[0]

    @property
    def suffix(self) -> str:
        return self.name.split(".", 1)[1] if "." in self.name else ""

    def get(self, key: str) -> Entry | None:
        for e in self.entries:
            if e.key == key:
                return e
        return None

    def require(self, key: str) -> Entry:
        e = self.get(key)
        if e is None:
            raise ParseError(f"[{self.name}] is missing '{key}'", self.line, 1)
        return e

    def keys(self) -> list[str]:
        return [e.key for e in self.entries]


def parse_sections(text: str) -> list[Section]:
    sections: list[Section] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        stripped = line.lstrip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = len(line) - len(stripped)
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ParseError("unterminated section header", lineno, len(line) + 1)
            name = stripped[1:-1].strip()
            if not name or any(c.isspace() for c in name):
                raise ParseError(f"bad section name {name!r}", lineno, indent + 2)
            if any(s.name == name for s in sections):
                raise ParseError(f"duplicate section [{name}]", lineno, indent + 1)
            sections.append(Section(name, lineno))
            continue
        if "=" not in stripped:
            raise ParseError("expected 'key = value'", lineno, indent + 1)
        if not sections:
            raise ParseError("entry outside any section", lineno, indent + 1)
        key, _, value = stripped.partition("=")
        key = key.strip()
        if not key:
            raise ParseError("empty key", lineno, indent + 1)
        sec = sections[-1]
        if sec.get(key) is not None:
            raise ParseError(f"duplicate key '{key}' in [{sec.name}]", lineno, indent + 1)
        vstart = line.index("=") + 1
        vstart += len(line[vstart:]) - len(line[vstart:].lstrip())
        sec.entries.append(Entry(key, value.strip(), lineno, vstart + 1))
    return sections


# ------------------------------------------------------------------ values


def format_rows(rows: Iterable[Iterable]) -> str:
    return "; ".join(" ".join(format_scalar(x) for x in r) for r in rows)


def parse_rows(entry: Entry, nrows: int | None = None, ncols: int | None = None) -> list[list[Fraction]]:
    text = entry.value
    if not text:
        out: list[list[Fraction]] = []
    else:
        out = []
        offset = 0
        for chunk in text.split(";"):
            row = []
            pos = 0
            for tok in chunk.split():
                pos = chunk.index(tok, pos)
                try:
                    row.append(parse_scalar(tok))
                except (ValueError, ZeroDivisionError):
                    raise ParseError(f"{entry.key}: bad scalar {tok!r}", entry.line,
                                     entry.col + offset + pos) from None
                pos += len(tok)
            if not row:
                raise ParseError(f"{entry.key}: empty row", entry.line, entry.col + offset)
            out.append(row)
            offset += len(chunk) + 1
    if nrows is not None and len(out) != nrows:
        raise entry.error(f"expected {nrows} rows, got {len(out)}")
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise entry.error("rows have different lengths")
    if ncols is not None and out and widths != {ncols}:
        raise entry.error(f"expected {ncols} columns, got {widths.pop()}")
    return out


def parse_int(entry: Entry, minimum: int | None = None) -> int:
    try:
        v = int(entry.value)
    except ValueError:
        raise entry.error(f"expected an integer, got {entry.value!r}") from None
    if minimum is not None and v < minimum:
        raise entry.error(f"must be at least {minimum}")
    return v


def parse_scalar_list(entry: Entry) -> list[Fraction]:
    rows = parse_rows(entry)
    if len(rows) > 1:
        raise entry.error("expected a single row of scalars")
    return rows[0] if rows else []


# ------------------------------------------------------------------- datum


def datum_to_text(datum: RootDatum, section: str = "datum") -> str:
    lines = [
        f"[{section}]",
        f"type = {datum.type_label}",
        f"ambient_dim = {datum.ambient_dim}",
        f"simple_roots = {format_rows(datum.simple_roots)}",
        f"simple_coroots = {format_rows(datum.simple_coroots)}",
        f"cartan = {format_rows(datum.cartan)}",
        "parameters = " + " ".join(f"{i}:{format_scalar(k)}" for i, k in enumerate(datum.parameters)),
    ]
    return "\n".join(lines) + "\n"


def _parse_parameters(entry: Entry) -> list[Fraction] | Fraction:
    """``0:1 1:2`` (orbit -> value) or a plain list of values."""
    toks = entry.value.split()
    if not toks:
        raise entry.error("no parameter values")
    if all(":" in t for t in toks):
        vals = {}
        for t in toks:
            o, _, v = t.partition(":")
            try:
                vals[int(o)] = parse_scalar(v)
            except (ValueError, ZeroDivisionError):
                raise entry.error(f"bad orbit parameter {t!r}") from None
        if sorted(vals) != list(range(len(vals))):
            raise entry.error("orbit ids must be 0, 1, ... without gaps")
        return [vals[i] for i in range(len(vals))]
    vals = parse_scalar_list(entry)
    return vals[0] if len(vals) == 1 else vals


def datum_from_section(sec: Section) -> RootDatum:
    """Full explicit form, or just ``type`` (+ ``parameters``, ``realization``)."""
    allowed = {"type", "ambient_dim", "simple_roots", "simple_coroots", "cartan", "parameters",
               "realization"}
    for e in sec.entries:
        if e.key not in allowed:
            raise ParseError(f"unknown key '{e.key}' in [{sec.name}]", e.line, 1)
    t = sec.require("type")
    pe = sec.get("parameters")
    params = _parse_parameters(pe) if pe else 1
    try:
        if sec.get("simple_roots") is None:
            if sec.get("simple_coroots") is not None or sec.get("cartan") is not None:
                raise ParseError("simple_coroots/cartan given without simple_roots", sec.line, 1)
            re_ = sec.get("realization")
            datum = build_root_datum(t.value, params, re_.value if re_ else "span")
            dim_e = sec.get("ambient_dim")
            if dim_e and parse_int(dim_e) != datum.ambient_dim:
                raise dim_e.error(f"{t.value} has ambient_dim {datum.ambient_dim}")
            return datum
        ne = sec.require("ambient_dim")
        n = parse_int(ne, 1)
        re, ce = sec.require("simple_roots"), sec.require("simple_coroots")
        roots = parse_rows(re, ncols=n)
        coroots = parse_rows(ce, nrows=len(roots), ncols=n)
        datum = RootDatum.from_simple_data(t.value, roots, coroots, params, n)
    except RootDatumError as exc:
        raise ParseError(str(exc), (pe or t).line, (pe or t).col) from None
    cart = sec.get("cartan")
    if cart is not None:
        given = parse_rows(cart, nrows=datum.rank, ncols=datum.rank)
        if tuple(tuple(r) for r in given) != tuple(tuple(r) for r in datum.cartan):
            raise cart.error("does not match the pairing of simple roots and coroots")
    return datum


def datum_from_text(text: str) -> RootDatum:
    secs = [s for s in parse_sections(text) if s.kind == "datum"]
    if len(secs) != 1:
        raise ParseError(f"expected exactly one [datum] section, found {len(secs)}")
    return datum_from_section(secs[0])


# ------------------------------------------------------------------ module


def module_to_text(X: HModule, section: str = "module", with_datum: bool = True) -> str:
    out = datum_to_text(X.datum) + "\n" if with_datum else ""
    lines = [f"[{section}]", f"label = {X.label}", f"dim = {X.dim}"]
    lines += [f"gen_W.{i} = {format_rows(g.tolist())}" for i, g in enumerate(X.gen_W)]
    lines += [f"gen_V.{j} = {format_rows(g.tolist())}" for j, g in enumerate(X.gen_V)]
    return out + "\n".join(lines) + "\n"


def module_from_section(sec: Section, datum: RootDatum, check: bool = True) -> HModule:
    d = parse_int(sec.require("dim"), 1)
    r, n = datum.rank, datum.ambient_dim
    expected = {"label", "dim"} | {f"gen_W.{i}" for i in range(r)} | {f"gen_V.{j}" for j in range(n)}
    for e in sec.entries:
        if e.key not in expected:
            raise ParseError(f"unexpected key '{e.key}' in [{sec.name}]", e.line, 1)
    gw = [QMatrix(parse_rows(sec.require(f"gen_W.{i}"), d, d), shape=(d, d)) for i in range(r)]
    gv = [QMatrix(parse_rows(sec.require(f"gen_V.{j}"), d, d), shape=(d, d)) for j in range(n)]
    lab = sec.get("label")
    X = HModule(datum, gw, gv, lab.value if lab else sec.suffix or "X")
    return X.checked() if check else X


def module_from_text(text: str, check: bool = True) -> HModule:
    secs = parse_sections(text)
    ds = [s for s in secs if s.kind == "datum"]
    ms = [s for s in secs if s.kind == "module"]
    if len(ds) != 1 or len(ms) != 1:
        raise ParseError("expected one [datum] and one [module] section")
    return module_from_section(ms[0], datum_from_section(ds[0]), check)
