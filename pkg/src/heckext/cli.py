"""Command-line scenario runner.

    heckext SCENARIO [--format table|records|both] [--out PATH] [--seed N]

Records are JSON lines (sorted keys, scalars as ``p/q`` strings); the table
is rendered from the same records.  Exit status is 0 iff every check passes,
1 if some check fails, 2 on input or computation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .scenario import ScenarioError, TaskError, parse_scenario, run_scenario
from .textfmt import ParseError

__all__ = ["main", "render_records", "render_table"]


def render_records(records: list[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True, ensure_ascii=False) + "\n" for r in records)


def _compact(value) -> str:
    if isinstance(value, list):
        return "[" + ",".join(_compact(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}={_compact(v)}" for k, v in sorted(value.items())) + "}"
    return str(value)


# outputs worth a column in the table; the records carry everything
_TABLE_KEYS = ("ext", "dual_ext", "pairing_ranks", "ep", "elliptic", "term_dims", "stage_dims",
               "kernel_dim", "aubert", "dim", "irreducible", "tempered", "discrete_series",
               "failed_families", "elliptic_classes", "discrete_series_found")


def render_table(records: list[dict]) -> str:
    lines = []
    for rec in records:
        status = "PASS" if rec["pass"] else "FAIL"
        where = f" on {rec['datum']}" if rec.get("datum") else ""
        lines.append(f"== {rec['task']} ({rec['kind']}{where}): {status}")
        for it in rec["items"]:
            inp = ":".join(str(v) for v in it["inputs"].values())
            outs = " ".join(f"{k}={_compact(it['outputs'][k])}" for k in _TABLE_KEYS
                            if k in it["outputs"])
            failed = [k for k, v in sorted(it["checks"].items()) if not v]
            mark = "ok" if it["pass"] else "FAIL " + ",".join(failed)
            lines.append(f"  {inp:<28} {outs}  [{mark}]")
    total = sum(len(r["items"]) for r in records)
    good = sum(it["pass"] for r in records for it in r["items"])
    lines.append(f"{good}/{total} items passed in {len(records)} tasks")
    return "\n".join(lines) + "\n"


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    ap = argparse.ArgumentParser(prog="heckext", description="Run a scenario file.")
    ap.add_argument("scenario", help="path to the scenario file")
    ap.add_argument("--format", choices=("table", "records", "both"), default="table")
    ap.add_argument("--out", help="write the JSON-lines records here")
    ap.add_argument("--seed", type=int, default=None,
                    help="accepted for compatibility; nothing here is random")
    args = ap.parse_args(argv)

    try:
        with open(args.scenario, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"heckext: {exc}", file=sys.stderr)
        return 2
    try:
        records = run_scenario(parse_scenario(text))
    except (ParseError, ScenarioError) as exc:
        print(f"heckext: {args.scenario}: {exc}", file=sys.stderr)
        return 2
    except TaskError as exc:
        print(f"heckext: {exc}", file=sys.stderr)
        return 2

    rec_text = render_records(records)
    if args.format in ("table", "both"):
        stdout.write(render_table(records))
    if args.format in ("records", "both"):
        stdout.write(rec_text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rec_text)
    return 0 if all(r["pass"] for r in records) else 1


if __name__ == "__main__":
    sys.exit(main())
