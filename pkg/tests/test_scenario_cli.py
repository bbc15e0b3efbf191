import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from heckext.battery import battery_scenario_text
from heckext.cli import main, render_records
from heckext.homology import elliptic_pairing
from heckext.scenario import ScenarioError, TaskError, parse_scenario, run_scenario

ROOT = Path(__file__).resolve().parent.parent
SCEN = ROOT / "scenarios"

A1_HEAD = "[datum]\ntype = A1\n\n[module.St]\nkind = one_dim\nsign = -1\n\n"


def run_text(text):
    return run_scenario(parse_scenario(text))


def run_cli(tmp_path, text, *args):
    p = tmp_path / "s.txt"
    p.write_text(text)
    out = io.StringIO()
    code = main([str(p), *args], stdout=out)
    return code, out.getvalue()


# ------------------------------------------------------------ fixtures


@pytest.mark.parametrize("name", ["a1_minimal.txt", "a1_battery.txt", "b2_unequal.txt"])
def test_fixture_passes(name):
    out = io.StringIO()
    assert main([str(SCEN / name)], stdout=out) == 0
    assert "PASS" in out.getvalue() and "FAIL" not in out.getvalue()


def test_corrupted_fixture_names_the_family():
    out = io.StringIO()
    assert main([str(SCEN / "a1_corrupted.txt"), "--format", "records"], stdout=out) == 1
    (rec,) = [json.loads(line) for line in out.getvalue().splitlines()]
    (item,) = rec["items"]
    assert item["outputs"]["failed_families"] == ["cross relation"]
    assert not rec["pass"]


def test_full_battery_fixture_is_generated():
    assert (SCEN / "full_battery.txt").read_text() == battery_scenario_text()


def test_a1_minimal_values():
    recs = run_text((SCEN / "a1_minimal.txt").read_text())
    exts = {(it["inputs"]["x"], it["inputs"]["y"]): it["outputs"]["ext"]
            for it in recs[0]["items"]}
    assert exts == {("St", "St"): [1, 0], ("triv", "St"): [0, 1]}


def test_a1_battery_ep_matches_elliptic_table():
    recs = {r["task"]: r for r in run_text((SCEN / "a1_battery.txt").read_text())}
    items = recs["ep"]["items"]
    assert len(items) == 11 * 11
    for it in items:
        assert it["outputs"]["ep"] == it["outputs"]["elliptic"]
    by_pair = {(it["inputs"]["x"], it["inputs"]["y"]): it["outputs"]["ep"] for it in items}
    assert by_pair[("St", "St")] == "1"
    assert by_pair[("triv", "St")] == "-1"
    assert all(by_pair[("M", y)] == "0" for y in ("St", "triv", "M", "M0"))


def test_b2_elliptic_count_and_classify():
    text = ("[datum]\ntype = B2\n\n[module.St]\nkind = one_dim\nsign = -1\n\n"
            "[task.e]\nkind = elliptic_count\n\n[task.c]\nkind = classify\nmodules = St\n")
    e, c = run_text(text)
    assert e["items"][0]["outputs"]["elliptic_classes"] == 2
    assert e["items"][0]["outputs"]["discrete_series_found"] == ["St"]
    out = c["items"][0]["outputs"]
    assert out["tempered"] and out["discrete_series"] and out["irreducible"]


def test_classify_steinberg_a2():
    text = ("[datum]\ntype = A2\n\n[module.St]\nkind = one_dim\nsign = -1\n\n"
            "[task.c]\nkind = classify\nmodules = St\n")
    (rec,) = run_text(text)
    it = rec["items"][0]
    assert it["outputs"]["tempered"] and it["outputs"]["discrete_series"]
    assert all(it["checks"].values()) and "iso_star" in it["checks"]


def test_expect_mismatch_fails(tmp_path):
    text = A1_HEAD + "[task.t]\nkind = ext_dims\npairs = St:St\nexpect = 0 1\n"
    code, out = run_cli(tmp_path, text)
    assert code == 1
    assert "expected_ext" in out


def test_multiple_data_and_recipes(tmp_path):
    text = ("[datum.a]\ntype = A1\n\n[datum.b]\ntype = B2\nparameters = 1 2\n\n"
            "[module.Sa]\ndatum = a\nkind = one_dim\nsign = -1\n\n"
            "[module.Sb]\ndatum = b\nkind = one_dim\nsign = -1\n\n"
            "[module.Mb]\ndatum = b\nkind = principal_series\nsimple_values = 3 5\n\n"
            "[module.Ib]\ndatum = b\nkind = parabolic_induction\nJ = 0\nof = Sb\n\n"
            "[module.Db]\ndatum = b\nkind = dual\nop = D\nof = Mb\n\n"
            "[module.Sum]\ndatum = b\nkind = direct_sum\nof = Sb Ib\n\n"
            "[task.v]\ndatum = b\nkind = validate\nmodules = all\n\n"
            "[task.e]\nkind = ext_dims\npairs = Sb:Sb, Mb:Db\n")
    code, out = run_cli(tmp_path, text)
    assert code == 0, out


# ------------------------------------------------------------ errors


@pytest.mark.parametrize("tail,msg", [
    ("[task.t]\nkind = ext_dims\npairs = X9:St\n", "X9"),
    ("[module.A]\nkind = dual\nop = iota\nof = B\n\n[module.B]\nkind = dual\nop = iota\nof = A\n",
     "cycle"),
    ("[module.A]\nkind = bogus\n", "bogus"),
    ("[module.A]\nkind = dual\nop = mirror\nof = St\n", "mirror"),
    ("[task.t]\nkind = frobnicate\n", "frobnicate"),
    ("[module.A]\nkind = principal_series\ngamma = 1\nsimple_values = 1\n", "gamma"),
])
def test_scenario_errors(tail, msg):
    with pytest.raises(ScenarioError, match=msg) as exc:
        parse_scenario(A1_HEAD + tail)
    assert exc.value.line > 0


def test_undefined_label_position():
    text = A1_HEAD + "[task.t]\nkind = ext_dims\npairs = St:X9\n"
    with pytest.raises(ScenarioError) as exc:
        parse_scenario(text)
    assert (exc.value.line, exc.value.col) == (10, 12)


def test_invalid_module_in_computation_is_a_task_error(tmp_path):
    text = ("[datum]\ntype = A1\n\n[module.bad]\nkind = explicit\ndim = 1\n"
            "gen_W.0 = -1\ngen_V.0 = 1\n\n[task.t]\nkind = ext_dims\npairs = bad:bad\n")
    with pytest.raises(TaskError, match="t"):
        run_text(text)
    code, _ = run_cli(tmp_path, text)
    assert code == 2


def test_exit_codes_for_io_and_parse_errors(tmp_path, capsys):
    assert main([str(tmp_path / "missing.txt")]) == 2
    code, _ = run_cli(tmp_path, "[datum]\ntype = A1\nnonsense\n")
    assert code == 2
    assert "line 3" in capsys.readouterr().err


# ------------------------------------------------------------ output


def test_out_file_and_formats(tmp_path):
    text = (SCEN / "a1_minimal.txt").read_text()
    dest = tmp_path / "rec.jsonl"
    code, out = run_cli(tmp_path, text, "--format", "both", "--out", str(dest))
    assert code == 0
    recs = dest.read_text()
    assert out.endswith(recs)
    assert out.startswith("== ext (ext_dims on A1): PASS")
    assert "2/2 items passed in 1 tasks" in out
    code, out = run_cli(tmp_path, text, "--format", "records")
    assert out == recs


def test_scalars_are_exact_strings():
    text = ("[datum]\ntype = A1\n\n[module.M]\nkind = principal_series\ngamma = 1/3\n\n"
            "[task.c]\nkind = classify\nmodules = M\n")
    (rec,) = run_text(text)
    ws = rec["items"][0]["outputs"]["weights"]
    assert [w[0] for w in ws] == [["-1/3"], ["1/3"]]
    json.loads(render_records([rec]))


def test_records_are_deterministic_across_processes(tmp_path):
    outs = []
    for seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        res = subprocess.run([sys.executable, "-m", "heckext.cli", str(SCEN / "a1_battery.txt"),
                              "--format", "records", "--seed", seed],
                             capture_output=True, env=env, check=True)
        outs.append(res.stdout)
    assert outs[0] == outs[1]


def test_g2_battery_fixture_parses():
    sc = parse_scenario((SCEN / "g2_battery.txt").read_text())
    assert len(sc.recipes) == 24
    assert {t.kind for t in sc.tasks} >= {"ext_dims", "duality_check", "ep_check", "classify",
                                          "elliptic_count"}
