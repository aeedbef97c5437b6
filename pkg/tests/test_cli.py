import json
from importlib import resources

import pytest

from divide_forge.cli import main


def path(name):
    return str(resources.files("divide_forge").joinpath("data", name))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", path("alpha_even.div"))
    assert code == 0 and out.strip() == "valid"


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.div"
    bad.write_text("chains 1\nend 1 sideways 0 -\n")
    assert run(capsys, "invariants", str(bad))[0] == 1
    assert run(capsys, "invariants", str(tmp_path / "missing.div"))[0] == 1
    invalid = tmp_path / "invalid.div"
    invalid.write_text("chains 2\nend 1 bottom 0 -\nend 1 top 3 -\n")
    code, _, err = run(capsys, "validate", str(invalid))
    assert code == 2
    assert run(capsys, "crosscheck", str(invalid))[0] == 2


def test_invariants_json(capsys):
    code, out, _ = run(capsys, "invariants", path("alpha_even.div"), "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["jones"] == {"2": 1, "6": 1, "8": -1}
    assert rep["determinant"] == 3 and rep["chi_s"] == -1 and rep["braid_index_bound"] == 2
    assert rep["clasp"]["exact"] == 1


def test_global_flag_before_subcommand(capsys):
    code, out, _ = run(capsys, "--json", "invariants", path("unknot.div"))
    assert json.loads(out)["jones"] == {"0": 1}


def test_crosscheck(capsys):
    code, out, _ = run(capsys, "crosscheck", path("unknot.div"), "--json")
    r = json.loads(out)
    assert code == 0 and r["equal"] and r["jones_A"] == {"0": 1}
    code, out, _ = run(capsys, "crosscheck", path("alpha_odd.div"))
    assert code == 0 and out.startswith("ok")


def test_braid_and_diagram(capsys):
    code, out, _ = run(capsys, "braid", path("alpha_even.div"))
    assert out.strip() == "s1 s1 s1"
    code, out, _ = run(capsys, "braid", path("alpha_even.div"), "--json")
    assert json.loads(out)["quasipositive"] is True
    code, out, _ = run(capsys, "diagram", path("alpha_even.div"), "--pd")
    assert code == 0 and out.startswith("X[")


def test_svg_outputs(capsys, tmp_path):
    for cmd in ("render", "double", "diagram"):
        target = tmp_path / f"{cmd}.svg"
        assert run(capsys, cmd, path("alpha_even.div"), "--svg", str(target))[0] == 0
        assert target.read_text().startswith("<svg")


def test_from_braid_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "from-braid", "s1 s1 s1", "--strands", "2")
    f = tmp_path / "t.div"
    f.write_text(out)
    code, out, _ = run(capsys, "invariants", str(f), "--json")
    assert json.loads(out)["jones"] == {"2": 1, "6": 1, "8": -1}
    assert run(capsys, "from-braid", "s1 s2'")[0] == 1


def test_from_tree(capsys):
    code, out, _ = run(capsys, "from-tree", path("tree_marks.tree"))
    assert code == 0 and "end 1 bottom 2 +" in out


def test_fuzz_deterministic(capsys):
    first = run(capsys, "fuzz", "--seed", "5", "--count", "15", "--json")
    second = run(capsys, "fuzz", "--seed", "5", "--count", "15", "--json")
    assert first == second
    assert first[0] == 0 and json.loads(first[1])["failures"] == []


def test_shrink_finds_small_counterexample():
    import random

    from divide_forge.cli import shrink
    from divide_forge.divide_model import counts, random_divide

    rng = random.Random(3)
    d = random_divide(rng, max_connectors=10, kinds=("cross", "end", "cap", "cup"))
    while counts(d).delta < 2:
        d = random_divide(rng, max_connectors=10, kinds=("cross", "end", "cap", "cup"))
    small = shrink(d, lambda x: counts(x).delta >= 1)
    assert counts(small).delta == 1
    assert len(small.connectors) < len(d.connectors)
