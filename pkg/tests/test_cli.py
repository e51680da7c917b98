from __future__ import annotations

import json
import math
import random

import pytest

from orthoschubert import cli, pi_phi
from orthoschubert.counting import hilbert_series_prefix
from orthoschubert.index_sets import all_Id, interval_Id, make
from orthoschubert.root_lattice import build_regions

GOLDEN = ["-d", "7", "-v", "1,2,3,4,7,9,10", "-w", "4,6,7,10,12,13,14"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mult_golden(capsys):
    code, out, _ = run(capsys, "mult", *GOLDEN, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["multiplicity"] == "15" and data["method"] == "paths"


def test_mult_check_golden(capsys):
    code, out, _ = run(capsys, "mult", *GOLDEN, "--check", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["agree"]
    assert data["methods"] == {"paths": "15", "monomials": "15", "oracle": "15"}


def test_mult_trivial(capsys):
    code, out, _ = run(capsys, "mult", "-d", "7", "-v", "1,2,3,4,7,9,10", "-w", "1,2,3,4,7,9,10")
    assert code == 0 and out.split()[0] == "1"


def test_mult_check_random_d5(capsys):
    rng = random.Random(5)
    for _ in range(5):
        v = rng.choice(all_Id(5))
        w = rng.choice(interval_Id(v))
        args = ["-d", "5", "-v", ",".join(map(str, v.entries)), "-w", ",".join(map(str, w.entries))]
        code, out, _ = run(capsys, "mult", *args, "--check", "--format", "json")
        assert code == 0 and json.loads(out)["agree"]


def test_mult_disagreement_exit_code(capsys, monkeypatch):
    real = cli.multiplicity
    monkeypatch.setattr(cli, "multiplicity",
                        lambda v, w, m, **kw: real(v, w, m, **kw) + (m == "oracle"))
    code, out, _ = run(capsys, "mult", *GOLDEN, "--check")
    assert code == cli.EXIT_DISAGREE and "DISAGREE" in out


def test_csv_output(capsys):
    code, out, _ = run(capsys, "mult", *GOLDEN, "--format", "csv", "--method", "oracle")
    assert code == 0 and out.splitlines() == ["method,multiplicity", "oracle,15"]


def test_parse_errors(capsys):
    assert run(capsys, "mult", "-d", "4", "-v", "1,2,3,8", "-w", "5,6,7,8")[0] == 2
    assert run(capsys, "mult", "-d", "4", "-v", "5,6,7,8", "-w", "1,2,5,6")[0] == 2
    assert run(capsys, "mult", "-d", "4", "-v", "1,2,5,x", "-w", "5,6,7,8")[0] == 2
    assert run(capsys, "mult", "-v", "1,2,5,6")[0] == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["mult", "--format", "xml"])
    assert exc.value.code == 2


def test_guardrail_exit_code(capsys):
    code, _, err = run(capsys, "mult", *GOLDEN, "--node-budget", "3")
    assert code == cli.EXIT_GUARDRAIL and "guardrail" in err
    v = ",".join(map(str, range(1, 9)))
    w = ",".join(map(str, range(9, 17)))
    code, _, _ = run(capsys, "mult", "-d", "8", "-v", v, "-w", w, "--method", "monomials")
    assert code == cli.EXIT_GUARDRAIL


def test_instance_inline_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "mult", "--instance", "d=7;v=1,2,3,4,7,9,10;w=4,6,7,10,12,13,14")
    assert code == 0 and out.startswith("15")
    f = tmp_path / "inst.json"
    f.write_text(json.dumps({"d": 7, "v": [1, 2, 3, 4, 7, 9, 10], "w": [4, 6, 7, 10, 12, 13, 14],
                             "method": "monomials"}))
    code, out, _ = run(capsys, "mult", "--instance", str(f), "--format", "json")
    assert code == 0 and json.loads(out)["method"] == "monomials"
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    assert run(capsys, "mult", "--instance", str(bad))[0] == 2


def test_hilbert_prefix_and_sm(capsys):
    code, out, _ = run(capsys, "hilbert", "-d", "4", "-v", "1,2,5,6", "-w", "2,4,6,8",
                       "--max-degree", "4", "--sm", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["agree"]
    assert data["hilbert"] == ["1", "5", "14", "30", "55"] == data["sm"]


def test_hilbert_m0_and_smooth(capsys):
    code, out, _ = run(capsys, "hilbert", *GOLDEN, "--max-degree", "0", "--format", "json")
    assert json.loads(out)["hilbert"] == ["1"]
    code, out, _ = run(capsys, "hilbert", "-d", "5", "-v", "1,3,4,6,9", "-w", "1,3,4,6,9",
                       "--max-degree", "3", "--format", "csv")
    F = len(build_regions(make(5, (1, 3, 4, 6, 9))).free)
    H = [int(line.split(",")[1]) for line in out.splitlines()[1:]]
    assert H == [math.comb(m + F - 1, m) for m in range(4)]


@pytest.mark.parametrize("d", [2, 3, 4])
def test_hilbert_sm_agreement(capsys, d):
    for v in all_Id(d):
        for w in interval_Id(v):
            args = ["-d", str(d), "-v", ",".join(map(str, v.entries)), "-w", ",".join(map(str, w.entries))]
            code, out, _ = run(capsys, "hilbert", *args, "--max-degree", "3", "--sm", "--format", "json")
            data = json.loads(out)
            assert code == 0 and data["agree"]
            assert data["hilbert"] == [str(x) for x in hilbert_series_prefix(v, w, 3)]


def test_paths_golden(capsys):
    code, out, _ = run(capsys, "paths", *GOLDEN, "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["count"] == "15" and len(data["tuples"]) == 15
    assert all(len(t) == 3 for t in data["tuples"])
    assert set(data["tuples"][0][0][0]) == {"r", "c"}
    code, out, _ = run(capsys, "paths", *GOLDEN, "--count-only", "--format", "json")
    assert "tuples" not in json.loads(out)


def test_paths_trivial(capsys):
    code, out, _ = run(capsys, "paths", "-d", "3", "-v", "1,2,3", "-w", "1,2,3", "--format", "json")
    data = json.loads(out)
    assert data["tuples"] == [[]] and data["count"] == "1"


def test_paths_csv_and_text(capsys):
    code, out, _ = run(capsys, "paths", *GOLDEN, "--format", "csv")
    assert out.splitlines()[0] == "tuple,beta_r,beta_c,step,r,c"
    assert out.splitlines()[-1] == "count,15"
    code, out, _ = run(capsys, "paths", *GOLDEN)
    assert out.splitlines()[-1] == "count 15" and len(out.splitlines()) == 16


def test_paths_tuple_check(capsys, tmp_path):
    f = tmp_path / "t.json"
    f.write_text(json.dumps([
        [{"r": 7, "c": 6}, {"r": 9, "c": 6}, {"r": 9, "c": 8}],
        [{"r": r, "c": 4} for r in (5, 7, 9, 10, 13)] + [{"r": 13, "c": 6}],
        [{"r": r, "c": 3} for r in (5, 7, 9, 10, 13, 15)] + [{"r": 15, "c": 4}],
        [{"r": r, "c": 2} for r in (5, 7, 9, 10, 13, 15, 17)] + [{"r": 17, "c": 3}],
        [{"r": r, "c": 1} for r in (5, 7, 9, 10, 13, 15, 17, 18, 19)],
    ]))
    args = ["-d", "10", "-v", "1,2,3,4,6,8,11,12,14,16", "-w", "8,9,11,14,15,16,17,18,19,20"]
    code, out, _ = run(capsys, "paths", *args, "--tuple", str(f), "--format", "json")
    data = json.loads(out)
    assert code == cli.EXIT_PROPERTY and not data["admissible"]
    assert "diagonal coupling" in data["violations"][0]


def test_output_is_deterministic(capsys):
    first = run(capsys, "paths", *GOLDEN, "--format", "json")[1]
    second = run(capsys, "paths", *GOLDEN, "--format", "json")[1]
    assert first == second


def test_verify_passes_and_is_reproducible(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "3", "--samples", "20", "--d-max", "3")
    assert code == 0 and "FAIL" not in out
    again = run(capsys, "verify", "--seed", "3", "--samples", "20", "--d-max", "3")[1]
    assert out == again


def test_verify_reports_mutation(capsys, monkeypatch):
    monkeypatch.setattr(pi_phi, "delta_twist", lambda star, diag, d: (star, diag[0]))
    code, out, _ = run(capsys, "verify", "--seed", "1", "--samples", "40", "--d-max", "4",
                       "--format", "json")
    data = json.loads(out)
    assert code == cli.EXIT_PROPERTY and not data["ok"]
    bad = [s for s in data["suites"] if s["name"].startswith("inverse maps") and s["failures"]]
    assert bad and bad[0]["counterexample"]["minimized"]
