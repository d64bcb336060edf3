import csv
import io
import json
import subprocess
import sys

import pytest

from kpkc.chirotope import Chirotope, write_chirotope, write_points
from kpkc.cli import main, parse_duration, parse_range
from kpkc.geomoracle import sample_config


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_duration():
    assert parse_duration("90") == 90.0
    assert parse_duration("90s") == 90.0
    assert parse_duration("1500ms") == 1.5
    assert parse_duration(" 2.5s ") == 2.5
    with pytest.raises(Exception):
        parse_duration("fast")


def test_parse_range():
    assert parse_range("3..7") == (3, 7)
    assert parse_range("5") == (5, 5)
    with pytest.raises(Exception):
        parse_range("7..3")


def test_gen_solve_roundtrip(tmp_path, capsys):
    graph = tmp_path / "g.kpg"
    code, out, _ = run_cli(
        capsys, "gen", "rare", "--k", "4", "--max-part", "4", "--a", "0.9",
        "--seed", "7", "-o", str(graph),
    )
    assert code == 0
    assert "wrote" in out
    code, out, _ = run_cli(capsys, "solve", "--alg", "kpkc", "--first", str(graph))
    assert code == 0
    witness = list(map(int, out.split()))
    assert len(witness) == 4


def test_gen_deterministic(tmp_path, capsys):
    p1, p2 = tmp_path / "a.kpg", tmp_path / "b.kpg"
    args = ["gen", "grunert", "--k", "3", "--min-part", "2", "--max-part", "4",
            "--a", "0.4", "--b", "0.8", "--seed", "5", "-o"]
    assert main(args + [str(p1)]) == 0
    assert main(args + [str(p2)]) == 0
    capsys.readouterr()
    assert p1.read_bytes() == p2.read_bytes()


def test_solve_modes_and_exit_codes(tmp_path, capsys):
    empty = tmp_path / "empty.kpg"
    empty.write_text("p kpg 4 0 2\nq 2 2\n")
    code, out, _ = run_cli(capsys, "solve", "--any", str(empty))
    assert code == 1 and out.strip() == "none"

    complete = tmp_path / "complete.kpg"
    complete.write_text("p kpg 4 4 2\nq 2 2\ne 0 2\ne 0 3\ne 1 2\ne 1 3\n")
    code, out, _ = run_cli(capsys, "solve", "--any", str(complete))
    assert code == 0 and out.strip() == "clique"
    code, out, _ = run_cli(capsys, "solve", "--all", str(complete))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "cliques 4"
    assert sorted(lines[:-1]) == ["0 2", "0 3", "1 2", "1 3"]
    code, out, _ = run_cli(capsys, "solve", "--all", str(empty))
    assert code == 1 and out.strip() == "cliques 0"


def test_solve_timeout_exit_code(tmp_path, capsys):
    graph = tmp_path / "slow.kpg"
    assert main(["gen", "grunert", "--k", "8", "--min-part", "6", "--max-part", "6",
                 "--a", "0.35", "--b", "0.35", "--seed", "3", "-o", str(graph)]) == 0
    capsys.readouterr()
    code, out, _ = run_cli(
        capsys, "solve", "--alg", "brute", "--all", "--timeout", "1ms", str(graph)
    )
    assert code == 3
    assert out.strip().endswith("timeout")


def test_solve_usage_errors(tmp_path, capsys):
    code, _, err = run_cli(capsys, "solve", "--any", str(tmp_path / "missing.kpg"))
    assert code == 2 and "error" in err
    bad = tmp_path / "bad.kpg"
    bad.write_text("p kpg 2 0 2\nq 1 2\n")
    code, _, err = run_cli(capsys, "solve", "--any", str(bad))
    assert code == 2


def test_solve_brute_refusal_is_clean_usage_error(tmp_path, capsys):
    # the brute engine guards its candidate-space size; the CLI must turn
    # that refusal into the usage exit code, not a traceback
    path = tmp_path / "big.kpg"
    run_cli(
        capsys,
        "gen", "rare", "--k", "30", "--max-part", "30",
        "--a", "0.08", "--seed", "5", "-o", str(path),
    )
    code, _, err = run_cli(capsys, "solve", "--alg", "brute", "--any", str(path))
    assert code == 2 and "brute-force limit" in err


def test_bench_csv(tmp_path, capsys):
    suite = {
        "timeout": 10,
        "seeds": [1, 2],
        "rows": [
            {
                "label": "tiny-rare",
                "family": "rare",
                "params": {"k": 4, "max_part": 4, "a": 0.8},
                "algorithms": ["kpkc", "findclique", "brute"],
                "mode": "all",
            },
            {
                "label": "tiny-gru",
                "family": "grunert",
                "params": {"k": 3, "min_part": 2, "max_part": 4, "a": 0.7, "b": 0.9},
                "algorithms": ["kpkc"],
                "mode": "first",
            },
        ],
    }
    suite_path = tmp_path / "suite.json"
    suite_path.write_text(json.dumps(suite))
    out_csv = tmp_path / "out.csv"
    code, _, _ = run_cli(capsys, "bench", "--suite", str(suite_path), "--csv", str(out_csv))
    assert code == 0
    rows = list(csv.DictReader(out_csv.open()))
    assert list(rows[0].keys()) == [
        "label", "family", "params", "algorithm", "mode", "outcome", "millis", "cliques",
    ]
    assert len(rows) == 2 * 3 + 2 * 1
    # the three engines agree on the clique count per seed
    for seed in (1, 2):
        counts = {
            r["cliques"] for r in rows
            if r["label"] == f"tiny-rare/s{seed}" and r["mode"] == "all"
        }
        assert len(counts) == 1
    for r in rows:
        assert r["outcome"] in ("first-found", "none")
        float(r["millis"])
        assert "seed=" in r["params"]

    # reproducible row-for-row apart from timings
    code, out, _ = run_cli(capsys, "bench", "--suite", str(suite_path))
    assert code == 0
    again = list(csv.DictReader(io.StringIO(out)))
    strip = lambda rs: [{k: v for k, v in r.items() if k != "millis"} for r in rs]
    assert strip(again) == strip(rows)


def test_bench_timeout_nan(tmp_path, capsys):
    suite = {
        "timeout": 0.001,
        "seeds": [1],
        "rows": [
            {
                "label": "slow",
                "family": "grunert",
                "params": {"k": 8, "min_part": 6, "max_part": 6, "a": 0.35, "b": 0.35},
                "algorithms": ["brute"],
                "mode": "all",
            }
        ],
    }
    suite_path = tmp_path / "suite.json"
    suite_path.write_text(json.dumps(suite))
    code, out, _ = run_cli(capsys, "bench", "--suite", str(suite_path))
    assert code == 0
    (row,) = list(csv.DictReader(io.StringIO(out)))
    assert row["outcome"] == "timeout"
    assert row["millis"] == "nan"


def test_bench_jobs_parallel(tmp_path, capsys):
    suite = {
        "timeout": 10,
        "seeds": [1, 2],
        "rows": [
            {
                "label": "r",
                "family": "rare",
                "params": {"k": 3, "max_part": 3, "a": 0.9},
                "algorithms": ["kpkc", "findclique"],
                "mode": "any",
            }
        ],
    }
    suite_path = tmp_path / "suite.json"
    suite_path.write_text(json.dumps(suite))
    code, seq_out, _ = run_cli(capsys, "bench", "--suite", str(suite_path))
    assert code == 0
    code, par_out, _ = run_cli(capsys, "bench", "--suite", str(suite_path), "--jobs", "2")
    assert code == 0
    strip = lambda text: [
        {k: v for k, v in r.items() if k != "millis"}
        for r in csv.DictReader(io.StringIO(text))
    ]
    assert strip(seq_out) == strip(par_out)


def test_bench_bad_suite(tmp_path, capsys):
    p = tmp_path / "s.json"
    p.write_text("{not json")
    assert run_cli(capsys, "bench", "--suite", str(p))[0] == 2
    p.write_text(json.dumps({"rows": [{"label": "x", "family": "nope", "params": {}}]}))
    assert run_cli(capsys, "bench", "--suite", str(p))[0] == 2


def test_tverberg_build_convex10(capsys):
    code, out, _ = run_cli(capsys, "tverberg", "build", "--convex10")
    assert code == 0
    assert out.strip() == "parts=71 vertices=10785 edges=6630275"


def test_tverberg_verify_points(tmp_path, capsys):
    pts_file = tmp_path / "cfg.pts"
    write_points(sample_config(12), pts_file)
    code, out, _ = run_cli(capsys, "tverberg", "verify", "--points", str(pts_file))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "verified"
    assert lines[1].startswith("parts=") and "edges=" in lines[1]


def test_tverberg_verify_timeout(tmp_path, capsys):
    code, out, _ = run_cli(
        capsys, "tverberg", "verify", "--convex10", "--timeout", "10ms"
    )
    assert code == 3
    assert out.strip().splitlines()[0] == "timeout"


def test_tverberg_b16_report_line(tmp_path, capsys):
    from kpkc.chirotope import write_b16
    from kpkc.geomoracle import convex_config

    db = tmp_path / "db.b16"
    write_b16([convex_config(), sample_config(12), sample_config(13)], db)
    code, out, _ = run_cli(
        capsys, "tverberg", "verify", "--b16", str(db), "--index", "1"
    )
    assert code == 0
    fields = out.strip().split()
    assert fields[0] == "1" and fields[1] == "verified"
    int(fields[2]), int(fields[3]), int(fields[4])
    float(fields[5])


def test_tverberg_usage_errors(tmp_path, capsys):
    code, _, err = run_cli(capsys, "tverberg", "verify")
    assert code == 2 and "pick exactly one" in err
    code, _, err = run_cli(capsys, "tverberg", "verify", "--b16", "x.b16")
    assert code == 2 and "--index" in err
    code, _, err = run_cli(
        capsys, "tverberg", "verify", "--points", str(tmp_path / "nope.pts")
    )
    assert code == 2


def test_oracle_crosscheck(capsys):
    code, out, _ = run_cli(capsys, "oracle", "crosscheck", "--seeds", "0..0")
    assert code == 0
    assert "seed 0 ok" in out
    assert out.strip().splitlines()[-1] == "ok"


def test_chirotope_check(tmp_path, capsys):
    good = tmp_path / "good.chi"
    write_chirotope(Chirotope.convex(10), good)
    code, out, _ = run_cli(capsys, "chirotope", "check", str(good))
    assert code == 0 and out.strip() == "ok"

    zero = tmp_path / "zero.chi"
    zero.write_text("chi 10\n" + "0" * 120 + "\n")
    code, out, _ = run_cli(capsys, "chirotope", "check", str(zero))
    assert code == 1 and "not a chirotope" in out

    # a genuine chirotope that is not acyclic (vector, not point, origin)
    cyclic = tmp_path / "cyclic.chi"
    cyclic.write_text("chi 4\n+-+-\n")
    code, out, _ = run_cli(capsys, "chirotope", "check", str(cyclic))
    assert code == 1 and "not acyclic" in out

    bad = tmp_path / "bad.chi"
    bad.write_text("chi 10\nxx\n")
    code, _, err = run_cli(capsys, "chirotope", "check", str(bad))
    assert code == 2


def test_console_entry_point(tmp_path):
    graph = tmp_path / "g.kpg"
    res = subprocess.run(
        [sys.executable, "-m", "kpkc.cli", "gen", "rare", "--k", "3",
         "--max-part", "3", "--a", "1.0", "--seed", "1", "-o", str(graph)],
        capture_output=True, text=True,
    )
    assert res.returncode == 0
    res = subprocess.run(
        [sys.executable, "-m", "kpkc.cli", "solve", "--any", str(graph)],
        capture_output=True, text=True,
    )
    assert res.returncode == 0 and res.stdout.strip() == "clique"
