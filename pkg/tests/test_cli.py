import csv
import subprocess
import sys

import pytest

from ffdyn.cli import main, parse_int_list

COMMANDS = [
    ["avg-periodic", "--p", "3", "--d", "2", "--kind", "polynomial", "--j-range", "1-2"],
    ["avg-periodic", "--p", "5", "--j", "2", "--mode", "sampled", "--samples", "300", "--seed", "4"],
    ["verify-counts", "--p", "2,3", "--d", "2-3"],
    ["fix-wreath", "--d", "2,3", "--n", "1-3", "--method", "both"],
    ["image-decay", "--p", "3", "--d", "2", "--kind", "polynomial", "--n", "4"],
    ["bound-check", "--p", "5", "--d", "2", "--n", "1"],
    ["bad-locus", "--p", "3", "--d", "2"],
]


def run(argv, tmp_path, name="out.csv"):
    path = tmp_path / name
    code = main(argv + ["--out", str(path)])
    return code, path.read_text() if path.exists() else ""


def rows(text):
    return list(csv.reader(line for line in text.splitlines() if not line.startswith("#")))


def test_parse_int_list():
    assert parse_int_list("1-4") == [1, 2, 3, 4]
    assert parse_int_list("1..3") == [1, 2, 3]
    assert parse_int_list("2,3,5") == [2, 3, 5]
    assert parse_int_list("7") == [7]
    with pytest.raises(ValueError):
        parse_int_list("4-1")


@pytest.mark.parametrize("argv", COMMANDS, ids=[c[0] + str(i) for i, c in enumerate(COMMANDS)])
def test_deterministic_across_runs_and_workers(argv, tmp_path):
    c1, a = run(argv + ["--workers", "1"], tmp_path, "a.csv")
    c2, b = run(argv + ["--workers", "1"], tmp_path, "b.csv")
    c3, c = run(argv + ["--workers", "4"], tmp_path, "c.csv")
    assert c1 == c2 == c3 == 0
    assert a == b == c
    assert a.startswith("# ffdyn ")


def test_avg_periodic_rows(tmp_path):
    code, text = run(["avg-periodic", "--p", "3", "--d", "2", "--j-range", "1-2"], tmp_path)
    assert code == 0
    header, *data = rows(text)
    assert [r[header.index("map_count")] for r in data] == ["216", "58320"]
    assert data[0][header.index("mean_num")] + "/" + data[0][header.index("mean_den")] == "19/36"
    code, text = run(["avg-periodic", "--p", "3", "--d", "2", "--kind", "polynomial"], tmp_path)
    header, *data = rows(text)
    assert data[0][header.index("map_count")] == "18"


def test_verify_counts_pass_and_skip(tmp_path):
    code, text = run(["verify-counts", "--p", "2", "--d", "2", "--kind", "rational"], tmp_path)
    assert code == 0 and rows(text)[1] == ["2", "2", "rational", "24", "24", "PASS"]
    code, text = run(["verify-counts", "--p", "3", "--d", "3", "--kind", "polynomial"], tmp_path)
    assert rows(text)[1] == ["3", "3", "polynomial", "54", "54", "PASS"]
    code, text = run(["verify-counts", "--p", "5", "--d", "3", "--kind", "rational", "--budget", "1000"], tmp_path)
    assert code == 0 and rows(text)[1][-1] == "SKIPPED"


def test_fix_wreath_values(tmp_path):
    code, text = run(["fix-wreath", "--d", "2", "--n", "1-3"], tmp_path)
    header, *data = rows(text)
    assert [(r[2], r[3], r[7]) for r in data] == [("1", "2", "true"), ("3", "8", "true"), ("39", "128", "true")]
    code, text = run(["fix-wreath", "--d", "5", "--n", "30"], tmp_path)
    assert rows(text)[1][6] == "recursion-upper" and rows(text)[1][7] == "true"


def test_image_decay_single_map(tmp_path):
    code, text = run(["image-decay", "--p", "3", "--map", "2; 0 0 1; 1", "--n", "3"], tmp_path)
    assert code == 0
    assert [r[2] for r in rows(text)[1:]] == ["4", "3", "3"]


def test_bound_check_summary(tmp_path):
    code, text = run(["bound-check", "--p", "5", "--d", "2", "--n", "1"], tmp_path)
    assert code == 0
    assert len(rows(text)) == 101
    assert "satisfied_abs_fraction=1/1" in text.splitlines()[-1]


def test_bad_locus_row(tmp_path):
    code, text = run(["bad-locus", "--p", "3", "--d", "2"], tmp_path)
    assert rows(text)[1] == ["3", "1", "2", "rational", "729", "0", "297", "1728", "true"]


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# quadratic polys\np = 3\nkind = polynomial\nd=2\n")
    code, a = run(["avg-periodic", "--config", str(cfg)], tmp_path, "a.csv")
    assert code == 0 and rows(a)[1][3] == "polynomial" and rows(a)[1][0] == "3"
    code, b = run(["avg-periodic", "--config", str(cfg), "--p", "5"], tmp_path, "b.csv")
    assert rows(b)[1][0] == "5"
    # the config path itself is not part of the recorded configuration
    code, c = run(["avg-periodic", "--p", "3", "--kind", "polynomial", "--d", "2"], tmp_path, "c.csv")
    assert a == c
    cfg.write_text("bogus = 1\n")
    assert main(["avg-periodic", "--config", str(cfg)]) == 2


def test_exit_codes(tmp_path, capsys):
    assert main(["avg-periodic", "--p", "4"]) == 2
    assert main(["avg-periodic", "--d", "1"]) == 2
    assert main(["nonsense"]) == 2
    assert main(["bound-check", "--p", "2", "--d", "2"]) == 2
    assert main(["image-decay", "--p", "3", "--map", "2; 0 0 1"]) == 2
    assert main(["avg-periodic", "--p", "5", "--j", "2", "--mode", "exhaustive", "--budget", "1000"]) == 3
    assert main(["bad-locus", "--p", "5", "--j", "2", "--budget", "1e4"]) == 3
    capsys.readouterr()
    assert main(["avg-periodic", "--p", "2", "--d", "2"]) == 0
    assert "warning" in capsys.readouterr().err


def test_auto_mode_falls_back_to_sampling(tmp_path):
    code, text = run(["avg-periodic", "--p", "5", "--j", "2", "--budget", "1000", "--samples", "200"], tmp_path)
    assert code == 0 and rows(text)[1][4] == "sampled"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ffdyn", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and "ffdyn 0.1.0" in res.stdout
