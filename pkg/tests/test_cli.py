"""The command line interface: subcommands, table output, exit codes
and the determinism of the database files."""

import subprocess
import sys

import pytest

from helpers import sorted_trits
from sdac9.classify import read_db, write_db
from sdac9.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


@pytest.fixture(scope="module")
def db4(tmp_path_factory):
    d = tmp_path_factory.mktemp("db4")
    rc = main(["classify", "--n", "4", "--out", str(d)])
    assert rc == 0
    return d


# ---------------------------------------------------------------------------
# classify

def test_classify_summary_lines(tmp_path, capsys):
    rc, out, _ = run(capsys, "classify", "--n", "3", "--out", str(tmp_path))
    assert rc == 0
    assert out.splitlines() == ["n=1 i=1 t=1", "n=2 i=1 t=2", "n=3 i=1 t=3"]
    for n in (1, 2, 3):
        assert (tmp_path / f"n{n}.sdac9").is_file()


def test_classify_tsv(tmp_path, capsys):
    rc, out, _ = run(capsys, "classify", "--n", "2", "--out", str(tmp_path),
                     "--tsv")
    assert rc == 0
    assert out.splitlines() == ["n\ti\tt", "1\t1\t1", "2\t1\t2"]


def test_classify_reruns_are_byte_identical(tmp_path, capsys):
    a = tmp_path / "a"
    b = tmp_path / "b"
    run(capsys, "classify", "--n", "4", "--out", str(a))
    run(capsys, "classify", "--n", "4", "--out", str(b), "--workers", "2")
    for n in range(1, 5):
        assert (a / f"n{n}.sdac9").read_bytes() == (b / f"n{n}.sdac9").read_bytes()


def test_classify_rejects_bad_n(capsys):
    with pytest.raises(SystemExit) as e:
        main(["classify", "--n", "0", "--out", "/tmp/x"])
    assert e.value.code == 2


def test_classify_rejects_bad_workers(capsys):
    with pytest.raises(SystemExit) as e:
        main(["classify", "--n", "2", "--out", "/tmp/x", "--workers", "0"])
    assert e.value.code == 2


# ---------------------------------------------------------------------------
# extend

def test_extend_matches_census(db4, tmp_path, capsys, census5):
    out_db = tmp_path / "n5d3.sdac9"
    rc, out, _ = run(capsys, "extend", "--db", str(db4 / "n4.sdac9"),
                     "--min-d", "2", "--out", str(out_db))
    assert rc == 0
    n, classes = read_db(out_db)
    assert n == 5
    want = [c for c in census5[5] if c.d >= 3]
    assert sorted_trits(classes) == sorted_trits(want)
    assert f"{len(want)} classes" in out


def test_extend_missing_db(capsys, tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["extend", "--db", str(tmp_path / "nope.sdac9"),
              "--min-d", "2", "--out", str(tmp_path / "o.sdac9")])
    assert e.value.code == 2


# ---------------------------------------------------------------------------
# inspect

def test_inspect_matrix(data_dir, capsys):
    rc, out, _ = run(capsys, "inspect", "--matrix",
                     str(data_dir / "len4_d3.txt"))
    assert rc == 0
    fields = dict(line.rsplit(None, 1) for line in out.splitlines())
    assert fields["n"] == "4"
    assert fields["minimum distance"] == "3"
    assert fields["aut order"] == "576"
    assert fields["connected"] == "yes"
    assert fields["weight distribution"] == "1,0,0,32,48"
    assert fields["alpha"] == "-"


def test_inspect_trits(capsys):
    rc, out, _ = run(capsys, "inspect", "--trits", "201101", "--tsv")
    assert rc == 0
    fields = dict(line.split("\t") for line in out.splitlines())
    assert fields["minimum_distance"] == "3"
    assert fields["aut_order"] == "576"


def test_inspect_family_member(data_dir, capsys):
    rc, out, _ = run(capsys, "inspect", "--matrix",
                     str(data_dir / "len9_aut288.txt"), "--tsv")
    assert rc == 0
    fields = dict(line.split("\t") for line in out.splitlines())
    assert fields["minimum_distance"] == "4"
    assert fields["aut_order"] == "288"
    assert fields["alpha"] == "16"


def test_inspect_rejects_non_self_dual(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("1 1\n0 w\n")
    with pytest.raises(SystemExit) as e:
        main(["inspect", "--matrix", str(p)])
    assert e.value.code == 1
    assert "self-dual" in capsys.readouterr().err


def test_inspect_parse_error_diagnostics(tmp_path, capsys):
    p = tmp_path / "typo.txt"
    p.write_text("w 1\n1 q\n")
    with pytest.raises(SystemExit) as e:
        main(["inspect", "--matrix", str(p)])
    assert e.value.code == 2
    err = capsys.readouterr().err
    assert "line 2" in err and "column 3" in err and "'q'" in err


def test_inspect_missing_file(capsys):
    with pytest.raises(SystemExit) as e:
        main(["inspect", "--matrix", "/nonexistent/m.txt"])
    assert e.value.code == 2


def test_inspect_bad_trits(capsys):
    with pytest.raises(SystemExit) as e:
        main(["inspect", "--trits", "0120"])  # not a triangular number
    assert e.value.code == 2


# ---------------------------------------------------------------------------
# equiv

def test_equiv_equivalent_pair(data_dir, capsys):
    rc, out, _ = run(capsys, "equiv", "--a", str(data_dir / "len4_d3.txt"),
                     "--b", str(data_dir / "len4_d3_standard.txt"))
    assert rc == 0
    assert out.strip() == "equivalent"


def test_equiv_inequivalent_pair(data_dir, tmp_path, capsys):
    p = tmp_path / "k4.txt"
    p.write_text("w 1 1 1\n1 w 1 1\n1 1 w 1\n1 1 1 w\n")
    rc, out, _ = run(capsys, "equiv", "--a", str(data_dir / "len4_d3.txt"),
                     "--b", str(p))
    assert rc == 0
    assert out.strip() == "inequivalent"
    rc2 = main(["equiv", "--a", str(data_dir / "len4_d3.txt"),
                "--b", str(p), "--expect-equivalent"])
    capsys.readouterr()
    assert rc2 == 1


def test_equiv_length_mismatch(data_dir, capsys):
    with pytest.raises(SystemExit) as e:
        main(["equiv", "--a", str(data_dir / "len4_d3.txt"),
              "--b", str(data_dir / "len8_aut2.txt")])
    assert e.value.code == 2


# ---------------------------------------------------------------------------
# mass

def test_mass_pass(db4, capsys):
    rc, out, _ = run(capsys, "mass", "--db", str(db4), "--n", "4")
    assert rc == 0
    assert "mass check: PASS" in out
    assert "distinct codes       = 91840" in out


def test_mass_fail_on_wrong_aut(tmp_path, capsys):
    (tmp_path / "n2.sdac9").write_text(
        "# sdac9 v1 n=2\n# indecomposable\n1 d=2 aut=24\n"
        "# decomposable\n0 d=1 aut=72\n")
    rc, out, _ = run(capsys, "mass", "--db", str(tmp_path), "--n", "2")
    assert rc == 1
    assert "mass check: FAIL" in out


def test_mass_missing_db(tmp_path, capsys):
    with pytest.raises(SystemExit) as e:
        main(["mass", "--db", str(tmp_path), "--n", "2"])
    assert e.value.code == 2


# ---------------------------------------------------------------------------
# stats

def test_stats_distance_table(db4, capsys):
    rc, out, _ = run(capsys, "stats", "--db", str(db4 / "n4.sdac9"), "--tsv")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "d\tindecomposable\ttotal"
    rows = {l.split("\t")[0]: l.split("\t")[1:] for l in lines[1:]}
    assert rows["3"] == ["1", "1"]
    assert rows["all"] == ["3", "7"]


def test_stats_wd_table(db4, capsys):
    rc, out, _ = run(capsys, "stats", "--db", str(db4 / "n4.sdac9"),
                     "--table", "wd", "--tsv")
    assert rc == 0
    rows = dict(l.split("\t") for l in out.splitlines()[1:])
    assert rows == {"2": "2", "3": "1", "all": "3"}


def test_stats_aut_table(db4, capsys):
    rc, out, _ = run(capsys, "stats", "--db", str(db4 / "n1.sdac9"),
                     "--table", "aut", "--tsv")
    assert rc == 0
    assert out.splitlines()[1] == "6\t1"


def test_stats_unknown_table(db4, capsys):
    with pytest.raises(SystemExit) as e:
        main(["stats", "--db", str(db4 / "n4.sdac9"), "--table", "bogus"])
    assert e.value.code == 2


# ---------------------------------------------------------------------------
# invariants across commands

def test_inspect_reproduces_db_lines(db4, capsys):
    n, classes = read_db(db4 / "n3.sdac9")
    for cls in classes:
        rc, out, _ = run(capsys, "inspect", "--trits", cls.trits, "--tsv")
        assert rc == 0
        fields = dict(line.split("\t") for line in out.splitlines())
        assert int(fields["minimum_distance"]) == cls.d
        assert int(fields["aut_order"]) == cls.aut_order


def test_usage_error_without_subcommand():
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sdac9", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "classify" in proc.stdout
