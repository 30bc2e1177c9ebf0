import csv
import io

import pytest

from slabmatrix.cli import BENCH_COLUMNS, EXIT_FAIL, EXIT_INPUT, EXIT_OK, bench_rows, main
from slabmatrix.core import SlabDecomposition, format_slab_text, parse_slab_text
from slabmatrix.oracle import parse_dense_text, parse_witness_text, verify_contraction_width
from fixtures import QUERY_EX_K, SWEEP_EX_K, ASSEMBLY_EX_R, REBUILD_EX_P


def run(*argv):
    out = io.StringIO()
    rc = main([str(a) for a in argv], out)
    return rc, out.getvalue()


def slab_file(tmp_path, name, n, slabs):
    p = tmp_path / name
    p.write_text(format_slab_text(SlabDecomposition(n, slabs)))
    return p


def test_decompose_sweep_example(tmp_path):
    src = slab_file(tmp_path, "k.txt", 4, SWEEP_EX_K)
    dst = tmp_path / "r.txt"
    rc, text = run("decompose", src, "-o", dst)
    assert rc == EXIT_OK and text.strip() == "K=4 R=5"
    first = dst.read_text()
    assert parse_slab_text(first).as_set() == ASSEMBLY_EX_R
    again = tmp_path / "r2.txt"
    assert run("decompose", dst, "-o", again)[0] == EXIT_OK
    assert again.read_text() == first


def test_decompose_empty_and_stdout(tmp_path):
    src = slab_file(tmp_path, "e.txt", 3, [])
    rc, text = run("decompose", src)
    assert rc == EXIT_OK and text == "3 0\n"


def test_decompose_input_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("4 1\n1 2 x 4\n")
    rc, _ = run("decompose", bad)
    assert rc == EXIT_INPUT
    over = slab_file(tmp_path, "over.txt", 3, [(1, 2, 1, 2), (2, 3, 2, 3)])
    assert run("decompose", over)[0] == EXIT_INPUT
    assert run("decompose", tmp_path / "missing.txt")[0] == EXIT_INPUT


def test_decompose_error_messages(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("4 1\n1 2 x 4\n")
    run("decompose", bad)
    assert "line 2" in capsys.readouterr().err
    over = slab_file(tmp_path, "over.txt", 3, [(1, 2, 1, 2), (2, 3, 2, 3)])
    run("decompose", over)
    err = capsys.readouterr().err
    assert "(1, 2, 1, 2)" in err and "(2, 3, 2, 3)" in err


@pytest.mark.parametrize("engine", ["amortized", "worstcase", "dense"])
def test_run_examples(tmp_path, engine):
    init2 = slab_file(tmp_path, "f2.txt", 5, QUERY_EX_K)
    t2 = tmp_path / "t2.txt"
    t2.write_text("Q 3 4\nQ 2 2\n")
    assert run("run", init2, t2, "--engine", engine) == (EXIT_OK, "1\n0\n")
    init5 = slab_file(tmp_path, "f5.txt", 5, REBUILD_EX_P)
    t5 = tmp_path / "t5.txt"
    t5.write_text("U 1 2\nU 4 4\nU 5 2\nQ 1 2\nQ 4 4\nQ 5 2\n")
    assert run("run", init5, t5, "--engine", engine, "--threshold", "2") == (EXIT_OK, "1\n1\n0\n")
    empty = tmp_path / "t0.txt"
    empty.write_text("")
    assert run("run", init5, empty, "--engine", engine) == (EXIT_OK, "")


def test_run_out_of_range_names_op(tmp_path, capsys):
    init = slab_file(tmp_path, "f.txt", 5, QUERY_EX_K)
    t = tmp_path / "t.txt"
    t.write_text("Q 1 1\nU 6 1\n")
    assert run("run", init, t)[0] == EXIT_INPUT
    assert "op 1" in capsys.readouterr().err


def test_run_csv(tmp_path):
    init = slab_file(tmp_path, "f.txt", 5, QUERY_EX_K)
    t = tmp_path / "t.txt"
    t.write_text("U 1 1\nQ 1 1\nU 2 2\n")
    out_csv = tmp_path / "w.csv"
    rc, _ = run("run", init, t, "--engine", "worstcase", "--epoch", "1", "--csv", out_csv)
    rows = list(csv.reader(out_csv.open()))
    assert rc == EXIT_OK and rows[0] == ["update", "work_units"] and len(rows) == 3


def test_verify_oracle(tmp_path):
    init = tmp_path / "k.txt"
    trace = tmp_path / "t.txt"
    assert run("gen", "slabs", "--n", 12, "--k", 20, "--seed", 3, "-o", init)[0] == EXIT_OK
    assert run("gen", "trace", "--n", 12, "--ops", 300, "--seed", 3, "-o", trace)[0] == EXIT_OK
    for engine in ("amortized", "worstcase"):
        rc, text = run("verify", "oracle", init, trace, "--engine", engine, "--threshold", 3,
                       "--epoch", 2)
        assert rc == EXIT_OK and text.startswith("PASS")


def test_verify_witness(tmp_path):
    m, w = tmp_path / "m.txt", tmp_path / "w.txt"
    rc, _ = run("gen", "width", "--n", 10, "--d", 2, "--seed", 4, "-o", m, "--witness", w)
    assert rc == EXIT_OK
    width = verify_contraction_width(parse_dense_text(m.read_text()),
                                     parse_witness_text(w.read_text()))
    rc, text = run("verify", "witness", m, w, "--d", 2)
    assert rc == EXIT_OK and text.startswith("PASS")
    if width > 0:
        rc, text = run("verify", "witness", m, w, "--d", width - 1)
        assert rc == EXIT_FAIL and text.startswith("FAIL")


def test_verify_canonical(tmp_path):
    src = slab_file(tmp_path, "k.txt", 4, SWEEP_EX_K)
    good = slab_file(tmp_path, "r.txt", 4, sorted(ASSEMBLY_EX_R))
    assert run("verify", "canonical", src)[0] == EXIT_OK
    assert run("verify", "canonical", src, good)[0] == EXIT_OK
    # drop one cell from a slab: the cover changes
    broken = sorted(ASSEMBLY_EX_R - {(3, 4, 4, 4)}) + [(3, 3, 4, 4)]
    bad = slab_file(tmp_path, "bad.txt", 4, broken)
    rc, text = run("verify", "canonical", src, bad)
    assert rc == EXIT_FAIL and "cell (4, 4)" in text
    # same cover, not canonical
    split = sorted(ASSEMBLY_EX_R - {(2, 4, 2, 3)}) + [(2, 4, 2, 2), (2, 4, 3, 3)]
    bad2 = slab_file(tmp_path, "bad2.txt", 4, split)
    rc, text = run("verify", "canonical", src, bad2)
    assert rc == EXIT_FAIL and "not canonical" in text and "cell (2, 2)" in text


def test_gen_is_deterministic(tmp_path):
    a = run("gen", "slabs", "--n", 30, "--k", 40, "--seed", 9)[1]
    b = run("gen", "slabs", "--n", 30, "--k", 40, "--seed", 9)[1]
    assert a == b and a.startswith("30 ")
    strips = run("gen", "strips", "--n", 8, "--d", 1, "--seed", 2)[1]
    assert parse_slab_text(strips).n == 8


def test_bad_flags():
    assert run("run")[0] == EXIT_INPUT
    assert run("bench", "--threshold", "soon")[0] == EXIT_INPUT


def test_bench_small(tmp_path):
    out_csv = tmp_path / "b.csv"
    rc, _ = run("bench", "--lo", 6, "--hi", 7, "--ops", 200, "--reps", 1, "--csv", out_csv,
                "--engines", "amortized,worstcase,dense")
    rows = list(csv.DictReader(out_csv.open()))
    assert rc == EXIT_OK and len(rows) == 6
    assert list(rows[0]) == BENCH_COLUMNS
    assert {r["engine"] for r in rows} == {"amortized", "worstcase", "dense"}


def test_bench_rows_r_column_agrees():
    rows = bench_rows([64], ["amortized", "dense"], ops=100, updates=0, reps=1)
    assert rows[0]["R"] == rows[1]["R"]
    assert rows[0]["d_2n_2_plus_1"] == 127
