import subprocess
import sys

import pytest

from cubeforcing import gf
from cubeforcing.certificate import build_A
from cubeforcing.cli import main


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err

    return _run


@pytest.fixture
def dim1(tmp_path):
    path = tmp_path / "dim1.txt"
    path.write_text("000 100\n011 111\n101 001\n110 010\n")
    return path


def test_construct(run):
    assert run("construct", "--n", 2, "--kind", "B")[:2] == (0, "gfp 3 2 2\n11\n11\n")
    assert run("construct", "--n", 1, "--kind", "A")[:2] == (0, "gfp 3 1 1\n1\n")
    assert run("construct", "--n", 2, "--kind", "support")[:2] == (0, "gfp 2 2 2\n11\n11\n")
    code, out, _ = run("construct", "--n", 4, "--kind", "Ainv")
    assert code == 0 and gf.loads(out) == build_A(4)[1]
    code, out, _ = run("construct", "--n", 3, "--kind", "support", "--field", "gf3")
    assert code == 0 and out.startswith("gfp 3 4 4\n")


@pytest.mark.parametrize(
    "argv",
    [
        ("construct", "--n", 1, "--kind", "B"),
        ("construct", "--n", 0, "--kind", "A"),
        ("construct", "--n", 2, "--kind", "A", "--field", "gf2"),
        ("verify", "--n", 1),
        ("bound", "--hypercube", 1),
        ("rank",),
    ],
)
def test_invalid_arguments_exit_2(run, argv):
    code, out, err = run(*argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_argparse_usage_errors_exit_2(run):
    with pytest.raises(SystemExit) as exc:
        run("construct", "--n", 2, "--kind", "C")
    assert exc.value.code == 2


@pytest.mark.parametrize("n", [2, 5])
def test_verify(run, n):
    code, out, _ = run("verify", "--n", n)
    lines = out.splitlines()
    assert code == 0 and len(lines) == 4
    assert all(line.split()[0] == "check" and line.split()[2] == "pass" for line in lines)


def test_rank(run, tmp_path):
    assert run("rank", "--n", 5, "--kind", "B")[:2] == (0, "8\n")
    assert run("rank", "--n", 4, "--kind", "ones")[:2] == (0, "4\n")
    path = tmp_path / "m.txt"
    path.write_text("gfp 3 2 2\n12\n11\n")
    assert run("rank", "--matrix", path)[:2] == (0, "2\n")
    path.write_text("gfp 3 2 2\n12\n")
    assert run("rank", "--matrix", path)[0] == 2


def test_forcing(run, dim1, tmp_path):
    code, out, _ = run("forcing", "--hypercube", 3, "--matching", dim1)
    assert code == 0
    assert out == "matching 4 forcing 2 witness 000-100,011-111 bound 2 source rank\n"
    m2 = tmp_path / "m2.txt"
    m2.write_text("00 01\n11 10\n")
    code, out, _ = run("forcing", "--hypercube", 2, "--matching", m2)
    assert code == 0 and " forcing 1 " in out


def test_forcing_with_graph_file(run, tmp_path):
    graph = tmp_path / "c4.txt"
    graph.write_text("graph 2 2\nedge a x\nedge a y\nedge b x\nedge b y\n")
    m = tmp_path / "m.txt"
    m.write_text("a x\nb y\n")
    code, out, _ = run("forcing", "--graph", graph, "--matching", m)
    assert (code, out) == (0, "matching 2 forcing 1 witness a-x bound 0 source none\n")


@pytest.mark.parametrize(
    "content",
    ["000 100\n011 111\n", "000 100 011\n", "000 111\n011 100\n101 001\n110 010\n", "garbage"],
)
def test_forcing_rejects_bad_matching(run, tmp_path, content):
    path = tmp_path / "bad.txt"
    path.write_text(content)
    code, out, err = run("forcing", "--hypercube", 3, "--matching", path)
    assert code == 2 and out == "" and err


def test_forcing_missing_file(run, tmp_path):
    assert run("forcing", "--hypercube", 3, "--matching", tmp_path / "nope.txt")[0] == 2


def test_spectrum(run):
    assert run("spectrum", "--hypercube", 2)[:2] == (0, "1\n")
    assert run("spectrum", "--hypercube", 3)[:2] == (0, "2\n")
    assert run("spectrum", "--hypercube", 4, "--jobs", 2)[:2] == (0, "4\n")


def test_spectrum_cap(run):
    code, _, err = run("spectrum", "--hypercube", 5)
    assert code == 3 and "--cap" in err


def test_maxunique(run):
    code, out, _ = run("maxunique", "--hypercube", 3)
    order, witness = out.splitlines()
    assert code == 0 and order == "4" and len(witness.split()) == 4
    assert run("maxunique", "--hypercube", 9, "--mode", "bounded")[:2] == (0, "256\n")
    assert run("maxunique", "--hypercube", 5)[0] == 3


def test_bound(run):
    assert run("bound", "--hypercube", 6)[:2] == (0, "16\n")
    assert run("bound", "--hypercube", 2)[:2] == (0, "1\n")


def test_count_pms(run, tmp_path):
    assert run("count-pms", "--hypercube", 4)[:2] == (0, "272\n")
    assert run("count-pms", "--hypercube", 3, "--method", "permanent")[:2] == (0, "9\n")
    assert run("count-pms", "--hypercube", 6)[0] == 3
    assert run("count-pms", "--hypercube", 3, "--cap", 4)[0] == 3
    graph = tmp_path / "g.txt"
    graph.write_text("hypercube 3\nkeep 000\nkeep 001\nkeep 011\nkeep 111\n")
    assert run("count-pms", "--graph", graph)[:2] == (0, "1\n")


def test_commands_are_deterministic(run, dim1):
    cases = [
        ("construct", "--n", 4, "--kind", "B"),
        ("spectrum", "--hypercube", 3),
        ("maxunique", "--hypercube", 4),
        ("forcing", "--hypercube", 3, "--matching", dim1),
        ("verify", "--n", 6, "--no-timings"),
    ]
    for argv in cases:
        assert run(*argv) == run(*argv)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cubeforcing", "bound", "--hypercube", "4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "4\n"
