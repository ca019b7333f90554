import subprocess
import sys

import pytest

from clusterword.cli import dispatch

U2 = ["--semigroup", "u2.sgp"]


def run(*argv):
    code, out = dispatch(list(argv))
    return code, out.strip() + "\n" if out.strip() else ""


def test_order_type_spec_string():
    code, out = run("order", "type", "((a)^w b)^w")
    assert code == 0
    assert out.strip() == "(w+1+w*)·w + 1 + (w+1+w*)·w* + F(1)"


def test_term_equal():
    code, out = run("term", "equal", "(a)^w", "a(a)^w", "--oracle-size", "8")
    assert (code, out.strip()) == (0, "EQUAL (normal forms identical; corpus agrees)")
    code, out = run("term", "equal", "(a)^w", "(a)^w b", "--oracle-size", "6")
    assert code == 1 and out.startswith("DISTINCT witness")


def test_recognize_exit_codes():
    assert run("recognize", "(a)^w", *U2, "--map", "a=2", "--element", "1") == (1, "NOT RECOGNIZED\n")
    assert run("recognize", "(a)^w", *U2, "--map", "a=2", "--element", "2") == (0, "RECOGNIZED\n")


def test_term_commands():
    assert run("term", "normalize", "((a)^w)^w", "-v") == (0, "(a)^w\nrules R1\n")
    code, out = run("term", "parse", "((ab)^w)^w")
    assert code == 0 and out.splitlines()[0] == "((ab)^w)^w"
    assert run("term", "eval", "(a)^w", *U2, "--map", "a=2") == (0, "2 (#2)\n")
    code, out = run("term", "factors", "a((b)^w a)^w", "--length", "3")
    assert out.splitlines() == ["1 2 a b", "2 3 ab ba bb", "3 4 abb bab bba bbb"]


def test_order_commands():
    assert run("order", "window", "((a)^w b)^w", "--left", "5", "--right", "5") == (0, "aaaaa\naaaab\n")
    code, out = run("order", "stationary", "((a)^w b)^w")
    assert out.splitlines() == ["C jrep ((a)^w b)^w", "Fn.L.C jrep (a)^w", "Bn.L.C jrep (a)^w"]
    assert run("order", "clustered", "(a)^w") == (0, "CLUSTERED\n")
    code, out = run("order", "build", "a(b)^w")
    assert code == 0 and out.splitlines()[-1] == "a bbb… • …bbb |1"


def test_sgp_commands():
    code, out = run("sgp", "info", "--semigroup", "U2")
    assert code == 0 and "aperiodic True" in out and "unambiguous True" in out
    code, out = run("sgp", "green", *U2)
    assert out.splitlines()[-1] == "idempotents: 1,2,I"
    code, out = run("sgp", "check", "--semigroup", "B2")
    assert "equidivisible false (x=a y=b u=a v=bab)" in out
    code, out = run("sgp", "expand", "--semigroup", "LRB2")
    assert out.splitlines()[0] == "unambiguous cover of LRB2: size 6, rounds 1"


def test_beta_commands():
    code, out = run("beta", "complexity", "--expansion", "(10)", "--length", "4")
    assert [line.split()[:2] for line in out.splitlines()] == [["1", "2"], ["2", "3"], ["3", "5"], ["4", "8"]]
    assert run("beta", "entropy", "--expansion", "(10)", "--length", "20") == (0, "0.705618\n")
    code, out = run("beta", "language", "--expansion", "(10)", "--length", "3")
    assert out.split() == ["000", "001", "010", "100", "101"]


def test_worthy_and_corpus():
    code, out = run("worthy", "ab", "--max-size", "4", "--count", "1")
    assert code == 0 and out.splitlines()[-1] == "overall | PASS-at-scale"
    code, out = run("corpus", "generate", "--seed", "1", "--max-size", "8", "--count", "2")
    assert len(out.splitlines()) == 16


@pytest.mark.parametrize("argv", [
    ["term", "parse", "(a"],
    ["sgp", "info", "--semigroup", "/nonexistent"],
    ["term", "eval", "ab", "--semigroup", "u2.sgp", "--map", "a=2"],
    ["recognize", "(a)^w", "--semigroup", "LRB2", "--map", "a=1", "--element", "1"],
    ["nosuch"],
])
def test_usage_errors(argv):
    code, out = run(*argv)
    assert code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "clusterword", "order", "type", "(a)^w"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "w + 1 + w* + F(1)"
