import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from quadalg import corpus
from quadalg import nonhomogeneous as nh
from quadalg.cli.main import run
from quadalg.cli.parser import (
    EmptyGenerators,
    ParseError,
    UnboundIdentifier,
    parse,
    parse_representation,
    print_presentation,
)
from quadalg.errors import ConditionIFailed, DivisionByZero

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def test_parse_twisted_file_matches_constructor():
    assert parse((CORPUS / "twisted_su2.quad").read_text()) == corpus.twisted_su2(2)
    assert parse((CORPUS / "twisted_su2_homogeneous.quad").read_text()).quad == corpus.twisted_su2_quadratic(2)


def test_parse_inline_twisted():
    text = """let nu=2
generators g0 g1 g2
relation nu*g2.g0 - (1/nu)*g0.g2 = g1
relation nu^2*g1.g0 - (1/nu^2)*g0.g1 = (1 + nu^2)*g0
relation nu^2*g2.g1 - (1/nu^2)*g1.g2 = (1 + nu^2)*g2
"""
    p = parse(text)
    ref = corpus.twisted_su2(2)
    assert p.R == ref.R and p.psi1 == ref.psi1


def test_parse_symmetric():
    p = parse("generators x y\nrelation x.y - y.x\n")
    assert p.is_homogeneous
    assert p.quad == corpus.symmetric(2, ("x", "y"))


def test_parse_corpus_files_match_constructors():
    pairs = {
        "sl2.quad": corpus.sl2(),
        "heisenberg.quad": corpus.heisenberg(),
        "idempotent.quad": corpus.idempotent(),
        "clifford2.quad": nh.clifford([[1, 0], [0, 1]], labels=["e0", "e1"]),
    }
    for name, ref in pairs.items():
        p = parse((CORPUS / name).read_text())
        assert (p.R, p.psi1, p.psi0) == (ref.R, ref.psi1, ref.psi0), name


def test_expression_grammar():
    p = parse("let a = (2 - 1/2)^2 * 4\ngenerators x y\nrelation a*x*y + -(x.x) = 3/4 * y.x - 1\n")
    rel = p.relations()[0]
    # normalized: x.x pivot first
    assert rel == {0: 1, 1: -9, 2: Fraction(3, 4), 6: -1}


@pytest.mark.parametrize("text,exc", [
    ("generators x y\nrelation x\n", ConditionIFailed),
    ("generators x y\nrelation x.z\n", UnboundIdentifier),
    ("let nu = 0\ngenerators x\nrelation x.x - (1/nu)*x\n", DivisionByZero),
    ("generators\n", EmptyGenerators),
    ("relation x.x\n", ParseError),
    ("generators x\nrelation x.x.x\n", ParseError),
    ("generators x\nrelation (x.x\n", ParseError),
    ("generators x\nrelation x.x ) \n", ParseError),
    ("generators x\nrelation 2^x\n", ParseError),
    ("generators x\nrelation x.x/x\n", ParseError),
    ("generators x\nfoo bar\n", ParseError),
    ("generators x x\n", ParseError),
    ("let x = 1\ngenerators x\n", ParseError),
    ("generators x\nrelation x.x - x.x\n", ParseError),
    ("", EmptyGenerators),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse(text)


def test_syntax_error_location():
    with pytest.raises(ParseError) as e:
        parse("generators x y\n\nrelation x.y + * y\n")
    assert e.value.line == 3 and e.value.col is not None


def test_division_by_zero_is_zero_division():
    with pytest.raises(ZeroDivisionError):
        parse("let nu = 0\nlet t = 1/nu\ngenerators x\nrelation x.x\n")


@pytest.mark.parametrize("name", sorted(corpus.nonhomogeneous_corpus()))
def test_round_trip_corpus(name):
    p = corpus.nonhomogeneous_corpus()[name]
    assert parse(print_presentation(p)) == p


@pytest.mark.parametrize("path", sorted(CORPUS.glob("*.quad")), ids=lambda p: p.name)
def test_round_trip_files(path):
    p = parse(path.read_text())
    assert parse(print_presentation(p)) == p


@given(st.integers(1, 3).flatmap(lambda d: st.lists(
    st.dictionaries(st.integers(0, d * d + d), st.fractions(max_denominator=6).filter(bool), min_size=1, max_size=4),
    min_size=1, max_size=4).map(lambda rels: (d, rels))))
def test_round_trip_random(data):
    d, rels = data
    vecs = [r for r in rels if any(k < d * d for k in r)]
    if not vecs:
        return
    from quadalg.linalg import Subspace
    P = Subspace.span(nh.f2_dim(d), vecs)
    try:
        p = nh.from_general_subspace(P, d)
    except ConditionIFailed:
        return
    assert parse(print_presentation(p)) == p


def test_representation_file():
    rep = parse_representation((CORPUS / "sl2_adjoint.rep").read_text(), ("h", "e", "f"))
    assert rep.dim_v == 3 and rep.side == "left"
    from quadalg.complexes import Representation
    assert rep == Representation.adjoint(corpus.sl2_constants())
    triv = parse_representation("dimension 2\nside right\n", ("a",))
    assert triv.side == "right" and triv.matrices[0].is_zero()
    for bad in ("rep h = [[1]]\n", "dimension 1\nrep q = [[1]]\n", "dimension 2\nrep h = [[1, 2]]\n",
                "dimension x\n", "dimension 1\nside up\n"):
        with pytest.raises(ParseError):
            parse_representation(bad, ("h",))


# ----------------------------------------------------------------- commands

def _run(*args):
    code, out = run([str(a) for a in args])
    return code, out


def test_dims_command():
    code, out = _run("dims", CORPUS / "symmetric3.quad", "--max", 4)
    assert code == 0 and "[1, 3, 6, 10, 15]" in out
    code, out = _run("dims", CORPUS / "symmetric3.quad", "--max", 4, "--json")
    data = json.loads(out)
    assert data["format"] == 1 and data["dims"] == [1, 3, 6, 10, 15]
    assert len(data["input_sha256"]) == 64


def test_classify_labels_and_codes():
    code, out = _run("classify", CORPUS / "twisted_su2.quad")
    assert code == 0 and out.startswith("classify: Lie prealgebra (certified to degree 6)")
    code, out = _run("classify", CORPUS / "idempotent.quad")
    assert code == 0
    assert "prealgebra, quadratic-linear Koszul, NOT Lie prealgebra (fails Gorenstein)" in out
    code, out = _run("classify", CORPUS / "non_jacobi.quad")
    assert code == 1 and "not a prealgebra" in out


def test_verdict_exit_codes():
    assert _run("pbw", CORPUS / "sl2.quad", "--max", 4)[0] == 0
    assert _run("pbw", CORPUS / "non_jacobi.quad")[0] == 1
    assert _run("cdga", CORPUS / "non_jacobi.quad")[0] == 1
    assert _run("koszul", CORPUS / "trivial2.quad")[0] == 0
    assert _run("gorenstein", CORPUS / "trivial2.quad")[0] == 1
    assert _run("frobenius", CORPUS / "idempotent.quad")[0] == 1
    assert _run("frobenius", CORPUS / "symmetric3.quad")[0] == 0
    assert _run("frobenius", CORPUS / "symmetric3.quad", "--primal")[0] == 1


def test_frobenius_twisted_output():
    code, out = _run("frobenius", CORPUS / "twisted_su2.quad", "--json")
    data = json.loads(out)
    assert data["nakayama"] == {"n0*": "64*n0*", "n1*": "n1*", "n2*": "1/64*n2*"}


def test_cdga_output():
    code, out = _run("cdga", CORPUS / "clifford2.quad", "--json")
    data = json.loads(out)
    assert code == 0 and data["curvature"] == "-e0*.e0* - e1*.e1*"
    assert set(data["differential"].values()) == {"0"}


def test_cohomology_command(tmp_path):
    code, out = _run("cohomology", CORPUS / "sl2.quad")
    assert code == 0 and "[1, 0, 0, 1]" in out
    code, out = _run("cohomology", CORPUS / "heisenberg.quad", "--json")
    assert json.loads(out)["cohomology"] == [1, 2, 2, 1]
    code, out = _run("cohomology", CORPUS / "sl2.quad", "--rep", CORPUS / "sl2_adjoint.rep")
    assert code == 0 and "[0, 0, 0, 0]" in out
    bad = tmp_path / "bad.rep"
    bad.write_text("dimension 1\nrep h = [[1]]\n")
    assert _run("cohomology", CORPUS / "sl2.quad", "--rep", bad)[0] == 2


def test_dual_command_output_parses():
    code, out = _run("dual", CORPUS / "symmetric3.quad", "--json")
    text = json.loads(out)["presentation"]
    d = parse(text)
    assert d.R.dim == 6


def test_input_errors(tmp_path):
    f = tmp_path / "bad.quad"
    f.write_text("generators x\nrelation x\n")
    code, out = _run("dims", f)
    assert code == 2 and "ConditionIFailed" in out
    code, out = _run("dims", tmp_path / "missing.quad")
    assert code == 2
    code, out = _run("dims", f, "--json")
    assert json.loads(out)["error"] == "ConditionIFailed"
    assert _run("dims", CORPUS / "sl2.quad", "--max", 1)[0] == 2


def test_reports_deterministic():
    for cmd in ("dims", "koszul", "gorenstein", "pbw", "cdga", "frobenius", "classify", "cohomology", "dual"):
        a = _run(cmd, CORPUS / "twisted_su2.quad", "--json", "--max", 4)
        b = _run(cmd, CORPUS / "twisted_su2.quad", "--json", "--max", 4)
        assert a == b


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "quadalg.cli.main", "dims", str(CORPUS / "symmetric3.quad"),
                          "--max", "3"], capture_output=True, text=True)
    assert out.returncode == 0 and "[1, 3, 6, 10]" in out.stdout
