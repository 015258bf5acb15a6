import json
import subprocess
import sys
from fractions import Fraction

import pytest

from svfactor.cli import main
from svfactor.core import Matrix, Vector
from svfactor.factorization import canonical_form
from svfactor.matrixio import parse_json
from svfactor.svdecomp import SVParts, recompose

from conftest import FIXTURES, WILSON, Z, load


def fx(name):
    return str(FIXTURES / name)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, text, name="m.txt"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_decompose_wilson(capsys):
    code, out, _ = run(capsys, "decompose", fx("wilson.txt"))
    assert code == 0
    assert "weight: 119/16" in out
    assert "a: (-27/16, 9/16, 13/16, 5/16)" in out
    assert "b: (-27/16, 9/16, 13/16, 5/16)" in out


def test_decompose_identity_and_z(capsys):
    _, out, _ = run(capsys, "decompose", fx("identity4.txt"))
    assert "weight: 1/4" in out and "a: (0, 0, 0, 0)" in out
    _, out, _ = run(capsys, "decompose", fx("z.txt"))
    assert "weight: 19/16" in out


def test_decompose_json_round_trip(capsys):
    for name in ("wilson.txt", "z.txt", "zprime.txt"):
        code, out, _ = run(capsys, "decompose", fx(name), "--json")
        doc = json.loads(out)
        assert code == 0 and doc["command"] == "decompose"
        parts = SVParts(
            Vector(Fraction(v) for v in doc["a"]),
            Vector(Fraction(v) for v in doc["b"]),
            parse_json(json.dumps(doc["m0"])),
            Fraction(doc["weight"]),
        )
        assert recompose(parts) == load(name)


def test_parse_error_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, "decompose", write(tmp_path, "1 2\n3 q\n"))
    assert code == 2
    assert "line 2, column 3" in err
    code, _, _ = run(capsys, "decompose", str(tmp_path / "missing.txt"))
    assert code == 2


def test_non_square_exit_code(capsys, tmp_path):
    code, _, _ = run(capsys, "decompose", write(tmp_path, "1 2 3\n4 5 6\n"))
    assert code == 3


def test_obstruct(capsys):
    code, out, _ = run(capsys, "obstruct", fx("wilson.txt"))
    assert code == 0
    assert out == "2*w^2 + x1^2 + x1*x2 + x1*x3 + x2^2 + x2*x3 + x3^2 = 952\n"
    _, out, _ = run(capsys, "obstruct", fx("identity4.txt"))
    assert out.strip().endswith("= 32")
    code, _, _ = run(capsys, "obstruct", fx("z.txt"))
    assert code == 3


def test_obstruct_unsatisfiable(capsys, tmp_path):
    code, out, _ = run(capsys, "obstruct", write(tmp_path, "-1 0\n0 -1\n"))
    assert code == 4 and "unsatisfiable" in out


def test_obstruct_json(capsys):
    _, out, _ = run(capsys, "obstruct", fx("wilson.txt"), "--json")
    form = json.loads(out)["form"]
    assert form["target"] == 952 and form["gram_coeff"] == 2


def test_solve_wilson(capsys):
    code, out, _ = run(capsys, "solve", fx("wilson.txt"), "--count", "--threads", "1")
    assert code == 0 and out == "1728\n"
    _, out, _ = run(capsys, "solve", fx("wilson.txt"), "--threads", "1")
    lines = out.splitlines()
    assert len(lines) == 1728
    assert "19 17 1 -7" in lines and "18 -8 20 -12" in lines and "19 11 7 -1" in lines


def test_solve_target_zero(capsys, tmp_path):
    code, out, _ = run(capsys, "solve", write(tmp_path, "0 0\n0 0\n"))
    assert code == 0 and out == "0 0\n"


def test_solve_square_needs_box(capsys):
    code, _, _ = run(capsys, "solve", fx("identity4.txt"), "--mode", "square")
    assert code == 3
    code, out, _ = run(capsys, "solve", fx("identity4.txt"), "--mode", "square", "--box", "0")
    assert code == 0 and out.strip() == ""


def test_solve_is_thread_independent(capsys):
    _, one, _ = run(capsys, "solve", fx("identity4.txt"), "--threads", "1")
    _, two, _ = run(capsys, "solve", fx("identity4.txt"), "--threads", "2")
    assert one == two and one.count("\n") == 15


def test_factor_single_solution(capsys):
    code, out, _ = run(capsys, "factor", fx("wilson.txt"), "--solution", "19 17 1 -7", "--json")
    assert code == 0
    factors = [parse_json(json.dumps(d)) for d in json.loads(out)["factors"]]
    assert canonical_form(Z) in {canonical_form(f) for f in factors}
    assert all(f.T @ f == WILSON for f in factors)


def test_factor_bad_solution(capsys):
    code, _, err = run(capsys, "factor", fx("wilson.txt"), "--solution", "1 0 0 0")
    assert code == 5 and "obstruction" in err
    code, _, _ = run(capsys, "factor", fx("wilson.txt"), "--solution", "1 0")
    assert code == 3
    code, _, _ = run(capsys, "factor", fx("wilson.txt"), "--solution", "a b c d")
    assert code == 2
    code, _, _ = run(capsys, "factor", fx("z.txt"), "--all")
    assert code == 3


def test_factor_unsatisfiable_and_infertile(capsys, tmp_path):
    # diag(1, 2) reduces to w^2 + x1^2 = 6, which has no integer points
    code, out, _ = run(capsys, "factor", write(tmp_path, "1 0\n0 2\n"), "--all")
    assert code == 4 and out.startswith("solutions=0")
    # det = 2 is not a rational square, so the points it has never lift
    code, out, _ = run(capsys, "factor", write(tmp_path, "1 -1\n-1 3\n"), "--all")
    assert code == 5 and out.startswith("solutions=3 fertile=0 classes=0")
    code, out, _ = run(capsys, "factor", write(tmp_path, "1 -1\n-1 3\n"), "--solution", "2 0")
    assert code == 5 and out == "# no factor\n"


def test_factor_all_identity(capsys):
    code, out, _ = run(capsys, "factor", fx("identity4.txt"), "--all")
    assert code == 0
    assert out.startswith("solutions=15 fertile=15 classes=3")
    assert "-1  0  0  0" in out


def test_verify(capsys, tmp_path):
    for path in (fx("wilson.txt"), fx("z.txt"), write(tmp_path, "1 2/3 0\n-4 5 1\n7 0 -2\n")):
        code, out, _ = run(capsys, "verify", path)
        assert code == 0, out
        assert "FAIL" not in out and out.count("PASS") >= 8


def test_det_and_adjugate(capsys):
    _, out, _ = run(capsys, "det", fx("wilson.txt"))
    assert out == "det: 1\ndet_via_decomposition: 1\n"
    _, out, _ = run(capsys, "adjugate", fx("w0.txt"), "--json")
    adj = parse_json(json.dumps(json.loads(out)["adjugate"]))
    assert adj == Matrix.ones(4) * Fraction(3, 8)


def test_colatin(capsys, tmp_path):
    zv = write(tmp_path, "5/8 7/8 11/8 11/8\n-3/8 -1/8 3/8 3/8\n-7/8 -5/8 -1/8 -1/8\n-9/8 -7/8 -3/8 -3/8\n")
    code, out, _ = run(capsys, "colatin", zv, "--json")
    assert code == 0
    assert json.loads(out) == {"command": "colatin", "colatin_fast": True, "colatin_transversals": True}
    _, out, _ = run(capsys, "colatin", fx("wilson.txt"))
    assert "False" in out


def test_latin(capsys):
    code, out, _ = run(capsys, "latin", "-n", "4")
    assert code == 0 and out == "1 2 3 4\n2 3 4 1\n3 4 1 2\n4 1 2 3\n"
    code, out, _ = run(capsys, "latin", "--kind", "corner", "-n", "5", "--json")
    cells = json.loads(out)["cells"]
    assert cells[0][:2] == [1, 2] and cells[1][:2] == [2, 1]
    code, _, err = run(capsys, "latin", "--kind", "corner", "-n", "3")
    assert code == 3 and "3" in err


def test_stdin_and_module_entry_point():
    text = (FIXTURES / "wilson.txt").read_text()
    outs = [
        subprocess.run(
            [sys.executable, "-m", "svfactor", "obstruct", "-"],
            input=text, capture_output=True, text=True, check=True,
        ).stdout
        for _ in range(2)
    ]
    assert outs[0] == outs[1]
    assert outs[0].startswith("2*w^2")


@pytest.mark.parametrize("cmd", ["decompose", "det", "verify", "adjugate"])
def test_output_is_deterministic(capsys, cmd):
    _, first, _ = run(capsys, cmd, fx("zprime.txt"), "--json")
    _, second, _ = run(capsys, cmd, fx("zprime.txt"), "--json")
    assert first == second
