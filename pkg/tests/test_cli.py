import os
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from ietabel.cli import main

TORSION = ["transposition", "(-1, 1)", "(-7, 5)", "(-15, 11)"]


@pytest.fixture
def ctx(tmp_path):
    path = tmp_path / "q2.ctx"
    assert main(["ctx", "new", "--sqrt", "2", "-o", str(path)]) == 0
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_example(tmp_path, ctx, name, *params):
    path = tmp_path / f"{name}.elem"
    assert main(["example", ctx, name, *params, "-o", str(path)]) == 0
    return str(path)


def test_context_file(ctx):
    with open(ctx, encoding="utf-8") as fh:
        assert fh.read() == "minpoly: -2 0 1\ninterval: 1 2\ngen: (1, 0)\ngen: (0, 1)\n"


def test_round_trip_is_byte_identical(tmp_path, ctx, capsys):
    path = write_example(tmp_path, ctx, *TORSION)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    code, out, _ = run(capsys, "elem", "check", ctx, path)
    assert code == 0 and out == text


def test_invariants(tmp_path, ctx, capsys):
    t = write_example(tmp_path, ctx, *TORSION)
    assert run(capsys, "invariant", ctx, t, "eps")[1] == "e1∧e1 + e2∧e2 (torsion)\n"
    assert run(capsys, "invariant", ctx, t, "saf")[1] == "0\n"
    ident = write_example(tmp_path, ctx, "identity")
    assert run(capsys, "invariant", ctx, ident, "saf")[1] == "0\n"
    refl = write_example(tmp_path, ctx, "reflection", "0", "(-2, 2)")
    assert run(capsys, "invariant", ctx, refl, "psi")[1] == "e1∧e1 + e2∧e2 [mod 2]\n"
    assert run(capsys, "invariant", ctx, refl, "epsflip")[1] == "0\n"


def test_membership(tmp_path, ctx, capsys):
    t = write_example(tmp_path, ctx, *TORSION)
    assert run(capsys, "member", ctx, t, "derived")[1] == "false (ε = e1∧e1+e2∧e2)\n"
    assert run(capsys, "member", ctx, t, "kerphi")[1].startswith("true")
    refl = write_example(tmp_path, ctx, "reflection", "0", "(12, -8)")
    assert run(capsys, "member", ctx, refl, "derived")[1].startswith("true")


def test_decompose(tmp_path, ctx, capsys):
    ident = write_example(tmp_path, ctx, "identity")
    assert run(capsys, "decompose", ctx, ident, "rotations") == (0, "", "")
    t = write_example(tmp_path, ctx, *TORSION)
    for which in ("rotations", "balanced", "small:1/4"):
        code, out, _ = run(capsys, "decompose", ctx, t, which)
        assert code == 0 and out.startswith("kind: iet")
        factors = tmp_path / "factors.elem"
        factors.write_text(out, encoding="utf-8")
        with open(t, encoding="utf-8") as fh:
            assert run(capsys, "compose", ctx, str(factors))[1] == fh.read()


def test_order_of_the_construction(tmp_path, ctx, capsys):
    pair = write_example(tmp_path, ctx, "two-transpositions-order", "10")
    code, product, _ = run(capsys, "compose", ctx, pair)
    assert code == 0
    path = tmp_path / "product.elem"
    path.write_text(product, encoding="utf-8")
    assert run(capsys, "order", ctx, str(path)) == (0, "10\n", "")


def test_inverse(tmp_path, ctx, capsys):
    rot = write_example(tmp_path, ctx, "rotation", "(2, -1)", "(-1, 1)")
    code, out, _ = run(capsys, "inverse", ctx, rot)
    assert code == 0
    inv = tmp_path / "inv.elem"
    inv.write_text(out, encoding="utf-8")
    assert run(capsys, "compose", ctx, rot, str(inv))[1] == "kind: iet\nalpha: (1, 0)\ntau: 1\n"
    assert run(capsys, "order", ctx, rot)[1] == "infinite\n"


def test_exit_codes(tmp_path, ctx, capsys, monkeypatch):
    bad = tmp_path / "bad.elem"
    bad.write_text("kind: iet\nalpha: 1/2; 1/2\ntau: 1 x\n", encoding="utf-8")
    assert run(capsys, "elem", "check", ctx, str(bad))[0] == 2
    assert run(capsys, "elem", "check", ctx, str(tmp_path / "missing"))[0] == 2
    assert run(capsys, "example", ctx, "nonsense")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["invariant"])
    assert exc.value.code == 2
    wrong = tmp_path / "wrong.elem"
    wrong.write_text("kind: iet\nalpha: (2, -1); (2, -1)\ntau: 1 2\n", encoding="utf-8")
    assert run(capsys, "elem", "check", ctx, str(wrong))[0] == 3
    refl = write_example(tmp_path, ctx, "reflection", "0", "(-1, 1)")
    assert run(capsys, "invariant", ctx, refl, "saf")[0] == 3
    assert run(capsys, "example", ctx, "transposition", "(-1, 1)", "0", "(-2, 2)")[0] == 3
    pair = write_example(tmp_path, ctx, "two-transpositions-order", "12")
    product = tmp_path / "p.elem"
    product.write_text(run(capsys, "compose", ctx, pair)[1], encoding="utf-8")
    monkeypatch.setenv("IETABEL_BUDGET", "2")
    assert run(capsys, "order", ctx, str(product)) == (4, "unknown (budget 2)\n", "")


def test_svg_is_deterministic(tmp_path, ctx, capsys):
    f = write_example(tmp_path, ctx, *TORSION)
    first = run(capsys, "render", ctx, f)[1]
    second = run(capsys, "render", ctx, f)[1]
    assert first == second
    root = ET.fromstring(first.encode("utf-8"))
    assert root.tag.endswith("svg") and root.get("version") == "1.1"
    out = tmp_path / "f.svg"
    assert main(["render", ctx, f, "-o", str(out)]) == 0
    assert out.read_text(encoding="utf-8") == first


def test_module_entry_point(tmp_path, ctx):
    env = dict(os.environ, IETABEL_BUDGET="")
    proc = subprocess.run([sys.executable, "-m", "ietabel", "selftest", "--quick"], capture_output=True,
                          text=True, env=env, timeout=600)
    lines = proc.stdout.splitlines()
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert len(lines) == 16 and all(line.startswith("PASS") for line in lines)
