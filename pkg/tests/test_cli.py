import io

import pytest

from ualg.cli import run_cli
from ualg.fileio import emit_algebra_file, parse_algebra_file, parse_proof

from samples import SIG_F, semilattice2, z2_xor, z3_add, z4_add


def run(*argv, env=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def z2_file(tmp_path):
    path = tmp_path / "z2.alg"
    path.write_text(emit_algebra_file(SIG_F, [("Z2", z2_xor())]))
    return str(path)


@pytest.fixture
def pool_file(tmp_path):
    path = tmp_path / "pool.alg"
    path.write_text(
        emit_algebra_file(
            SIG_F,
            [("Z2", z2_xor()), ("Z3", z3_add()), ("Z4", z4_add()), ("SL", semilattice2(SIG_F))],
        )
    )
    return str(path)


def test_validate_ok(z2_file):
    code, out, err = run("validate", z2_file)
    assert code == 0
    assert out.startswith("OK")


def test_validate_bad_table(tmp_path):
    path = tmp_path / "bad.alg"
    path.write_text("signature\nop f 2\nend\nalgebra A\nsize 2\nop f 0 1 2 0\nend\n")
    code, out, err = run("validate", str(path))
    assert code == 1
    assert out.splitlines() == ["WITNESS algebra=A op=f index=2 entry 2 ≥ size 2"]


def test_validate_missing_file():
    code, out, err = run("validate", "missing.alg")
    assert code == 2
    assert "missing.alg" in err


def test_validate_syntax_error(tmp_path):
    path = tmp_path / "broken.alg"
    path.write_text("signature\nop f 2\n")
    code, out, err = run("validate", str(path))
    assert code == 2
    assert "end" in err


def test_sat_holds(z2_file):
    code, out, err = run("sat", "--algebra", z2_file, "--equation", "f(?x,?y) = f(?y,?x)")
    assert code == 0
    assert out.startswith("RESULT holds")


def test_sat_fails_with_witness(z2_file):
    code, out, err = run("sat", "--algebra", z2_file, "--equation", "f(?x,?x) = ?x")
    assert code == 1
    assert out == "WITNESS x=1\n"


def test_sat_by_name(pool_file):
    code, out, _ = run("sat", "--algebra", f"{pool_file}:SL", "--equation", "f(?x,?x) = ?x")
    assert code == 0
    code, out, err = run("sat", "--algebra", f"{pool_file}:nope", "--equation", "?x = ?x")
    assert code == 2
    assert "nope" in err


def test_class_sat(pool_file, z2_file):
    code, out, _ = run("class-sat", "--equation", "f(?x,?y) = f(?y,?x)", pool_file)
    assert code == 0
    code, out, _ = run("class-sat", "--equation", "f(?x,?x) = ?x", pool_file)
    assert code == 1
    assert out == "WITNESS algebra=Z2 x=1\n"


def test_theory_lists_equations(z2_file):
    code, out, _ = run("theory", "--depth", "1", "--vars", "2", z2_file)
    assert code == 0
    lines = out.splitlines()
    assert "f(?v0,?v1) = f(?v1,?v0)" in lines
    assert all(" = " in line for line in lines)


def test_hom_classification(pool_file):
    code, out, _ = run(
        "hom", "--src", f"{pool_file}:Z4", "--dst", f"{pool_file}:Z2", "--map", "0 1 0 1"
    )
    assert code == 0
    assert out == "RESULT hom injective=no surjective=yes\n"
    code, out, _ = run(
        "hom", "--src", f"{pool_file}:Z2", "--dst", f"{pool_file}:Z2", "--map", "1 1"
    )
    assert code == 1
    assert out == "WITNESS op=f args=0,0\n"


def test_hom_usage_error(pool_file):
    code, out, err = run(
        "hom", "--src", f"{pool_file}:Z2", "--dst", f"{pool_file}:Z2", "--map", "0 1 2"
    )
    assert code == 2


def test_hom_find(pool_file):
    code, out, _ = run("hom-find", "--src", f"{pool_file}:Z2", "--dst", f"{pool_file}:Z2")
    assert code == 0
    assert out.splitlines() == ["MAP 0 0", "MAP 0 1", "RESULT 2 map(s)"]
    code, out, _ = run(
        "hom-find", "--src", f"{pool_file}:SL", "--dst", f"{pool_file}:Z2", "--injective"
    )
    assert code == 1
    assert out == "RESULT none\n"


def test_factor(pool_file):
    code, out, _ = run(
        "factor",
        "--src", f"{pool_file}:Z4", "--gdst", f"{pool_file}:Z2", "--hdst", f"{pool_file}:Z2",
        "--g", "0 1 0 1", "--h", "0 1 0 1",
    )
    assert code == 0
    assert out == "MAP 0 1\n"
    code, out, _ = run(
        "factor",
        "--src", f"{pool_file}:Z4", "--gdst", f"{pool_file}:Z4", "--hdst", f"{pool_file}:Z2",
        "--g", "0 1 2 3", "--h", "0 1 0 1",
    )
    assert code == 1
    assert out.startswith("WITNESS kernel-pair ")


def test_free_stdout_and_files(tmp_path, z2_file):
    code, out, _ = run("free", "--vars", "2", z2_file)
    assert code == 0
    assert "algebra F" in out
    assert "elem 0 repr ?v0 gen v0" in out

    base = str(tmp_path / "f2")
    code, out, _ = run("free", "--vars", "2", z2_file, "--out", base)
    assert code == 0
    sig, algebras = parse_algebra_file((tmp_path / "f2.alg").read_text())
    assert algebras[0][1].size == 4
    sidecar = (tmp_path / "f2.elems").read_text()
    assert sidecar.startswith("elem 0 repr ?v0 gen v0\n")


def test_entail_check(tmp_path):
    axioms = tmp_path / "ax.eqs"
    axioms.write_text("f(?x,?y) = f(?y,?x)\n")
    proof = tmp_path / "p.proof"
    proof.write_text("(sym (hyp 0))\n")
    code, out, _ = run(
        "entail-check", "--axioms", str(axioms),
        "--goal", "f(?y,?x) = f(?x,?y)", "--proof", str(proof),
    )
    assert code == 0
    assert out == "RESULT proved f(?y,?x) = f(?x,?y)\n"

    code, out, _ = run(
        "entail-check", "--axioms", str(axioms),
        "--goal", "f(?x,?y) = f(?x,?y)", "--proof", str(proof),
    )
    assert code == 1
    assert out.startswith("WITNESS concluded")

    bad = tmp_path / "bad.proof"
    bad.write_text("(hyp 4)\n")
    code, out, _ = run(
        "entail-check", "--axioms", str(axioms),
        "--goal", "?x = ?x", "--proof", str(bad),
    )
    assert code == 1
    assert out.startswith("WITNESS proof-error")


def test_entail_search(tmp_path):
    axioms = tmp_path / "ax.eqs"
    axioms.write_text("f(?x,?y) = f(?y,?x)\n")
    code, out, _ = run(
        "entail-search", "--axioms", str(axioms),
        "--goal", "f(f(?x,?x),?y) = f(?y,f(?x,?x))", "--depth", "2",
    )
    assert code == 0
    assert out.startswith("PROOF ")
    parse_proof(out[len("PROOF "):])

    code, out, _ = run(
        "entail-search", "--axioms", str(axioms),
        "--goal", "f(?x,?x) = ?x", "--depth", "3",
    )
    assert code == 1
    assert out == "RESULT refuted\n"


def test_birkhoff_demo(tmp_path):
    path = tmp_path / "sl.alg"
    path.write_text(emit_algebra_file(semilattice2().sig, [("SL", semilattice2())]))
    code, out, _ = run("birkhoff-demo", "--vars", "2", str(path))
    assert code == 0
    lines = out.splitlines()
    assert any(line.startswith("STAGE hard-direction.SL.certificate PASS") for line in lines)
    assert lines[-1] == "RESULT pass"
    assert not any(" FAIL" in line for line in lines)


def test_usage_errors():
    code, out, err = run("sat", "--algebra")
    assert code == 2
    code, out, err = run("no-such-command")
    assert code == 2
    code, out, err = run()
    assert code == 2


def test_bad_numeric_arguments_exit_two(z2_file, tmp_path):
    code, out, err = run("theory", "--depth", "-1", "--vars", "2", z2_file)
    assert code == 2 and "max_depth" in err
    axioms = tmp_path / "ax.eqs"
    axioms.write_text("f(?x,?y) = f(?y,?x)\n")
    code, out, err = run(
        "entail-search", "--axioms", str(axioms), "--goal", "?x = ?x", "--depth", "0"
    )
    assert code == 2


def test_help_exits_zero():
    code, out, err = run("--help")
    assert code == 0


def test_output_is_deterministic(pool_file):
    runs = [
        run("theory", "--depth", "1", "--vars", "2", pool_file),
        run("theory", "--depth", "1", "--vars", "2", pool_file),
    ]
    assert runs[0] == runs[1]
    finds = [
        run("hom-find", "--src", f"{pool_file}:Z4", "--dst", f"{pool_file}:Z2"),
        run("hom-find", "--src", f"{pool_file}:Z4", "--dst", f"{pool_file}:Z2"),
    ]
    assert finds[0] == finds[1]


def test_caps_env_override(z2_file, monkeypatch):
    monkeypatch.setenv("UALG_CAPS", "cells=2")
    code, out, err = run("sat", "--algebra", z2_file, "--equation", "f(?x,?y) = f(?y,?x)")
    assert code == 2
    assert "cap" in err
    monkeypatch.setenv("UALG_CAPS", "bogus")
    code, out, err = run("validate", z2_file)
    assert code == 2
