import io
import subprocess
import sys


from uqplus.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_nf():
    code, out = run("nf", "-E1*E2 + q^-1*E2*E1")
    assert code == 0
    assert out.strip() == "q^-1*E2*E1 - E1*E2"


def test_products():
    assert run("mul", "E3", "E3p")[0] == 0
    assert run("comm", "Omega", "E1")[1].strip() == "0"
    assert run("qcomm", "E3", "E1", "q^-1")[1].strip() == "0"


def test_usage_errors(capsys):
    assert run("nf", "E1^^2")[0] == 2
    assert "position 3" in capsys.readouterr().err
    assert run("nf", "E9")[0] == 2
    assert run("nf")[0] == 2
    assert run("nf", "E1", "--cap", "1")[0] == 2
    assert run("root-vectors", "--word", "1,1,2")[0] == 2
    assert run("straighten", "--pair", "1")[0] == 2
    assert run("bogus")[0] == 2


def test_root_vectors_and_straighten():
    code, out = run("root-vectors", "--type", "B2", "--word", "1,2,1,2")
    assert code == 0 and len(out.splitlines()) == 4
    code, out = run("straighten", "--type", "A2", "--word", "1,2,1", "--pair", "1,3")
    assert code == 0 and "pair (1,3)" in out


def test_center():
    code, out = run("center", "--type", "B2", "--degree", "5")
    assert code == 0 and out.strip() == "dimension 0"
    code, out = run("center", "--type", "A2", "--degree", "4")
    assert out.splitlines()[-1] == "dimension 1"


def test_checks():
    code, out = run("check-normal", "--type", "A2", "E1")
    assert code == 0 and "unavailable for i=2" in out
    code, out = run("check-normal", "E3")
    assert "(q^-1, q)" in out
    assert run("check-central", "--type", "B2", "zp")[1].strip() == "central"


def test_check_auto(tmp_path):
    p = tmp_path / "swap.txt"
    p.write_text("E1 -> E2\nE2 -> E1\n")
    assert run("check-auto", "--file", str(p))[0] == 0
    code, out = run("check-auto", "--type", "B2", "--file", str(p), "--machine")
    assert code == 1
    assert any(line.startswith("FAIL endo.") for line in out.splitlines())
    assert run("check-auto", "--file", str(tmp_path / "missing.txt"))[0] == 2


def test_braid_check():
    code, out = run("braid-check", "--type", "B2", "--machine")
    assert code == 0 and len(out.splitlines()) == 6


def test_verify_suite():
    code, out = run("verify-paper", "--type", "A2", "--machine")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) >= 12
    assert all(l.startswith("PASS ") for l in lines)


def test_negative_flag():
    code, out = run("verify-paper", "--type", "B2", "--machine", "--self-test-negative", "--no-numeric")
    assert code == 1
    assert "FAIL B2.negative.commute" in out


def test_deterministic_output():
    assert run("center", "--type", "B2", "--degree", "4") == run("center", "--type", "B2", "--degree", "4")


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "uqplus.cli", "nf", "E1*E1"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "E1*E1"
