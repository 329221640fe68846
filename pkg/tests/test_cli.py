import json
from fractions import Fraction

from torusvar.cli import main
from torusvar.exact_algebra import parse_fraction
from torusvar.h_calculus import ExactTorus
from torusvar.shape_equation import Lagrangian, el_residual


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_solve_text_output(capsys):
    code, out = run(capsys, "solve", "--degree", "3", "--r", "1")
    assert code == 0
    assert "constraint a^2/r^2 = 6/5" in out
    assert "a2 = 15/2*a1" in out


def test_solve_gauss_reports_delta(capsys):
    code, out = run(capsys, "solve", "--degree", "4", "--with-gauss", "--a2", "3", "--r", "1")
    assert code == 0
    assert "radii polynomial delta = 18" in out


def test_solve_degenerate_radii_note(capsys):
    code, out = run(capsys, "solve", "--degree", "4", "--with-gauss", "--a2", "2", "--r", "1")
    assert code == 0
    assert "degenerate" in out
    assert "a^2-2r^2" in out


def test_solve_reduced_terms_recovers_constraint(capsys):
    code, out = run(
        capsys, "solve", "--degree", "4", "--with-gauss", "--terms", "K2,HK", "--r", "1"
    )
    assert code == 0
    assert "constraint a^2/r^2 = 12/11" in out


def test_energy_command_value(capsys):
    code, out = run(capsys, "energy", "--degree", "2", "--ratio", "2", "--r", "1")
    assert code == 0
    assert "total: 19.7392088021787" in out


def test_verify_command_autoselects_a_sufficient_grid(capsys):
    # the degree-6 ratio 30/29 needs a finer grid than the default; verify
    # picks it from the spectral decay rate when --grid is omitted
    code, out = run(capsys, "verify", "--degree", "6", "--r", "1")
    assert code == 0
    assert "exact residual zero: True" in out


def test_identities_command(capsys):
    code, out = run(capsys, "identities", "--a2", "2", "--r", "1", "--grid", "256")
    assert code == 0
    assert "FAIL" not in out
    assert "laplacian(H)" in out


def test_scan_command(capsys):
    code, out = run(capsys, "scan", "--degree", "2", "--r", "1", "--ratios", "3/2,2,3")
    assert code == 0
    lines = [l for l in out.splitlines() if l.strip()]
    assert len(lines) == 4  # header + three ratios
    assert lines[2].startswith("2 ")


def test_scan_command_default_ratio_grid(capsys):
    code, out = run(capsys, "scan", "--r", "1")
    assert code == 0
    assert len(out.splitlines()) > 10


def test_second_variation_command(capsys):
    code, out = run(capsys, "second-variation", "--degree", "2", "--r", "1", "--modes", "cos1=1")
    assert code == 0
    assert "second variation:" in out


def test_second_variation_first_order_family(capsys):
    code, out = run(capsys, "second-variation", "--degree", "1", "--r", "1", "--modes", "sin1=0.5")
    assert code == 0
    assert "second variation:" in out


def test_bad_input_exit_code(capsys):
    assert main(["solve", "--degree", "0", "--r", "1"]) == 4
    capsys.readouterr()
    assert main(["solve", "--degree", "2", "--r", "-1"]) == 4
    capsys.readouterr()
    assert main(["solve", "--degree", "4", "--with-gauss", "--terms", "H2", "--r", "1"]) == 4
    capsys.readouterr()


def test_json_report_round_trips_and_reverifies(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code = main(
        [
            "solve",
            "--degree",
            "3",
            "--r",
            "1",
            "--format",
            "json",
            "--out",
            str(out_path),
        ]
    )
    capsys.readouterr()
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert payload["command"] == "solve"
    assert payload["constraint"] == "6/5"
    assert payload["version"]
    for key in ("command", "inputs", "constraint", "coefficients", "degeneracy", "energy", "residuals", "version"):
        assert key in payload

    # rebuild the family member from the persisted coefficients and reverify
    frees = {"a1": Fraction(1), "a3": Fraction(2)}
    coeffs = {}
    for name, form in payload["coefficients"].items():
        value = Fraction(0)
        for param, coeff in form.items():
            if param == "const":
                value += parse_fraction(coeff)
            else:
                value += parse_fraction(coeff) * frees[param]
        coeffs[name] = value
    degree = payload["report"]["degree"]
    terms = {(degree - i, 0): coeffs[f"a{i + 1}"] for i in range(degree + 1)}
    lag = Lagrangian(terms, pressure=coeffs["p"])
    torus = ExactTorus(parse_fraction(payload["report"]["a2"]), parse_fraction(payload["report"]["r"]))
    assert el_residual(torus, lag).is_zero


def test_json_output_is_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert (
            main(["solve", "--degree", "5", "--r", "2", "--format", "json", "--out", str(p)])
            == 0
        )
        capsys.readouterr()
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_text_output_is_deterministic(capsys):
    _, first = run(capsys, "energy", "--degree", "4", "--r", "1")
    _, second = run(capsys, "energy", "--degree", "4", "--r", "1")
    assert first == second
