import json

from bluefive.cli import main
from bluefive.geometry import hex_indices
from bluefive.render import render, render_figure, render_pattern
from bluefive.tilings import PATTERN_B


def test_first_figure_glyph_counts():
    svg = render_figure("fig1a")
    # one red diamond, seven blue discs, two hollow discs
    assert svg.count("<polygon") == 1
    assert svg.count('fill="#24c"') == 7
    assert svg.count('fill="white"') == 2


def test_third_figure_has_primed_labels():
    svg = render_figure("fig3")
    assert ">X'</text>" in svg
    assert ">X''</text>" in svg


def test_pattern_red_count_matches_membership():
    radius = 5
    svg = render_pattern("B", radius)
    reds = sum(1 for a, b in hex_indices(radius) if PATTERN_B.is_red(a, b))
    assert svg.count("<polygon") == reds


def test_svg_byte_stable():
    assert render("patternA", 5) == render("patternA", 5)
    assert render_figure("fig4") == render_figure("fig4")


def test_empty_render_is_valid_svg():
    from bluefive.render import render_svg
    svg = render_svg([], lattice=[(0, 0)])
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")


def test_cli_verify_lemma(tmp_path, capsys):
    report = tmp_path / "t7.json"
    code = main(["verify", "lemma", "t7", "--json", str(report)])
    assert code == 0
    out = capsys.readouterr().out
    assert "[PASSED ] t7" in out
    payload = json.loads(report.read_text())
    assert payload["ok"] is True
    # byte-identical JSON round trip
    text = report.read_text()
    assert json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n" == text


def test_cli_unknown_lemma(capsys):
    assert main(["verify", "lemma", "nosuch"]) == 2
    assert "unknown lemma" in capsys.readouterr().err


def test_cli_bad_usage():
    assert main(["frobnicate"]) == 2


def test_cli_oracle_on_registry(tmp_path, capsys):
    from importlib import resources

    src = resources.files("bluefive").joinpath("data/figures/fig1a.json")
    inst = tmp_path / "fig1a.json"
    inst.write_text(src.read_text())
    assert main(["oracle", str(inst)]) == 0
    assert "AGREE" in capsys.readouterr().out
    assert main(["oracle", str(tmp_path / "missing.json")]) == 2


def test_cli_export_cnf_round_trip(tmp_path):
    assert main(["export-cnf", "bluetr", "--out", str(tmp_path)]) == 0
    cnf = (tmp_path / "bluetr_main.cnf").read_text()
    varmap = (tmp_path / "bluetr_main.varmap").read_text()
    from bluefive.solver import brute_force, export_dimacs, parse_dimacs, solve
    problem = parse_dimacs(cnf, varmap)
    assert export_dimacs(problem) == (cnf, varmap)
    assert solve(problem).kind == brute_force(problem).kind == "unsat"


def test_cli_render(tmp_path):
    out = tmp_path / "p.svg"
    assert main(["render", "patternB", "--svg", str(out), "--radius", "5"]) == 0
    assert out.read_text().startswith("<svg")
    assert main(["render", "nosuch", "--svg", str(out)]) == 2


def test_cli_coloring_validate(tmp_path):
    report = tmp_path / "a.json"
    assert main(["coloring", "validate", "A", "--radius", "12",
                 "--json", str(report)]) == 0
    payload = json.loads(report.read_text())
    assert payload["ok"] and payload["distance5_invariant"]
    assert main(["coloring", "validate", "B", "--radius", "4"]) == 2


def test_cli_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("ER_VERIFIER_THREADS", "2")
    assert main(["verify", "lemma", "bluetr"]) == 0
    monkeypatch.setenv("ER_VERIFIER_THREADS", "zap")
    assert main(["verify", "lemma", "bluetr"]) == 2
