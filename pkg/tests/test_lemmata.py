import json

from bluefive.configuration import RuleSet, emit_clauses
from bluefive.figures import load_figure
from bluefive.geometry import chord_rotation, node
from bluefive.lemmata import (DEPENDENCIES, GRANTS, Options, SCRIPT_ORDER,
                              replay_certificate, run_script, verify_all,
                              write_certificates)
from bluefive.solver import forced_color, solve


def test_all_scripts_pass(full_run):
    run, _ = full_run
    assert set(run.reports) == set(SCRIPT_ORDER)
    for sid, report in run.reports.items():
        assert report.status == "passed", (sid, [o.oid for o in report.obligations
                                                 if o.status != "pass"])
    assert run.ok


def test_obligation_count(full_run):
    run, _ = full_run
    assert run.obligation_count >= 40


def test_forcing_order_col1(full_run):
    run, _ = full_run
    oids = [o.oid for o in run.reports["col1"].obligations if o.kind == "FORCED"]
    spine = ["forced-I", "forced-J", "forced-K", "forced-L", "forced-M",
             "forced-N", "forced-R", "forced-Ap", "forced-Bp", "forced-Fp",
             "forced-X", "forced-Y", "forced-C'", "forced-D'", "forced-E'"]
    positions = [oids.index(o) for o in spine]
    assert positions == sorted(positions)


def test_forcing_order_col2(full_run):
    run, _ = full_run
    oids = [o.oid for o in run.reports["col2"].obligations if o.kind == "FORCED"]
    groups = [{"forced-D", "forced-G"},
              {"forced-E", "forced-F", "forced-H", "forced-I", "forced-J",
               "forced-K"},
              {"forced-Bp"}, {"forced-N"}, {"forced-C", "forced-Ap"}]
    boundary = -1
    for group in groups:
        positions = [oids.index(o) for o in group]
        assert min(positions) > boundary
        boundary = max(positions)


def test_gating_blocks_downstream():
    run = verify_all(disable=frozenset(["bluetr"]))
    assert run.reports["bluetr"].status == "blocked"
    for sid in ("redtr", "t7", "t3t6", "col1", "col2", "theorem"):
        assert run.reports[sid].status == "blocked", sid
    assert not run.ok


def test_run_script_requires_grants():
    report = run_script("redtr", Options(), granted=frozenset())
    assert report.status == "blocked"


def test_dependencies_acyclic_and_ordered():
    seen = set()
    for sid in SCRIPT_ORDER:
        assert all(dep in seen for dep in DEPENDENCIES[sid]), sid
        seen.add(sid)


def test_notes_attached_to_reports(full_run):
    run, _ = full_run
    assert any(n["id"] == "chain-colour-xadeb" for n in run.reports["bluetr"].notes)
    assert any(n["id"] == "triangle-side-three" for n in run.reports["redtr"].notes)
    assert any(n["id"] == "chain-colour-ajnmr" for n in run.reports["col1"].notes)


def test_forced_and_unsat_have_certificates(full_run):
    run, _ = full_run
    for sid, report in run.reports.items():
        for res in report.obligations:
            if res.kind in ("FORCED", "UNSAT"):
                assert res.certificate is not None, (sid, res.oid)


def test_certificates_replay(full_run, tmp_path):
    run, _ = full_run
    manifest = write_certificates(run, tmp_path)
    names = sorted(manifest["files"])
    assert names
    for fname in names:
        payload = json.loads((tmp_path / fname).read_text())
        assert replay_certificate(payload)


def test_certificate_files_hash_match(full_run, tmp_path):
    import hashlib

    run, _ = full_run
    manifest = write_certificates(run, tmp_path)
    for fname, digest in manifest["files"].items():
        text = (tmp_path / fname).read_text()
        assert hashlib.sha256(text.encode()).hexdigest() == digest


def test_report_json_round_trip(full_run, tmp_path):
    run, _ = full_run
    text = json.dumps(run.to_json(), sort_keys=True, indent=2) + "\n"
    path = tmp_path / "report.json"
    path.write_text(text)
    loaded = json.loads(path.read_text())
    assert json.dumps(loaded, sort_keys=True, indent=2) + "\n" == text


def test_first_forcing_example_matches_contract(full_run):
    # inside the first script, X resolves ForcedRed on its stage instance
    run, _ = full_run
    rep = run.reports["bluetr"]
    forced_x = next(o for o in rep.obligations if o.oid == "forced-X-red")
    assert forced_x.detail["got"] == "ForcedRed"
    forced_d = next(o for o in rep.obligations if o.oid == "forced-D-blue")
    assert forced_d.detail["got"] == "ForcedBlue"


def test_rule_style_equals_gadget_style():
    """The derived-rule encoding agrees with instantiating the construction:
    the red side-3 triangle is refuted (a) with the granted pattern rule and
    (b) with only base rules after adding the first diagram's six auxiliary
    points mapped rigidly onto the turned triangle."""
    from bluefive.configuration import Configuration, _rigid_maps, pattern_rule

    fig = load_figure("fig1b").cfg
    base = load_figure("fig1a").cfg
    fixed = {"O": "red", "A": "red", "B": "red", "C": "red"}

    # style (a): derived rule
    rules = RuleSet(derived=(pattern_rule("BLUE_EQ3_RED_CENTER", proved=True),))
    assert solve(emit_clauses(fig, rules, fixed)).kind == "unsat"

    # style (b): map the construction onto the turned triangle A'B'C'
    src_o, src_a = base.point_of("O"), base.point_of("A")
    dst_o, dst_a = fig.point_of("O"), fig.point_of("A'")
    verdicts = []
    for mirror in (False, True):
        def pre(p):
            from bluefive.geometry import Point
            return Point(p.x, -p.y) if mirror else p

        gmap = _rigid_maps(pre(src_o), pre(src_a), dst_o, dst_a)
        mapped = {nm: gmap(pre(base.point_of(nm))) for nm in base.names}
        if {mapped["B"], mapped["C"]} != {fig.point_of("B'"), fig.point_of("C'")}:
            continue
        entries = list(zip(fig.names, fig.points))
        entries += [(f"g{nm}", mapped[nm]) for nm in ("D", "E", "F", "G", "X", "Y")]
        cfg = Configuration(entries)
        verdicts.append(solve(emit_clauses(cfg, RuleSet(), fixed)).kind)
    assert verdicts and all(v == "unsat" for v in verdicts)


def test_stretch_mode(full_run):
    run = verify_all(Options(stretch=True), only=["col1", "col2"])
    for sid in ("col1", "col2"):
        stretch = run.reports[sid].stretch
        assert stretch is not None
        assert stretch["exhausted"]
        assert stretch["central_restrictions"] >= 1
        assert stretch["all_match_canonical"]
