import json
import random

import pytest

from _oracles import chain_sets_brute, embeddings_brute
from bluefive.configuration import (Configuration, ExtensionSchema, RuleSet,
                                    build_configuration, ell_chains, emit_clauses,
                                    instance_from_json, instance_to_json,
                                    match_template, pattern_rule, template,
                                    template_extensions, unit_pairs)
from bluefive.figures import FIGURE_IDS, load_figure
from bluefive.geometry import (CANONICAL_FRAME, chord_rotation, hex_indices,
                               lattice_points, node)
from bluefive.solver import UnprovedRuleError, solve


def _lattice_cfg(coords):
    return build_configuration((f"p{i}", node(a, b)) for i, (a, b) in enumerate(coords))


def test_dedup_and_aliases():
    cfg = build_configuration([("a", node(0, 0)), ("b", node(0, 0)), ("c", node(1, 0))])
    assert len(cfg) == 2
    assert cfg.primary("b") == "a"
    assert cfg.point_of("b") == node(0, 0)


def test_duplicate_name_rejected():
    with pytest.raises(ValueError):
        build_configuration([("a", node(0, 0)), ("a", node(1, 0))])


def test_patch_plus_turned_copy_shares_only_centre():
    rot = chord_rotation(node(0, 0), 1)
    entries = [(f"p{i}", p) for i, p in enumerate(lattice_points(CANONICAL_FRAME, 2))]
    entries += [(f"q{i}", rot(p)) for i, (_, p) in enumerate(entries)]
    cfg = build_configuration(entries)
    assert len(cfg) == 2 * 19 - 1


def test_unit_pairs_examples():
    assert len(unit_pairs(_lattice_cfg([(0, 0), (1, 0)]))) == 1
    t6 = build_configuration(
        (f"t{i}", p) for i, p in enumerate(template("T6").points))
    assert unit_pairs(t6) == []


def test_single_run_gives_one_chain():
    cfg = _lattice_cfg([(i, 0) for i in range(5)])
    assert len(ell_chains(cfg, 5)) == 1


def test_chains_against_brute_force():
    rng = random.Random(42)
    cases = [
        _lattice_cfg([(i, 0) for i in range(6)]),
        _lattice_cfg(hex_indices(2)),
    ]
    for _ in range(6):
        coords = set()
        while len(coords) < 14:
            coords.add((rng.randint(-3, 3), rng.randint(-3, 3)))
        cases.append(_lattice_cfg(sorted(coords)))
    for cfg in cases:
        got = {frozenset(chain) for chain in ell_chains(cfg, 5)}
        assert got == chain_sets_brute(cfg, 5)


def test_chains_against_brute_force_on_figures():
    for fid in FIGURE_IDS:
        cfg = load_figure(fid).cfg
        got = {frozenset(chain) for chain in ell_chains(cfg, 5)}
        assert got == chain_sets_brute(cfg, 5), fid


def test_template_smallest_distances():
    from bluefive.field import fe
    from bluefive.geometry import dist2

    for tid in ("T3", "T4", "T5", "T6", "T7"):
        pts = template(tid).points
        smallest = min(dist2(pts[i], pts[j])
                       for i in range(len(pts)) for j in range(i + 1, len(pts)))
        assert smallest == fe(3), tid
    for tid, k in (("L2", 2), ("L5", 5)):
        pts = template(tid).points
        assert len(pts) == k
        assert all(dist2(pts[i], pts[i + 1]) == fe(1) for i in range(k - 1))


def test_match_t3_on_single_triangle():
    cfg = build_configuration(
        (f"t{i}", p) for i, p in enumerate(template("T3").points))
    assert len(match_template(cfg, template("T3"))) == 6


def test_match_cardinality_prefilter():
    cfg = _lattice_cfg([(0, 0), (2, -1), (1, 1)])
    assert match_template(cfg, template("T4")) == []


def test_match_l2_equals_unit_pairs():
    cfg = load_figure("fig1a").cfg
    pairs = {frozenset(p) for p in unit_pairs(cfg)}
    embs = {frozenset(e) for e in match_template(cfg, template("L2"))}
    assert pairs == embs


def test_match_against_brute_force():
    rng = random.Random(7)
    tpls = ["T3", "T4", "EQ3_CENTERED", "L2", "L5"]
    cases = []
    for _ in range(5):
        coords = set()
        while len(coords) < 12:
            coords.add((rng.randint(-3, 3), rng.randint(-3, 3)))
        cases.append(_lattice_cfg(sorted(coords)))
    for cfg in cases:
        for tid in tpls:
            tpl = template(tid)
            assert set(match_template(cfg, tpl)) == embeddings_brute(cfg, tpl), tid


def test_match_against_brute_force_on_figures():
    jobs = [
        ("fig1a", "EQ3_CENTERED"), ("fig1b", "EQ3_CENTERED"),
        ("fig3", "T7"), ("fig3", "EQ3_CENTERED"),
        ("fig4", "T4"), ("fig5", "T5"), ("fig6", "T7"), ("fig6", "T6"),
        ("figcol2", "T3"),
    ]
    for fid, tid in jobs:
        cfg = load_figure(fid).cfg
        tpl = template(tid)
        assert set(match_template(cfg, tpl)) == embeddings_brute(cfg, tpl), (fid, tid)


def test_t5_placements_named_in_second_stage():
    cfg = load_figure("fig5").cfg
    t5 = template("T5")
    sets = {frozenset(e) for e in match_template(cfg, t5)}
    for extra in ("X", "F", "G"):
        assert frozenset(("A", "B", "C", "D", extra)) in sets


def test_template_extension_counts():
    t3_pts = [node(0, 0), node(2, -1), node(1, 1)]
    assert len(template_extensions("T3", "T4", t3_pts)) == 3
    assert len(template_extensions("T3", "T6", t3_pts)) == 4
    t4_pts = t3_pts + [node(3, 0)]
    assert len(template_extensions("T4", "T5", t4_pts)) == 4


def test_emit_clause_counts_for_first_figure():
    cfg = load_figure("fig1a").cfg
    problem = emit_clauses(cfg, RuleSet(),
                           {"O": "red", "A": "blue", "B": "blue", "C": "blue"})
    # 14 unit pairs + 2 chains + 4 fixed colours
    assert len(problem.clauses) == 20
    assert solve(problem).kind == "unsat"


def test_emit_single_pair_and_single_chain():
    cfg = _lattice_cfg([(0, 0), (1, 0)])
    problem = emit_clauses(cfg, RuleSet(base=("RED_L2_FORBIDDEN",)), {})
    assert problem.clauses == [(-1, -2)]
    cfg5 = _lattice_cfg([(i, 0) for i in range(5)])
    problem5 = emit_clauses(cfg5, RuleSet(base=("BLUE_L5_FORBIDDEN",)), {})
    assert problem5.clauses == [(1, 2, 3, 4, 5)]


def test_fixed_colours_resolve_aliases():
    cfg = build_configuration([("a", node(0, 0)), ("twin", node(0, 0)),
                               ("b", node(1, 0))])
    problem = emit_clauses(cfg, RuleSet(), {"twin": "red"})
    assert (1,) in problem.clauses
    import pytest as _pytest
    with _pytest.raises(ValueError):
        emit_clauses(cfg, RuleSet(), {"twin": "red", "a": "blue"})


def test_unproved_rule_rejected():
    cfg = load_figure("fig1b").cfg
    rules = RuleSet(derived=(pattern_rule("BLUE_EQ3_RED_CENTER", proved=False),))
    with pytest.raises(UnprovedRuleError):
        emit_clauses(cfg, rules, {})


def test_restriction_matches_filtered_clauses():
    cfg = load_figure("fig1a").cfg
    fixed = {"O": "red", "A": "blue", "B": "blue", "C": "blue"}
    full = emit_clauses(cfg, RuleSet(), fixed)
    drop = {full.name_to_var["X"], full.name_to_var["Y"]}
    filtered = sorted(c for c in full.clauses if not any(abs(l) in drop for l in c))
    sub = cfg.restrict([n for n in cfg.names if n not in ("X", "Y")])
    direct = emit_clauses(sub, RuleSet(), fixed)
    remap = {direct.name_to_var[nm]: full.name_to_var[nm] for nm in sub.names}
    translated = sorted(
        tuple(sorted((remap[abs(l)] if l > 0 else -remap[abs(l)]) for l in c))
        for c in direct.clauses)
    assert translated == sorted(tuple(sorted(c)) for c in filtered)


def test_schema_clauses_force_extension():
    # anchor triple red plus schema: the six-point extension cells follow
    pts = {}
    for i, (a, b) in enumerate([(0, 0), (2, -1), (1, 1)]):
        pts[f"t{i}"] = node(a, b)
    extension_cells = [(4, -2), (3, 0), (2, 2)]
    for i, (a, b) in enumerate(extension_cells):
        pts[f"e{i}"] = node(a, b)
    # blockers: one cell of each of the other three candidate extensions
    for i, (a, b) in enumerate([(-2, 1), (-1, -1), (1, -2)]):
        pts[f"x{i}"] = node(a, b)
    cfg = build_configuration(pts.items())
    schema = ExtensionSchema(lemma_id="t3t6", proved=True,
                             anchors=(("t0", "t1", "t2"),))
    rules = RuleSet(base=(), existential=schema)
    fixed = {"t0": "red", "t1": "red", "t2": "red",
             "x0": "blue", "x1": "blue", "x2": "blue"}
    problem = emit_clauses(cfg, rules, fixed)
    from bluefive.solver import forced_color
    for i in range(3):
        assert forced_color(problem, f"e{i}").status == "ForcedRed"


def test_instance_json_round_trip():
    figure = load_figure("figcol1")
    payload = instance_to_json(figure.cfg, figure.colors, figure.rules)
    text = json.dumps(payload, sort_keys=True, indent=2)
    cfg2, fixed2, rules2 = instance_from_json(json.loads(text))
    assert cfg2.names == figure.cfg.names
    assert cfg2.points == figure.cfg.points
    assert fixed2 == figure.colors
    assert json.dumps(instance_to_json(cfg2, fixed2, rules2),
                      sort_keys=True, indent=2) == text
