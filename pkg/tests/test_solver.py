import random

import pytest

from bluefive.solver import (BRUTE_FORCE_MAX_FREE, CertificateError,
                             ColoringProblem, brute_force, check_model,
                             enumerate_models, export_dimacs, forced_color,
                             parse_dimacs, replay_model, replay_unsat_trace,
                             solve)


def _problem(nvars, clauses, assumptions=()):
    names = [f"v{i}" for i in range(1, nvars + 1)]
    return ColoringProblem(
        var_count=nvars, clauses=[tuple(c) for c in clauses],
        names=names, is_aux=[False] * nvars,
        name_to_var={n: i + 1 for i, n in enumerate(names)},
        assumptions=list(assumptions))


def test_empty_problem_is_sat():
    verdict = solve(_problem(3, []))
    assert verdict.kind == "sat"
    assert verdict.model == (True, True, True)  # red branch first


def test_contradictory_units():
    assert solve(_problem(1, [(1,), (-1,)])).kind == "unsat"


def test_deterministic_first_model():
    problem = _problem(3, [(-1, -2), (2, 3)])
    v1 = solve(problem)
    v2 = solve(problem)
    assert v1.model == v2.model


def test_forced_color_on_empty_problem():
    res = forced_color(_problem(2, []), "v1")
    assert res.status == "Free"


def test_forced_color_rejects_aux():
    p = _problem(2, [])
    p.is_aux[1] = True
    with pytest.raises(ValueError):
        forced_color(p, "v2")


def test_forced_color_statuses():
    # v1 forced red by clause, v2 free, inconsistent problem detected
    p = _problem(2, [(1,)])
    assert forced_color(p, "v1").status == "ForcedRed"
    assert forced_color(p, "v2").status == "Free"
    p2 = _problem(1, [(1,), (-1,)])
    assert forced_color(p2, "v1").status == "Inconsistent"
    p3 = _problem(2, [(-1, -2), (2,)])
    assert forced_color(p3, "v1").status == "ForcedBlue"


def test_enumerate_models_chain_example():
    # one five-chain of free nodes: all assignments except all-blue
    problem = _problem(5, [(1, 2, 3, 4, 5)])
    models, exhausted = enumerate_models(problem, cap=64)
    assert exhausted and len(models) == 31
    assert len(set(models)) == 31


def test_enumerate_models_free_and_unsat():
    models, exhausted = enumerate_models(_problem(1, []), cap=10)
    assert exhausted and len(models) == 2
    models, exhausted = enumerate_models(_problem(1, [(1,), (-1,)]), cap=10)
    assert exhausted and models == []


def test_enumerate_models_cap():
    models, exhausted = enumerate_models(_problem(4, []), cap=5)
    assert not exhausted and len(models) == 5


def test_enumerate_models_projection():
    # v1 free, v2 forced equal to v1, v3 free: projection onto v1 has 2 models
    problem = _problem(3, [(-1, 2), (1, -2)])
    models, exhausted = enumerate_models(problem, cap=100, project=[1])
    assert exhausted and sorted(models) == [(False,), (True,)]


def test_forced_consistent_with_enumeration():
    problem = _problem(3, [(1, 2), (-1, 3)])
    models, exhausted = enumerate_models(problem, cap=100)
    assert exhausted
    for var, name in ((1, "v1"), (2, "v2"), (3, "v3")):
        always_red = all(m[var - 1] for m in models)
        always_blue = all(not m[var - 1] for m in models)
        status = forced_color(problem, name).status
        if always_red:
            assert status == "ForcedRed"
        elif always_blue:
            assert status == "ForcedBlue"
        else:
            assert status == "Free"


def test_dimacs_export_example():
    problem = _problem(2, [(1, -2)])
    cnf, varmap = export_dimacs(problem)
    assert cnf == "p cnf 2 1\n1 -2 0\n"
    assert varmap == "1 v1\n2 v2\n"


def test_dimacs_round_trip_byte_identical():
    problem = _problem(4, [(1, -2), (2, 3, -4), (-1,)])
    cnf, varmap = export_dimacs(problem)
    again = parse_dimacs(cnf, varmap)
    cnf2, varmap2 = export_dimacs(again)
    assert cnf2 == cnf and varmap2 == varmap
    assert solve(problem).kind == solve(again).kind


def test_brute_force_limit():
    with pytest.raises(ValueError):
        brute_force(_problem(BRUTE_FORCE_MAX_FREE + 1, []))


def test_brute_force_agrees_on_examples():
    p = _problem(1, [(1,), (-1,)])
    assert brute_force(p).kind == solve(p).kind == "unsat"


def _random_instance(rng):
    nvars = rng.randint(2, 18)
    nclauses = rng.randint(1, 40)
    clauses = []
    for _ in range(nclauses):
        width = rng.randint(1, 4)
        vs = rng.sample(range(1, nvars + 1), min(width, nvars))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return _problem(nvars, clauses)


def test_random_oracle_equivalence_and_replay():
    rng = random.Random(1234)
    for _ in range(120):
        problem = _random_instance(rng)
        fast = solve(problem, record_trace=True)
        slow = brute_force(problem)
        assert fast.kind == slow.kind
        if fast.kind == "sat":
            assert check_model(problem.clauses, fast.model)
            assert check_model(problem.clauses, slow.model)
            replay_model(problem.clauses, fast.model)
        else:
            assert replay_unsat_trace(problem.clauses, fast.trace)


def test_monotonicity_adding_clauses_keeps_unsat():
    rng = random.Random(99)
    found = 0
    while found < 20:
        problem = _random_instance(rng)
        if solve(problem).kind != "unsat":
            continue
        found += 1
        extra = _random_instance(rng)
        merged = _problem(max(problem.var_count, extra.var_count),
                          list(problem.clauses) + list(extra.clauses))
        assert solve(merged).kind == "unsat"


def test_replayer_rejects_tampered_trace():
    problem = _problem(2, [(1,), (-1, 2), (-2, -1)])
    verdict = solve(problem, record_trace=True)
    assert verdict.kind == "unsat"
    assert replay_unsat_trace(problem.clauses, verdict.trace)
    bad = [list(ev) for ev in verdict.trace]
    # claim a different clause forced the first implication
    for ev in bad:
        if ev[0] == "imply":
            ev[2] = (ev[2] + 1) % len(problem.clauses)
            break
    with pytest.raises(CertificateError):
        replay_unsat_trace(problem.clauses, bad)


def test_replayer_rejects_truncated_trace():
    problem = _problem(2, [(1, 2), (-1, 2), (1, -2), (-1, -2)])
    verdict = solve(problem, record_trace=True)
    assert verdict.kind == "unsat"
    with pytest.raises(CertificateError):
        replay_unsat_trace(problem.clauses, verdict.trace[:-1])


def test_model_replay_rejects_bad_model():
    problem = _problem(2, [(1, 2)])
    with pytest.raises(CertificateError):
        replay_model(problem.clauses, (False, False))
