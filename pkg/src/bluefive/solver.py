"""Two-colouring constraint solver: plain DPLL with watched literals.

The engine is deliberately simple so that every verdict is reproducible
and auditable: variables are decided in ascending index order, the red
(true) branch is tried first, backtracking is chronological, and an
optional trace records every decision, propagation, flip and conflict.
An independent replayer re-checks traces and models without touching the
search code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

RED = True
BLUE = False

FORCED_RED = "ForcedRed"
FORCED_BLUE = "ForcedBlue"
FREE = "Free"
INCONSISTENT = "Inconsistent"

# reason codes for trail entries
_R_DECISION = -1
_R_FLIP = -2
_R_ASSUMPTION = -3

BRUTE_FORCE_MAX_FREE = 25


class CertificateError(Exception):
    """A trace or model failed independent replay."""


class UnprovedRuleError(Exception):
    """A derived rule was used before the lemma granting it was verified."""


@dataclass
class ColoringProblem:
    """CNF over one boolean per node (true = red) plus optional auxiliaries."""

    var_count: int
    clauses: list[tuple[int, ...]]
    names: list[str]
    is_aux: list[bool]
    name_to_var: dict[str, int]
    assumptions: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.names) != self.var_count or len(self.is_aux) != self.var_count:
            raise ValueError("names/is_aux must cover every variable")
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.var_count:
                    raise ValueError(f"literal {lit} references an undeclared variable")
        for lit in self.assumptions:
            if lit == 0 or abs(lit) > self.var_count:
                raise ValueError(f"assumption {lit} references an undeclared variable")

    def var_of(self, name: str) -> int:
        try:
            var = self.name_to_var[name]
        except KeyError:
            raise KeyError(f"unknown node {name!r}") from None
        return var

    def node_var_of(self, name: str) -> int:
        var = self.var_of(name)
        if self.is_aux[var - 1]:
            raise ValueError(f"{name!r} is an auxiliary variable, not a node")
        return var

    def name_of(self, var: int) -> str:
        return self.names[var - 1]

    def node_vars(self) -> list[int]:
        return [v for v in range(1, self.var_count + 1) if not self.is_aux[v - 1]]


@dataclass
class Verdict:
    kind: str  # "sat" | "unsat"
    model: Optional[tuple[bool, ...]] = None
    trace: Optional[list[tuple]] = None

    @property
    def is_sat(self) -> bool:
        return self.kind == "sat"

    def colours(self, problem: ColoringProblem, include_aux: bool = False) -> dict[str, str]:
        if self.model is None:
            raise ValueError("no model on this verdict")
        out = {}
        for v in range(1, problem.var_count + 1):
            if problem.is_aux[v - 1] and not include_aux:
                continue
            out[problem.names[v - 1]] = "red" if self.model[v - 1] else "blue"
        return out

    def to_json(self) -> dict:
        data: dict = {"kind": self.kind}
        if self.model is not None:
            data["model"] = [1 if b else 0 for b in self.model]
        if self.trace is not None:
            data["trace"] = [list(ev) for ev in self.trace]
        return data


class _Engine:
    """One DPLL run over a fixed clause set."""

    def __init__(self, problem: ColoringProblem, assumptions: Sequence[int],
                 record_trace: bool) -> None:
        nv = problem.var_count
        self.nv = nv
        self.problem = problem
        self.assign = [0] * (nv + 1)  # 0 unassigned, 1 true, -1 false
        self.reason = [0] * (nv + 1)
        self.trail: list[int] = []
        self.lim: list[int] = []          # trail position of each decision
        self.flipped: list[bool] = []
        self.proj: list[bool] = []        # was the decision on a projected var
        self.qhead = 0
        self.trace: Optional[list[tuple]] = [] if record_trace else None
        self.clauses = [list(c) for c in problem.clauses]
        self.watch: list[list[int]] = [[] for _ in range(2 * nv + 2)]
        self.failed = None  # set to a conflict marker if setup is contradictory

        units: list[tuple[int, int]] = []
        for cid, clause in enumerate(self.clauses):
            if not clause:
                self.failed = ("conflict", cid)
                if self.trace is not None:
                    self.trace.append(("conflict", cid))
                return
            if len(clause) == 1:
                units.append((clause[0], cid))
            else:
                self.watch[_widx(clause[0])].append(cid)
                self.watch[_widx(clause[1])].append(cid)
        for lit, cid in units:
            if not self._enqueue(lit, cid):
                self.failed = ("conflict", cid)
                return
        for lit in list(problem.assumptions) + list(assumptions):
            if self.trace is not None and self.assign[abs(lit)] == 0:
                self.trace.append(("assume", lit))
            if not self._enqueue(lit, _R_ASSUMPTION, quiet=True):
                if self.trace is not None:
                    self.trace.append(("conflict_assume", lit))
                self.failed = ("conflict_assume", lit)
                return

    # ------------------------------------------------------------------

    def _enqueue(self, lit: int, reason: int, quiet: bool = False) -> bool:
        var = abs(lit)
        val = 1 if lit > 0 else -1
        cur = self.assign[var]
        if cur != 0:
            if cur == val:
                return True
            if self.trace is not None and reason >= 0:
                self.trace.append(("conflict", reason))
            return False
        self.assign[var] = val
        self.reason[var] = reason
        self.trail.append(lit)
        if self.trace is not None and not quiet:
            if reason >= 0:
                self.trace.append(("imply", lit, reason))
            elif reason == _R_DECISION:
                self.trace.append(("decide", lit))
            elif reason == _R_FLIP:
                self.trace.append(("flip", lit))
        return True

    def _value(self, lit: int) -> int:
        v = self.assign[abs(lit)]
        return v if lit > 0 else -v

    def propagate(self) -> Optional[int]:
        """Run unit propagation; return a conflicting clause id or None."""
        while self.qhead < len(self.trail):
            lit = self.trail[self.qhead]
            self.qhead += 1
            neg = -lit
            wl = self.watch[_widx(neg)]
            i = 0
            while i < len(wl):
                cid = wl[i]
                clause = self.clauses[cid]
                if clause[0] == neg:
                    clause[0], clause[1] = clause[1], clause[0]
                first = clause[0]
                if self._value(first) == 1:
                    i += 1
                    continue
                moved = False
                for k in range(2, len(clause)):
                    if self._value(clause[k]) != -1:
                        clause[1], clause[k] = clause[k], clause[1]
                        self.watch[_widx(clause[1])].append(cid)
                        wl[i] = wl[-1]
                        wl.pop()
                        moved = True
                        break
                if moved:
                    continue
                # clause is unit or conflicting under the current trail
                if self._value(first) == -1:
                    if self.trace is not None:
                        self.trace.append(("conflict", cid))
                    return cid
                if not self._enqueue(first, cid):
                    return cid
                i += 1
        return None

    def decide(self, var: int, projected: bool) -> None:
        self.lim.append(len(self.trail))
        self.flipped.append(False)
        self.proj.append(projected)
        self._enqueue(var, _R_DECISION)  # red (true) branch first

    def backtrack(self, after_model: bool) -> bool:
        """Chronological backtrack; flip the relevant deepest decision.

        After a conflict any decision may flip; after a model only a
        projected decision may (deeper branches would repeat the same
        projection).  Returns False when the tree is exhausted.
        """
        while self.lim:
            dpos = self.lim[-1]
            dlit = self.trail[dpos]
            for lit_ in reversed(self.trail[dpos:]):
                self.assign[abs(lit_)] = 0
            del self.trail[dpos:]
            self.qhead = dpos
            flippable = not self.flipped[-1] and (self.proj[-1] or not after_model)
            if flippable:
                self.flipped[-1] = True
                self._enqueue(-dlit, _R_FLIP)
                return True
            self.lim.pop()
            self.flipped.pop()
            self.proj.pop()
        return False

    def next_var(self, order: Sequence[int]) -> Optional[int]:
        for v in order:
            if self.assign[v] == 0:
                return v
        return None

    def model(self) -> tuple[bool, ...]:
        return tuple(self.assign[v] == 1 for v in range(1, self.nv + 1))


def _widx(lit: int) -> int:
    return 2 * lit if lit > 0 else -2 * lit + 1


def check_model(clauses: Iterable[Sequence[int]], model: Sequence[bool],
                assumptions: Sequence[int] = ()) -> bool:
    """Independent model evaluator used before any Sat verdict is returned."""
    for lit in assumptions:
        if model[abs(lit) - 1] != (lit > 0):
            return False
    for clause in clauses:
        for lit in clause:
            if model[abs(lit) - 1] == (lit > 0):
                break
        else:
            return False
    return True


def solve(problem: ColoringProblem, assumptions: Sequence[int] = (),
          record_trace: bool = False) -> Verdict:
    """Decide the problem; deterministic given the clause set and assumptions."""
    eng = _Engine(problem, assumptions, record_trace)
    if eng.failed is not None:
        return Verdict("unsat", trace=eng.trace)
    order = range(1, problem.var_count + 1)
    while True:
        confl = eng.propagate()
        if confl is not None:
            if not eng.backtrack(after_model=False):
                return Verdict("unsat", trace=eng.trace)
            continue
        var = eng.next_var(order)
        if var is None:
            model = eng.model()
            if not check_model(problem.clauses, model,
                               list(problem.assumptions) + list(assumptions)):
                raise AssertionError("solver produced an invalid model")
            return Verdict("sat", model=model, trace=eng.trace)
        eng.decide(var, projected=True)


@dataclass
class ForcedResult:
    status: str
    when_blue: Verdict  # verdict with the node assumed blue
    when_red: Verdict   # verdict with the node assumed red


def forced_color(problem: ColoringProblem, node: str,
                 record_trace: bool = False) -> ForcedResult:
    """Classify a node: a colour is forced iff assuming its negation is unsat."""
    var = problem.node_var_of(node)
    when_blue = solve(problem, assumptions=[-var], record_trace=record_trace)
    when_red = solve(problem, assumptions=[var], record_trace=record_trace)
    if when_blue.is_sat and when_red.is_sat:
        status = FREE
    elif when_blue.is_sat:
        status = FORCED_BLUE
    elif when_red.is_sat:
        status = FORCED_RED
    else:
        status = INCONSISTENT
    return ForcedResult(status, when_blue, when_red)


def enumerate_models(problem: ColoringProblem, cap: int,
                     assumptions: Sequence[int] = (),
                     project: Optional[Sequence[int]] = None,
                     ) -> tuple[list[tuple[bool, ...]], bool]:
    """Enumerate distinct models (optionally projected onto `project` vars).

    Models are produced in deterministic search-tree order; each found
    model is blocked by flipping the deepest projected decision, which is
    equivalent to adding a blocking clause over the projected assignment.
    Returns (models, exhausted).
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if project is None:
        proj_vars = list(range(1, problem.var_count + 1))
    else:
        proj_vars = sorted(set(project))
        for v in proj_vars:
            if not (1 <= v <= problem.var_count):
                raise ValueError(f"projection variable {v} out of range")
    proj_set = set(proj_vars)
    rest = [v for v in range(1, problem.var_count + 1) if v not in proj_set]

    eng = _Engine(problem, assumptions, record_trace=False)
    if eng.failed is not None:
        return [], True
    models: list[tuple[bool, ...]] = []
    while True:
        confl = eng.propagate()
        if confl is not None:
            if not eng.backtrack(after_model=False):
                return models, True
            continue
        var = eng.next_var(proj_vars)
        projected = var is not None
        if var is None:
            var = eng.next_var(rest)
        if var is None:
            full = eng.model()
            if not check_model(problem.clauses, full,
                               list(problem.assumptions) + list(assumptions)):
                raise AssertionError("solver produced an invalid model")
            models.append(tuple(full[v - 1] for v in proj_vars))
            if len(models) >= cap:
                return models, False
            if not eng.backtrack(after_model=True):
                return models, True
            continue
        eng.decide(var, projected=projected)


def brute_force(problem: ColoringProblem, assumptions: Sequence[int] = ()) -> Verdict:
    """Exhaustive oracle: enumerate all assignments of the free variables.

    Variables pinned by unit clauses or assumptions are substituted first;
    at most BRUTE_FORCE_MAX_FREE free variables are allowed.
    """
    fixed: dict[int, bool] = {}
    for src in (list(problem.clauses), [(a,) for a in list(problem.assumptions) + list(assumptions)]):
        for clause in src:
            if len(clause) == 1:
                lit = clause[0]
                want = lit > 0
                if fixed.get(abs(lit), want) != want:
                    return Verdict("unsat")
                fixed[abs(lit)] = want

    free = [v for v in range(1, problem.var_count + 1) if v not in fixed]
    if len(free) > BRUTE_FORCE_MAX_FREE:
        raise ValueError(
            f"{len(free)} free variables exceed the brute-force limit of {BRUTE_FORCE_MAX_FREE}")
    bit_of = {v: i for i, v in enumerate(free)}

    residual: list[list[int]] = []
    for clause in list(problem.clauses) + [(a,) for a in list(problem.assumptions) + list(assumptions)]:
        lits = []
        satisfied = False
        for lit in clause:
            var = abs(lit)
            if var in fixed:
                if fixed[var] == (lit > 0):
                    satisfied = True
                    break
            else:
                lits.append(lit)
        if satisfied:
            continue
        if not lits:
            return Verdict("unsat")
        residual.append(lits)

    def build_model(index: int) -> tuple[bool, ...]:
        vals = [False] * problem.var_count
        for var, val in fixed.items():
            vals[var - 1] = val
        for var in free:
            vals[var - 1] = bool((index >> bit_of[var]) & 1)
        return tuple(vals)

    if not residual:
        return Verdict("sat", model=build_model(0))

    total = 1 << len(free)
    chunk = 1 << 20
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.uint64)
        sat = np.ones(stop - start, dtype=bool)
        for lits in residual:
            cmask = np.zeros(stop - start, dtype=bool)
            for lit in lits:
                bit = np.uint64(bit_of[abs(lit)])
                isset = ((idx >> bit) & np.uint64(1)).astype(bool)
                cmask |= isset if lit > 0 else ~isset
            sat &= cmask
            if not sat.any():
                break
        hits = np.nonzero(sat)[0]
        if hits.size:
            model = build_model(start + int(hits[0]))
            if not check_model(problem.clauses, model,
                               list(problem.assumptions) + list(assumptions)):
                raise AssertionError("brute force produced an invalid model")
            return Verdict("sat", model=model)
    return Verdict("unsat")


# ---------------------------------------------------------------------------
# DIMACS export / import
# ---------------------------------------------------------------------------


def export_dimacs(problem: ColoringProblem) -> tuple[str, str]:
    """Byte-deterministic DIMACS CNF text plus an 'index name' variable map."""
    rows = list(problem.clauses) + [(a,) for a in problem.assumptions]
    lines = [f"p cnf {problem.var_count} {len(rows)}"]
    for clause in rows:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    cnf = "\n".join(lines) + "\n"
    vm_lines = []
    for v in range(1, problem.var_count + 1):
        vm_lines.append(f"{v} {problem.names[v - 1]}")
    return cnf, "\n".join(vm_lines) + "\n"


def parse_dimacs(cnf_text: str, varmap_text: Optional[str] = None) -> ColoringProblem:
    var_count = None
    clauses: list[tuple[int, ...]] = []
    for raw in cnf_text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line: {line!r}")
            var_count = int(parts[2])
            continue
        lits = [int(tok) for tok in line.split()]
        if not lits or lits[-1] != 0:
            raise ValueError(f"clause line must end with 0: {line!r}")
        clauses.append(tuple(lits[:-1]))
    if var_count is None:
        raise ValueError("missing 'p cnf' header")
    names = [f"x{v}" for v in range(1, var_count + 1)]
    if varmap_text is not None:
        for raw in varmap_text.splitlines():
            line = raw.strip()
            if not line:
                continue
            idx_s, name = line.split(" ", 1)
            names[int(idx_s) - 1] = name
    is_aux = [n.startswith("aux:") for n in names]
    return ColoringProblem(
        var_count=var_count,
        clauses=clauses,
        names=names,
        is_aux=is_aux,
        name_to_var={n: i + 1 for i, n in enumerate(names)},
    )


# ---------------------------------------------------------------------------
# Certificate replay
# ---------------------------------------------------------------------------


def replay_unsat_trace(clauses: Sequence[Sequence[int]], trace: Sequence[Sequence]) -> bool:
    """Re-check an unsat trace step by step, independently of the engine.

    Verifies that every implication is forced by its reason clause, every
    conflict clause is fully falsified, every flip answers a conflict on
    the deepest open decision, and that the final conflict happens with no
    open decision left (decision level 0).  Raises CertificateError on the
    first discrepancy.
    """
    assign: dict[int, bool] = {}
    trail: list[int] = []
    # decisions: [position in trail, literal, flipped?]
    decisions: list[list] = []
    conflict_pending = False

    def clause_at(cid) -> Sequence[int]:
        if not isinstance(cid, int) or not 0 <= cid < len(clauses):
            raise CertificateError(f"clause id {cid!r} out of range")
        return clauses[cid]

    def set_lit(lit: int) -> None:
        var = abs(lit)
        if var in assign:
            raise CertificateError(f"literal {lit} assigned twice")
        assign[var] = lit > 0
        trail.append(lit)

    def lit_false(lit: int) -> bool:
        var = abs(lit)
        return var in assign and assign[var] != (lit > 0)

    for ev in trace:
        tag = ev[0]
        if conflict_pending and tag not in ("flip",):
            raise CertificateError(f"expected flip after conflict, got {tag}")
        if tag == "assume":
            lit = ev[1]
            if abs(lit) in assign:
                if assign[abs(lit)] != (lit > 0):
                    raise CertificateError("assumption contradicts trail without conflict event")
                continue
            set_lit(lit)
        elif tag == "conflict_assume":
            lit = ev[1]
            if not lit_false(lit):
                raise CertificateError("conflicting assumption is not falsified")
            if decisions:
                raise CertificateError("assumption conflict above decision level 0")
            return True
        elif tag == "decide":
            lit = ev[1]
            decisions.append([len(trail), lit, False])
            set_lit(lit)
        elif tag == "imply":
            lit, cid = ev[1], ev[2]
            clause = clause_at(cid)
            if lit not in clause:
                raise CertificateError(f"implied literal {lit} not in clause {cid}")
            for other in clause:
                if other != lit and not lit_false(other):
                    raise CertificateError(
                        f"clause {cid} does not force {lit}: {other} is not false")
            set_lit(lit)
        elif tag == "conflict":
            cid = ev[1]
            for lit in clause_at(cid):
                if not lit_false(lit):
                    raise CertificateError(f"conflict clause {cid} is not fully falsified")
            conflict_pending = True
        elif tag == "flip":
            lit = ev[1]
            if not conflict_pending:
                raise CertificateError("flip without a preceding conflict")
            while decisions:
                pos, dlit, flipped = decisions[-1]
                for undone in reversed(trail[pos:]):
                    del assign[abs(undone)]
                del trail[pos:]
                if flipped:
                    decisions.pop()
                    continue
                if lit != -dlit:
                    raise CertificateError(
                        f"flip {lit} does not negate the deepest open decision {dlit}")
                decisions[-1][2] = True
                set_lit(lit)
                break
            else:
                raise CertificateError("flip with no open decision")
            conflict_pending = False
        else:
            raise CertificateError(f"unknown trace event {tag!r}")

    if not conflict_pending:
        raise CertificateError("trace does not end in a conflict")
    if any(not flipped for _, _, flipped in decisions):
        raise CertificateError("final conflict leaves an unexplored branch")
    return True


def replay_model(clauses: Sequence[Sequence[int]], model: Sequence[bool],
                 assumptions: Sequence[int] = ()) -> bool:
    if not check_model(clauses, model, assumptions):
        raise CertificateError("model does not satisfy the clause set")
    return True


def verdict_to_json_text(verdict: Verdict) -> str:
    return json.dumps(verdict.to_json(), sort_keys=True, indent=2) + "\n"
