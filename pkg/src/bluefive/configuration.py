"""Named finite point sets and their combinatorial structure.

A Configuration deduplicates points, keeps aliases, and answers the
queries everything else is built from: unit-distance pairs, runs of k
collinear points at unit spacing, and congruent embeddings of the small
template shapes.  emit_clauses turns a configuration plus a rule set into
a ColoringProblem.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .field import FieldElement, ONE, fe
from .geometry import (Point, cross, dist2, dot, node)
from .solver import ColoringProblem, UnprovedRuleError

# rule identifiers
RED_L2_FORBIDDEN = "RED_L2_FORBIDDEN"
BLUE_L5_FORBIDDEN = "BLUE_L5_FORBIDDEN"
BLUE_EQ3_RED_CENTER = "BLUE_EQ3_RED_CENTER"
RED_EQ3_RED_CENTER = "RED_EQ3_RED_CENTER"
T7_ALL_RED = "T7_ALL_RED"
NO_RED_T3 = "NO_RED_T3"
T3_TO_T6_SCHEMA = "T3_TO_T6_SCHEMA"

BASE_RULES = (RED_L2_FORBIDDEN, BLUE_L5_FORBIDDEN)


class Configuration:
    """Ordered, deduplicated point registry.  Node order is insertion order."""

    def __init__(self, entries: Iterable[tuple[str, Point]]) -> None:
        self.names: list[str] = []
        self.points: list[Point] = []
        self.index: dict[str, int] = {}
        self.point_index: dict[Point, int] = {}
        self.aliases: dict[str, str] = {}
        for name, pt in entries:
            if " " in name:
                raise ValueError(f"node name may not contain spaces: {name!r}")
            if name in self.index:
                raise ValueError(f"duplicate node name {name!r}")
            existing = self.point_index.get(pt)
            if existing is None:
                idx = len(self.points)
                self.names.append(name)
                self.points.append(pt)
                self.point_index[pt] = idx
                self.index[name] = idx
            else:
                self.aliases[name] = self.names[existing]
                self.index[name] = existing
        self._bucket_cache: dict = {}

    def __len__(self) -> int:
        return len(self.points)

    def index_of(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise KeyError(f"unknown node {name!r}") from None

    def point_of(self, name: str) -> Point:
        return self.points[self.index_of(name)]

    def primary(self, name: str) -> str:
        return self.names[self.index_of(name)]

    def has_point(self, pt: Point) -> bool:
        return pt in self.point_index

    def name_at(self, pt: Point) -> str:
        return self.names[self.point_index[pt]]

    def restrict(self, keep: Iterable[str]) -> "Configuration":
        """Induced sub-configuration on the given nodes (insertion order kept)."""
        keep_idx = sorted({self.index_of(n) for n in keep})
        sub = Configuration((self.names[i], self.points[i]) for i in keep_idx)
        kept = set(keep_idx)
        for alias, primary in self.aliases.items():
            if self.index[primary] in kept:
                sub.index[alias] = sub.index[primary]
                sub.aliases[alias] = primary
        return sub

    # -- candidate pair search ------------------------------------------------

    def _buckets(self) -> dict[tuple[int, int], list[int]]:
        cache = self._bucket_cache.get("grid")
        if cache is None:
            cache = {}
            for i, pt in enumerate(self.points):
                key = (int(float(pt.x) // 1), int(float(pt.y) // 1))
                cache.setdefault(key, []).append(i)
            self._bucket_cache["grid"] = cache
        return cache

    def pairs_with_dist2(self, d2: FieldElement) -> list[tuple[int, int]]:
        """All unordered index pairs at exactly squared distance d2.

        A float grid narrows the candidates; every candidate is confirmed
        with exact arithmetic, and the grid margin is far wider than any
        rounding error, so no true pair can be missed.  Results are cached;
        configurations are immutable once built.
        """
        key = ("pairs", d2)
        cached = self._bucket_cache.get(key)
        if cached is not None:
            return cached
        radius = float(d2) ** 0.5
        reach = int(radius) + 2
        grid = self._buckets()
        out = []
        for (bx, by), idxs in grid.items():
            for dx in range(-reach, reach + 1):
                for dy in range(-reach, reach + 1):
                    other = grid.get((bx + dx, by + dy))
                    if other is None:
                        continue
                    for i in idxs:
                        for j in other:
                            if i < j and dist2(self.points[i], self.points[j]) == d2:
                                out.append((i, j))
        out.sort()
        self._bucket_cache[key] = out
        return out


def build_configuration(entries: Iterable[tuple[str, Point]]) -> Configuration:
    return Configuration(entries)


def unit_pairs(cfg: Configuration) -> list[tuple[str, str]]:
    """All unordered node pairs at squared distance exactly 1."""
    return [(cfg.names[i], cfg.names[j]) for i, j in cfg.pairs_with_dist2(ONE)]


def _canonical_direction(v: Point) -> Point:
    s = v.x.sign()
    if s > 0 or (s == 0 and v.y.sign() > 0):
        return v
    return Point(-v.x, -v.y)


def unit_directions(cfg: Configuration) -> list[Point]:
    """Distinct unit-length difference vectors, one sign representative each."""
    seen: dict[Point, None] = {}
    for i, j in cfg.pairs_with_dist2(ONE):
        v = _canonical_direction(cfg.points[j] - cfg.points[i])
        seen.setdefault(v, None)
    dirs = list(seen)
    dirs.sort(key=lambda p: p.coord_key())
    return dirs


def ell_chains(cfg: Configuration, k: int) -> list[tuple[str, ...]]:
    """All runs of k nodes at unit spacing on a line, one orientation each."""
    if k < 2:
        raise ValueError("k must be >= 2")
    key = ("chains", k)
    cached = cfg._bucket_cache.get(key)
    if cached is not None:
        return cached
    chains = []
    for v in unit_directions(cfg):
        for i, start in enumerate(cfg.points):
            run = [i]
            pt = start
            for _ in range(k - 1):
                pt = pt + v
                j = cfg.point_index.get(pt)
                if j is None:
                    break
                run.append(j)
            if len(run) == k:
                chains.append(tuple(run))
    keyed = [(tuple(cfg.points[i].coord_key() for i in run), run) for run in chains]
    keyed.sort(key=lambda kv: kv[0])
    result = [tuple(cfg.names[i] for i in run) for _, run in keyed]
    cfg._bucket_cache[key] = result
    return result


# ---------------------------------------------------------------------------
# Templates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Template:
    id: str
    points: tuple[Point, ...]
    min_dist2: FieldElement


def _template(tid: str, lattice_pts: Sequence[tuple[int, int]],
              expect_min: int) -> Template:
    pts = tuple(node(a, b) for a, b in lattice_pts)
    best = None
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = dist2(pts[i], pts[j])
            if best is None or d < best:
                best = d
    if best != fe(expect_min):
        raise AssertionError(f"template {tid}: smallest squared distance is {best}")
    return Template(tid, pts, best)


def _line_template(tid: str, k: int) -> Template:
    pts = tuple(Point(i, 0) for i in range(k))
    return Template(tid, pts, ONE)


# The five sqrt3-spaced shapes, written on the sqrt3-scaled 60-degree
# sublattice spanned by f1 = (2,-1) and f2 = (1,1) in unit-lattice
# coordinates: T3 = {0, f1, f2}, T4 adds f1+f2, T5 adds 2*f1,
# T6 = {0, f1, 2f1, f2, f1+f2, 2f2}, T7 = {0, f1, 2f1, 3f1, f2, f1+f2, 2f1+f2}.
TEMPLATES: dict[str, Template] = {}
for _tid, _pts, _min in [
    ("L2", None, None),
    ("L5", None, None),
    ("T3", [(0, 0), (2, -1), (1, 1)], 3),
    ("T4", [(0, 0), (2, -1), (1, 1), (3, 0)], 3),
    ("T5", [(0, 0), (2, -1), (1, 1), (3, 0), (4, -2)], 3),
    ("T6", [(0, 0), (2, -1), (4, -2), (1, 1), (3, 0), (2, 2)], 3),
    ("T7", [(0, 0), (2, -1), (4, -2), (6, -3), (1, 1), (3, 0), (5, -1)], 3),
    # side-3 equilateral triangle plus its centre, in one congruence class
    ("EQ3_CENTERED", [(0, 0), (3, 0), (0, 3), (1, 1)], 3),
]:
    if _tid == "L2":
        TEMPLATES[_tid] = _line_template("L2", 2)
    elif _tid == "L5":
        TEMPLATES[_tid] = _line_template("L5", 5)
    else:
        TEMPLATES[_tid] = _template(_tid, _pts, _min)


def template(tid: str) -> Template:
    try:
        return TEMPLATES[tid]
    except KeyError:
        raise KeyError(f"unknown template {tid!r}") from None


def _rigid_maps(src0: Point, src1: Point, dst0: Point, dst1: Point):
    """The unique direct map sending the ordered source pair to the ordered
    destination pair (assumes equal squared span lengths)."""
    u = src1 - src0
    v = dst1 - dst0
    uu = dot(u, u)
    cos_phi = dot(u, v) / uu
    sin_phi = cross(u, v) / uu

    def apply(p: Point) -> Point:
        dx = p.x - src0.x
        dy = p.y - src0.y
        return Point(dst0.x + cos_phi * dx - sin_phi * dy,
                     dst0.y + sin_phi * dx + cos_phi * dy)

    return apply


def match_template(cfg: Configuration, tpl: Template) -> list[tuple[str, ...]]:
    """All congruent embeddings of the template, mirror images included.

    Anchors the most distant ordered template pair onto every
    matching-length pair of the configuration, solves the direct and the
    mirrored rigid map, and keeps those whose full image lands on nodes.
    Every returned embedding is re-verified against the template's
    pairwise squared-distance multiset.
    """
    m = len(tpl.points)
    if m < 2:
        raise ValueError("template needs at least 2 points")
    if len(cfg) < m:
        return []
    cache_key = ("match", tpl.id)
    cached = cfg._bucket_cache.get(cache_key)
    if cached is not None:
        return cached
    best = (0, 1)
    best_d = dist2(tpl.points[0], tpl.points[1])
    for i in range(m):
        for j in range(i + 1, m):
            d = dist2(tpl.points[i], tpl.points[j])
            if d > best_d:
                best_d = d
                best = (i, j)
    i0, j0 = best

    variants = [tpl.points,
                tuple(Point(p.x, -p.y) for p in tpl.points)]
    tpl_multiset = sorted(
        dist2(tpl.points[i], tpl.points[j]).serialize()
        for i in range(m) for j in range(i + 1, m))

    seen: set[tuple[int, ...]] = set()
    out: list[tuple[int, ...]] = []
    for a, b in cfg.pairs_with_dist2(best_d):
        for p_idx, q_idx in ((a, b), (b, a)):
            dst0, dst1 = cfg.points[p_idx], cfg.points[q_idx]
            for pts in variants:
                mapped = _rigid_maps(pts[i0], pts[j0], dst0, dst1)
                emb = []
                for p in pts:
                    k = cfg.point_index.get(mapped(p))
                    if k is None:
                        break
                    emb.append(k)
                if len(emb) != m:
                    continue
                key = tuple(emb)
                if key in seen:
                    continue
                seen.add(key)
                got = sorted(
                    dist2(cfg.points[emb[i]], cfg.points[emb[j]]).serialize()
                    for i in range(m) for j in range(i + 1, m))
                if got != tpl_multiset:
                    raise AssertionError("embedding failed the distance multiset check")
                out.append(key)
    result = [tuple(cfg.names[i] for i in emb) for emb in out]
    cfg._bucket_cache[cache_key] = result
    return result


def template_extensions(small_id: str, big_id: str,
                        anchor_points: Sequence[Point]) -> list[tuple[Point, ...]]:
    """All plane placements of the big template containing the anchor copy
    of the small template.  Returned as point tuples sorted deterministically;
    points may fall outside any particular configuration."""
    small = template(small_id)
    big = template(big_id)
    if len(anchor_points) != len(small.points):
        raise ValueError("anchor size does not match the small template")
    anchor_cfg = Configuration(
        (f"_t{i}", p) for i, p in enumerate(anchor_points))
    anchor_orders = match_template(anchor_cfg, small)
    if not anchor_orders:
        raise ValueError(f"anchor is not congruent to template {small_id}")
    big_cfg = Configuration((f"_b{i}", p) for i, p in enumerate(big.points))
    sub_positions = match_template(big_cfg, small)

    found: dict[frozenset, tuple[Point, ...]] = {}
    for order in anchor_orders:
        targets = [anchor_cfg.point_of(n) for n in order]
        for sub in sub_positions:
            srcs = [big_cfg.point_of(n) for n in sub]
            mapped = _rigid_maps(srcs[0], srcs[1], targets[0], targets[1])
            if all(mapped(s) == t for s, t in zip(srcs, targets)):
                image = tuple(mapped(p) for p in big.points)
                found.setdefault(frozenset(image), image)
    images = list(found.values())
    images.sort(key=lambda pts: [c for p in pts for c in p.serialize()["x"] + p.serialize()["y"]])
    return images


# ---------------------------------------------------------------------------
# Rules and clause generation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PatternRule:
    """Forbidden coloured pattern: no embedding of the template may take
    the given role colours simultaneously."""
    rule_id: str
    template_id: str
    roles: tuple[str, ...]
    lemma_id: str
    proved: bool = False


@dataclass(frozen=True)
class ExtensionSchema:
    """Every all-red T3 (or each listed anchor) extends to an all-red T6."""
    lemma_id: str
    proved: bool = False
    anchors: Optional[tuple[tuple[str, ...], ...]] = None


_PATTERN_RULE_DEFS: dict[str, tuple[str, tuple[str, ...], str]] = {
    BLUE_EQ3_RED_CENTER: ("EQ3_CENTERED", ("blue", "blue", "blue", "red"), "bluetr"),
    RED_EQ3_RED_CENTER: ("EQ3_CENTERED", ("red", "red", "red", "red"), "redtr"),
    T7_ALL_RED: ("T7", ("red",) * 7, "t7"),
    NO_RED_T3: ("T3", ("red",) * 3, "hypothesis"),
}


def pattern_rule(rule_id: str, proved: bool = False,
                 lemma_id: Optional[str] = None) -> PatternRule:
    template_id, roles, default_lemma = _PATTERN_RULE_DEFS[rule_id]
    return PatternRule(rule_id, template_id, roles,
                       lemma_id or default_lemma, proved)


@dataclass
class RuleSet:
    base: tuple[str, ...] = BASE_RULES
    derived: tuple[PatternRule, ...] = ()
    existential: Optional[ExtensionSchema] = None

    def rule_ids(self) -> list:
        ids: list = list(self.base) + [r.rule_id for r in self.derived]
        if self.existential is not None:
            entry: dict = {"rule": T3_TO_T6_SCHEMA}
            if self.existential.anchors is not None:
                entry["anchors"] = [list(a) for a in self.existential.anchors]
            ids.append(entry)
        return ids


def emit_clauses(cfg: Configuration, rules: RuleSet,
                 fixed: dict[str, str]) -> ColoringProblem:
    """Encode the configuration under the rule set as CNF.

    Variable v (true = red) is the v-th node in insertion order;
    auxiliary selector variables for the extension schema follow.  All
    derived rules must be marked proved.
    """
    for rule in rules.derived:
        if not rule.proved:
            raise UnprovedRuleError(
                f"derived rule {rule.rule_id} has not been established (needs {rule.lemma_id})")
    if rules.existential is not None and not rules.existential.proved:
        raise UnprovedRuleError(
            f"extension schema has not been established (needs {rules.existential.lemma_id})")

    n = len(cfg)
    names = list(cfg.names)
    is_aux = [False] * n
    clauses: list[tuple[int, ...]] = []
    seen: set[frozenset[int]] = set()

    def add(clause: Sequence[int]) -> None:
        key = frozenset(clause)
        if key in seen:
            return
        seen.add(key)
        clauses.append(tuple(clause))

    if RED_L2_FORBIDDEN in rules.base:
        for i, j in cfg.pairs_with_dist2(ONE):
            add((-(i + 1), -(j + 1)))
    if BLUE_L5_FORBIDDEN in rules.base:
        for chain in ell_chains(cfg, 5):
            add(tuple(cfg.index_of(nm) + 1 for nm in chain))

    for rule in rules.derived:
        tpl = template(rule.template_id)
        for emb in match_template(cfg, tpl):
            lits = []
            for nm, role in zip(emb, rule.roles):
                v = cfg.index_of(nm) + 1
                if role == "red":
                    lits.append(-v)
                elif role == "blue":
                    lits.append(v)
            add(tuple(lits))

    if rules.existential is not None:
        t3 = template("T3")
        if rules.existential.anchors is not None:
            anchor_sets = [tuple(cfg.primary(nm) for nm in anchor)
                           for anchor in rules.existential.anchors]
        else:
            uniq: dict[frozenset, tuple[str, ...]] = {}
            for emb in match_template(cfg, t3):
                uniq.setdefault(frozenset(emb), tuple(sorted(emb, key=cfg.index_of)))
            anchor_sets = sorted(uniq.values(), key=lambda t: [cfg.index_of(nm) for nm in t])
        for anchor in anchor_sets:
            pts = [cfg.point_of(nm) for nm in anchor]
            candidates = template_extensions("T3", "T6", pts)
            tag = ",".join(anchor)
            allred = len(names) + 1
            names.append(f"aux:allred:{tag}")
            is_aux.append(True)
            tri = [cfg.index_of(nm) + 1 for nm in anchor]
            add((allred, -tri[0], -tri[1], -tri[2]))
            sel_vars = []
            for ci, cand in enumerate(candidates):
                sv = len(names) + 1
                names.append(f"aux:sel:{tag}:{ci}")
                is_aux.append(True)
                sel_vars.append(sv)
                for p in cand:
                    k = cfg.point_index.get(p)
                    if k is not None:
                        add((-sv, k + 1))
            add(tuple([-allred] + sel_vars))

    pinned: dict[int, str] = {}
    for nm, colour in fixed.items():
        if colour not in ("red", "blue"):
            raise ValueError(f"bad colour {colour!r} for node {nm!r}")
        idx = cfg.index_of(nm)  # raises on unknown names; aliases allowed
        prev = pinned.get(idx)
        if prev is not None and prev != colour:
            raise ValueError(f"node {cfg.names[idx]!r} fixed both red and blue")
        pinned[idx] = colour
    for idx in sorted(pinned):
        add((idx + 1,) if pinned[idx] == "red" else (-(idx + 1),))

    name_to_var = {nm: i + 1 for i, nm in enumerate(names)}
    for alias, primary in cfg.aliases.items():
        name_to_var[alias] = cfg.index[primary] + 1
    return ColoringProblem(
        var_count=len(names),
        clauses=clauses,
        names=names,
        is_aux=is_aux,
        name_to_var=name_to_var,
    )


# ---------------------------------------------------------------------------
# JSON instance format
# ---------------------------------------------------------------------------


def instance_to_json(cfg: Configuration, fixed: dict[str, str],
                     rules: RuleSet) -> dict:
    points = []
    reverse_aliases: dict[str, list[str]] = {}
    for alias, primary in cfg.aliases.items():
        reverse_aliases.setdefault(primary, []).append(alias)
    for nm, pt in zip(cfg.names, cfg.points):
        entry = {"name": nm, "x": pt.x.serialize(), "y": pt.y.serialize()}
        if nm in reverse_aliases:
            entry["aliases"] = sorted(reverse_aliases[nm])
        points.append(entry)
    return {
        "points": points,
        "fixed": {nm: fixed[nm] for nm in sorted(fixed)},
        "rules": rules.rule_ids(),
    }


def rules_from_ids(rule_ids: Iterable) -> RuleSet:
    base = []
    derived = []
    existential = None
    for entry in rule_ids:
        if isinstance(entry, dict):
            if entry.get("rule") != T3_TO_T6_SCHEMA:
                raise ValueError(f"unknown rule entry {entry!r}")
            anchors = entry.get("anchors")
            existential = ExtensionSchema(
                lemma_id="t3t6", proved=True,
                anchors=tuple(tuple(a) for a in anchors) if anchors else None)
        elif entry in BASE_RULES:
            base.append(entry)
        elif entry == T3_TO_T6_SCHEMA:
            existential = ExtensionSchema(lemma_id="t3t6", proved=True, anchors=None)
        elif entry in _PATTERN_RULE_DEFS:
            derived.append(pattern_rule(entry, proved=True))
        else:
            raise ValueError(f"unknown rule id {entry!r}")
    return RuleSet(base=tuple(base), derived=tuple(derived), existential=existential)


def instance_from_json(data: dict) -> tuple[Configuration, dict[str, str], RuleSet]:
    entries = []
    alias_of: dict[str, str] = {}
    for rec in data["points"]:
        pt = Point(FieldElement.deserialize(rec["x"]), FieldElement.deserialize(rec["y"]))
        entries.append((rec["name"], pt))
        for alias in rec.get("aliases", ()):
            alias_of[alias] = pt
    cfg = Configuration(entries)
    for alias, pt in alias_of.items():
        idx = cfg.point_index[pt]
        cfg.index[alias] = idx
        cfg.aliases[alias] = cfg.names[idx]
    fixed = dict(data.get("fixed", {}))
    rules = rules_from_ids(data.get("rules", list(BASE_RULES)))
    return cfg, fixed, rules
