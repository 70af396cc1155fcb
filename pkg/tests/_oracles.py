"""Independent brute-force oracles used only by the test suite.

These deliberately avoid the library's anchor-pair matcher and direction
walker: chains are found by exhaustive subset growth, embeddings by
distance-preserving bijection search.  Both enumerations are exact and
complete (pruning only discards subsets whose partial distance multiset
already fails, which can never exclude a true hit).
"""

from collections import Counter

from bluefive.field import FieldElement
from bluefive.geometry import collinear, dist2


def _pair_key(p, q):
    return tuple(dist2(p, q).serialize())


def chain_sets_brute(cfg, k):
    """Frozensets of node names forming a k-run of unit-spaced collinear points."""
    n = len(cfg)
    pts = cfg.points
    allowed = {tuple(FieldElement(d * d).serialize()) for d in range(1, k)}
    hits = set()

    def extend(chosen, start):
        if len(chosen) == k:
            if _is_chain([pts[i] for i in chosen]):
                hits.add(frozenset(cfg.names[i] for i in chosen))
            return
        for j in range(start, n):
            if all(_pair_key(pts[j], pts[i]) in allowed for i in chosen):
                extend(chosen + [j], j + 1)

    extend([], 0)
    return hits


def _is_chain(points):
    k = len(points)
    for i in range(2, k):
        if not collinear(points[0], points[1], points[i]):
            return False
    pts = sorted(points, key=lambda p: p.coord_key())
    step = pts[1] - pts[0]
    if dist2(pts[0], pts[1]) != FieldElement(1):
        return False
    for i in range(1, k - 1):
        if pts[i + 1] - pts[i] != step:
            return False
    return True


def embeddings_brute(cfg, tpl):
    """All ordered embeddings of the template, by bijection backtracking."""
    m = len(tpl.points)
    n = len(cfg)
    tpl_multiset = Counter()
    for i in range(m):
        for j in range(i + 1, m):
            tpl_multiset[_pair_key(tpl.points[i], tpl.points[j])] += 1
    hits = []

    def subsets(chosen, start, multiset):
        if len(chosen) == m:
            if multiset == tpl_multiset:
                _assign(chosen)
            return
        for j in range(start, n):
            extra = Counter()
            ok = True
            for i in chosen:
                key = _pair_key(cfg.points[j], cfg.points[i])
                extra[key] += 1
                if multiset[key] + extra[key] > tpl_multiset[key]:
                    ok = False
                    break
            if ok:
                subsets(chosen + [j], j + 1, multiset + extra)

    def _assign(subset):
        # try every distance-preserving bijection template -> subset
        def rec(mapping, used):
            t = len(mapping)
            if t == m:
                hits.append(tuple(cfg.names[i] for i in mapping))
                return
            for j in subset:
                if j in used:
                    continue
                if all(_pair_key(tpl.points[t], tpl.points[s])
                       == _pair_key(cfg.points[j], cfg.points[mapping[s]])
                       for s in range(t)):
                    rec(mapping + [j], used | {j})

        rec([], set())

    subsets([], 0, Counter())
    return set(hits)
