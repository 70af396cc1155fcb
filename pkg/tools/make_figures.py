#!/usr/bin/env python3
"""Regenerate the shipped figure registries under src/bluefive/data/figures/.

Each registry records exact coordinates, the colours shown in the
construction diagram (red / blue / undetermined), the rule ids its
instance uses, and the named facts (unit pairs, five-chains, template
placements) that the transcription self-check re-verifies.
"""

from __future__ import annotations

import json
import pathlib
from fractions import Fraction

from bluefive.field import SQRT3, fe
from bluefive.geometry import Point, chord_rotation, node, point

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "bluefive" / "data" / "figures"


def dump(fid: str, entries, colors, rules, claims, helpers=()):
    points = []
    for name, pt in entries:
        rec = {"name": name, "x": pt.x.serialize(), "y": pt.y.serialize()}
        if name in colors:
            rec["color"] = colors[name]
        if name in helpers:
            rec["helper"] = True
        points.append(rec)
    data = {
        "id": fid,
        "points": points,
        "fixed": {n: c for n, c in sorted(colors.items())},
        "rules": rules,
        "claims": claims,
    }
    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / f"{fid}.json"
    path.write_text(json.dumps(data, sort_keys=True, indent=2) + "\n")
    print(f"wrote {path}")


def fig1a():
    pts = {
        "A": node(0, 0), "F": node(0, 1), "G": node(0, 2), "C": node(0, 3),
        "D": node(-1, 1), "E": node(-2, 2), "B": node(-3, 3), "O": node(-1, 2),
        "Y": node(0, -1), "X": node(1, -1),
    }
    order = ["A", "F", "G", "C", "D", "E", "B", "O", "Y", "X"]
    colors = {"O": "red", "A": "blue", "B": "blue", "C": "blue",
              "D": "blue", "E": "blue", "F": "blue", "G": "blue"}
    claims = {
        "blue_unit": [["D", "O"], ["E", "O"], ["F", "O"], ["G", "O"]],
        "unit": [["X", "Y"], ["X", "A"], ["Y", "A"]],
        "ell5": [["X", "A", "D", "E", "B"], ["Y", "A", "F", "G", "C"]],
        "patterns": [{"template": "EQ3_CENTERED", "nodes": ["A", "B", "C", "O"],
                      "center_last": True}],
    }
    dump("fig1a", [(n, pts[n]) for n in order], colors,
         ["RED_L2_FORBIDDEN", "BLUE_L5_FORBIDDEN"], claims)


def fig1b():
    O = point(0, 0)
    A = point(0, -SQRT3)
    B = point(Fraction(-3, 2), fe(0, Fraction(1, 2)))
    C = point(Fraction(3, 2), fe(0, Fraction(1, 2)))
    rot = chord_rotation(O, -1)
    Ap, Bp, Cp = rot(A), rot(B), rot(C)
    order = [("O", O), ("C", C), ("C'", Cp), ("B", B), ("B'", Bp), ("A", A), ("A'", Ap)]
    colors = {"O": "red", "A": "red", "B": "red", "C": "red",
              "A'": "blue", "B'": "blue", "C'": "blue"}
    claims = {
        "blue_unit": [["A'", "A"], ["B'", "B"], ["C'", "C"]],
        "unit": [["A", "A'"], ["B", "B'"], ["C", "C'"]],
        "ell5": [],
        "patterns": [
            {"template": "EQ3_CENTERED", "nodes": ["A", "B", "C", "O"], "center_last": True},
            {"template": "EQ3_CENTERED", "nodes": ["A'", "B'", "C'", "O"], "center_last": True},
        ],
    }
    dump("fig1b", order, colors,
         ["RED_L2_FORBIDDEN", "BLUE_L5_FORBIDDEN", "BLUE_EQ3_RED_CENTER"], claims)


def fig3():
    s = SQRT3
    half_s = fe(0, Fraction(1, 2))
    h = fe(Fraction(3, 2))
    B = point(0, 0)
    C = point(s, 0)
    A = point(fe(0, -1), 0)
    D = point(fe(0, 2), 0)
    X = point(half_s, h)
    F = point(half_s, -h)
    E = point(-half_s, -h)
    G = point(fe(0, Fraction(3, 2)), -h)
    rotB = chord_rotation(B, -1)
    rotC = chord_rotation(C, -1)
    Xp, Ap, Fp = rotB(X), rotB(A), rotB(F)
    Xpp, Dpp, Fpp = rotC(X), rotC(D), rotC(F)
    order = [("B", B), ("C", C), ("A", A), ("A'", Ap), ("D", D), ("X", X),
             ("X'", Xp), ("F", F), ("F'", Fp), ("E", E), ("G", G),
             ("D''", Dpp), ("X''", Xpp), ("F''", Fpp)]
    colors = {"A": "red", "B": "red", "C": "red", "D": "red", "E": "red",
              "F": "red", "G": "red", "X'": "red", "X''": "red",
              "X": "blue", "A'": "blue", "F'": "blue", "D''": "blue", "F''": "blue"}
    claims = {
        "blue_unit": [["A'", "A"], ["F'", "F"], ["D''", "D"], ["F''", "F"]],
        "unit": [["A", "A'"], ["F", "F'"], ["X", "X'"],
                 ["D", "D''"], ["F", "F''"], ["X", "X''"], ["X'", "X''"]],
        "ell5": [],
        "patterns": [
            {"template": "T7", "nodes": ["A", "B", "C", "D", "E", "F", "G"]},
            {"template": "EQ3_CENTERED", "nodes": ["X'", "A'", "F'", "B"], "center_last": True},
            {"template": "EQ3_CENTERED", "nodes": ["X''", "D''", "F''", "C"], "center_last": True},
        ],
    }
    dump("fig3", order, colors,
         ["RED_L2_FORBIDDEN", "BLUE_L5_FORBIDDEN", "BLUE_EQ3_RED_CENTER"], claims)


def fig4():
    pts = {
        "A": (0, 0), "B": (1, 1), "C": (2, -1),
        "J": (-1, 0), "I": (-1, 1), "Z": (-1, 2), "N": (-1, 3), "P": (-1, 4),
        "K": (-1, -1), "L": (-1, -2), "M": (0, -2), "Y": (1, -2),
        "G": (2, -2), "H": (3, -2), "X": (3, 0), "E": (2, 1), "F": (1, 2),
        "Q": (0, 3),
    }
    order = ["A", "B", "C", "J", "I", "Z", "N", "P", "K", "L", "M", "Y",
             "G", "H", "X", "E", "F", "Q"]
    colors = {"A": "red", "B": "red", "C": "red",
              "J": "blue", "I": "blue", "Z": "blue", "Y": "blue", "G": "blue",
              "H": "blue", "X": "blue", "E": "blue", "F": "blue"}
    claims = {
        "blue_unit": [["E", "B"], ["F", "B"], ["G", "C"], ["H", "C"],
                      ["I", "A"], ["J", "A"]],
        "unit": [["K", "L"], ["K", "M"], ["N", "P"], ["N", "Q"]],
        "ell5": [["L", "M", "Y", "G", "H"], ["K", "J", "I", "Z", "N"],
                 ["P", "Q", "F", "E", "X"]],
        "patterns": [
            {"template": "T3", "nodes": ["A", "B", "C"]},
            {"template": "T4", "nodes": ["A", "B", "C", "X"]},
            {"template": "T4", "nodes": ["A", "B", "C", "Y"]},
            {"template": "T4", "nodes": ["A", "B", "C", "Z"]},
        ],
    }
    dump("fig4", [(n, node(*pts[n])) for n in order], colors,
         ["RED_L2_FORBIDDEN", "BLUE_L5_FORBIDDEN"], claims)


def fig5():
    pts = {
        "A": (0, 0), "B": (1, 1), "C": (2, -1), "D": (3, 0),
        "K": (0, 2), "L": (1, 2), "X": (2, 2),
        "F": (1, -2), "H": (2, -2), "I": (3, -2), "G": (4, -2),
        "P": (5, -2), "R": (6, -2), "M": (4, 0), "N": (3, 1), "Q": (5, -1),
    }
    order = ["A", "B", "C", "D", "K", "L", "X", "F", "H", "I", "G",
             "P", "R", "M", "N", "Q"]
    colors = {"A": "red", "B": "red", "C": "red", "D": "red",
              "K": "blue", "L": "blue", "X": "blue", "F": "blue", "H": "blue",
              "I": "blue", "G": "blue", "M": "blue", "N": "blue"}
    claims = {
        "blue_unit": [["H", "C"], ["I", "C"], ["K", "B"], ["L", "B"],
                      ["M", "D"], ["N", "D"]],
        "unit": [["P", "Q"], ["P", "R"]],
        "ell5": [["F", "H", "I", "G", "P"], ["X", "N", "M", "Q", "R"]],
        "patterns": [
            {"template": "T4", "nodes": ["A", "B", "C", "D"]},
            {"template": "T5", "nodes": ["A", "B", "C", "D", "X"]},
            {"template": "T5", "nodes": ["A", "B", "C", "D", "F"]},
            {"template": "T5", "nodes": ["A", "B", "C", "D", "G"]},
        ],
    }
    dump("fig5", [(n, node(*pts[n])) for n in order], colors,
         ["RED_L2_FORBIDDEN", "BLUE_L5_FORBIDDEN"], claims)


def fig6():
    pts = {
        "A": (0, 0), "B": (1, 1), "C": (2, -1), "D": (3, 0), "E": (2, 2),
        "G": (-1, 0), "H": (-1, 1), "X": (-1, 2),
        "U": (-1, -1), "T": (-1, -2), "Q": (0, -2), "P": (1, -2),
        "K": (2, -2), "L": (3, -2), "F": (4, -2),
        "N": (4, 0), "M": (4, -1), "R": (4, 1), "S": (4, 2), "V": (4, 3),
        "W": (3, 3), "J": (2, 3), "I": (1, 3), "Y": (0, 3),
    }
    order = ["A", "B", "C", "D", "E", "G", "H", "X", "U", "T", "Q", "P",
             "K", "L", "F", "N", "M", "R", "S", "V", "W", "J", "I", "Y"]
    colors = {"A": "red", "B": "red", "C": "red", "D": "red", "E": "red",
              "G": "blue", "H": "blue", "X": "blue", "K": "blue", "L": "blue",
              "F": "blue", "N": "blue", "M": "blue", "J": "blue", "I": "blue",
              "Y": "blue"}
    claims = {
        "blue_unit": [["G", "A"], ["H", "A"], ["I", "E"], ["J", "E"],
                      ["K", "C"], ["L", "C"], ["M", "D"], ["N", "D"]],
        "unit": [["Q", "P"], ["Q", "U"], ["Q", "T"], ["S", "R"], ["S", "V"], ["S", "W"]],
        "ell5": [["Q", "P", "K", "L", "F"], ["T", "U", "G", "H", "X"],
                 ["F", "M", "N", "R", "S"], ["M", "N", "R", "S", "V"],
                 ["V", "W", "J", "I", "Y"]],
        "patterns": [
            {"template": "T5", "nodes": ["A", "B", "C", "D", "E"]},
            {"template": "EQ3_CENTERED", "nodes": ["X", "E", "C", "B"], "center_last": True},
            {"template": "EQ3_CENTERED", "nodes": ["Y", "A", "D", "B"], "center_last": True},
            {"template": "T7", "nodes": ["A", "B", "C", "D", "E", "P", "R"]},
            {"template": "T6", "nodes": ["A", "B", "C", "D", "E", "F"]},
        ],
    }
    dump("fig6", [(n, node(*pts[n])) for n in order], colors,
         ["RED_L2_FORBIDDEN", "BLUE_L5_FORBIDDEN", "RED_EQ3_RED_CENTER", "T7_ALL_RED"],
         claims)


def figcol1():
    pts = {
        "A": (0, 0), "B": (1, 1), "F": (2, -1), "C": (2, 2), "D": (3, 0), "E": (4, -2),
        "A'": (5, 0), "B'": (6, 1), "F'": (7, -1), "C'": (7, 2), "D'": (8, 0), "E'": (9, -2),
        "K": (1, -1), "L": (2, -2), "I": (3, -3), "Q": (4, -4), "P": (5, -5),
        "J": (5, -1), "N": (5, -2), "M": (5, -3), "R": (5, -4),
        "U": (0, 3), "V": (1, 3), "W": (2, 3), "X1": (3, 3), "X2": (4, 3),
        "S1": (2, 1), "S2": (3, 1), "S3": (4, 1), "S4": (5, 1),
        "X": (4, 2), "Y": (6, -2),
        # unlabeled lattice nodes used by the mirrored forcing rows
        "S1'": (3, -1), "S2'": (4, -1), "S4'": (6, -1),
        "V'": (4, -3), "X1'": (6, -3), "X2'": (7, -3),
    }
    order = ["A", "B", "F", "C", "D", "E",
             "A'", "B'", "F'", "C'", "D'", "E'",
             "K", "L", "I", "Q", "P", "J", "N", "M", "R",
             "U", "V", "W", "X1", "X2", "S1", "S2", "S3", "S4", "X", "Y",
             "S1'", "S2'", "S4'", "V'", "X1'", "X2'"]
    helpers = {"S1'", "S2'", "S4'", "V'", "X1'", "X2'"}
    colors = {"A": "red", "B": "red", "C": "red", "D": "red", "E": "red", "F": "red",
              "K": "blue", "L": "blue", "I": "blue", "J": "blue", "N": "blue",
              "M": "blue", "U": "blue", "V": "blue", "W": "blue",
              "S1": "blue", "S2": "blue"}
    claims = {
        "blue_unit": [["K", "A"], ["L", "F"], ["M", "E"], ["N", "E"],
                      ["V", "C"], ["W", "C"],
                      ["S1", "D"], ["S2", "D"], ["S3", "A'"], ["S4", "A'"],
                      ["S1'", "D"], ["S2'", "E"], ["S4'", "A'"], ["V'", "E"]],
        "unit": [["R", "Q"], ["R", "P"], ["X", "X1"], ["X", "X2"],
                 ["Y", "X1'"], ["Y", "X2'"]],
        "ell5": [["K", "L", "I", "Q", "P"], ["A'", "J", "N", "M", "R"],
                 ["S1", "S2", "S3", "S4", "B'"], ["S1'", "S2'", "J", "S4'", "F'"],
                 ["U", "V", "W", "X1", "X2"], ["I", "V'", "M", "X1'", "X2'"]],
        "patterns": [
            {"template": "T6", "nodes": ["A", "B", "C", "D", "E", "F"]},
            {"template": "T6", "nodes": ["A'", "B'", "C'", "D'", "E'", "F'"]},
            {"template": "EQ3_CENTERED", "nodes": ["A", "D", "I", "F"], "center_last": True},
            {"template": "EQ3_CENTERED", "nodes": ["C", "F", "J", "D"], "center_last": True},
            {"template": "EQ3_CENTERED", "nodes": ["A", "D", "U", "B"], "center_last": True},
            {"template": "T3", "nodes": ["A'", "B'", "F'"]},
        ],
    }
    dump("figcol1", [(n, node(*pts[n])) for n in order], colors,
         ["RED_L2_FORBIDDEN", "BLUE_L5_FORBIDDEN", "RED_EQ3_RED_CENTER"],
         claims, helpers)


def figcol2():
    pts = {
        "A": (0, 0), "B": (-1, 2),
        "A'''": (-5, 0), "B'''": (-6, 2), "C": (-2, 4),
        "H": (-1, 3), "I": (0, 2), "G": (1, 1), "N": (2, 0), "A'": (3, -1),
        "F": (0, 1), "E": (-1, 1), "D": (-2, 1), "B''": (-3, 1), "B'": (2, 1),
        "J": (-2, 2), "K": (-2, 3), "W0": (-2, 0), "A''": (-2, -1),
    }
    order = ["A", "B", "A'''", "B'''", "C", "H", "I", "G", "N", "A'",
             "F", "E", "D", "B''", "B'", "J", "K", "W0", "A''"]
    helpers = {"W0"}
    colors = {"A": "red", "B": "red",
              "H": "blue", "I": "blue", "G": "blue", "F": "blue", "E": "blue",
              "D": "blue", "J": "blue", "K": "blue"}
    claims = {
        "blue_unit": [["E", "B"], ["F", "B"], ["I", "B"], ["H", "B"],
                      ["K", "B"], ["J", "B"]],
        "unit": [["N", "B'"]],
        "ell5": [["D", "E", "F", "G", "B'"], ["C", "H", "I", "G", "N"],
                 ["H", "I", "G", "N", "A'"]],
        "patterns": [
            {"template": "T3", "nodes": ["A", "B", "D"]},
            {"template": "T3", "nodes": ["A", "B", "G"]},
        ],
    }
    dump("figcol2", [(n, node(*pts[n])) for n in order], colors,
         ["RED_L2_FORBIDDEN", "BLUE_L5_FORBIDDEN", "NO_RED_T3"],
         claims, helpers)


if __name__ == "__main__":
    fig1a()
    fig1b()
    fig3()
    fig4()
    fig5()
    fig6()
    figcol1()
    figcol2()
