"""Regenerate the certificate fixtures used by the CLI and tamper tests.

    python tests/fixtures/make_fixtures.py
"""

import copy
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from cutmatch.cli import solve_document
from cutmatch.document import dumps
from cutmatch.graph import DiGraph, serialize_graph

HERE = Path(__file__).parent


def sparse8():
    rng = np.random.default_rng(4)
    order = rng.permutation(8)
    arcs = [(int(order[i]), int(order[(i + 1) % 8])) for i in range(8)]
    while len(arcs) < 18:
        u, v = (int(x) for x in rng.integers(0, 8, 2))
        if u != v:
            arcs.append((u, v))
    return DiGraph(8, tuple(arcs))


GRAPHS = {
    "cycle8": DiGraph(8, tuple((i, (i + 1) % 8) for i in range(8))),
    "cycle8_edited": DiGraph(8, tuple((i, (i + 1) % 8) for i in range(7)) + ((7, 1),)),
    "k8bi": DiGraph(8, tuple((u, v) for u in range(8) for v in range(8) if u != v)),
    "sparse8": sparse8(),
    "path2": DiGraph(2, ((0, 1),)),
    "cycle4": DiGraph(4, ((0, 1), (1, 2), (2, 3), (3, 0))),
    "k4bi": DiGraph(4, tuple((u, v) for u in range(4) for v in range(4) if u != v)),
}


def frac(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def main():
    for name, G in GRAPHS.items():
        (HERE / f"{name}.txt").write_text(serialize_graph(G))

    genuine = {
        "cycle8_cut.json": ("cycle8", solve_document(GRAPHS["cycle8"], Fraction(1), False, 7, "exact", None)),
        "k8_expander.json": ("k8bi", solve_document(GRAPHS["k8bi"], Fraction(1), False, 7, "exact", None)),
        "sparse8_expander.json": (
            "sparse8",
            solve_document(GRAPHS["sparse8"], Fraction(1, 4), False, 2, "exact", None),
        ),
        "k8_auto.json": ("k8bi", solve_document(GRAPHS["k8bi"], None, True, 0, "exact", None)),
    }
    assert genuine["cycle8_cut.json"][1]["branch"] == "cut"
    assert genuine["k8_expander.json"][1]["branch"] == "expander"
    assert genuine["sparse8_expander.json"][1]["branch"] == "expander"

    manifest = []
    for fname, (graph, doc) in genuine.items():
        (HERE / fname).write_text(dumps(doc))
        manifest.append({"graph": f"{graph}.txt", "certificate": fname, "exit": 0, "code": "OK"})

    def tamper(fname, graph, base, edit, code, exit_code=3):
        doc = copy.deepcopy(genuine[base][1])
        edit(doc)
        (HERE / fname).write_text(dumps(doc))
        manifest.append({"graph": f"{graph}.txt", "certificate": fname, "exit": exit_code, "code": code})

    def inflate(doc):
        doc["cut"]["expansion"] = frac(Fraction(doc["cut"]["expansion"]) + 1)

    def lower_alpha(doc):
        doc["cut"]["alpha"] = frac(Fraction(doc["cut"]["expansion"]) / 2)

    def full_side(doc):
        doc["cut"]["side"] = list(range(doc["n"]))

    def delete_arc(doc):
        m = doc["expander"]["matchings"][0]
        del m["forward"][0]
        del m["forward_paths"][0]

    def reroute(doc):
        G = GRAPHS["sparse8"]
        arcs = set(G.arcs)
        m = doc["expander"]["matchings"][0]
        a, b = m["forward"][0]
        w = next(w for w in range(G.n) if (a, w) not in arcs and w != b)
        m["forward_paths"][0] = [a, w, b]

    def inflate_bound(doc):
        doc["expander"]["implied_lower_bound"] = frac(Fraction(doc["expander"]["implied_lower_bound"]) * 2)

    def fake_psi(doc):
        doc["expander"]["final_psi"] = "1/1000000"

    def truncate(doc):
        exp = doc["expander"]
        exp["matchings"] = exp["matchings"][:1]
        exp["rounds"] = 1
        exp["final_psi"] = None
        exp["heuristic"] = True
        exp["congestion_bound"] = "2/1"
        exp["implied_lower_bound"] = "1/4"

    tamper("tampered_cut_expansion.json", "cycle8", "cycle8_cut.json", inflate, "C1_EXPANSION_MISMATCH")
    tamper("tampered_cut_alpha.json", "cycle8", "cycle8_cut.json", lower_alpha, "C2_EXCEEDS_ALPHA")
    tamper("tampered_cut_side.json", "cycle8", "cycle8_cut.json", full_side, "C0_INVALID_CUT")
    tamper("tampered_deleted_arc.json", "k8bi", "k8_expander.json", delete_arc, "E1_NOT_PERFECT_MATCHING")
    tamper("tampered_rerouted_path.json", "sparse8", "sparse8_expander.json", reroute, "E2_BAD_EMBEDDING")
    tamper("tampered_lower_bound.json", "k8bi", "k8_expander.json", inflate_bound, "E3_CONGESTION")
    tamper("tampered_psi.json", "k8bi", "k8_expander.json", fake_psi, "E4_NOT_DOUBLY_STOCHASTIC")
    tamper("tampered_truncated.json", "k8bi", "k8_expander.json", truncate, "E5_NOT_MIXING")
    tamper("tampered_auto_cut.json", "k8bi", "k8_auto.json", inflate, "C1_EXPANSION_MISMATCH")
    manifest.append(
        {"graph": "cycle8_edited.txt", "certificate": "cycle8_cut.json", "exit": 1, "code": "HASH_MISMATCH"}
    )
    (HERE / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


if __name__ == "__main__":
    main()
