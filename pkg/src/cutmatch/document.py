"""Versioned JSON certificate documents.

All rationals are written as ``"num/den"`` strings. A document plus the
graph file is enough to re-verify the result.
"""

from __future__ import annotations

import json
from fractions import Fraction

from cutmatch.certify import Verdict, verify_cut_certificate, verify_expander_certificate
from cutmatch.game import (
    CUT,
    EXPANDER,
    INCONCLUSIVE,
    ApproximationResult,
    CutCertificate,
    ExpanderCertificate,
    GameResult,
)
from cutmatch.graph import Cut, DiGraph, graph_hash
from cutmatch.matching_player import DirectedPerfectMatching

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    pass


def frac_str(x) -> str | None:
    if x is None:
        return None
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(text) -> Fraction | None:
    if text is None:
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad rational {text!r}") from exc


def _cut_payload(cert: CutCertificate) -> dict:
    return {
        "side": list(cert.cut.side),
        "expansion": frac_str(cert.expansion),
        "alpha": frac_str(cert.alpha_at_failure),
    }


def _expander_payload(cert: ExpanderCertificate) -> dict:
    return {
        "alpha": frac_str(cert.alpha),
        "rounds": cert.rounds,
        "matchings": [
            {
                "forward": [list(a) for a in M.forward],
                "backward": [list(a) for a in M.backward],
                "forward_paths": [list(p) for p in M.forward_paths],
                "backward_paths": [list(p) for p in M.backward_paths],
            }
            for M in cert.matchings
        ],
        "congestion_bound": frac_str(cert.congestion_bound),
        "final_psi": frac_str(cert.final_psi),
        "heuristic": cert.heuristic,
        "implied_lower_bound": frac_str(cert.implied_lower_bound),
    }


def _trace_payload(result: GameResult) -> list[dict]:
    return [
        {
            "round": rec.round,
            "bisection": list(rec.bisection),
            "flow_values": list(rec.flow_values),
            "psi": frac_str(rec.psi),
        }
        for rec in result.trace
    ]


def game_document(G: DiGraph, result: GameResult) -> dict:
    cfg = result.config
    return {
        "schema_version": SCHEMA_VERSION,
        "graph_hash": graph_hash(G),
        "n": G.n,
        "branch": result.status,
        "cut": _cut_payload(result.cut) if result.cut else None,
        "expander": _expander_payload(result.expander) if result.expander else None,
        "rounds": result.rounds,
        "maxflow_calls": result.maxflow_calls,
        "trace": _trace_payload(result),
        "config": {
            "alpha": frac_str(cfg.alpha),
            "mode": cfg.mode,
            "seed": cfg.seed,
            "round_cap": cfg.round_cap,
        },
    }


def zero_cut_document(G: DiGraph, cut: Cut, alpha, mode: str, seed: int, round_cap) -> dict:
    cert = CutCertificate(cut, Fraction(0), Fraction(alpha) if alpha is not None else Fraction(0))
    return {
        "schema_version": SCHEMA_VERSION,
        "graph_hash": graph_hash(G),
        "n": G.n,
        "branch": CUT,
        "cut": _cut_payload(cert),
        "expander": None,
        "rounds": 0,
        "maxflow_calls": 0,
        "trace": [],
        "config": {
            "alpha": frac_str(alpha) if alpha is not None else "auto",
            "mode": mode,
            "seed": seed,
            "round_cap": round_cap,
        },
    }


def approximation_document(G: DiGraph, approx: ApproximationResult, mode: str, seed: int, round_cap) -> dict:
    if approx.zero_cut:
        return zero_cut_document(G, approx.best_cut.cut, None, mode, seed, round_cap)
    lb = approx.best_lower_bound
    return {
        "schema_version": SCHEMA_VERSION,
        "graph_hash": graph_hash(G),
        "n": G.n,
        "branch": CUT,
        "cut": _cut_payload(approx.best_cut),
        "expander": _expander_payload(lb) if lb else None,
        "ratio": frac_str(approx.ratio),
        "rounds": sum(p.result.rounds for p in approx.probes),
        "maxflow_calls": approx.maxflow_calls,
        "trace": [
            {
                "probe": p.index,
                "alpha": frac_str(p.alpha),
                "seed": p.seed,
                "branch": p.result.status,
                "rounds": p.result.rounds,
                "maxflow_calls": p.result.maxflow_calls,
            }
            for p in approx.probes
        ],
        "config": {"alpha": "auto", "mode": mode, "seed": seed, "round_cap": round_cap},
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> dict:
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        raise DocumentError("unsupported or missing schema_version")
    if doc.get("branch") not in (CUT, EXPANDER, INCONCLUSIVE):
        raise DocumentError(f"unknown branch {doc.get('branch')!r}")
    return doc


def cut_certificate_from(doc: dict) -> CutCertificate:
    p = doc["cut"]
    n = doc["n"]
    side = tuple(p["side"])
    # keep raw side so an invalid cut is reported by the verifier, not here
    try:
        cut = Cut(n, side)
    except ValueError:
        cut = side
    return CutCertificate(cut, parse_frac(p["expansion"]), parse_frac(p["alpha"]))


def expander_certificate_from(doc: dict) -> ExpanderCertificate:
    p = doc["expander"]
    n = doc["n"]
    matchings = tuple(
        DirectedPerfectMatching(
            n,
            tuple(tuple(a) for a in m["forward"]),
            tuple(tuple(a) for a in m["backward"]),
            tuple(tuple(x) for x in m["forward_paths"]),
            tuple(tuple(x) for x in m["backward_paths"]),
        )
        for m in p["matchings"]
    )
    return ExpanderCertificate(
        n=n,
        alpha=parse_frac(p["alpha"]),
        matchings=matchings,
        congestion_bound=parse_frac(p["congestion_bound"]),
        final_psi=parse_frac(p["final_psi"]),
        heuristic=bool(p["heuristic"]),
        implied_lower_bound=parse_frac(p["implied_lower_bound"]),
    )


def verify_document(G: DiGraph, doc: dict) -> list[tuple[str, Verdict]]:
    """Verify every certificate a document carries.

    Raises :class:`DocumentError` when the document is for another graph.
    """
    if doc.get("graph_hash") != graph_hash(G):
        raise DocumentError("graph hash mismatch: certificate is for a different graph")
    if doc.get("n") != G.n:
        raise DocumentError("vertex count mismatch")
    verdicts = []
    if doc.get("cut") is not None:
        verdicts.append(("cut", verify_cut_certificate(G, cut_certificate_from(doc))))
    if doc.get("expander") is not None:
        verdicts.append(("expander", verify_expander_certificate(G, expander_certificate_from(doc))))
    return verdicts
