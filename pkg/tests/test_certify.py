from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from conftest import bidirected_complete, directed_cycle, naive_sparsest_cut, random_sc_digraph
from cutmatch import certify
from cutmatch.certify import (
    brute_force_sparsest_cut,
    projection_statistics,
    verify_cut_certificate,
    verify_double_stochastic,
    verify_expander_certificate,
)
from cutmatch.cut_player import WalkMatrix
from cutmatch.game import CutCertificate, ExpanderCertificate, GameConfig, play_game
from cutmatch.graph import Cut, DiGraph, expansion
from cutmatch.matching_player import DirectedPerfectMatching


@pytest.fixture(scope="module")
def k8_expander():
    G = bidirected_complete(8)
    res = play_game(G, GameConfig(1, seed=7))
    return G, res.expander


@pytest.fixture(scope="module")
def sparse_expander():
    # sparse graph so that rerouting through a non-arc is possible
    G = random_sc_digraph(8, 10, np.random.default_rng(4))
    res = play_game(G, GameConfig(Fraction(1, 4), seed=2))
    assert res.expander is not None
    return G, res.expander


def test_oracle_examples():
    res = brute_force_sparsest_cut(DiGraph(2, ((0, 1),)))
    assert res.expansion == 0 and res.cut.side == (1,)
    for n in (4, 6, 8, 10):
        assert brute_force_sparsest_cut(directed_cycle(n)).expansion == Fraction(2, n)
    k4 = brute_force_sparsest_cut(bidirected_complete(4))
    assert k4.expansion == 2 and k4.cut.side == (0, 1)
    assert k4.candidates == 2**4 - 2


def test_oracle_agrees_with_itertools_enumeration():
    rng = np.random.default_rng(8)
    for _ in range(60):
        n = int(rng.integers(2, 9))
        arcs = tuple((int(a), int(b)) for a, b in rng.integers(0, n, (int(rng.integers(0, 3 * n)), 2)))
        G = DiGraph(n, arcs)
        res = brute_force_sparsest_cut(G)
        assert res.expansion == naive_sparsest_cut(n, arcs)
        assert expansion(G, res.cut) == res.expansion


def test_oracle_size_cap():
    with pytest.raises(ValueError):
        brute_force_sparsest_cut(directed_cycle(21))


def test_cut_certificate_accept_and_tamper():
    G = directed_cycle(8)
    cert = CutCertificate(Cut(8, (0, 1, 2, 3)), Fraction(1, 4), Fraction(1))
    assert verify_cut_certificate(G, cert).ok
    inflated = replace(cert, expansion=Fraction(1, 2))
    v = verify_cut_certificate(G, inflated)
    assert v.code == certify.CUT_EXPANSION_MISMATCH and v.details["recomputed"] == Fraction(1, 4)
    low_alpha = replace(cert, alpha_at_failure=Fraction(1, 8))
    assert verify_cut_certificate(G, low_alpha).code == certify.CUT_EXCEEDS_ALPHA
    assert verify_cut_certificate(G, replace(cert, cut=tuple(range(8)))).code == certify.CUT_INVALID


def test_solver_cut_certificates_verify():
    rng = np.random.default_rng(31)
    accepted = 0
    k = 0
    while accepted < 100:
        n = 2 * int(rng.integers(2, 7))
        G = random_sc_digraph(n, int(rng.integers(0, n)), rng)
        res = play_game(G, GameConfig(Fraction(int(rng.integers(1, 5))), seed=k))
        k += 1
        if res.cut is not None:
            assert verify_cut_certificate(G, res.cut).ok
            accepted += 1


def test_expander_certificate_accepts_genuine(k8_expander, sparse_expander):
    for G, cert in (k8_expander, sparse_expander):
        v = verify_expander_certificate(G, cert)
        assert v.ok, v.message
        assert v.details["union_expansion"] >= Fraction(1, 2)


def _replace_matching(cert, k, M):
    ms = list(cert.matchings)
    ms[k] = M
    return replace(cert, matchings=tuple(ms))


def test_expander_tamper_rerouted_path(sparse_expander):
    G, cert = sparse_expander
    arcs = set(G.arcs)
    M = cert.matchings[0]
    a, b = M.forward[0]
    # a detour through any vertex pair that is not an arc of G
    w = next(w for w in range(G.n) if (a, w) not in arcs and w != b)
    bad_path = (a, w, b)
    paths = (bad_path,) + M.forward_paths[1:]
    tampered = _replace_matching(cert, 0, replace(M, forward_paths=paths))
    assert verify_expander_certificate(G, tampered).code == certify.BAD_EMBEDDING


def test_expander_tamper_deleted_arc(k8_expander):
    G, cert = k8_expander
    M = cert.matchings[0]
    tampered = _replace_matching(
        cert, 0, DirectedPerfectMatching(M.n, M.forward[1:], M.backward, M.forward_paths[1:], M.backward_paths)
    )
    assert verify_expander_certificate(G, tampered).code == certify.NOT_PERFECT_MATCHING


def test_expander_tamper_congestion_claims(k8_expander):
    G, cert = k8_expander
    smaller = replace(cert, congestion_bound=cert.congestion_bound / 2)
    assert verify_expander_certificate(G, smaller).code == certify.CONGESTION
    inflated = replace(cert, implied_lower_bound=cert.implied_lower_bound * 2)
    assert verify_expander_certificate(G, inflated).code == certify.CONGESTION


def test_expander_tamper_overloaded_arc():
    G = DiGraph(4, ((0, 2), (2, 1), (1, 3), (3, 0), (2, 0), (0, 1)))
    light = DirectedPerfectMatching(
        4, ((0, 2), (1, 3)), ((2, 0), (3, 1)), ((0, 2), (1, 3)), ((2, 0), (3, 0, 1))
    )
    cert = ExpanderCertificate.build(4, Fraction(1), [light], None, True)
    assert verify_expander_certificate(G, cert).code != certify.CONGESTION
    # both backward paths use arcs (2, 1) and (3, 0); capacity is 1 per direction
    heavy = replace(light, backward_paths=((2, 1, 3, 0), (3, 0, 2, 1)))
    cert = ExpanderCertificate.build(4, Fraction(1), [heavy], None, True)
    assert verify_expander_certificate(G, cert).code == certify.CONGESTION


def test_expander_tamper_psi_claim(k8_expander):
    G, cert = k8_expander
    tampered = replace(cert, final_psi=Fraction(1, 1000))
    assert verify_expander_certificate(G, tampered).code == certify.NOT_DOUBLY_STOCHASTIC


def test_expander_truncated_sequence_not_mixing(k8_expander):
    G, cert = k8_expander
    short = ExpanderCertificate.build(G.n, cert.alpha, cert.matchings[:1], None, True)
    assert verify_expander_certificate(G, short).code == certify.NOT_MIXING


def test_double_stochastic_checks():
    I = WalkMatrix.identity(5)
    assert verify_double_stochastic(I).ok
    P = WalkMatrix(I.numerators.copy(), I.denominator)
    P.numerators[0, 1] = 1
    assert verify_double_stochastic(P).code == certify.NOT_DOUBLY_STOCHASTIC


def test_projection_statistics_report():
    rep = projection_statistics(64, 20_000, np.random.default_rng(1), pair_draws=2000)
    # vector 1 is 10 x vector 0 and they share samples
    assert rep.vector_means[1] == pytest.approx(100 * rep.vector_means[0], rel=1e-12)
    assert rep.vector_expected[0] == pytest.approx(2 / 63)
    assert all(e < 0.05 for e in rep.relative_errors)
    assert rep.pair_trials == 2000
    with pytest.raises(ValueError):
        projection_statistics(3, 2000, np.random.default_rng(0))
    with pytest.raises(ValueError):
        projection_statistics(8, 10, np.random.default_rng(0))


def test_implied_lower_bound_sound_on_oracle_sized_instances():
    rng = np.random.default_rng(77)
    checked = 0
    for k in range(40):
        n = 2 * int(rng.integers(2, 7))
        G = random_sc_digraph(n, int(rng.integers(0, 3 * n)), rng)
        res = play_game(G, GameConfig(Fraction(2, n), seed=k))
        if res.expander is None:
            continue
        assert verify_expander_certificate(G, res.expander).ok
        assert res.expander.implied_lower_bound <= brute_force_sparsest_cut(G).expansion
        checked += 1
    assert checked >= 20
