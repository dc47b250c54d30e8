"""Deleted-vertex (absorbing boundary) spectrum and reduction tests."""

import math
import random

import numpy as np
import pytest

from gmlap.dirichlet import (
    VertexPair,
    cross_incidence,
    dirichlet_laplacian,
    pair_conjugate_degrees,
    pair_degree_sequence,
    pair_gm_check,
    pair_spectrum,
    reduction_chain_check,
)
from gmlap.gm import gm_check
from gmlap.graphs import Graph, standard_family, triangle_bits
from gmlap.spectra import laplacian_spectrum


def random_pair(rng, n_max=9, allow_empty=True):
    n = rng.randrange(1, n_max + 1)
    g = Graph(n, rng.randrange(0, 1 << triangle_bits(n)))
    lo = 0 if allow_empty else 1
    mask = rng.randrange(lo, 1 << n)
    if mask == (1 << n) - 1:
        mask ^= 1 << rng.randrange(n)  # keep one survivor
    return VertexPair(g, mask)


def test_vertex_pair_structure():
    p = VertexPair(standard_family("path", 3), 0b100)
    assert p.deleted == (2,)
    assert p.undeleted == (0, 1)
    assert p.interior().m == 1
    assert p.boundary_degrees() == (0, 1)
    assert p.to_json_dict() == {"graph6": "Bg", "deleted": 4}
    with pytest.raises(ValueError):
        VertexPair(Graph(2, 0), 0b100)
    with pytest.raises(ValueError):
        VertexPair(Graph(2, 0), -1)


def test_path_endpoint_deletion_example():
    p = VertexPair(standard_family("path", 3), 0b100)
    mat = dirichlet_laplacian(p)
    assert np.array_equal(mat, np.array([[1, -1], [-1, 2]]))
    assert pair_degree_sequence(p) == (1, 1, 1)
    assert pair_conjugate_degrees(p) == (3, 0)
    values = pair_spectrum(p).values
    want = ((3 + math.sqrt(5)) / 2, (3 - math.sqrt(5)) / 2)
    assert np.allclose(values, want, atol=1e-10)
    rep = pair_gm_check(p)
    assert rep.holds and not rep.equality
    assert rep.shortcut is None


def test_single_survivor_example():
    p = VertexPair(standard_family("complete", 2), 0b10)
    assert np.array_equal(dirichlet_laplacian(p), np.array([[1]]))
    assert pair_degree_sequence(p) == (1, 0)
    rep = pair_gm_check(p)
    assert rep.holds and rep.equality


def test_complete_graph_single_deletion_reaches_equality():
    for n in range(3, 8):
        p = VertexPair(standard_family("complete", n), 1 << (n - 1))
        values = pair_spectrum(p).values
        want = [float(n)] * (n - 2) + [1.0]
        assert np.allclose(values, want, atol=1e-9)
        assert pair_conjugate_degrees(p) == tuple([n] * (n - 2) + [1])
        rep = pair_gm_check(p)
        assert rep.holds and rep.equality


def test_submatrix_identity_random():
    rng = random.Random(61)
    for _ in range(200):
        p = random_pair(rng)
        mat = dirichlet_laplacian(p)  # internal identity assert runs here
        assert mat.shape == (len(p.undeleted),) * 2
        live = p.undeleted
        full = np.array(
            [[int(x) for x in row] for row in dirichlet_laplacian(VertexPair(p.g, 0))]
        ) if not p.deleted else None
        if full is not None:
            assert np.array_equal(mat, full)


def test_trace_matches_degree_total():
    rng = random.Random(62)
    for _ in range(200):
        p = random_pair(rng)
        total = sum(pair_degree_sequence(p))
        assert int(np.trace(dirichlet_laplacian(p))) == total
        values = pair_spectrum(p).values
        assert abs(sum(values) - total) <= 1e-8 * max(1.0, total)


def test_pair_spectrum_is_nonnegative():
    rng = random.Random(63)
    for _ in range(200):
        p = random_pair(rng)
        assert min(pair_spectrum(p).values) >= 0.0


def test_empty_deletion_reproduces_graph_check():
    rng = random.Random(64)
    for _ in range(100):
        n = rng.randrange(1, 10)
        g = Graph(n, rng.randrange(0, 1 << triangle_bits(n)))
        p = VertexPair(g, 0)
        assert pair_spectrum(p) == laplacian_spectrum(g)
        assert pair_gm_check(p) == gm_check(g)


def test_pair_majorization_holds_on_random_pairs():
    rng = random.Random(65)
    for _ in range(300):
        p = random_pair(rng)
        assert pair_gm_check(p).holds


def test_cross_incidence_marginals():
    rng = random.Random(66)
    for _ in range(100):
        p = random_pair(rng)
        cross = cross_incidence(p)
        assert cross.shape == (len(p.deleted), len(p.undeleted))
        live_mask = ((1 << p.g.n) - 1) ^ p.deleted_mask
        for r, w in enumerate(p.deleted):
            assert cross[r].sum() == (p.g.neighbors_mask(w) & live_mask).bit_count()
        assert tuple(int(x) for x in cross.sum(axis=0)) == p.boundary_degrees()


def test_reduction_chain_links_all_hold():
    rng = random.Random(67)
    for _ in range(300):
        p = random_pair(rng)
        rep = reduction_chain_check(p)
        assert rep.link1 and rep.link2 and rep.link3
        assert rep.final and rep.identity_check
    blob = rep.to_json_dict()
    assert set(blob) == {"link1", "link2", "link3", "final", "identity_check"}


def test_chain_on_empty_deletion():
    p = VertexPair(standard_family("cycle", 5), 0)
    rep = reduction_chain_check(p)
    assert rep.link1 and rep.link2 and rep.link3 and rep.final
    assert rep.identity_check


def test_edges_inside_deleted_set_are_inert():
    # Adding or removing an edge between two deleted vertices changes
    # nothing observable about the pair.
    rng = random.Random(68)
    for _ in range(100):
        p = random_pair(rng)
        dead = p.deleted
        if len(dead) < 2:
            continue
        i, j = dead[0], dead[1]
        bit = 1 << (j * (j - 1) // 2 + i)
        flipped = VertexPair(Graph(p.g.n, p.g.bits ^ bit), p.deleted_mask)
        assert pair_degree_sequence(flipped) == pair_degree_sequence(p)
        assert pair_spectrum(flipped) == pair_spectrum(p)
        assert reduction_chain_check(flipped) == reduction_chain_check(p)


def test_everything_deleted_is_rejected():
    p = VertexPair(standard_family("path", 3), 0b111)
    with pytest.raises(ValueError):
        dirichlet_laplacian(p)
    with pytest.raises(ValueError):
        pair_gm_check(p)
    with pytest.raises(ValueError):
        reduction_chain_check(p)
