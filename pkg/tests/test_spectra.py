"""Eigensolver correctness tests against exact and structural oracles."""

import math
import random

import numpy as np
import pytest
import sympy

from gmlap.graphs import (
    Graph,
    disjoint_sum,
    is_connected,
    laplacian,
    standard_family,
    triangle_bits,
)
from gmlap.partitions import majorizes
from gmlap.spectra import (
    Spectrum,
    algebraic_connectivity,
    eigenvalues_sym,
    format_real,
    laplacian_spectrum,
    serialize_spectrum,
)


def random_graph(n, rng):
    return Graph(n, rng.randrange(0, 1 << triangle_bits(n)))


def sympy_eigenvalues(matrix):
    """Exact eigenvalues via the characteristic polynomial, as floats."""
    m = sympy.Matrix(matrix.tolist())
    vals = []
    for root, mult in m.eigenvals().items():
        # Real cubic roots may come back in complex radical form.
        approx = complex(root.evalf(30))
        assert abs(approx.imag) < 1e-12
        vals.extend([approx.real] * mult)
    return sorted(vals, reverse=True)


def test_spectrum_dataclass_validation():
    s = Spectrum((2.0, 1.0, 0.0), 1e-13)
    assert s.n == 3
    with pytest.raises(ValueError):
        Spectrum((1.0, 2.0), 0.0)


def test_eigenvalues_reject_bad_matrices():
    with pytest.raises(ValueError):
        eigenvalues_sym(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        eigenvalues_sym(np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert eigenvalues_sym(np.zeros((0, 0))).values == ()


def test_diagonal_matrix_spectrum():
    spec = eigenvalues_sym(np.diag([3.0, -1.0, 2.0]))
    assert spec.values == (3.0, 2.0, -1.0)
    assert spec.residual == 0.0


def test_cycle_spectrum_closed_form():
    for n in range(3, 11):
        got = laplacian_spectrum(standard_family("cycle", n)).values
        want = sorted(
            (2.0 - 2.0 * math.cos(2.0 * math.pi * k / n) for k in range(n)),
            reverse=True,
        )
        assert np.allclose(got, want, atol=1e-10)


def test_path_spectrum_closed_form():
    for n in range(2, 11):
        got = laplacian_spectrum(standard_family("path", n)).values
        want = sorted(
            (4.0 * math.sin(math.pi * k / (2 * n)) ** 2 for k in range(n)),
            reverse=True,
        )
        assert np.allclose(got, want, atol=1e-10)


def test_complete_and_star_spectra():
    for n in range(2, 9):
        got = laplacian_spectrum(standard_family("complete", n)).values
        assert np.allclose(got, [float(n)] * (n - 1) + [0.0], atol=1e-10)
        got = laplacian_spectrum(standard_family("star", n)).values
        want = [float(n)] + [1.0] * (n - 2) + [0.0]
        assert np.allclose(got, want, atol=1e-10)


def test_laplacian_spectrum_matches_exact_roots():
    rng = random.Random(71)
    graphs = [
        standard_family("cycle", 4),
        standard_family("path", 5),
        standard_family("star", 6),
        disjoint_sum(standard_family("complete", 3), standard_family("path", 3)),
    ]
    graphs += [random_graph(rng.randrange(1, 7), rng) for _ in range(12)]
    for g in graphs:
        got = laplacian_spectrum(g).values
        want = sympy_eigenvalues(laplacian(g))
        assert np.allclose(got, want, atol=1e-9)


def test_general_symmetric_matches_exact_roots():
    rng = np.random.default_rng(72)
    for _ in range(10):
        n = int(rng.integers(1, 6))
        raw = rng.integers(-4, 5, size=(n, n))
        mat = (raw + raw.T).astype(np.float64)
        got = eigenvalues_sym(mat).values
        want = sympy_eigenvalues(mat.astype(np.int64))
        assert np.allclose(got, want, atol=1e-9)


def test_trace_and_frobenius_identities():
    rng = random.Random(73)
    for _ in range(200):
        n = rng.randrange(1, 12)
        g = random_graph(n, rng)
        lap = laplacian(g).astype(np.float64)
        values = np.array(laplacian_spectrum(g).values)
        two_m = 2.0 * g.m
        assert abs(values.sum() - two_m) <= 1e-8 * max(1.0, two_m)
        fro2 = float(np.sum(lap * lap))
        assert abs(np.sum(values**2) - fro2) <= 1e-8 * max(1.0, fro2)


def test_smallest_laplacian_eigenvalue_is_exact_zero():
    rng = random.Random(74)
    for _ in range(100):
        g = random_graph(rng.randrange(1, 10), rng)
        spec = laplacian_spectrum(g)
        assert spec.values[-1] == 0.0
        assert min(spec.values) >= 0.0


def test_zero_multiplicity_counts_components():
    def component_count(g):
        seen = set()
        count = 0
        for start in range(g.n):
            if start in seen:
                continue
            count += 1
            stack = [start]
            while stack:
                v = stack.pop()
                if v in seen:
                    continue
                seen.add(v)
                mask = g.neighbors_mask(v)
                stack.extend(u for u in range(g.n) if mask >> u & 1)
        return count

    rng = random.Random(75)
    for _ in range(120):
        g = random_graph(rng.randrange(1, 9), rng)
        values = laplacian_spectrum(g).values
        zeros = sum(1 for v in values if v <= 1e-7)
        assert zeros == component_count(g)


def test_eigenpair_residual_is_small():
    rng = random.Random(76)
    for _ in range(50):
        g = random_graph(rng.randrange(1, 12), rng)
        spec = laplacian_spectrum(g)
        assert spec.residual <= 1e-10 * max(1.0, 2.0 * g.m)


def test_diagonal_majorized_by_spectrum():
    # Schur: eigenvalue sequence majorizes the diagonal for symmetric
    # matrices; exercised on random Laplacians and random Gram matrices.
    rng = random.Random(77)
    nprng = np.random.default_rng(77)
    for _ in range(100):
        if rng.random() < 0.5:
            mat = laplacian(random_graph(rng.randrange(1, 9), rng)).astype(float)
        else:
            n = rng.randrange(1, 7)
            b = nprng.standard_normal((n, n))
            mat = b @ b.T
        lam = eigenvalues_sym(mat).values
        diag = tuple(sorted(np.diag(mat).tolist(), reverse=True))
        assert majorizes(lam, diag, tolerance=1e-8).holds


def test_eigenvalue_sums_subadditive():
    # Partial eigenvalue sums of A + B never exceed the matching sums
    # for A and B separately.
    nprng = np.random.default_rng(78)
    for _ in range(100):
        n = int(nprng.integers(1, 8))
        x = nprng.standard_normal((n, n))
        y = nprng.standard_normal((n, n))
        a = x + x.T
        b = y + y.T
        wa = np.cumsum(eigenvalues_sym(a).values)
        wb = np.cumsum(eigenvalues_sym(b).values)
        wab = np.cumsum(eigenvalues_sym(a + b).values)
        assert np.all(wab <= wa + wb + 1e-8)


def test_algebraic_connectivity_values():
    assert abs(algebraic_connectivity(standard_family("path", 4)) - (2 - math.sqrt(2))) < 1e-10
    assert abs(algebraic_connectivity(standard_family("cycle", 4)) - 2.0) < 1e-10
    assert abs(algebraic_connectivity(standard_family("complete", 5)) - 5.0) < 1e-10
    assert abs(algebraic_connectivity(standard_family("star", 4)) - 1.0) < 1e-10
    with pytest.raises(ValueError):
        algebraic_connectivity(Graph(1, 0))


def test_algebraic_connectivity_tracks_connectivity():
    rng = random.Random(79)
    for _ in range(150):
        g = random_graph(rng.randrange(2, 9), rng)
        value = algebraic_connectivity(g)
        if is_connected(g):
            assert value > 1e-7
        else:
            assert value <= 1e-7


def test_format_real_and_serialization():
    assert format_real(2.0) == "2"
    assert format_real(0.5857864376269) == "0.585786437627"
    spec = laplacian_spectrum(standard_family("cycle", 4))
    blob = serialize_spectrum(spec)
    assert blob["values"] == ["4", "2", "2", "0"]
    assert float(blob["residual"]) >= 0.0
