"""Dense symmetric eigensolver and Laplacian spectrum extraction.

All eigenvalues come from a cyclic Jacobi sweep (see gmlap._kernels),
chosen for determinism: the same matrix yields the same bits on every
run and on both kernel backends.  Spectra are reported sorted
non-increasing with a residual bound max_i ||M v_i - w_i v_i||_inf
computed from the accumulated rotations; eigenvectors themselves are
not exposed.
"""

from dataclasses import dataclass

import numpy as np

from gmlap import _kernels
from gmlap.graphs import Graph, is_connected, laplacian

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted non-increasing plus the eigenpair residual."""

    values: tuple
    residual: float

    def __post_init__(self):
        if any(a < b for a, b in zip(self.values, self.values[1:])):
            raise ValueError("spectrum values must be non-increasing")

    @property
    def n(self) -> int:
        return len(self.values)


def eigenvalues_sym(matrix) -> Spectrum:
    """Spectrum of a symmetric real matrix.

    The input must be symmetric within 1e-12 absolute entrywise.  The
    returned values satisfy sum(values) = trace within
    1e-9 * max(1, |trace|); a larger drift means the solver failed and
    raises RuntimeError rather than returning bad data.
    """
    mat = np.asarray(matrix, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("matrix must be square")
    n = mat.shape[0]
    if n == 0:
        return Spectrum((), 0.0)
    if np.max(np.abs(mat - mat.T)) > SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric within 1e-12")

    w, vecs, _sweeps = _kernels.jacobi_eigh(mat)
    w = np.asarray(w, dtype=np.float64)
    vecs = np.asarray(vecs, dtype=np.float64)
    residual = float(np.max(np.abs(mat @ vecs - vecs * w))) if n else 0.0

    values = tuple(sorted(w.tolist(), reverse=True))
    trace = float(np.trace(mat))
    if abs(sum(values) - trace) > 1e-9 * max(1.0, abs(trace)):
        raise RuntimeError("eigenvalue sum drifted from the trace")
    return Spectrum(values, residual)


def laplacian_spectrum(g: Graph) -> Spectrum:
    """Laplacian eigenvalues of g, clamped onto the known PSD structure.

    Roundoff can push eigenvalues a hair below zero; anything in
    [-tau, 0) with tau = 1e-9 * max(1, ||L||_F) is clamped to 0, and the
    smallest eigenvalue (the all-ones kernel direction) is forced to
    exactly 0.0 when within tau.  A value below -tau is a solver failure.
    """
    mat = laplacian(g).astype(np.float64)
    spec = eigenvalues_sym(mat)
    if g.n == 0:
        return spec
    tau = 1e-9 * max(1.0, float(np.linalg.norm(mat)))
    values = list(spec.values)
    for i, v in enumerate(values):
        if v < -tau:
            raise RuntimeError(f"Laplacian eigenvalue {v} below -{tau}")
        if v < 0.0:
            values[i] = 0.0
    if abs(values[-1]) <= tau:
        values[-1] = 0.0
    return Spectrum(tuple(values), spec.residual)


def algebraic_connectivity(g: Graph) -> float:
    """Second-smallest Laplacian eigenvalue; zero iff g is disconnected."""
    if g.n < 2:
        raise ValueError("algebraic connectivity needs n >= 2")
    value = laplacian_spectrum(g).values[-2]
    # Cheap structural cross-check: zero within clamp tolerance iff
    # the graph is disconnected.
    tau = 1e-7
    if (value <= tau) != (not is_connected(g)):
        raise RuntimeError("connectivity disagrees with the spectrum")
    return value


def format_real(x: float) -> str:
    """Canonical 12-significant-digit rendering used in all reports."""
    return f"{float(x):.12g}"


def serialize_spectrum(spec: Spectrum) -> dict:
    return {
        "values": [format_real(v) for v in spec.values],
        "residual": format_real(spec.residual),
    }
