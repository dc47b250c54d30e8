"""Graphs with a deleted (absorbing) vertex set: spectra and degree
counts of the principal Laplacian submatrix on the surviving vertices.

Deleting D from G keeps the Laplacian rows and columns of U = V minus D.
That submatrix equals the Laplacian of the induced graph on U plus a
diagonal boundary term counting each survivor's deleted neighbors.  The
degree count that plays the conjugate role assigns every vertex, deleted
or not, its number of undeleted neighbors.  reduction_chain_check walks
the majorization chain that reduces the pair comparison to the plain
graph comparison one link at a time, so a break in any link is located
rather than inferred.
"""

from dataclasses import dataclass

import numpy as np

from gmlap.gm import gm_check, margin_report, shortcut_check
from gmlap.graphs import Graph, degree_sequence, edge_bit, induced_subgraph, laplacian
from gmlap.partitions import (
    conjugate,
    gale_ryser_check,
    majorizes,
    pad_to,
    sort_desc,
    strip_zeros,
)
from gmlap.spectra import Spectrum, eigenvalues_sym, laplacian_spectrum


@dataclass(frozen=True)
class VertexPair:
    """A graph together with a set of deleted vertices (a bitmask)."""

    g: Graph
    deleted_mask: int

    def __post_init__(self):
        if self.deleted_mask < 0 or self.deleted_mask >> self.g.n:
            raise ValueError("deleted mask out of range for vertex count")

    @property
    def deleted(self) -> tuple:
        return tuple(v for v in range(self.g.n) if self.deleted_mask >> v & 1)

    @property
    def undeleted(self) -> tuple:
        return tuple(v for v in range(self.g.n) if not self.deleted_mask >> v & 1)

    def interior(self) -> Graph:
        """Induced subgraph on the undeleted vertices, relabeled."""
        return induced_subgraph(self.g, self.undeleted)

    def boundary_degrees(self) -> tuple:
        """For each undeleted vertex (induced order), its deleted-neighbor
        count: the diagonal boundary term."""
        return tuple(
            (self.g.neighbors_mask(v) & self.deleted_mask).bit_count()
            for v in self.undeleted
        )

    def to_json_dict(self) -> dict:
        from gmlap.graph6 import write_graph6

        return {"graph6": write_graph6(self.g), "deleted": self.deleted_mask}


def dirichlet_laplacian(p: VertexPair) -> np.ndarray:
    """Principal submatrix of the Laplacian on the undeleted vertices."""
    live = p.undeleted
    if not live:
        raise ValueError("spectrum needs at least one undeleted vertex")
    sub = laplacian(p.g)[np.ix_(live, live)]
    # Identity check: submatrix = interior Laplacian + boundary diagonal.
    check = laplacian(p.interior()) + np.diag(np.array(p.boundary_degrees(), dtype=np.int64))
    assert np.array_equal(sub, check)
    return sub


def pair_degree_sequence(p: VertexPair) -> tuple:
    """Undeleted-neighbor counts of every vertex, deleted ones included,
    sorted non-increasing."""
    live_mask = ((1 << p.g.n) - 1) ^ p.deleted_mask
    degs = [
        (p.g.neighbors_mask(v) & live_mask).bit_count() for v in range(p.g.n)
    ]
    return sort_desc(degs)


def pair_conjugate_degrees(p: VertexPair) -> tuple:
    """Conjugate of the pair degrees, zero-padded to the spectrum length."""
    return pad_to(conjugate(pair_degree_sequence(p)), len(p.undeleted))


def pair_spectrum(p: VertexPair) -> Spectrum:
    """Eigenvalues of the Dirichlet submatrix, sorted non-increasing.

    With nothing deleted this is the plain Laplacian spectrum, where the
    all-ones kernel pins the smallest eigenvalue to exactly zero.  With
    a nonempty boundary the matrix is still positive semidefinite but
    has no a-priori kernel, so only the PSD clamp applies.
    """
    if p.deleted_mask == 0:
        return laplacian_spectrum(p.g)
    mat = dirichlet_laplacian(p).astype(np.float64)
    spec = eigenvalues_sym(mat)
    tau = 1e-9 * max(1.0, float(np.linalg.norm(mat)))
    values = []
    for v in spec.values:
        if v < -tau:
            raise RuntimeError(f"Dirichlet eigenvalue {v} below -{tau}")
        values.append(0.0 if v < 0.0 else v)
    return Spectrum(tuple(values), spec.residual)


def pair_gm_check(p: VertexPair, tolerance: float = 1e-7):
    """Majorization verdict for the pair: spectrum vs conjugate degrees.

    Uses the same margin arithmetic as the plain graph check, so an
    empty deleted set reproduces gm_check output field for field.  The
    shortcut tag only describes whole graphs and is reported as None
    whenever something was deleted.
    """
    from gmlap.graph6 import write_graph6

    if not p.undeleted:
        raise ValueError("pair verdict needs at least one undeleted vertex")
    return margin_report(
        graph6_id=write_graph6(p.g),
        dt=pair_conjugate_degrees(p),
        lam=pair_spectrum(p).values,
        exact_total=sum(pair_degree_sequence(p)),
        tolerance=tolerance,
        shortcut=shortcut_check(p.g) if p.deleted_mask == 0 else None,
    )


@dataclass(frozen=True)
class ReductionChainReport:
    """Verdicts for each link reducing the pair comparison to graphs.

    link1: pair spectrum majorized by interior spectrum plus sorted
        boundary degrees (a two-summand spectral bound).
    link2: boundary degrees majorized by the conjugate of the deleted
        vertices' cross degrees (bipartite degree realizability).
    link3: plain majorization verdict on the interior graph.
    final: the pair verdict itself.  identity_check: conjugate pair
        degrees equal conjugate interior degrees plus conjugate cross
        degrees, as exact integer partitions.
    """

    link1: bool
    link2: bool
    link3: bool
    final: bool
    identity_check: bool

    def to_json_dict(self) -> dict:
        return {
            "link1": self.link1,
            "link2": self.link2,
            "link3": self.link3,
            "final": self.final,
            "identity_check": self.identity_check,
        }


def cross_incidence(p: VertexPair) -> np.ndarray:
    """0-1 matrix of deleted-by-undeleted adjacency; row sums are the
    deleted vertices' pair degrees, column sums the boundary degrees."""
    dead = p.deleted
    live = p.undeleted
    out = np.zeros((len(dead), len(live)), dtype=np.int64)
    for r, w in enumerate(dead):
        for c, u in enumerate(live):
            if p.g.has_edge(w, u):
                out[r, c] = 1
    return out


def _chain(p: VertexPair, tolerance: float) -> ReductionChainReport:
    interior = p.interior()
    b = p.boundary_degrees()
    cross = cross_incidence(p)
    a = tuple(int(x) for x in cross.sum(axis=1))

    s_pair = pair_spectrum(p).values
    s_int = laplacian_spectrum(interior).values
    bound = tuple(x + y for x, y in zip(s_int, sort_desc(b)))
    link1 = majorizes(bound, s_pair, tolerance).holds

    link2 = gale_ryser_check(cross).holds
    link3 = gm_check(interior, tolerance).holds
    final = pair_gm_check(p, tolerance).holds

    dt_pair = strip_zeros(conjugate(pair_degree_sequence(p)))
    dt_int = conjugate(degree_sequence(interior))
    a_conj = conjugate(sort_desc(a))
    width = max(len(dt_int), len(a_conj))
    summed = strip_zeros(
        tuple(x + y for x, y in zip(pad_to(dt_int, width), pad_to(a_conj, width)))
    )
    identity = dt_pair == summed

    # The three links compose into the final verdict; a failure of that
    # implication is an arithmetic bug, not new mathematics.
    assert not (link1 and link2 and link3 and identity) or final
    return ReductionChainReport(
        link1=link1, link2=link2, link3=link3, final=final, identity_check=identity
    )


def reduction_chain_check(p: VertexPair, tolerance: float = 1e-7) -> ReductionChainReport:
    """Evaluate every link of the pair-to-graph reduction independently.

    Edges joining two deleted vertices touch neither the submatrix nor
    any degree count; when present, the chain is recomputed with them
    removed and the two reports are asserted identical.
    """
    if not p.undeleted:
        raise ValueError("reduction chain needs at least one undeleted vertex")
    report = _chain(p, tolerance)
    dead_bits = 0
    for i, j in p.g.edges():
        if p.deleted_mask >> i & 1 and p.deleted_mask >> j & 1:
            dead_bits |= 1 << edge_bit(i, j)
    if dead_bits:
        stripped = VertexPair(Graph(p.g.n, p.g.bits ^ dead_bits), p.deleted_mask)
        assert _chain(stripped, tolerance) == report
    return report
