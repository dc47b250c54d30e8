"""Cut decompositions: split a graph into two induced parts plus the
bipartite graph of cross edges, and certify majorization from the parts.

A Cut fixes a bipartition (V_A, V_B) of the vertices of H.  A and B are
the induced subgraphs, C keeps exactly the cross edges (on the full
vertex set, so relabeling never touches it).  The sufficient conditions
checked here combine verdicts on the parts with two integer conditions
on conjugate degree sequences, in two flavors:

  theorem mode: conjugate degrees of C bounded by those of both parts at
      every index, plus an ordering condition tying B's largest
      conjugate degree to A's at index maxdeg(C);
  dt mode: the single relaxed dominance
      conj(H) majorizes sort(conj(A) concat conj(B)) + conj(C).

The theorem-mode conditions imply the dt dominance; that implication is
asserted on every evaluated cut.  Certificates built from cuts bottom
out at graphs whose spectrum equals the conjugate degrees exactly.
"""

from dataclasses import dataclass, field
from typing import Optional

from gmlap.gm import gm_check, shortcut_check
from gmlap.graphs import (
    Graph,
    degree_sequence,
    diameter,
    disjoint_sum,
    edge_bit,
    induced_subgraph,
    is_tree,
    max_degree,
)
from gmlap.partitions import (
    concat,
    conjugate,
    dominance_prefix,
    majorizes,
    pad_to,
    sort_desc,
)

MODES = ("theorem", "dt")


def _mask_vertices(mask: int, n: int):
    return [v for v in range(n) if mask >> v & 1]


@dataclass(frozen=True)
class Cut:
    """A bipartition of the vertices of h with its three derived graphs.

    a and b are relabeled induced subgraphs (ascending original label);
    c lives on all of h's vertices and holds exactly the cross edges.
    """

    h: Graph
    va_mask: int
    a: Graph = field(compare=False)
    b: Graph = field(compare=False)
    c: Graph = field(compare=False)

    def __post_init__(self):
        if self.h.m != self.a.m + self.b.m + self.c.m:
            raise ValueError("cut does not conserve the edge count")

    @staticmethod
    def from_mask(h: Graph, va_mask: int) -> "Cut":
        full = (1 << h.n) - 1
        if not 0 < va_mask < full or va_mask & ~full:
            raise ValueError("cut mask must be a nonempty proper vertex subset")
        va = _mask_vertices(va_mask, h.n)
        vb = _mask_vertices(full ^ va_mask, h.n)
        cross = 0
        for i, j in h.edges():
            if (va_mask >> i & 1) != (va_mask >> j & 1):
                cross |= 1 << edge_bit(i, j)
        return Cut(
            h=h,
            va_mask=va_mask,
            a=induced_subgraph(h, va),
            b=induced_subgraph(h, vb),
            c=Graph(h.n, cross),
        )

    @property
    def vb_mask(self) -> int:
        return ((1 << self.h.n) - 1) ^ self.va_mask

    def swapped(self) -> "Cut":
        """The same bipartition with the A and B roles exchanged."""
        return Cut.from_mask(self.h, self.vb_mask)


@dataclass(frozen=True)
class HypothesisReport:
    """All conditions evaluated for one oriented cut.

    cond_c_le_parts: conj(C) entrywise at most conj(A) and conj(B).
    cond_order: largest conjugate degree of B at most conj(A) at index
    maxdeg(C); vacuous when C has no edges.  cond_dt: the relaxed
    dominance.  theorem_applies bundles the part verdicts with the two
    integer conditions.
    """

    gm_a: bool
    gm_b: bool
    gm_c: bool
    cond_c_le_parts: bool
    cond_order: bool
    cond_dt: bool
    theorem_applies: bool

    def qualifies(self, mode: str) -> bool:
        if mode == "theorem":
            return self.theorem_applies
        if mode == "dt":
            return self.gm_a and self.gm_b and self.gm_c and self.cond_dt
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def check_cut(cut: Cut, tolerance: float = 1e-7) -> HypothesisReport:
    """Evaluate every hypothesis for one oriented cut."""
    dt_a = conjugate(degree_sequence(cut.a))
    dt_b = conjugate(degree_sequence(cut.b))
    dt_c = conjugate(degree_sequence(cut.c))
    m = max_degree(cut.c)
    assert len(dt_c) == m

    pa = pad_to(dt_a, m)
    pb = pad_to(dt_b, m)
    cond_c_le_parts = all(dt_c[i] <= min(pa[i], pb[i]) for i in range(m))
    if m == 0:
        cond_order = True
    else:
        head_b = dt_b[0] if dt_b else 0
        cond_order = head_b <= pa[m - 1]

    width = max(len(dt_a) + len(dt_b), len(dt_c))
    merged = pad_to(sort_desc(concat(dt_a, dt_b)), width)
    summed = tuple(x + y for x, y in zip(merged, pad_to(dt_c, width)))
    dt_h = conjugate(degree_sequence(cut.h))
    cond_dt = majorizes(dt_h, summed).holds

    gm_a = gm_check(cut.a, tolerance).holds
    gm_b = gm_check(cut.b, tolerance).holds
    gm_c = gm_check(cut.c, tolerance).holds
    applies = gm_a and gm_b and gm_c and cond_c_le_parts and cond_order
    # The full hypotheses imply the relaxed dominance; anything else
    # means an arithmetic bug, not a mathematical discovery.
    assert not applies or cond_dt
    return HypothesisReport(
        gm_a=gm_a,
        gm_b=gm_b,
        gm_c=gm_c,
        cond_c_le_parts=cond_c_le_parts,
        cond_order=cond_order,
        cond_dt=cond_dt,
        theorem_applies=applies,
    )


def union_conjugate_dominance(cut: Cut) -> bool:
    """Exact dominance of conj(H) over the merged conjugate degrees of
    the disjoint part union and of C.

    This holds for every cut of every graph; it is pure degree counting,
    so the comparison is integer-exact.
    """
    g = disjoint_sum(cut.a, cut.b)
    rhs = sort_desc(concat(conjugate(degree_sequence(g)), conjugate(degree_sequence(cut.c))))
    lhs = conjugate(degree_sequence(cut.h))
    return dominance_prefix(lhs, rhs).holds


def enumerate_cuts(h: Graph):
    """All unordered bipartitions, vertex 0 on the A side, ascending mask."""
    if h.n < 2:
        raise ValueError("cut enumeration needs n >= 2")
    full = (1 << h.n) - 1
    for va_mask in range(1, full, 2):
        yield Cut.from_mask(h, va_mask)


def decompose_search(h: Graph, mode: str = "theorem", tolerance: float = 1e-7):
    """First oriented cut whose report qualifies under the mode, or None.

    Bipartitions are scanned in ascending mask order; each is tried with
    both role assignments (the conditions are asymmetric in A and B).
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if h.n < 2:
        return None
    for cut in enumerate_cuts(h):
        for oriented in (cut, cut.swapped()):
            report = check_cut(oriented, tolerance)
            if report.qualifies(mode):
                return oriented, report
    return None


@dataclass(frozen=True)
class CensusResult:
    """Decomposability census over all isomorphism classes of one order."""

    mode: str
    total_classes: int
    decomposable_count: int
    residual_graph6: tuple
    residual_all_pass_gm: bool
    rows: tuple  # (graph6, cut_mask or None) in enumeration order

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode,
            "total_classes": self.total_classes,
            "decomposable_count": self.decomposable_count,
            "residual_graph6": list(self.residual_graph6),
            "residual_all_pass_gm": self.residual_all_pass_gm,
        }


def census(n: int, mode: str, tolerance: float = 1e-7) -> CensusResult:
    """Run decompose_search over every isomorphism class on n vertices.

    Residual classes (no qualifying cut) are re-checked with the direct
    spectral comparison; a failure there would be a counterexample and is
    reported in residual_all_pass_gm, never raised.
    """
    from gmlap.enumeration import all_graphs
    from gmlap.graph6 import write_graph6

    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    rows = []
    residual = []
    residual_ok = True
    total = 0
    for g in all_graphs(n):
        total += 1
        g6 = write_graph6(g)
        found = decompose_search(g, mode, tolerance)
        if found is None:
            rows.append((g6, None))
            residual.append(g6)
            residual_ok &= gm_check(g, tolerance).holds
        else:
            rows.append((g6, found[0].va_mask))
    return CensusResult(
        mode=mode,
        total_classes=total,
        decomposable_count=total - len(residual),
        residual_graph6=tuple(residual),
        residual_all_pass_gm=residual_ok,
        rows=tuple(rows),
    )


def census_six(mode: str, tolerance: float = 1e-7) -> CensusResult:
    return census(6, mode, tolerance)


@dataclass(frozen=True)
class EigenfreeCensusResult:
    """Census of classes whose verdict needs no direct eigensolve.

    A class counts as covered when any eigenvalue-free tool settles it:
    a degree-based shortcut tag, threshold equality, or a qualifying cut
    of the graph or of its complement (the verdict is complement
    invariant).  Residual classes are the ones left for direct spectral
    comparison; their verdicts are reported, not asserted.
    """

    total_classes: int
    covered_count: int
    residual_graph6: tuple
    residual_all_pass_gm: bool
    methods: tuple  # (graph6, method) per class, enumeration order

    def to_json_dict(self) -> dict:
        return {
            "total_classes": self.total_classes,
            "covered_count": self.covered_count,
            "residual_graph6": list(self.residual_graph6),
            "residual_all_pass_gm": self.residual_all_pass_gm,
        }


def eigenfree_census(n: int, tolerance: float = 1e-7) -> EigenfreeCensusResult:
    """Classify every n-vertex class by the cheapest eigenvalue-free tool
    that settles it, trying shortcut tags, threshold equality, then cut
    search on the graph and on its complement."""
    from gmlap.enumeration import all_graphs
    from gmlap.graph6 import write_graph6
    from gmlap.graphs import complement, is_threshold

    methods = []
    residual = []
    residual_ok = True
    for g in all_graphs(n):
        g6 = write_graph6(g)
        if shortcut_check(g) is not None:
            method = "shortcut"
        elif is_threshold(g):
            method = "threshold"
        elif decompose_search(g, "theorem", tolerance) is not None:
            method = "decompose"
        elif decompose_search(complement(g), "theorem", tolerance) is not None:
            method = "complement_decompose"
        else:
            method = "none"
            residual.append(g6)
            residual_ok &= gm_check(g, tolerance).holds
        methods.append((g6, method))
    return EigenfreeCensusResult(
        total_classes=len(methods),
        covered_count=len(methods) - len(residual),
        residual_graph6=tuple(residual),
        residual_all_pass_gm=residual_ok,
        methods=tuple(methods),
    )


@dataclass(frozen=True)
class Certificate:
    """Machine-checkable evidence tree for one graph's verdict.

    ThresholdBase leaves assert spectrum = conjugate degrees exactly;
    DirectEigen leaves assert the majorization by direct eigensolve;
    AbcNode records an oriented cut whose children certify the two parts.
    """

    kind: str
    graph6: str
    va_mask: Optional[int] = None
    children: tuple = ()

    def __post_init__(self):
        if self.kind not in ("ThresholdBase", "DirectEigen", "AbcNode"):
            raise ValueError(f"unknown certificate kind {self.kind!r}")

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "graph6": self.graph6,
            "cut": None if self.va_mask is None else {"va_mask": self.va_mask},
            "children": [c.to_json_dict() for c in self.children],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "Certificate":
        try:
            cut = data["cut"]
            return Certificate(
                kind=data["kind"],
                graph6=data["graph6"],
                va_mask=None if cut is None else cut["va_mask"],
                children=tuple(Certificate.from_json_dict(c) for c in data["children"]),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed certificate json: {exc}") from exc


def tree_certificate(t: Graph) -> Certificate:
    """Certificate for a tree by repeated cutting at internal edges.

    Depth-2 trees are stars, whose spectrum matches the conjugate
    degrees exactly, so they are the base case.  Otherwise the first
    edge with both endpoints of degree >= 2 splits the tree into two
    smaller trees joined by a single cross edge; the larger side takes
    the A role so the ordering condition holds.
    """
    from gmlap.graph6 import write_graph6

    if not is_tree(t):
        raise ValueError("tree_certificate requires a tree")
    if diameter(t) <= 2:
        return Certificate(kind="ThresholdBase", graph6=write_graph6(t))

    internal = next(
        (i, j) for i, j in t.edges() if t.degree(i) >= 2 and t.degree(j) >= 2
    )
    trimmed = Graph(t.n, t.bits ^ (1 << edge_bit(*internal)))
    side = _component_mask(trimmed, internal[0])
    other = ((1 << t.n) - 1) ^ side
    va_mask = side if side.bit_count() >= other.bit_count() else other
    cut = Cut.from_mask(t, va_mask)
    return Certificate(
        kind="AbcNode",
        graph6=write_graph6(t),
        va_mask=va_mask,
        children=(tree_certificate(cut.a), tree_certificate(cut.b)),
    )


def _component_mask(g: Graph, start: int) -> int:
    rows = g.adjacency_rows()
    seen = 1 << start
    frontier = seen
    while frontier:
        reach = 0
        v = frontier
        while v:
            low = v & -v
            reach |= rows[low.bit_length() - 1]
            v ^= low
        frontier = reach & ~seen
        seen |= frontier
    return seen


def verify_certificate(cert: Certificate, tolerance: float = 1e-7) -> bool:
    """Re-derive every node's conditions from scratch.

    Structural damage (unknown kinds, children that do not match the
    cut's parts, bad masks) raises ValueError; a well-formed certificate
    whose conditions fail returns False.
    """
    from gmlap.graph6 import parse_graph6, write_graph6

    g = parse_graph6(cert.graph6)
    if cert.kind == "ThresholdBase":
        if cert.children:
            raise ValueError("leaf certificate must not have children")
        return gm_check(g, tolerance).equality
    if cert.kind == "DirectEigen":
        if cert.children:
            raise ValueError("leaf certificate must not have children")
        return gm_check(g, tolerance).holds

    if cert.va_mask is None or len(cert.children) != 2:
        raise ValueError("cut node needs a mask and exactly two children")
    cut = Cut.from_mask(g, cert.va_mask)
    if cert.children[0].graph6 != write_graph6(cut.a) or cert.children[1].graph6 != write_graph6(cut.b):
        raise ValueError("certificate children do not match the cut's parts")
    report = check_cut(cut, tolerance)
    child_ok = all(verify_certificate(c, tolerance) for c in cert.children)
    return (
        child_ok
        and report.gm_c
        and report.cond_c_le_parts
        and report.cond_order
    )


def disjoint_edges_condition(a: Graph, b: Graph, k: int) -> bool:
    """Simplified hypothesis when the cross edges are k disjoint edges:
    both parts need at least 2k non-isolated vertices.

    Cross-checked against the general cut conditions on a concrete
    embedding whenever one fits (k vertices available on each side).
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    na = sum(1 for v in range(a.n) if a.degree(v) > 0)
    nb = sum(1 for v in range(b.n) if b.degree(v) > 0)
    simplified = na >= 2 * k and nb >= 2 * k

    if a.n >= max(k, 1) and b.n >= max(k, 1):
        h = disjoint_sum(a, b)
        bits = h.bits
        for i in range(k):
            bits |= 1 << edge_bit(i, a.n + i)
        joined = Graph(h.n, bits)
        va = (1 << a.n) - 1
        cut = Cut.from_mask(joined, va)
        if nb > na:
            cut = cut.swapped()
        report = check_cut(cut)
        general = report.cond_c_le_parts and report.cond_order
        assert simplified == general
    return simplified
