"""Simple undirected graphs on labeled vertices, stored as an upper-triangle
bitset, with the matrix views, constructors, and combination operators used
throughout the package.

Edge {i, j} with i < j occupies bit j*(j-1)/2 + i of the bitset, i.e. the
upper triangle is packed column by column.  That ordering matches the
graph6 wire format and is also the order minimized by canonical_form, so a
canonically labeled graph round-trips to a canonical graph6 string.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from gmlap import _kernels
from gmlap.partitions import sort_desc

CANONICAL_MAX_N = 10


def edge_bit(i: int, j: int) -> int:
    """Bit index of edge {i, j} in the column-major upper triangle."""
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


def triangle_bits(n: int) -> int:
    return n * (n - 1) // 2


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph: vertex count plus edge bitset."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if self.bits < 0 or self.bits >> triangle_bits(self.n):
            raise ValueError("edge bitset out of range for vertex count")

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        bits = 0
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise ValueError(f"bad edge ({i}, {j}) for n={n}")
            bits |= 1 << edge_bit(i, j)
        return Graph(n, bits)

    @property
    def m(self) -> int:
        return self.bits.bit_count()

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and bool(self.bits >> edge_bit(i, j) & 1)

    def edges(self) -> Iterator[tuple]:
        """Edges as (i, j) with i < j, in lexicographic order."""
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.bits >> edge_bit(i, j) & 1:
                    yield (i, j)

    def neighbors_mask(self, v: int) -> int:
        mask = 0
        for u in range(self.n):
            if u != v and self.bits >> edge_bit(u, v) & 1:
                mask |= 1 << u
        return mask

    def adjacency_rows(self) -> tuple:
        """Neighbor bitmask for every vertex."""
        rows = [0] * self.n
        for i, j in self.edges():
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return tuple(rows)

    def degree(self, v: int) -> int:
        return self.neighbors_mask(v).bit_count()

    def degrees(self) -> tuple:
        """Per-vertex degrees in vertex order (unsorted)."""
        d = [0] * self.n
        for i, j in self.edges():
            d[i] += 1
            d[j] += 1
        return tuple(d)


def degree_sequence(g: Graph):
    """Vertex degrees sorted non-increasing, length n."""
    return sort_desc(g.degrees())


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for i, j in g.edges():
        a[i, j] = a[j, i] = 1
    return a


def laplacian(g: Graph) -> np.ndarray:
    """Combinatorial Laplacian: degree on the diagonal, -1 per edge.

    Symmetric with zero row sums; positive semidefinite.
    """
    lap = np.zeros((g.n, g.n), dtype=np.int64)
    for i, j in g.edges():
        lap[i, j] = lap[j, i] = -1
        lap[i, i] += 1
        lap[j, j] += 1
    return lap


def oriented_incidence(g: Graph) -> np.ndarray:
    """Signed vertex-edge incidence matrix, one column per edge.

    Orientation is fixed as tail = lower index (-1) and head = higher
    index (+1); the product with its own transpose is the Laplacian
    regardless of orientation.  Columns follow lexicographic edge order.
    """
    inc = np.zeros((g.n, g.m), dtype=np.int64)
    for col, (i, j) in enumerate(g.edges()):
        inc[i, col] = -1
        inc[j, col] = 1
    return inc


def complement(g: Graph) -> Graph:
    full = (1 << triangle_bits(g.n)) - 1
    return Graph(g.n, g.bits ^ full)


def disjoint_sum(a: Graph, b: Graph) -> Graph:
    """Graph on n_a + n_b vertices; b's vertices are shifted by n_a."""
    bits = a.bits
    for i, j in b.edges():
        bits |= 1 << edge_bit(i + a.n, j + a.n)
    return Graph(a.n + b.n, bits)


def edge_union(g: Graph, h: Graph) -> Graph:
    """Union of edge sets over a shared vertex set."""
    if g.n != h.n:
        raise ValueError("edge_union requires equal vertex counts")
    return Graph(g.n, g.bits | h.bits)


def induced_subgraph(g: Graph, vertices) -> Graph:
    """Subgraph on the given vertices, relabeled to 0..|S|-1 in sorted order."""
    sub = sorted(set(vertices))
    if sub and not (0 <= sub[0] and sub[-1] < g.n):
        raise ValueError("vertex out of range")
    index = {v: k for k, v in enumerate(sub)}
    bits = 0
    for i, j in g.edges():
        if i in index and j in index:
            bits |= 1 << edge_bit(index[i], index[j])
    return Graph(len(sub), bits)


def threshold_graph(creation: Sequence[int]) -> Graph:
    """Build a threshold graph from a creation sequence.

    Vertices are added left to right: bit 0 adds an isolated vertex, bit 1
    adds a dominating vertex joined to everything so far.  The first bit is
    immaterial (a lone vertex is both).
    """
    creation = tuple(creation)
    if not creation:
        raise ValueError("creation sequence must be nonempty")
    if any(b not in (0, 1) for b in creation):
        raise ValueError("creation sequence entries must be 0 or 1")
    bits = 0
    for v, b in enumerate(creation):
        if b:
            for u in range(v):
                bits |= 1 << edge_bit(u, v)
    return Graph(len(creation), bits)


def threshold_creation_sequence(g: Graph):
    """Recover a creation sequence if g is a threshold graph, else None.

    Peels dominating and isolated vertices from the outside in; exactly the
    threshold graphs survive to the empty graph.  The returned sequence
    rebuilds g up to isomorphism via threshold_graph.
    """
    degs = list(g.degrees())
    alive = set(range(g.n))
    rows = g.adjacency_rows()
    seq = []
    while alive:
        k = len(alive)
        dominating = next((v for v in alive if degs[v] == k - 1 and k > 1), None)
        if dominating is not None:
            seq.append(1)
            alive.discard(dominating)
            for u in alive:
                if rows[u] >> dominating & 1:
                    degs[u] -= 1
            continue
        isolated = next((v for v in alive if degs[v] == 0), None)
        if isolated is not None:
            seq.append(0)
            alive.discard(isolated)
            continue
        return None
    return tuple(reversed(seq))


def is_threshold(g: Graph) -> bool:
    return threshold_creation_sequence(g) is not None


def tree_from_prufer(seq: Sequence[int]) -> Graph:
    """Decode a Prufer sequence into a labeled tree on len(seq) + 2 vertices."""
    seq = tuple(seq)
    n = len(seq) + 2
    if any(not (0 <= s < n) for s in seq):
        raise ValueError("Prufer entries must lie in [0, n-1]")
    deg = [1] * n
    for s in seq:
        deg[s] += 1
    edges = []
    for s in seq:
        leaf = min(v for v in range(n) if deg[v] == 1)
        edges.append((leaf, s) if leaf < s else (s, leaf))
        deg[leaf] -= 1
        deg[s] -= 1
    u, v = (x for x in range(n) if deg[x] == 1)
    edges.append((u, v))
    return Graph.from_edges(n, edges)


_FAMILIES = ("path", "cycle", "complete", "star", "empty")


def standard_family(kind: str, n: int) -> Graph:
    """Common families: path, cycle, complete, star (center 0), empty."""
    if kind not in _FAMILIES:
        raise ValueError(f"unknown family {kind!r}; expected one of {_FAMILIES}")
    if n < 1:
        raise ValueError("family graphs need n >= 1")
    if kind == "path":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "cycle":
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "complete":
        return Graph(n, (1 << triangle_bits(n)) - 1)
    if kind == "star":
        return Graph.from_edges(n, [(0, i) for i in range(1, n)])
    return Graph(n, 0)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    rows = g.adjacency_rows()
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        v = 0
        while frontier:
            if frontier & 1:
                nxt |= rows[v]
            frontier >>= 1
            v += 1
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def _bfs_depths(rows, start: int, n: int):
    depth = 0
    seen = 1 << start
    frontier = seen
    far = 0
    while frontier:
        nxt = 0
        v = 0
        f = frontier
        while f:
            if f & 1:
                nxt |= rows[v]
            f >>= 1
            v += 1
        frontier = nxt & ~seen
        seen |= frontier
        if frontier:
            depth += 1
            far = depth
    return far, seen


def diameter(g: Graph):
    """Longest shortest path; math.inf when disconnected, 0 for n <= 1."""
    import math

    if g.n <= 1:
        return 0
    rows = g.adjacency_rows()
    best = 0
    full = (1 << g.n) - 1
    for v in range(g.n):
        far, seen = _bfs_depths(rows, v, g.n)
        if seen != full:
            return math.inf
        best = max(best, far)
    return best


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def max_degree(g: Graph) -> int:
    return max(g.degrees(), default=0)


def canonical_bits(g: Graph) -> int:
    """Minimal upper-triangle bitset over degree-respecting relabelings."""
    if g.n > CANONICAL_MAX_N:
        raise ValueError(f"canonical form limited to n <= {CANONICAL_MAX_N}")
    if g.n <= 1:
        return 0
    return _kernels.canon_bits(g.n, g.adjacency_rows())


def canonical_graph(g: Graph) -> Graph:
    return Graph(g.n, canonical_bits(g))


def canonical_form(g: Graph) -> bytes:
    """Canonical byte string: equal for two graphs iff they are isomorphic.

    This is the graph6 encoding of the lexicographically minimal relabeling
    (permutations restricted to degree classes), so it doubles as a
    printable canonical id.
    """
    from gmlap.graph6 import write_graph6

    return write_graph6(canonical_graph(g)).encode("ascii")


@lru_cache(maxsize=1 << 16)
def _canonical_cached(n: int, bits: int) -> int:
    return canonical_bits(Graph(n, bits))


def are_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.m != b.m:
        return False
    return _canonical_cached(a.n, a.bits) == _canonical_cached(b.n, b.bits)
