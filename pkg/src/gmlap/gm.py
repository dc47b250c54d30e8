"""Majorization verdicts: Laplacian spectrum vs conjugate degrees.

The central check is that the spectrum of L(G) is majorized by the
conjugate of the degree sequence.  Both sides sum to 2m, so the sum
condition is tested against the exact integer 2m rather than a floating
accumulation.  A failed verdict is reported as data (margins and the
first violated prefix), never raised: a genuine counterexample is the
most interesting output this package could produce.
"""

from dataclasses import dataclass

from gmlap.graphs import (
    Graph,
    complement,
    degree_sequence,
    induced_subgraph,
    max_degree,
)
from gmlap.partitions import conjugate, pad_to
from gmlap.spectra import format_real, laplacian_spectrum

DEFAULT_TOL = 1e-7


@dataclass(frozen=True)
class GmReport:
    """Outcome of one spectrum-vs-conjugate-degrees comparison.

    margins[k-1] is sum of the k largest conjugate degrees minus the sum
    of the k largest eigenvalues; the verdict holds when every margin is
    >= -tolerance and the final margin (forced by the trace identity) is
    zero within tolerance.  tight lists the 1-based prefixes whose margin
    is <= tolerance, equality means the two sequences agree entrywise.
    """

    graph6: str
    holds: bool
    equality: bool
    margins: tuple
    tight: tuple
    shortcut: object
    first_violation: object = None

    def to_json_dict(self) -> dict:
        return {
            "graph6": self.graph6,
            "holds": self.holds,
            "equality": self.equality,
            "margins": [format_real(m) for m in self.margins],
            "tight": list(self.tight),
            "shortcut": self.shortcut,
        }


def conjugate_degrees(g: Graph) -> tuple:
    """Conjugate of the degree sequence, zero-padded to length n."""
    return pad_to(conjugate(degree_sequence(g)), g.n)


def margin_report(graph6_id, dt, lam, exact_total, tolerance, shortcut) -> GmReport:
    """Shared comparison core: conjugate-degree prefixes vs eigenvalue
    prefixes, with the total pinned to an exact integer.

    dt must be zero-padded to len(lam).  The integer prefix accumulator
    ends at exact_total by construction, so the last margin doubles as
    the sum-equality check.
    """
    n = len(lam)
    margins = []
    acc_dt = 0
    acc_lam = 0.0
    for k in range(n):
        acc_dt += dt[k]
        acc_lam += lam[k]
        margins.append(acc_dt - acc_lam)
    margins = tuple(margins)
    assert acc_dt == exact_total

    first_violation = None
    for k in range(n):
        bad = margins[k] < -tolerance or (k == n - 1 and abs(margins[k]) > tolerance)
        if bad:
            first_violation = k + 1
            break
    holds = first_violation is None
    equality = n == 0 or max(abs(a - b) for a, b in zip(lam, dt)) <= tolerance
    tight = tuple(k + 1 for k in range(n) if margins[k] <= tolerance)
    return GmReport(
        graph6=graph6_id,
        holds=holds,
        equality=equality,
        margins=margins,
        tight=tight,
        shortcut=shortcut,
        first_violation=first_violation,
    )


def gm_check(g: Graph, tolerance: float = DEFAULT_TOL) -> GmReport:
    """Check spectrum-majorized-by-conjugate-degrees for one graph."""
    from gmlap.graph6 import write_graph6

    return margin_report(
        graph6_id=write_graph6(g),
        dt=conjugate_degrees(g),
        lam=laplacian_spectrum(g).values,
        exact_total=2 * g.m,
        tolerance=tolerance,
        shortcut=shortcut_check(g),
    )


def first_two_inequalities(g: Graph, tolerance: float = DEFAULT_TOL) -> tuple:
    """The k = 1 and k = 2 prefix inequalities, isolated vertices removed.

    With no isolated vertices the largest conjugate degree equals the
    vertex count, which gives these prefixes their usual sharp reading.
    Both are theorems, so (True, True) is the only expected output.
    """
    live = [v for v in range(g.n) if g.degree(v) > 0]
    h = induced_subgraph(g, live)
    if h.n == 0:
        return (True, True)
    dt = conjugate_degrees(h)
    lam = laplacian_spectrum(h).values
    first = lam[0] <= dt[0] + tolerance
    if h.n == 1:
        return (first, first)
    second = lam[0] + lam[1] <= dt[0] + dt[1] + tolerance
    return (first, second)


def shortcut_check(g: Graph):
    """Tag a sufficient condition that settles the verdict without
    eigensolving, or None.

    Degrees all equal give "regular"; degrees spanning {k-1, k} give
    "nearly_regular"; max degree at most 3 gives "max_degree_le_3";
    the same conditions on the complement give "complement_reduced".
    """
    degs = degree_sequence(g)
    if g.n == 0:
        return "regular"
    if degs[0] == degs[-1]:
        return "regular"
    if degs[0] - degs[-1] == 1:
        return "nearly_regular"
    if degs[0] <= 3:
        return "max_degree_le_3"
    if max_degree(complement(g)) <= 3:
        return "complement_reduced"
    return None


def complement_reduce(g: Graph) -> Graph:
    """Whichever of g and its complement has fewer edges (ties keep g)."""
    h = complement(g)
    return h if h.m < g.m else g
