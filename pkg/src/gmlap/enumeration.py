"""Exhaustive and random graph generation plus the parallel sweep engine.

Isomorphism classes are enumerated by walking labeled upper-triangle
bitmasks whose degree vectors are already non-increasing (every class
has such a labeling) and deduplicating through the canonical labeling
kernel.  Trees grow by leaf attachment, each generation deduplicated the
same way.  Sweeps fan classes out over worker processes in fixed
contiguous chunks, so the merged output is byte-identical no matter how
many workers ran.
"""

import csv
import hashlib
import io
import json
import multiprocessing
import os
import random
import time
from dataclasses import dataclass

from gmlap import _kernels, __version__
from gmlap.decompose import MODES, decompose_search
from gmlap.gm import gm_check
from gmlap.graphs import Graph, edge_bit
from gmlap.spectra import format_real

MAX_EXHAUSTIVE_N = 8
MAX_TREE_N = 10

SWEEP_CHECKS = ("gm", "decompose")
CSV_COLUMNS = (
    "graph6",
    "gm_holds",
    "gm_equality",
    "shortcut",
    "decomposable_theorem",
    "decomposable_dt",
    "cut_mask",
)


def all_graphs(n: int):
    """One representative per isomorphism class on n vertices.

    Yields the canonical representative of each class, ordered by first
    appearance along the ascending labeled-mask scan; both the scan and
    the canonical labeling are deterministic, so the order is too.
    """
    if not 1 <= n <= MAX_EXHAUSTIVE_N:
        raise ValueError(f"exhaustive enumeration supports 1 <= n <= {MAX_EXHAUSTIVE_N}")
    masks = _kernels.degree_sorted_masks(n)
    seen = set()
    for canon in _kernels.canon_bits_batch(n, masks):
        if canon not in seen:
            seen.add(canon)
            yield Graph(n, int(canon))


def all_trees(n: int):
    """One representative per unlabeled tree on n vertices.

    Trees are grown by attaching a leaf to every vertex of every smaller
    tree and deduplicating canonically per generation; each generation
    is yielded in ascending bitset order.
    """
    if not 2 <= n <= MAX_TREE_N:
        raise ValueError(f"tree enumeration supports 2 <= n <= {MAX_TREE_N}")
    from gmlap.graphs import canonical_bits

    level = [Graph.from_edges(2, [(0, 1)])]
    for k in range(2, n):
        grown = set()
        for t in level:
            for v in range(k):
                g = Graph(k + 1, t.bits | 1 << edge_bit(v, k))
                grown.add(canonical_bits(g))
        level = [Graph(k + 1, bits) for bits in sorted(grown)]
    yield from level


def random_graph(n: int, edge_probability: float, seed: int) -> Graph:
    """Each pair kept independently, pairs drawn in lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0.0 <= edge_probability <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    bits = 0
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_probability:
                bits |= 1 << edge_bit(i, j)
    return Graph(n, bits)


@dataclass(frozen=True)
class SweepReport:
    """Aggregate of one exhaustive sweep; wall_time is informational and
    never serialized, keeping summaries byte-comparable across runs."""

    n: int
    total_classes: int
    gm_holds_count: int
    gm_equality_count: int
    decomposable: dict
    shortcut_histogram: dict
    counterexamples: tuple
    input_hash: str
    wall_time: float

    def __post_init__(self):
        assert self.gm_holds_count + len(self.counterexamples) == self.total_classes

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "total_classes": self.total_classes,
            "gm_holds_count": self.gm_holds_count,
            "gm_equality_count": self.gm_equality_count,
            "decomposable": self.decomposable,
            "shortcut_histogram": self.shortcut_histogram,
            "counterexamples": list(self.counterexamples),
            "input_hash": self.input_hash,
        }


def _row_for_graph(task):
    """Evaluate one class: the parallel work unit (must stay picklable)."""
    bits, n, checks, tolerance = task
    g = Graph(n, bits)
    report = gm_check(g, tolerance)
    row = {
        "graph6": report.graph6,
        "gm_holds": str(report.holds),
        "gm_equality": str(report.equality),
        "shortcut": report.shortcut or "",
        "decomposable_theorem": "",
        "decomposable_dt": "",
        "cut_mask": "",
    }
    if "decompose" in checks:
        masks = {}
        for mode in MODES:
            found = decompose_search(g, mode, tolerance)
            row[f"decomposable_{mode}"] = str(found is not None)
            if found is not None:
                masks[mode] = found[0].va_mask
        chosen = masks.get("theorem", masks.get("dt"))
        row["cut_mask"] = "" if chosen is None else str(chosen)
    return row


def _sweep_hash(n, checks, tolerance) -> str:
    payload = json.dumps(
        {
            "n": n,
            "checks": sorted(checks),
            "tolerance": format_real(tolerance),
            "version": __version__,
        },
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def _chunk_bounds(total: int, parts: int):
    """Contiguous chunk boundaries; identical row order for any parts."""
    base, extra = divmod(total, parts)
    bounds = []
    start = 0
    for k in range(parts):
        size = base + (1 if k < extra else 0)
        bounds.append((start, start + size))
        start += size
    return bounds


def sweep(
    n: int,
    checks=SWEEP_CHECKS,
    workers: int = 1,
    tolerance: float = 1e-7,
    out_dir=None,
):
    """Run the selected checks over every class on n vertices.

    Classes are split into one contiguous chunk per worker and evaluated
    in order, so the merged row sequence (and thus every serialized
    byte) is independent of the worker count.  With out_dir set, rows
    are persisted as per-chunk shard files plus a merged CSV and a
    summary JSON keyed by an input hash; a matching existing summary is
    returned as-is instead of recomputing.
    """
    checks = tuple(checks)
    for kind in checks:
        if kind not in SWEEP_CHECKS:
            raise ValueError(f"unknown check kind {kind!r}; expected from {SWEEP_CHECKS}")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    input_hash = _sweep_hash(n, checks, tolerance)

    if out_dir is not None:
        summary_path = os.path.join(out_dir, "summary.json")
        if os.path.exists(summary_path):
            with open(summary_path) as fh:
                prior = json.load(fh)
            if prior.get("input_hash") == input_hash:
                return _report_from_summary(prior)

    start = time.perf_counter()
    tasks = [(g.bits, n, checks, tolerance) for g in all_graphs(n)]
    bounds = _chunk_bounds(len(tasks), workers)
    if workers == 1:
        chunk_rows = [[_row_for_graph(t) for t in tasks]]
    else:
        with multiprocessing.Pool(workers) as pool:
            chunk_rows = pool.map(
                _run_chunk, [tasks[lo:hi] for lo, hi in bounds]
            )
    rows = [row for chunk in chunk_rows for row in chunk]
    report = _aggregate(n, checks, rows, input_hash, time.perf_counter() - start)

    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        for k, chunk in enumerate(chunk_rows):
            with open(os.path.join(out_dir, f"shard-{k:03d}.csv"), "w", newline="") as fh:
                _write_rows(fh, chunk, header=False)
        with open(os.path.join(out_dir, "census.csv"), "w", newline="") as fh:
            _write_rows(fh, rows, header=True)
        with open(os.path.join(out_dir, "summary.json"), "w") as fh:
            json.dump(report.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return report


def _run_chunk(tasks):
    return [_row_for_graph(t) for t in tasks]


def _write_rows(fh, rows, header: bool):
    writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
    if header:
        writer.writeheader()
    writer.writerows(rows)


def sweep_csv_text(rows) -> str:
    buf = io.StringIO()
    _write_rows(buf, rows, header=True)
    return buf.getvalue()


def _aggregate(n, checks, rows, input_hash, wall_time) -> SweepReport:
    histogram = {}
    decomposable = {}
    if "decompose" in checks:
        decomposable = {mode: 0 for mode in MODES}
    counterexamples = []
    holds = 0
    equality = 0
    for row in rows:
        if row["gm_holds"] == "True":
            holds += 1
        else:
            counterexamples.append(row["graph6"])
        if row["gm_equality"] == "True":
            equality += 1
        tag = row["shortcut"] or "none"
        histogram[tag] = histogram.get(tag, 0) + 1
        for mode in decomposable:
            if row[f"decomposable_{mode}"] == "True":
                decomposable[mode] += 1
    return SweepReport(
        n=n,
        total_classes=len(rows),
        gm_holds_count=holds,
        gm_equality_count=equality,
        decomposable=decomposable,
        shortcut_histogram=dict(sorted(histogram.items())),
        counterexamples=tuple(counterexamples),
        input_hash=input_hash,
        wall_time=wall_time,
    )


def _report_from_summary(data: dict) -> SweepReport:
    return SweepReport(
        n=data["n"],
        total_classes=data["total_classes"],
        gm_holds_count=data["gm_holds_count"],
        gm_equality_count=data["gm_equality_count"],
        decomposable=data["decomposable"],
        shortcut_histogram=data["shortcut_histogram"],
        counterexamples=tuple(data["counterexamples"]),
        input_hash=data["input_hash"],
        wall_time=0.0,
    )
