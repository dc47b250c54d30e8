"""graph6 encoding plus a human-friendly edge-list text format.

graph6 packs the column-major upper triangle into 6-bit groups offset by
63, preceded by a size header: one byte for n <= 62, '~' plus three bytes
for n <= 258047, '~~' plus six bytes beyond that.  Our Graph type stores
edges in the same bit order, so encoding is a straight repack.
"""

from gmlap.graphs import Graph, triangle_bits


class FormatError(ValueError):
    """Malformed graph6 or edge-list input."""


_HEADER = ">>graph6<<"


def _decode_n(data: str):
    """Parse the size field, returning (n, chars consumed)."""
    if not data:
        raise FormatError("empty graph6 string")
    c0 = ord(data[0])
    if c0 != 126:
        return c0 - 63, 1
    if len(data) >= 2 and ord(data[1]) == 126:
        vals = [ord(ch) - 63 for ch in data[2:8]]
        if len(vals) < 6:
            raise FormatError("truncated graph6 size field")
        n = 0
        for v in vals:
            n = n << 6 | v
        return n, 8
    vals = [ord(ch) - 63 for ch in data[1:4]]
    if len(vals) < 3:
        raise FormatError("truncated graph6 size field")
    n = 0
    for v in vals:
        n = n << 6 | v
    return n, 4


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string (optional '>>graph6<<' prefix allowed)."""
    text = text.strip()
    if text.startswith(_HEADER):
        text = text[len(_HEADER):]
    for ch in text:
        if not 63 <= ord(ch) <= 126:
            raise FormatError(f"invalid graph6 character {ch!r}")
    n, used = _decode_n(text)
    if n < 0:
        raise FormatError("negative vertex count")
    nbits = triangle_bits(n)
    body = text[used:]
    if len(body) != (nbits + 5) // 6:
        raise FormatError(
            f"graph6 body length {len(body)} does not match n={n}"
        )
    bits = 0
    pos = 0
    for ch in body:
        group = ord(ch) - 63
        for k in range(6):
            if group >> (5 - k) & 1:
                if pos + k >= nbits:
                    raise FormatError("nonzero padding bits in graph6 body")
                bits |= 1 << (pos + k)
        pos += 6
    return Graph(n, bits)


def write_graph6(g: Graph) -> str:
    if g.n <= 62:
        head = chr(g.n + 63)
    elif g.n <= 258047:
        head = "~" + "".join(chr((g.n >> s) % 64 + 63) for s in (12, 6, 0))
    else:
        head = "~~" + "".join(chr((g.n >> s) % 64 + 63) for s in (30, 24, 18, 12, 6, 0))
    nbits = triangle_bits(g.n)
    chars = []
    for pos in range(0, nbits, 6):
        group = 0
        for k in range(6):
            if pos + k < nbits and g.bits >> (pos + k) & 1:
                group |= 1 << (5 - k)
        chars.append(chr(group + 63))
    return head + "".join(chars)


def parse_edge_list(text: str) -> Graph:
    """Read the "n m" header plus one "i j" line per edge (0-based)."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise FormatError("empty edge list")
    try:
        n, m = map(int, lines[0].split())
    except ValueError as exc:
        raise FormatError(f"bad edge-list header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise FormatError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        try:
            i, j = map(int, ln.split())
        except ValueError as exc:
            raise FormatError(f"bad edge line {ln!r}") from exc
        edges.append((i, j))
    try:
        g = Graph.from_edges(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if g.m != m:
        raise FormatError("duplicate edges in edge list")
    return g


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{i} {j}" for i, j in g.edges())
    return "\n".join(lines) + "\n"
