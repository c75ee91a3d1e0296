"""Independent r-sets: enumeration, exact counting, star sizes, surgeries.

A "star" at v is the family of independent r-sets containing v; its size
s_r(v) is the central quantity here.  Counting routes are deliberately
redundant (subset branching vs rooted tree DP vs closed forms) so they can
cross-check each other.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .bounds import binom
from .graphs import Graph, GraphError, SpiderSpec, bit_list, iter_bits

ENUMERATION = "enumeration"
TREE_DP = "tree-dp"
CLOSED_FORM = "closed-form"


@dataclass(frozen=True)
class FamilyQuery:
    """Which independent r-sets to enumerate or count.

    anchor: vertex every set must contain (or None).
    forbidden: mask of vertices no set may touch.
    """

    graph: Graph
    r: int
    anchor: Optional[int] = None
    forbidden: int = 0

    def __post_init__(self):
        g = self.graph
        if not 0 <= self.r <= g.n:
            raise GraphError(f"set size r={self.r} out of range for n={g.n}")
        if self.anchor is not None:
            if not 0 <= self.anchor < g.n:
                raise GraphError(f"anchor {self.anchor} out of range")
            if self.forbidden >> self.anchor & 1:
                raise GraphError("anchor vertex is also forbidden")
        if self.forbidden & ~g.vertex_mask:
            raise GraphError("forbidden mask mentions vertices outside the graph")


@dataclass(frozen=True)
class CountResult:
    count: int
    method: str  # enumeration | tree-dp | closed-form


def _colex_rsets(adj, allowed: int, r: int) -> Iterator[int]:
    # yields independent r-subsets of `allowed` in ascending bitset-integer
    # (= colexicographic) order: outer loop ascends over the maximum element
    if r == 0:
        yield 0
        return
    m = allowed
    while m:
        low = m & -m
        v = low.bit_length() - 1
        if r == 1:
            yield low
        else:
            below = (low - 1) & allowed & ~adj[v]
            if below.bit_count() >= r - 1:
                for rest in _colex_rsets(adj, below, r - 1):
                    yield rest | low
        m ^= low


def enum_independent_rsets(q: FamilyQuery) -> Iterator[int]:
    """Stream the independent r-sets of the query in ascending bitset order."""
    g = q.graph
    allowed = g.vertex_mask & ~q.forbidden
    if q.anchor is None:
        yield from _colex_rsets(g.adj, allowed, q.r)
        return
    if q.r == 0:
        return  # the empty set does not contain the anchor
    v = q.anchor
    allowed &= ~(g.adj[v] | 1 << v)
    vbit = 1 << v
    for rest in _colex_rsets(g.adj, allowed, q.r - 1):
        yield rest | vbit


def all_independent_sets(g: Graph, include_empty: bool = False) -> list[int]:
    """All independent sets of every size, ascending as bitset integers."""
    adj = g.adj
    out = []

    def rec(m: int, acc: int):
        out.append(acc)
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            rec(m & ~adj[v], acc | low)

    rec(g.vertex_mask, 0)
    if not include_empty:
        out.remove(0)
    out.sort()
    return out


def indep_size_counts(g: Graph, anchor: Optional[int] = None, forbidden: int = 0,
                      max_size: Optional[int] = None) -> list[int]:
    """counts[s] = number of independent s-sets (anchored/restricted).

    Subset branching in ascending vertex order; every independent set is
    visited exactly once, so the cost is proportional to the total count.
    """
    adj = g.adj
    cap = g.n if max_size is None else max_size
    allowed = g.vertex_mask & ~forbidden
    base = 0
    if anchor is not None:
        allowed &= ~(adj[anchor] | 1 << anchor)
        base = 1
    counts = [0] * (cap + 1)

    def rec(m: int, size: int):
        counts[size] += 1
        if size == cap:
            return
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            rec(m & ~adj[v], size + 1)

    if base <= cap:
        rec(allowed, base)
    return counts


def count_independent_rsets(q: FamilyQuery) -> CountResult:
    counts = indep_size_counts(q.graph, q.anchor, q.forbidden, max_size=q.r)
    return CountResult(counts[q.r], ENUMERATION)


def count_path_rsets(m: int, r: int) -> CountResult:
    """Independent r-sets of the path on m vertices: C(m - r + 1, r)."""
    if m < 0 or r < 0:
        raise GraphError(f"need m, r >= 0; got m={m}, r={r}")
    return CountResult(binom(m - r + 1, r), CLOSED_FORM)


# -- rooted tree DP ----------------------------------------------------

def _conv(a: list[int], b: list[int], cap: int) -> list[int]:
    out = [0] * (min(len(a) + len(b) - 1, cap + 1))
    for i, x in enumerate(a):
        if x:
            top = min(len(b), len(out) - i)
            for j in range(top):
                out[i + j] += x * b[j]
    return out


def _component_polys(g: Graph, root: int, comp: int, cap: int) -> tuple[list[int], list[int]]:
    # inc[s]/exc[s]: independent s-sets of this component with root in/out
    order = [root]
    parent = {root: -1}
    for u in order:
        for w in iter_bits(g.adj[u] & comp):
            if w not in parent:
                parent[w] = u
                order.append(w)
    inc = {u: [0, 1] for u in order}
    exc = {u: [1] for u in order}
    for u in reversed(order):
        if u == root:
            break
        p = parent[u]
        inc[p] = _conv(inc[p], exc[u], cap)
        exc[p] = _conv(exc[p], [x + y for x, y in
                                zip(inc[u] + [0] * len(exc[u]), exc[u] + [0] * len(inc[u]))], cap)
    return inc[root], exc[root]


def _forest_polys(g: Graph, cap: int):
    if not g.is_forest():
        raise GraphError("tree DP requires a forest")
    for comp in g.components():
        root = (comp & -comp).bit_length() - 1
        yield comp, root, _component_polys(g, root, comp, cap)


def indep_size_counts_tree_dp(g: Graph, max_size: Optional[int] = None) -> list[int]:
    """Per-size independent set counts of a forest via child convolution."""
    cap = g.n if max_size is None else max_size
    total = [1]
    for _comp, _root, (inc, exc) in _forest_polys(g, cap):
        both = [x + y for x, y in zip(inc + [0] * len(exc), exc + [0] * len(inc))]
        total = _conv(total, both, cap)
    return total + [0] * (cap + 1 - len(total))


def star_vector_tree_dp(g: Graph, v: int, max_size: Optional[int] = None) -> list[int]:
    """counts[s] = independent s-sets of the forest g containing v."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    cap = g.n if max_size is None else max_size
    if not g.is_forest():
        raise GraphError("tree DP requires a forest")
    total = None
    for comp in g.components():
        if comp >> v & 1:
            inc, _exc = _component_polys(g, v, comp, cap)
            total = inc if total is None else _conv(total, inc, cap)
        else:
            root = (comp & -comp).bit_length() - 1
            inc, exc = _component_polys(g, root, comp, cap)
            both = [x + y for x, y in zip(inc + [0] * len(exc), exc + [0] * len(inc))]
            total = both if total is None else _conv(total, both, cap)
    return (total or [0]) + [0] * (cap + 1 - len(total or [0]))


def star_size_tree_dp(g: Graph, v: int, r: int) -> CountResult:
    if not 0 <= r <= g.n:
        raise GraphError(f"r={r} out of range")
    return CountResult(star_vector_tree_dp(g, v, max_size=r)[r], TREE_DP)


def star_size(g: Graph, v: int, r: int, method: str = "auto") -> CountResult:
    """s_r(v): exact count of independent r-sets containing v."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    if not 0 <= r <= g.n:
        raise GraphError(f"r={r} out of range")
    if method == "auto":
        method = TREE_DP if g.is_forest() else ENUMERATION
    if method == TREE_DP:
        return star_size_tree_dp(g, v, r)
    if method == ENUMERATION:
        return CountResult(indep_size_counts(g, anchor=v, max_size=r)[r], ENUMERATION)
    raise GraphError(f"unknown star_size method {method!r}")


# -- path-merge surgeries ----------------------------------------------

@dataclass(frozen=True)
class PathMerge:
    """A disjoint union of paths joined end-to-end into one path.

    graph: the merged path; position p is adjacent to p+1.
    order: order[p] = source-graph vertex sitting at position p.
    junctions: (p, p+1) pairs whose edge was added by the merge, i.e. does
        NOT exist in source minus removed.
    removed: mask of source vertices deleted before merging.
    marked_position: position of the distinguished vertex (the last leaf in
        canonical leg order for spider merges; -1 otherwise).
    """

    graph: Graph
    order: tuple[int, ...]
    junctions: tuple[tuple[int, int], ...]
    source: Graph
    removed: int
    marked_position: int = -1

    def position_of(self, source_vertex: int) -> int:
        return self.order.index(source_vertex)

    def junction_mask_pairs(self) -> list[tuple[int, int]]:
        return [(1 << a, 1 << b) for a, b in self.junctions]

    def independent_in_pieces(self, mask: int) -> bool:
        """Independence in source-minus-removed, i.e. ignoring junction edges."""
        junctions = set(self.junctions)
        m = mask
        while m:
            low = m & -m
            p = low.bit_length() - 1
            if mask >> (p + 1) & 1 and p + 1 < self.graph.n and (p, p + 1) not in junctions:
                return False
            m ^= low
        return True


def _merge_from_pieces(source: Graph, removed: int, pieces: list[list[int]],
                       label: str, marked: int = -1) -> PathMerge:
    seen = 0
    for piece in pieces:
        for a, b in zip(piece, piece[1:]):
            if not source.has_edge(a, b):
                raise GraphError(f"piece step {a}-{b} is not an edge of the source graph")
        for v in piece:
            if removed >> v & 1 or seen >> v & 1:
                raise GraphError(f"vertex {v} repeated or removed in merge pieces")
            seen |= 1 << v
    if seen != source.vertex_mask & ~removed:
        raise GraphError("merge pieces must cover exactly the surviving vertices")
    order = [v for piece in pieces for v in piece]
    p = len(order)
    graph = Graph(p, zip(range(p - 1), range(1, p)), label=label)
    junctions = []
    pos = 0
    for piece in pieces[:-1]:
        pos += len(piece)
        junctions.append((pos - 1, pos))
    marked_position = order.index(marked) if marked >= 0 else -1
    return PathMerge(graph, tuple(order), tuple(junctions), source, removed, marked_position)


def merge_paths(spec: SpiderSpec, mode: str) -> PathMerge:
    """Join the legs of a spider into one path after removing the centre.

    mode "without_w": drop w, chain the legs leaf-end to inner-end (the
    junction edges run from each leg's inner vertex to the next leg's leaf),
    giving a path on n-1 vertices.  mode "with_w": drop the whole closed
    neighbourhood of w (needs every leg length >= 2), giving n-1-k vertices.
    Legs are chained in canonical leg order; the marked position tracks the
    last leaf in that order.
    """
    g = spec.realize()
    marked = spec.leaf_vertex(spec.order[-1])
    if mode == "without_w":
        pieces = [list(reversed(spec.leg_path(i))) for i in spec.order]
        return _merge_from_pieces(g, 1, pieces, f"{g.label}-merged", marked)
    if mode == "with_w":
        if any(x < 2 for x in spec.legs):
            raise GraphError("with_w merge needs every leg length >= 2")
        removed = 1
        for i in range(spec.k):
            removed |= 1 << spec.inner_vertex(i)
        pieces = [list(reversed(spec.leg_path(i)))[:-1] for i in spec.order]
        return _merge_from_pieces(g, removed, pieces, f"{g.label}-core-merged", marked)
    raise GraphError(f"unknown merge mode {mode!r}")


def merge_tree_paths(t: Graph, removed: int) -> PathMerge:
    """Remove a vertex set from a tree and chain the leftover paths.

    Every component of t - removed must already be a path (true whenever
    removed covers all vertices of degree >= 3).  Pieces are ordered by
    smallest vertex and oriented from their lower-numbered endpoint.
    """
    if not t.is_tree():
        raise GraphError("merge_tree_paths expects a tree")
    removed &= t.vertex_mask
    rest = t.vertex_mask & ~removed
    if not rest:
        raise GraphError("nothing left to merge after removal")
    pieces = []
    seen = 0
    for v in iter_bits(rest):
        if seen >> v & 1:
            continue
        # walk the component containing v; must be a path
        comp = 1 << v
        frontier = comp
        while frontier:
            grow = 0
            for u in iter_bits(frontier):
                grow |= t.adj[u] & rest
            frontier = grow & ~comp
            comp |= frontier
        ends = [u for u in iter_bits(comp) if (t.adj[u] & comp).bit_count() <= 1]
        if any((t.adj[u] & comp).bit_count() > 2 for u in iter_bits(comp)):
            raise GraphError("a surviving component is not a path; remove its branch vertices")
        start = min(ends)
        piece = [start]
        prev, cur = -1, start
        while True:
            nxt = [w for w in iter_bits(t.adj[cur] & comp) if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            piece.append(cur)
        pieces.append(piece)
        seen |= comp
    pieces.sort(key=lambda piece: min(piece))
    return _merge_from_pieces(t, removed, pieces, f"{t.label or 'tree'}-merged")


def splitstar_witness(merged: PathMerge, a_mask: int, junction: int = 0) -> int:
    """Trade the two set members nearest a junction for the junction pair.

    Given an independent r-set A of the piece graph, returns
    A' = (A - {a', a''}) + {u', u''} where (u', u'') is the chosen junction
    edge, a' is the member of A nearest u' (ties toward lower positions) and
    a'' the member of A - {a'} nearest u'' (ties toward higher positions).
    A' is independent among the pieces but not in the merged path, which is
    what makes the map injective into the non-path families.
    """
    if merged.removed.bit_count() < 2:
        raise GraphError("witness surgery needs more than one removed branch vertex")
    if not merged.junctions:
        raise GraphError("merge has no junction to trade against")
    if not 0 <= junction < len(merged.junctions):
        raise GraphError(f"junction index {junction} out of range")
    r = a_mask.bit_count()
    if r < 2:
        raise GraphError("witness surgery needs r >= 2")
    if a_mask & ~merged.graph.vertex_mask:
        raise GraphError("A mentions positions outside the merged path")
    if not merged.independent_in_pieces(a_mask):
        raise GraphError("A is not independent in the piece graph")
    u1, u2 = merged.junctions[junction]
    positions = bit_list(a_mask)
    a1 = min(positions, key=lambda p: (abs(p - u1), p))
    a2 = min((p for p in positions if p != a1), key=lambda p: (abs(p - u2), -p))
    out = a_mask & ~(1 << a1) & ~(1 << a2) | (1 << u1) | (1 << u2)
    # construction guarantees, kept as hard checks
    if out.bit_count() != r:
        raise AssertionError("witness lost or gained elements")
    if not merged.independent_in_pieces(out):
        raise AssertionError("witness not independent among the pieces")
    if merged.graph.is_independent(out):
        raise AssertionError("witness unexpectedly independent in the merged path")
    return out


# -- family dump format ------------------------------------------------

def format_family(masks) -> str:
    """One set per line as `{0,2,5}`, lines in ascending bitset order."""
    lines = []
    for mask in sorted(masks):
        lines.append("{" + ",".join(str(v) for v in bit_list(mask)) + "}")
    return "".join(line + "\n" for line in lines)


def parse_family(text: str) -> list[int]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if not (line.startswith("{") and line.endswith("}")):
            raise GraphError(f"family line {lineno}: expected {{...}}, got {raw!r}")
        inner = line[1:-1].strip()
        mask = 0
        if inner:
            for part in inner.split(","):
                try:
                    v = int(part)
                except ValueError:
                    raise GraphError(f"family line {lineno}: bad vertex {part!r}")
                if v < 0:
                    raise GraphError(f"family line {lineno}: negative vertex")
                mask |= 1 << v
        out.append(mask)
    return out
