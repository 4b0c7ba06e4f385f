"""Simple graphs, exterior edge ideals and independence polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import chain, combinations, islice, permutations, product
from math import comb
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .algebra import ExtElement, UsageError
from .field import QQ, Field
from .groebner import Ideal
from .series import HilbertSeries

MAX_ENUMERATION_VERTICES = 10
MAX_INDEPENDENCE_VERTICES = 40

Edge = Tuple[int, int]


class Graph:
    """Simple undirected graph on vertices ``1..v``."""

    __slots__ = ("v", "edges", "_adj")

    def __init__(self, v: int, edges: Iterable[Sequence[int]] = ()):
        if v < 0:
            raise UsageError("vertex count must be nonnegative")
        clean = set()
        for e in edges:
            a, b = e
            if a == b:
                raise UsageError(f"loop at vertex {a}")
            if not (1 <= a <= v and 1 <= b <= v):
                raise UsageError(f"edge {{{a},{b}}} outside vertices 1..{v}")
            clean.add((min(a, b), max(a, b)))
        self.v = v
        self.edges: FrozenSet[Edge] = frozenset(clean)
        adj = [0] * (v + 1)
        for a, b in clean:
            adj[a] |= 1 << (b - 1)
            adj[b] |= 1 << (a - 1)
        self._adj = tuple(adj)

    @property
    def e(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def neighbors(self, i: int) -> int:
        """Neighbourhood of ``i`` as a vertex bit set (bit ``j-1`` for vertex ``j``)."""
        return self._adj[i]

    def degree(self, i: int) -> int:
        return self._adj[i].bit_count()

    def degrees(self) -> List[int]:
        return [self.degree(i) for i in range(1, self.v + 1)]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def isolated(self) -> List[int]:
        return [i for i in range(1, self.v + 1) if not self._adj[i]]

    def without_isolated(self) -> "Graph":
        keep = [i for i in range(1, self.v + 1) if self._adj[i]]
        relabel = {old: new for new, old in enumerate(keep, 1)}
        return Graph(len(keep), [(relabel[a], relabel[b]) for a, b in self.edges])

    def with_isolated(self, extra: int) -> "Graph":
        return Graph(self.v + extra, self.edges)

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.v
        return Graph(self.v + other.v, list(self.edges) + [(a + shift, b + shift) for a, b in other.edges])

    __add__ = disjoint_union

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex ``i`` becomes ``perm[i-1]``."""
        return Graph(self.v, [(perm[a - 1], perm[b - 1]) for a, b in self.edges])

    def components(self) -> List[List[int]]:
        seen = 0
        out = []
        for i in range(1, self.v + 1):
            if seen >> (i - 1) & 1:
                continue
            comp = 1 << (i - 1)
            frontier = comp
            while frontier:
                low = frontier & -frontier
                frontier ^= low
                new = self._adj[low.bit_length()] & ~comp
                comp |= new
                frontier |= new
            seen |= comp
            out.append([j + 1 for j in range(self.v) if comp >> j & 1])
        return out

    def canonical_form(self) -> Tuple[int, Tuple[Edge, ...]]:
        return canonical_form(self)

    def is_isomorphic(self, other: "Graph") -> bool:
        return self.canonical_form() == other.canonical_form()

    def __eq__(self, other):
        return isinstance(other, Graph) and self.v == other.v and self.edges == other.edges

    def __hash__(self):
        return hash((self.v, self.edges))

    def __repr__(self):
        return f"Graph({self.v}, {self.sorted_edges()})"

    def to_text(self) -> str:
        lines = [f"v {self.v}"] + [f"edge {a} {b}" for a, b in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"v": self.v, "edges": [list(e) for e in self.sorted_edges()]}


# ---------------------------------------------------------------------------
# constructions


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise UsageError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def complete(n: int) -> Graph:
    return Graph(n, combinations(range(1, n + 1), 2))


def star(n: int) -> Graph:
    return Graph(n, [(1, i) for i in range(2, n + 1)])


def empty(n: int) -> Graph:
    return Graph(n)


_PRESETS: Dict[str, Callable[[int], Graph]] = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "star": star,
    "empty": empty,
    "isolated": empty,
}


def preset(name: str) -> Graph:
    """Named graphs: ``path:7``, ``cycle:5``, ``triangle``, joined by ``+`` for disjoint unions."""
    parts = [p.strip() for p in name.split("+")]
    if not all(parts):
        raise UsageError(f"malformed graph preset {name!r}")
    out: Optional[Graph] = None
    for part in parts:
        if part == "triangle":
            g = cycle(3)
        elif part == "edge":
            g = path(2)
        else:
            kind, _, arg = part.partition(":")
            if kind not in _PRESETS or not arg.isdigit():
                raise UsageError(f"unknown graph preset {part!r}")
            g = _PRESETS[kind](int(arg))
        out = g if out is None else out.disjoint_union(g)
    return out


def parse_graph_text(text: str) -> Graph:
    """Read ``v <count>`` followed by ``edge <i> <j>`` lines; ``#`` starts a comment."""
    v = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "v" and len(tok) == 2 and v is None:
            v = int(tok[1])
        elif tok[0] == "edge" and len(tok) == 3 and v is not None:
            edges.append((int(tok[1]), int(tok[2])))
        else:
            raise UsageError(f"graph file line {lineno}: cannot parse {raw!r}")
    if v is None:
        raise UsageError("graph file lacks a 'v <count>' line")
    return Graph(v, edges)


def edge_ideal(g: Graph, field: Field = QQ) -> Ideal:
    gens = [ExtElement(g.v, {(1 << (a - 1)) | (1 << (b - 1)): 1}, field) for a, b in g.sorted_edges()]
    return Ideal(g.v, gens, field)


# ---------------------------------------------------------------------------
# independence polynomial


def independence_polynomial(g: Graph) -> HilbertSeries:
    """Counts of independent vertex sets by size, by recursion on vertex deletion."""
    if g.v > MAX_INDEPENDENCE_VERTICES:
        raise UsageError(f"independence polynomial limited to {MAX_INDEPENDENCE_VERTICES} vertices")
    adj = g._adj

    @lru_cache(maxsize=None)
    def count(s: int) -> Tuple[int, ...]:
        if not s:
            return (1,)
        low = s & -s
        i = low.bit_length()
        without = count(s ^ low)
        with_i = count(s & ~low & ~adj[i])
        out = list(without) + [0] * max(0, len(with_i) + 1 - len(without))
        for k, c in enumerate(with_i):
            out[k + 1] += c
        return tuple(out)

    return HilbertSeries(count((1 << g.v) - 1))


# ---------------------------------------------------------------------------
# canonical forms and enumeration


def _refined_colors(g: Graph) -> List[int]:
    colors = [g.degree(i) for i in range(1, g.v + 1)]
    while True:
        sig = [
            (colors[i - 1], tuple(sorted(colors[j] for j in range(g.v) if g._adj[i] >> j & 1)))
            for i in range(1, g.v + 1)
        ]
        ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_form(g: Graph) -> Tuple[int, Tuple[Edge, ...]]:
    """Canonical labelled representative of the isomorphism class of ``g``.

    Connected components are canonicalized separately, sorted, and laid out
    consecutively.  Within a component the form is the least sorted edge list
    over relabelings that respect iterated degree refinement (an isomorphism
    invariant), so the minimum is canonical.
    """
    comps = g.components()
    if len(comps) == 1:
        return _connected_form(g)
    forms = []
    for comp in comps:
        relabel = {old: new for new, old in enumerate(comp, 1)}
        sub = Graph(len(comp), [(relabel[a], relabel[b]) for a, b in g.edges if a in relabel])
        forms.append(_connected_form(sub))
    forms.sort(key=lambda f: (-f[0], f[1]))
    edges = []
    offset = 0
    for size, es in forms:
        edges.extend((a + offset, b + offset) for a, b in es)
        offset += size
    return g.v, tuple(edges)


def _connected_form(g: Graph) -> Tuple[int, Tuple[Edge, ...]]:
    colors = _refined_colors(g)
    cells: Dict[int, List[int]] = {}
    for i, c in enumerate(colors, 1):
        cells.setdefault(c, []).append(i)
    order = [cells[c] for c in sorted(cells)]
    slots = []
    pos = 1
    for cell in order:
        slots.append(list(range(pos, pos + len(cell))))
        pos += len(cell)
    best = None
    edges = list(g.edges)
    for choice in product(*(permutations(s) for s in slots)):
        perm = [0] * (g.v + 1)
        for cell, targets in zip(order, choice):
            for old, new in zip(cell, targets):
                perm[old] = new
        cand = tuple(sorted((min(perm[a], perm[b]), max(perm[a], perm[b])) for a, b in edges))
        if best is None or cand < best:
            best = cand
    return g.v, best if best is not None else ()


def all_pairs(v: int) -> List[Edge]:
    return list(combinations(range(1, v + 1), 2))


def enumerate_graphs(v: int, e: int, dedup: bool = False, start: int = 0, stop: Optional[int] = None) -> Iterator[Graph]:
    """All labelled graphs with ``v`` vertices and ``e`` edges, streamed.

    ``start``/``stop`` restrict to a slice of the edge-set combinations so that
    a driver can shard the work.  With ``dedup`` only the first graph of each
    isomorphism class in that slice is yielded.
    """
    if v > MAX_ENUMERATION_VERTICES:
        raise UsageError(f"enumeration limited to {MAX_ENUMERATION_VERTICES} vertices")
    pairs = all_pairs(v)
    seen = set()
    for edges in islice(combinations(pairs, e), start, stop):
        g = Graph(v, edges)
        if dedup:
            key = canonical_form(g)
            if key in seen:
                continue
            seen.add(key)
        yield g


def labelled_count(v: int, e: int) -> int:
    return comb(comb(v, 2), e)


def _subset_masks(v: int):
    """Per vertex pair, the bit set over all ``2**v`` vertex subsets containing it."""
    size = 1 << v
    words = max(1, size // 64)
    subsets = np.arange(size, dtype=np.int64)
    pairs = all_pairs(v)
    masks = np.zeros((len(pairs), words), dtype=np.uint64)
    for idx, (a, b) in enumerate(pairs):
        hit = ((subsets >> (a - 1)) & 1) & ((subsets >> (b - 1)) & 1)
        masks[idx] = _pack(hit.astype(bool), words)
    sizes = np.array([int(s).bit_count() for s in range(size)])
    size_classes = np.stack([_pack(sizes == k, words) for k in range(v + 1)])
    full = _pack(np.ones(size, dtype=bool), words)
    return masks, size_classes, full


def _pack(bits: np.ndarray, words: int) -> np.ndarray:
    # any fixed layout works: the words are only combined with and/or/popcount
    padded = np.zeros(words * 64, dtype=bool)
    padded[: bits.size] = bits
    return np.packbits(padded).view(np.uint64)


def independence_counts_batch(v: int, combos: np.ndarray, cache={}) -> np.ndarray:
    """Independence polynomial coefficients for many edge sets at once.

    ``combos`` holds pair indices into ``all_pairs(v)``, one row per graph.
    """
    if v not in cache:
        cache[v] = _subset_masks(v)
    masks, size_classes, full = cache[v]
    if combos.shape[1] == 0:
        dependent = np.zeros((combos.shape[0], masks.shape[1]), dtype=np.uint64)
    else:
        dependent = np.bitwise_or.reduce(masks[combos], axis=1)
    independent = full & ~dependent
    return np.stack(
        [np.bitwise_count(independent & size_classes[k]).sum(axis=1, dtype=np.int64) for k in range(v + 1)],
        axis=1,
    )


@dataclass(frozen=True)
class GraphClass:
    """An isomorphism class found by a search; ``graph`` is a representative."""

    graph: Graph
    vertex_counts: Tuple[int, ...]
    labelled_hits: int

    def to_json(self) -> dict:
        return {**self.graph.to_json(), "vertex_counts": list(self.vertex_counts), "labelled_hits": self.labelled_hits}


Target = Union[HilbertSeries, Callable[[int], HilbertSeries]]


def search_by_series(
    v_range: Union[int, Iterable[int]],
    e: int,
    target: Target,
    ignore_isolated: bool = False,
    chunk: int = 40000,
    start: int = 0,
    stop: Optional[int] = None,
) -> List[GraphClass]:
    """Isomorphism classes of graphs whose independence polynomial equals ``target``.

    ``target`` may depend on the vertex count.  With ``ignore_isolated``,
    classes are identified after deleting isolated vertices.  Every labelled
    graph is examined; ``start``/``stop`` slice the combinations per ``v``.
    """
    vs = [v_range] if isinstance(v_range, int) else list(v_range)
    found: Dict[tuple, list] = {}
    for v in vs:
        if v > MAX_ENUMERATION_VERTICES:
            raise UsageError(f"enumeration limited to {MAX_ENUMERATION_VERTICES} vertices")
        want = target(v) if callable(target) else target
        want_vec = np.array([want[k] for k in range(v + 1)], dtype=np.int64)
        if any(want[k] for k in range(v + 1, len(want) + 1)) or want[0] != 1 or want[1] != v:
            continue
        pairs = all_pairs(v)
        if e > len(pairs):
            continue
        combos = islice(combinations(range(len(pairs)), e), start, stop)
        while True:
            flat = np.fromiter(chain.from_iterable(islice(combos, chunk)), dtype=np.int64)
            if flat.size == 0 and e > 0:
                break
            batch = flat.reshape(-1, e) if e else np.zeros((1, 0), dtype=np.int64)
            counts = independence_counts_batch(v, batch)
            hits = np.flatnonzero((counts == want_vec).all(axis=1))
            for h in hits:
                g = Graph(v, [pairs[i] for i in batch[h]])
                rep = g.without_isolated() if ignore_isolated else g
                key = canonical_form(rep)
                entry = found.setdefault(key, [rep, set(), 0])
                entry[1].add(v)
                entry[2] += 1
            if e == 0:
                break
    return [GraphClass(rep, tuple(sorted(vs_)), hits) for _, (rep, vs_, hits) in sorted(found.items())]
