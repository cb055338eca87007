"""Graphs, edge-update streams, and partial colorings.

Vertices are the integers 1..n.  Edges are unordered pairs stored as
normalized tuples (u, v) with u < v.  A partial coloring maps each
vertex to a color in [1, palette] or to None (unassigned).
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    EqualVerticesError,
    IllegalUpdateError,
    PaletteExhaustedError,
    UncoloredVertexError,
)

Edge = tuple[int, int]


class EdgeUpdate(NamedTuple):
    """One stream token: sign +1 inserts the edge, -1 deletes it."""

    sign: int
    u: int
    v: int


def normalize_edge(u: int, v: int) -> Edge:
    """Return (min, max); reject self loops."""
    if u == v:
        raise EqualVerticesError(f"self pair ({u}, {v})")
    return (u, v) if u < v else (v, u)


def _check_vertex(v: int, n: int) -> None:
    if not 1 <= v <= n:
        raise IllegalUpdateError(f"vertex {v} outside [1, {n}]")


class Graph:
    """Immutable simple graph on vertices 1..n."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise ValueError("n must be nonnegative")
        normalized = set()
        for u, v in edges:
            e = normalize_edge(u, v)
            _check_vertex(e[0], n)
            _check_vertex(e[1], n)
            normalized.add(e)
        self.n = n
        self.edges: frozenset[Edge] = frozenset(normalized)
        self._adj: list[set[int]] | None = None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"

    @property
    def m(self) -> int:
        return len(self.edges)

    def edges_sorted(self) -> list[Edge]:
        return sorted(self.edges)

    def adjacency(self) -> list[set[int]]:
        """Neighbor sets indexed by vertex (index 0 unused)."""
        if self._adj is None:
            adj: list[set[int]] = [set() for _ in range(self.n + 1)]
            for u, v in self.edges:
                adj[u].add(v)
                adj[v].add(u)
            self._adj = adj
        return self._adj

    def degree(self, v: int) -> int:
        return len(self.adjacency()[v])

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edges

    def induced(self, vertices: Iterable[int]) -> frozenset[Edge]:
        """Edges with both endpoints inside `vertices`."""
        keep = set(vertices)
        return frozenset(e for e in self.edges if e[0] in keep and e[1] in keep)


def max_degree(g: Graph) -> int:
    """Largest vertex degree; 0 for an edgeless graph."""
    adj = g.adjacency()
    return max((len(adj[v]) for v in range(1, g.n + 1)), default=0)


def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)))


def materialize(n: int, updates: Iterable[EdgeUpdate]) -> Graph:
    """Replay a signed update sequence into its final graph.

    Raises IllegalUpdateError on a duplicate insertion, a deletion of an
    absent edge, a self loop, or an out-of-range vertex.
    """
    present: set[Edge] = set()
    for sign, u, v in updates:
        try:
            e = normalize_edge(u, v)
        except EqualVerticesError as exc:
            raise IllegalUpdateError(str(exc)) from exc
        _check_vertex(e[0], n)
        _check_vertex(e[1], n)
        if sign == 1:
            if e in present:
                raise IllegalUpdateError(f"duplicate insertion of {e}")
            present.add(e)
        elif sign == -1:
            if e not in present:
                raise IllegalUpdateError(f"deletion of absent edge {e}")
            present.remove(e)
        else:
            raise IllegalUpdateError(f"bad sign {sign}")
    return Graph(n, present)


class PartialColoring:
    """Assignment of colors in [1, palette] to a subset of 1..n.

    Immutable by convention: builders return new objects.
    """

    __slots__ = ("n", "palette", "_colors")

    def __init__(self, n: int, palette: int, colors: Sequence[int | None] | None = None):
        if palette < 1:
            raise ValueError("palette must be at least 1")
        if colors is None:
            cols: tuple[int | None, ...] = (None,) * n
        else:
            if len(colors) != n:
                raise ValueError(f"expected {n} colors, got {len(colors)}")
            for c in colors:
                if c is not None and not 1 <= c <= palette:
                    raise ValueError(f"color {c} outside [1, {palette}]")
            cols = tuple(colors)
        self.n = n
        self.palette = palette
        self._colors = cols

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PartialColoring)
            and self.n == other.n
            and self.palette == other.palette
            and self._colors == other._colors
        )

    def __hash__(self) -> int:
        return hash((self.n, self.palette, self._colors))

    def __repr__(self) -> str:
        done = sum(1 for c in self._colors if c is not None)
        return f"PartialColoring(n={self.n}, palette={self.palette}, colored={done})"

    def color_of(self, v: int) -> int | None:
        _check_vertex(v, self.n)
        return self._colors[v - 1]

    __getitem__ = color_of

    def colors(self) -> tuple[int | None, ...]:
        """Colors for vertices 1..n in order (None = unassigned)."""
        return self._colors

    @property
    def is_total(self) -> bool:
        return all(c is not None for c in self._colors)

    def uncolored(self) -> list[int]:
        return [v for v in range(1, self.n + 1) if self._colors[v - 1] is None]

    def colored_count(self) -> int:
        return sum(1 for c in self._colors if c is not None)

    def assign(self, updates: dict[int, int]) -> "PartialColoring":
        """New coloring with the given vertices (re)assigned."""
        cols = list(self._colors)
        for v, c in updates.items():
            _check_vertex(v, self.n)
            cols[v - 1] = c
        return PartialColoring(self.n, self.palette, cols)

    def require_total(self) -> None:
        for v in range(1, self.n + 1):
            if self._colors[v - 1] is None:
                raise UncoloredVertexError(f"vertex {v} has no color")


def validate_proper(g: Graph, coloring: PartialColoring) -> list[Edge]:
    """Monochromatic edges of a total coloring, sorted; empty means proper."""
    coloring.require_total()
    cols = coloring.colors()
    return sorted(e for e in g.edges if cols[e[0] - 1] == cols[e[1] - 1])


def validate_partial(g: Graph, coloring: PartialColoring) -> list[Edge]:
    """Monochromatic edges among colored endpoints, sorted; empty means
    the partial coloring is proper on its colored set."""
    cols = coloring.colors()
    bad = []
    for u, v in g.edges:
        cu, cv = cols[u - 1], cols[v - 1]
        if cu is not None and cu == cv:
            bad.append((u, v))
    return sorted(bad)


def greedy_extend(
    g: Graph,
    coloring: PartialColoring,
    order: Iterable[int] | None = None,
) -> PartialColoring:
    """First-fit extension: give each target the smallest color unused by
    its already-colored neighbors.

    Targets default to every uncolored vertex in ascending order; an
    explicit order must list uncolored vertices only.  Raises
    PaletteExhaustedError when no color in [1, palette] is free.
    """
    cols = list(coloring.colors())
    targets = list(order) if order is not None else coloring.uncolored()
    adj = g.adjacency()
    for v in targets:
        _check_vertex(v, g.n)
        if cols[v - 1] is not None:
            raise ValueError(f"target vertex {v} already colored")
        used = {cols[w - 1] for w in adj[v] if cols[w - 1] is not None}
        c = 1
        while c in used:
            c += 1
        if c > coloring.palette:
            raise PaletteExhaustedError(
                f"vertex {v}: no free color in [1, {coloring.palette}]"
            )
        cols[v - 1] = c
    return PartialColoring(g.n, coloring.palette, cols)


def same_color_pairs(coloring: PartialColoring) -> int:
    """Number of unordered vertex pairs sharing a color (total colorings)."""
    coloring.require_total()
    counts = Counter(coloring.colors())
    return sum(s * (s - 1) // 2 for s in counts.values())


def color_classes(coloring: PartialColoring) -> dict[int, list[int]]:
    """Map color -> sorted vertices with that color (unassigned skipped)."""
    classes: dict[int, list[int]] = {}
    for v in range(1, coloring.n + 1):
        c = coloring.color_of(v)
        if c is not None:
            classes.setdefault(c, []).append(v)
    return classes
