"""Directed multigraphs, their Laplacians, and G-parking functions.

Vertex ids are 1-based labels, as in the graph file formats.
"""

from __future__ import annotations

import itertools
import json
import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionTooLarge, FormatError, NegativeInput, NoGlobalSink
from .matcore import IntegerMatrix

MAX_PARKING_DIMENSION = 24


@dataclass(frozen=True)
class DirectedMultigraph:
    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]
    sink: int | None = None

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]], sink: int | None = None):
        if vertex_count < 1:
            raise ValueError("a graph needs at least one vertex")
        merged: Counter = Counter()
        for edge in edges:
            u, v, mult = (*edge, 1) if len(edge) == 2 else edge
            if not (1 <= u <= vertex_count and 1 <= v <= vertex_count):
                raise ValueError(f"edge ({u}, {v}) has a vertex outside 1..{vertex_count}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if mult < 1:
                raise ValueError(f"edge ({u}, {v}) has multiplicity {mult} < 1")
            merged[u, v] += mult
        if sink is not None and not 1 <= sink <= vertex_count:
            raise ValueError(f"sink {sink} outside 1..{vertex_count}")
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", tuple(sorted((u, v, m) for (u, v), m in merged.items())))
        object.__setattr__(self, "sink", sink)

    def multiplicity(self, u: int, v: int) -> int:
        return next((m for a, b, m in self.edges if (a, b) == (u, v)), 0)


def laplacian(G: DirectedMultigraph) -> IntegerMatrix:
    n = G.vertex_count
    rows = [[0] * n for _ in range(n)]
    for u, v, m in G.edges:
        rows[u - 1][v - 1] -= m
        rows[u - 1][u - 1] += m
    return IntegerMatrix(rows)


def has_global_sink(G: DirectedMultigraph, s: int) -> bool:
    """Every vertex has a directed path to ``s``."""
    into: dict[int, list[int]] = {}
    for u, v, _ in G.edges:
        into.setdefault(v, []).append(u)
    seen = {s}
    stack = [s]
    while stack:
        for u in into.get(stack.pop(), ()):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == G.vertex_count


def reduced_laplacian(G: DirectedMultigraph, s: int) -> IntegerMatrix:
    if not has_global_sink(G, s):
        raise NoGlobalSink(f"vertex {s} is not a global sink")
    if G.vertex_count == 1:
        raise ValueError("reducing a one-vertex graph leaves an empty matrix")
    full = laplacian(G)
    keep = [i for i in range(G.vertex_count) if i != s - 1]
    return IntegerMatrix([[full[i][j] for j in keep] for i in keep])


def is_g_parking(G: DirectedMultigraph, s: int, a: Sequence[int]) -> bool:
    """Brute-force G-parking test over nonempty subsets of non-sink vertices.

    ``a`` is indexed by the non-sink vertices in increasing order.
    """
    others = [v for v in range(1, G.vertex_count + 1) if v != s]
    if len(a) != len(others):
        raise ValueError(f"expected {len(others)} values, got {len(a)}")
    if any(x < 0 for x in a):
        raise NegativeInput(f"parking test needs a nonnegative vector, got {tuple(a)}")
    if len(others) > MAX_PARKING_DIMENSION:
        raise DimensionTooLarge(f"subset enumeration refused for n={len(others)}")
    value = dict(zip(others, a))
    out: dict[int, list[tuple[int, int]]] = {}
    for u, v, m in G.edges:
        out.setdefault(u, []).append((v, m))
    for size in range(1, len(others) + 1):
        for subset in itertools.combinations(others, size):
            inside = set(subset)
            if not any(value[i] < sum(m for v, m in out.get(i, ()) if v not in inside)
                       for i in subset):
                return False
    return True


def random_graph_with_sink(rng: random.Random, vertices: int, max_mult: int = 3,
                           density: float = 0.4) -> DirectedMultigraph:
    """Random multigraph on ``vertices`` vertices whose last vertex is a global sink.

    Each non-sink vertex gets one edge to a vertex of larger id (so every
    vertex reaches the sink), plus random extra edges.
    """
    edges = []
    for u in range(1, vertices):
        edges.append((u, rng.randint(u + 1, vertices), rng.randint(1, max_mult)))
        for v in range(1, vertices + 1):
            if v != u and rng.random() < density:
                edges.append((u, v, rng.randint(1, max_mult)))
    return DirectedMultigraph(vertices, edges, sink=vertices)


def parse_graph(text: str) -> DirectedMultigraph:
    """Parse the JSON graph format or the plain ``V E sink`` text format."""
    stripped = text.strip()
    try:
        if stripped.startswith("{"):
            data = json.loads(stripped)
            return DirectedMultigraph(int(data["vertices"]),
                                      [tuple(int(x) for x in e) for e in data["edges"]],
                                      data.get("sink"))
        lines = [ln.split() for ln in stripped.splitlines() if ln.strip()]
        header = [int(x) for x in lines[0]]
        if len(header) != 3:
            raise ValueError("header must be 'V E sink'")
        vertices, count, sink = header
        edges = [tuple(int(x) for x in ln) for ln in lines[1:]]
        if len(edges) != count:
            raise ValueError(f"header promises {count} edges, found {len(edges)}")
        if any(len(e) != 3 for e in edges):
            raise ValueError("edge lines must be 'u v mult'")
        return DirectedMultigraph(vertices, edges, sink)
    except (ValueError, KeyError, IndexError, TypeError) as exc:
        raise FormatError(f"bad graph: {exc}") from exc
