"""Vertex-weighted multigraphs with deletion/contraction semantics.

Graphs are immutable values: vertices are the dense integers 0..n-1, each
carrying a positive integer weight, and edges form an indexed list of
unordered endpoint pairs in which loops and parallel edges are allowed.
Edit operations return new graphs, so recursion trees that share
subproblems can hold references safely.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (
    GraphFormatError,
    InvalidEdgeError,
    LoopContractionError,
)

#: An edge subset is any iterable of edge indices into the host graph.
EdgeSubset = Iterable[int]


@dataclass(frozen=True)
class ComponentSummary:
    """Connected-component data of a spanning subgraph (V, A)."""

    component_count: int
    size_partition: tuple[int, ...]      # vertex counts, non-increasing
    weight_multiset: tuple[int, ...]     # total weights, non-increasing

    def __post_init__(self):
        if len(self.size_partition) != self.component_count:
            raise ValueError("size partition length != component count")
        if len(self.weight_multiset) != self.component_count:
            raise ValueError("weight multiset length != component count")


@dataclass(frozen=True)
class WeightedMultigraph:
    """A multigraph on vertices 0..n-1 with positive integer vertex weights.

    ``weights[v]`` is the weight of vertex ``v``; ``edges[i]`` is the
    unordered pair of endpoints of edge ``i`` (stored with u <= v).
    """

    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    # Set by contract_edge: (old u, old v, merged id). Not part of equality.
    merge_note: tuple[int, int, int] | None = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.weights)
        for w in self.weights:
            if not isinstance(w, int) or w < 1:
                raise ValueError(f"vertex weights must be positive integers, got {w!r}")
        norm = []
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) has endpoint outside 0..{n - 1}")
            norm.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "edges", tuple(norm))

    # -- basic queries -------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.weights)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    def is_loop(self, e: int) -> bool:
        u, v = self._edge(e)
        return u == v

    def has_loop(self) -> bool:
        return any(u == v for u, v in self.edges)

    def _edge(self, e: int) -> tuple[int, int]:
        if not isinstance(e, int) or not 0 <= e < len(self.edges):
            raise InvalidEdgeError(f"edge index {e!r} out of range 0..{len(self.edges) - 1}")
        return self.edges[e]

    def with_unit_weights(self) -> "WeightedMultigraph":
        return WeightedMultigraph((1,) * self.vertex_count, self.edges)

    def with_weights(self, weights: Sequence[int]) -> "WeightedMultigraph":
        if len(weights) != self.vertex_count:
            raise ValueError("weight list length != vertex count")
        return WeightedMultigraph(tuple(weights), self.edges)

    # -- edit operations ------------------------------------------------

    def delete_edge(self, e: int) -> "WeightedMultigraph":
        """Remove edge ``e``; vertices and weights are unchanged."""
        self._edge(e)
        return WeightedMultigraph(
            self.weights, self.edges[:e] + self.edges[e + 1:]
        )

    def contract_edge(self, e: int) -> "WeightedMultigraph":
        """Merge the endpoints of non-loop edge ``e``.

        The merged vertex receives the summed weight of the endpoints and
        the largest id of the new graph; the surviving vertices keep their
        relative order and are renumbered densely.  Edges parallel to ``e``
        become loops at the merged vertex.
        """
        u, v = self._edge(e)
        if u == v:
            raise LoopContractionError(f"edge {e} is a loop and cannot be contracted")
        n = self.vertex_count
        merged = n - 2
        remap = [0] * n
        nxt = 0
        for w in range(n):
            if w == u or w == v:
                remap[w] = merged
            else:
                remap[w] = nxt
                nxt += 1
        weights = [0] * (n - 1)
        for w in range(n):
            if w != u and w != v:
                weights[remap[w]] = self.weights[w]
        weights[merged] = self.weights[u] + self.weights[v]
        edges = tuple(
            (remap[a], remap[b])
            for i, (a, b) in enumerate(self.edges)
            if i != e
        )
        return WeightedMultigraph(tuple(weights), edges, merge_note=(u, v, merged))

    # -- component analysis ----------------------------------------------

    def components(self, subset: EdgeSubset | None = None) -> ComponentSummary:
        """Component summary of the spanning subgraph (V, A).

        ``subset`` lists edge indices; None means all edges.
        """
        n = self.vertex_count
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        indices = range(len(self.edges)) if subset is None else subset
        for i in indices:
            u, v = self._edge(i)
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        sizes: dict[int, int] = {}
        wsums: dict[int, int] = {}
        for w in range(n):
            r = find(w)
            sizes[r] = sizes.get(r, 0) + 1
            wsums[r] = wsums.get(r, 0) + self.weights[w]
        return ComponentSummary(
            component_count=len(sizes),
            size_partition=tuple(sorted(sizes.values(), reverse=True)),
            weight_multiset=tuple(sorted(wsums.values(), reverse=True)),
        )


# -- canonical memo keys -------------------------------------------------


def canonical_key(g: WeightedMultigraph) -> tuple:
    """A relabelling-normalised structure key for memoisation.

    Vertices are sorted by a weight/degree/neighbourhood refinement and the
    edge multiset is rewritten in that order.  Equal keys always denote
    isomorphic graphs (the key contains the full relabelled structure), so
    memo hits across different host graphs are sound; isomorphic graphs the
    refinement fails to align merely miss a sharing opportunity.
    """
    n = g.vertex_count
    deg = [0] * n
    loops = [0] * n
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in g.edges:
        if u == v:
            loops[u] += 1
        else:
            deg[u] += 1
            deg[v] += 1
            nbrs[u].append(v)
            nbrs[v].append(u)
    base = [(g.weights[v], deg[v], loops[v]) for v in range(n)]
    refined = [
        (base[v], tuple(sorted(base[u] for u in nbrs[v])))
        for v in range(n)
    ]
    order = sorted(range(n), key=lambda v: (refined[v], v))
    pos = {v: i for i, v in enumerate(order)}
    weights = tuple(g.weights[v] for v in order)
    edges = tuple(sorted(
        (pos[u], pos[v]) if pos[u] <= pos[v] else (pos[v], pos[u])
        for u, v in g.edges
    ))
    return (weights, edges)


# -- aggregated subset sweep ----------------------------------------------


def subset_profile(g: WeightedMultigraph) -> dict[tuple, int]:
    """Aggregate all 2^|E| spanning subgraphs of ``g``.

    Returns a map (size partition, weight multiset, |A|) -> number of edge
    subsets A realising that component profile.  Every subset-expansion
    invariant in the package is a linear functional of this table.
    """
    n = g.vertex_count
    edges = g.edges
    m = len(edges)
    profile: dict[tuple, int] = {}
    weights = g.weights
    for mask in range(1 << m):
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        bits = mask
        count = 0
        while bits:
            i = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            count += 1
            u, v = edges[i]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        sizes: dict[int, int] = {}
        wsums: dict[int, int] = {}
        for w in range(n):
            r = find(w)
            sizes[r] = sizes.get(r, 0) + 1
            wsums[r] = wsums.get(r, 0) + weights[w]
        key = (
            tuple(sorted(sizes.values(), reverse=True)),
            tuple(sorted(wsums.values(), reverse=True)),
            count,
        )
        profile[key] = profile.get(key, 0) + 1
    return profile


# -- enumeration -----------------------------------------------------------


def enumerate_multigraphs(max_vertices: int, max_edges: int) -> Iterator[WeightedMultigraph]:
    """Deterministic stream of unit-weight multigraphs up to the bounds.

    For each vertex count n = 1..max_vertices and edge count m = 0..max_edges,
    yields one representative per relabelling class: edge multisets are
    enumerated lexicographically and the orbit of each representative under
    vertex permutations is marked as seen.  Loops and parallel edges are
    included.  Intended for exhaustive small-graph suites (n <= 6, m <= 9).
    """
    for n in range(1, max_vertices + 1):
        types = [(a, b) for a in range(n) for b in range(a, n)]
        tindex = {e: i for i, e in enumerate(types)}
        perm_maps = []
        for p in itertools.permutations(range(n)):
            pm = tuple(
                tindex[(p[a], p[b]) if p[a] <= p[b] else (p[b], p[a])]
                for a, b in types
            )
            perm_maps.append(pm)
        perm_maps = perm_maps[1:]  # identity excluded
        visited: set[tuple[int, ...]] = set()
        weights = (1,) * n
        for m in range(0, max_edges + 1):
            for combo in itertools.combinations_with_replacement(range(len(types)), m):
                if combo in visited:
                    continue
                for pm in perm_maps:
                    img = tuple(sorted(pm[i] for i in combo))
                    if img != combo:
                        visited.add(img)
                yield WeightedMultigraph(weights, tuple(types[i] for i in combo))


def random_weighted_multigraphs(
    count: int,
    max_vertices: int,
    max_edges: int,
    seed: int = 0,
    weight_choices: Sequence[int] = (1, 2, 3),
) -> Iterator[WeightedMultigraph]:
    """Seeded stream of random multigraphs with weights from ``weight_choices``."""
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_vertices)
        m = rng.randint(0, max_edges)
        weights = tuple(rng.choice(weight_choices) for _ in range(n))
        edges = tuple(
            tuple(sorted((rng.randrange(n), rng.randrange(n)))) for _ in range(m)
        )
        yield WeightedMultigraph(weights, edges)


# -- text and JSON formats ---------------------------------------------------


def parse_graph_text(text: str) -> WeightedMultigraph:
    """Parse the line-based graph format.

    One ``v <id> <weight>`` line per vertex and one ``e <id1> <id2>`` line
    per edge; ``#`` starts a comment.  Vertex ids may be arbitrary integers
    and are renumbered densely in order of appearance.
    """
    ids: dict[int, int] = {}
    weights: list[int] = []
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "v" and len(parts) == 3:
                vid, w = int(parts[1]), int(parts[2])
                if vid in ids:
                    raise GraphFormatError(f"line {lineno}: duplicate vertex id {vid}")
                ids[vid] = len(weights)
                weights.append(w)
            elif parts[0] == "e" and len(parts) == 3:
                a, b = int(parts[1]), int(parts[2])
                if a not in ids or b not in ids:
                    raise GraphFormatError(f"line {lineno}: edge references undeclared vertex")
                edges.append((ids[a], ids[b]))
            else:
                raise GraphFormatError(f"line {lineno}: expected 'v <id> <w>' or 'e <u> <v>'")
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from exc
    try:
        return WeightedMultigraph(tuple(weights), tuple(edges))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def graph_to_text(g: WeightedMultigraph) -> str:
    lines = [f"v {v} {w}" for v, w in enumerate(g.weights)]
    lines += [f"e {u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_graph_json(doc: str | dict) -> WeightedMultigraph:
    """Parse the JSON graph format: {"vertices":[{"id","weight"}],"edges":[[u,v]]}."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise GraphFormatError("JSON graph needs 'vertices' and 'edges' fields")
    ids: dict[int, int] = {}
    weights: list[int] = []
    for entry in doc["vertices"]:
        try:
            vid, w = int(entry["id"]), int(entry.get("weight", 1))
        except (TypeError, KeyError, ValueError) as exc:
            raise GraphFormatError(f"bad vertex entry {entry!r}") from exc
        if vid in ids:
            raise GraphFormatError(f"duplicate vertex id {vid}")
        ids[vid] = len(weights)
        weights.append(w)
    edges = []
    for pair in doc["edges"]:
        try:
            a, b = int(pair[0]), int(pair[1])
        except (TypeError, IndexError, ValueError) as exc:
            raise GraphFormatError(f"bad edge entry {pair!r}") from exc
        if a not in ids or b not in ids:
            raise GraphFormatError(f"edge {pair!r} references undeclared vertex")
        edges.append((ids[a], ids[b]))
    try:
        return WeightedMultigraph(tuple(weights), tuple(edges))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def graph_to_json(g: WeightedMultigraph) -> dict:
    return {
        "vertices": [{"id": v, "weight": w} for v, w in enumerate(g.weights)],
        "edges": [[u, v] for u, v in g.edges],
    }


def load_graph(path: str) -> WeightedMultigraph:
    """Load a graph from a file; .json uses the JSON format, otherwise text."""
    with open(path, "r", encoding="utf-8") as fh:
        data = fh.read()
    if path.endswith(".json"):
        return parse_graph_json(data)
    return parse_graph_text(data)
