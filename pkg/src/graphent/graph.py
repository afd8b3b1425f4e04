"""Finite undirected simple graphs and the vertex-pair statistics used by the
entanglement analysis.

Vertices are 0-based. The two solids use label-independent constructions:

* ``cube``: vertex ``k`` is the 3-bit label of ``k``; two vertices are
  adjacent when their labels differ in exactly one bit. Vertex 0 and vertex 7
  are antipodal.
* ``octahedron``: the complete tripartite graph K(2,2,2). Vertex ``k`` is
  antipodal to ``k + 3`` (pairs (0,3), (1,4), (2,5)); every other pair is an
  edge.
"""

from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np


class GraphError(ValueError):
    """Invalid graph description or family request."""


class DisconnectedGraphError(GraphError):
    """Raised when a path statistic is requested across components."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise GraphError(f"vertex count must be a positive integer, got {self.n!r}")
        normalized = set()
        for edge in self.edges:
            i, j = (int(x) for x in edge)
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise GraphError(f"edge ({i}, {j}) out of range for n={self.n}")
            normalized.add((min(i, j), max(i, j)))
        if len(normalized) != len(self.edges):
            raise GraphError("duplicate edge")
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n, edges):
        edges = list(edges)
        keys = [(min(i, j), max(i, j)) for i, j in edges]
        if len(set(keys)) != len(keys):
            raise GraphError("duplicate edge")
        return cls(n, frozenset(keys))

    def adjacency(self):
        a = np.zeros((self.n, self.n))
        for i, j in self.edges:
            a[i, j] = a[j, i] = 1.0
        return a

    def neighbours(self, v):
        return sorted({j for i, j in self.edges if i == v} | {i for i, j in self.edges if j == v})

    def degree(self, v):
        return len(self.neighbours(v))

    def is_complete(self):
        return len(self.edges) == self.n * (self.n - 1) // 2

    def sorted_edges(self):
        return sorted(self.edges)


FIXED_FAMILIES = ("cube", "octahedron", "two")
SIZED_FAMILIES = ("complete", "meanfield", "path", "cycle")


def complete(n):
    return Graph.from_edges(n, combinations(range(n), 2))


def path(n):
    return Graph.from_edges(n, ((k, k + 1) for k in range(n - 1)))


def cycle(n):
    if n < 3:
        raise GraphError("a simple cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(k, (k + 1) % n) for k in range(n)])


def cube():
    edges = [(a, b) for a, b in combinations(range(8), 2) if bin(a ^ b).count("1") == 1]
    return Graph.from_edges(8, edges)


def octahedron():
    edges = [(a, b) for a, b in combinations(range(6), 2) if b - a != 3]
    return Graph.from_edges(6, edges)


def build_family(name, size=None):
    """Construct a named graph family.

    ``complete`` and ``meanfield`` are aliases. ``two`` is the single-edge
    graph on two vertices.
    """
    if name in FIXED_FAMILIES:
        if size is not None:
            raise GraphError(f"family {name!r} has a fixed size")
        return {"cube": cube, "octahedron": octahedron, "two": lambda: complete(2)}[name]()
    if name not in SIZED_FAMILIES:
        raise GraphError(f"unknown graph family {name!r}")
    if size is None:
        raise GraphError(f"family {name!r} requires a size")
    if isinstance(size, bool) or not isinstance(size, (int, np.integer)) or size < 2:
        raise GraphError(f"size must be an integer >= 2, got {size!r}")
    size = int(size)
    if name in ("complete", "meanfield"):
        return complete(size)
    if name == "path":
        return path(size)
    return cycle(size)


def load_edge_list(data):
    """Parse the edge-list format: ``n <N>`` then one ``i j`` pair per line.

    Accepts ``bytes`` or ``str``; ``#`` lines and blank lines are ignored.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    lines = [ln.strip() for ln in data.replace("\r\n", "\n").split("\n")]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphError("empty edge list")
    header = lines[0].split()
    if len(header) != 2 or header[0] != "n" or not header[1].isdigit():
        raise GraphError(f"malformed header {lines[0]!r}, expected 'n <N>'")
    n = int(header[1])
    if n < 1:
        raise GraphError("vertex count must be positive")
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split()
        if len(fields) != 2 or not all(f.isdigit() for f in fields):
            raise GraphError(f"line {lineno}: expected two non-negative integers, got {line!r}")
        i, j = int(fields[0]), int(fields[1])
        if i == j:
            raise GraphError(f"line {lineno}: self-loop at vertex {i}")
        if i >= n or j >= n:
            raise GraphError(f"line {lineno}: vertex index out of range for n={n}")
        edges.append((i, j))
    return Graph.from_edges(n, edges)


def laplacian(g):
    a = g.adjacency()
    return np.diag(a.sum(axis=1)) - a


def _bfs_counts(g, source):
    """Distances and shortest-path counts from ``source`` (-1 = unreachable)."""
    adj = [g.neighbours(v) for v in range(g.n)]
    dist = [-1] * g.n
    count = [0] * g.n
    dist[source], count[source] = 0, 1
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
            if dist[w] == dist[v] + 1:
                count[w] += count[v]
    return dist, count


def shortest_path_stats(g, i, j):
    """Return ``(distance, number of shortest paths)`` between two vertices."""
    for v in (i, j):
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    dist, count = _bfs_counts(g, i)
    if dist[j] < 0:
        raise DisconnectedGraphError(f"vertices {i} and {j} are not connected")
    return dist[j], count[j]


def is_connected(g):
    dist, _ = _bfs_counts(g, 0)
    return all(d >= 0 for d in dist)


def distance_profile(g, v):
    """Sorted (distance, path count) pairs from ``v`` to every other vertex."""
    dist, count = _bfs_counts(g, v)
    return tuple(sorted((d, c) for u, (d, c) in enumerate(zip(dist, count)) if u != v))


@dataclass(frozen=True)
class DistanceClass:
    distance: int
    paths: int
    representative: tuple
    size: int


def distance_classes(g):
    """Group vertex pairs by (distance, shortest-path count).

    Classes are ordered by (distance, paths); each representative is the
    lexicographically smallest pair of its class.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")
    members = {}
    for i in range(g.n):
        dist, count = _bfs_counts(g, i)
        for j in range(i + 1, g.n):
            members.setdefault((dist[j], count[j]), []).append((i, j))
    return [
        DistanceClass(d, c, min(pairs), len(pairs))
        for (d, c), pairs in sorted(members.items())
    ]


def select_class(g, distance, paths=None):
    """Representative pair of the first class matching ``distance`` (and ``paths``)."""
    matches = [
        cls for cls in distance_classes(g)
        if cls.distance == distance and (paths is None or cls.paths == paths)
    ]
    if not matches:
        wanted = f"distance {distance}" + ("" if paths is None else f" with {paths} paths")
        raise GraphError(f"no vertex pair at {wanted}")
    return min(cls.representative for cls in matches)
