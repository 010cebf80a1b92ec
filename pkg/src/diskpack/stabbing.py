"""Disk stabbing: order disks so their centers sit on a common line.

The pairwise touching distances form a metric, so the optimal ordering is a
shortest Hamiltonian path in the complete weighted graph.  We provide the
exact bitmask DP for small instances and a Christofides-style 3/2
approximation with free endpoints (two zero-cost dummy terminals) for the
general case.
"""

from dataclasses import dataclass

import networkx as nx
import numpy as np

from . import kernels
from .errors import GeometryError, SizeExceededError
from .geometry import DEFAULT_TOL, ensure_distinct, place, unit_vector


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric matrix of pairwise touching distances for one direction."""

    direction: tuple
    entries: np.ndarray

    @property
    def n(self):
        return self.entries.shape[0]


def build_distance_matrix(disks, s, tol=DEFAULT_TOL):
    """Pairwise s-distances of a list of distinct disks.

    Each unordered pair is evaluated once and mirrored, so the matrix is
    exactly symmetric with zero diagonal.
    """
    ensure_distinct(disks)
    sv = unit_vector(s)
    normals = np.array([d.normal for d in disks], dtype=float)
    if normals.size == 0:
        entries = np.zeros((0, 0))
    else:
        entries = kernels.distance_matrix_kernel(
            normals, sv, tol.predicate_eps, tol.overlap_eps,
            tol.convergence_eps, tol.max_iterations)
    bad = np.argwhere(entries < 0.0)
    if bad.size:
        i, j = (int(x) for x in bad[0])
        raise GeometryError(
            f"s-distance failed for disk pair ({i}, {j})",
            details={"d1": disks[i].normal, "d2": disks[j].normal,
                     "s": tuple(sv)})
    return DistanceMatrix(direction=tuple(float(x) for x in sv),
                          entries=entries)


def mst(matrix):
    """Minimum spanning tree of the complete graph, as (edges, weight).

    Kruskal with edges sorted by (weight, i, j), so ties break on the
    lexicographically first edge.
    """
    n = matrix.n
    d = matrix.entries
    edges = sorted(
        ((float(d[i, j]), i, j) for i in range(n) for j in range(i + 1, n)))
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    weight = 0.0
    for w, i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            tree.append((i, j))
            weight += w
            if len(tree) == n - 1:
                break
    return tree, weight


def path_length(matrix, ordering):
    d = matrix.entries
    return float(sum(d[a, b] for a, b in zip(ordering, ordering[1:])))


def held_karp_path(matrix, limit=15):
    """Exact shortest Hamiltonian path with free endpoints.

    Subset DP over (visited set, last vertex); refuses instances larger than
    ``limit``.  Of the two traversal directions of the optimal path the
    lexicographically smaller one is returned.
    """
    n = matrix.n
    if n > limit:
        raise SizeExceededError(
            f"exact path solver limited to {limit} disks, got {n}")
    if n == 0:
        return []
    if n == 1:
        return [0]
    path, _ = kernels.held_karp_kernel(matrix.entries)
    path = [int(v) for v in path]
    return min(path, path[::-1])


def christofides_path(matrix):
    """3/2-approximate shortest Hamiltonian path with free endpoints.

    MST, then an exact minimum-weight perfect matching on the odd-degree tree
    vertices augmented with two zero-cost dummy terminals (the vertices the
    dummies absorb become the path endpoints), then an Eulerian path with
    first-visit shortcutting.
    """
    n = matrix.n
    if n == 0:
        return []
    if n == 1:
        return [0]
    if n == 2:
        return [0, 1]
    d = matrix.entries
    tree, _ = mst(matrix)
    degree = [0] * n
    for i, j in tree:
        degree[i] += 1
        degree[j] += 1
    odd = [v for v in range(n) if degree[v] % 2 == 1]

    # dummies n and n+1 pair up with the two future endpoints for free;
    # the prohibitive dummy-dummy edge keeps them apart
    big = float(d.sum()) + 1.0
    g = nx.Graph()
    for a in range(len(odd)):
        for b in range(a + 1, len(odd)):
            g.add_edge(odd[a], odd[b], weight=float(d[odd[a], odd[b]]))
    for v in odd:
        g.add_edge(n, v, weight=0.0)
        g.add_edge(n + 1, v, weight=0.0)
    g.add_edge(n, n + 1, weight=big)
    matching = nx.min_weight_matching(g)

    adj = [[] for _ in range(n)]
    for i, j in tree:
        adj[i].append(j)
        adj[j].append(i)
    endpoints = []
    for a, b in matching:
        if a > b:
            a, b = b, a
        if a >= n:
            raise GeometryError("perfect matching left both dummies paired")
        if b >= n:
            endpoints.append(a)
        else:
            adj[a].append(b)
            adj[b].append(a)
    if len(endpoints) != 2:
        raise GeometryError("matching did not produce two path endpoints")
    for nbrs in adj:
        nbrs.sort(reverse=True)  # pop() then takes the smallest index

    # Hierholzer between the two odd-degree vertices
    start = min(endpoints)
    stack = [start]
    euler = []
    while stack:
        v = stack[-1]
        if adj[v]:
            w = adj[v].pop()
            adj[w].remove(v)
            stack.append(w)
        else:
            euler.append(stack.pop())
    euler.reverse()

    seen = set()
    ordering = []
    for v in euler:
        if v not in seen:
            seen.add(v)
            ordering.append(v)
    if len(ordering) != n:
        raise GeometryError("Eulerian walk missed vertices")
    return ordering


@dataclass(frozen=True)
class Stabbing:
    """A realized ordering: centers on one line, consecutive disks touching."""

    direction: tuple
    ordering: tuple
    offsets: tuple

    @property
    def length(self):
        return self.offsets[-1] if self.offsets else 0.0


def realize_stabbing(disks, ordering, s, tol=DEFAULT_TOL, matrix=None):
    """Place centers at prefix sums of consecutive touching distances.

    The first center is anchored at the origin.  By the triangle inequality
    of the touching metric, non-consecutive disks cannot overlap either.
    Returns (stabbing, placed disks in input order).
    """
    if sorted(ordering) != list(range(len(disks))):
        raise GeometryError("ordering is not a permutation of the disks")
    sv = unit_vector(s)
    offsets = [0.0] if ordering else []
    for a, b in zip(ordering, ordering[1:]):
        if matrix is not None:
            step = float(matrix.entries[a, b])
        else:
            from .geometry import s_distance
            step = s_distance(disks[a], disks[b], sv, tol)
        offsets.append(offsets[-1] + step)
    placed = [None] * len(disks)
    for off, idx in zip(offsets, ordering):
        placed[idx] = place(disks[idx], off * sv)
    stab = Stabbing(direction=tuple(float(x) for x in sv),
                    ordering=tuple(ordering),
                    offsets=tuple(offsets))
    return stab, placed
