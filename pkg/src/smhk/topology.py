"""Star-mesh hybrid network topology with a k-partite core.

A network of order (n, k, m, L) consists of n sets of k star networks.
Each star has a central node and L path branches of length m; central
nodes are joined across sets to form a complete n-partite graph with
parts of size k (no edges between stars of the same set). Nodes carry
labels (i, j, p, q): set, star within the set, branch within the star,
and depth along the branch. The central node of star (i, j) is
(i, j, 0, 0).

Edges fall into m + 1 automorphism orbits: orbit 0 holds the core edges
between central nodes, orbit q >= 1 holds the path edges at depth q.
The optimal averaging weight is constant on each orbit, which is why
everything downstream works with a vector of m + 1 weights.
"""

from __future__ import annotations

import operator
from collections import deque
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SmhkParams",
    "NodeId",
    "OrbitEdge",
    "validate_params",
    "node_count",
    "edge_count",
    "build_edges",
    "node_index",
    "node_id",
    "adjacency_matrix",
    "is_connected",
]


@dataclass(frozen=True)
class SmhkParams:
    """Topology order (n, k, m, L).

    n: number of sets forming the core (>= 2)
    k: star networks per set (>= 2; a single star per set degenerates
       to a different topology family and is rejected)
    m: length of each path branch (>= 1)
    L: path branches per star (>= 1)
    """

    n: int
    k: int
    m: int
    L: int

    def __post_init__(self):
        for name, value, low in (
            ("n", self.n, 2),
            ("k", self.k, 2),
            ("m", self.m, 1),
            ("L", self.L, 1),
        ):
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValueError(f"{name} must be an integer (got {value!r})")
            if value < low:
                raise ValueError(f"{name} must be >= {low} (got {value})")


@dataclass(frozen=True)
class NodeId:
    """Node label (i, j, p, q): set, star, branch, depth.

    Branch nodes have p in [1, L] and q in [1, m]; depth 0 and branch 0
    occur together only, on the central node of each star.
    """

    i: int
    j: int
    p: int
    q: int

    def __post_init__(self):
        if (self.q == 0) != (self.p == 0):
            raise ValueError(
                f"depth 0 and branch 0 must coincide (got p={self.p}, q={self.q})"
            )
        if self.i < 1 or self.j < 1 or self.p < 0 or self.q < 0:
            raise ValueError(f"node label out of range: {self!r}")


@dataclass(frozen=True)
class OrbitEdge:
    """Undirected edge together with its automorphism-orbit label.

    Orbit 0 joins central nodes of different sets; orbit q >= 1 joins
    the nodes at depths q - 1 and q of one branch.
    """

    u: NodeId
    v: NodeId
    orbit: int


def validate_params(n, k, m, L) -> SmhkParams:
    """Check raw integers and return the validated parameter set.

    Rejects n < 2 and k < 2 (the core needs at least two sets of two
    stars each) as well as m < 1 or L < 1.
    """
    values = {}
    for name, raw in (("n", n), ("k", k), ("m", m), ("L", L)):
        if isinstance(raw, bool):
            raise ValueError(f"{name} must be an integer (got {raw!r})")
        try:
            values[name] = operator.index(raw)
        except TypeError:
            raise ValueError(f"{name} must be an integer (got {raw!r})") from None
    return SmhkParams(**values)


def node_count(params: SmhkParams) -> int:
    """Total node count n*k*(m*L + 1): one center plus m*L branch nodes per star."""
    return params.n * params.k * (params.m * params.L + 1)


def edge_count(params: SmhkParams) -> int:
    """Total edge count k*n*L*m + k^2*n*(n-1)/2 (branch edges plus core edges)."""
    n, k = params.n, params.k
    return k * n * params.L * params.m + k * k * n * (n - 1) // 2


def node_index(params: SmhkParams, node: NodeId) -> int:
    """Map a node label to its linear index.

    Stars occupy consecutive index blocks ordered by (i, j); inside a
    star the center comes first, then the branch nodes grouped by
    branch and ordered by depth. The layout is fixed so that downstream
    matrices are deterministic across runs.
    """
    n, k, m, L = params.n, params.k, params.m, params.L
    if not (1 <= node.i <= n and 1 <= node.j <= k):
        raise ValueError(f"star label out of range for {params}: {node!r}")
    if node.q != 0 and not (1 <= node.p <= L and 1 <= node.q <= m):
        raise ValueError(f"branch label out of range for {params}: {node!r}")
    base = ((node.i - 1) * k + (node.j - 1)) * (m * L + 1)
    if node.q == 0:
        return base
    return base + 1 + (node.p - 1) * m + (node.q - 1)


def node_id(params: SmhkParams, index: int) -> NodeId:
    """Inverse of node_index."""
    total = node_count(params)
    if not 0 <= index < total:
        raise ValueError(f"index {index} out of range [0, {total})")
    span = params.m * params.L + 1
    star, offset = divmod(index, span)
    i, j = divmod(star, params.k)
    if offset == 0:
        return NodeId(i + 1, j + 1, 0, 0)
    p, q = divmod(offset - 1, params.m)
    return NodeId(i + 1, j + 1, p + 1, q + 1)


def build_edges(params: SmhkParams) -> list[OrbitEdge]:
    """Enumerate every edge exactly once, with orbit labels.

    Core edges come first, sorted by (i, j, i', j'); branch edges
    follow, sorted by (i, j, p, q). The q = 1 edges attach each branch
    to the central node of its star.
    """
    n, k, m, L = params.n, params.k, params.m, params.L
    edges: list[OrbitEdge] = []
    for i in range(1, n + 1):
        for j in range(1, k + 1):
            u = NodeId(i, j, 0, 0)
            for i2 in range(i + 1, n + 1):
                for j2 in range(1, k + 1):
                    edges.append(OrbitEdge(u, NodeId(i2, j2, 0, 0), 0))
    for i in range(1, n + 1):
        for j in range(1, k + 1):
            center = NodeId(i, j, 0, 0)
            for p in range(1, L + 1):
                prev = center
                for q in range(1, m + 1):
                    node = NodeId(i, j, p, q)
                    edges.append(OrbitEdge(prev, node, q))
                    prev = node
    return edges


def adjacency_matrix(params: SmhkParams) -> np.ndarray:
    """Dense boolean adjacency in node_index order."""
    total = node_count(params)
    adj = np.zeros((total, total), dtype=bool)
    for edge in build_edges(params):
        a = node_index(params, edge.u)
        b = node_index(params, edge.v)
        adj[a, b] = adj[b, a] = True
    return adj


def is_connected(params: SmhkParams) -> bool:
    """Breadth-first reachability of every node from node 0."""
    total = node_count(params)
    neighbors: list[list[int]] = [[] for _ in range(total)]
    for edge in build_edges(params):
        a = node_index(params, edge.u)
        b = node_index(params, edge.v)
        neighbors[a].append(b)
        neighbors[b].append(a)
    seen = {0}
    queue = deque([0])
    while queue:
        current = queue.popleft()
        for other in neighbors[current]:
            if other not in seen:
                seen.add(other)
                queue.append(other)
    return len(seen) == total
