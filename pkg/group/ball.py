"""Truncated Cayley graphs: the ball of radius R around the identity."""

from __future__ import annotations

from collections import deque
from typing import Dict, List

import networkx as nx

from group.genset import GenSet
from group.presentation import Key


class BallGuardExceeded(ValueError):
    def __init__(self, limit: int, radius: int):
        super().__init__(
            f"ball of radius {radius} has more than {limit} elements; "
            "lower the radius or raise the guard"
        )
        self.limit = limit
        self.radius = radius


class CayleyBall:
    """Ball of the right Cayley graph Cay(G, S) as a weighted digraph.

    Attributes:
        nodes:    Keys of the ball, in breadth-first order (identity first).
        distance: Word distance of each node from the identity.
        graph:    ``networkx.DiGraph``; edge ``g -> g*s`` carries weight 1/|S|.
    """

    def __init__(self, S: GenSet, radius: int, guard: int = 2_000_000):
        if radius < 0:
            raise ValueError(f"radius must be >= 0, got {radius}")
        self.genset = S
        self.radius = radius
        p = S.presentation
        start = p.identity_key
        self.distance: Dict[Key, int] = {start: 0}
        self.nodes: List[Key] = [start]

        queue = deque([start])
        steps = S.keys()
        while queue:
            g = queue.popleft()
            d = self.distance[g]
            if d == radius:
                continue
            for s in steps:
                h = p.mul_keys(g, s)
                if h not in self.distance:
                    self.distance[h] = d + 1
                    self.nodes.append(h)
                    if len(self.nodes) > guard:
                        raise BallGuardExceeded(guard, radius)
                    queue.append(h)

        weight = 1.0 / len(S)
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(self.nodes)
        for g in self.nodes:
            for s in steps:
                h = p.mul_keys(g, s)
                if h in self.distance:
                    self.graph.add_edge(g, h, weight=weight)

    # ---- queries --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, key: Key) -> bool:
        return key in self.distance

    def sphere_sizes(self) -> List[int]:
        sizes = [0] * (self.radius + 1)
        for d in self.distance.values():
            sizes[d] += 1
        return sizes

    def transition_matrix(self):
        """Truncated Markov operator P m(S) P as a scipy sparse array."""
        return nx.to_scipy_sparse_array(
            self.graph, nodelist=self.nodes, weight="weight", format="csr"
        )

    def __repr__(self) -> str:
        return f"CayleyBall(radius={self.radius}, nodes={len(self.nodes)})"


def cayley_ball(S: GenSet, radius: int, guard: int = 2_000_000) -> CayleyBall:
    return CayleyBall(S, radius, guard)
