"""Construction of the recursive graph family M(t).

M(0) is a single edge.  M(t) joins two copies of M(t-1) by two new edges
between corresponding hub vertices.  Copy B is copy A with every label
shifted by 2**t, so vertex v of M(t-1) appears as v and v + 2**t.

The hub pair carried to the next level is the new cross edge
(a, a + 2**t), which under this labeling is always (0, 2**t).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Sequence

DEFAULT_MAX_T = 24

EXPORT_FORMATS = ("edge-list", "dot", "json")


class ResourceLimitError(ValueError):
    """Requested level exceeds the configured construction limit."""


def max_build_t() -> int:
    value = os.environ.get("MGRAPH_MAX_T")
    return int(value) if value else DEFAULT_MAX_T


@dataclass(frozen=True)
class MGraph:
    t: int
    adjacency: tuple[tuple[int, ...], ...]
    hub_pair: tuple[int, int]
    boundary: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) with u < v in ascending lexicographic order."""
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self.adjacency]

    def subgraph(self, vertices: Sequence[int]) -> set[tuple[int, int]]:
        keep = set(vertices)
        return {(u, v) for u, v in self.edges() if u in keep and v in keep}

    def without_edge(self, edge: tuple[int, int]) -> "MGraph":
        """Copy with one edge removed; used for fault injection."""
        u, v = edge
        adj = [list(nbrs) for nbrs in self.adjacency]
        if v not in adj[u]:
            raise ValueError(f"edge {edge} not in graph")
        adj[u].remove(v)
        adj[v].remove(u)
        return MGraph(self.t, tuple(tuple(a) for a in adj), self.hub_pair, self.boundary)


def build(t: int, max_t: int | None = None) -> MGraph:
    if t < 0:
        raise ValueError("t must be nonnegative")
    limit = max_build_t() if max_t is None else max_t
    if t > limit:
        raise ResourceLimitError(f"t={t} exceeds construction limit {limit}")

    adj: list[list[int]] = [[1], [0]]
    hubs = (0, 1)
    # boundary[0] and boundary[-1] are the hubs; they are adjacent on the outer cycle
    boundary = [0, 1]
    for _ in range(t):
        off = len(adj)
        adj = adj + [[v + off for v in nbrs] for nbrs in adj]
        a, b = hubs
        adj[a].append(a + off)
        adj[a + off].append(a)
        adj[b].append(b + off)
        adj[b + off].append(b)
        # a .. b, then across b-(b+off), then copy B reversed: b+off .. a+off, closing via (a+off)-a
        boundary = boundary + [v + off for v in reversed(boundary)]
        hubs = (a, a + off)

    adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adj)
    return MGraph(t=t, adjacency=adjacency, hub_pair=hubs, boundary=tuple(boundary))


def hub_pair(g: MGraph) -> tuple[int, int]:
    return g.hub_pair


def _edge_list(g: MGraph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges())


def _dot(g: MGraph) -> str:
    lines = [f'graph "M({g.t})" {{']
    lines.append(f'  boundary="{" ".join(map(str, g.boundary))}";')
    lines.append(f'  hub_pair="{g.hub_pair[0]} {g.hub_pair[1]}";')
    for h in g.hub_pair:
        lines.append(f"  {h} [hub=true, style=filled];")
    lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def _json(g: MGraph) -> str:
    doc = {
        "t": g.t,
        "n": g.n,
        "m": g.m,
        "hub_pair": list(g.hub_pair),
        "boundary": list(g.boundary),
        "edges": [list(e) for e in g.edges()],
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def export(g: MGraph, format: str) -> bytes:
    """Serialize ``g`` as ``edge-list``, ``dot`` or ``json`` (UTF-8, LF endings)."""
    writers = {"edge-list": _edge_list, "dot": _dot, "json": _json}
    try:
        writer = writers[format]
    except KeyError:
        raise ValueError(f"unsupported export format {format!r}; expected one of {EXPORT_FORMATS}") from None
    return writer(g).encode()
