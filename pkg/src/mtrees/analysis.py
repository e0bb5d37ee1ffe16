"""Structural measurements on M(t): degree law, triangles, distances,
assortativity, an outerplanarity certificate, and the entropy comparison."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .counting import entropy, entropy_limit
from .graph import MGraph

# Roots beyond this vertex count are subsampled for the average distance.
EXACT_DISTANCE_MAX_N = 2**12
SAMPLED_ROOTS = 512
_BFS_BATCH = 256


class DegenerateInputError(ValueError):
    pass


def degree_histogram(g: MGraph) -> dict[int, int]:
    return dict(sorted(Counter(g.degrees()).items()))


def degree_law_check(g: MGraph) -> tuple[bool, dict[int, int]]:
    """Check P(deg >= k) == 2**(2-k) exactly for 2 <= k <= t+1."""
    hist = degree_histogram(g)
    n = g.n
    ok = g.t >= 1
    for k in range(2, g.t + 2):
        at_least = sum(c for d, c in hist.items() if d >= k)
        if Fraction(at_least, n) != Fraction(1, 2 ** (k - 2)):
            ok = False
    return ok, hist


def triangle_count(g: MGraph) -> int:
    nbrs = [set(a) for a in g.adjacency]
    count = 0
    for u, v in g.edges():
        count += sum(1 for w in nbrs[u] & nbrs[v] if w > v)
    return count


def _csr(g: MGraph) -> csr_matrix:
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(a) for a in g.adjacency])
    indices = np.fromiter((v for a in g.adjacency for v in a), dtype=np.int64, count=int(indptr[-1]))
    data = np.ones(len(indices), dtype=np.int8)
    return csr_matrix((data, indices, indptr), shape=(g.n, g.n))


def _bfs_rows(graph: csr_matrix, roots) -> np.ndarray:
    d = shortest_path(graph, method="D", directed=False, unweighted=True, indices=roots)
    if np.isinf(d).any():
        raise DegenerateInputError("graph is disconnected")
    return d.astype(np.int64)


def eccentricity(graph: csr_matrix, roots) -> np.ndarray:
    out = []
    for start in range(0, len(roots), _BFS_BATCH):
        out.append(_bfs_rows(graph, roots[start:start + _BFS_BATCH]).max(axis=1))
    return np.concatenate(out)


def diameter(g: MGraph) -> int:
    """Exact diameter by iterative fringe upper bounding (iFUB) from a hub."""
    if g.n == 1:
        return 0
    graph = _csr(g)
    dist = _bfs_rows(graph, [g.hub_pair[0]])[0]
    lower = int(dist.max())
    level = lower
    while level > 0:
        fringe = np.flatnonzero(dist == level)
        lower = max(lower, int(eccentricity(graph, fringe).max()))
        if lower > 2 * (level - 1):
            return lower
        level -= 1
    return lower


@dataclass(frozen=True)
class DistanceSummary:
    diameter: int
    avg_distance: Fraction
    exact: bool
    roots: int


def distances(g: MGraph, exact_max_n: int = EXACT_DISTANCE_MAX_N, sample: int = SAMPLED_ROOTS) -> DistanceSummary:
    """Diameter (always exact) and average distance over unordered pairs.

    Above ``exact_max_n`` vertices the average is taken over ``sample``
    evenly spaced BFS roots and flagged as an estimate.
    """
    n = g.n
    graph = _csr(g)
    if n <= exact_max_n:
        roots = np.arange(n)
        exact = True
    else:
        roots = np.unique(np.linspace(0, n - 1, sample).astype(np.int64))
        exact = False
    total = 0
    for start in range(0, len(roots), _BFS_BATCH):
        total += int(_bfs_rows(graph, roots[start:start + _BFS_BATCH]).sum())
    # each root sums over the n-1 other vertices
    avg = Fraction(total, len(roots) * (n - 1))
    return DistanceSummary(diameter(g), avg, exact, len(roots))


def assortativity_exact(g: MGraph) -> Fraction:
    """Degree Pearson correlation over both orientations of every edge."""
    deg = g.degrees()
    stubs = 0
    s_xy = s_x = s_xx = 0
    for u, v in g.edges():
        du, dv = deg[u], deg[v]
        s_xy += 2 * du * dv
        s_x += du + dv
        s_xx += du * du + dv * dv
        stubs += 2
    mean = Fraction(s_x, stubs)
    var = Fraction(s_xx, stubs) - mean * mean
    if var == 0:
        raise DegenerateInputError("all edge endpoints have equal degree; assortativity undefined")
    return (Fraction(s_xy, stubs) - mean * mean) / var


def assortativity(g: MGraph) -> float:
    return float(assortativity_exact(g))


def chord_positions(g: MGraph) -> list[tuple[int, int]] | None:
    """Boundary-position pairs of edges that are not on the boundary cycle.

    Returns None if the boundary is not a Hamiltonian cycle of ``g``.
    """
    n = g.n
    bd = g.boundary
    if sorted(bd) != list(range(n)):
        return None
    pos = {v: i for i, v in enumerate(bd)}
    nbrs = [set(a) for a in g.adjacency]
    cycle = set()
    for i in range(n):
        u, v = bd[i], bd[(i + 1) % n]
        if v not in nbrs[u]:
            return None
        cycle.add((min(u, v), max(u, v)))
    chords = []
    for u, v in g.edges():
        if (u, v) not in cycle:
            i, j = sorted((pos[u], pos[v]))
            chords.append((i, j))
    return chords


def chords_cross(chords: list[tuple[int, int]]) -> bool:
    """True if two chords interleave in circular order (shared endpoints do not count)."""
    starts: dict[int, list[int]] = {}
    ends: dict[int, list[int]] = {}
    for i, j in chords:
        starts.setdefault(i, []).append(j)
        ends.setdefault(j, []).append(i)
    stack: list[tuple[int, int]] = []
    for p in sorted(set(starts) | set(ends)):
        for i in sorted(ends.get(p, ()), reverse=True):
            if not stack or stack[-1] != (i, p):
                return True
            stack.pop()
        for j in sorted(starts.get(p, ()), reverse=True):
            stack.append((p, j))
    return False


def outerplanarity_certify(g: MGraph) -> bool:
    """Check the stored boundary is an outer cycle whose chords never cross.

    False means the certificate failed, not that the graph is non-outerplanar.
    """
    if g.n == 2:
        return sorted(g.boundary) == [0, 1] and g.m == 1
    chords = chord_positions(g)
    if chords is None:
        return False
    return not chords_cross(chords)


# (name, spanning-tree entropy, source); literature values for average degree 3
LITERATURE_ENTROPY = (
    ("honeycomb lattice", 0.807, "F. Y. Wu, J. Phys. A 10 (1977)"),
    ("4-8-8 (bathroom tile) lattice", 0.787, "R. Shrock, F. Y. Wu, J. Phys. A 33 (2000)"),
    ("3-12-12 lattice", 0.721, "R. Shrock, F. Y. Wu, J. Phys. A 33 (2000)"),
    ("Hanoi graphs", 0.677, "Z. Zhang et al., Hanoi graphs (2012)"),
)


@dataclass(frozen=True)
class EntropyRow:
    name: str
    entropy: float
    source: str


def entropy_table(precision: int = 30) -> list[EntropyRow]:
    h = entropy_limit(precision)
    rows = [EntropyRow("M(t), t -> infinity", float(round(h, 6)), "computed")]
    rows += [EntropyRow(*row) for row in LITERATURE_ENTROPY]
    return rows


@dataclass
class AnalysisReport:
    t: int
    degree_histogram: dict[int, int]
    cumulative_law_ok: bool
    triangle_count: int
    diameter: int
    avg_distance: float
    assortativity_r: float | None
    outerplanar_certified: bool
    entropy_h_t: float | None
    avg_distance_fraction: str | None = None
    avg_distance_estimated: bool = False

    def to_dict(self) -> dict:
        d = asdict(self)
        d["degree_histogram"] = {str(k): v for k, v in self.degree_histogram.items()}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


CSV_FIELDS = (
    "t", "degree_histogram", "cumulative_law_ok", "triangle_count", "diameter",
    "avg_distance", "assortativity_r", "outerplanar_certified", "entropy_h_t",
    "avg_distance_estimated",
)


def csv_row(report: AnalysisReport) -> list[str]:
    d = report.to_dict()
    d["degree_histogram"] = ";".join(f"{k}:{v}" for k, v in report.degree_histogram.items())
    return ["" if d[k] is None else str(d[k]) for k in CSV_FIELDS]


def analyze(g: MGraph) -> AnalysisReport:
    law_ok, hist = degree_law_check(g)
    dist = distances(g)
    try:
        r = assortativity(g)
    except DegenerateInputError:
        r = None
    h = float(entropy(g.t, 15).h_t) if g.t >= 1 else None
    return AnalysisReport(
        t=g.t,
        degree_histogram=hist,
        cumulative_law_ok=law_ok,
        triangle_count=triangle_count(g),
        diameter=dist.diameter,
        avg_distance=float(dist.avg_distance),
        assortativity_r=r,
        outerplanar_certified=outerplanarity_certify(g),
        entropy_h_t=h,
        avg_distance_fraction=str(dist.avg_distance) if dist.exact else None,
        avg_distance_estimated=not dist.exact,
    )
