"""Cross-checks between the counting routes and the structural claims about M(t).

Each check returns a ``CheckResult``; ``run_checks`` collects them into the
report emitted by ``mtrees verify``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from decimal import Decimal
from fractions import Fraction
from itertools import combinations
from typing import Callable

from . import analysis, counting, kirchhoff
from .graph import MGraph, build

PRIMES = (999_999_937, 1_000_000_007, 1_000_000_009)
KIRCHHOFF_MAX_T = 7
FOREST_MAX_T = 6
MODULAR_MAX_T = 10
STRUCTURE_MAX_T = 12
ASSORTATIVITY_MAX_T = 10
CLOSED_FORM_MAX_T = 64
PAPER_ENTROPY = Decimal("0.657")


@dataclass
class CheckResult:
    id: str
    passed: bool
    detail: str


def brute_force_2forests(g: MGraph, u: int, v: int) -> int:
    """Count edge subsets forming a spanning 2-forest that separates u and v."""
    edges = g.edges()
    total = 0
    for subset in combinations(edges, g.n - 2):
        parent = list(range(g.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        acyclic = True
        for a, b in subset:
            ra, rb = find(a), find(b)
            if ra == rb:
                acyclic = False
                break
            parent[ra] = rb
        if acyclic and find(u) != find(v):
            total += 1
    return total


def check_base_values() -> CheckResult:
    ok = counting.s_recurrence(0) == 1 and counting.s_recurrence(1) == 4
    return CheckResult("base-values", ok, f"s(0)={counting.s_recurrence(0)} s(1)={counting.s_recurrence(1)}")


def check_triple_agreement(graph_for, t_max: int) -> CheckResult:
    top = min(t_max, KIRCHHOFF_MAX_T)
    for t in range(top + 1):
        s = counting.s_recurrence(t)
        methods = {"recurrence": s, "kirchhoff": kirchhoff.count_trees(graph_for(t))}
        if t >= 1:
            methods["closed-form"] = counting.s_theorem1(t)
        if len(set(methods.values())) != 1:
            return CheckResult("triple-agreement", False, f"t={t}: {methods}")
    return CheckResult("triple-agreement", True, f"0 <= t <= {top}")


def check_modular(graph_for, t_max: int) -> CheckResult:
    top = min(t_max, MODULAR_MAX_T)
    for t in range(top + 1):
        g = graph_for(t)
        s = counting.s_recurrence(t)
        for p in PRIMES:
            got = kirchhoff.count_trees_mod(g, p)
            if got != s % p:
                return CheckResult("modular-agreement", False, f"t={t} p={p}: {got} != {s % p}")
    return CheckResult("modular-agreement", True, f"0 <= t <= {top}, primes {list(PRIMES)}")


def check_two_forests(graph_for, t_max: int) -> CheckResult:
    top = min(t_max, FOREST_MAX_T)
    for t in range(top + 1):
        g = graph_for(t)
        got = kirchhoff.count_separating_2forests(g, *g.hub_pair)
        if got != counting.g_value(t):
            return CheckResult("two-forest-oracle", False, f"t={t}: {got} != g={counting.g_value(t)}")
    g1 = graph_for(1)
    brute = brute_force_2forests(g1, *g1.hub_pair)
    if brute != 3 or counting.g_value(1) != 3:
        return CheckResult("two-forest-oracle", False, f"enumeration on M(1) gave {brute}")
    return CheckResult("two-forest-oracle", True, f"0 <= t <= {top}; g(1)=3 by enumeration")


def check_closed_form() -> CheckResult:
    for t in range(1, CLOSED_FORM_MAX_T + 1):
        value = counting.q_closed_form_ext(t)
        if value.b != 0 or value.a != counting.q_recurrence(t):
            return CheckResult("eq11-rationality", False, f"t={t}: {value!r}")
    return CheckResult("eq11-rationality", True, f"1 <= t <= {CLOSED_FORM_MAX_T}")


def check_entropy() -> CheckResult:
    h20 = counting.entropy(20).h_t
    limit = counting.entropy_limit(40)
    if abs(h20 - PAPER_ENTROPY) > Decimal("1e-3"):
        return CheckResult("entropy", False, f"h_20={h20}")
    prev = Decimal(0)
    ln4 = Decimal(4).ln()
    for t in range(1, 21):
        h = counting.entropy(t, 40).h_t
        if h <= prev or limit - h > ln4 / 2 ** (t + 1):
            return CheckResult("entropy", False, f"partial sums fail at t={t}: {h}")
        prev = h
    return CheckResult("entropy", True, f"h_20={h20:.6f}, limit={limit:.9f}")


def check_structure(graph_for, t_max: int) -> CheckResult:
    top = min(t_max, STRUCTURE_MAX_T)
    for t in range(1, top + 1):
        g = graph_for(t)
        problems = []
        if g.n != 2 ** (t + 1):
            problems.append(f"|V|={g.n}")
        if g.m != 3 * 2**t - 2:
            problems.append(f"|E|={g.m}")
        if Fraction(2 * g.m, g.n) != 3 - Fraction(2, 2**t):
            problems.append("average degree")
        if analysis.triangle_count(g):
            problems.append("triangles")
        if not analysis.degree_law_check(g)[0]:
            problems.append("degree law")
        a, b = g.hub_pair
        deg = g.degrees()
        if b not in g.adjacency[a] or deg[a] != t + 1 or deg[b] != t + 1 or max(deg) != t + 1:
            problems.append("hub pair")
        if problems:
            return CheckResult("structure", False, f"t={t}: " + ", ".join(problems))
    return CheckResult("structure", True, f"1 <= t <= {top}")


def check_self_similarity(graph_for, t_max: int) -> CheckResult:
    top = min(t_max, STRUCTURE_MAX_T)
    for t in range(1, top + 1):
        g, prev = graph_for(t), set(build(t - 1).edges())
        half = 2**t
        shifted = {(u + half, v + half) for u, v in prev}
        if g.subgraph(range(half)) != prev or g.subgraph(range(half, 2 * half)) != shifted:
            return CheckResult("self-similarity", False, f"t={t}")
    return CheckResult("self-similarity", True, f"1 <= t <= {top}")


def check_outerplanarity(graph_for, t_max: int) -> CheckResult:
    top = min(t_max, STRUCTURE_MAX_T)
    for t in range(top + 1):
        if not analysis.outerplanarity_certify(graph_for(t)):
            return CheckResult("outerplanarity", False, f"certificate failed at t={t}")
    g = build(2)
    bd = list(g.boundary)
    bd[1], bd[2] = bd[2], bd[1]
    corrupted = MGraph(g.t, g.adjacency, g.hub_pair, tuple(bd))
    if analysis.outerplanarity_certify(corrupted):
        return CheckResult("outerplanarity", False, "corrupted boundary was accepted")
    return CheckResult("outerplanarity", True, f"0 <= t <= {top}; negative control rejected")


def check_assortativity(graph_for, t_max: int) -> CheckResult:
    top = min(t_max, ASSORTATIVITY_MAX_T)
    values = {}
    for t in range(2, top + 1):
        values[t] = analysis.assortativity(graph_for(t))
        if not values[t] > 0:
            return CheckResult("assortativity", False, f"r({t})={values[t]}")
    return CheckResult("assortativity", True, ", ".join(f"r({t})={r:.4f}" for t, r in values.items()))


def check_entropy_table() -> CheckResult:
    table = analysis.entropy_table()
    literature = [row.entropy for row in table[1:]]
    ok = literature == [0.807, 0.787, 0.721, 0.677] and table[0].entropy < min(literature)
    return CheckResult("entropy-table", ok, "; ".join(f"{r.name}={r.entropy}" for r in table))


def faulty_graph_for(t: int) -> MGraph:
    """build(t) with its last cross edge removed (negative control)."""
    g = build(t)
    if t == 0:
        return g
    b = g.boundary[len(g.boundary) // 2 - 1]
    return g.without_edge((b, b + 2**t))


def run_checks(t_max: int, graph_for: Callable[[int], MGraph] = build) -> list[CheckResult]:
    checks = [
        ("base-values", check_base_values),
        ("triple-agreement", lambda: check_triple_agreement(graph_for, t_max)),
        ("modular-agreement", lambda: check_modular(graph_for, t_max)),
        ("two-forest-oracle", lambda: check_two_forests(graph_for, t_max)),
        ("eq11-rationality", check_closed_form),
        ("entropy", check_entropy),
        ("structure", lambda: check_structure(graph_for, t_max)),
        ("self-similarity", lambda: check_self_similarity(graph_for, t_max)),
        ("outerplanarity", lambda: check_outerplanarity(graph_for, t_max)),
        ("assortativity", lambda: check_assortativity(graph_for, t_max)),
        ("entropy-table", check_entropy_table),
    ]
    results = []
    for check_id, check in checks:
        try:
            results.append(check())
        except (ArithmeticError, ValueError) as exc:
            # a disconnected or malformed graph is a failed check, not a crash
            results.append(CheckResult(check_id, False, f"{type(exc).__name__}: {exc}"))
    return results


def report(results: list[CheckResult], t_max: int) -> dict:
    return {
        "t_max": t_max,
        "passed": all(r.passed for r in results),
        "checks": [asdict(r) for r in results],
    }

