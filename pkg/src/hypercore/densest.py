"""Volume-densest subhypergraph discovery.

Three routes: a core-ordered greedy peel with a provable approximation
factor, an exact method (binary search on the density with an integer
max-flow feasibility probe, whose negative answers are confirmed by
enumeration whenever hyperedges share node pairs), and a subset-enumeration
oracle for testing.

All densities are exact rationals.  The flow probe scales every capacity by
the denominator of the probed density so the network stays pure-integer;
the density gap 1/(2 n^2) between distinct densities makes floating point
unsafe here.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .model import GuardError, Hypergraph, InputError
from .peel import peel

BRUTE_FORCE_NODE_GUARD = 20


@dataclass
class DensestResult:
    nodes: set[int]
    density: Fraction
    method: str  # "greedy" | "exact" | "brute"
    factor: Fraction
    # final (lower, upper) bracket of the exact method's binary search
    bracket: tuple[Fraction, Fraction] | None = None


def volume_density(H: Hypergraph, nodes: Iterable[int]) -> Fraction:
    """Average neighbor count per node in the strongly induced H[S]."""
    S = set(nodes)
    if not S:
        raise InputError("volume density of the empty set is undefined")
    nbrs: dict[int, set[int]] = {v: set() for v in S}
    for e in H.edges:
        if all(u in S for u in e):
            for v in e:
                nbrs[v].update(e)
    total = sum(len(s) - (1 if v in s else 0) for v, s in nbrs.items())
    return Fraction(total, len(S))


def _max_pair_multiplicity(H: Hypergraph) -> int:
    """Largest number of hyperedges sharing one unordered node pair."""
    pair_counts: Counter[tuple[int, int]] = Counter()
    for e in H.edges:
        for i in range(len(e)):
            for j in range(i + 1, len(e)):
                pair_counts[(e[i], e[j])] += 1
    return max(pair_counts.values(), default=0)


def guarantee_factor(H: Hypergraph) -> Fraction:
    """d_pair * (d_card - 2) + 2 for this hypergraph (2 for plain graphs)."""
    d_card = max(len(e) for e in H.edges)
    d_pair = _max_pair_multiplicity(H)
    return Fraction(d_pair * (d_card - 2) + 2)


def greedy_densest(H: Hypergraph) -> DensestResult:
    """Peel in (core number, residual neighbor count) order and keep the
    densest prefix; density >= optimum / guarantee_factor(H)."""
    n = H.n
    cores = peel(H).core
    alive = [True] * n
    counts = [H.neighbor_count(v) for v in range(n)]
    total = sum(counts)
    best_set = set(range(n))
    best_density = Fraction(total, n)

    order = sorted(range(n), key=lambda v: cores[v])
    pos = 0
    alive_count = n
    by_core: list[list[int]] = []
    while pos < n:
        level = cores[order[pos]]
        group = []
        while pos < n and cores[order[pos]] == level:
            group.append(order[pos])
            pos += 1
        by_core.append(group)

    for group in by_core:
        pending = set(group)
        while pending:
            v = min(pending, key=lambda u: (counts[u], u))
            pending.discard(v)
            affected = H.residual_neighbors(v, alive)
            alive[v] = False
            alive_count -= 1
            total -= counts[v]
            for u in affected:
                c = len(H.residual_neighbors(u, alive))
                total += c - counts[u]
                counts[u] = c
            if alive_count == 0:
                break
            density = Fraction(total, alive_count)
            if density > best_density:
                best_density = density
                best_set = {u for u in range(n) if alive[u]}
    return DensestResult(best_set, best_density, "greedy", guarantee_factor(H))


def _enumerate_optimum(H: Hypergraph) -> tuple[Fraction, int]:
    """(max density, witness bitmask) over every non-empty node subset."""
    n = H.n
    if n > BRUTE_FORCE_NODE_GUARD:
        raise GuardError(f"enumeration guard: {n} nodes > {BRUTE_FORCE_NODE_GUARD}")
    edge_masks = [sum(1 << v for v in e) for e in H.edges]
    best_density = Fraction(-1)
    best_mask = 0
    for mask in range(1, 1 << n):
        nbr_masks = [0] * n
        for em in edge_masks:
            if em & ~mask == 0:
                m = em
                while m:
                    v = (m & -m).bit_length() - 1
                    nbr_masks[v] |= em
                    m &= m - 1
        total = 0
        for v in range(n):
            if nbr_masks[v]:
                total += bin(nbr_masks[v] & ~(1 << v)).count("1")
        density = Fraction(total, bin(mask).count("1"))
        if density > best_density:
            best_density = density
            best_mask = mask
    return best_density, best_mask


def brute_force_densest(H: Hypergraph) -> DensestResult:
    """Exact optimum by enumerating every non-empty node subset (guarded)."""
    best_density, best_mask = _enumerate_optimum(H)
    nodes = {v for v in range(H.n) if best_mask >> v & 1}
    return DensestResult(nodes, best_density, "brute", Fraction(1))


# -- exact algorithm: binary search over an integer max-flow ---------------


class _Dinic:
    """Exact max-flow on integer capacities (Python ints, so no overflow)."""

    def __init__(self, n: int):
        self.n = n
        self.graph: list[list[list[int]]] = [[] for _ in range(n)]  # [to, cap, rev]

    def add_edge(self, u: int, v: int, cap: int) -> None:
        self.graph[u].append([v, cap, len(self.graph[v])])
        self.graph[v].append([u, 0, len(self.graph[u]) - 1])

    def _bfs(self, s: int, t: int) -> bool:
        self.level = [-1] * self.n
        self.level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for v, cap, _ in self.graph[u]:
                if cap > 0 and self.level[v] < 0:
                    self.level[v] = self.level[u] + 1
                    q.append(v)
        return self.level[t] >= 0

    def _dfs(self, u: int, t: int, f: int) -> int:
        if u == t:
            return f
        while self.it[u] < len(self.graph[u]):
            edge = self.graph[u][self.it[u]]
            v, cap, rev = edge
            if cap > 0 and self.level[v] == self.level[u] + 1:
                d = self._dfs(v, t, min(f, cap))
                if d > 0:
                    edge[1] -= d
                    self.graph[v][rev][1] += d
                    return d
            self.it[u] += 1
        return 0

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while self._bfs(s, t):
            self.it = [0] * self.n
            while True:
                f = self._dfs(s, t, 1 << 300)
                if f == 0:
                    break
                flow += f
        return flow

    def min_cut_source_side(self, s: int) -> set[int]:
        seen = {s}
        q = deque([s])
        while q:
            u = q.popleft()
            for v, cap, _ in self.graph[u]:
                if cap > 0 and v not in seen:
                    seen.add(v)
                    q.append(v)
        return seen


def _flow_probe(H: Hypergraph, eta: Fraction) -> tuple[bool, set[int], set[int]]:
    """Build the density-feasibility network at eta and solve it exactly.

    Returns (denser_exists, source_side_nodes, source_side_edges).
    The probe is one-sided in general: max-flow < sum of all neighbor counts
    certifies that some subset beats density eta (the cut identity counts
    each lost neighbor at least once, so the cut objective never exceeds the
    true one).  The converse holds exactly when no node pair is shared by
    two hyperedges; with shared pairs the edge-layer capacities charge a
    lost neighbor once per shared hyperedge and the probe can miss denser
    subsets, so callers must confirm negative answers independently.
    """
    n = H.n
    m = len(H.edges)
    q = eta.denominator
    p = eta.numerator
    # vertex ids: 0 = source, 1 = sink, 2..n+1 nodes, n+2..n+m+1 edge layer
    net = _Dinic(n + m + 2)
    s, t = 0, 1
    total = 0
    finite = 0
    for v in range(n):
        cap = H.neighbor_count(v) * q
        net.add_edge(s, 2 + v, cap)
        total += cap
        finite += cap
        net.add_edge(2 + v, t, p)
        finite += p
    for ei, e in enumerate(H.edges):
        cap = (len(e) - 1) * q
        for v in e:
            net.add_edge(2 + v, n + 2 + ei, cap)
            finite += cap
    inf = finite + 1
    for ei, e in enumerate(H.edges):
        for v in e:
            net.add_edge(n + 2 + ei, 2 + v, inf)
    flow = net.max_flow(s, t)
    side = net.min_cut_source_side(s)
    nodes = {v for v in range(n) if 2 + v in side}
    edges = {ei for ei in range(m) if n + 2 + ei in side}
    return flow < total, nodes, edges


def exact_densest(H: Hypergraph) -> DensestResult:
    """Binary search on the density value; each probe answers "does a denser
    subset exist", and the witness set becomes the candidate.  Distinct
    densities differ by at least 1/(2 n^2), so once the bracket is narrower
    than that the last feasible candidate is optimal.

    Each probe asks the max-flow network first.  A positive flow answer is
    always trustworthy and supplies the min cut's node side as the witness.
    A negative answer is only conclusive when no node pair is shared by two
    hyperedges; otherwise it is confirmed against the subset-enumeration
    optimum (computed once per call, node-count guarded like the brute-force
    oracle), because the flow network overcharges neighbors reachable
    through several hyperedges and can miss denser subsets."""
    n = H.n
    total_nbrs = sum(H.neighbor_count(v) for v in range(n))
    lower = Fraction(total_nbrs, n)
    upper = Fraction(total_nbrs)
    delta = Fraction(1, 2 * n * n)
    best = set(range(n))
    flow_conclusive = _max_pair_multiplicity(H) <= 1
    fallback: tuple[Fraction, set[int]] | None = None
    while upper - lower >= delta:
        eta = (lower + upper) / 2
        denser, nodes, _ = _flow_probe(H, eta)
        if not denser and not flow_conclusive:
            if fallback is None:
                density, mask = _enumerate_optimum(H)
                fallback = (density, {v for v in range(n) if mask >> v & 1})
            if fallback[0] > eta:
                denser, nodes = True, fallback[1]
        if denser:
            lower = eta
            best = nodes
        else:
            upper = eta
    return DensestResult(best, volume_density(H, best), "exact", Fraction(1),
                         bracket=(lower, upper))
