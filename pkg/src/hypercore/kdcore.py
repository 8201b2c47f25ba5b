"""(neighborhood, degree)-core decomposition and the degree-core baseline.

The hybrid algorithm first computes neighborhood core numbers, then for each
level k degree-peels the strong k-core: a popped node's secondary value d_k is
the level at which it leaves the bucket queue.  The membership rule
C(k,d) = {v : d_k(v) >= d} reproduces the definitional fixpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import Hypergraph
from .peel import BucketQueue, CoreAssignment
from .localcore import LocalCoreOptions, local_core


@dataclass
class KDCoreResult:
    kmax: int
    # levels[k] maps surviving node -> d_k(v), for k in [1, kmax]
    levels: dict[int, dict[int, int]] = field(default_factory=dict)

    def core_members(self, k: int, d: int) -> set[int]:
        return {v for v, dv in self.levels.get(k, {}).items() if dv >= d}


def _alive_degree(H: Hypergraph, v: int, alive: list[bool]) -> int:
    deg = 0
    for ei in H.incident_edges(v):
        if all(alive[u] for u in H.edges[ei]):
            deg += 1
    return deg


def kd_decompose(H: Hypergraph, opts: LocalCoreOptions | None = None) -> KDCoreResult:
    cores = local_core(H, opts).core
    kmax = max(cores, default=0)
    result = KDCoreResult(kmax=kmax)
    for k in range(1, kmax + 1):
        vk = {v for v, c in enumerate(cores) if c >= k}
        result.levels[k] = _degree_peel_level(H, vk, k)
    return result


def _degree_peel_level(H: Hypergraph, vk: set[int], k: int) -> dict[int, int]:
    """Degree-peel H[V_k]; a neighbor that would drop below k residual
    neighbors is kept at the current level instead of moving up."""
    alive = [False] * H.n
    for v in vk:
        alive[v] = True
    B = BucketQueue(H.n)
    for v in vk:
        B.insert(v, _alive_degree(H, v, alive))
    dvals: dict[int, int] = {}
    remaining = len(vk)
    d = 1
    while remaining:
        v = B.pop(d)
        if v is None:
            d += 1
            continue
        dvals[v] = d
        remaining -= 1
        nbrs = H.residual_neighbors(v, alive)
        alive[v] = False
        for u in nbrs:
            if len(H.residual_neighbors(u, alive)) >= k:
                B.move(u, max(_alive_degree(H, u, alive), d))
            else:
                B.move(u, d)
    return dvals


def degree_core(H: Hypergraph) -> CoreAssignment:
    """Exact degree-based core numbers by bucket peeling with strong-induction
    residuals (an edge counts toward a degree only while fully alive)."""
    n = H.n
    core = [0] * n
    if n == 0:
        return CoreAssignment(core, {})
    alive = [True] * n
    B = BucketQueue(n)
    for v in range(n):
        B.insert(v, H.degree(v))
    remaining = n
    k = 1
    while remaining:
        v = B.pop(k)
        if v is None:
            k += 1
            continue
        core[v] = k
        remaining -= 1
        nbrs = H.residual_neighbors(v, alive)
        alive[v] = False
        for u in nbrs:
            B.move(u, max(_alive_degree(H, u, alive), k))
    return CoreAssignment(core, {})


def kd_fixpoint_oracle(H: Hypergraph, k: int, d: int) -> set[int]:
    """Definitional (k,d)-core: delete nodes violating either threshold in the
    strong residual until fixpoint.  Maximal by construction."""
    alive = [True] * H.n
    changed = True
    while changed:
        changed = False
        for v in range(H.n):
            if not alive[v]:
                continue
            if (len(H.residual_neighbors(v, alive)) < k
                    or _alive_degree(H, v, alive) < d):
                alive[v] = False
                changed = True
    return {v for v in range(H.n) if alive[v]}
