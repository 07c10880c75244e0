"""
Forcing sets, forcing numbers, rank lower bounds and unique-PM order sweeps.

A subset S of a perfect matching M forces M exactly when the graph left after
deleting the endpoints of S has the unique perfect matching M minus S, i.e.
when the alternating digraph of M restricted to the surviving vertices is
acyclic. Any forcing set therefore leaves at most 2 * rank(W) vertices for
every nonzero assignment W of the bipartite adjacency pattern, which gives
the lower bound N - rank(W) on |S| for a graph with N vertices per side.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from . import gf
from .certificate import build_B
from .gf import GFMatrix
from .hypercube import assign
from .matching import (
    DEFAULT_ENUM_CAP,
    BipartiteGraph,
    CapExceededError,
    InducedSubgraph,
    Matching,
    all_pms,
    alternating_out,
    has_unique_pm,
    hypercube_graph,
    induced_by_mask,
    is_acyclic,
)

__all__ = [
    "DEFAULT_MATCHING_CAP",
    "EXHAUSTIVE_MAX_N",
    "ForcingReport",
    "is_forcing",
    "forcing_number",
    "hypercube_bound",
    "rank_lower_bound",
    "seed_bound",
    "forcing_reports",
    "forcing_spectrum",
    "unique_pm_subgraphs",
    "find_max_unique_pm",
    "max_unique_pm_order",
]

DEFAULT_MATCHING_CAP = 16
EXHAUSTIVE_MAX_N = 4

Edge = tuple[Hashable, Hashable]


def _format_edges(edges: Iterable[Edge]) -> str:
    return ",".join(f"{x}-{y}" for x, y in edges) or "-"


@dataclass(frozen=True)
class ForcingReport:
    """Minimum forcing set of one perfect matching.

    ``matching`` and ``witness`` are edge tuples in left-index order;
    ``bound_source`` is ``"rank"`` when ``lower_bound_used`` came from a rank
    certificate, else ``"none"``.
    """

    matching: tuple[Edge, ...]
    forcing_number: int
    witness: tuple[Edge, ...]
    lower_bound_used: int
    bound_source: str

    def line(self) -> str:
        return (
            f"matching {len(self.matching)} forcing {self.forcing_number} "
            f"witness {_format_edges(self.witness)} "
            f"bound {self.lower_bound_used} source {self.bound_source}"
        )


class _ForcingOracle:
    """Precomputed alternating digraph of a fixed perfect matching."""

    def __init__(self, g: BipartiteGraph, m: Iterable[Edge]):
        idx = g.edge_indices(m)
        n = len(g.left)
        if not g.balanced or len(idx) != n or len({j for _, j in idx}) != n:
            raise ValueError("not a perfect matching of the graph")
        self.g = g
        self.idx = idx  # sorted by left index, so position == left index
        self.mate_l = [j for _, j in idx]
        mate_r = [0] * n
        for i, j in idx:
            mate_r[j] = i
        self.out = alternating_out(g.adj, self.mate_l, mate_r)
        self.full = (1 << n) - 1

    def edges(self, positions: Iterable[int]) -> tuple[Edge, ...]:
        return tuple((self.g.left[i], self.g.right[self.mate_l[i]]) for i in positions)

    def forces(self, removed: int) -> bool:
        """``removed``: bitmask over left indices of the edges in S."""
        return is_acyclic(self.out, self.full ^ removed)


def is_forcing(g: BipartiteGraph, m: Iterable[Edge], s: Iterable[Edge]) -> bool:
    """Whether ``s`` is a forcing set of the perfect matching ``m``."""
    m = frozenset(m)
    s = frozenset(s)
    if not s <= m:
        raise ValueError("forcing candidate is not a subset of the matching")
    oracle = _ForcingOracle(g, m)
    removed = 0
    for x, _ in s:
        removed |= 1 << g.left_index[x]
    return oracle.forces(removed)


def forcing_number(
    g: BipartiteGraph,
    m: Iterable[Edge],
    lower: int = 0,
    *,
    source: str = "none",
    cap: int = DEFAULT_MATCHING_CAP,
) -> ForcingReport:
    """Minimum forcing set of ``m`` by size-ordered subset enumeration.

    Sizes below ``lower`` are skipped, so ``lower`` must be a valid lower
    bound. Within a size, subsets are tried in lexicographic order of edge
    positions (edges sorted by left vertex) and the first forcing one wins.
    """
    if lower < 0:
        raise ValueError("lower bound must be non-negative")
    m = frozenset(m)
    if len(m) > cap:
        raise CapExceededError(f"matching has {len(m)} edges, forcing search cap is {cap}")
    oracle = _ForcingOracle(g, m)
    k_edges = len(oracle.idx)
    for size in range(min(lower, k_edges), k_edges + 1):
        for combo in combinations(range(k_edges), size):
            removed = 0
            for i in combo:
                removed |= 1 << i
            if oracle.forces(removed):
                return ForcingReport(
                    oracle.edges(range(k_edges)), size, oracle.edges(combo), lower, source
                )
    raise AssertionError("the full matching always forces itself")


def rank_lower_bound(g: BipartiteGraph, assignment: GFMatrix) -> int:
    """``N - rank(assignment)``: a lower bound on every forcing number of ``g``."""
    if not g.balanced:
        raise ValueError("rank bound needs equal part sizes")
    assign(g.support(), assignment)
    return len(g.left) - gf.rank(assignment)


def hypercube_bound(n: int) -> int:
    """Rank bound for Q_n from the B_n certificate (n >= 2)."""
    return rank_lower_bound(hypercube_graph(n), build_B(n))


def seed_bound(g: BipartiteGraph) -> tuple[int, str]:
    """Best available lower bound for ``g``: the rank certificate for a full
    hypercube of dimension >= 2, nothing otherwise."""
    n = g.hypercube
    if n is None or n < 2 or isinstance(g, InducedSubgraph):
        return 0, "none"
    return hypercube_bound(n), "rank"


def _reports_chunk(g, matchings, lower, source, cap):
    return [forcing_number(g, m, lower, source=source, cap=cap) for m in matchings]


def forcing_reports(
    g: BipartiteGraph,
    lower: int | None = None,
    *,
    jobs: int = 1,
    enum_cap: int = DEFAULT_ENUM_CAP,
    cap: int = DEFAULT_MATCHING_CAP,
) -> list[ForcingReport]:
    """One report per distinct perfect matching, in canonical edge order.

    ``lower=None`` seeds every search with :func:`seed_bound`. A graph
    without perfect matchings raises ``ValueError``.
    """
    if lower is None:
        lower, source = seed_bound(g)
    else:
        source = "none"
    unique = {g.canonical(m): m for m in all_pms(g, enum_cap)}
    if not unique:
        raise ValueError("graph has no perfect matching")
    matchings = [unique[k] for k in sorted(unique, key=lambda e: g.edge_indices(e))]
    if jobs <= 1 or len(matchings) < 2:
        return _reports_chunk(g, matchings, lower, source, cap)
    chunks = [matchings[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_reports_chunk, [g] * jobs, chunks, [lower] * jobs, [source] * jobs, [cap] * jobs))
    reports = [r for part in parts for r in part]
    return sorted(reports, key=lambda r: g.edge_indices(r.matching))


def forcing_spectrum(g: BipartiteGraph, lower: int | None = None, **kwargs) -> set[int]:
    """Set of forcing numbers over all perfect matchings of ``g``."""
    return {r.forcing_number for r in forcing_reports(g, lower, **kwargs)}


# ---------------------------------------------------------------------------
# Unique-PM induced subgraphs of Q_n
# ---------------------------------------------------------------------------


def _masks(count: int, k: int) -> Iterator[int]:
    for combo in combinations(range(count), k):
        mask = 0
        for i in combo:
            mask |= 1 << i
        yield mask


def _check_exhaustive(n: int, max_n: int) -> None:
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if n > max_n:
        raise CapExceededError(f"exhaustive sweep is capped at n <= {max_n}, got {n}")


def unique_pm_subgraphs(
    n: int, half: int | None = None, max_n: int = EXHAUSTIVE_MAX_N
) -> Iterator[InducedSubgraph]:
    """Balanced induced subgraphs of Q_n with a unique perfect matching.

    Sweeps ``half`` vertices per side (default: every size, largest first),
    left masks outer, right masks inner, both in lexicographic combination
    order.
    """
    _check_exhaustive(n, max_n)
    host = hypercube_graph(n)
    side = len(host.left)
    sizes = range(side, 0, -1) if half is None else [half]
    for k in sizes:
        for lmask in _masks(side, k):
            # every kept right vertex needs a kept neighbour
            reach = 0
            for i, a in enumerate(host.adj):
                if lmask >> i & 1:
                    reach |= a
            for rmask in _masks(side, k):
                if rmask & ~reach:
                    continue
                h = induced_by_mask(host, lmask, rmask)
                if has_unique_pm(h)[0]:
                    yield h


def find_max_unique_pm(n: int, max_n: int = EXHAUSTIVE_MAX_N) -> tuple[int, list[str]]:
    """Largest order of a unique-PM induced subgraph of Q_n and the first witness
    found (vertex strings, sorted)."""
    h = next(unique_pm_subgraphs(n, max_n=max_n), None)
    if h is None:
        return 0, []
    return h.order, sorted(h.left + h.right)


def max_unique_pm_order(n: int, mode: str = "exhaustive", max_n: int = EXHAUSTIVE_MAX_N) -> int:
    """Maximum order of an induced subgraph of Q_n with a unique perfect matching.

    ``exhaustive`` sweeps all balanced vertex subsets (n <= 4). ``bounded``
    returns the certified upper bound 2 * rank(B_n) without searching.
    """
    if mode == "exhaustive":
        return find_max_unique_pm(n, max_n)[0]
    if mode == "bounded":
        if n < 2:
            raise ValueError("bounded mode needs n >= 2")
        return 2 * gf.rank(build_B(n))
    raise ValueError(f"mode must be 'exhaustive' or 'bounded', got {mode!r}")
