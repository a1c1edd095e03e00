"""Structural network observables: components, geodesics, centralities,
clustering, degree distribution, clique test and the small-world comparison.

All operations are pure functions of an immutable graph, ignore edge
weights, and aggregate floating-point sums in ascending code order so
results are byte-reproducible regardless of how the graph was assembled.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass

from .errors import UsageError
from .graph import CoauthorshipGraph, basic_stats, graph_from_edges, induced_subgraph

CLUSTERING_MODES = ("exclude_low_degree", "zero_low_degree")
DEFAULT_CLUSTERING_MODE = "exclude_low_degree"


def _sorted_adj(g: CoauthorshipGraph) -> dict[str, list[str]]:
    return {code: g.neighbors(code) for code in g.codes()}


def _bfs_distances(adj: dict[str, list[str]], source: str) -> dict[str, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


@dataclass
class ComponentPartition:
    assignment: dict[str, int]
    sizes: list[int]
    giant_size: int
    isolated_count: int


def components(g: CoauthorshipGraph) -> ComponentPartition:
    """Connected components; ids are assigned by smallest member code."""
    adj = _sorted_adj(g)
    assignment: dict[str, int] = {}
    sizes = []
    cid = 0
    for code in g.codes():
        if code in assignment:
            continue
        members = _bfs_distances(adj, code)
        for member in members:
            assignment[member] = cid
        sizes.append(len(members))
        cid += 1
    return ComponentPartition(
        assignment=assignment,
        sizes=sorted(sizes, reverse=True),
        giant_size=max(sizes, default=0),
        isolated_count=sum(1 for s in sizes if s == 1),
    )


def giant_component_codes(g: CoauthorshipGraph) -> list[str]:
    """Members of the largest component (smallest-code component wins ties)."""
    part = components(g)
    if not part.sizes:
        return []
    by_component: dict[int, list[str]] = {}
    for code, cid in part.assignment.items():
        by_component.setdefault(cid, []).append(code)
    for cid in sorted(by_component):
        if len(by_component[cid]) == part.giant_size:
            return sorted(by_component[cid])
    raise AssertionError("unreachable")


@dataclass
class PathStats:
    diameter: int
    diameter_endpoints: list[tuple[str, str]]
    mean_path_length: float
    connected_pair_count: int


def path_stats(g: CoauthorshipGraph) -> PathStats:
    """All-pairs BFS geodesic statistics over connected pairs only.

    Pairs in different components are excluded from the average; the
    diameter is the longest finite geodesic, with every realizing pair
    reported.
    """
    adj = _sorted_adj(g)
    total = 0
    pairs = 0
    diameter = 0
    endpoints: list[tuple[str, str]] = []
    for source in g.codes():
        dist = _bfs_distances(adj, source)
        for target, d in dist.items():
            if target <= source:
                continue
            total += d
            pairs += 1
            if d > diameter:
                diameter = d
                endpoints = [(source, target)]
            elif d == diameter and d > 0:
                endpoints.append((source, target))
    return PathStats(
        diameter=diameter,
        diameter_endpoints=sorted(endpoints),
        mean_path_length=total / pairs if pairs else 0.0,
        connected_pair_count=pairs,
    )


def betweenness(g: CoauthorshipGraph) -> dict[str, float]:
    """Normalized betweenness centrality.

    For every unordered pair (s, t), a node v strictly between them picks up
    the fraction of s-t geodesics passing through it; the per-node sum is
    divided by (n-1)(n-2)/2 with the global node count, so a node lying on
    every geodesic scores 1. Graphs with n < 3 score 0 everywhere.
    Accumulation follows the Brandes single-source scheme in ascending code
    order.
    """
    codes = g.codes()
    n = len(codes)
    score = {c: 0.0 for c in codes}
    if n < 3:
        return score
    adj = _sorted_adj(g)
    for source in codes:
        stack: list[str] = []
        preds: dict[str, list[str]] = {c: [] for c in codes}
        sigma = {c: 0 for c in codes}
        sigma[source] = 1
        dist = {c: -1 for c in codes}
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = {c: 0.0 for c in codes}
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += (sigma[v] / sigma[w]) * (1.0 + delta[w])
            if w != source:
                score[w] += delta[w]
    # Each unordered pair was visited from both ends; fold the factor 2 into
    # the (n-1)(n-2)/2 normalizer.
    scale = 1.0 / ((n - 1) * (n - 2))
    return {c: score[c] * scale for c in codes}


def closeness(g: CoauthorshipGraph) -> dict[str, float]:
    """Closeness = reciprocal of farness within the node's own component.

    Farness sums distances to all other members of the component; isolated
    nodes get 0 by convention.
    """
    adj = _sorted_adj(g)
    out = {}
    for code in g.codes():
        farness = sum(_bfs_distances(adj, code).values())
        out[code] = 1.0 / farness if farness > 0 else 0.0
    return out


def clustering(g: CoauthorshipGraph, mode: str = DEFAULT_CLUSTERING_MODE) -> tuple[dict[str, float | None], float]:
    """Local clustering coefficients and their average.

    The local coefficient is defined for degree >= 2 only. In
    exclude_low_degree mode lower-degree nodes carry None and are left out
    of the average; in zero_low_degree mode they count as 0.
    """
    if mode not in CLUSTERING_MODES:
        raise UsageError(f"unknown clustering mode {mode!r} (expected one of {CLUSTERING_MODES})")
    neighbor_sets = {code: set(g.neighbors(code)) for code in g.codes()}
    per_node: dict[str, float | None] = {}
    values = []
    for code in g.codes():
        nbrs = neighbor_sets[code]
        k = len(nbrs)
        if k < 2:
            per_node[code] = None if mode == "exclude_low_degree" else 0.0
            if mode == "zero_low_degree":
                values.append(0.0)
            continue
        links = sum(len(neighbor_sets[u] & nbrs) for u in sorted(nbrs)) // 2
        coeff = links / (k * (k - 1) / 2)
        per_node[code] = coeff
        values.append(coeff)
    average = sum(values) / len(values) if values else 0.0
    return per_node, average


@dataclass
class DegreeHistogram:
    counts: dict[int, int]
    probabilities: dict[int, float]


def degree_distribution(g: CoauthorshipGraph) -> DegreeHistogram:
    counts: dict[int, int] = {}
    for d in g.degrees().values():
        counts[d] = counts.get(d, 0) + 1
    counts = dict(sorted(counts.items()))
    n = g.n
    return DegreeHistogram(
        counts=counts,
        probabilities={k: c / n for k, c in counts.items()} if n else {},
    )


def is_clique(g: CoauthorshipGraph, nodes) -> bool:
    """True iff every pair in the set is directly linked (vacuously for <= 1)."""
    members = sorted(set(nodes))
    unknown = [c for c in members if not g.has_node(c)]
    if unknown:
        raise UsageError(f"unknown codes: {unknown}")
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if not g.has_edge(a, b):
                return False
    return True


def top_k_by_degree(g: CoauthorshipGraph, k: int) -> list[str]:
    """Codes with the highest degrees, ties broken by ascending code."""
    if k < 1:
        raise UsageError("k must be >= 1")
    ranked = sorted(g.codes(), key=lambda c: (-g.degree(c), c))
    return ranked[:k]


def random_edge_set(n: int, m: int, rng: random.Random) -> list[tuple[int, int]]:
    """Uniformly sample m distinct unordered pairs out of n labelled nodes."""
    total = n * (n - 1) // 2
    if m > total:
        raise UsageError(f"cannot place {m} edges on {n} nodes (max {total})")
    pairs = []
    for idx in sorted(rng.sample(range(total), m)):
        # Unrank idx into (i, j), i < j, rows of decreasing length.
        offset = idx
        i = 0
        row = n - 1
        while offset >= row:
            offset -= row
            i += 1
            row -= 1
        pairs.append((i, i + 1 + offset))
    return pairs


@dataclass
class SmallWorldReport:
    l_actual: float
    c_actual: float
    l_random_mean: float
    c_random_mean: float
    sample_count: int
    seed: int
    sigma: float


def _giant_metrics(g: CoauthorshipGraph, clustering_mode: str) -> tuple[float, float]:
    giant = induced_subgraph(g, giant_component_codes(g))
    l_value = path_stats(giant).mean_path_length
    _, c_value = clustering(giant, clustering_mode)
    return l_value, c_value


def small_world(
    g: CoauthorshipGraph,
    samples: int,
    seed: int,
    clustering_mode: str = DEFAULT_CLUSTERING_MODE,
) -> SmallWorldReport:
    """Compare the graph with a random baseline of the same size.

    Draws `samples` graphs uniformly from the fixed-n, fixed-m ensemble (no
    self-loops, no multi-edges), computes mean path length and average
    clustering on the giant component of each, and reports
    sigma = (C / <C_rand>) / (L / <L_rand>). Fully reproducible from the
    seed. sigma is inf when the baseline clustering averages to zero while
    the graph's does not, and nan when both vanish.
    """
    if samples < 1:
        raise UsageError("samples must be >= 1")
    if max(components(g).sizes, default=0) < 3:
        raise UsageError("giant component must have at least 3 nodes")
    l_actual, c_actual = _giant_metrics(g, clustering_mode)

    n, m = g.n, g.m
    width = max(2, len(str(n - 1)))
    labels = [f"N{i:0{width}d}" for i in range(n)]
    rng = random.Random(seed)
    l_sum = 0.0
    c_sum = 0.0
    for _ in range(samples):
        edges = [(labels[i], labels[j]) for i, j in random_edge_set(n, m, rng)]
        sample = graph_from_edges(edges, nodes=labels)
        l_value, c_value = _giant_metrics(sample, clustering_mode)
        l_sum += l_value
        c_sum += c_value
    l_random = l_sum / samples
    c_random = c_sum / samples

    if c_random > 0.0 and l_actual > 0.0:
        sigma = (c_actual / c_random) / (l_actual / l_random)
    elif c_actual > 0.0:
        sigma = math.inf
    else:
        sigma = math.nan
    return SmallWorldReport(
        l_actual=l_actual,
        c_actual=c_actual,
        l_random_mean=l_random,
        c_random_mean=c_random,
        sample_count=samples,
        seed=seed,
        sigma=sigma,
    )


@dataclass
class GraphSummary:
    n: int
    m: int
    density: float
    mean_degree: float
    max_degree: int
    max_degree_codes: list[str]
    diameter: int
    diameter_endpoints: list[tuple[str, str]]
    mean_path_length: float
    avg_clustering: float
    clustering_mode: str
    isolated_count: int
    isolated_fraction: float
    giant_size: int
    giant_fraction: float
    empty: bool


def summary(g: CoauthorshipGraph, clustering_mode: str = DEFAULT_CLUSTERING_MODE) -> GraphSummary:
    """One-stop structural report: counts, density, degrees, geodesics,
    clustering, isolated-node and giant-component shares."""
    stats = basic_stats(g)
    part = components(g)
    paths = path_stats(g)
    _, avg_clust = clustering(g, clustering_mode)
    n = stats.n
    return GraphSummary(
        n=n,
        m=stats.m,
        density=stats.density,
        mean_degree=stats.mean_degree,
        max_degree=stats.max_degree,
        max_degree_codes=stats.max_degree_codes,
        diameter=paths.diameter,
        diameter_endpoints=paths.diameter_endpoints,
        mean_path_length=paths.mean_path_length,
        avg_clustering=avg_clust,
        clustering_mode=clustering_mode,
        isolated_count=part.isolated_count,
        isolated_fraction=part.isolated_count / n if n else 0.0,
        giant_size=part.giant_size,
        giant_fraction=part.giant_size / n if n else 0.0,
        empty=n == 0,
    )


def summary_to_dict(s: GraphSummary) -> dict:
    return {
        "n": s.n,
        "m": s.m,
        "density": s.density,
        "mean_degree": s.mean_degree,
        "max_degree": s.max_degree,
        "max_degree_codes": list(s.max_degree_codes),
        "diameter": s.diameter,
        "diameter_endpoints": [list(p) for p in s.diameter_endpoints],
        "mean_path_length": s.mean_path_length,
        "avg_clustering": s.avg_clustering,
        "clustering_mode": s.clustering_mode,
        "isolated_count": s.isolated_count,
        "isolated_fraction": s.isolated_fraction,
        "giant_size": s.giant_size,
        "giant_fraction": s.giant_fraction,
        "empty": s.empty,
    }


def centrality_table(g: CoauthorshipGraph, clustering_mode: str = DEFAULT_CLUSTERING_MODE) -> list[dict]:
    """Per-node centrality rows sorted by code."""
    degree = g.degrees()
    between = betweenness(g)
    close = closeness(g)
    local, _ = clustering(g, clustering_mode)
    return [
        {
            "code": code,
            "degree": degree[code],
            "betweenness": between[code],
            "closeness": close[code],
            "local_clustering": local[code],
        }
        for code in g.codes()
    ]


def histogram_rows(h: DegreeHistogram) -> list[dict]:
    return [
        {"degree": k, "count": h.counts[k], "probability": h.probabilities[k]}
        for k in sorted(h.counts)
    ]
