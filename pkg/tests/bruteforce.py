"""Brute-force reference implementations used to cross-check the production
metrics. Deliberately naive: Floyd-style all-pairs distances plus exhaustive
enumeration of shortest paths. Only suitable for small graphs."""

from __future__ import annotations

import math
from itertools import combinations

INF = math.inf


def _adjacency(nodes, edges):
    adj = {v: set() for v in nodes}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def floyd_distances(nodes, edges):
    dist = {(a, b): (0 if a == b else INF) for a in nodes for b in nodes}
    for a, b in edges:
        dist[(a, b)] = 1
        dist[(b, a)] = 1
    for k in nodes:
        for i in nodes:
            dik = dist[(i, k)]
            if dik is INF:
                continue
            for j in nodes:
                alt = dik + dist[(k, j)]
                if alt < dist[(i, j)]:
                    dist[(i, j)] = alt
    return dist


def enumerate_geodesics(nodes, edges, s, t, dist=None):
    """All shortest s-t paths, via depth-limited DFS."""
    if dist is None:
        dist = floyd_distances(nodes, edges)
    target_len = dist[(s, t)]
    if target_len is INF:
        return []
    adj = _adjacency(nodes, edges)
    paths = []

    def extend(path):
        u = path[-1]
        if u == t:
            paths.append(tuple(path))
            return
        remaining = target_len - (len(path) - 1)
        for v in sorted(adj[u]):
            if v not in path and dist[(v, t)] == remaining - 1:
                path.append(v)
                extend(path)
                path.pop()

    extend([s])
    return paths


def oracle_path_stats(nodes, edges):
    """(diameter, sorted endpoint pairs, mean path length, connected pair count)."""
    dist = floyd_distances(nodes, edges)
    finite = [
        (a, b, dist[(a, b)])
        for a, b in combinations(sorted(nodes), 2)
        if dist[(a, b)] is not INF
    ]
    if not finite:
        return 0, [], 0.0, 0
    diameter = max(d for _, _, d in finite)
    endpoints = sorted((a, b) for a, b, d in finite if d == diameter and d > 0)
    mean = sum(d for _, _, d in finite) / len(finite)
    return int(diameter), endpoints, mean, len(finite)


def oracle_betweenness(nodes, edges):
    nodes = sorted(nodes)
    n = len(nodes)
    acc = {v: 0.0 for v in nodes}
    if n < 3:
        return acc
    dist = floyd_distances(nodes, edges)
    for s, t in combinations(nodes, 2):
        paths = enumerate_geodesics(nodes, edges, s, t, dist)
        if not paths:
            continue
        sigma = len(paths)
        for path in paths:
            for v in path[1:-1]:
                acc[v] += 1.0 / sigma
    norm = (n - 1) * (n - 2) / 2
    return {v: acc[v] / norm for v in nodes}


def oracle_closeness(nodes, edges):
    dist = floyd_distances(nodes, edges)
    out = {}
    for v in sorted(nodes):
        farness = sum(dist[(v, u)] for u in nodes if u != v and dist[(v, u)] is not INF)
        out[v] = 1.0 / farness if farness > 0 else 0.0
    return out


def oracle_clustering(nodes, edges, mode="exclude_low_degree"):
    adj = _adjacency(nodes, edges)
    per_node = {}
    values = []
    for v in sorted(nodes):
        k = len(adj[v])
        if k < 2:
            per_node[v] = None if mode == "exclude_low_degree" else 0.0
            if mode == "zero_low_degree":
                values.append(0.0)
            continue
        links = sum(1 for a, b in combinations(sorted(adj[v]), 2) if b in adj[a])
        coeff = links / (k * (k - 1) / 2)
        per_node[v] = coeff
        values.append(coeff)
    return per_node, (sum(values) / len(values) if values else 0.0)


def oracle_components(nodes, edges):
    """Component sizes (descending) via repeated closure."""
    remaining = set(nodes)
    adj = _adjacency(nodes, edges)
    sizes = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        frontier = {seed}
        while frontier:
            frontier = {w for v in frontier for w in adj[v]} - comp
            comp |= frontier
        sizes.append(len(comp))
        remaining -= comp
    return sorted(sizes, reverse=True)


def oracle_edge_weights(records_with_codes):
    """Joint-paper counts per country pair, recomputed straight from records.

    Takes (year, [codes]) pairs already restricted to the window of interest.
    """
    weights = {}
    for _, codes in records_with_codes:
        distinct = sorted(set(codes))
        for a, b in combinations(distinct, 2):
            weights[(a, b)] = weights.get((a, b), 0) + 1
    return weights
