"""Facet graphs, rooted spanning forests and the watershed forest.

The facet graph is the dual graph on d-faces, weighted by the altitude
of the shared (d-1)-face.  The watershed forest (one differential step
then one flat step between two facets) is, for Morse stacks, the unique
minimum spanning forest rooted in the minima; `msf_oracle` and
`verify_msf_theorem` check this against greedy / exhaustive baselines.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .complexes import Face, face_key
from .morse import is_morse
from .stacks import Stack, StackError, minima

Edge = tuple[Face, Face]  # unordered; stored with the smaller face first


def _edge(x: Face, y: Face) -> Edge:
    return (x, y) if face_key(x) <= face_key(y) else (y, x)


@dataclass(frozen=True)
class WeightedFacetGraph:
    vertices: tuple[Face, ...]
    edges: dict[Edge, int]  # edge -> weight F(x & y)
    shared: dict[Edge, Face]  # edge -> the shared (d-1)-face

    def degree(self, x: Face) -> int:
        return sum(1 for e in self.edges if x in e)


def build_facet_graph(F: Stack) -> WeightedFacetGraph:
    X = F.host
    d = X.dim
    vertices = tuple(X.faces_of_dim(d))
    edges: dict[Edge, int] = {}
    shared: dict[Edge, Face] = {}
    for z in X.faces_of_dim(d - 1):
        cof = X.cofaces[z]
        if len(cof) == 2:
            e = _edge(cof[0], cof[1])
            edges[e] = F.altitude[z]
            shared[e] = z
    return WeightedFacetGraph(vertices, edges, shared)


@dataclass(frozen=True)
class Forest:
    vertices: frozenset[Face]
    edges: frozenset[Edge]
    roots: frozenset[Face]

    def weight(self, G: WeightedFacetGraph) -> int:
        return sum(G.edges[e] for e in self.edges)

    def trees(self) -> list[frozenset[Face]]:
        """Vertex sets of the connected components."""
        adj: dict[Face, list[Face]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen: set[Face] = set()
        out = []
        for v in sorted(self.vertices, key=face_key):
            if v in seen:
                continue
            comp = {v}
            seen.add(v)
            dq = deque([v])
            while dq:
                u = dq.popleft()
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        dq.append(w)
            out.append(frozenset(comp))
        return out


def is_rooted_forest(
    vertices: set[Face], edges: set[Edge], roots: set[Face]
) -> bool:
    """Inductive leaf-peeling: repeatedly delete a non-root leaf with its
    edge; accept iff exactly the roots remain, edgeless."""
    if not roots <= vertices:
        raise ValueError("roots must be vertices of the graph")
    adj: dict[Face, set[Face]] = {v: set() for v in vertices}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    work = deque(v for v in vertices if len(adj[v]) == 1 and v not in roots)
    alive = set(vertices)
    while work:
        v = work.popleft()
        if v not in alive or len(adj[v]) != 1 or v in roots:
            continue
        (u,) = adj[v]
        alive.discard(v)
        adj[u].discard(v)
        adj[v].clear()
        if len(adj[u]) == 1 and u not in roots:
            work.append(u)
    return alive == set(roots) and all(not adj[v] for v in alive)


def watershed_forest(F: Stack) -> Forest:
    """Dual edges {x, y} such that one endpoint descends into the shared
    face's flat partner: (x, x&y) differential and (x&y, y) flat, either
    way around."""
    ok, witness = is_morse(F)
    if not ok:
        raise StackError(f"not a Morse stack (witness {witness})")
    G = build_facet_graph(F)
    edges: set[Edge] = set()
    for (x, y), z in G.shared.items():
        fz = F.altitude[z]
        fx, fy = F.altitude[x], F.altitude[y]
        if (fz > fx and fz == fy) or (fz > fy and fz == fx):
            edges.add(_edge(x, y))
    roots = frozenset(
        next(iter(zone)) for zone, _ in minima(F).minima
    )
    return Forest(frozenset(G.vertices), frozenset(edges), roots)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def _contracted(G: WeightedFacetGraph, roots: frozenset[Face]):
    """Vertices with all roots merged into one super-vertex; self-loops on
    the super-vertex dropped."""
    ROOT = ("__root__",)
    verts = [ROOT] + [v for v in G.vertices if v not in roots]

    def rep(v):
        return ROOT if v in roots else v

    edges = []
    for (a, b), w in sorted(G.edges.items()):
        ra, rb = rep(a), rep(b)
        if ra != rb:
            edges.append((w, (a, b), ra, rb))
    return ROOT, verts, edges


def msf_weight(G: WeightedFacetGraph, roots: frozenset[Face]) -> int:
    """Greedy (Kruskal) weight of a minimum spanning forest rooted in `roots`,
    computed as an MST of the root-contracted graph."""
    if not roots:
        raise ValueError("at least one root is required")
    ROOT, verts, edges = _contracted(G, roots)
    uf = _UnionFind(verts)
    total = 0
    taken = 0
    for w, _, ra, rb in sorted(edges, key=lambda t: t[0]):
        if uf.union(ra, rb):
            total += w
            taken += 1
    if taken != len(verts) - 1:
        raise ValueError("graph is disconnected after root contraction")
    return total


def msf_is_unique(G: WeightedFacetGraph, roots: frozenset[Face]) -> bool:
    """Sufficient-and-necessary tie test: the MSF is unique iff, within
    every weight class of the greedy run, the usable edges form a forest
    on the current components."""
    ROOT, verts, edges = _contracted(G, roots)
    uf = _UnionFind(verts)
    edges = sorted(edges, key=lambda t: t[0])
    i = 0
    while i < len(edges):
        j = i
        while j < len(edges) and edges[j][0] == edges[i][0]:
            j += 1
        group = [
            (uf.find(ra), uf.find(rb))
            for _, _, ra, rb in edges[i:j]
            if uf.find(ra) != uf.find(rb)
        ]
        probe = _UnionFind({c for pair in group for c in pair})
        for ca, cb in group:
            if not probe.union(ca, cb):
                return False  # two candidates tie across the same cut
        for ca, cb in group:
            uf.union(ca, cb)
        i = j
    return True


def enumerate_msfs(
    G: WeightedFacetGraph, roots: frozenset[Face], max_vertices: int = 12
) -> tuple[int, list[frozenset[Edge]]]:
    """All minimum spanning forests, by exhaustion.  Exact but exponential;
    guarded by `max_vertices`."""
    if len(G.vertices) > max_vertices:
        raise ValueError("facet graph too large for exhaustive enumeration")
    need = len(G.vertices) - len(roots)
    best_weight = msf_weight(G, roots)
    out: list[frozenset[Edge]] = []
    all_edges = sorted(G.edges)
    for sub in combinations(all_edges, need):
        w = sum(G.edges[e] for e in sub)
        if w != best_weight:
            continue
        uf = _UnionFind(G.vertices)
        ok = True
        rooted = {r: r for r in roots}
        for a, b in sub:
            if not uf.union(a, b):
                ok = False
                break
        if not ok:
            continue
        # acyclic with |V| - |roots| edges: exactly |roots| components;
        # each must contain exactly one root
        comp_roots: dict[Face, int] = {}
        for r in roots:
            c = uf.find(r)
            comp_roots[c] = comp_roots.get(c, 0) + 1
        if len(comp_roots) == len(roots) and all(v == 1 for v in comp_roots.values()):
            out.append(frozenset(sub))
    return best_weight, out


def msf_oracle(
    G: WeightedFacetGraph, roots: frozenset[Face], max_vertices: int = 12
) -> tuple[int, Optional[list[frozenset[Edge]]]]:
    """Greedy optimum weight, plus the exhaustive list of all minimum
    spanning forests when the graph is small enough to enumerate (None
    otherwise)."""
    weight = msf_weight(G, roots)
    if len(G.vertices) <= max_vertices:
        _, forests = enumerate_msfs(G, roots, max_vertices)
        return weight, forests
    return weight, None


def verify_msf_theorem(
    F: Stack, enumerate_limit: int = 12
) -> dict[str, bool]:
    """Check the MSF characterization of the watershed forest.

    Returns per-check flags: rooted (spanning forest rooted in the
    minima), weight (matches the greedy optimum), unique (singleton MSF,
    by enumeration when small and by the tie test otherwise), basins
    (forest trees match the watershed basins on d-faces), and min_edge
    (every forest edge is the unique lightest edge at one endpoint).
    """
    from .watershed import morse_watershed

    G = build_facet_graph(F)
    Y = watershed_forest(F)
    checks: dict[str, bool] = {}
    checks["rooted"] = is_rooted_forest(set(Y.vertices), set(Y.edges), set(Y.roots))
    w = Y.weight(G)
    checks["weight"] = w == msf_weight(G, Y.roots)
    if len(G.vertices) <= enumerate_limit:
        _, all_msfs = enumerate_msfs(G, Y.roots, enumerate_limit)
        checks["unique"] = all_msfs == [Y.edges]
    else:
        checks["unique"] = msf_is_unique(G, Y.roots)
    d = F.host.dim
    ws = morse_watershed(F)
    basin_tops = {
        frozenset(f for f in fs if len(f) - 1 == d) for _, fs in ws.basins
    }
    checks["basins"] = set(Y.trees()) == basin_tops
    min_edge_ok = True
    for a, b in Y.edges:
        w_ab = G.edges[_edge(a, b)]
        unique_at_endpoint = False
        for v in (a, b):
            incident = [w for e, w in G.edges.items() if v in e and e != _edge(a, b)]
            if all(w_ab < w for w in incident):
                unique_at_endpoint = True
        if not unique_at_endpoint:
            min_edge_ok = False
    checks["min_edge"] = min_edge_ok
    return checks
