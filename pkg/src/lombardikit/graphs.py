"""Graph families with fixed planar embeddings.

Every family starts from K_{2,2k}: yellow vertices 0 and 1, blue vertices
2 .. 2k+1 in fan order.  Picture yellow 0 at the origin, the blues on a
circle counterclockwise, and yellow 1 at infinity.  The sector between blue
j and blue j+1 is the quadrilateral face F_j.  Even sectors F_{2i} receive
the red gadgets; odd sectors stay empty and are the k quadrilateral faces
s p t q of the fan.

Rotation lists are counterclockwise neighbor orders read off that picture.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import BadParameter, ConstructionInfeasible

YELLOW, BLUE, RED = "yellow", "blue", "red"
COLORS = (YELLOW, BLUE, RED)


@dataclass(frozen=True)
class EmbeddedGraph:
    """A simple graph with a rotation system.

    ``rotation[v]`` lists the neighbors of ``v`` in counterclockwise order.
    Edges are stored as ``(u, v)`` with ``u < v`` in construction order.
    """

    name: str
    k: int
    colors: tuple
    edges: tuple
    rotation: tuple

    def __post_init__(self):
        n = len(self.colors)
        if len(self.rotation) != n:
            raise ValueError("one rotation list per vertex is required")
        for c in self.colors:
            if c not in COLORS:
                raise ValueError(f"unknown color {c!r}")
        seen = set()
        incident = [set() for _ in range(n)]
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an unknown endpoint")
            if u == v:
                raise ValueError(f"loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"repeated edge {key}")
            seen.add(key)
            incident[u].add(v)
            incident[v].add(u)
        for v, rot in enumerate(self.rotation):
            if len(rot) != len(set(rot)) or set(rot) != incident[v]:
                raise ValueError(f"rotation at {v} does not list exactly its neighbors")

    @property
    def n(self) -> int:
        return len(self.colors)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def neighbors(self, v: int) -> tuple:
        return self.rotation[v]

    @cached_property
    def edge_index(self) -> dict:
        out = {}
        for i, (u, v) in enumerate(self.edges):
            out[(u, v)] = i
            out[(v, u)] = i
        return out

    @cached_property
    def faces(self) -> tuple:
        """Closed walks traced through the rotation system.

        From dart u -> v the walk continues along the edge preceding u in
        the counterclockwise order at v, which keeps the face on the left.
        """
        pos = [{w: i for i, w in enumerate(rot)} for rot in self.rotation]
        used = set()
        faces = []
        for u in range(self.n):
            for v in self.rotation[u]:
                if (u, v) in used:
                    continue
                walk = []
                a, b = u, v
                while (a, b) not in used:
                    used.add((a, b))
                    walk.append(a)
                    rot = self.rotation[b]
                    a, b = b, rot[(pos[b][a] - 1) % len(rot)]
                faces.append(tuple(walk))
        return tuple(faces)

    def components(self) -> list:
        comp = [-1] * self.n
        out = []
        for s in range(self.n):
            if comp[s] >= 0:
                continue
            comp[s] = len(out)
            members, queue = [s], deque([s])
            while queue:
                v = queue.popleft()
                for w in self.rotation[v]:
                    if comp[w] < 0:
                        comp[w] = comp[s]
                        members.append(w)
                        queue.append(w)
            out.append(sorted(members))
        return out

    def euler_ok(self) -> bool:
        """V - E + F = 2 on every connected component."""
        comp_of = {}
        for i, members in enumerate(self.components()):
            for v in members:
                comp_of[v] = i
        counts = [[len(m), 0, 0] for m in self.components()]
        for u, _ in self.edges:
            counts[comp_of[u]][1] += 1
        for f in self.faces:
            counts[comp_of[f[0]]][2] += 1
        for c in counts:
            if c[1] == 0:
                c[2] = 1  # an isolated vertex bounds a single face
        return all(v - e + f == 2 for v, e, f in counts)

    def by_color(self, color: str) -> list:
        return [v for v, c in enumerate(self.colors) if c == color]


# ---------------------------------------------------------------------------
# Structural checks
# ---------------------------------------------------------------------------


def two_coloring(g: EmbeddedGraph):
    """A proper 2-coloring as a list of 0/1, or None if the graph is not bipartite."""
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.rotation[v]:
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    return side


def is_bipartite(g: EmbeddedGraph) -> bool:
    return two_coloring(g) is not None


def _adjacency(g: EmbeddedGraph) -> dict:
    return {v: set(g.rotation[v]) for v in range(g.n)}


def degeneracy_empties(g: EmbeddedGraph, threshold: int = 2) -> bool:
    """True iff repeatedly deleting vertices of degree <= threshold empties the graph."""
    adj = _adjacency(g)
    queue = deque(v for v in adj if len(adj[v]) <= threshold)
    while queue:
        v = queue.popleft()
        if v not in adj:
            continue
        for w in adj.pop(v):
            adj[w].discard(v)
            if len(adj[w]) <= threshold:
                queue.append(w)
    return not adj


def series_parallel_reduces(g: EmbeddedGraph) -> bool:
    """Series-parallel reduction to a single edge.

    Parallel edges are merged on creation (adjacency sets), degree-two
    vertices are smoothed, and degree-one vertices are pruned.
    """
    adj = _adjacency(g)
    if len(adj) < 2:
        return False
    queue = deque(v for v in adj if len(adj[v]) <= 2)
    while queue and len(adj) > 2:
        v = queue.popleft()
        if v not in adj or len(adj[v]) > 2:
            continue
        nbrs = adj.pop(v)
        for w in nbrs:
            adj[w].discard(v)
        if len(nbrs) == 2:
            a, b = nbrs
            adj[a].add(b)
            adj[b].add(a)
        for w in nbrs:
            if len(adj[w]) <= 2:
                queue.append(w)
    if len(adj) != 2:
        return False
    a, b = adj
    return b in adj[a]


def is_two_tree(g: EmbeddedGraph) -> bool:
    """Recognize a 2-tree by peeling degree-two vertices with adjacent neighbors."""
    if g.n < 2 or len(g.edges) != 2 * g.n - 3:
        return False
    adj = _adjacency(g)
    queue = deque(v for v in adj if len(adj[v]) == 2)
    while queue and len(adj) > 2:
        v = queue.popleft()
        if v not in adj or len(adj[v]) != 2:
            continue
        a, b = adj[v]
        if b not in adj[a]:
            continue
        del adj[v]
        adj[a].discard(v)
        adj[b].discard(v)
        queue.extend(w for w in (a, b) if len(adj[w]) == 2)
    if len(adj) != 2:
        return False
    a, b = adj
    return b in adj[a]


def is_tree(g: EmbeddedGraph, removed=()) -> bool:
    """True iff ``g`` minus the vertices in ``removed`` is a tree."""
    gone = set(removed)
    keep = [v for v in range(g.n) if v not in gone]
    if not keep:
        return False
    m = sum(1 for u, v in g.edges if u not in gone and v not in gone)
    if m != len(keep) - 1:
        return False
    seen = {keep[0]}
    queue = deque([keep[0]])
    while queue:
        v = queue.popleft()
        for w in g.rotation[v]:
            if w not in gone and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(keep)


def quad_faces(g: EmbeddedGraph) -> list:
    """Faces s p t q with s = 0, t = 1 yellow and p, q blue, in fan order.

    Each face is returned as a tuple ``(s, p, t, q)`` read along the face walk.
    """
    found = []
    for f in g.faces:
        if len(f) != 4:
            continue
        if set(f[0::2]) != {0, 1}:
            f = f[1:] + f[:1]
        if set(f[0::2]) != {0, 1} or any(g.colors[v] != BLUE for v in f[1::2]):
            continue
        i = f.index(0)
        found.append(f[i:] + f[:i])
    order = {v: i for i, v in enumerate(g.rotation[0])}
    deg = len(order)

    def first_blue(f):
        a, b = order[f[1]], order[f[3]]
        return a if (b - a) % deg <= (a - b) % deg else b

    found.sort(key=first_blue)
    return found


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


class _Builder:
    def __init__(self, k: int):
        self.k = k
        self.colors = [YELLOW, YELLOW] + [BLUE] * (2 * k)
        self.edges = []

    def blue(self, j: int) -> int:
        return 2 + j % (2 * self.k)

    def add(self, color: str) -> int:
        self.colors.append(color)
        return len(self.colors) - 1

    def edge(self, u: int, v: int):
        self.edges.append((min(u, v), max(u, v)))

    def finish(self, name: str, rotation) -> EmbeddedGraph:
        return EmbeddedGraph(name, self.k, tuple(self.colors), tuple(self.edges), tuple(tuple(r) for r in rotation))


def _check_k(k) -> int:
    if isinstance(k, bool) or not isinstance(k, int) or k < 2:
        raise BadParameter(f"k must be an integer >= 2, got {k!r}")
    return k


def build_B(k: int) -> EmbeddedGraph:
    """K_{2,2k} plus a K_{2,2k-2} of reds on each blue pair (2i, 2i+1)."""
    k = _check_k(k)
    b = _Builder(k)
    nb = 2 * k
    for j in range(nb):
        b.edge(0, b.blue(j))
        b.edge(1, b.blue(j))
    reds = []
    for i in range(k):
        lo, hi = b.blue(2 * i), b.blue(2 * i + 1)
        group = []
        for _ in range(2 * k - 2):  # innermost (nearest yellow 0) first
            r = b.add(RED)
            b.edge(lo, r)
            b.edge(hi, r)
            group.append(r)
        reds.append(group)
    rot = [[] for _ in b.colors]
    rot[0] = [b.blue(j) for j in range(nb)]
    rot[1] = [b.blue(j) for j in reversed(range(nb))]
    for i, group in enumerate(reds):
        lo, hi = b.blue(2 * i), b.blue(2 * i + 1)
        rot[lo] = [1] + group[::-1] + [0]
        rot[hi] = [1, 0] + group
        for r in group:
            rot[r] = [lo, hi]
    return b.finish(f"B({k})", rot)


class _ChainLayout:
    """Red chains hugging the four sides of each even sector.

    ``chain[(y, j)]`` is the chain on edge yellow y -- blue j, listed from the
    vertex joined to the yellow end towards the blue end.
    """

    def __init__(self, b: _Builder, length_of):
        self.b = b
        self.chain = {}
        k = b.k
        for i in range(k):
            for j in (2 * i, 2 * i + 1):
                for y in (0, 1):
                    n = length_of(y, j)
                    if n < 1:
                        raise ConstructionInfeasible("red chains need at least one vertex")
                    verts = [b.add(RED) for _ in range(n)]
                    blue = b.blue(j)
                    b.edge(y, verts[0])
                    for a, c in zip(verts, verts[1:]):
                        b.edge(a, c)
                    for v in verts:
                        b.edge(blue, v)
                    self.chain[(y, j)] = verts

    def rotation(self, yy_edge: bool = False) -> list:
        b, k = self.b, self.b.k
        rot = [[] for _ in b.colors]
        for i in range(k):
            lo, hi = 2 * i, 2 * i + 1
            A, B = self.chain[(0, lo)], self.chain[(1, lo)]
            C, D = self.chain[(0, hi)], self.chain[(1, hi)]
            rot[0] += [b.blue(lo), A[0]] + ([1] if yy_edge and i == 0 else []) + [C[0], b.blue(hi)]
            rot[b.blue(lo)] = [1] + B + A[::-1] + [0]
            rot[b.blue(hi)] = [1, 0] + C + D[::-1]
            # chains with the sector on the left of travel yellow -> blue
            for verts, y, blue, left in ((A, 0, lo, True), (B, 1, lo, False), (C, 0, hi, False), (D, 1, hi, True)):
                bv = b.blue(blue)
                for idx, v in enumerate(verts):
                    prev = y if idx == 0 else verts[idx - 1]
                    if idx == len(verts) - 1:
                        rot[v] = [prev, bv]
                    elif left:
                        rot[v] = [verts[idx + 1], prev, bv]
                    else:
                        rot[v] = [verts[idx + 1], bv, prev]
        # yellow 1 sits at infinity: counterclockwise there runs against the fan
        for i in reversed(range(k)):
            lo, hi = 2 * i, 2 * i + 1
            B, D = self.chain[(1, lo)], self.chain[(1, hi)]
            rot[1] += [b.blue(hi), D[0]] + ([0] if yy_edge and i == 0 else []) + [B[0], b.blue(lo)]
        return rot


def _yellow_blue(b: _Builder):
    for j in range(2 * b.k):
        b.edge(0, b.blue(j))
        b.edge(1, b.blue(j))


def build_S(k: int) -> EmbeddedGraph:
    """K_{2,2k} with a chain of 2k - 1 reds on every yellow-blue edge."""
    k = _check_k(k)
    b = _Builder(k)
    _yellow_blue(b)
    layout = _ChainLayout(b, lambda y, j: 2 * k - 1)
    return b.finish(f"S({k})", layout.rotation())


def maximal_chain_lengths(k: int, equal_chains: bool = False) -> tuple:
    """Chain lengths (yellow 0 side, yellow 1 side) balancing degrees at 4k + 1.

    With the yellow-yellow edge a yellow vertex has degree 4k + 1, so the two
    chains at a blue vertex must hold 4k - 1 reds together.
    """
    k = _check_k(k)
    total = 4 * k - 1
    if equal_chains:
        raise ConstructionInfeasible(
            f"equal chains would need {total}/2 reds each; no integral length balances the degrees"
        )
    return (total + 1) // 2, total // 2


def build_S_maximal(k: int, equal_chains: bool = False) -> EmbeddedGraph:
    """S(k) plus the yellow-yellow edge, with chain lengths 2k and 2k - 1.

    The chain on the edge to yellow 0 has 2k reds and the chain on the edge
    to yellow 1 has 2k - 1, so yellow and blue degrees are all 4k + 1.  The
    yellow-yellow edge runs through sector F_0, keeping the odd sectors empty.
    """
    k = _check_k(k)
    l0, l1 = maximal_chain_lengths(k, equal_chains)
    b = _Builder(k)
    b.edge(0, 1)
    _yellow_blue(b)
    layout = _ChainLayout(b, lambda y, j: l0 if y == 0 else l1)
    return b.finish(f"S_maximal({k})", layout.rotation(yy_edge=True))


def subdivide(g: EmbeddedGraph, which, name: str | None = None) -> EmbeddedGraph:
    """Subdivide every edge (u, v) with ``which(u, v)``; new vertices are red."""
    colors = list(g.colors)
    rot = [list(r) for r in g.rotation]
    edges = []
    for u, v in g.edges:
        if not which(u, v):
            edges.append((u, v))
            continue
        m = len(colors)
        colors.append(RED)
        rot.append([u, v])
        rot[u][rot[u].index(v)] = m
        rot[v][rot[v].index(u)] = m
        edges.append((u, m))
        edges.append((v, m))
    return EmbeddedGraph(name or g.name, g.k, tuple(colors), tuple(edges), tuple(tuple(r) for r in rot))


def build_S_bipartite(k: int) -> EmbeddedGraph:
    """S(k) with every yellow-red and red-red edge subdivided."""
    g = build_S(k)

    def which(u, v):
        cu, cv = g.colors[u], g.colors[v]
        return {cu, cv} in ({YELLOW, RED}, {RED})

    return subdivide(g, which, f"S_bipartite({k})")


def build_apex_tree(k: int) -> EmbeddedGraph:
    """K_{2,2k} with 2k - 2 pendant reds on each blue, placed in the even sectors.

    Yellow and blue degrees are all 2k; deleting either yellow leaves a tree.
    """
    k = _check_k(k)
    b = _Builder(k)
    _yellow_blue(b)
    pend = {}
    for j in range(2 * k):
        pend[j] = []
        for _ in range(2 * k - 2):
            r = b.add(RED)
            b.edge(b.blue(j), r)
            pend[j].append(r)
    rot = [[] for _ in b.colors]
    nb = 2 * k
    rot[0] = [b.blue(j) for j in range(nb)]
    rot[1] = [b.blue(j) for j in reversed(range(nb))]
    for i in range(k):
        lo, hi = 2 * i, 2 * i + 1
        rot[b.blue(lo)] = [1] + pend[lo] + [0]
        rot[b.blue(hi)] = [1, 0] + pend[hi]
    for j, rs in pend.items():
        for r in rs:
            rot[r] = [b.blue(j)]
    return b.finish(f"apex_tree({k})", rot)


FAMILIES = {
    "B": build_B,
    "S": build_S,
    "S-maximal": build_S_maximal,
    "S-bipartite": build_S_bipartite,
    "apex-tree": build_apex_tree,
}
