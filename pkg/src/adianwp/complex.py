"""2-cells on top of a word graph: Schützenberger complexes and their
approximations."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .errors import NotConnected, SideNotReadable
from .presentation import Letter, Presentation, gens_of
from .wordgraph import WordGraph, canonical_form, to_dot


@dataclass(frozen=True)
class Face:
    relation_index: int
    base: int
    lhs_trace: tuple
    rhs_trace: tuple

    def key(self):
        return (self.relation_index, self.lhs_trace, self.rhs_trace)

    def boundary(self):
        """Closed vertex loop: along the lhs, back along the rhs."""
        return self.lhs_trace + self.rhs_trace[-2::-1]


class Complex:
    def __init__(self, presentation: Presentation, skeleton: WordGraph, faces=()):
        self.presentation = presentation
        self.skeleton = skeleton
        self.faces = {}
        for f in faces:
            self.faces.setdefault(f.key(), f)

    def copy(self) -> "Complex":
        c = Complex(self.presentation, self.skeleton.copy())
        c.faces = dict(self.faces)
        return c

    def add_face(self, face: Face) -> bool:
        key = face.key()
        if key in self.faces:
            return False
        self.faces[key] = face
        return True

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def stats(self) -> dict:
        g = self.skeleton
        return {"vertices": g.num_vertices(), "edges": g.num_edges(),
                "faces": self.num_faces, "fold_merges": g.fold_count}

    def sorted_faces(self):
        return sorted(self.faces.values(), key=Face.key)

    def to_dot(self, title="SC") -> str:
        faces = [(f.relation_index, f.boundary()) for f in self.sorted_faces()]
        return to_dot(self.skeleton, self.presentation.names, faces, title)


def attach_face(c: Complex, relation_index: int, base: int, end: int) -> Complex:
    """Sew the missing side of a relation between ``base`` and ``end`` (no
    folding) and record the face. Mutates and returns ``c``."""
    g = c.skeleton
    base, end = g.find(base), g.find(end)
    rel = c.presentation.relations[relation_index]
    lhs, rhs = gens_of(rel.lhs), gens_of(rel.rhs)
    lt, rt = g.read_gens(base, lhs), g.read_gens(base, rhs)
    l_ok = lt is not None and lt[-1] == end
    r_ok = rt is not None and rt[-1] == end
    if not l_ok and not r_ok:
        raise SideNotReadable(f"neither side of relation {relation_index} reads "
                              f"from {base} to {end}")
    if not l_ok:
        lt = sew_path(g, base, end, lhs)
    elif not r_ok:
        rt = sew_path(g, base, end, rhs)
    c.add_face(Face(relation_index, base, tuple(lt), tuple(rt)))
    return c


def sew_path(g: WordGraph, start: int, end: int, gens) -> list:
    """Glue a fresh positive path labeled ``gens`` from ``start`` to ``end``."""
    trace = [start]
    for gen in gens[:-1]:
        v = g.add_vertex()
        g.add_edge(trace[-1], gen, v)
        trace.append(v)
    g.add_edge(trace[-1], gens[-1], end)
    trace.append(end)
    return trace


def canonicalize_faces(c: Complex) -> Complex:
    find = c.skeleton.find
    faces = {}
    for f in c.faces.values():
        g = Face(f.relation_index, find(f.base),
                 tuple(find(v) for v in f.lhs_trace), tuple(find(v) for v in f.rhs_trace))
        faces.setdefault(g.key(), g)
    c.faces = faces
    return c


@dataclass(frozen=True)
class BettiReport:
    passed: bool
    vertices: int
    edges: int
    faces: int
    cycle_rank: int
    boundary_rank: int


def betti_check(c: Complex) -> BettiReport:
    """Compare the cycle rank of the skeleton with the rank of the face
    boundary matrix over the rationals."""
    g = c.skeleton
    order, _ = canonical_form(g)
    if len(order) != g.num_vertices():
        raise NotConnected("skeleton is not connected from alpha")
    edges = g.edges()
    column = {(u, gen): i for i, (u, gen, _) in enumerate(edges)}
    relations = c.presentation.relations
    rows = []
    for f in c.sorted_faces():
        rel = relations[f.relation_index]
        row = [0] * len(edges)
        for trace, side, sign in ((f.lhs_trace, rel.lhs, 1), (f.rhs_trace, rel.rhs, -1)):
            for v, letter in zip(trace, side):
                row[column[(g.find(v), letter.gen)]] += sign
        rows.append(row)
    cycle_rank = len(edges) - len(order) + 1
    rank = integer_rank(rows)
    return BettiReport(cycle_rank == rank, len(order), len(edges), c.num_faces, cycle_rank, rank)


def integer_rank(rows) -> int:
    """Rank over Q by fraction-free integer elimination (rows are kept
    primitive by dividing out their content)."""
    m = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, len(m)):
            a = m[i][col]
            if a:
                row = [p * x - a * y for x, y in zip(m[i], m[rank])]
                content = math.gcd(*row)
                m[i] = [x // content for x in row] if content > 1 else row
        rank += 1
        if rank == len(m):
            break
    return rank


def glue_complex(c: Complex, src: Complex, anchors: dict) -> dict:
    """Copy ``src`` into ``c``, identifying each ``src`` vertex in ``anchors``
    with the given vertex of ``c``. Returns the full vertex map. No folding."""
    g, h = c.skeleton, src.skeleton
    vmap = {}
    for v in h.vertices():
        target = anchors.get(v)
        vmap[v] = g.find(target) if target is not None else g.add_vertex()
    for u, gen, v in h.edges():
        g.add_edge(vmap[u], gen, vmap[v])
    for f in src.sorted_faces():
        c.add_face(Face(f.relation_index, vmap[h.find(f.base)],
                        tuple(vmap[h.find(v)] for v in f.lhs_trace),
                        tuple(vmap[h.find(v)] for v in f.rhs_trace)))
    return vmap


def graft_complex(c: Complex, src: Complex, anchors: dict) -> dict:
    """Like :func:`glue_complex` but reuses structure already present in
    ``c``: starting from the anchors, each ``src`` edge is matched against the
    existing edge with the same label and only missing pieces are created.
    ``src`` must be connected and ``c`` folded. Returns the vertex map."""
    g, h = c.skeleton, src.skeleton
    vmap = {h.find(v): g.find(t) for v, t in anchors.items()}
    queue = deque(sorted(vmap))
    while queue:
        u = queue.popleft()
        moves = [(gen, h.find(t[0]), 1) for gen, t in sorted(h.out[u].items()) if t]
        moves += [(gen, h.find(t[0]), -1) for gen, t in sorted(h.inn[u].items()) if t]
        for gen, v, sign in moves:
            here = g.find(vmap[u])
            table = g.out if sign > 0 else g.inn
            existing = table[here].get(gen)
            there = g.find(existing[0]) if existing else None
            if v not in vmap:
                if there is None:
                    there = g.add_vertex()
                    g.add_letter_edge(here, Letter(gen, sign), there)
                vmap[v] = there
                queue.append(v)
            elif there != g.find(vmap[v]):
                g.add_letter_edge(here, Letter(gen, sign), vmap[v])
    for f in src.sorted_faces():
        c.add_face(Face(f.relation_index, g.find(vmap[h.find(f.base)]),
                        tuple(g.find(vmap[h.find(v)]) for v in f.lhs_trace),
                        tuple(g.find(vmap[h.find(v)]) for v in f.rhs_trace)))
    return vmap
