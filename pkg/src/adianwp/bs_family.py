"""Direct column-by-column constructions of Schützenberger complexes over
``<a,b | a b^m = b^n a>``.

Edges labeled ``a`` are thought of as horizontal and ``b`` as vertical. A
block for ``a^k b^t`` grows columns of cells to the left of the ``b^t``
segment; a block for ``b^t a^k`` grows them to the right. Positive words are
handled by gluing blocks along maximal ``a^k b^t`` and ``b^t a^k`` paths in
waves until nothing new appears.

The constructions assume ``m > n``. For ``m < n`` every word is reversed and
the result mirrored; ``m == n`` goes to the generic engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .complex import Complex, Face, canonicalize_faces, graft_complex
from .errors import NotPositive, WrongAlphabet
from .presentation import Presentation, Relation, Word, is_positive, word_of
from .wordgraph import WordGraph


@dataclass(frozen=True)
class BsParams:
    m: int
    n: int
    a_gen: int
    b_gen: int
    sides_swapped: bool  # True when the relation is written b^n a = a b^m
    presentation: Presentation = field(compare=False, repr=False, default=None)

    @property
    def mirrored(self) -> "BsParams":
        """Parameters for the reversed presentation ``a b^n = b^m a``."""
        p = self.presentation
        rel = p.relations[0]
        rp = Presentation(p.names, (Relation(rel.lhs[::-1], rel.rhs[::-1]),))
        return BsParams(self.n, self.m, self.a_gen, self.b_gen, not self.sides_swapped, rp)


def detect_bs(p: Presentation) -> Optional[BsParams]:
    if p.rank != 2 or len(p.relations) != 1:
        return None
    rel = p.relations[0]
    for a, b in ((0, 1), (1, 0)):
        for swapped in (False, True):
            left, right = (rel.rhs, rel.lhs) if swapped else (rel.lhs, rel.rhs)
            lg = [x.gen for x in left]
            rg = [x.gen for x in right]
            m, n = len(lg) - 1, len(rg) - 1
            if (m >= 1 and n >= 1 and lg == [a] + [b] * m and rg == [b] * n + [a]):
                return BsParams(m, n, a, b, swapped, p)
    return None


# ------------------------------------------------------------------- columns


def pos_block_columns(m: int, n: int, k: int, t: int) -> list:
    """Vertical segment lengths of the ``a^k b^t`` block, right to left.

    The first entry is ``t``; each further column of ``q = len // m`` cells
    leaves a segment of ``n*q``. Stops after ``k`` columns or when a segment
    is shorter than ``m``.
    """
    lengths = [t]
    while len(lengths) <= k and lengths[-1] >= m:
        lengths.append(n * (lengths[-1] // m))
    return lengths


def neg_block_columns(m: int, n: int, t: int, k: int) -> list:
    """Vertical segment lengths of the ``b^t a^k`` block, left to right."""
    lengths = [t]
    while len(lengths) <= k and lengths[-1] >= n:
        lengths.append(m * (lengths[-1] // n))
    return lengths


def _face(params: BsParams, abm_trace, bna_trace) -> Face:
    if params.sides_swapped:
        return Face(0, abm_trace[0], tuple(bna_trace), tuple(abm_trace))
    return Face(0, abm_trace[0], tuple(abm_trace), tuple(bna_trace))


def _path(g: WordGraph, start: int, gen: int, length: int) -> list:
    trace = [start]
    for _ in range(length):
        v = g.add_vertex()
        g.add_edge(trace[-1], gen, v)
        trace.append(v)
    return trace


def _build_pos_block(params: BsParams, k: int, t: int) -> Complex:
    m, n, a, b = params.m, params.n, params.a_gen, params.b_gen
    g = WordGraph()
    top = _path(g, g.add_vertex(), a, k)
    seg = _path(g, top[-1], b, t)
    g.alpha, g.beta = top[0], seg[-1]
    faces = []
    for col, length in enumerate(pos_block_columns(m, n, k, t)[1:]):
        q = length // n
        left = _path(g, top[k - 1 - col], b, length)
        for i in range(q):
            g.add_edge(left[n * (i + 1)], a, seg[m * (i + 1)])
            faces.append(_face(params, [left[n * i]] + seg[m * i:m * (i + 1) + 1],
                               left[n * i:n * (i + 1) + 1] + [seg[m * (i + 1)]]))
        seg = left
    g.fold()
    return Complex(params.presentation, g, faces)


def _build_neg_block(params: BsParams, t: int, k: int) -> Complex:
    m, n, a, b = params.m, params.n, params.a_gen, params.b_gen
    g = WordGraph()
    seg = _path(g, g.add_vertex(), b, t)
    bottom = _path(g, seg[-1], a, k)
    g.alpha, g.beta = seg[0], bottom[-1]
    faces = []
    for col, length in enumerate(neg_block_columns(m, n, t, k)[1:]):
        q = length // m
        tall = len(seg) - 1
        right = _path(g, g.add_vertex(), b, length - 1)
        g.add_edge(right[-1], b, bottom[col + 1])
        right.append(bottom[col + 1])
        for i in range(q):
            top_left = seg[tall - n * (i + 1)]
            g.add_edge(top_left, a, right[length - m * (i + 1)])
            faces.append(_face(params, [top_left] + right[length - m * (i + 1):length - m * i + 1],
                               seg[tall - n * (i + 1):tall - n * i + 1] + [right[length - m * i]]))
        seg = right
    g.fold()
    return Complex(params.presentation, g, faces)


def mirror(c: Complex, presentation: Presentation) -> Complex:
    """Reverse every edge and swap the roots; faces follow along."""
    src = c.skeleton
    g = WordGraph()
    vmap = {v: g.add_vertex() for v in src.vertices()}
    for u, gen, v in src.edges():
        g.add_edge(vmap[v], gen, vmap[u])
    g.alpha, g.beta = vmap[src.find(src.beta)], vmap[src.find(src.alpha)]
    g.fold()
    g.fold_count = src.fold_count
    faces = []
    for f in c.sorted_faces():
        lt = tuple(vmap[src.find(v)] for v in reversed(f.lhs_trace))
        rt = tuple(vmap[src.find(v)] for v in reversed(f.rhs_trace))
        faces.append(Face(f.relation_index, lt[0], lt, rt))
    return Complex(presentation, g, faces)


def _generic(params: BsParams, w: Word) -> Complex:
    from .stephen import schutzenberger

    return schutzenberger(params.presentation, w).complex


def sc_pos_block(params: BsParams, k: int, t: int) -> Complex:
    """The complex of ``a^k b^t``."""
    if k < 0 or t < 0:
        raise ValueError("block sizes must be non-negative")
    if params.m > params.n:
        return _build_pos_block(params, k, t)
    if params.m < params.n:
        return mirror(_build_neg_block(params.mirrored, t, k), params.presentation)
    return _generic(params, word_of([params.a_gen] * k + [params.b_gen] * t))


def sc_neg_block(params: BsParams, t: int, k: int) -> Complex:
    """The complex of ``b^t a^k``."""
    if k < 0 or t < 0:
        raise ValueError("block sizes must be non-negative")
    if params.m > params.n:
        return _build_neg_block(params, t, k)
    if params.m < params.n:
        return mirror(_build_pos_block(params.mirrored, k, t), params.presentation)
    return _generic(params, word_of([params.b_gen] * t + [params.a_gen] * k))


# ------------------------------------------------------------- positive words


def _run_lengths(g: WordGraph, gen: int, table) -> dict:
    """For each vertex, the length of the longest ``gen`` run reached by
    following ``table`` (``g.inn`` walks backwards, ``g.out`` forwards)."""
    runs = {}
    for v in g.vertices():
        chain, on_chain = [], set()
        while v not in runs:
            nxt = table[v].get(gen)
            if not nxt or v in on_chain:  # a one-letter cycle cannot occur here
                runs[v] = 0
                break
            chain.append(v)
            on_chain.add(v)
            v = g.find(nxt[0])
        n = runs[v]
        for u in reversed(chain):
            n += 1
            runs[u] = n
    return runs


def _corners(g: WordGraph, first: int, second: int):
    """Maximal ``first^i second^j`` paths (i, j >= 1) as (start, i, j)."""
    back = _run_lengths(g, first, g.inn)
    fwd = _run_lengths(g, second, g.out)
    found = []
    for c in g.vertices():
        i, j = back[c], fwd[c]
        if i and j:
            start = c
            for _ in range(i):
                start = g.find(g.inn[start][first][0])
            found.append((start, i, j))
    return sorted(found)


def sc_positive_word_waves(params: BsParams, w: Word):
    """Build the complex of a positive word; returns ``(complex, waves)``
    where ``waves`` counts the gluing waves that attached at least one block."""
    p = params.presentation
    if not is_positive(w):
        raise NotPositive("sc_positive_word needs a positive word")
    if any(x.gen not in (params.a_gen, params.b_gen) for x in w):
        raise WrongAlphabet("word uses a generator outside {a, b}")
    if params.m < params.n:
        c, waves = sc_positive_word_waves(params.mirrored, w[::-1])
        return mirror(c, p), waves
    if params.m == params.n:
        return _generic(params, w), 0

    a, b = params.a_gen, params.b_gen
    g = WordGraph()
    trace = [g.add_vertex()]
    for x in w:
        v = g.add_vertex()
        g.add_edge(trace[-1], x.gen, v)
        trace.append(v)
    g.alpha, g.beta = trace[0], trace[-1]
    c = Complex(p, g)
    attached = set()
    # A closed complex holding a path also holds the closure of its label,
    # so a path lying inside one block copy needs no block of its own.
    # owners maps an edge to the copies containing it; only copies that
    # landed injectively are recorded.
    owners = {}
    copies = 0
    waves = 0
    while True:
        grew = False
        for first, second, kind in ((a, b, "pos"), (b, a, "neg")):
            while True:
                todo = [(start, i, j) for start, i, j in _corners(g, first, second)
                        if (first, start, i, j) not in attached]
                if not todo:
                    break
                for start, i, j in todo:
                    attached.add((first, start, i, j))
                    labels = [first] * i + [second] * j
                    path = g.read_gens(start, labels)
                    if _covered(owners, path, labels):
                        continue
                    block = _block(params, kind, i, j)
                    h = block.skeleton
                    src = h.read_gens(h.find(h.alpha), labels)
                    vmap = graft_complex(c, block, dict(zip(src, path)))
                    image = {v: g.find(t) for v, t in vmap.items()}
                    if len(set(image.values())) == len(image):
                        for u, gen, v in h.edges():
                            owners.setdefault((image[u], gen, image[v]), set()).add(copies)
                        copies += 1
                if g.fold():
                    canonicalize_faces(c)
                    attached = {(f, g.find(v), i, j) for f, v, i, j in attached}
                    owners = {}
                waves += 1
                grew = True
        if not grew:
            break
    return c, waves


def _covered(owners: dict, path, labels) -> bool:
    common = None
    for u, gen, v in zip(path, labels, path[1:]):
        ids = owners.get((u, gen, v))
        if not ids:
            return False
        common = set(ids) if common is None else common & ids
        if not common:
            return False
    return True


_BLOCKS = {}


def _block(params: BsParams, kind: str, i: int, j: int) -> Complex:
    key = (params, kind, i, j)
    if key not in _BLOCKS:
        if len(_BLOCKS) > 4096:
            _BLOCKS.clear()
        _BLOCKS[key] = sc_pos_block(params, i, j) if kind == "pos" else sc_neg_block(params, i, j)
    return _BLOCKS[key]


def sc_positive_word(params: BsParams, w: Word) -> Complex:
    return sc_positive_word_waves(params, w)[0]


__all__ = [
    "BsParams", "detect_bs", "pos_block_columns", "neg_block_columns",
    "sc_pos_block", "sc_neg_block", "sc_positive_word", "sc_positive_word_waves", "mirror",
]
