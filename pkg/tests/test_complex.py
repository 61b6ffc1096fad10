import pytest
from hypothesis import given, settings, strategies as st

from adianwp.complex import (Complex, Face, attach_face, betti_check, canonicalize_faces,
                             glue_complex, graft_complex, integer_rank)
from adianwp.errors import NotConnected, SideNotReadable
from adianwp.stephen import schutzenberger
from adianwp.wordgraph import WordGraph, linear_graph, munn_tree, read_word

from conftest import w


def _linear_complex(p, text):
    return Complex(p, linear_graph(w(p, text)))


def test_attach_face_glues_missing_side(bs21):
    c = _linear_complex(bs21, "abb")
    g = c.skeleton
    attach_face(c, 0, g.alpha, g.beta)
    g.fold()
    assert c.stats() == {"vertices": 5, "edges": 5, "faces": 1, "fold_merges": 0}
    face = next(iter(c.faces.values()))
    assert face.lhs_trace[0] == face.rhs_trace[0] == g.alpha
    assert face.lhs_trace[-1] == face.rhs_trace[-1] == g.beta


def test_attach_face_is_idempotent(bs21):
    c = _linear_complex(bs21, "abb")
    g = c.skeleton
    attach_face(c, 0, g.alpha, g.beta)
    before = (g.num_vertices(), c.num_faces)
    attach_face(c, 0, g.alpha, g.beta)
    assert (g.num_vertices(), c.num_faces) == before


def test_attach_face_needs_a_readable_side(bs21):
    c = _linear_complex(bs21, "abb")
    with pytest.raises(SideNotReadable):
        attach_face(c, 0, c.skeleton.alpha, c.skeleton.alpha)


def test_faces_merge_under_fold(bs21):
    # two copies of the ba side glued in parallel fold into one face
    c = _linear_complex(bs21, "abb")
    g = c.skeleton
    attach_face(c, 0, g.alpha, g.beta)
    extra = g.add_vertex()
    g.add_edge(g.alpha, 1, extra)
    g.add_edge(extra, 0, g.beta)
    lt = tuple(read_word(g, g.alpha, w(bs21, "abb")))
    c.add_face(Face(0, g.alpha, lt, (g.alpha, extra, g.beta)))
    assert c.num_faces == 2
    g.fold()
    canonicalize_faces(c)
    assert c.num_faces == 1


def test_fold_away_from_faces_keeps_count(bs21):
    c = schutzenberger(bs21, w(bs21, "abb")).complex
    g = c.skeleton
    x, y = g.add_vertex(), g.add_vertex()
    g.add_edge(g.beta, 0, x)
    g.add_edge(g.beta, 0, y)
    g.fold()
    canonicalize_faces(c)
    assert c.num_faces == 1


def test_sc_abb_has_one_face(bs21):
    c = schutzenberger(bs21, w(bs21, "abb")).complex
    assert c.num_faces == 1


def test_betti_on_munn_tree(free2):
    r = betti_check(Complex(free2, munn_tree(w(free2, "abb'a'ba"))))
    assert r.passed and r.cycle_rank == 0 and r.boundary_rank == 0


def test_betti_on_sc_abb(bs21):
    c = schutzenberger(bs21, w(bs21, "abb")).complex
    r = betti_check(c)
    assert (r.vertices, r.edges, r.faces, r.cycle_rank, r.boundary_rank) == (5, 5, 1, 1, 1)
    assert r.passed
    c.faces = {}
    r = betti_check(c)
    assert not r.passed and r.cycle_rank == 1 and r.boundary_rank == 0


def test_betti_needs_connected(free2):
    g = munn_tree(w(free2, "a"))
    g.add_vertex()
    with pytest.raises(NotConnected):
        betti_check(Complex(free2, g))


@pytest.mark.parametrize("rows, rank", [
    ([], 0),
    ([[0, 0]], 0),
    ([[1, 2], [2, 4]], 1),
    ([[2, 0], [0, 2]], 2),
    ([[1, 1, 0], [0, 1, 1], [1, 0, -1]], 2),
    ([[2, 4, 6], [3, 6, 9], [1, 0, 1]], 2),
])
def test_integer_rank(rows, rank):
    assert integer_rank(rows) == rank


def _fraction_rank(rows):
    from fractions import Fraction
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


@settings(max_examples=80)
@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), max_size=6)))
def test_integer_rank_matches_fractions(rows):
    assert integer_rank(rows) == _fraction_rank(rows)


def test_face_traces_are_readable(forest13):
    c = schutzenberger(forest13, w(forest13, "a b l")).complex
    g = c.skeleton
    for f in c.sorted_faces():
        rel = forest13.relations[f.relation_index]
        assert read_word(g, f.base, rel.lhs) == list(f.lhs_trace)
        assert read_word(g, f.base, rel.rhs) == list(f.rhs_trace)


def test_canonicalize_is_idempotent(forest13):
    c = schutzenberger(forest13, w(forest13, "a b")).complex
    once = dict(canonicalize_faces(c).faces)
    assert canonicalize_faces(c).faces == once


def test_dot_lists_faces(bs21):
    dot = schutzenberger(bs21, w(bs21, "abb")).complex.to_dot()
    assert dot.count("// face") == 1


def _sc_ab(bs21):
    return schutzenberger(bs21, w(bs21, "abb")).complex


def test_glue_and_graft(bs21):
    block = _sc_ab(bs21)
    h = block.skeleton
    path = read_word(h, h.alpha, w(bs21, "abb"))
    # target: a bare abb path
    for glue in (glue_complex, graft_complex):
        c = _linear_complex(bs21, "abb")
        g = c.skeleton
        target = read_word(g, g.alpha, w(bs21, "abb"))
        glue(c, block, dict(zip(path, target)))
        g.fold()
        canonicalize_faces(c)
        assert c.stats()["vertices"] == 5 and c.num_faces == 1
    # grafting onto a complex that already has the face creates nothing new
    c = _sc_ab(bs21)
    g = c.skeleton
    target = read_word(g, g.alpha, w(bs21, "abb"))
    n = g.num_vertices()
    graft_complex(c, block, dict(zip(path, target)))
    assert g.num_vertices() == n and g.fold() == 0


def test_graft_reports_real_identifications():
    g = WordGraph()
    a, b = g.add_vertex(), g.add_vertex()
    g.alpha, g.beta = a, b
    g.add_edge(a, 0, b)
    g.fold()
    from adianwp.presentation import make_presentation
    p = make_presentation("ab", [])
    c = Complex(p, g)
    h = WordGraph()
    x, y, z = h.add_vertex(), h.add_vertex(), h.add_vertex()
    h.alpha, h.beta = x, z
    h.add_edge(x, 0, y)
    h.add_edge(x, 1, z)
    h.fold()
    # the a edge out of x already exists at alpha, so y is matched, not copied
    vmap = graft_complex(c, Complex(p, h), {x: a})
    assert vmap[y] == b
    assert g.fold() == 0
