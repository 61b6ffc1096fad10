import random

import pytest
from hypothesis import given, strategies as st

from adianwp.errors import (DuplicateGenerator, EmptyRelationSide, InverseInRelation,
                            MalformedLine, UnknownGenerator, WordSyntaxError)
from adianwp.presentation import (Letter, build_bisided, bisided_cycle, check_star, classify,
                                  is_adian, is_forest, make_presentation, parse_presentation,
                                  parse_word, side_graph, word_of)

from conftest import bs, w


def test_parse_basic():
    p = parse_presentation("generators: a b\nrelation: a b b = b a")
    assert p.names == ("a", "b")
    assert len(p.relations) == 1
    assert p.relations[0].lhs == word_of([0, 1, 1])
    assert p.relations[0].rhs == word_of([1, 0])


def test_parse_comments_and_blank_lines():
    text = "# header\n\ngenerators: x y   # two\nrelation: x = y y # tail\n"
    p = parse_presentation(text)
    assert p.names == ("x", "y")
    assert p.relations[0].rhs == word_of([1, 1])


@pytest.mark.parametrize("text, exc, line", [
    ("generators: a\nrelation: a = ", EmptyRelationSide, 2),
    ("generators: a\nrelation: a b = a", UnknownGenerator, 2),
    ("generators: a a", DuplicateGenerator, 1),
    ("generators: a b\nrelation: a b' = b", InverseInRelation, 2),
    ("generators: a\nfoo bar", MalformedLine, 2),
    ("relation: a = a", MalformedLine, 1),
    ("generators: a\nrelation: a = a = a", MalformedLine, 2),
])
def test_parse_errors_carry_line(text, exc, line):
    with pytest.raises(exc) as info:
        parse_presentation(text)
    assert info.value.line == line


def test_unknown_generator_name():
    with pytest.raises(UnknownGenerator) as info:
        parse_presentation("generators: a\nrelation: a b = a")
    assert info.value.name == "b"


def test_parse_word_forms(bs21):
    expected = (Letter(0, 1), Letter(1, -1), Letter(1, 1))
    assert parse_word(bs21, "a b' b") == expected
    assert parse_word(bs21, "ab'b") == expected
    assert parse_word(bs21, "a.b'.b") == expected
    assert parse_word(bs21, "") == ()


def test_parse_word_errors(bs21):
    with pytest.raises(UnknownGenerator):
        parse_word(bs21, "a c")
    with pytest.raises(WordSyntaxError):
        parse_word(bs21, "'a")
    with pytest.raises(WordSyntaxError):
        parse_word(bs21, "a ' b")


def test_multichar_names_need_separators():
    p = make_presentation(["xx", "y"], [("xx y", "y xx")])
    assert parse_word(p, "xx y'") == (Letter(0, 1), Letter(1, -1))
    with pytest.raises(UnknownGenerator):
        parse_word(p, "xxy")


def test_side_graphs(bs21):
    assert sorted(side_graph(bs21, "left").edges[0]) == [0, 1]
    assert sorted(side_graph(bs21, "right").edges[0]) == [0, 1]
    loop = make_presentation("a", [("aa", "a")])
    assert side_graph(loop, "left").edges[0] == (0, 0)


def test_is_adian_examples(aba_b, bs21):
    assert is_adian(aba_b)
    assert is_adian(bs21)
    assert not is_adian(make_presentation("a", [("aa", "a")]))
    # parallel edges in the left graph
    assert not is_adian(make_presentation("abc", [("ab", "ba"), ("ac", "bc")]))
    # a triangle in the right graph
    assert not is_adian(make_presentation("abcxyz", [("xa", "yb"), ("zb", "xc"), ("yc", "za")]))


def test_check_star(aba_b, bs21, forest13, cycle11):
    holds, witness = check_star(aba_b)
    assert not holds
    holds, witness = check_star(bs21)
    assert not holds
    assert witness.kind == "prefix-suffix"
    assert witness.piece == w(bs21, "a")
    assert witness.word == w(bs21, "abb")
    assert witness.other == w(bs21, "ba")
    assert check_star(forest13) == (True, None)
    assert check_star(cycle11) == (True, None)


def _edge_set(p, bsg):
    return sorted((p.compact(e.src), p.compact(e.dst), p.compact(e.x), p.compact(e.y), e.kind)
                  for e in bsg.edges)


def test_bisided_aba_b(aba_b):
    edges = _edge_set(aba_b, build_bisided(aba_b))
    assert ("b", "b", "a", "a", "rel") in edges
    assert ("aba", "b", "a", "a", "subword") in edges
    assert not is_forest(build_bisided(aba_b))


def test_bisided_cycle11(cycle11):
    p = cycle11
    names = {(e[0], e[1], e[4]) for e in _edge_set(p, build_bisided(p))}
    assert ("a", "b", "rel") in names
    assert ("a", "c", "rel") in names
    assert ("b", "c", "rel") in names
    assert ("c", "de", "sym") in names
    assert bisided_cycle(build_bisided(p)) is not None


def test_bisided_forest13(forest13):
    p = forest13
    bsg = build_bisided(p)
    assert is_forest(bsg)
    edges = {(p.compact(e.src), p.compact(e.dst), e.kind) for e in bsg.edges}
    assert ("a", "c", "rel") in edges
    assert ("fcg", "c", "subword") in edges
    assert ("b", "c", "rel") in edges
    assert ("hci", "c", "subword") in edges
    assert ("c", "de", "sym") in edges
    assert ("l", "jmmk", "sym") in edges


@pytest.mark.parametrize("rel, expected", [
    (("abb", "ba"), "AdianBsFamily(2,1)"),
    (("ba", "abb"), "AdianBsFamily(2,1)"),
    (("baa", "ab"), "AdianBsFamily(2,1)"),
    (("ab", "bba"), "AdianBsFamily(1,2)"),
    (("abbb", "bba"), "AdianBsFamily(3,2)"),
    (("abb", "bba"), "AdianBsFamily(2,2)"),
    (("aba", "b"), "AdianGeneric"),
    (("aa", "a"), "NonAdian"),
])
def test_classify_two_generators(rel, expected):
    assert str(classify(make_presentation("ab", [rel]))) == expected


def test_classify_sample_presentations(forest13, cycle11, aba_b):
    assert str(classify(forest13)) == "AdianStarForest"
    assert str(classify(cycle11)) == "AdianGeneric"
    assert str(classify(aba_b)) == "AdianGeneric"


def test_side_graph_edge_count(forest13, cycle11):
    for p in (forest13, cycle11):
        for side in ("left", "right"):
            assert len(side_graph(p, side).edges) == len(p.relations)


def test_classify_ignores_generator_order():
    p = make_presentation("ab", [("abb", "ba")])
    q = make_presentation("ba", [("abb", "ba")])
    assert classify(p) == classify(q)


def _occurrences(word, sub):
    return [i for i in range(len(word) - len(sub) + 1) if word[i:i + len(sub)] == sub]


@given(st.lists(st.integers(0, 12), max_size=14))
def test_star_means_no_partial_overlaps(gens):
    from conftest import load
    p = load("forest13.pres")
    word = word_of(gens)
    spans = [(i, i + len(r)) for r in p.r_words() for i in _occurrences(word, r)]
    for s1, e1 in spans:
        for s2, e2 in spans:
            disjoint = e1 <= s2 or e2 <= s1
            nested = (s1 <= s2 and e2 <= e1) or (s2 <= s1 and e1 <= e2)
            assert disjoint or nested


def test_adian_has_no_equal_prefix_letters():
    rng = random.Random(3)
    for _ in range(200):
        rels = []
        for _ in range(rng.randint(1, 3)):
            rels.append(("".join(rng.choice("abc") for _ in range(rng.randint(1, 3))),
                         "".join(rng.choice("abc") for _ in range(rng.randint(1, 3)))))
        p = make_presentation("abc", rels)
        if is_adian(p):
            for r in p.relations:
                assert r.lhs[0] != r.rhs[0] and r.lhs[-1] != r.rhs[-1]


def test_bs_helper_matches_files(bs21):
    assert bs(2, 1).relations == bs21.relations
