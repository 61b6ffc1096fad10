import itertools

import pytest
from hypothesis import given, settings, strategies as st

from adianwp.errors import NotAdian, NotPositive
from adianwp.oracle import (BACKWARD, FORWARD, DerivationStep, derivation_ball, derivation_bfs,
                            oracle_equal_positive, replay)
from adianwp.presentation import Letter, make_presentation, word_of
from adianwp.stephen import equal_words

from conftest import bs, w


def test_one_step(bs21):
    r = derivation_bfs(bs21, w(bs21, "abb"), w(bs21, "ba"), 1)
    assert r.found and r.length == 1
    assert r.path == [(w(bs21, "ba"), DerivationStep(0, 0, FORWARD))]


def test_incompatible_words(bs21):
    r = derivation_bfs(bs21, w(bs21, "a"), w(bs21, "b"), 5)
    assert not r.found and r.length is None and r.complete


def test_inner_position(bs21):
    r = derivation_bfs(bs21, w(bs21, "aabb"), w(bs21, "aba"), 1)
    assert r.found and r.length == 1
    assert r.path[0][1] == DerivationStep(1, 0, FORWARD)


def test_zero_depth(bs21):
    assert derivation_bfs(bs21, w(bs21, "ab"), w(bs21, "ab"), 0).length == 0
    assert not derivation_bfs(bs21, w(bs21, "abb"), w(bs21, "ba"), 0).found
    with pytest.raises(ValueError):
        derivation_bfs(bs21, w(bs21, "a"), w(bs21, "a"), -1)


def test_backward_steps(bs21):
    r = derivation_bfs(bs21, w(bs21, "ba"), w(bs21, "abb"), 3)
    assert r.path[0][1].direction == BACKWARD


def test_oracle_answers(bs21, forest13):
    assert oracle_equal_positive(bs21, w(bs21, "abb"), w(bs21, "ba"), 3) == True  # noqa: E712
    r = oracle_equal_positive(bs21, w(bs21, "a"), w(bs21, "aa"), 6)
    assert r == None  # noqa: E711
    assert oracle_equal_positive(forest13, w(forest13, "a"), w(forest13, "f c g"), 1) == True  # noqa: E712


def test_oracle_errors(bs21):
    with pytest.raises(NotAdian):
        oracle_equal_positive(make_presentation("a", [("aa", "a")]), word_of([0]), word_of([0]), 2)
    with pytest.raises(NotPositive):
        oracle_equal_positive(bs21, (Letter(0, -1),), word_of([0]), 2)
    with pytest.raises(NotPositive):
        derivation_bfs(bs21, word_of([0]), (Letter(1, -1),), 2)


def test_ball(bs21):
    ball = derivation_ball(bs21, w(bs21, "abb"), 1)
    assert ball == {w(bs21, "abb"): 0, w(bs21, "ba"): 1}


def _dfs_shortest(p, u, v, depth):
    """Shortest derivation length by iterative deepening DFS, or None."""
    rules = []
    for rel in p.relations:
        a, b = tuple(x.gen for x in rel.lhs), tuple(x.gen for x in rel.rhs)
        rules += [(a, b), (b, a)]
    goal = tuple(x.gen for x in v)

    def dfs(word, left):
        if word == goal:
            return True
        if left == 0:
            return False
        for i in range(len(word)):
            for old, new in rules:
                if word[i:i + len(old)] == old and dfs(word[:i] + new + word[i + len(old):], left - 1):
                    return True
        return False

    for d in range(depth + 1):
        if dfs(tuple(x.gen for x in u), d):
            return d
    return None


pos_words = st.lists(st.integers(0, 1), max_size=5).map(word_of)


@settings(max_examples=80, deadline=None)
@given(pos_words, pos_words, st.sampled_from([(2, 1), (3, 1), (1, 2)]))
def test_shortest_and_symmetric(u, v, mn):
    p = bs(*mn)
    forward = derivation_bfs(p, u, v, 3)
    backward = derivation_bfs(p, v, u, 3)
    assert forward.found == backward.found
    assert forward.length == backward.length == _dfs_shortest(p, u, v, 3)
    if forward.found:
        assert replay(p, u, forward.path) == v


def test_replay_rejects_bad_steps(bs21):
    with pytest.raises(ValueError):
        replay(bs21, w(bs21, "ba"), [(w(bs21, "ba"), DerivationStep(0, 0, FORWARD))])


def test_agrees_with_engine_on_short_words(bs21):
    words = [word_of(g) for n in range(1, 6) for g in itertools.product([0, 1], repeat=n)]
    for u, v in itertools.combinations(words, 2):
        if oracle_equal_positive(bs21, u, v, 4) == True:  # noqa: E712
            assert equal_words(bs21, u, v) == True  # noqa: E712
        if equal_words(bs21, u, v) == False:  # noqa: E712
            assert not derivation_bfs(bs21, u, v, 4).found
