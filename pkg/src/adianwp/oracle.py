"""Brute-force equality of positive words by breadth-first search over
rewrites that replace one side of a relation by the other.

This is independent of the graph machinery and serves as ground truth in
tests. Search is bounded, so it can confirm equality but never refute it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import NotAdian, NotPositive
from .presentation import Presentation, Word, gens_of, is_adian, is_positive, word_of
from .stephen import TriBool, unknown

FORWARD = "lhs->rhs"
BACKWARD = "rhs->lhs"


@dataclass(frozen=True)
class DerivationStep:
    position: int
    relation_index: int
    direction: str  # FORWARD or BACKWARD


@dataclass
class DerivationResult:
    found: bool
    length: int | None = None
    path: list = field(default_factory=list)  # (word reached, step taken)
    # True when every word reachable from u was visited within the bound,
    # i.e. the whole class of u is known.
    complete: bool = False


def _rules(p: Presentation):
    rules = []
    for i, rel in enumerate(p.relations):
        lhs, rhs = gens_of(rel.lhs), gens_of(rel.rhs)
        rules.append((lhs, rhs, i, FORWARD))
        rules.append((rhs, lhs, i, BACKWARD))
    return rules


def _rewrites(word: tuple, rules):
    """One-step rewrites of ``word`` in a fixed order: by position, then by
    relation, then forward before backward."""
    for pos in range(len(word)):
        for old, new, i, direction in rules:
            if word[pos:pos + len(old)] == old:
                yield word[:pos] + new + word[pos + len(old):], DerivationStep(pos, i, direction)


def _check_positive(*words):
    for w in words:
        if not is_positive(w):
            raise NotPositive("the oracle only handles positive words")


def derivation_bfs(p: Presentation, u: Word, v: Word, max_depth: int) -> DerivationResult:
    """Shortest rewrite sequence from ``u`` to ``v`` using at most
    ``max_depth`` steps."""
    _check_positive(u, v)
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    start, goal = gens_of(u), gens_of(v)
    rules = _rules(p)
    parent = {start: None}
    frontier = [start]
    depth = 0
    while start != goal and frontier and depth < max_depth:
        depth += 1
        nxt = []
        for word in frontier:
            for new, step in _rewrites(word, rules):
                if new in parent:
                    continue
                parent[new] = (word, step)
                if new == goal:
                    return _result(parent, goal)
                nxt.append(new)
        frontier = nxt
    if start == goal:
        return DerivationResult(True, 0, [], False)
    return DerivationResult(False, None, [], not frontier)


def _result(parent, goal) -> DerivationResult:
    path = []
    word = goal
    while parent[word] is not None:
        prev, step = parent[word]
        path.append((word_of(word), step))
        word = prev
    path.reverse()
    return DerivationResult(True, len(path), path)


def replay(p: Presentation, u: Word, path) -> Word:
    """Apply the steps of a derivation path to ``u``; checks each step."""
    word = gens_of(u)
    for expected, step in path:
        rel = p.relations[step.relation_index]
        old, new = (rel.lhs, rel.rhs) if step.direction == FORWARD else (rel.rhs, rel.lhs)
        old, new = gens_of(old), gens_of(new)
        pos = step.position
        if word[pos:pos + len(old)] != old:
            raise ValueError(f"step {step} does not apply")
        word = word[:pos] + new + word[pos + len(old):]
        if word != gens_of(expected):
            raise ValueError("path records a different word")
    return word_of(word)


def derivation_ball(p: Presentation, u: Word, depth: int) -> dict:
    """Every word reachable from ``u`` in at most ``depth`` steps, mapped to
    its distance. Insertion order is breadth-first."""
    _check_positive(u)
    rules = _rules(p)
    start = gens_of(u)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        word = queue.popleft()
        if dist[word] == depth:
            continue
        for new, _ in _rewrites(word, rules):
            if new not in dist:
                dist[new] = dist[word] + 1
                queue.append(new)
    return {word_of(w): d for w, d in dist.items()}


def oracle_equal_positive(p: Presentation, u: Word, v: Word, max_depth: int) -> TriBool:
    if not is_adian(p):
        raise NotAdian("presentation is not Adian")
    _check_positive(u, v)
    r = derivation_bfs(p, u, v, max_depth)
    if r.found:
        return TriBool(True, f"derivation of length {r.length}")
    if r.complete:
        return unknown("no derivation; every reachable word was visited")
    return unknown(f"no derivation within {max_depth} steps")


__all__ = [
    "DerivationStep", "DerivationResult", "derivation_bfs", "derivation_ball",
    "oracle_equal_positive", "replay", "FORWARD", "BACKWARD",
]
