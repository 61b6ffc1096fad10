"""Stephen's procedure: P-expansions, budgeted closure and the word problem
queries built on it."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .complex import Complex, Face, attach_face, canonicalize_faces, graft_complex, sew_path
from .errors import NotAdian, NotApplicable
from .presentation import Presentation, Word, gens_of, is_adian, word_of
from .wordgraph import (
    WordGraph,
    accepts,
    birooted_isomorphic,
    munn_tree,
)

CLOSED = "Closed"
EXHAUSTED = "Exhausted"


@dataclass(frozen=True)
class Budget:
    max_vertices: int = 100_000
    max_rounds: int = 10_000

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_rounds < 1:
            raise ValueError("budget limits must be positive")


@dataclass
class ClosureOutcome:
    status: str
    complex: Complex
    rounds_used: int

    @property
    def closed(self) -> bool:
        return self.status == CLOSED

    @property
    def vertices(self) -> int:
        return self.complex.skeleton.num_vertices()

    @property
    def fold_merges(self) -> int:
        return self.complex.skeleton.fold_count

    def stats(self) -> dict:
        return {"status": self.status, "rounds": self.rounds_used, **self.complex.stats()}


@dataclass(frozen=True, eq=False)
class TriBool:
    """Three-valued answer. Compares equal to True/False/None and to other
    TriBools by value; ``reason`` explains an Unknown."""

    value: Optional[bool]
    reason: str = ""
    outcomes: tuple = field(default=(), repr=False)

    def __eq__(self, other):
        if isinstance(other, TriBool):
            return self.value is other.value
        if other is None or isinstance(other, bool):
            return self.value is other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        raise TypeError("TriBool has no truth value; compare with True/False/None")

    def __str__(self):
        return {True: "True", False: "False", None: "Unknown"}[self.value]


TRUE = TriBool(True)
FALSE = TriBool(False)


def unknown(reason: str) -> TriBool:
    return TriBool(None, reason)


# ------------------------------------------------------------------ expansion


def _relation_gens(p: Presentation):
    return [(gens_of(r.lhs), gens_of(r.rhs)) for r in p.relations]


def find_sites(c: Complex, starts=None):
    """Scan a deterministic complex for relation instances.

    Returns ``(expansions, saturations)``: expansions are
    ``(relation_index, v1, v2, missing)`` where one side reads v1 -> v2 and
    side ``missing`` (0 = lhs, 1 = rhs) does not; saturations are
    ``(relation_index, v1, v2)`` where both sides read v1 -> v2.
    Both lists are sorted lexicographically. ``starts`` limits the scan to
    the given canonical start vertices.
    """
    g = c.skeleton
    rels = _relation_gens(c.presentation)
    expansions, saturations = [], []
    for v in (g.vertices() if starts is None else starts):
        for i, (lhs, rhs) in enumerate(rels):
            el, er = g.end_gens(v, lhs), g.end_gens(v, rhs)
            if el is None and er is None:
                continue
            if el is not None and el == er:
                saturations.append((i, v, el))
                continue
            if el is not None:
                expansions.append((i, v, el, 1))
            if er is not None:
                expansions.append((i, v, er, 0))
    expansions.sort()
    saturations.sort()
    return expansions, saturations


def _touched_starts(c: Complex) -> list:
    """Start vertices whose relation readings may have changed since the
    last call: everything within (longest side - 1) positive steps before a
    vertex touched by a new edge or a merge."""
    g = c.skeleton
    reach = max((len(s) for r in c.presentation.relations for s in r.sides()), default=1) - 1
    seen = {g.find(v) for v in g.touched}
    g.touched = []
    frontier = list(seen)
    for _ in range(reach):
        nxt = []
        for v in frontier:
            for sources in g.inn[v].values():
                for u in sources:
                    u = g.find(u)
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
        frontier = nxt
    return sorted(seen)


def elementary_expansion(c: Complex, relation_index: int, v1: int, v2: int) -> Complex:
    """Glue the missing side of one relation instance (no folding)."""
    g = c.skeleton
    v1, v2 = g.find(v1), g.find(v2)
    lhs, rhs = _relation_gens(c.presentation)[relation_index]
    readable = [g.end_gens(v1, side) == v2 for side in (lhs, rhs)]
    if readable[0] == readable[1]:
        raise NotApplicable(f"relation {relation_index} at ({v1}, {v2}): "
                            + ("both sides readable" if readable[0] else "neither side readable"))
    return attach_face(c, relation_index, v1, v2)


def _expand_round(c: Complex, sites=None) -> int:
    """One full P-expansion in place: glue every site of the snapshot, then
    fold and canonicalize faces. Returns the number of sites glued."""
    g = c.skeleton
    rels = _relation_gens(c.presentation)
    expansions, saturations = find_sites(c) if sites is None else sites
    sewn = {}
    for i, v1, v2 in saturations:
        lhs, rhs = rels[i]
        c.add_face(Face(i, v1, tuple(g.read_gens(v1, lhs)), tuple(g.read_gens(v1, rhs))))
    for i, v1, v2, missing in expansions:
        sides = rels[i]
        present = g.read_gens(v1, sides[1 - missing])
        key = (sides[missing], v1, v2)
        # one relation side is sewn at most once per site and round
        if key not in sewn:
            sewn[key] = sew_path(g, v1, v2, sides[missing])
        traces = [None, None]
        traces[missing] = tuple(sewn[key])
        traces[1 - missing] = tuple(present)
        c.add_face(Face(i, v1, traces[0], traces[1]))
    if g.fold():
        canonicalize_faces(c)
    return len(expansions)


def full_p_expansion(c: Complex) -> Complex:
    c = c.copy()
    _expand_round(c)
    return c


def _record_saturations(c: Complex) -> None:
    g = c.skeleton
    rels = _relation_gens(c.presentation)
    for i, v1, v2 in find_sites(c)[1]:
        lhs, rhs = rels[i]
        c.add_face(Face(i, v1, tuple(g.read_gens(v1, lhs)), tuple(g.read_gens(v1, rhs))))


def close(c: Complex, budget: Budget = Budget(),
          on_round: Optional[Callable[[int, Complex], None]] = None) -> ClosureOutcome:
    """Iterate full P-expansions until closed or the budget is spent.

    The vertex budget is checked after each round, so at least one round runs
    whenever an expansion applies. ``on_round(n, complex)`` is called with
    the initial complex (n = 0) and after every round.
    """
    c = c.copy()
    g = c.skeleton
    if not g.is_deterministic():
        g._pending = g.vertices()
        g.fold()
        canonicalize_faces(c)
    rounds = 0
    if on_round:
        on_round(0, c)
    # every site of a snapshot is expanded, so after the first full scan new
    # sites can only start near vertices touched by the last round
    g.touched = []
    sites = find_sites(c)
    while True:
        if not sites[0]:
            _record_saturations(c)
            return ClosureOutcome(CLOSED, c, rounds)
        if rounds >= budget.max_rounds:
            return ClosureOutcome(EXHAUSTED, c, rounds)
        _expand_round(c, sites)
        rounds += 1
        if on_round:
            on_round(rounds, c)
        sites = find_sites(c, _touched_starts(c))
        if g.num_vertices() > budget.max_vertices:
            if not sites[0]:
                _record_saturations(c)
                return ClosureOutcome(CLOSED, c, rounds)
            return ClosureOutcome(EXHAUSTED, c, rounds)


def initial_complex(p: Presentation, w: Word) -> Complex:
    return Complex(p, munn_tree(w))


def schutzenberger(p: Presentation, w: Word, budget: Budget = Budget(),
                   on_round=None) -> ClosureOutcome:
    return close(initial_complex(p, w), budget, on_round)


# -------------------------------------------------------------------- queries


def leq_verdict(outcome: ClosureOutcome, v: Word) -> TriBool:
    if accepts(outcome.complex.skeleton, v):
        return TriBool(True, outcomes=(outcome,))
    if outcome.closed:
        return TriBool(False, outcomes=(outcome,))
    return TriBool(None, "closure budget exhausted before the word was accepted", (outcome,))


def natural_leq(p: Presentation, u: Word, v: Word, budget: Budget = Budget()) -> TriBool:
    """Is ``v >= u`` in the natural partial order, i.e. ``v`` in L(u)?"""
    return leq_verdict(schutzenberger(p, u, budget), v)


def equal_words(p: Presentation, u: Word, v: Word, budget: Budget = Budget()) -> TriBool:
    ou = schutzenberger(p, u, budget)
    ov = schutzenberger(p, v, budget)
    return decide_equal(ou, ov, u, v)


def decide_equal(ou: ClosureOutcome, ov: ClosureOutcome, u: Word, v: Word) -> TriBool:
    """Combine two closures into an equality verdict.

    Mutual acceptance is sound even on approximations; a rejection only
    counts when the rejecting side is closed.
    """
    v_in_u = accepts(ou.complex.skeleton, v)
    u_in_v = accepts(ov.complex.skeleton, u)
    if ou.closed and ov.closed:
        iso = birooted_isomorphic(ou.complex.skeleton, ov.complex.skeleton)
        if iso != (v_in_u and u_in_v):
            raise RuntimeError("closed complexes disagree: acceptance and isomorphism differ")
    if v_in_u and u_in_v:
        return TriBool(True, outcomes=(ou, ov))
    if (ou.closed and not v_in_u) or (ov.closed and not u_in_v):
        return TriBool(False, outcomes=(ou, ov))
    return TriBool(None, "closure budget exhausted on a needed side", (ou, ov))


def is_idempotent(p: Presentation, w: Word, budget: Budget = Budget()) -> TriBool:
    return equal_words(p, w, w + w, budget)


def equals_identity_in_group(p: Presentation, w: Word, budget: Budget = Budget()) -> TriBool:
    """Decide ``w = 1`` in the group of an Adian presentation, which holds
    exactly when ``w`` is idempotent in the inverse monoid."""
    if not is_adian(p):
        raise NotAdian(f"{p} is not an Adian presentation")
    return is_idempotent(p, w, budget)


# ------------------------------------------------- saturation by positive words


class _PositiveClosures:
    def __init__(self, p, budget):
        self.p = p
        self.budget = budget
        self.cache = {}

    def get(self, gens) -> ClosureOutcome:
        if gens not in self.cache:
            self.cache[gens] = schutzenberger(self.p, word_of(gens), self.budget)
        return self.cache[gens]


def _back_paths(g: WordGraph, v: int):
    """Maximal positive paths ending at ``v``, as (gens, trace)."""
    stack = [(v, (), (v,))]
    while stack:
        x, gens, trace = stack.pop()
        preds = [(gen, g.find(s[0])) for gen, s in sorted(g.inn[x].items()) if s]
        if not preds:
            yield gens, trace
            continue
        for gen, s in preds:
            stack.append((s, (gen,) + gens, (s,) + trace))


def _forward_paths(g: WordGraph, v: int):
    stack = [(v, (), (v,))]
    while stack:
        x, gens, trace = stack.pop()
        succs = [(gen, g.find(t[0])) for gen, t in sorted(g.out[x].items()) if t]
        if not succs:
            yield gens, trace
            continue
        for gen, t in succs:
            stack.append((t, gens + (gen,), trace + (t,)))


def _paths_through(g: WordGraph, u: int, gen: Optional[int], v: int):
    """Maximal positive paths through edge ``u --gen--> v`` (or through the
    vertex ``u`` when ``gen`` is None)."""
    forward = list(_forward_paths(g, v))
    for bg, bt in _back_paths(g, u):
        for fg, ft in forward:
            if gen is None:
                yield bg + fg, bt + ft[1:]
            else:
                yield bg + (gen,) + fg, bt + ft


class _SaturationState:
    """Bookkeeping for the positive-path saturation: which part of the
    complex was last known to be closed."""

    def __init__(self, c: Complex):
        self.c = c
        self.mark_closed()

    def mark_closed(self):
        g = self.c.skeleton
        self.closed_vertices = g.vertices()
        self.closed_edges = g.edges()
        self.saturated = set()

    def candidates(self):
        g = self.c.skeleton
        find = g.find
        old_edges = {(find(u), gen, find(v)) for u, gen, v in self.closed_edges}
        classes = {}
        for v in self.closed_vertices:
            classes.setdefault(find(v), []).append(v)
        dirty = sorted(r for r, members in classes.items() if len(members) > 1)
        self.saturated = {tuple(find(v) for v in key) for key in self.saturated}
        found = {}
        for u, gen, v in g.edges():
            if (u, gen, v) not in old_edges:
                for gens, trace in _paths_through(g, u, gen, v):
                    found.setdefault(trace, gens)
        for d in dirty:
            for gens, trace in _paths_through(g, d, None, d):
                found.setdefault(trace, gens)
        return sorted((gens, trace) for trace, gens in found.items()
                      if trace not in self.saturated and len(trace) > 1)


def close_by_positive_saturation(p: Presentation, w: Word,
                                 budget: Budget = Budget()) -> ClosureOutcome:
    """Closure of ``w`` built from closures of positive words.

    The Munn tree of ``w`` is peeled leaf by leaf; the edges are then added
    back one at a time onto a closed complex, and each time every new maximal
    positive path gets the closed complex of its label glued along it, with
    folding, until no new maximal positive path appears.
    """
    if not is_adian(p):
        raise NotAdian(f"{p} is not an Adian presentation")
    tree = munn_tree(w)
    core, steps = _peel_order(tree)
    g = WordGraph()
    c = Complex(p, g)
    image = {core: g.add_vertex()}
    closures = _PositiveClosures(p, budget)
    sides = [gens_of(r) for r in p.r_words()]
    state = _SaturationState(c)
    rounds = 0
    pending = list(reversed(steps))
    while pending:
        _add_tree_edge(g, image, pending.pop(0))
        g.fold()
        canonicalize_faces(c)
        while True:
            found = state.candidates()
            # a label with no relation side inside closes to the bare path
            todo = [(gens, trace) for gens, trace in found if _has_side(gens, sides)]
            state.saturated |= {trace for _, trace in found}
            if not todo:
                break
            if rounds >= budget.max_rounds:
                return _finish(c, tree, image, pending, EXHAUSTED, rounds)
            rounds += 1
            for gens, trace in todo:
                outcome = closures.get(gens)
                if not outcome.closed:
                    return _finish(c, tree, image, pending, EXHAUSTED, rounds)
                h = outcome.complex.skeleton
                src_trace = h.read_gens(h.find(h.alpha), gens)
                graft_complex(c, outcome.complex, dict(zip(src_trace, trace)))
            g.fold()
            canonicalize_faces(c)
            if g.num_vertices() > budget.max_vertices:
                return _finish(c, tree, image, pending, EXHAUSTED, rounds)
        state.mark_closed()
    return _finish(c, tree, image, pending, CLOSED, rounds)


def _has_side(gens, sides) -> bool:
    return any(gens[i:i + len(r)] == r for r in sides for i in range(len(gens) - len(r) + 1))


def _peel_order(tree: WordGraph):
    """Remove leaves one at a time (largest vertex id first). Returns the last
    remaining vertex and the removal steps ``(anchor, gen, leaf, leaf_is_head)``."""
    edges = tree.edges()
    incident = {v: [] for v in tree.vertices()}
    for e in edges:
        incident[e[0]].append(e)
        incident[e[2]].append(e)
    alive = set(edges)
    steps = []
    while alive:
        leaf = max(v for v, es in incident.items() if len([e for e in es if e in alive]) == 1)
        (u, gen, v), = [e for e in incident[leaf] if e in alive]
        alive.discard((u, gen, v))
        steps.append((u, gen, v, True) if v == leaf else (v, gen, u, False))
        del incident[leaf]
    core = next(iter(incident)) if incident else tree.find(tree.alpha)
    return core, steps


def _add_tree_edge(g: WordGraph, image: dict, step) -> None:
    anchor, gen, leaf, leaf_is_head = step
    x = image[anchor]
    image[leaf] = lam = g.add_vertex()
    if leaf_is_head:
        g.add_edge(x, gen, lam)
    else:
        g.add_edge(lam, gen, x)


def _finish(c, tree, image, pending, status, rounds) -> ClosureOutcome:
    g = c.skeleton
    for step in pending:
        _add_tree_edge(g, image, step)
    g.fold()
    canonicalize_faces(c)
    g.alpha = g.find(image[tree.find(tree.alpha)])
    g.beta = g.find(image[tree.find(tree.beta)])
    if status == CLOSED:
        if find_sites(c)[0]:
            raise RuntimeError("positive saturation stopped on a complex that is not closed")
        _record_saturations(c)
    return ClosureOutcome(status, c, rounds)
