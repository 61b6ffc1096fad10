"""Birooted inverse word graphs with union-find folding.

Only positively labeled edges are stored. The inverse edge ``v --x'--> u`` of
``u --x--> v`` is implicit: reading ``x'`` from ``v`` looks in the incoming
index of ``v``. Before folding a (vertex, label) slot may hold several
targets; :meth:`WordGraph.fold` merges them until every slot holds one.
"""

from __future__ import annotations

from collections import deque

from .errors import PositiveCycle
from .presentation import Letter, Word, letter_key


class WordGraph:
    def __init__(self):
        self.parent = []
        self.size = []
        self.out = []  # vertex -> {gen: [targets]}
        self.inn = []  # vertex -> {gen: [sources]}
        self.alpha = None
        self.beta = None
        self.fold_count = 0
        self.live = 0
        self._pending = []
        self.touched = []  # endpoints of new edges and merge survivors

    # ------------------------------------------------------------ structure

    def add_vertex(self) -> int:
        v = len(self.parent)
        self.parent.append(v)
        self.size.append(1)
        self.out.append({})
        self.inn.append({})
        self.live += 1
        return v

    def add_edge(self, u: int, gen: int, v: int) -> None:
        """Add ``u --gen--> v``; use a negative letter by swapping ends."""
        u, v = self.find(u), self.find(v)
        self.out[u].setdefault(gen, []).append(v)
        self.inn[v].setdefault(gen, []).append(u)
        self._pending.append(u)
        self._pending.append(v)
        self.touched.append(u)
        self.touched.append(v)

    def add_letter_edge(self, u: int, letter: Letter, v: int) -> None:
        if letter.sign > 0:
            self.add_edge(u, letter.gen, v)
        else:
            self.add_edge(v, letter.gen, u)

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def vertices(self) -> list:
        return [v for v in range(len(self.parent)) if self.parent[v] == v]

    def num_vertices(self) -> int:
        return self.live

    def edges(self) -> list:
        """Positive edges ``(u, gen, v)`` of a folded graph, sorted."""
        out = []
        for u in self.vertices():
            for gen, targets in self.out[u].items():
                for t in {self.find(t) for t in targets}:
                    out.append((u, gen, t))
        return sorted(out)

    def num_edges(self) -> int:
        return len(self.edges())

    def copy(self) -> "WordGraph":
        g = WordGraph()
        g.parent = list(self.parent)
        g.size = list(self.size)
        g.out = [{k: list(v) for k, v in d.items()} for d in self.out]
        g.inn = [{k: list(v) for k, v in d.items()} for d in self.inn]
        g.alpha, g.beta = self.alpha, self.beta
        g.fold_count = self.fold_count
        g.live = self.live
        g._pending = list(self._pending)
        g.touched = list(self.touched)
        return g

    # -------------------------------------------------------------- folding

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if (self.size[ra], -ra) < (self.size[rb], -rb):
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        for table in (self.out, self.inn):
            dst = table[ra]
            for gen, lst in table[rb].items():
                dst.setdefault(gen, []).extend(lst)
            table[rb] = {}
        self.fold_count += 1
        self.live -= 1
        self._pending.append(ra)
        self.touched.append(ra)
        return True

    def fold(self) -> int:
        """Determinize in place; returns the number of vertex merges."""
        before = self.fold_count
        work = self._pending
        while work:
            v = self.find(work.pop())
            merged = False
            for table in (self.out, self.inn):
                slots = table[v]
                for gen in list(slots):
                    targets = sorted({self.find(t) for t in slots[gen]})
                    if len(targets) > 1:
                        self.union(targets[0], targets[1])
                        work.append(v)
                        merged = True
                        break
                    slots[gen] = targets
                if merged:
                    break
        if self.alpha is not None:
            self.alpha = self.find(self.alpha)
            self.beta = self.find(self.beta)
        return self.fold_count - before

    def is_deterministic(self) -> bool:
        for v in self.vertices():
            for table in (self.out, self.inn):
                for targets in table[v].values():
                    if len({self.find(t) for t in targets}) > 1:
                        return False
        return True

    # -------------------------------------------------------------- reading

    def step(self, v: int, letter: Letter):
        """Target of the ``letter`` edge leaving ``v`` in a deterministic graph."""
        table = self.out if letter.sign > 0 else self.inn
        targets = table[self.find(v)].get(letter.gen)
        if not targets:
            return None
        return self.find(targets[0])

    def step_gen(self, v: int, gen: int):
        targets = self.out[v].get(gen)
        if not targets:
            return None
        return self.find(targets[0])

    def read_gens(self, v: int, gens) -> list | None:
        """Trace of a positive word given as generator ids, or None. ``v`` must
        be canonical."""
        trace = [v]
        out = self.out
        find = self.find
        for gen in gens:
            targets = out[v].get(gen)
            if not targets:
                return None
            v = find(targets[0])
            trace.append(v)
        return trace

    def end_gens(self, v: int, gens):
        out = self.out
        find = self.find
        for gen in gens:
            targets = out[v].get(gen)
            if not targets:
                return None
            v = find(targets[0])
        return v

    def letters_at(self, v: int) -> list:
        """Outgoing letters at ``v``, in the canonical letter order."""
        v = self.find(v)
        letters = [Letter(g, 1) for g, t in self.out[v].items() if t]
        letters += [Letter(g, -1) for g, t in self.inn[v].items() if t]
        return sorted(letters, key=letter_key)


# ---------------------------------------------------------------- operations


def linear_graph(w: Word) -> WordGraph:
    g = WordGraph()
    prev = g.alpha = g.add_vertex()
    for letter in w:
        nxt = g.add_vertex()
        g.add_letter_edge(prev, letter, nxt)
        prev = nxt
    g.beta = prev
    return g


def fold_to_deterministic(g: WordGraph) -> WordGraph:
    h = g.copy()
    h._pending = h.vertices()
    h.fold()
    return h


def munn_tree(w: Word) -> WordGraph:
    return fold_to_deterministic(linear_graph(w))


def read_word(g: WordGraph, start: int, w: Word):
    """The list of vertices visited reading ``w`` from ``start``, or None."""
    v = g.find(start)
    trace = [v]
    for letter in w:
        v = g.step(v, letter)
        if v is None:
            return None
        trace.append(v)
    return trace


def accepts(g: WordGraph, w: Word) -> bool:
    trace = read_word(g, g.alpha, w)
    return trace is not None and trace[-1] == g.find(g.beta)


def canonical_form(g: WordGraph):
    """Breadth-first renumbering from alpha, exploring letters in canonical
    order. Returns ``(order, form)`` where ``order`` lists canonical vertex ids
    by new number and ``form`` is a hashable description of the birooted graph.
    """
    alpha = g.find(g.alpha)
    number = {alpha: 0}
    order = [alpha]
    queue = deque([alpha])
    while queue:
        v = queue.popleft()
        for letter in g.letters_at(v):
            t = g.step(v, letter)
            if t not in number:
                number[t] = len(order)
                order.append(t)
                queue.append(t)
    edges = []
    for v in order:
        for gen, targets in sorted(g.out[v].items()):
            if targets:
                edges.append((number[v], gen, number[g.find(targets[0])]))
    form = (len(order), number.get(g.find(g.beta)), tuple(edges))
    return order, form


def is_alpha_connected(g: WordGraph) -> bool:
    order, _ = canonical_form(g)
    return len(order) == g.num_vertices()


def birooted_isomorphic(g1: WordGraph, g2: WordGraph) -> bool:
    if g1.num_vertices() != g2.num_vertices():
        return False
    return canonical_form(g1)[1] == canonical_form(g2)[1]


def find_positive_cycle(g: WordGraph):
    """A directed cycle of positive edges as a vertex list (first vertex
    repeated at the end), or None. Iterative three-colour depth-first search."""
    white, grey, black = 0, 1, 2
    colour = {v: white for v in g.vertices()}
    for root in sorted(colour):
        if colour[root] != white:
            continue
        colour[root] = grey
        path = [root]
        stack = [iter(_successors(g, root))]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                colour[path.pop()] = black
                stack.pop()
                continue
            if colour[nxt] == grey:
                return path[path.index(nxt):] + [nxt]
            if colour[nxt] == white:
                colour[nxt] = grey
                path.append(nxt)
                stack.append(iter(_successors(g, nxt)))
    return None


def _successors(g, v):
    return [g.find(t[0]) for gen, t in sorted(g.out[v].items()) if t]


def maximal_positive_paths(g: WordGraph, start: int) -> list:
    """All positive paths from ``start`` that cannot be extended, as
    ``(word, end_vertex)`` pairs in lexicographic order of generator ids."""
    start = g.find(start)
    cycle = find_positive_cycle(g)
    if cycle is not None:
        raise PositiveCycle(cycle)
    return [(tuple(Letter(gen, 1) for gen in gens), trace[-1])
            for gens, trace in positive_paths_from(g, start)]


def positive_paths_from(g: WordGraph, start: int):
    """Yield ``(gens, trace)`` for every maximal positive path from ``start``.
    The positive subgraph must be acyclic."""
    stack = [(start, (), (start,))]
    while stack:
        v, gens, trace = stack.pop()
        nexts = [(gen, g.find(t[0])) for gen, t in sorted(g.out[v].items()) if t]
        if not nexts:
            yield gens, list(trace)
            continue
        for gen, t in reversed(nexts):
            stack.append((t, gens + (gen,), trace + (t,)))


def to_dot(g: WordGraph, names, faces=None, title="G") -> str:
    """DOT text with vertices numbered by the canonical breadth-first order.

    ``faces`` is an optional list of ``(relation_index, boundary_vertices)``
    rendered as comment lines.
    """
    order, _ = canonical_form(g)
    number = {v: i for i, v in enumerate(order)}
    alpha, beta = g.find(g.alpha), g.find(g.beta)
    lines = [f"digraph {title} {{", "  rankdir=LR;"]
    for v in order:
        attrs = []
        if v == alpha:
            attrs.append("shape=doublecircle")
        if v == beta:
            attrs.append("style=bold")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {number[v]}{suffix};")
    for u, gen, v in sorted((number[u], gen, number[v]) for u, gen, v in g.edges()
                            if u in number):
        lines.append(f'  {u} -> {v} [label="{names[gen]}"];')
    for rel, boundary in faces or []:
        ids = " ".join(str(number.get(g.find(x), "?")) for x in boundary)
        lines.append(f"  // face relation={rel} boundary={ids}")
    lines.append("}")
    return "\n".join(lines) + "\n"
