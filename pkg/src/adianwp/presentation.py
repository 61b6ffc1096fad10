"""Positive presentations: parsing, words, side graphs, condition (*) and
the bi-sided graph, plus the routing classification used by the CLI.

A word is a plain tuple of :class:`Letter`; the empty tuple is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .errors import (
    DuplicateGenerator,
    EmptyRelationSide,
    InverseInRelation,
    MalformedLine,
    UnknownGenerator,
    WordSyntaxError,
)

_BAD_NAME_CHARS = set("'=#")


class Letter(NamedTuple):
    gen: int
    sign: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)


Word = tuple  # tuple[Letter, ...]


def letter_key(letter: Letter):
    """Total order on letters: by generator id, then +1 before -1."""
    return (letter.gen, letter.sign < 0)


def word_of(gens) -> Word:
    """Positive word from a sequence of generator ids."""
    return tuple(Letter(g, 1) for g in gens)


def inverse_word(w: Word) -> Word:
    return tuple(x.inverse() for x in reversed(w))


def is_positive(w: Word) -> bool:
    return all(x.sign == 1 for x in w)


def gens_of(w: Word) -> tuple:
    return tuple(x.gen for x in w)


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word

    def sides(self):
        return (self.lhs, self.rhs)


@dataclass(frozen=True)
class Presentation:
    names: tuple  # generator names, index = generator id
    relations: tuple = ()
    source: Optional[str] = field(default=None, compare=False)

    @property
    def rank(self) -> int:
        return len(self.names)

    def gen_id(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownGenerator(name) from None

    def r_words(self) -> list:
        """Distinct relation sides, in order of first appearance."""
        seen = {}
        for rel in self.relations:
            for side in rel.sides():
                seen.setdefault(side, None)
        return list(seen)

    def format_word(self, w: Word, sep: str = " ") -> str:
        if not w:
            return "1"
        if sep == "" and not all(len(n) == 1 for n in self.names):
            sep = " "
        return sep.join(self.names[x.gen] + ("'" if x.sign < 0 else "") for x in w)

    def compact(self, w: Word) -> str:
        return self.format_word(w, sep="")

    def __str__(self):
        rels = ", ".join(
            f"{self.compact(r.lhs)}={self.compact(r.rhs)}" for r in self.relations
        )
        return f"<{','.join(self.names)}|{rels}>"


def make_presentation(names, relations) -> Presentation:
    """Build a presentation from names and (lhs, rhs) pairs of name strings.

    Sides may be given as whitespace-separated tokens or, for single-character
    alphabets, as compact strings: ``make_presentation("ab", [("abb", "ba")])``.
    """
    names = tuple(names)
    _check_names(names)
    p = Presentation(names)
    rels = []
    for lhs, rhs in relations:
        rels.append(Relation(_relation_side(p, lhs, None), _relation_side(p, rhs, None)))
    return Presentation(names, tuple(rels))


def _check_names(names, line=None):
    seen = set()
    for name in names:
        if not name or any(c in _BAD_NAME_CHARS or c.isspace() for c in name):
            raise MalformedLine(f"invalid generator name {name!r}", line)
        if name in seen:
            raise DuplicateGenerator(f"duplicate generator {name!r}", line)
        seen.add(name)


def _relation_side(p: Presentation, text: str, line) -> Word:
    if not text.strip():
        raise EmptyRelationSide("empty relation side", line)
    w = parse_word(p, text, line=line)
    if not is_positive(w):
        raise InverseInRelation("inverse letter inside a relation", line)
    return w


def parse_presentation(text: str, source: Optional[str] = None) -> Presentation:
    """Parse the line-oriented presentation format.

    ::

        # comment
        generators: a b
        relation: a b b = b a
    """
    names = None
    relations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, colon, rest = line.partition(":")
        key = key.strip().lower()
        if not colon:
            raise MalformedLine(f"expected 'generators:' or 'relation:', got {line!r}", lineno)
        if key == "generators":
            if names is not None:
                raise MalformedLine("second 'generators:' line", lineno)
            names = tuple(rest.split())
            if not names:
                raise MalformedLine("no generators declared", lineno)
            _check_names(names, lineno)
        elif key == "relation":
            if names is None:
                raise MalformedLine("'relation:' before 'generators:'", lineno)
            if rest.count("=") != 1:
                raise MalformedLine("a relation needs exactly one '='", lineno)
            lhs, rhs = rest.split("=")
            p = Presentation(names)
            relations.append(Relation(_relation_side(p, lhs, lineno), _relation_side(p, rhs, lineno)))
        else:
            raise MalformedLine(f"unknown directive {key!r}", lineno)
    if names is None:
        raise MalformedLine("missing 'generators:' line", None)
    return Presentation(names, tuple(relations), source)


def parse_word(p: Presentation, text: str, line=None) -> Word:
    """Parse a word; ``tok'`` is the inverse of ``tok``.

    Tokens are separated by whitespace or ``.``. When every generator name is
    a single character an unseparated string such as ``ab'b`` is accepted.
    """
    index = {name: i for i, name in enumerate(p.names)}
    compact_ok = all(len(n) == 1 for n in p.names)
    letters = []
    for token in text.split():
        if _token_letter(token, index) is not None:
            letters.append(_token_letter(token, index))
            continue
        for piece in token.split("."):
            if not piece:
                continue
            letter = _token_letter(piece, index)
            if letter is not None:
                letters.append(letter)
            elif compact_ok:
                letters.extend(_compact_letters(piece, index, line))
            elif piece.rstrip("'") and piece.rstrip("'") not in index:
                raise UnknownGenerator(piece.rstrip("'"), line)
            else:
                raise WordSyntaxError(f"stray \"'\" in {piece!r}", line)
    return tuple(letters)


def _token_letter(token, index):
    if token in index:
        return Letter(index[token], 1)
    if token.endswith("'") and token[:-1] in index:
        return Letter(index[token[:-1]], -1)
    return None


def _compact_letters(piece, index, line):
    out = []
    inverted = False
    for ch in piece:
        if ch == "'":
            if not out or inverted:
                raise WordSyntaxError(f"stray \"'\" in {piece!r}", line)
            out[-1] = out[-1].inverse()
            inverted = True
        elif ch in index:
            out.append(Letter(index[ch], 1))
            inverted = False
        else:
            raise UnknownGenerator(ch, line)
    return out


# ---------------------------------------------------------------- side graphs


@dataclass(frozen=True)
class SideGraph:
    side: str  # "left" or "right"
    vertices: tuple
    edges: tuple  # (gen, gen) pairs, one per relation


def side_graph(p: Presentation, side: str = "left") -> SideGraph:
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    pick = 0 if side == "left" else -1
    edges = tuple((r.lhs[pick].gen, r.rhs[pick].gen) for r in p.relations)
    return SideGraph(side, tuple(range(p.rank)), edges)


def _multigraph_cycle(vertices, edges):
    """Return a closed path (list of vertices) in an undirected multigraph, or
    None. Self-loops and parallel edges count as closed paths."""
    parent = {v: v for v in vertices}
    adjacency = {v: [] for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if u == v:
            return [u, u]
        ru, rv = find(u), find(v)
        if ru == rv:
            return _tree_path(adjacency, v, u) + [v]
        parent[ru] = rv
        adjacency[u].append(v)
        adjacency[v].append(u)
    return None


def _tree_path(adjacency, start, goal):
    prev = {start: None}
    stack = [start]
    while stack:
        x = stack.pop()
        if x == goal:
            break
        for y in adjacency[x]:
            if y not in prev:
                prev[y] = x
                stack.append(y)
    path = []
    x = goal
    while x is not None:
        path.append(x)
        x = prev[x]
    return path[::-1]


def side_graph_cycle(g: SideGraph):
    return _multigraph_cycle(g.vertices, g.edges)


def is_adian(p: Presentation) -> bool:
    return all(side_graph_cycle(side_graph(p, s)) is None for s in ("left", "right"))


# ----------------------------------------------------------------- condition (*)


@dataclass(frozen=True)
class StarWitness:
    kind: str  # "prefix-suffix" or "suffix-prefix"
    piece: Word
    word: Word  # the R-word the piece is a proper prefix/suffix of
    other: Word  # the R-word it is a suffix/prefix of

    def describe(self, p: Presentation) -> str:
        a, b = ("prefix", "suffix") if self.kind == "prefix-suffix" else ("suffix", "prefix")
        return (f"proper {a} {p.compact(self.piece)!r} of {p.compact(self.word)!r} "
                f"is a {b} of {p.compact(self.other)!r}")


def check_star(p: Presentation):
    """Return ``(holds, witness)`` for condition (*).

    A violation is a non-empty proper prefix of an R-word that is a suffix of
    some R-word (the same one included), or dually.
    """
    words = p.r_words()
    for u in words:
        for i in range(1, len(u)):
            for w in words:
                if len(w) >= i and w[-i:] == u[:i]:
                    return False, StarWitness("prefix-suffix", u[:i], u, w)
    for u in words:
        for i in range(1, len(u)):
            for w in words:
                if len(w) >= i and w[:i] == u[-i:]:
                    return False, StarWitness("suffix-prefix", u[-i:], u, w)
    return True, None


# --------------------------------------------------------------- bi-sided graph


@dataclass(frozen=True)
class BiEdge:
    src: Word
    dst: Word
    x: Word
    y: Word
    kind: str  # "rel", "subword" or "sym"


@dataclass(frozen=True)
class BiSidedGraph:
    vertices: tuple
    edges: tuple


def _occurrences(haystack: Word, needle: Word):
    n = len(needle)
    return [i for i in range(len(haystack) - n + 1) if haystack[i:i + n] == needle]


def _has_proper_r_subword(u: Word, words) -> bool:
    return any(v != u and len(v) < len(u) and _occurrences(u, v) for v in words)


def build_bisided(p: Presentation) -> BiSidedGraph:
    words = p.r_words()
    edges = []
    for rel in p.relations:
        for u, w in ((rel.lhs, rel.rhs), (rel.rhs, rel.lhs)):
            for v in words:
                for i in _occurrences(w, v):
                    j = i + len(v)
                    if 0 < i and j < len(w):
                        edges.append(BiEdge(u, v, w[:i], w[j:], "rel"))
    for u in words:
        for v in words:
            if u == v:
                continue
            for i in _occurrences(u, v):
                j = i + len(v)
                if 0 < i and j < len(u):
                    edges.append(BiEdge(u, v, u[:i], u[j:], "subword"))
    for rel in p.relations:
        if not _has_proper_r_subword(rel.lhs, words) and not _has_proper_r_subword(rel.rhs, words):
            edges.append(BiEdge(rel.lhs, rel.rhs, (), (), "sym"))
    return BiSidedGraph(tuple(words), tuple(edges))


def bisided_cycle(bs: BiSidedGraph):
    """A closed path of R-words in the underlying undirected multigraph, or None."""
    return _multigraph_cycle(bs.vertices, [(e.src, e.dst) for e in bs.edges])


def is_forest(bs: BiSidedGraph) -> bool:
    return bisided_cycle(bs) is None


# ---------------------------------------------------------------- classification


@dataclass(frozen=True)
class DecidabilityClass:
    kind: str  # NonAdian | AdianStarForest | AdianBsFamily | AdianGeneric
    m: Optional[int] = None
    n: Optional[int] = None

    def __str__(self):
        if self.kind == "AdianBsFamily":
            return f"AdianBsFamily({self.m},{self.n})"
        return self.kind


def classify(p: Presentation) -> DecidabilityClass:
    from .bs_family import detect_bs  # the family pattern lives with its constructions

    if not is_adian(p):
        return DecidabilityClass("NonAdian")
    params = detect_bs(p)
    if params is not None:
        return DecidabilityClass("AdianBsFamily", params.m, params.n)
    if check_star(p)[0] and is_forest(build_bisided(p)):
        return DecidabilityClass("AdianStarForest")
    return DecidabilityClass("AdianGeneric")

