"""Words in graph products and the T1/T2/T3 rewriting calculus.

A word is a tuple of :class:`Syllable` ``(vertex, element)``. The moves are

* ``T1(i)``: delete syllable ``i`` when it is the identity;
* ``T2(i)``: merge syllables ``i`` and ``i+1`` at the same vertex into their
  product (an identity product is kept as an explicit identity syllable);
* ``T3(i)``: swap syllables ``i`` and ``i+1`` on adjacent vertices.

:func:`normal_form` reaches a reduced word by joining the lexicographically
first joinable pair (shuffles then a merge), then deleting the leftmost
identity, and finally sorts the reduced word into its shuffle-class
representative: repeatedly emit, among syllables that commute past
everything before them, the one on the earliest vertex.

:func:`bfs_oracle_trivial` and :func:`oracle_class` explore every word
reachable by the three moves and share no code with the canonicalizer.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import IndexOutOfRange, InvalidSyllable, MoveNotApplicable, OracleCapExceeded
from .graph import GraphProduct

ORACLE_CAP = 8


class Syllable(NamedTuple):
    vertex: object
    element: object


def make_word(P: GraphProduct, pairs) -> tuple:
    """Validate ``[[vertex, element], ...]`` and return a word."""
    out = []
    for pair in pairs:
        try:
            v, x = pair
        except (TypeError, ValueError):
            raise InvalidSyllable(f"syllable must be a pair, got {pair!r}") from None
        if v not in P.graph:
            raise InvalidSyllable(f"unknown vertex {v!r}")
        if not P.groups[v].contains(x):
            raise InvalidSyllable(f"{x!r} is not an element of the group at {v!r}")
        out.append(Syllable(v, x))
    return tuple(out)


def word_to_list(word) -> list:
    return [[s.vertex, s.element] for s in word]


def concat(*words) -> tuple:
    out = ()
    for w in words:
        out += tuple(w)
    return out


def inverse(P: GraphProduct, word) -> tuple:
    return tuple(Syllable(v, P.groups[v].inv(x)) for v, x in reversed(word))


def support_of_word(P: GraphProduct, word) -> frozenset:
    return frozenset(v for v, x in word if not P.groups[v].is_identity(x))


# ---------------------------------------------------------------- moves


def rewrite_step(P: GraphProduct, word, move) -> tuple:
    """Apply one move given as ``("T1", i)``, ``("T2", i)`` or ``("T3", i)``."""
    kind, i = move
    word = tuple(word)
    n = len(word)
    if kind == "T1":
        if not 0 <= i < n:
            raise MoveNotApplicable(move, "index out of range")
        v, x = word[i]
        if not P.groups[v].is_identity(x):
            raise MoveNotApplicable(move, "syllable is not the identity")
        return word[:i] + word[i + 1:]
    if kind in ("T2", "T3"):
        if not 0 <= i < n - 1:
            raise MoveNotApplicable(move, "index out of range")
        (u, x), (v, y) = word[i], word[i + 1]
        if kind == "T2":
            if u != v:
                raise MoveNotApplicable(move, "syllables lie on different vertices")
            return word[:i] + (Syllable(u, P.groups[u].mul(x, y)),) + word[i + 2:]
        if not P.graph.adjacent(u, v):
            raise MoveNotApplicable(move, "vertices are not adjacent")
        return word[:i] + (word[i + 1], word[i]) + word[i + 2:]
    raise MoveNotApplicable(move, "unknown move")


def can_join(P: GraphProduct, word, i: int, j: int) -> bool:
    n = len(word)
    if not (0 <= i < j < n):
        raise IndexOutOfRange(f"need 0 <= i < j < {n}, got i={i}, j={j}")
    v = word[i].vertex
    if word[j].vertex != v:
        return False
    lk = P.graph._links[v]
    return all(word[k].vertex in lk for k in range(i + 1, j))


def _first_joinable(P, word):
    links = P.graph._links
    n = len(word)
    for i in range(n):
        v = word[i].vertex
        lk = links[v]
        for j in range(i + 1, n):
            w = word[j].vertex
            if w == v:
                return i, j
            if w not in lk:
                break
    return None


def is_reduced(P: GraphProduct, word) -> bool:
    if any(P.groups[v].is_identity(x) for v, x in word):
        return False
    return _first_joinable(P, word) is None


class _Tracer:
    def __init__(self, P, word, trace):
        self.P = P
        self.word = tuple(word)
        self.trace = trace

    def apply(self, kind, i):
        new = rewrite_step(self.P, self.word, (kind, i))
        if self.trace is not None:
            self.trace.append({"move": kind, "index": i,
                               "before": word_to_list(self.word), "after": word_to_list(new)})
        self.word = new


def reduce_word(P: GraphProduct, word, trace: list | None = None) -> tuple:
    """Rewrite to a reduced word by joins and identity deletions.

    Joins always go first: the smallest ``(i, j)`` joinable pair is brought
    together by T3 moves and merged by T2. Only when nothing joins is the
    leftmost identity removed by T1.
    """
    t = _Tracer(P, word, trace)
    groups = P.groups
    if trace is None:
        # same strategy, without per-move bookkeeping
        w = list(word)
        while True:
            hit = _first_joinable(P, w)
            if hit is not None:
                i, j = hit
                v = w[i].vertex
                s = w.pop(j)
                w[i] = Syllable(v, groups[v].mul(w[i].element, s.element))
                continue
            for k, (v, x) in enumerate(w):
                if groups[v].is_identity(x):
                    del w[k]
                    break
            else:
                return tuple(w)
    while True:
        hit = _first_joinable(P, t.word)
        if hit is not None:
            i, j = hit
            for k in range(j - 1, i, -1):
                t.apply("T3", k)
            t.apply("T2", i)
            continue
        for k, (v, x) in enumerate(t.word):
            if groups[v].is_identity(x):
                t.apply("T1", k)
                break
        else:
            return t.word


def shuffle_normal(P: GraphProduct, word, trace: list | None = None) -> tuple:
    """Sort a reduced word into the canonical member of its shuffle class."""
    links = P.graph._links
    pos = P.graph.position
    rest = list(word)
    out = []
    while rest:
        best = None
        for k, s in enumerate(rest):
            lk = links[s.vertex]
            if all(rest[m].vertex in lk for m in range(k)):
                if best is None or pos[s.vertex] < pos[rest[best].vertex]:
                    best = k
        if trace is not None:
            base = len(out)
            cur = tuple(out) + tuple(rest)
            for m in range(best - 1, -1, -1):
                new = rewrite_step(P, cur, ("T3", base + m))
                trace.append({"move": "T3", "index": base + m,
                              "before": word_to_list(cur), "after": word_to_list(new)})
                cur = new
        out.append(rest.pop(best))
    return tuple(out)


def normal_form(P: GraphProduct, word, trace: list | None = None) -> tuple:
    """The canonical reduced word representing the same element."""
    return shuffle_normal(P, reduce_word(P, word, trace), trace)


def multiply(P: GraphProduct, *words) -> tuple:
    return normal_form(P, concat(*words))


def equal(P: GraphProduct, w1, w2) -> bool:
    return normal_form(P, w1) == normal_form(P, w2)


def is_trivial(P: GraphProduct, word) -> bool:
    return not reduce_word(P, word)


def length(P: GraphProduct, word) -> int:
    return len(reduce_word(P, word))


def support(P: GraphProduct, word) -> frozenset:
    return frozenset(s.vertex for s in reduce_word(P, word))


@dataclass(frozen=True)
class WordInfo:
    length: int
    support: frozenset
    inverse: tuple
    is_reduced: bool


def word_ops(P: GraphProduct, word) -> WordInfo:
    nf = reduce_word(P, word)
    return WordInfo(len(nf), frozenset(s.vertex for s in nf), inverse(P, word), is_reduced(P, word))


def is_reduced_product(P: GraphProduct, factors: Sequence) -> bool:
    return length(P, concat(*factors)) == sum(length(P, f) for f in factors)


# ---------------------------------------------------------------- oracle


class _Alphabet:
    """Syllables coded as small ints; move results memoized per presentation."""

    def __init__(self, P: GraphProduct):
        self.P = P
        self.code = {}
        self.syllables = []
        self.vertex_of = []
        self.ident = []
        self.merge = {}
        self.swap = {}

    def encode(self, s):
        c = self.code.get(s)
        if c is None:
            s = Syllable(*s)
            c = self.code[s] = len(self.syllables)
            self.syllables.append(s)
            self.vertex_of.append(s.vertex)
            self.ident.append(self.P.groups[s.vertex].is_identity(s.element))
        return c

    def step(self, a, b):
        """Code of the T2 product, ``-1`` if T3 applies, else ``None``."""
        key = (a, b)
        if key in self.merge:
            return self.merge[key]
        u, v = self.vertex_of[a], self.vertex_of[b]
        if u == v:
            G = self.P.groups[u]
            r = self.encode(Syllable(u, G.mul(self.syllables[a].element, self.syllables[b].element)))
        elif v in self.P.graph._links[u]:
            r = -1
        else:
            r = None
        self.merge[key] = r
        return r


def _alphabet(P):
    alpha = P.__dict__.get("_oracle_alphabet")
    if alpha is None:
        alpha = P.__dict__["_oracle_alphabet"] = _Alphabet(P)
    return alpha


_UNSEEN = object()


def _reachable_codes(P, word, cap, stop_at_empty=False):
    if len(word) > cap:
        raise OracleCapExceeded(f"word length {len(word)} exceeds oracle cap {cap}")
    alpha = _alphabet(P)
    start = tuple(alpha.encode(s) for s in word)
    ident, step = alpha.ident, alpha.step
    memo = alpha.merge
    seen = {start}
    queue = deque([start])
    pop, push, add = queue.popleft, queue.append, seen.add
    get = memo.get
    while queue:
        w = pop()
        n = len(w)
        for i in range(n):
            a = w[i]
            if ident[a]:
                nxt = w[:i] + w[i + 1:]
                if nxt not in seen:
                    if stop_at_empty and not nxt:
                        return alpha, {()}
                    add(nxt)
                    push(nxt)
            if i + 1 < n:
                b = w[i + 1]
                m = get((a, b), _UNSEEN)
                if m is _UNSEEN:
                    m = step(a, b)
                if m is None:
                    continue
                if m == -1:
                    nxt = w[:i] + (b, a) + w[i + 2:]
                else:
                    nxt = w[:i] + (m,) + w[i + 2:]
                if nxt not in seen:
                    add(nxt)
                    push(nxt)
    return alpha, seen


def reachable(P: GraphProduct, word, cap: int = ORACLE_CAP) -> set:
    """Every word reachable from ``word`` by T1/T2/T3 moves."""
    alpha, seen = _reachable_codes(P, word, cap)
    syl = alpha.syllables
    return {tuple(syl[c] for c in w) for w in seen}


def bfs_oracle_trivial(P: GraphProduct, word, cap: int = ORACLE_CAP) -> bool:
    """True iff the empty word is reachable by T1/T2/T3 moves."""
    _, seen = _reachable_codes(P, word, cap, stop_at_empty=True)
    return () in seen


def oracle_class(P: GraphProduct, word, cap: int = ORACLE_CAP) -> frozenset:
    """The minimal-length words reachable from ``word``.

    Two words represent the same element exactly when these sets coincide.
    """
    alpha, seen = _reachable_codes(P, word, cap)
    m = min(len(w) for w in seen)
    syl = alpha.syllables
    return frozenset(tuple(syl[c] for c in w) for w in seen if len(w) == m)


def t3_connected(P: GraphProduct, w1, w2) -> bool:
    """Whether ``w2`` is reachable from ``w1`` by syllable shuffles alone."""
    w1 = tuple(Syllable(*s) for s in w1)
    w2 = tuple(Syllable(*s) for s in w2)
    adjacent = P.graph._links
    seen = {w1}
    queue = deque([w1])
    while queue:
        w = queue.popleft()
        if w == w2:
            return True
        for i in range(len(w) - 1):
            if w[i + 1].vertex in adjacent[w[i].vertex]:
                nxt = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return False
