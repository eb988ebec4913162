"""Finite groups given by multiplication tables.

Elements are the integers ``0 .. order-1`` and ``0`` is always the identity.
Everything here is exhaustive; group orders are capped (``ORDER_CAP``) so the
brute-force subgroup and homomorphism searches stay at desk scale.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    MalformedTable,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotNormal,
    OrderOverflow,
)

ORDER_CAP = 5040


class FiniteGroup:
    """A validated finite group. Build instances with :func:`validate_group`."""

    def __init__(self, table, inverse, labels=None, name=""):
        self.table = table
        self.inverse = inverse
        self.labels = labels
        self.name = name

    @property
    def order(self) -> int:
        return len(self.table)

    identity = 0

    def __len__(self):
        return len(self.table)

    def __iter__(self):
        return iter(range(len(self.table)))

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash(self.table)

    def __repr__(self):
        name = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{name} order={self.order}>"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def is_identity(self, a) -> bool:
        return a == 0

    def contains(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < len(self.table)

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def product(self, elements: Iterable[int]) -> int:
        x = 0
        t = self.table
        for e in elements:
            x = t[x][e]
        return x

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        x = 0
        for _ in range(k):
            x = self.table[x][a]
        return x

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def commutator(self, a: int, b: int) -> int:
        """``a b a^-1 b^-1``."""
        t, i = self.table, self.inverse
        return t[t[t[a][b]][i[a]]][i[b]]

    def conjugate(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.table[self.table[g][x]][self.inverse[g]]

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        n = len(t)
        return all(t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n))

    def to_dict(self) -> dict:
        d = {"order": self.order, "table": [list(r) for r in self.table]}
        if self.labels:
            d["labels"] = list(self.labels)
        return d


def validate_group(table, labels=None, name="") -> FiniteGroup:
    """Check the group axioms for ``table`` and return a :class:`FiniteGroup`.

    Tables whose identity is not element 0 are relabeled so that it is; the
    labels (or, absent labels, the original indices) travel with the elements.
    """
    try:
        arr = np.asarray(table)
    except (ValueError, TypeError) as exc:
        raise MalformedTable(str(exc)) from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise MalformedTable(f"table must be a nonempty square array, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise MalformedTable("table entries must be integers")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise MalformedTable("table entry out of range")
    if labels is not None and len(labels) != n:
        raise MalformedTable("labels length does not match order")

    idx = np.arange(n)
    step = max(1, 2_000_000 // (n * n))  # bound the (ab)c cube in memory
    for lo in range(0, n, step):
        a_rng = idx[lo:lo + step]
        left = arr[arr[a_rng], :]  # left[a, b, c] = (ab)c
        right = arr[a_rng[:, None, None], arr[None, :, :]]  # right[a, b, c] = a(bc)
        bad = np.argwhere(left != right)
        if len(bad):
            a, b, c = (int(v) for v in bad[0])
            raise NotAssociative(lo + a, b, c)

    ident = None
    for e in range(n):
        if (arr[e] == idx).all() and (arr[:, e] == idx).all():
            ident = e
            break
    if ident is None:
        raise NoIdentity("no two-sided identity element")
    for a in range(n):
        row = np.flatnonzero(arr[a] == ident)
        if len(row) == 0 or arr[row[0], a] != ident:
            raise NoInverse(a)

    if ident != 0:
        perm = np.arange(n)
        perm[0], perm[ident] = ident, 0  # new index -> old index
        old_to_new = np.argsort(perm)
        arr = old_to_new[arr[np.ix_(perm, perm)]]
        if labels is None:
            labels = [str(int(p)) for p in perm]
        else:
            labels = [labels[int(p)] for p in perm]

    tab = tuple(tuple(int(x) for x in row) for row in arr)
    inverse = tuple(row.index(0) for row in tab)
    return FiniteGroup(tab, inverse, tuple(labels) if labels is not None else None, name)


def trusted_group(table, labels=None, name="") -> FiniteGroup:
    """Wrap a table already known to be a group with identity 0, e.g. one
    derived from validated groups; skips the axiom scan."""
    tab = tuple(tuple(row) for row in table)
    inverse = tuple(row.index(0) for row in tab)
    return FiniteGroup(tab, inverse, tuple(labels) if labels is not None else None, name)


def cyclic_group(n: int, name=None) -> FiniteGroup:
    return validate_group([[(a + b) % n for b in range(n)] for a in range(n)], name=name or f"C{n}")


def permutation_group(generators: Sequence[Sequence[int]], name="") -> FiniteGroup:
    """Close a set of permutations (as image tuples) into a table."""
    degree = len(generators[0])
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in generators:
            q = tuple(g[p[i]] for i in range(degree))  # apply p, then g
            if q not in index:
                index[q] = len(elements)
                elements.append(q)
                queue.append(q)
    elements.sort()
    elements.remove(ident)
    elements.insert(0, ident)
    index = {p: i for i, p in enumerate(elements)}
    table = [[index[tuple(b[a[i]] for i in range(degree))] for b in elements] for a in elements]
    return validate_group(table, labels=[str(p) for p in elements], name=name)


def symmetric_group(n: int) -> FiniteGroup:
    if n == 1:
        return validate_group([[0]], name="S1")
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return permutation_group(gens, name=f"S{n}")


TRIVIAL = validate_group([[0]], name="1")


# ---------------------------------------------------------------- subgroups


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False, repr=False)
    elements: tuple

    def __contains__(self, x):
        return x in self._set

    @cached_property
    def _set(self):
        return frozenset(self.elements)

    def __len__(self):
        return len(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def __le__(self, other: "Subgroup"):
        return self._set <= other._set

    def is_normal(self) -> bool:
        G = self.parent
        s = self._set
        return all(G.conjugate(g, x) in s for g in G for x in self.elements)


def subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Wrap an element set known to be a subgroup."""
    return Subgroup(G, tuple(sorted(set(elements))))


def generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = [g for g in set(gens) if g != 0]
    seen = {0}
    queue = deque([0])
    t = G.table
    while queue:
        x = queue.popleft()
        for g in gens:
            y = t[x][g]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return Subgroup(G, tuple(sorted(seen)))


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def is_subgroup(G: FiniteGroup, elements: Iterable[int]) -> bool:
    s = set(elements)
    return 0 in s and all(G.table[a][G.inverse[b]] in s for a in s for b in s)


def normal_closure(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    conj = {G.conjugate(g, x) for g in G for x in gens}
    return generated(G, conj)


def join(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    return generated(G, H.elements + K.elements)


@lru_cache(maxsize=256)
def subgroups(G: FiniteGroup) -> tuple:
    """All subgroups, by closing the cyclic subgroups under joins."""
    cyclic = {generated(G, [g]) for g in G}
    found = set(cyclic)
    frontier = list(found)
    cyc = list(cyclic)
    while frontier:
        new = []
        for H in frontier:
            for C in cyc:
                if C <= H:
                    continue
                J = join(G, H, C)
                if J not in found:
                    found.add(J)
                    new.append(J)
        frontier = new
    return tuple(sorted(found, key=lambda H: (H.order, H.elements)))


@lru_cache(maxsize=256)
def normal_subgroups(G: FiniteGroup) -> tuple:
    """All normal subgroups, ordered by (order, elements).

    Every normal subgroup is a join of normal closures of single elements,
    so those closures seed the search.
    """
    seeds = {normal_closure(G, [g]) for g in G}
    found = set(seeds)
    frontier = list(found)
    seeds = list(seeds)
    while frontier:
        new = []
        for N in frontier:
            for M in seeds:
                if M <= N:
                    continue
                J = join(G, N, M)
                if J not in found:
                    found.add(J)
                    new.append(J)
        frontier = new
    return tuple(sorted(found, key=lambda H: (H.order, H.elements)))


def commutator_subgroup(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    return generated(G, {G.commutator(h, k) for h in H.elements for k in K.elements})


def derived_series(G: FiniteGroup) -> list:
    series = [whole(G)]
    while True:
        D = commutator_subgroup(G, series[-1], series[-1])
        if D == series[-1]:
            return series
        series.append(D)


def lower_central_series(G: FiniteGroup) -> list:
    series = [whole(G)]
    W = whole(G)
    while True:
        D = commutator_subgroup(G, series[-1], W)
        if D == series[-1]:
            return series
        series.append(D)


# ---------------------------------------------------------------- homomorphisms


@dataclass(frozen=True)
class Presentation:
    """Generators and relator words; a word is a tuple of ``(generator, exponent)``."""
    generators: tuple
    relations: tuple = ()


@dataclass(frozen=True, eq=False)
class Homomorphism:
    """A map given by its values on every element (finite source) or on the
    generators (presented source)."""
    source: object
    target: FiniteGroup
    images: tuple

    def __call__(self, x):
        if isinstance(self.source, Presentation):
            return self.images[self.source.generators.index(x)]
        return self.images[x]

    def __eq__(self, other):
        return (isinstance(other, Homomorphism) and self.images == other.images
                and self.target == other.target and self.source == other.source)

    def __hash__(self):
        return hash(self.images)

    def evaluate(self, word) -> int:
        """Evaluate a generator word (presented source) or an element list."""
        T = self.target
        x = 0
        if isinstance(self.source, Presentation):
            gens = self.source.generators
            for g, e in _normalize_word(word):
                x = T.mul(x, T.power(self.images[gens.index(g)], e))
        else:
            for g in word:
                x = T.mul(x, self.images[g])
        return x

    def is_homomorphism(self) -> bool:
        S, T = self.source, self.target
        if isinstance(S, Presentation):
            return all(self.evaluate(r) == 0 for r in S.relations)
        im = self.images
        return len(im) == S.order and all(
            im[S.table[a][b]] == T.table[im[a]][im[b]] for a in S for b in S)

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, tuple(x for x in self.source if self.images[x] == 0))

    def image(self) -> Subgroup:
        return subgroup(self.target, self.images)

    def compose(self, after: "Homomorphism") -> "Homomorphism":
        """``after`` o ``self``."""
        return Homomorphism(self.source, after.target, tuple(after.images[y] for y in self.images))


def _normalize_word(word):
    out = []
    for tok in word:
        if isinstance(tok, tuple):
            out.append(tok)
        else:
            out.append((tok, 1))
    return out


def identity_hom(G: FiniteGroup) -> Homomorphism:
    return Homomorphism(G, G, tuple(range(G.order)))


def trivial_hom(G: FiniteGroup, T: FiniteGroup) -> Homomorphism:
    return Homomorphism(G, T, (0,) * G.order)


def enumerate_homs(src_generators, src_relations, target: FiniteGroup, budget=None) -> Iterator[Homomorphism]:
    """Yield every assignment generator -> target element satisfying the
    relations, in lexicographic order of the image tuples.

    After ``budget`` homomorphisms, raises :class:`BudgetExceeded` if another
    one exists.
    """
    gens = tuple(src_generators)
    pos = {g: i for i, g in enumerate(gens)}
    rels = [_normalize_word(r) for r in src_relations]
    for r in rels:
        for g, _ in r:
            if g not in pos:
                raise ValueError(f"relation uses unknown generator {g!r}")
    # check each relation as soon as its last generator is assigned
    by_level = [[] for _ in gens]
    for r in rels:
        if r:
            by_level[max(pos[g] for g, _ in r)].append([(pos[g], e) for g, e in r])
    source = Presentation(gens, tuple(tuple(r) for r in rels))
    T = target
    n = len(gens)
    powers = [[T.power(x, e) for e in range(-2, 3)] for x in T] if T.order else []

    def pw(x, e):
        if -2 <= e <= 2:
            return powers[x][e + 2]
        return T.power(x, e)

    assign = [0] * n
    count = 0

    def rec(level):
        nonlocal count
        if level == n:
            yield tuple(assign)
            return
        for x in range(T.order):
            assign[level] = x
            ok = True
            for r in by_level[level]:
                y = 0
                for i, e in r:
                    y = T.table[y][pw(assign[i], e)]
                if y != 0:
                    ok = False
                    break
            if ok:
                yield from rec(level + 1)

    for images in rec(0):
        if budget is not None and count >= budget:
            raise BudgetExceeded(f"more than {budget} homomorphisms")
        count += 1
        yield Homomorphism(source, T, images)


@lru_cache(maxsize=512)
def presentation_of(G: FiniteGroup):
    """A generating set and Cayley-graph relators for ``G``.

    Returns ``(generators, relations, words)`` where ``words[x]`` spells the
    element ``x`` over the generators along a BFS spanning tree.
    """
    gens = []
    H = trivial_subgroup(G)
    while H.order < G.order:
        best = max((g for g in G if g not in H),
                   key=lambda g: (generated(G, gens + [g]).order, -g))
        gens.append(best)
        H = generated(G, gens)
    words = {0: ()}
    queue = deque([0])
    t = G.table
    tree_edges = set()
    while queue:
        x = queue.popleft()
        for s in gens:
            y = t[x][s]
            if y not in words:
                words[y] = words[x] + ((s, 1),)
                tree_edges.add((x, s))
                queue.append(y)
    relations = []
    for x in G:
        for s in gens:
            if (x, s) in tree_edges:
                continue
            y = t[x][s]
            inv = tuple((g, -e) for g, e in reversed(words[y]))
            relations.append(words[x] + ((s, 1),) + inv)
    # short relators first so bad assignments die early
    relations.sort(key=len)
    return tuple(gens), tuple(relations), tuple(words[x] for x in G)


@lru_cache(maxsize=4096)
def homomorphisms(G: FiniteGroup, T: FiniteGroup) -> tuple:
    """Every homomorphism ``G -> T`` as a full element map, lexicographic in
    the generator images."""
    gens, rels, words = presentation_of(G)
    out = []
    for h in enumerate_homs(gens, rels, T):
        img = dict(zip(gens, h.images))
        out.append(Homomorphism(G, T, tuple(
            T.product(img[g] if e == 1 else T.inverse[img[g]] for g, e in w) for w in words)))
    return tuple(out)


def hom_from_generator_images(G: FiniteGroup, T: FiniteGroup, images: dict) -> Homomorphism:
    """Extend generator images along the spanning tree. No validity check."""
    gens, _, words = presentation_of(G)
    return Homomorphism(G, T, tuple(
        T.product(images[g] if e == 1 else T.inverse[images[g]] for g, e in w) for w in words))


# ---------------------------------------------------------------- constructions


def quotient(G: FiniteGroup, N: Subgroup):
    """``G/N`` with the canonical projection. Cosets are numbered by their
    smallest element, so the identity coset is 0."""
    if not N.is_normal():
        raise NotNormal(f"subgroup of order {N.order} is not normal")
    coset_of = [-1] * G.order
    reps = []
    for g in G:
        if coset_of[g] == -1:
            k = len(reps)
            reps.append(g)
            for n in N.elements:
                coset_of[G.table[g][n]] = k
    table = [[coset_of[G.table[a][b]] for b in reps] for a in reps]
    labels = [G.label(r) + "N" for r in reps] if G.labels else None
    Q = trusted_group(table, labels=labels)
    return Q, Homomorphism(G, Q, tuple(coset_of))


def direct_product(G: FiniteGroup, H: FiniteGroup, cap: int = ORDER_CAP):
    """``G x H`` with its two projections and the pairing map ``(a, b) -> index``.

    The pair ``(a, b)`` is stored at index ``a * |H| + b``.
    """
    m, n = G.order, H.order
    if m * n > cap:
        raise OrderOverflow(f"|G||H| = {m * n} exceeds cap {cap}")
    table = [[G.table[a // n][b // n] * n + H.table[a % n][b % n] for b in range(m * n)]
             for a in range(m * n)]
    labels = None
    if G.labels or H.labels:
        labels = [f"({G.label(a // n)},{H.label(a % n)})" for a in range(m * n)]
    P = trusted_group(table, labels=labels, name=f"{G.name}x{H.name}" if G.name and H.name else "")
    p1 = Homomorphism(P, G, tuple(a // n for a in range(m * n)))
    p2 = Homomorphism(P, H, tuple(a % n for a in range(m * n)))

    def pair(a, b):
        return a * n + b

    return P, p1, p2, pair


def subgroup_as_group(H: Subgroup):
    """Re-index a subgroup as a group of its own; returns ``(K, embedding)``."""
    G = H.parent
    elems = H.elements  # sorted, starts with 0
    pos = {x: i for i, x in enumerate(elems)}
    table = [[pos[G.table[a][b]] for b in elems] for a in elems]
    labels = [G.label(x) for x in elems] if G.labels else None
    K = trusted_group(table, labels=labels)
    return K, Homomorphism(K, G, tuple(elems))


# ---------------------------------------------------------------- classes

_VARIANTS = ("Finite", "PGroup", "Solvable", "FiniteSolvable", "Abelian", "Nilpotent")


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class ClassTag:
    variant: str
    p: int | None = None

    def __post_init__(self):
        if self.variant not in _VARIANTS:
            raise ValueError(f"unknown class {self.variant!r}")
        if self.variant == "PGroup":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"PGroup needs a prime, got {self.p!r}")
        elif self.p is not None:
            raise ValueError(f"{self.variant} takes no prime")

    def __str__(self):
        return f"PGroup({self.p})" if self.variant == "PGroup" else self.variant

    @classmethod
    def parse(cls, text: str) -> "ClassTag":
        text = text.strip()
        if text.startswith("PGroup(") and text.endswith(")"):
            return cls("PGroup", int(text[7:-1]))
        return cls(text)


FINITE = ClassTag("Finite")


def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@lru_cache(maxsize=4096)
def class_membership(G: FiniteGroup, tag: ClassTag) -> bool:
    v = tag.variant
    if v == "Finite":
        return True
    if v == "PGroup":
        return is_p_power(G.order, tag.p)
    if v == "Abelian":
        return G.is_abelian
    if v in ("Solvable", "FiniteSolvable"):
        return derived_series(G)[-1].order == 1
    if v == "Nilpotent":
        return lower_central_series(G)[-1].order == 1
    raise ValueError(v)
