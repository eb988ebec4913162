"""Local embeddability: assembling and finitizing almost-homomorphisms.

Infinite vertex groups appear only through :class:`GroupChart`, a finite
fragment with a partial multiplication. A chart plugs into
:class:`~graphprod.graph.GraphProduct` like a finite group, so the word
engine computes normal forms over charts as long as every product it needs
is in the chart; a missing product raises :class:`ChartIncomplete`.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import TRIVIAL, ClassTag, FiniteGroup
from .amalgam import GraphProductHom
from .errors import AlmostHomViolated, ChartIncomplete, InvalidChart, PreconditionViolated
from .graph import GraphProduct
from .separation import DEFAULT_BUDGET, SearchBudget, pair_homs, separate, shrink
from .words import Syllable, inverse, is_reduced, normal_form, word_to_list


class GroupChart:
    """A finite piece of a group: labeled elements, partial product and inverse.

    Identity and inverse laws are checked where defined. Associativity is
    only reported (:meth:`associativity_violations`), since a single bad
    product must reach the almost-homomorphism checks downstream.
    """

    def __init__(self, elements, identity, mul: dict, inv: dict, name=""):
        self.elements = tuple(elements)
        self._set = set(self.elements)
        if len(self._set) != len(self.elements):
            raise InvalidChart("repeated chart element")
        if identity not in self._set:
            raise InvalidChart(f"identity {identity!r} is not a chart element")
        self.identity = identity
        self.name = name
        self._mul = {}
        for (a, b), c in mul.items():
            if not {a, b, c} <= self._set:
                raise InvalidChart(f"product entry {(a, b, c)!r} leaves the chart")
            self._mul[a, b] = c
        for x in self.elements:
            for key in ((identity, x), (x, identity)):
                if self._mul.setdefault(key, x) != x:
                    raise InvalidChart(f"identity law fails at {x!r}")
        self._inv = {}
        for a, b in inv.items():
            if not {a, b} <= self._set:
                raise InvalidChart(f"inverse entry {(a, b)!r} leaves the chart")
            self._inv[a] = b
        self._inv.setdefault(identity, identity)
        for a, b in self._inv.items():
            if self._mul.get((a, b), identity) != identity or self._mul.get((b, a), identity) != identity:
                raise InvalidChart(f"inverse law fails at {a!r}")

    def __repr__(self):
        return f"<GroupChart {self.name or ''} with {len(self.elements)} elements>"

    def mul(self, a, b):
        try:
            return self._mul[a, b]
        except KeyError:
            raise ChartIncomplete(f"product {a!r}*{b!r} is not in the chart") from None

    def inv(self, a):
        try:
            return self._inv[a]
        except KeyError:
            raise ChartIncomplete(f"inverse of {a!r} is not in the chart") from None

    def is_identity(self, a) -> bool:
        return a == self.identity

    def contains(self, a) -> bool:
        try:
            return a in self._set
        except TypeError:
            return False

    def defined(self, a, b) -> bool:
        return (a, b) in self._mul

    def associativity_violations(self) -> list:
        out = []
        m = self._mul
        for a in self.elements:
            for b in self.elements:
                ab = m.get((a, b))
                if ab is None:
                    continue
                for c in self.elements:
                    bc = m.get((b, c))
                    if bc is None:
                        continue
                    lhs, rhs = m.get((ab, c)), m.get((a, bc))
                    if lhs is not None and rhs is not None and lhs != rhs:
                        out.append((a, b, c))
        return out

    def to_dict(self) -> dict:
        return {
            "elements": list(self.elements),
            "identity": self.identity,
            "mul": [[a, b, c] for (a, b), c in sorted(self._mul.items(), key=_entry_key)],
            "inv": [[a, b] for a, b in sorted(self._inv.items(), key=_entry_key)],
        }

    @classmethod
    def from_dict(cls, d) -> "GroupChart":
        try:
            return cls(d["elements"], d["identity"],
                       {(a, b): c for a, b, c in d.get("mul", [])},
                       {a: b for a, b in d.get("inv", [])})
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidChart(f"bad chart document: {e}") from None


def _entry_key(item):
    return repr(item)


def integer_chart(lo: int, hi: int, name="") -> GroupChart:
    """The interval ``[lo, hi]`` of the integers under addition."""
    elems = range(lo, hi + 1)
    mul = {(a, b): a + b for a in elems for b in elems if lo <= a + b <= hi}
    inv = {a: -a for a in elems if lo <= -a <= hi}
    return GroupChart(elems, 0, mul, inv, name or f"Z[{lo},{hi}]")


def chart_of_group(G: FiniteGroup) -> GroupChart:
    n = G.order
    return GroupChart(range(n), 0, {(a, b): G.table[a][b] for a in range(n) for b in range(n)},
                      {a: G.inverse[a] for a in range(n)}, G.name)


@dataclass
class AlmostHom:
    source: GroupChart
    K: frozenset
    target: FiniteGroup
    map: dict

    def __post_init__(self):
        self.K = frozenset(self.K)
        missing = [k for k in self.K if k not in self.map]
        if missing or not self.K <= source_set(self.source):
            raise PreconditionViolated("K must consist of chart elements in the map's domain")

    def __call__(self, x) -> int:
        try:
            return self.map[x]
        except KeyError:
            raise ChartIncomplete(f"map is undefined at {x!r}") from None

    def violations(self) -> list:
        """Failed multiplicativity pairs and injectivity collisions on ``K``."""
        out = []
        T = self.target
        ks = sorted(self.K, key=repr)
        for a in ks:
            for b in ks:
                if not self.source.defined(a, b):
                    continue
                ab = self.source.mul(a, b)
                if self(ab) != T.mul(self(a), self(b)):
                    out.append(("multiplicativity", a, b))
        seen = {}
        for k in ks:
            y = self(k)
            if y in seen:
                out.append(("injectivity", seen[y], k))
            seen.setdefault(y, k)
        return out

    def verify(self):
        bad = self.violations()
        if bad:
            kind, a, b = bad[0]
            raise AlmostHomViolated(f"{kind} fails at {a!r}, {b!r}",
                                    {"kind": kind, "pair": [a, b]})

    def to_dict(self) -> dict:
        return {
            "chart": self.source.to_dict(),
            "K": sorted(self.K, key=repr),
            "target_table": self.target.to_dict(),
            "map": [[x, y] for x, y in sorted(self.map.items(), key=_entry_key)],
        }

    @classmethod
    def from_dict(cls, d) -> "AlmostHom":
        from .algebra import validate_group

        chart = GroupChart.from_dict(d["chart"])
        T = validate_group(d["target_table"]["table"])
        return cls(chart, frozenset(d["K"]), T, {x: y for x, y in d["map"]})


def source_set(chart: GroupChart) -> set:
    return chart._set


def reduction_mod(chart: GroupChart, n: int, K=None) -> AlmostHom:
    """Integer chart into ``Z/n`` by reduction."""
    from .algebra import cyclic_group

    return AlmostHom(chart, frozenset(chart.elements if K is None else K), cyclic_group(n),
                     {x: x % n for x in chart.elements})


# ---------------------------------------------------------------- assembly


@dataclass
class KSets:
    K_prime: list
    K_v: dict


def derive_k_sets(P: GraphProduct, K) -> KSets:
    """``K' = {k^-1 k'}`` over ``K`` plus the identity, and the syllables of
    ``K'`` collected per vertex."""
    ext = [()] + [normal_form(P, k) for k in K]
    K_prime, seen = [], set()
    for k in ext:
        k_inv = inverse(P, k)
        for k2 in ext:
            w = normal_form(P, k_inv + tuple(k2))
            if w not in seen:
                seen.add(w)
                K_prime.append(w)
    K_v = {v: {P.groups[v].identity} for v in P.vertices}
    for w in K_prime:
        for s in w:
            K_v[s.vertex].add(s.element)
    return KSets(K_prime, {v: frozenset(s) for v, s in K_v.items()})


@dataclass
class AssembledAlmostHom:
    presentation: GraphProduct
    K: list  # normal forms over the charts
    vertex_maps: dict
    F: GraphProduct
    image_table: dict = field(default_factory=dict)  # normal form -> normal form over F

    def phi_tilde(self, word) -> tuple:
        return tuple(Syllable(v, self.vertex_maps[v](x)) for v, x in word)

    def phi(self, word) -> tuple:
        nf = normal_form(self.presentation, word)
        if nf not in self.image_table:
            self.image_table[nf] = normal_form(self.F, self.phi_tilde(nf))
        return self.image_table[nf]

    def to_dict(self) -> dict:
        return {
            "K": [word_to_list(k) for k in self.K],
            "vertex_maps": {str(v): m.to_dict() for v, m in self.vertex_maps.items()},
            "image_table": [[word_to_list(k), word_to_list(w)] for k, w in self.image_table.items()],
        }


def assemble_almost_hom(P: GraphProduct, K, vertex_maps: dict) -> AssembledAlmostHom:
    """Extend vertex almost-homomorphisms syllable by syllable and verify the
    result exhaustively on ``K x K``."""
    ks = derive_k_sets(P, K)
    for v in P.vertices:
        m = vertex_maps[v]
        if not ks.K_v[v] <= m.K:
            raise PreconditionViolated(f"vertex map at {v!r} does not cover K_{v}")
        try:
            m.verify()
        except AlmostHomViolated as e:
            raise AlmostHomViolated(f"vertex {v!r}: {e.args[0]}", {"vertex": v, **e.detail}) from None
    F = GraphProduct(P.graph, {v: vertex_maps[v].target for v in P.vertices})
    K_nf = []
    for k in K:
        nf = normal_form(P, k)
        if nf not in K_nf:
            K_nf.append(nf)
    A = AssembledAlmostHom(P, K_nf, dict(vertex_maps), F)

    # images of K' are reduced words in F
    for g in ks.K_prime:
        img = A.phi_tilde(g)
        if not is_reduced(F, img):
            raise AlmostHomViolated("image of a reduced word is not reduced",
                                    {"word": word_to_list(g), "image": word_to_list(img)})
        A.image_table[g] = normal_form(F, img)

    # multiplicativity, in lexicographic pair order
    for i, k in enumerate(K_nf):
        for j, k2 in enumerate(K_nf):
            lhs = A.phi(tuple(k) + tuple(k2))
            rhs = normal_form(F, A.phi(k) + A.phi(k2))
            if lhs != rhs:
                raise AlmostHomViolated(
                    f"phi(k k') != phi(k) phi(k') for K[{i}], K[{j}]",
                    {"k": word_to_list(k), "k_prime": word_to_list(k2),
                     "lhs": word_to_list(lhs), "rhs": word_to_list(rhs)})
    # injectivity
    seen = {}
    for i, k in enumerate(K_nf):
        img = A.phi(k)
        if img in seen:
            j = seen[img]
            raise AlmostHomViolated(
                f"K[{j}] and K[{i}] have the same image",
                {"k": word_to_list(K_nf[j]), "k_prime": word_to_list(k), "image": word_to_list(img)})
        seen[img] = i
    # inverses go to inverses
    for k in K_nf:
        lhs = A.phi(inverse(P, k))
        rhs = normal_form(F, inverse(F, A.phi(k)))
        if lhs != rhs:
            raise AlmostHomViolated("image of an inverse is not the inverse of the image",
                                    {"k": word_to_list(k), "lhs": word_to_list(lhs),
                                     "rhs": word_to_list(rhs)})
    return A


# ---------------------------------------------------------------- finitizing


@dataclass
class FinitizedAlmostHom:
    assembled: AssembledAlmostHom
    tag: ClassTag
    target: FiniteGroup
    psi: GraphProductHom  # F -> target
    certificates: list

    def __call__(self, word) -> int:
        return self.psi(self.assembled.phi(word))

    def vertex_map(self, v) -> AlmostHom:
        m = self.assembled.vertex_maps[v]
        psi_v = self.psi.maps.get(v)
        comp = {x: (psi_v[y] if psi_v else 0) for x, y in m.map.items()}
        return AlmostHom(m.source, m.K, self.target, comp)

    def verify(self):
        """Re-check both almost-homomorphism conditions on ``K`` from the charts."""
        P, D = self.assembled.presentation, self.target
        K = [normal_form(P, k) for k in self.assembled.K]
        val = {}
        for k in K:
            x = 0
            for v, e in k:
                x = D.mul(x, self.vertex_map(v)(e))
            val[k] = x
        for k in K:
            for k2 in K:
                kk = normal_form(P, k + k2)
                x = 0
                for v, e in kk:
                    x = D.mul(x, self.vertex_map(v)(e))
                if x != D.mul(val[k], val[k2]):
                    raise AlmostHomViolated("finitized map is not multiplicative on K",
                                            {"k": word_to_list(k), "k_prime": word_to_list(k2)})
        if len(set(val.values())) != len(val):
            raise AlmostHomViolated("finitized map is not injective on K", {})
        from .algebra import class_membership

        if not class_membership(D, self.tag):
            raise AlmostHomViolated(f"target is not in class {self.tag}", {})
        return True

    def to_dict(self) -> dict:
        return {
            "tag": str(self.tag),
            "target_table": self.target.to_dict(),
            "vertex_maps": {str(v): self.vertex_map(v).to_dict() for v in self.assembled.presentation.vertices},
            "images": [[word_to_list(k), self(k)] for k in self.assembled.K],
        }


def finitize(A: AssembledAlmostHom, tag: ClassTag,
             budget: SearchBudget = DEFAULT_BUDGET) -> FinitizedAlmostHom:
    """Compose with a finite quotient of ``F`` injective on ``phi(K)``."""
    F = A.F
    images = [A.phi(k) for k in A.K]
    psi = GraphProductHom(F, TRIVIAL, {})
    certs = []
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            if psi(images[i]) != psi(images[j]):
                continue
            d = normal_form(F, inverse(F, images[i]) + images[j])
            cert = separate(F, d, tag, budget)
            certs.append(cert)
            phi = GraphProductHom(F, cert.target, cert.vertex_homs)
            psi = phi if not psi.maps else pair_homs(psi, phi)
    psi = shrink(psi) if psi.maps else psi
    out = FinitizedAlmostHom(A, tag, psi.target, psi, certs)
    out.verify()
    return out
