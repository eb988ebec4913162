"""Separating quotients for graph products of finite groups.

:func:`separate` follows the induction on the number of vertices:
restrict to the support, split at a vertex as ``G_A *_{G_B} G_v``, build
``alpha`` on ``G_A`` keeping the middle segments out of ``alpha(G_B)`` (via
the diagonal trick on the retraction onto ``G_B``), build ``gamma`` on
``G_v`` keeping the ``c_j`` alive, and finally separate the image inside
``Q *_{alpha(G_B)} S`` (:func:`base_separate_amalgam`).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import (
    FINITE,
    ORDER_CAP,
    TRIVIAL,
    ClassTag,
    FiniteGroup,
    Homomorphism,
    Subgroup,
    class_membership,
    direct_product,
    generated,
    homomorphisms,
    quotient,
    subgroup_as_group,
    trusted_group,
)
from .amalgam import (
    GraphProductHom,
    HomPairExtension,
    SpecialAmalgam,
    SpecialAmalgamSplit,
    amalgam_form,
    amalgam_split,
    extend_hom_pair,
    form_letters,
)
from .catalog import catalog
from .errors import BudgetExceeded, ClassObstruction, OrderOverflow, TrivialElement
from .graph import GraphProduct
from .proc import co_c_family, is_c_closed, residual
from .words import Syllable, inverse, normal_form


@dataclass(frozen=True)
class SearchBudget:
    max_target_order: int = 128
    max_candidates: int = 250_000
    seed: int = 0

    def __post_init__(self):
        if self.max_target_order < 1 or self.max_candidates < 1:
            raise ValueError("budget bounds must be positive")

    def to_dict(self):
        return {"max_target_order": self.max_target_order,
                "max_candidates": self.max_candidates, "seed": self.seed}


DEFAULT_BUDGET = SearchBudget()


@dataclass
class SeparationCertificate:
    presentation: GraphProduct
    tag: ClassTag
    target: FiniteGroup
    vertex_homs: dict  # vertex -> tuple of images in target
    element: tuple
    image: int
    derivation_log: list = field(default_factory=list)


# ---------------------------------------------------------------- helpers


def shrink(phi: GraphProductHom) -> GraphProductHom:
    """Replace the target by the subgroup the vertex images generate."""
    H = generated(phi.target, [y for m in phi.maps.values() for y in m])
    if H.order == phi.target.order:
        return phi
    K, emb = subgroup_as_group(H)
    pos = {x: i for i, x in enumerate(emb.images)}
    return GraphProductHom(phi.P, K, {v: tuple(pos[y] for y in m) for v, m in phi.maps.items()})


def pair_homs(phi1: GraphProductHom, phi2: GraphProductHom, cap: int = ORDER_CAP) -> GraphProductHom:
    """``f -> (phi1(f), phi2(f))`` onto its image in the product.

    Only the subgroup generated by the image pairs is built, never the full
    direct product.
    """
    G, H = phi1.target, phi2.target
    gt, ht = G.table, H.table
    maps = {}
    for v in phi1.P.vertices:
        if v in phi1.maps or v in phi2.maps:
            n = phi1.P.groups[v].order
            m1 = phi1.maps.get(v, (0,) * n)
            m2 = phi2.maps.get(v, (0,) * n)
            maps[v] = tuple(zip(m1, m2))
    gens = sorted({p for m in maps.values() for p in m})
    elems = [(0, 0)]
    index = {(0, 0): 0}
    i = 0
    while i < len(elems):
        a, b = elems[i]
        i += 1
        for g, h in gens:
            q = (gt[a][g], ht[b][h])
            if q not in index:
                index[q] = len(elems)
                elems.append(q)
                if len(elems) > cap:
                    raise OrderOverflow(f"image of the paired map exceeds order {cap}")
    table = [[index[gt[a][c], ht[b][d]] for c, d in elems] for a, b in elems]
    K = trusted_group(table)
    return GraphProductHom(phi1.P, K, {v: tuple(index[p] for p in m) for v, m in maps.items()})


def diagonal_trick(phi: GraphProductHom, B) -> GraphProductHom:
    """``f -> (phi(f), phi(rho_B(f)))``: ``G_B`` lands in the diagonal."""
    return pair_homs(phi, phi.precompose_retraction(B))


def _vertex_quotient(G: FiniteGroup, avoid, tag: ClassTag) -> Homomorphism:
    """Projection onto the smallest co-tag quotient keeping every ``avoid``
    element nontrivial."""
    family = co_c_family(G, tag)
    best = None
    for N in family:
        if not any(x in N for x in avoid):
            if best is None or N.order > best.order:
                best = N
    if best is None:
        raise ClassObstruction("no co-class quotient keeps the syllables alive")
    return quotient(G, best)[1]


# ---------------------------------------------------------------- base case


def base_separate_amalgam(Q: FiniteGroup, S: FiniteGroup, B_image: Subgroup, a_parts, c_parts,
                          tag: ClassTag, budget: SearchBudget = DEFAULT_BUDGET, log=None):
    """Find ``theta_Q: Q -> T`` and ``theta_S: S -> T`` with ``theta_Q(B_image)``
    centralizing ``theta_S(S)`` and the image of ``a0 c1 a1 ... cn an`` nontrivial.

    Returns ``(T, theta_Q, theta_S)`` where ``T`` is generated by the two
    images and lies in the class.
    """
    log = log if log is not None else []
    # stage 1: the natural projection onto Q x S
    qa = Q.product(a_parts)
    sc = S.product(c_parts)
    if qa != 0 or sc != 0:
        D, _, _, pair = direct_product(Q, S)
        tq = Homomorphism(Q, D, tuple(pair(q, 0) for q in Q))
        ts = Homomorphism(S, D, tuple(pair(0, s) for s in S))
        log.append(f"base: projection to Q x S ({Q.order} x {S.order}) keeps the element")
        return D, tq, ts

    # stage 2: the element lies in the kernel of Q *_B S -> Q x S
    targets = [T for T in catalog() if T.order <= budget.max_target_order]
    if budget.seed:
        rng = random.Random(budget.seed)
        keyed = [(T.order, rng.random(), i) for i, T in enumerate(targets)]
        targets = [targets[i] for _, _, i in sorted(keyed)]
    letters = form_letters(a_parts, c_parts)
    examined = 0
    for T in targets:
        homs_q = homomorphisms(Q, T)
        homs_s = homomorphisms(S, T)
        t = T.table
        for tq in homs_q:
            qimg = tq.images
            b_imgs = {qimg[b] for b in B_image.elements}
            centralizer = {x for x in T if all(t[x][y] == t[y][x] for y in b_imgs)}
            for ts in homs_s:
                examined += 1
                if examined > budget.max_candidates:
                    raise BudgetExceeded(
                        f"stage-2 search examined {budget.max_candidates} candidate pairs")
                simg = ts.images
                if not all(y in centralizer for y in simg):
                    continue
                x = 0
                for side, e in letters:
                    x = t[x][qimg[e] if side == "A" else simg[e]]
                if x == 0:
                    continue
                H = generated(T, set(qimg) | set(simg))
                if tag.variant != "Finite" and not class_membership(subgroup_as_group(H)[0], tag):
                    continue
                log.append(f"base: search found target {T.name} (order {T.order}) "
                           f"after {examined} candidates")
                return T, tq, ts
    raise BudgetExceeded(f"no target of order <= {budget.max_target_order} separates the element")


# ---------------------------------------------------------------- recursion


def _choose_vertex(P: GraphProduct, word):
    counts = {}
    for s in word:
        counts[s.vertex] = counts.get(s.vertex, 0) + 1
    pos = P.graph.position
    return min(counts, key=lambda v: (counts[v], pos[v]))


def _separate_reduced(P: GraphProduct, word, tag, budget, log, depth=0) -> GraphProductHom:
    """``phi`` on ``P`` into a class group with ``phi(word) != e``.

    ``word`` is a nonempty normal form; vertex groups are residually in the
    class.
    """
    pad = "  " * depth
    S = sorted({s.vertex for s in word}, key=P.graph.position.__getitem__)
    if len(S) == 1:
        v = S[0]
        proj = _vertex_quotient(P.groups[v], [s.element for s in word], tag)
        log.append(f"{pad}vertex {v}: quotient of order {proj.target.order}")
        return GraphProductHom(P, proj.target, {v: proj.images})

    PS = P.restrict(S) if len(S) < len(P.vertices) else P
    v = _choose_vertex(PS, word)
    split = amalgam_split(PS, v)
    form = amalgam_form(PS, word, split)
    PA = PS.restrict(split.A)
    middle = form.a_parts[1:-1]
    log.append(f"{pad}support {S}: split at {v}, n = {form.n}, {len(middle)} middle segment(s)")

    # alpha on G_A with alpha(a_i) outside alpha(G_B) for the middle a_i
    alpha = GraphProductHom(PA, TRIVIAL, {})
    if not middle:
        # nothing to keep out of alpha(G_B); let alpha see an outer segment
        # so that the projection stage has something on both sides
        outer = next((a for a in (form.a_parts[0], form.a_parts[-1]) if a), None)
        if outer is not None:
            alpha = _separate_reduced(PA, outer, tag, budget, log, depth + 1)
    for a in middle:
        B_img = alpha.image_of(split.B)
        if alpha(a) not in B_img:
            continue
        rho_a = tuple(s for s in a if s.vertex in split.B)
        h = normal_form(PA, inverse(PA, rho_a) + tuple(a))
        phi_h = _separate_reduced(PA, h, tag, budget, log, depth + 1)
        psi = diagonal_trick(phi_h, split.B)
        alpha = psi if not alpha.maps else pair_homs(alpha, psi)
    B_img = alpha.image_of(split.B)
    assert all(alpha(a) not in B_img for a in middle)

    gamma = _vertex_quotient(PS.groups[v], [c.element for c in form.c_parts], tag)
    ext = HomPairExtension(split, alpha, gamma)
    a_img, c_img, reduced = extend_hom_pair(ext, form)
    assert reduced, "image of a reduced form must be reduced"
    log.append(f"{pad}amalgam Q *_B S with |Q| = {alpha.target.order}, "
               f"|alpha(G_B)| = {B_img.order}, |S| = {gamma.target.order}")
    T, tq, ts = base_separate_amalgam(alpha.target, gamma.target, B_img, a_img, c_img,
                                      tag, budget, log)
    maps = {u: tuple(tq.images[y] for y in m) for u, m in alpha.maps.items()}
    maps[v] = tuple(ts.images[y] for y in gamma.images)
    phi = shrink(GraphProductHom(PS, T, maps))
    assert phi(word) != 0
    return GraphProductHom(P, phi.target, phi.maps)


def _residual_quotient(P: GraphProduct, tag: ClassTag):
    """Replace each vertex group by its largest quotient in the class's
    residual closure; returns ``(P', projections)``."""
    groups, projections = {}, {}
    for v, G in P.groups.items():
        R = residual(G, tag)
        if R.order == 1:
            groups[v] = G
            projections[v] = None
        else:
            Q, proj = quotient(G, R)
            groups[v] = Q
            projections[v] = proj
    return GraphProduct(P.graph, groups), projections


def separate(P: GraphProduct, g, tag: ClassTag = FINITE,
             budget: SearchBudget = DEFAULT_BUDGET) -> SeparationCertificate:
    """A certificate that ``g`` survives in some quotient of ``P`` in the class."""
    g = tuple(Syllable(*s) for s in g)
    nf = normal_form(P, g)
    if not nf:
        raise TrivialElement("the element is trivial")
    log = [f"normal form length {len(nf)}, tag {tag}"]

    # every homomorphism into the class kills the residual of each vertex group
    P2, projections = _residual_quotient(P, tag)
    if any(projections[s.vertex] is not None for s in nf):
        nf2 = normal_form(P2, [Syllable(s.vertex, projections[s.vertex].images[s.element]
                                if projections[s.vertex] else s.element) for s in nf])
        if not nf2:
            witness = non_separability_witness(P, tag)
            raise ClassObstruction(
                "the element dies in every quotient in the class: it is trivial once each "
                "vertex group is cut down to its largest residually-class quotient", witness)
        log.append("vertex groups cut down to their residually-class quotients")
        phi2 = _separate_reduced(P2, nf2, tag, budget, log)
        maps = {}
        for v, m in phi2.maps.items():
            proj = projections[v]
            maps[v] = m if proj is None else tuple(m[y] for y in proj.images)
        phi = GraphProductHom(P, phi2.target, maps)
    else:
        phi = _separate_reduced(P, nf, tag, budget, log)

    phi = shrink(phi)
    D = phi.target
    vertex_homs = {v: phi.maps.get(v, (0,) * P.groups[v].order) for v in P.vertices}
    image = phi(g)
    log.append(f"target order {D.order}, image {image}")
    return SeparationCertificate(P, tag, D, vertex_homs, g, image, log)


# ---------------------------------------------------------------- obstructions


@dataclass
class ObstructionWitness:
    split: object  # SpecialAmalgamSplit, or the string "amalgam" for supplied amalgams
    a: object
    c: object
    g: tuple
    evidence: dict


def commutator_letters(A: FiniteGroup, C: FiniteGroup, a: int, c: int) -> tuple:
    return (("A", a), ("C", c), ("A", A.inverse[a]), ("C", C.inverse[c]))


def amalgam_hom_pairs(amalgam: SpecialAmalgam, tag: ClassTag, max_order: int):
    """Every pair ``(theta_A, theta_C)`` into catalog groups with the
    commutation constraint and generated image in the class."""
    A, B, C = amalgam.A, amalgam.B, amalgam.C
    for T in catalog():
        if T.order > max_order:
            break
        t = T.table
        for ta in homomorphisms(A, T):
            b_imgs = {ta.images[b] for b in B.elements}
            for tc in homomorphisms(C, T):
                if any(t[x][y] != t[y][x] for x in b_imgs for y in set(tc.images)):
                    continue
                H = generated(T, set(ta.images) | set(tc.images))
                if class_membership(subgroup_as_group(H)[0], tag):
                    yield T, ta, tc


def amalgam_obstruction(A: FiniteGroup, B: Subgroup, C: FiniteGroup, tag: ClassTag,
                        check_order: int = 27):
    """Witness that ``A *_B C`` is not residually in the class, or ``None``.

    ``B`` must fail to be closed in ``A``: then for the first unseparated
    ``a`` and the first nontrivial ``c`` the commutator ``[a, c]`` is
    nontrivial yet dies in every quotient in the class.
    """
    if B.order == A.order or C.order == 1:
        return None
    verdict = is_c_closed(A, B, tag)
    if verdict.closed:
        return None
    a, c = verdict.witness, 1
    amalgam = SpecialAmalgam(A, B, C)
    g = commutator_letters(A, C, a, c)
    a_parts, c_parts = amalgam.reduced(g)
    evidence = {
        "reduced_form_n": len(c_parts),
        "co_c_quotients_checked": len(co_c_family(A, tag)),
    }
    # independent route to nontriviality: a finite quotient where g survives
    for T, ta, tc in amalgam_hom_pairs(amalgam, FINITE, 120):
        x = T.product(ta.images[e] if s == "A" else tc.images[e] for s, e in g)
        if x != 0:
            evidence["nontrivial_in"] = T.name
            break
    killed = 0
    for T, ta, tc in amalgam_hom_pairs(amalgam, tag, check_order):
        x = T.product(ta.images[e] if s == "A" else tc.images[e] for s, e in g)
        if x != 0:
            raise AssertionError(f"commutator survives in {T.name}")
        killed += 1
    evidence["class_quotients_killing_g"] = killed
    return ObstructionWitness("amalgam", a, c, g, evidence)


def non_separability_witness(P: GraphProduct, tag: ClassTag):
    """Scan the splits of ``P`` for a commutator ``[a, c]`` that every
    quotient in the class kills; ``None`` when there is none.

    Inside a graph product ``G_B`` is a retract of ``G_A``, so it is closed as
    soon as the vertex groups are residually in the class. An obstruction
    therefore needs a vertex ``u`` outside ``link(v)`` whose group has an
    element ``a`` that every co-class quotient of ``G_u`` kills.
    """
    for v in P.vertices:
        split = amalgam_split(P, v)
        Cgroup = P.groups[v]
        if Cgroup.order == 1:
            continue
        for u in P.vertices:
            if u == v or u in split.B:
                continue
            Gu = P.groups[u]
            R = residual(Gu, tag)
            if R.order == 1:
                continue
            a = R.elements[1]
            c = 1
            g = (Syllable(u, a), Syllable(v, c), Syllable(u, Gu.inverse[a]), Syllable(v, Cgroup.inverse[c]))
            family = co_c_family(Gu, tag)
            assert all(a in N for N in family)
            evidence = {
                "vertex_of_a": u,
                "co_c_quotients_checked": len(family),
                "normal_form_length": len(normal_form(P, g)),
            }
            return ObstructionWitness(split, a, c, g, evidence)
    return None


def is_split(x) -> bool:
    return isinstance(x, SpecialAmalgamSplit)


def check_certificate(cert):
    """Verify a certificate (object or document) from its raw tables only."""
    from .checker import check_certificate_doc
    from .document import certificate_to_doc

    doc = cert if isinstance(cert, dict) else certificate_to_doc(cert)
    return check_certificate_doc(doc)
