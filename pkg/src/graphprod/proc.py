"""Pro-C separation on finite groups.

Only the co-C family (normal subgroups with quotient in C) is materialized;
closedness and openness questions are answered from it directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .algebra import (
    ClassTag,
    FiniteGroup,
    Homomorphism,
    Subgroup,
    class_membership,
    direct_product,
    normal_subgroups,
    quotient,
    subgroup_as_group,
)
from .errors import PreconditionViolated, SeparatorFailed


@dataclass(frozen=True)
class CoCFamily:
    group: FiniteGroup
    tag: ClassTag
    members: tuple

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, N):
        return N in self.members

    def __len__(self):
        return len(self.members)

    def smallest(self) -> Subgroup:
        """Intersection of all members. It is a member itself."""
        elems = set(self.group)
        for N in self.members:
            elems &= N._set
        return Subgroup(self.group, tuple(sorted(elems)))


@lru_cache(maxsize=1024)
def co_c_family(G: FiniteGroup, tag: ClassTag) -> CoCFamily:
    members = tuple(N for N in normal_subgroups(G) if class_membership(quotient(G, N)[0], tag))
    return CoCFamily(G, tag, members)


def residual(G: FiniteGroup, tag: ClassTag) -> Subgroup:
    """Elements killed by every homomorphism from ``G`` into the class."""
    return co_c_family(G, tag).smallest()


@dataclass(frozen=True)
class ClosednessVerdict:
    closed: bool
    # closed: a projection alpha with alpha(g) outside alpha(X) for every query
    # not closed: an element a outside X whose image lies in alpha(X) for every
    # co-C quotient alpha
    witness: object
    queries: tuple


def _coset_meets(G: FiniteGroup, g: int, N: Subgroup, X: Subgroup) -> bool:
    return any(G.table[g][n] in X for n in N.elements)


def is_c_closed(G: FiniteGroup, X: Subgroup, tag: ClassTag, queries=()) -> ClosednessVerdict:
    """Decide whether each queried ``g`` outside ``X`` has a co-C ``N`` with
    ``gN`` disjoint from ``X``. An empty query list means all of ``G - X``."""
    queries = tuple(queries) or tuple(g for g in G if g not in X)
    for g in queries:
        if g in X:
            raise PreconditionViolated(f"query {g} lies in X")
    family = co_c_family(G, tag)
    for g in queries:
        # full scan, also for tag Finite where N = {e} always works
        if not any(not _coset_meets(G, g, N, X) for N in family):
            _check_not_closed(G, X, family, g)
            return ClosednessVerdict(False, g, queries)
    N = family.smallest()
    _, alpha = quotient(G, N)
    _check_closed(X, alpha, queries)
    return ClosednessVerdict(True, alpha, queries)


def _check_closed(X: Subgroup, alpha: Homomorphism, queries):
    img = {alpha.images[x] for x in X.elements}
    bad = [g for g in queries if alpha.images[g] in img]
    if bad:
        raise AssertionError(f"closedness witness fails at {bad[0]}")


def _check_not_closed(G, X, family, a):
    for N in family:
        _, alpha = quotient(G, N)
        if alpha.images[a] not in {alpha.images[x] for x in X.elements}:
            raise AssertionError(f"non-closedness witness {a} is separated mod a co-C subgroup")


def verify_verdict(G: FiniteGroup, X: Subgroup, tag: ClassTag, verdict: ClosednessVerdict) -> bool:
    """Re-check a verdict's witness from scratch."""
    family = co_c_family(G, tag)
    if verdict.closed:
        alpha = verdict.witness
        img = {alpha.images[x] for x in X.elements}
        return (alpha.is_homomorphism() and all(alpha.images[g] not in img for g in verdict.queries)
                and class_membership(subgroup_as_group(alpha.image())[0], tag))
    a = verdict.witness
    if a in X:
        return False
    for N in family:
        _, alpha = quotient(G, N)
        if alpha.images[a] not in {alpha.images[x] for x in X.elements}:
            return False
    return True


def hall_open_check(G: FiniteGroup, H: Subgroup, tag: ClassTag):
    """``(True, N)`` for the first co-C ``N`` inside ``H``, else ``(False, None)``.

    An open subgroup found here is also confirmed closed.
    """
    for N in co_c_family(G, tag):
        if N <= H:
            if H.order < G.order:
                verdict = is_c_closed(G, H, tag)
                assert verdict.closed, "open subgroup failed to be closed"
            return True, N
    return False, None


@dataclass(frozen=True)
class DiagonalEvidence:
    psi_of_g: int
    diagonal: tuple
    retract_on_diagonal: bool
    g_off_diagonal: bool


def retract_closure_witness(G: FiniteGroup, rho: Homomorphism, g: int,
                            separator: Callable[[int], Homomorphism]):
    """``psi(f) = (phi(f), phi(rho(f)))`` into ``C x C``.

    ``separator(g)`` must return ``phi: G -> C`` with ``phi(rho(g)) != phi(g)``.
    Then ``psi`` maps the retract into the diagonal and ``g`` off it.
    """
    if any(rho.images[rho.images[x]] != rho.images[x] for x in G):
        raise PreconditionViolated("rho is not idempotent")
    R = rho.image()
    if g in R:
        raise PreconditionViolated(f"{g} lies in the retract")
    phi = separator(g)
    if phi.images[rho.images[g]] == phi.images[g]:
        raise SeparatorFailed("separator does not distinguish g from rho(g)")
    C = phi.target
    CC, _, _, pair = direct_product(C, C)
    psi = Homomorphism(G, CC, tuple(pair(phi.images[f], phi.images[rho.images[f]]) for f in G))
    diag = tuple(pair(c, c) for c in C)
    dset = set(diag)
    evidence = DiagonalEvidence(
        psi_of_g=psi.images[g],
        diagonal=diag,
        retract_on_diagonal=all(psi.images[r] in dset for r in R.elements),
        g_off_diagonal=psi.images[g] not in dset,
    )
    if not (evidence.retract_on_diagonal and evidence.g_off_diagonal):
        raise AssertionError("diagonal construction failed")
    return psi, evidence
