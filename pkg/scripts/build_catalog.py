"""Regenerate src/graphprod/data/catalog.json.

Each group is given by a finite presentation; sympy's coset enumeration turns
it into a permutation representation, which is then closed into a table.
"""
import json
import pathlib

from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from graphprod.algebra import permutation_group, symmetric_group

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "graphprod" / "data" / "catalog.json"


def fp(names, rels):
    F = free_group(names)
    gens = F[1:]
    G = FpGroup(F[0], rels(*gens))
    P = G._to_perm_group()[0] if isinstance(G._to_perm_group(), tuple) else G._to_perm_group()
    return [tuple(g.array_form) for g in P.generators] if P.generators else [(0,)]


def comm(a, b):
    return a * b * a**-1 * b**-1


def cyc(n):
    return ("a", lambda a: [a**n])


def ab(*ns):
    names = ",".join(f"x{i}" for i in range(len(ns)))

    def rels(*xs):
        out = [x**n for x, n in zip(xs, ns)]
        out += [comm(xs[i], xs[j]) for i in range(len(xs)) for j in range(i + 1, len(xs))]
        return out
    return (names, rels)


def dihedral(n):  # order 2n
    return ("a,b", lambda a, b: [a**n, b**2, (a * b)**2])


def dicyclic(n):  # order 4n
    return ("a,b", lambda a, b: [a**(2 * n), b**2 * a**-n, b * a * b**-1 * a])


SPECS = [
    ("1", ("a", lambda a: [a])),
    ("C2", cyc(2)), ("C3", cyc(3)), ("C4", cyc(4)), ("C2^2", ab(2, 2)), ("C5", cyc(5)),
    ("C6", cyc(6)), ("S3", dihedral(3)), ("C7", cyc(7)),
    ("C8", cyc(8)), ("C4xC2", ab(4, 2)), ("C2^3", ab(2, 2, 2)), ("D8", dihedral(4)), ("Q8", dicyclic(2)),
    ("C9", cyc(9)), ("C3^2", ab(3, 3)),
    ("C10", cyc(10)), ("D10", dihedral(5)), ("C11", cyc(11)),
    ("C12", cyc(12)), ("C6xC2", ab(6, 2)), ("D12", dihedral(6)), ("Dic3", dicyclic(3)),
    ("A4", ("a,b", lambda a, b: [a**2, b**3, (a * b)**3])),
    ("C13", cyc(13)), ("C14", cyc(14)), ("D14", dihedral(7)), ("C15", cyc(15)),
    ("C16", cyc(16)), ("C4^2", ab(4, 4)),
    ("(C4xC2):C2", ("a,b,c", lambda a, b, c: [a**4, b**2, c**2, comm(a, b), comm(b, c),
                                              c * a * c**-1 * (a * b)**-1])),
    ("C4:C4", ("a,b", lambda a, b: [a**4, b**4, b * a * b**-1 * a])),
    ("C8xC2", ab(8, 2)),
    ("M16", ("a,b", lambda a, b: [a**8, b**2, b * a * b**-1 * a**-5])),
    ("D16", dihedral(8)),
    ("SD16", ("a,b", lambda a, b: [a**8, b**2, b * a * b**-1 * a**-3])),
    ("Q16", dicyclic(4)),
    ("C4xC2^2", ab(4, 2, 2)),
    ("C2xD8", ("a,b,c", lambda a, b, c: [a**4, b**2, (a * b)**2, c**2, comm(a, c), comm(b, c)])),
    ("C2xQ8", ("a,b,c", lambda a, b, c: [a**4, b**2 * a**-2, b * a * b**-1 * a, c**2, comm(a, c), comm(b, c)])),
    ("C4oD8", ("a,x,y", lambda a, x, y: [a**4, x**2, y**2, comm(a, x), comm(a, y), (x * y)**2 * a**2])),
    ("C2^4", ab(2, 2, 2, 2)),
    ("Heis3", ("x,y", lambda x, y: [x**3, y**3, comm(comm(x, y), x), comm(comm(x, y), y)])),
    ("Heis5", ("x,y", lambda x, y: [x**5, y**5, comm(comm(x, y), x), comm(comm(x, y), y)])),
]

EXPECTED = {"1": 1, "Heis3": 27, "Heis5": 125}


def main():
    groups = []
    for name, (names, rels) in SPECS:
        gens = fp(names, rels)
        G = permutation_group(gens, name=name)
        groups.append(G)
    groups.append(symmetric_group(4))
    groups.append(symmetric_group(5))
    groups.sort(key=lambda G: G.order)
    doc = {"groups": [{"name": G.name, "order": G.order, "table": [list(r) for r in G.table]} for G in groups]}
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(doc, separators=(",", ":")) + "\n")
    for G in groups:
        print(G.name, G.order)


if __name__ == "__main__":
    main()
