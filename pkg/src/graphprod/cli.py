"""Command-line front end: one JSON document in, one JSON document out.

Exit codes: 0 success or verdict true, 1 verdict false, 2 input error,
3 search budget exhausted.
"""
from __future__ import annotations

import argparse
import sys

from . import document as doc_io
from .algebra import FINITE, Homomorphism, generated, subgroup
from .amalgam import amalgam_form, amalgam_split, retract
from .errors import (
    AlmostHomViolated,
    BudgetExceeded,
    ClassObstruction,
    GraphProdError,
    OracleCapExceeded,
    OrderOverflow,
    SchemaError,
    TrivialElement,
)
from .graph import GraphProduct, SimplicialGraph
from .lec import AlmostHom, GroupChart, assemble_almost_hom, finitize
from .proc import is_c_closed
from .separation import (
    SearchBudget,
    amalgam_obstruction,
    check_certificate,
    non_separability_witness,
    separate,
)
from .words import ORACLE_CAP, bfs_oracle_trivial, normal_form, support, word_to_list

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

COMMANDS = ("nf", "wp", "supp", "retract", "split", "amalgam", "closure", "separate",
            "check-cert", "obstruct", "lec-assemble", "lec-finitize")


class Outcome:
    def __init__(self, result, code=EXIT_OK):
        self.result = result
        self.code = code


def _presentation(d):
    return doc_io.presentation_from_doc(doc_io._need(d, "presentation", dict))


def _words(d, P):
    words = doc_io._need(d, "words", dict)
    return {name: doc_io.word_from_doc(P, w) for name, w in sorted(words.items())}


def _vertex(d, P):
    v = doc_io._need(d, "vertex")
    if v not in P.graph:
        raise SchemaError(f"unknown vertex {v!r}")
    return v


def _tag(d, default="Finite"):
    return doc_io.tag_from_doc(d.get("tag", default))


def cmd_nf(d, opts):
    P = _presentation(d)
    out = {}
    for name, w in _words(d, P).items():
        entry = {}
        if d.get("trace"):
            trace = []
            entry["normal_form"] = word_to_list(normal_form(P, w, trace))
            entry["trace"] = trace
        else:
            entry["normal_form"] = word_to_list(normal_form(P, w))
        out[name] = entry
    return Outcome({"words": out})


def cmd_wp(d, opts):
    P = _presentation(d)
    out, all_trivial = {}, True
    for name, w in _words(d, P).items():
        trivial = not normal_form(P, w)
        entry = {"trivial": trivial}
        if len(w) <= opts.oracle_cap:
            entry["oracle_trivial"] = bfs_oracle_trivial(P, w, opts.oracle_cap)
        out[name] = entry
        all_trivial &= trivial
    code = EXIT_FALSE if opts.expect_trivial and not all_trivial else EXIT_OK
    return Outcome({"words": out}, code)


def cmd_supp(d, opts):
    P = _presentation(d)
    out = {}
    for name, w in _words(d, P).items():
        s = support(P, w)
        out[name] = {"support": [v for v in P.vertices if v in s],
                     "length": len(normal_form(P, w))}
    return Outcome({"words": out})


def cmd_retract(d, opts):
    P = _presentation(d)
    X = doc_io._need(d, "X", list)
    for v in X:
        if v not in P.graph:
            raise SchemaError(f"unknown vertex {v!r} in X")
    out = {name: word_to_list(retract(P, X, w)) for name, w in _words(d, P).items()}
    return Outcome({"X": [v for v in P.vertices if v in X], "words": out})


def cmd_split(d, opts):
    P = _presentation(d)
    return Outcome({"split": amalgam_split(P, _vertex(d, P)).to_dict(P)})


def cmd_amalgam(d, opts):
    P = _presentation(d)
    split = amalgam_split(P, _vertex(d, P))
    out = {}
    for name, w in _words(d, P).items():
        form = amalgam_form(P, w, split)
        out[name] = {"n": form.n,
                     "a_parts": [word_to_list(a) for a in form.a_parts],
                     "c_parts": [[c.vertex, c.element] for c in form.c_parts]}
    return Outcome({"split": split.to_dict(P), "words": out})


def _subgroup_from(d, G, key):
    gens = doc_io._need(d, key, list)
    if not all(isinstance(x, int) and 0 <= x < G.order for x in gens):
        raise SchemaError(f"{key}: elements must be indices into the group")
    return generated(G, gens)


def cmd_closure(d, opts):
    G = doc_io.group_from_doc(doc_io._need(d, "group"))
    X = _subgroup_from(d, G, "subgroup")
    tag = _tag(d)
    queries = d.get("queries", [])
    bad = [q for q in queries if q in X]
    if bad:
        raise SchemaError(f"query {bad[0]} lies in the subgroup")
    verdict = is_c_closed(G, X, tag, queries)
    res = {"tag": str(tag), "subgroup": list(X.elements), "closed": verdict.closed}
    if verdict.closed:
        res["witness"] = {"kernel": [g for g in G if verdict.witness.images[g] == 0],
                          "projection": list(verdict.witness.images)}
    else:
        res["witness"] = {"element": verdict.witness}
    return Outcome(res, EXIT_OK if verdict.closed else EXIT_FALSE)


def cmd_separate(d, opts):
    P = _presentation(d)
    tag = _tag(d)
    certs, failures = {}, {}
    for name, w in _words(d, P).items():
        try:
            certs[name] = doc_io.certificate_to_doc(separate(P, w, tag, opts.budget))
        except TrivialElement:
            failures[name] = {"reason": "TrivialElement"}
        except ClassObstruction as e:
            failures[name] = {"reason": "ClassObstruction", "message": str(e.args[0]),
                              "witness": _witness_doc(e.witness, P)}
    res = {"tag": str(tag), "certificates": certs}
    if failures:
        res["failures"] = failures
    return Outcome(res, EXIT_FALSE if failures else EXIT_OK)


def _certificates_in(d):
    if "target_table" in d:
        return {"certificate": d}
    for holder in (d, d.get("result", {})):
        if isinstance(holder, dict) and "certificates" in holder:
            certs = holder["certificates"]
            if isinstance(certs, list):
                return {str(i): c for i, c in enumerate(certs)}
            if isinstance(certs, dict):
                return dict(sorted(certs.items()))
    raise SchemaError("no certificates in the document")


def cmd_check_cert(d, opts):
    out, ok = {}, True
    for name, cert in _certificates_in(d).items():
        r = check_certificate(cert)
        out[name] = {"valid": r.ok, "diagnostics": r.diagnostics}
        ok &= r.ok
    return Outcome({"certificates": out}, EXIT_OK if ok else EXIT_FALSE)


def _witness_doc(w, P=None):
    if w is None:
        return None
    split = w.split if isinstance(w.split, str) else w.split.to_dict(P)
    g = [list(s) for s in w.g]
    return {"split": split, "a": w.a, "c": w.c, "g": g, "evidence": w.evidence}


def cmd_obstruct(d, opts):
    tag = _tag(d)
    if "amalgam" in d:
        am = d["amalgam"]
        A = doc_io.group_from_doc(doc_io._need(am, "A"))
        C = doc_io.group_from_doc(doc_io._need(am, "C"))
        B = _subgroup_from(am, A, "B")
        w = amalgam_obstruction(A, B, C, tag)
        res = {"tag": str(tag), "witness": _witness_doc(w)}
    else:
        P = _presentation(d)
        w = non_separability_witness(P, tag)
        res = {"tag": str(tag), "witness": _witness_doc(w, P)}
    if w is None:
        res["verdict"] = "NoneFound"
    return Outcome(res, EXIT_OK if w is not None else EXIT_FALSE)


def _lec_inputs(d):
    graph = SimplicialGraph.from_dict(doc_io._need(d, "graph", dict))
    maps_doc = doc_io._need(d, "vertex_maps", dict)
    if set(maps_doc) != set(graph.vertices):
        raise SchemaError("vertex_maps must be given for exactly the graph's vertices")
    maps = {v: AlmostHom.from_dict(maps_doc[v]) for v in graph.vertices}
    P = GraphProduct(graph, {v: maps[v].source for v in graph.vertices})
    K = [doc_io.word_from_doc(P, k) for k in doc_io._need(d, "K", list)]
    return P, K, maps


def cmd_lec_assemble(d, opts):
    P, K, maps = _lec_inputs(d)
    try:
        A = assemble_almost_hom(P, K, maps)
    except AlmostHomViolated as e:
        return Outcome({"verified": False, "violation": {"message": str(e.args[0]), "detail": e.detail}},
                       EXIT_FALSE)
    return Outcome({"verified": True, "assembled": A.to_dict()})


def cmd_lec_finitize(d, opts):
    P, K, maps = _lec_inputs(d)
    tag = _tag(d)
    try:
        A = assemble_almost_hom(P, K, maps)
        fin = finitize(A, tag, opts.budget)
    except AlmostHomViolated as e:
        return Outcome({"verified": False, "violation": {"message": str(e.args[0]), "detail": e.detail}},
                       EXIT_FALSE)
    return Outcome({"verified": True, "finitized": fin.to_dict(),
                    "certificates": [doc_io.certificate_to_doc(c) for c in fin.certificates]})


HANDLERS = {
    "nf": cmd_nf, "wp": cmd_wp, "supp": cmd_supp, "retract": cmd_retract, "split": cmd_split,
    "amalgam": cmd_amalgam, "closure": cmd_closure, "separate": cmd_separate,
    "check-cert": cmd_check_cert, "obstruct": cmd_obstruct,
    "lec-assemble": cmd_lec_assemble, "lec-finitize": cmd_lec_finitize,
}


def build_parser():
    p = argparse.ArgumentParser(prog="graphprod", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", default="-", help="input document (default: stdin)")
    p.add_argument("-o", "--output", default="-", help="output file (default: stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget-order", type=int, default=SearchBudget().max_target_order)
    p.add_argument("--budget-candidates", type=int, default=SearchBudget().max_candidates)
    p.add_argument("--oracle-cap", type=int, default=ORACLE_CAP)
    p.add_argument("--expect-trivial", action="store_true", help="wp: exit 1 unless every word is trivial")
    return p


def run(command: str, d, opts) -> tuple:
    """Execute one command on a parsed document; returns ``(output, exit_code)``."""
    settings = {"seed": opts.seed, "budget_order": opts.budget_order,
                "budget_candidates": opts.budget_candidates, "oracle_cap": opts.oracle_cap}
    out = {"version": doc_io.VERSION, "command": command, "settings": settings}
    try:
        if command not in HANDLERS:
            raise SchemaError(f"unknown command {command!r}")
        if not isinstance(d, dict):
            raise SchemaError("the input document must be a JSON object")
        opts.budget = SearchBudget(opts.budget_order, opts.budget_candidates, opts.seed)
        outcome = HANDLERS[command](d, opts)
        out["result"] = outcome.result
        return out, outcome.code
    except (BudgetExceeded, OrderOverflow) as e:
        out["error"] = {"type": type(e).__name__, "message": str(e)}
        return out, EXIT_BUDGET
    except (GraphProdError, ValueError, KeyError, TypeError) as e:
        out["error"] = {"type": type(e).__name__, "message": str(e)}
        return out, EXIT_INPUT


def main(argv=None) -> int:
    parser = build_parser()
    opts = parser.parse_args(argv)
    try:
        if opts.input == "-":
            text = sys.stdin.read()
        else:
            with open(opts.input, encoding="utf-8") as fh:
                text = fh.read()
        d = doc_io.loads(text)
    except (OSError, SchemaError) as e:
        print(f"graphprod: {e}", file=sys.stderr)
        return EXIT_INPUT
    out, code = run(opts.command, d, opts)
    text = doc_io.dumps(out)
    if opts.output == "-":
        sys.stdout.write(text)
    else:
        with open(opts.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    if "error" in out:
        print(f"graphprod: {out['error']['type']}: {out['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
