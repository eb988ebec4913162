"""JSON interchange for groups, graphs, presentations, words and certificates.

Vertex identifiers and element indices are taken as they appear; JSON
object keys are strings, so documents use string vertex names.
"""
from __future__ import annotations

import json

from .algebra import ClassTag, FiniteGroup, validate_group
from .catalog import by_name
from .errors import GraphProdError, SchemaError
from .graph import GraphProduct, SimplicialGraph
from .words import make_word, word_to_list

VERSION = "1"


def dumps(doc) -> str:
    """Deterministic serialization: sorted keys, fixed separators."""
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"not valid JSON: {e}") from None


def _need(d, key, kind=None, where="document"):
    if not isinstance(d, dict) or key not in d:
        raise SchemaError(f"{where}: missing field {key!r}")
    val = d[key]
    if kind is not None and not isinstance(val, kind):
        raise SchemaError(f"{where}: field {key!r} has the wrong type")
    return val


def group_to_doc(G: FiniteGroup) -> dict:
    return G.to_dict()


def group_from_doc(d) -> FiniteGroup:
    """A table object ``{order, table, labels?}`` or a catalog name."""
    if isinstance(d, str):
        try:
            return by_name(d)
        except KeyError:
            raise SchemaError(f"unknown catalog group {d!r}") from None
    table = _need(d, "table", list, "group")
    if "order" in d and d["order"] != len(table):
        raise SchemaError("group: order does not match the table")
    try:
        return validate_group(table, labels=d.get("labels"))
    except GraphProdError:
        raise
    except (TypeError, ValueError) as e:
        raise SchemaError(f"group: {e}") from None


def presentation_to_doc(P: GraphProduct) -> dict:
    return {"graph": P.graph.to_dict(),
            "groups": {str(v): group_to_doc(G) for v, G in P.groups.items()}}


def presentation_from_doc(d) -> GraphProduct:
    gd = _need(d, "graph", dict, "presentation")
    groups = _need(d, "groups", dict, "presentation")
    try:
        graph = SimplicialGraph.from_dict(gd)
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"graph: {e}") from None
    if set(groups) != set(graph.vertices):
        raise SchemaError("presentation: groups must be given for exactly the graph's vertices")
    return GraphProduct(graph, {v: group_from_doc(groups[v]) for v in graph.vertices})


def word_from_doc(P: GraphProduct, w) -> tuple:
    if not isinstance(w, list):
        raise SchemaError("a word is a list of [vertex, element] pairs")
    return make_word(P, w)


def word_to_doc(word) -> list:
    return word_to_list(word)


def tag_from_doc(text) -> ClassTag:
    try:
        return ClassTag.parse(str(text))
    except ValueError as e:
        raise SchemaError(str(e)) from None


def certificate_to_doc(cert) -> dict:
    return {
        "presentation": presentation_to_doc(cert.presentation),
        "tag": str(cert.tag),
        "target_table": {"order": cert.target.order, "table": [list(r) for r in cert.target.table]},
        "vertex_homs": {str(v): list(m) for v, m in cert.vertex_homs.items()},
        "element": word_to_doc(cert.element),
        "image": cert.image,
        "derivation_log": list(cert.derivation_log),
    }


def certificate_from_doc(d):
    from .separation import SeparationCertificate

    P = presentation_from_doc(_need(d, "presentation", dict, "certificate"))
    target = group_from_doc(_need(d, "target_table", dict, "certificate"))
    homs = _need(d, "vertex_homs", dict, "certificate")
    return SeparationCertificate(
        presentation=P,
        tag=tag_from_doc(_need(d, "tag", str, "certificate")),
        target=target,
        vertex_homs={v: tuple(homs[v]) for v in P.vertices if v in homs},
        element=word_from_doc(P, _need(d, "element", list, "certificate")),
        image=_need(d, "image", int, "certificate"),
        derivation_log=list(d.get("derivation_log", [])),
    )
