"""Stand-alone verifier for separation certificate documents.

Works on the raw JSON document only, with its own table arithmetic, so a bug
in the engine's group code cannot vouch for itself. Checks run in a fixed
order and the first failure is reported:

MalformedCertificate, InvalidTarget, ClassViolated, HomomorphismViolated,
CommutationViolated, TrivialImage, EvaluationMismatch.
"""
from __future__ import annotations

from dataclasses import dataclass, field

CATEGORIES = (
    "MalformedCertificate",
    "InvalidTarget",
    "ClassViolated",
    "HomomorphismViolated",
    "CommutationViolated",
    "TrivialImage",
    "EvaluationMismatch",
)


@dataclass
class CheckResult:
    ok: bool
    diagnostics: list = field(default_factory=list)

    @property
    def category(self):
        return self.diagnostics[0]["category"] if self.diagnostics else None

    def __bool__(self):
        return self.ok


class _Fail(Exception):
    def __init__(self, category, detail):
        self.category = category
        self.detail = detail


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def _table_problem(t):
    """Why ``t`` is not a group table with identity 0, or ``None``."""
    if not isinstance(t, list) or not t:
        return "table is not a nonempty list"
    n = len(t)
    for row in t:
        if not isinstance(row, list) or len(row) != n:
            return "table is not square"
        if not all(_is_int(x) and 0 <= x < n for x in row):
            return "entry out of range"
    for a in range(n):
        if t[0][a] != a or t[a][0] != a:
            return f"0 is not an identity (fails at {a})"
    for a in range(n):
        if 0 not in t[a]:
            return f"{a} has no inverse"
    for a in range(n):
        ta = t[a]
        for b in range(n):
            tab = t[ta[b]]
            tb = t[b]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    return f"not associative at {(a, b, c)}"
    return None


def _closure(t, gens):
    n = len(t)
    seen = {0}
    frontier = [0]
    gens = list(set(gens))
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = t[x][g]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def _commutator(t, inv, a, b):
    return t[t[t[a][b]][inv[a]]][inv[b]]


def _series_ends_trivial(t, central: bool) -> bool:
    n = len(t)
    inv = [row.index(0) for row in t]
    cur = set(range(n))
    while True:
        other = range(n) if central else cur
        nxt = _closure(t, [_commutator(t, inv, a, b) for a in cur for b in other])
        if len(nxt) == 1:
            return True
        if len(nxt) == len(cur):
            return False
        cur = nxt


def _in_class(t, tag: str) -> bool:
    n = len(t)
    if tag == "Finite":
        return True
    if tag.startswith("PGroup(") and tag.endswith(")"):
        p = int(tag[7:-1])
        while n % p == 0:
            n //= p
        return n == 1
    if tag == "Abelian":
        return all(t[a][b] == t[b][a] for a in range(n) for b in range(n))
    if tag in ("Solvable", "FiniteSolvable"):
        return _series_ends_trivial(t, central=False)
    if tag == "Nilpotent":
        return _series_ends_trivial(t, central=True)
    raise ValueError(tag)


def _valid_tag(tag) -> bool:
    if tag in ("Finite", "Solvable", "FiniteSolvable", "Abelian", "Nilpotent"):
        return True
    if isinstance(tag, str) and tag.startswith("PGroup(") and tag.endswith(")"):
        s = tag[7:-1]
        if s.isdigit():
            p = int(s)
            return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))
    return False


def _check(doc):
    malformed = lambda msg: _Fail("MalformedCertificate", msg)  # noqa: E731
    if not isinstance(doc, dict):
        raise malformed("certificate is not an object")
    for key in ("presentation", "tag", "target_table", "vertex_homs", "element", "image"):
        if key not in doc:
            raise malformed(f"missing field {key!r}")
    pres = doc["presentation"]
    if not isinstance(pres, dict) or not isinstance(pres.get("graph"), dict) \
            or not isinstance(pres.get("groups"), dict):
        raise malformed("presentation needs graph and groups")
    vertices = pres["graph"].get("vertices")
    edges = pres["graph"].get("edges", [])
    if not isinstance(vertices, list) or len(set(map(str, vertices))) != len(vertices):
        raise malformed("graph vertices must be a list of distinct names")
    if not isinstance(edges, list):
        raise malformed("graph edges must be a list")
    vset = set(vertices)
    for e in edges:
        if not isinstance(e, list) or len(e) != 2 or e[0] == e[1] or not set(e) <= vset:
            raise malformed(f"bad edge {e!r}")
    groups = pres["groups"]
    if set(groups) != vset:
        raise malformed("vertex groups do not match the vertex list")
    tables = {}
    for v in vertices:
        g = groups[v]
        t = g.get("table") if isinstance(g, dict) else None
        why = _table_problem(t)
        if why:
            raise malformed(f"vertex group {v}: {why}")
        tables[v] = t
    tag = doc["tag"]
    if not _valid_tag(tag):
        raise malformed(f"unknown class tag {tag!r}")
    homs = doc["vertex_homs"]
    if not isinstance(homs, dict) or set(homs) != vset:
        raise malformed("vertex_homs must have one entry per vertex")
    word = doc["element"]
    if not isinstance(word, list):
        raise malformed("element must be a list of syllables")
    for s in word:
        if not (isinstance(s, list) and len(s) == 2 and s[0] in vset and _is_int(s[1])
                and 0 <= s[1] < len(tables[s[0]])):
            raise malformed(f"bad syllable {s!r}")
    image = doc["image"]
    if not _is_int(image):
        raise malformed("image must be an element index")

    target = doc["target_table"]
    D = target.get("table") if isinstance(target, dict) else None
    why = _table_problem(D)
    if why:
        raise _Fail("InvalidTarget", why)
    if "order" in target and target["order"] != len(D):
        raise _Fail("InvalidTarget", "order does not match the table")
    n = len(D)
    for v in vertices:
        m = homs[v]
        if not isinstance(m, list) or len(m) != len(tables[v]) \
                or not all(_is_int(x) and 0 <= x < n for x in m):
            raise malformed(f"vertex_homs[{v}] is not a map into the target")
    if not 0 <= image < n:
        raise malformed("image is not an element of the target")

    if not _in_class(D, tag):
        raise _Fail("ClassViolated", f"target of order {n} is not in class {tag}")

    for v in vertices:
        t, m = tables[v], homs[v]
        for a in range(len(t)):
            for b in range(len(t)):
                if m[t[a][b]] != D[m[a]][m[b]]:
                    raise _Fail("HomomorphismViolated", {"vertex": v, "pair": [a, b]})

    for u, v in edges:
        for x in set(homs[u]):
            for y in set(homs[v]):
                if D[x][y] != D[y][x]:
                    raise _Fail("CommutationViolated", {"edge": [u, v], "pair": [x, y]})

    x = 0
    for v, e in word:
        x = D[x][homs[v][e]]
    if x == 0:
        raise _Fail("TrivialImage", "the element evaluates to the identity")
    if x != image:
        raise _Fail("EvaluationMismatch", {"evaluated": x, "claimed": image})


def check_certificate_doc(doc) -> CheckResult:
    try:
        _check(doc)
    except _Fail as f:
        return CheckResult(False, [{"category": f.category, "detail": f.detail}])
    return CheckResult(True, [])
