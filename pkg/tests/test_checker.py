import copy

import pytest

from graphprod.checker import CATEGORIES, check_certificate_doc
from graphprod.document import certificate_from_doc, certificate_to_doc, dumps, loads
from graphprod.graph import GraphProduct, path
from graphprod.separation import check_certificate, separate
from graphprod.words import Syllable

from conftest import S3, Z2, Z3


@pytest.fixture(scope="module")
def cert_doc():
    P = GraphProduct(path(["a", "b", "c"]), {"a": Z2, "b": Z3, "c": Z2})
    cert = separate(P, [Syllable("a", 1), Syllable("c", 1), Syllable("a", 1), Syllable("c", 1),
                        Syllable("b", 1)])
    return certificate_to_doc(cert)


def test_valid(cert_doc):
    assert check_certificate_doc(cert_doc).ok


def test_round_trip(cert_doc):
    again = certificate_to_doc(certificate_from_doc(loads(dumps(cert_doc))))
    assert again == cert_doc


def test_corrupted_hom_entry(cert_doc):
    d = copy.deepcopy(cert_doc)
    d["vertex_homs"]["b"][0] = 1
    r = check_certificate_doc(d)
    assert not r.ok and r.category == "HomomorphismViolated"


def test_s3_target_under_p2(cert_doc):
    d = copy.deepcopy(cert_doc)
    d["tag"] = "PGroup(2)"
    d["target_table"] = {"order": 6, "table": [list(r) for r in S3.table]}
    r = check_certificate_doc(d)
    assert r.category == "ClassViolated"


def test_commutation(cert_doc):
    d = copy.deepcopy(cert_doc)
    d["target_table"] = {"order": 6, "table": [list(r) for r in S3.table]}
    t = [x for x in S3 if S3.element_order(x) == 2]
    r3 = [x for x in S3 if S3.element_order(x) == 3]
    d["vertex_homs"] = {"a": [0, t[0]], "b": [0, r3[0], r3[1]], "c": [0, t[1]]}
    d["image"] = 0
    assert check_certificate_doc(d).category == "CommutationViolated"


def test_categories_are_listed():
    assert len(set(CATEGORIES)) == 7


def test_accepts_objects_too(cert_doc):
    assert check_certificate(certificate_from_doc(cert_doc)).ok
