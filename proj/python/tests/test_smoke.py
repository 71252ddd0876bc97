import pytest

import tbi


def test_catalog_names():
    assert tbi.catalog_names() == ["iwasawa", "product"]


def test_iwasawa_invariants():
    rep = tbi.invariants(tbi.catalog("iwasawa"))
    coh = rep["cohomology"]
    assert coh["h_O"] == [1, 2, 2, 1]
    assert coh["h1_O"] == 2
    assert coh["h_theta"][1] == 6
    assert coh["parallelizable"] is True
    assert coh["ks_case"] == "case1"


def test_product_invariants():
    coh = tbi.invariants(tbi.catalog("product"))["cohomology"]
    assert coh["h_O"] == [1, 3, 3, 1]
    assert coh["h0_omega1"] == 3


def test_validate_and_errors():
    doc = tbi.catalog("iwasawa")
    assert tbi.validate(doc)["exit_code"] == 0
    doc["A"][0][0][1] = 7
    assert tbi.validate(doc)["exit_code"] == 2
    with pytest.raises(tbi.TbiError) as info:
        tbi.invariants(doc)
    assert info.value.args[1] == 2
    with pytest.raises(tbi.TbiError) as info:
        tbi.invariants("{not json")
    assert info.value.args[1] == 1


def test_sample_round_trip():
    points = tbi.sample(tbi.catalog("iwasawa"), seed=3, count=4)
    assert len(points) == 4
    for p in points:
        assert p is not None
        assert tbi.validate(p)["exit_code"] == 0
    assert points == tbi.sample(tbi.catalog("iwasawa"), seed=3, count=4)


def test_group_and_curve():
    rep = tbi.group(tbi.catalog("iwasawa"), "e2", "e4")
    assert rep["commutator"]["lambda"] == [-1, 0]
    assert tbi.curve(2, 2, [2, 4, 6, 0]) == {
        "genus": 2,
        "fibre_dim": 2,
        "kuranishi_dim": 11,
        "chern_vector": [2, 4, 6, 0],
        "divisibility_index": 2,
    }
    with pytest.raises(tbi.TbiError):
        tbi.curve(1, 1)


def test_decompose():
    rep = tbi.decompose(tbi.catalog("iwasawa"))
    assert rep["norms"]["bherm"] == 0.0
    assert rep["riemann"]["member"] is True
