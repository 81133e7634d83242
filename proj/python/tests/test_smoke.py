import json
import math

import pytest

import geoprog

FIB = [2, 1, 1, 1]


def fib_order(m):
    # Least j with m | F_{2j}, straight from the recurrence.
    a, b, j = 0, 1, 0
    while True:
        a, b = b, a + b
        a, b = b, a + b
        j += 1
        if a % m == 0:
            return j


def test_order_matches_fibonacci():
    for m in range(1, 200):
        assert geoprog.order_P(FIB, m) == fib_order(m)


def test_big_integers_round_trip():
    # The 2-tower 3, 3, 3, 6, 12, ... doubles from level 3 on.
    assert geoprog.order_P(FIB, 2**100) == 3 * 2**97
    assert geoprog.prime_tower(FIB, 2, 5) == [3, 3, 3, 6, 12]


def test_lengths():
    assert geoprog.trace_to_length(3) == "1.924847300238413789991036"
    assert abs(float(geoprog.trace_to_length(50)) - 2 * math.acosh(25)) < 1e-12


def test_witness_round_trip():
    w = geoprog.witness(FIB, 3)
    assert w["C"] in ("6", 6)
    assert [int(it["length_multiplier"]) for it in w["items"]] == [6, 12, 18]
    ok, reasons = geoprog.verify_witness(json.dumps(w))
    assert ok and not reasons
    w["items"][0]["trace"] = "1"
    ok, reasons = geoprog.verify_witness(json.dumps(w))
    assert not ok


def test_occurs():
    w = json.loads(geoprog.occurs_in_ap(7, 3))
    assert all(int(it["exponent"]) % 2 == 0 for it in w["items"])


def test_progressions_and_vdw():
    assert geoprog.has_3term_ap([1, 5, 9])
    assert not geoprog.has_3term_ap([1, 2, 4, 8])
    idx, vals = geoprog.find_k_ap([10, 1, 4, 7], 4)
    assert vals == [1.0, 4.0, 7.0, 10.0]
    ok, dev = geoprog.is_eps_almost_ap([1.0, 2.0, 3.05], 0.1)
    assert ok and dev < 0.1
    number, witness = geoprog.vdw_number(2, 3)
    assert number == 9 and len(witness) == 8
    assert geoprog.mono_ap(witness, 2, 3) is None


def test_errors_map_to_python():
    with pytest.raises(geoprog.DomainError):
        geoprog.order_P([1, 1, 0, 1], 5)
    with pytest.raises(ValueError):
        geoprog.order_P([1, 2, 3, 4], 5)
    with pytest.raises(TypeError):
        geoprog.order_P(FIB, 2.5)
