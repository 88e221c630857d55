import math

import pytest

import hurwitz_forms as hf

SQRT2_FORM = "form(a=1, b=surd(0,1,2,1), c=0, d=1)"


def test_expand_golden_square():
    out = hf.expand("surd(3,1,5,2)", 10)
    assert out["digits"] == [3] * 10
    assert out["period"] == (0, 1)
    assert out["valid"]


def test_expand_rejects_rationals():
    with pytest.raises(ValueError):
        hf.expand("rat(1,2)", 5)


def test_periodic_round_trip():
    for block in ([3], [2, -2], [4, -3, 5]):
        value = hf.periodic_value(block)
        assert hf.expand(value, 2 * len(block))["digits"] == block * 2


def test_reduce_and_trace():
    red = hf.h_reduce(SQRT2_FORM)
    assert hf.is_h_reduced(red["reduced"])
    a, b, c, d = red["gamma"]
    assert a * d - b * c == 1
    segs = hf.trace(red["reduced"], 5, ["1/2"])
    assert len(segs) == 5
    for s in segs:
        lo, hi = s["return_time"]
        assert lo <= hi and hi - lo < 1e-12
        assert s["bracket_upper"] == "holds"


def test_counts_and_split():
    h, = hf.count(SQRT2_FORM, "1/2", ["1000"], kind="full")
    g, = hf.count(SQRT2_FORM, "1/2", ["1000"], kind="main")
    gp, = hf.count(SQRT2_FORM, "1/2", ["1000"], kind="gprime")
    assert abs(h - 2 * (g + gp)) <= 2
    counts = hf.count(SQRT2_FORM, "1/2", ["10", "100", "1000"], kind="full")
    assert counts == sorted(counts)


def test_constants():
    c = hf.constants()
    lo, hi = c["c0"]
    assert abs(lo - 1.1398920289021777) < 1e-14 and hi - lo < 1e-14
    lo, hi = c["eta"]
    assert lo > 1 / 8


def test_generic():
    g = hf.gauss_generic(0.5)
    assert abs(g["c"] - 2 / math.log(5 / 3)) < 1e-12
    assert abs(g["alpha"] - 1.6655654505923) < 1e-8
    assert abs(hf.birkhoff_log_digit(0.2137, 20000) - g["alpha"]) < 0.1 * g["alpha"]


def test_verify_reduced_form():
    form = hf.h_reduce(SQRT2_FORM)["reduced"]
    report = hf.verify(form, "1/2", "1/2", ["100", "1000"])
    assert report["all_pass"]
