import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncann import AnnQuery, Bounds, SkewPoly, TruncSeries, annihilator, enumerate_basis, evaluate, multiply
from ncann.errors import (
    MembershipError,
    MixedComponentError,
    NoGeneratorError,
    PreconditionError,
    RingMismatchError,
    UnsupportedRingError,
    ZeroElementError,
)
from ncann.rings import (
    BUILTIN_NAMES,
    bb_failure_witness,
    builtin_ring,
    cedo_series_witness,
    cedo_witness,
    cedo_zip_evidence,
    length_and_delta,
    random_ideal_member,
    right_zip_certificate,
    run_claims,
    series_bb_evidence,
    staircase_key,
    verify_lemma,
)

from . import oracles


def test_builtin_catalogue():
    assert set(BUILTIN_NAMES) == {"section4", "armendariz_3_3", "cedo_3_1"}
    assert builtin_ring("section4", 3).pres.p == 3
    assert builtin_ring("cedo_3_1", 5).pres.family("alam").fixed_range == 5
    with pytest.raises(UnsupportedRingError):
        builtin_ring("armendariz_3_3", 3)
    with pytest.raises(UnsupportedRingError):
        builtin_ring("free")
    assert builtin_ring("section4") is builtin_ring("section4")


def test_section4_word_count_matches_set_builder(s4):
    for N, d in [(1, 2), (2, 3), (3, 2)]:
        assert len(enumerate_basis(s4, Bounds(N, d))) == len(oracles.s4_words(N, d))


# ---- cedo -----------------------------------------------------------------

@pytest.mark.parametrize("p", [2, 3, 5])
def test_cedo_witness_each_n(p):
    pres = builtin_ring("cedo_3_1", p).pres
    for n in range(5):
        r = cedo_series_witness(n, pres)
        assert r.verdict == "pass", r.witnesses


def test_cedo_perturbed_witness_fails(cedo):
    w = cedo_witness(cedo, 1, 4)
    # dropping the x^2 term leaves -a1 b1 = -a0 b1 at x^2
    broken = TruncSeries(cedo, 4, [w.coeffs[0], w.coeffs[1]])
    r = cedo_series_witness(1, cedo, witness=broken)
    assert r.verdict == "fail"
    assert r.witnesses[0]["x_power"] == 2
    # swapping b2 for b1 there only shows up at x^3
    broken = TruncSeries(cedo, 4, [w.coeffs[0], w.coeffs[1], cedo.gen("b1", 1)])
    assert cedo_series_witness(1, cedo, witness=broken).witnesses[0]["x_power"] == 3


def test_cedo_argument_errors(cedo, s4):
    with pytest.raises(ValueError):
        cedo_series_witness(0, cedo, t=2)
    with pytest.raises(RingMismatchError):
        cedo_series_witness(0, s4)


def test_cedo_zip_evidence(cedo3):
    for n in range(3):
        r = cedo_zip_evidence(n, cedo3)
        assert r.verdict == "evidence-only"
        assert r.details["annihilator_dim"] >= 1


def test_cedo_relation_iii(cedo3):
    # a1 alam[l] = -(l^-1) a0 alam[l] for l != 0; a0 alam[0] = 0
    assert str(evaluate("a1[0]*alam[1]", cedo3)) == "2*a0[0]*alam[1]"
    assert str(evaluate("a1[2]*alam[2]", cedo3)) == "a0[2]*alam[2]"
    assert evaluate("a0[1]*alam[0]", cedo3).is_zero()
    assert evaluate("a1[1]*ainf", cedo3).is_zero()


# ---- section4 -------------------------------------------------------------

@pytest.mark.parametrize("F, expected", [
    (["a[3]", "b[0]*a[2]*a[1]"], "b[3]"),
    (["b[0]*a[1]"], "b[0]"),
    (["a[0] + a[1]*a[0]"], "b[1]"),
])
def test_bb_failure_witness(s4, F, expected):
    elems = [evaluate(f, s4) for f in F]
    bk = bb_failure_witness(elems, s4)
    assert str(bk) == expected
    assert all(multiply(bk, r, s4).is_zero() for r in elems)


def test_bb_failure_membership(s4):
    for bad in ("1", "b[2]", "a[0] + 1"):
        with pytest.raises(MembershipError):
            bb_failure_witness([evaluate(bad, s4)], s4)
    with pytest.raises(MembershipError):
        bb_failure_witness([s4.gen("a", 4)], s4, Bounds(3, 2))


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_bb_failure_random(s4, seed):
    rng = random.Random(seed)
    F = [random_ideal_member(s4, rng, 4, 3) for _ in range(rng.randint(1, 4))]
    bk = bb_failure_witness(F, s4)
    assert all(multiply(bk, r, s4).is_zero() for r in F)


def test_right_zip_certificate(s4):
    b = Bounds(3, 2)
    r = right_zip_certificate([evaluate("1 + b[0]", s4), s4.gen("a", 0)], s4, b)
    assert r.verdict == "pass" and r.witnesses == ["1 + b[0]"]
    assert r.details["right_dim"] == 0 and r.details["left_dim"] == 0
    assert right_zip_certificate([s4.one()], s4, b).verdict == "pass"
    r = right_zip_certificate([s4.gen("a", 0), s4.gen("b", 0)], s4, b)
    assert r.verdict == "fail" and r.details["obstruction"] == "b[0]"


def test_series_bb_evidence(s4):
    r = series_bb_evidence([s4.gen("a", 0)], s4, Bounds(6, 2), 3)
    assert r.verdict == "evidence-only"
    assert r.details["annihilator_dim"] == 22 and r.details["staircase_dim"] == 0


def test_series_bb_staircase_oracle(s4):
    # independent check: no annihilator vector may have support inside the staircase
    t = 3
    r = series_bb_evidence([s4.gen("a", 1)], s4, Bounds(6, 2), t)
    h = evaluate(r.details["h"].replace(" + O(x^4)", ""), s4)
    ann = annihilator(AnnQuery("left", (TruncSeries.from_poly(h, t),), Bounds(6, 2), order=t), s4)
    for v in ann.vectors:
        assert not all(staircase_key(k, t) for k in v)
    # b_0 x^t is the element the plain "indices < t" threshold would wrongly flag
    b0xt = TruncSeries(s4, t, [s4.zero()] * t + [s4.gen("b", 0)])
    assert ann.contains(b0xt)
    assert not staircase_key((t, (s4.gen("b", 0).support()[0][0],)), t)


def test_series_bb_errors(s4):
    with pytest.raises(PreconditionError):
        series_bb_evidence([evaluate("1 + a[0]", s4)], s4, Bounds(4, 2), 2)
    with pytest.raises(NoGeneratorError):
        series_bb_evidence([evaluate("b[0]*a[1]", s4)], s4, Bounds(4, 2), 2)
    with pytest.raises(ValueError):
        series_bb_evidence([s4.gen("a", 0)], s4, Bounds(4, 2), 0)


def test_length_and_delta(arm, s4):
    length, delta = length_and_delta(evaluate("a[1]*b[1] + a[0]*b[2] + a[0]*b[1]", arm))
    assert length == 2 and str(arm.element({delta: 1})) == "a[0]*b[2]"
    length, delta = length_and_delta(evaluate("a[3] + a[1]", arm))
    assert length == 3 and str(arm.element({delta: 1})) == "a[3]"
    with pytest.raises(ZeroElementError):
        length_and_delta(arm.zero())
    with pytest.raises(MixedComponentError):
        length_and_delta(evaluate("a[0] + b[1]", arm))
    with pytest.raises(RingMismatchError):
        length_and_delta(s4.gen("a", 0))


# ---- lemmas and ledgers ----------------------------------------------------

def test_lemmas_section4(s4):
    for name in ("lemma_4_1", "lemma_4_2", "lemma_4_3"):
        assert verify_lemma(name, s4).verdict == "evidence-only"
    r = verify_lemma("lemma_4_1", s4, Bounds(2, 3))
    assert r.details["b"]["annihilator"] == ["b[2]"]
    assert verify_lemma("lemma_4_2", s4).details["tuples"] == 4704
    r = verify_lemma("lemma_4_3", s4)
    assert (r.details["f_scanned"], r.details["zero_divisor_f"]) == (255, 120)


def test_lemma_errors(s4, arm):
    with pytest.raises(ValueError):
        verify_lemma("lemma_9_9", s4)
    with pytest.raises(RingMismatchError):
        verify_lemma("lemma_3_4", s4)
    with pytest.raises(RingMismatchError):
        verify_lemma("lemma_4_1", arm)


def test_lemma_3_4_small(arm):
    r = verify_lemma("lemma_3_4", arm, Bounds(2))
    assert r.verdict == "evidence-only" and r.details["violations"] == 0


@pytest.mark.parametrize("name, bounds", [
    ("section4", Bounds(3, 3)),
    ("armendariz_3_3", Bounds(2, 3)),
    ("cedo_3_1", Bounds(3, 3)),
])
def test_run_claims_all_hold(name, bounds):
    reports = run_claims(name, bounds=bounds)
    assert reports and all(r.passed for r in reports), [r.to_dict() for r in reports if not r.passed]


def test_armendariz_claims_content():
    reports = {r.claim_id: r for r in run_claims("armendariz_3_3", bounds=Bounds(2, 3))}
    pair = reports["not_strongly_armendariz"].witnesses[0]
    assert pair["pair"] == [1, 0] and pair["a[1]*b[0]"] == "a[0]*b[1]"


def test_run_claims_needs_degree():
    with pytest.raises(ValueError):
        run_claims("section4", bounds=Bounds(2))


def test_reports_are_json_roundtrippable(s4):
    import json
    for r in run_claims("section4", bounds=Bounds(2, 2)):
        d = json.loads(json.dumps(r.to_dict()))
        assert d["verdict"] in ("pass", "fail", "evidence-only")
        for w in d["witnesses"]:
            if isinstance(w, str) and "O(" not in w:
                evaluate(w, s4)


def test_cedo_witness_is_polynomial_zero_divisor(cedo):
    w = cedo_witness(cedo, 2, 4)
    f = SkewPoly(cedo, [cedo.gen("a0", 1), cedo.gen("a1", 1)])
    assert multiply(f.coeffs[0], w.coeffs[0], cedo).is_zero()
