import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncann import (
    AnnQuery,
    Bounds,
    Endomorphism,
    SkewPoly,
    TruncSeries,
    annihilator,
    apply_endomorphism,
    coefficient_set,
    endomorphism_from_dsl,
    enumerate_basis,
    evaluate,
    multiply,
    phi_extend,
    psi_restrict,
    shift_endomorphism,
    skew_mul_poly,
    skew_mul_series,
)
from ncann.errors import NcannError, NoInverseError, RelationViolationError
from ncann.linalg import Slice, SubspaceBasis, slice_keys
from ncann.rings import builtin_ring
from ncann.skew import validate_endomorphism


def poly(pres, *coeffs):
    return SkewPoly(pres, [evaluate(c, pres) if isinstance(c, str) else c for c in coeffs])


def test_x_times_constant(s4):
    sigma = shift_endomorphism(s4)
    x = poly(s4, "0", "1")
    b = poly(s4, "b[0]")
    assert skew_mul_poly(x, b, sigma, s4) == poly(s4, "0", "b[1]")


def test_cedo_poly_product(cedo3):
    f = poly(cedo3, "a0[0]", "-a1[0]")
    g = poly(cedo3, "b1[0]")
    got = skew_mul_poly(f, g, Endomorphism.identity(cedo3), cedo3)
    assert got == poly(cedo3, "a0[0]*b1[0]", "-a0[0]*b1[0]")


def test_poly_identity_and_zero(s4):
    f = poly(s4, "a[0]", "b[1]*a[2]")
    one = poly(s4, "1")
    idn = Endomorphism.identity(s4)
    assert skew_mul_poly(f, one, idn, s4) == f
    assert skew_mul_poly(SkewPoly(s4, []), f, idn, s4).is_zero()
    assert SkewPoly(s4, []).degree == float("-inf")
    assert poly(s4, "a[0]", "0", "0").degree == 0


@pytest.mark.parametrize("p", [2, 3])
def test_cedo_series_witness(p):
    pres = builtin_ring("cedo_3_1", p).pres
    idn = Endomorphism.identity(pres)
    for n in range(4):
        w = TruncSeries(pres, 4, [evaluate(f"b1[{n}] - b2[{n}]", pres), pres.gen("b1", n), pres.gen("b2", n)])
        for i in range(n + 1):
            f = TruncSeries(pres, 4, [pres.gen("a0", i), -pres.gen("a1", i)])
            assert skew_mul_series(f, w, idn, pres).is_zero()


def test_armendariz_zero_series(arm):
    t = 8
    f = TruncSeries(arm, t, [arm.gen("a", i) for i in range(t + 1)])
    g = TruncSeries(arm, t, [arm.gen("b", j) for j in range(t + 1)])
    assert skew_mul_series(f, g, Endomorphism.identity(arm), arm).is_zero()
    assert skew_mul_series(TruncSeries(arm, t, []), g, Endomorphism.identity(arm), arm).is_zero()


def test_series_order_mismatch(arm):
    idn = Endomorphism.identity(arm)
    with pytest.raises(NcannError):
        skew_mul_series(TruncSeries(arm, 2, []), TruncSeries(arm, 3, []), idn, arm)


def test_endomorphism_powers(s4):
    idn = Endomorphism.identity(s4)
    e = evaluate("a[0] + b[0]*a[1]", s4)
    assert apply_endomorphism(idn, e, 5) == e
    sigma = shift_endomorphism(s4)
    assert str(apply_endomorphism(sigma, evaluate("b[0]*a[1]", s4))) == "b[1]*a[2]"
    assert str(apply_endomorphism(sigma, e, 2)) == "a[2] + b[2]*a[3]"
    with pytest.raises(NoInverseError):
        apply_endomorphism(sigma, e, -1)


def test_shift_respects_relations(s4, arm):
    assert validate_endomorphism(shift_endomorphism(s4), s4, Bounds(3, 2)) == []
    # relation (a) is not shift-invariant: a_1 b_0 = a_0 b_1 but a_2 b_1 != a_1 b_2
    bad = validate_endomorphism(shift_endomorphism(arm), arm, Bounds(3, 2))
    assert bad
    with pytest.raises(RelationViolationError):
        apply_endomorphism(shift_endomorphism(arm), arm.gen("a", 0), 1, arm, Bounds(3, 2), validate=True)


def test_automorphism_from_table(s4p5):
    text = """
        kind automorphism;
        map a[i] -> 2*a[i];
        map b[j] -> 3*b[j];
        inverse a[i] -> 3*a[i];
        inverse b[j] -> 2*b[j];
    """
    alpha = endomorphism_from_dsl(text, s4p5)
    assert validate_endomorphism(alpha, s4p5, Bounds(2, 2)) == []
    e = evaluate("a[0] + b[0]*a[1]", s4p5)
    assert apply_endomorphism(alpha, apply_endomorphism(alpha, e, -1)) == e
    assert str(apply_endomorphism(alpha, e)) == "2*a[0] + b[0]*a[1]"


def test_automorphism_needs_inverse(s4):
    with pytest.raises(NoInverseError):
        endomorphism_from_dsl("kind automorphism; map a[i] -> a[i];", s4)


def test_broken_inverse_is_reported(s4p5):
    text = "kind automorphism; map a[i] -> 2*a[i]; inverse a[i] -> 2*a[i]; inverse b[j] -> b[j];"
    bad = validate_endomorphism(endomorphism_from_dsl(text, s4p5), s4p5, Bounds(1, 1))
    assert any(v.get("generator") == "a[0]" for v in bad)


def test_coefficient_set(s4):
    f = poly(s4, "a[0]", "b[1]")
    assert coefficient_set([f]) == {s4.zero(), s4.gen("a", 0), s4.gen("b", 1)}
    assert coefficient_set([], s4) == {s4.zero()}
    g = poly(s4, "b[1]", "a[0]")
    assert len(coefficient_set([f, g])) == 3


def test_psi_of_poly_annihilator(s4):
    b = Bounds(3, 1)
    X = [SkewPoly.from_ring(s4.gen("a", 0)), SkewPoly.from_ring(s4.gen("a", 1))]
    B = annihilator(AnnQuery("left", X, b, x_degree=1), s4)
    restricted = psi_restrict(B)
    assert [str(e) for e in restricted.elements()] == ["b[1]", "b[2]", "b[3]"]
    # annihilator of constants in R[x] is R[x] times the ring annihilator
    assert B == phi_extend(restricted, 1)


def test_psi_phi_trivial_cases(s4):
    sl = Slice(Bounds(2, 1), "poly", 1)
    zero = SubspaceBasis(s4, sl, [])
    assert psi_restrict(zero).is_zero()
    keys, _ = slice_keys(s4, sl)
    whole = SubspaceBasis(s4, sl, [{k: 1} for k in keys])
    assert psi_restrict(whole).dim == len(enumerate_basis(s4, Bounds(2, 1)))
    ring_zero = SubspaceBasis(s4, Slice(Bounds(2, 1)), [])
    assert phi_extend(ring_zero, 2).is_zero()


def test_phi_of_section4_annihilator(s4):
    L = annihilator(AnnQuery("left", (s4.gen("a", 0), s4.gen("a", 1)), Bounds(3, 1)), s4)
    P = phi_extend(L, 1)
    assert P.dim == 6
    assert psi_restrict(P) == L
    assert {str(e) for e in P.elements()} == {"b[1]", "b[2]", "b[3]", "b[1]*x", "b[2]*x", "b[3]*x"}


def test_phi_identity_vs_shift(s4):
    # the b-only annihilator is the same subspace whichever alpha builds R[x; alpha]
    X = [SkewPoly.from_ring(s4.gen("a", i)) for i in range(2)]
    ids = annihilator(AnnQuery("left", X, Bounds(3, 1), x_degree=0), s4)
    sh = annihilator(AnnQuery("left", X, Bounds(3, 1), x_degree=0), s4, shift_endomorphism(s4))
    assert psi_restrict(ids) == psi_restrict(sh)


# ---- properties ------------------------------------------------------------

def rand_poly(pres, rng, words, deg=2, k=2):
    coeffs = []
    for _ in range(rng.randint(0, deg) + 1):
        coeffs.append(pres.element({rng.choice(words): rng.randrange(1, pres.p) for _ in range(rng.randint(0, k))}))
    return SkewPoly(pres, coeffs)


def convolution(f, g, pres):
    out = [pres.zero()] * (len(f.coeffs) + len(g.coeffs))
    for i, a in enumerate(f.coeffs):
        for j, b in enumerate(g.coeffs):
            out[i + j] = out[i + j] + multiply(a, b, pres)
    return SkewPoly(pres, out)


@settings(max_examples=50, deadline=None)
@given(name=st.sampled_from(["section4", "armendariz_3_3", "cedo_3_1"]), seed=st.integers(0, 10**6))
def test_identity_skew_product_is_convolution(name, seed):
    pres = builtin_ring(name).pres
    rng = random.Random(seed)
    words = enumerate_basis(pres, Bounds(2, 1))
    f, g = rand_poly(pres, rng, words), rand_poly(pres, rng, words)
    assert skew_mul_poly(f, g, Endomorphism.identity(pres), pres) == convolution(f, g, pres)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), t=st.integers(0, 4), extra=st.integers(1, 3))
def test_series_truncation_consistency(seed, t, extra):
    pres = builtin_ring("section4", 3).pres
    sigma = shift_endomorphism(pres)
    rng = random.Random(seed)
    words = enumerate_basis(pres, Bounds(2, 1))
    f, g = rand_poly(pres, rng, words, 5), rand_poly(pres, rng, words, 5)
    hi = skew_mul_series(TruncSeries.from_poly(f, t + extra), TruncSeries.from_poly(g, t + extra), sigma, pres)
    lo = skew_mul_series(TruncSeries.from_poly(f, t), TruncSeries.from_poly(g, t), sigma, pres)
    assert hi.truncate(t) == lo
    assert TruncSeries.from_poly(skew_mul_poly(f, g, sigma, pres), t) == lo


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), shift=st.booleans())
def test_skew_associativity(seed, shift):
    pres = builtin_ring("section4", 3).pres
    alpha = shift_endomorphism(pres) if shift else Endomorphism.identity(pres)
    rng = random.Random(seed)
    words = enumerate_basis(pres, Bounds(2, 1))
    f, g, h = (rand_poly(pres, rng, words) for _ in range(3))
    left = skew_mul_poly(skew_mul_poly(f, g, alpha, pres), h, alpha, pres)
    right = skew_mul_poly(f, skew_mul_poly(g, h, alpha, pres), alpha, pres)
    assert left == right


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), power=st.integers(0, 3))
def test_endomorphism_is_multiplicative(seed, power):
    pres = builtin_ring("section4", 3).pres
    sigma = shift_endomorphism(pres)
    rng = random.Random(seed)
    words = enumerate_basis(pres, Bounds(3, 2))
    x = pres.element({rng.choice(words): rng.randrange(1, 3) for _ in range(3)})
    y = pres.element({rng.choice(words): rng.randrange(1, 3) for _ in range(3)})
    lhs = apply_endomorphism(sigma, x * y, power)
    assert lhs == apply_endomorphism(sigma, x, power) * apply_endomorphism(sigma, y, power)


def test_series_printing(arm):
    s = TruncSeries(arm, 2, [arm.gen("a", 0), arm.zero(), arm.gen("a", 1)])
    assert str(s) == "a[0] + a[1]*x^2 + O(x^3)"
    assert s.to_dict()["order"] == 2
