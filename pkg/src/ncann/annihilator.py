"""One-sided annihilators inside bounded slices, and checkers built on them.

The annihilator of a finite set X is the kernel of r -> (r*x)_{x in X}
(left side) or r -> (x*r) (right side) over the slice's word basis, computed
by exact elimination over GF(p).  The rings are graded and products are never
truncated, so the result is exactly (true annihilator) intersected with the slice.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import (
    Bounds,
    Presentation,
    RingElem,
    enumerate_basis,
    format_element,
    format_word,
    multiply,
)
from .errors import DegreeOverflowError, IndexBoundsError, NcannError, PreconditionError, VacuousQueryError
from .linalg import Slice, SubspaceBasis, add_scaled, element_vector, kernel, slice_keys
from .report import CheckReport
from .skew import (
    Endomorphism,
    SkewPoly,
    TruncSeries,
    apply_endomorphism,
    skew_mul_poly,
    skew_mul_series,
)

SIDES = ("left", "right")


@dataclass(frozen=True)
class AnnQuery:
    side: str
    X: tuple
    bounds: Bounds
    order: int | None = None  # truncation order for series slices
    x_degree: int | None = None  # x-degree of the polynomial slice

    def __post_init__(self):
        if self.side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}")
        object.__setattr__(self, "X", tuple(self.X))

    @property
    def slice(self) -> Slice:
        if self.order is not None:
            return Slice(self.bounds, "series", self.order)
        if self.x_degree is not None:
            return Slice(self.bounds, "poly", self.x_degree)
        if any(isinstance(x, (SkewPoly, TruncSeries)) for x in self.X):
            deg = max((len(x.coeffs) - 1 for x in self.X if isinstance(x, SkewPoly)), default=0)
            return Slice(self.bounds, "poly", max(deg, 0))
        return Slice(self.bounds)


def _lift(x, sl: Slice, pres):
    if sl.kind == "series":
        if isinstance(x, TruncSeries) and x.order != sl.x_degree:
            raise NcannError(f"series of order {x.order} in an order-{sl.x_degree} query")
        return TruncSeries.from_poly(x, sl.x_degree)
    if sl.kind == "poly":
        if isinstance(x, TruncSeries):
            raise NcannError("series member in a polynomial query")
        return SkewPoly.from_ring(x) if isinstance(x, RingElem) else x
    if not isinstance(x, RingElem):
        raise NcannError("polynomial member in a ring-slice query; pass x_degree or order")
    return x


def _coeffs(x):
    return (x,) if isinstance(x, RingElem) else x.coeffs


def _check_member(x, pres, bounds):
    for c in _coeffs(x):
        if not pres.in_bounds(tuple(g for w in c.terms for g in w), bounds):
            raise IndexBoundsError(f"{c} has an index above {bounds.max_index}")
        if bounds.max_degree is not None and c.grade > bounds.max_degree:
            raise DegreeOverflowError(f"{c} has grade {c.grade} > slice degree {bounds.max_degree}")


def basis_member(key, sl: Slice, pres):
    if sl.kind == "ring":
        return RingElem(pres, {key: 1})
    k, w = key
    coeffs = [pres.zero()] * k + [RingElem(pres, {w: 1})]
    if sl.kind == "poly":
        return SkewPoly(pres, coeffs)
    return TruncSeries(pres, sl.x_degree, coeffs)


def vector_member(vec: dict, sl: Slice, pres):
    if sl.kind == "ring":
        return RingElem(pres, dict(vec))
    n = sl.x_degree + 1
    coeffs = [dict() for _ in range(n)]
    for (k, w), c in vec.items():
        coeffs[k][w] = c
    elems = [RingElem(pres, d) for d in coeffs]
    return SkewPoly(pres, elems) if sl.kind == "poly" else TruncSeries(pres, sl.x_degree, elems)


def _product(u, x, side, sl, alpha, pres):
    a, b = (u, x) if side == "left" else (x, u)
    if sl.kind == "ring":
        return multiply(a, b, pres)
    if sl.kind == "poly":
        return skew_mul_poly(a, b, alpha, pres)
    return skew_mul_series(a, b, alpha, pres)


def _image(u, X, side, sl, alpha, pres) -> dict:
    out = {}
    for i, x in enumerate(X):
        for key, c in element_vector(_product(u, x, side, sl, alpha, pres)).items():
            out[(i, key)] = c
    return out


def _prepare(q: AnnQuery, pres):
    sl = q.slice
    X = [_lift(x, sl, pres) for x in q.X]
    for x in X:
        _check_member(x, pres, q.bounds)
    return sl, X


def annihilator(q: AnnQuery, pres: Presentation, alpha: Endomorphism | None = None) -> SubspaceBasis:
    alpha = alpha or Endomorphism.identity(pres)
    sl, X = _prepare(q, pres)
    keys, _ = slice_keys(pres, sl)
    members = {}

    def image_of(key):
        u = members.setdefault(key, basis_member(key, sl, pres))
        return _image(u, X, q.side, sl, alpha, pres)
    return SubspaceBasis(pres, sl, kernel(keys, image_of, pres.p))


def _restrict(vectors, x, side, sl, alpha, pres):
    """Vectors of span(vectors) that also annihilate x."""
    p = pres.p
    combos = kernel(range(len(vectors)),
                    lambda i: _image(vector_member(vectors[i], sl, pres), (x,), side, sl, alpha, pres), p)
    out = []
    for combo in combos:
        v = {}
        for i, c in combo.items():
            add_scaled(v, vectors[i], c, p)
        out.append(v)
    return out


def is_faithful_upto(X, side: str, pres: Presentation, bounds: Bounds, alpha=None,
                     order=None, x_degree=None):
    """(annihilator is zero in the slice, annihilator basis).  Evidence only, never a proof."""
    basis = annihilator(AnnQuery(side, tuple(X), bounds, order, x_degree), pres, alpha)
    return basis.is_zero(), basis


def member_sort_key(x, pres):
    return tuple((k, pres.word_key(w), c) for k, c_ in enumerate(_coeffs(x))
                 for w, c in c_.items())


def zip_witness_search(X, side: str, pres: Presentation, bounds: Bounds, budget: int | None = None,
                       alpha=None, order=None, x_degree=None):
    """Greedy finite F in X with zero slice annihilator, or None within ``budget``.

    Each step adds the member that cuts the running annihilator dimension the
    most (ties: canonical order).  Raises VacuousQueryError when X itself has
    a nonzero annihilator in the slice.
    """
    alpha = alpha or Endomorphism.identity(pres)
    q = AnnQuery(side, tuple(X), bounds, order, x_degree)
    full = annihilator(q, pres, alpha)
    if not full.is_zero():
        raise VacuousQueryError(
            f"the {side} annihilator of X is already nonzero in the slice (dim {full.dim})", full)
    sl, lifted = _prepare(q, pres)
    budget = len(lifted) if budget is None else budget
    keys, _ = slice_keys(pres, sl)
    current = [{k: 1} for k in keys]
    order_ix = sorted(range(len(lifted)), key=lambda i: member_sort_key(lifted[i], pres))
    chosen = []
    while len(chosen) < budget:
        best, best_vecs = None, None
        for i in order_ix:
            if i in chosen:
                continue
            vecs = _restrict(current, lifted[i], side, sl, alpha, pres)
            if best is None or len(vecs) < len(best_vecs):
                best, best_vecs = i, vecs
        if best is None:
            break
        chosen.append(best)
        current = best_vecs
        if not current:
            return tuple(q.X[i] for i in chosen)
    return None


def _as_poly(f):
    return SkewPoly.from_ring(f) if isinstance(f, RingElem) else f


def armendariz_check(f, g, alpha: Endomorphism, pres: Presentation, bounds: Bounds | None = None):
    """First (i, j) in lexicographic order with a_i alpha^i(b_j) != 0, given f g = 0 exactly."""
    f, g = _as_poly(f), _as_poly(g)
    if skew_mul_poly(f, g, alpha, pres, bounds):
        raise PreconditionError("f(x) g(x) is not zero")
    for i, a in enumerate(f.coeffs):
        for j, b in enumerate(g.coeffs):
            if a.terms and b.terms and multiply(a, apply_endomorphism(alpha, b, i, pres), pres, bounds):
                return (i, j)
    return None


def strong_armendariz_check(f: TruncSeries, g: TruncSeries, alpha: Endomorphism, pres: Presentation,
                            bounds: Bounds | None = None):
    """Violating (i, j) with i + j <= t, given f g = 0 mod x^(t+1); evidence at order t only.

    Pairs are scanned by total x-degree i + j, then by j.
    """
    if f.order != g.order:
        raise NcannError(f"series orders differ: {f.order} vs {g.order}")
    if not skew_mul_series(f, g, alpha, pres, bounds).is_zero():
        raise PreconditionError(f"f(x) g(x) is not zero modulo x^{f.order + 1}")
    t = f.order
    for total in range(t + 1):
        for j in range(total + 1):
            i = total - j
            a, b = f.coeffs[i], g.coeffs[j]
            if a.terms and b.terms and multiply(a, apply_endomorphism(alpha, b, i, pres), pres, bounds):
                return (i, j)
    return None


def _random_element(rng, words, pres, max_terms=3):
    k = rng.randint(1, max_terms)
    return pres.element({rng.choice(words): rng.randrange(1, pres.p) for _ in range(k)})


def alpha_compatibility_check(alpha: Endomorphism, pres: Presentation, bounds: Bounds,
                              sample_count: int = 100, seed: int = 0) -> CheckReport:
    """ab = 0 iff a alpha(b) = 0: all word pairs in bounds, then random element pairs."""
    if bounds.max_degree is None:
        raise ValueError("alpha_compatibility_check needs a finite max_degree")
    d = bounds.max_degree
    words = enumerate_basis(pres, bounds)
    details = {"bounds": bounds.to_dict(), "word_pairs": 0, "samples": sample_count, "alpha": alpha.name}

    def compare(a, b):
        ab = multiply(a, b, pres)
        aab = multiply(a, apply_endomorphism(alpha, b, 1, pres), pres)
        if ab.is_zero() != aab.is_zero():
            return CheckReport("alpha_compatible", "fail", [{
                "a": format_element(a), "b": format_element(b),
                "ab": format_element(ab), "a_alpha_b": format_element(aab),
            }], details)
        return None

    for wa in words:
        for wb in words:
            if len(wa) + len(wb) > d:
                continue
            details["word_pairs"] += 1
            bad = compare(RingElem(pres, {wa: 1}), RingElem(pres, {wb: 1}))
            if bad:
                return bad
    rng = random.Random(seed)
    by_grade = {}
    for w in words:
        by_grade.setdefault(len(w), []).append(w)
    for _ in range(sample_count):
        ga = rng.randint(0, d)
        gb = rng.randint(0, d - ga)
        pool_a = [w for g in range(ga + 1) for w in by_grade.get(g, [])]
        pool_b = [w for g in range(gb + 1) for w in by_grade.get(g, [])]
        bad = compare(_random_element(rng, pool_a, pres), _random_element(rng, pool_b, pres))
        if bad:
            return bad
    return CheckReport("alpha_compatible", "evidence-only", [], details)


def describe_basis(basis: SubspaceBasis) -> list:
    return [str(e) for e in basis.elements()]


__all__ = [
    "AnnQuery", "annihilator", "is_faithful_upto", "zip_witness_search", "armendariz_check",
    "strong_armendariz_check", "alpha_compatibility_check", "basis_member", "vector_member",
    "describe_basis", "format_word",
]
