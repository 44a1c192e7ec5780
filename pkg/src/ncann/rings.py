"""Built-in example rings and executable checks of their constructive claims.

Three rings are encoded:

* ``section4``: generators a_i, b_j; b_j b_l = a_i b_j = 0 and b_j a_i = 0 iff j >= i.
  A monomial algebra with basis {1} U <A> U B U V, V = {b_j a_i1...a_in : j < i1}.
* ``armendariz_3_3``: over GF(2); a_i b_0 = sum_{k=1..i} a_{i-k} b_k, a_0 b_0 = 0,
  and every other product of two generators is 0.
* ``cedo_3_1``: generators ainf, alam[l] (one per field element), a0[n], a1[n],
  b1[n], b2[n]; see ``_cedo_source`` for the oriented relations.

Checks that quantify over the infinite ring are bounded evidence only.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import (
    Bounds,
    ComponentScheme,
    Presentation,
    RingElem,
    check_basis_claim,
    decompose_components,
    enumerate_basis,
    format_element,
    format_word,
    multiply,
)
from .annihilator import (
    AnnQuery,
    alpha_compatibility_check,
    annihilator,
    describe_basis,
    is_faithful_upto,
    strong_armendariz_check,
    zip_witness_search,
)
from .dsl import parse_presentation
from .errors import (
    MembershipError,
    MixedComponentError,
    NcannError,
    NoGeneratorError,
    PreconditionError,
    RingMismatchError,
    UnsupportedRingError,
    VacuousQueryError,
    ZeroElementError,
)
from .field import check_prime, inv
from .linalg import SubspaceBasis, intersect_coordinates
from .report import CheckReport
from .skew import Endomorphism, SkewPoly, TruncSeries, shift_endomorphism, skew_mul_series

BUILTIN_NAMES = ("cedo_3_1", "armendariz_3_3", "section4")
DEFAULT_BOUNDS = Bounds(3, 3)


# ---------------------------------------------------------------------------
# presentations

SECTION4_SOURCE = """\
field {p};
family a(1);
family b(1);
rule b[j]*b[l] -> 0;
rule a[i]*b[j] -> 0;
rule b[j]*a[i] -> 0 when j >= i;
"""

ARMENDARIZ_SOURCE = """\
field 2;
family a(1);
family b(1);
rule a[i]*b[0] -> sum(k=1..i)(a[i-k]*b[k]) when i >= 1;
rule a[0]*b[0] -> 0;
rule b[i]*a[j] -> 0;
rule a[i]*a[j] -> 0;
rule b[i]*b[j] -> 0;
"""

_CEDO_FAMILIES = ("ainf", "alam", "a0", "a1", "b1", "b2")


def _letter(fam, var):
    if fam == "ainf":
        return "ainf"
    return f"{fam}[{var}]"


def _cedo_source(p: int) -> str:
    lines = [
        f"field {p};",
        "family ainf(0);",
        f"family alam(1) range {p};",
        "family a0(1);",
        "family a1(1);",
        "family b1(1);",
        "family b2(1);",
        "rule a0[i]*b2[j] -> a0[i]*b1[j] when j >= i;",
        "rule a1[i]*b1[j] -> a0[i]*b1[j] when j >= i;",
        "rule a1[i]*b2[j] -> 0 when j >= i;",
        "rule a1[i]*ainf -> 0;",
        "rule a0[i]*alam[0] -> 0;",
    ]
    for lam in range(1, p):
        c = (-inv(lam, p)) % p
        lines.append(f"rule a1[i]*alam[{lam}] -> {c}*a0[i]*alam[{lam}];")
    for left in ("ainf", "alam", "b1", "b2"):
        for right in _CEDO_FAMILIES:
            lines.append(f"rule {_letter(left, 'u')}*{_letter(right, 'v')} -> 0;")
    return "\n".join(lines) + "\n"


def _section4_basis(w) -> bool:
    if not w or all(g.family == "a" for g in w):
        return True
    if w[0].family != "b" or any(g.family != "a" for g in w[1:]):
        return False
    return len(w) == 1 or w[0].indices[0] < w[1].indices[0]


def _section4_class(w) -> str:
    if not w:
        return "0"
    if w[0].family == "a":
        return "a"
    return "b" if len(w) == 1 else "ba"


def _armendariz_basis(w) -> bool:
    if len(w) <= 1:
        return True
    return len(w) == 2 and w[0].family == "a" and w[1].family == "b" and w[1].indices[0] >= 1


def _armendariz_class(w) -> str:
    if not w:
        return "0"
    if len(w) == 2:
        return "2"
    return w[0].family


def _cedo_basis(w) -> bool:
    if all(g.family in ("a0", "a1") for g in w):
        return True  # item 1
    if any(g.family not in ("a0", "a1") for g in w[:-1]):
        return False
    last = w[-1]
    if len(w) == 1:
        return True  # items 2 and 4 with n = 0
    prev = w[-2]
    if last.family in ("ainf", "alam"):
        if prev.family == "a0":
            # item 2; a0[i]*alam[0] vanishes, so mu = 0 is excluded once n > 0
            return not (last.family == "alam" and last.indices[0] == 0)
        return last.family == "alam" and last.indices[0] == 0  # item 3
    if last.indices[0] >= prev.indices[0]:
        return prev.family == "a0" and last.family == "b1"
    return True  # item 4


@dataclass(frozen=True)
class BuiltinRing:
    name: str
    presentation: Presentation
    source: str

    @property
    def pres(self):
        return self.presentation

    @property
    def component_scheme(self):
        return self.presentation.component_scheme

    @property
    def basis_predicate(self):
        return self.presentation.claimed_basis


@lru_cache(maxsize=None)
def builtin_ring(name: str, p: int = 2) -> BuiltinRing:
    check_prime(p)
    if name == "section4":
        source = SECTION4_SOURCE.format(p=p)
        basis, scheme = _section4_basis, ComponentScheme(("0", "a", "b", "ba"), _section4_class)
    elif name == "armendariz_3_3":
        if p != 2:
            raise UnsupportedRingError("armendariz_3_3 is defined over GF(2) only")
        source = ARMENDARIZ_SOURCE
        basis, scheme = _armendariz_basis, ComponentScheme(("0", "a", "b", "2"), _armendariz_class)
    elif name == "cedo_3_1":
        source = _cedo_source(p)
        basis, scheme = _cedo_basis, None
    else:
        raise UnsupportedRingError(f"unknown built-in ring {name!r}; choose from {BUILTIN_NAMES}")
    parsed = parse_presentation(source, name)
    pres = Presentation(parsed.p, list(parsed.families.values()), parsed.rules,
                        claimed_basis=basis, component_scheme=scheme, name=name)
    return BuiltinRing(name, pres, source)


def _require(pres: Presentation, name: str):
    if pres.name != name:
        raise RingMismatchError(f"expected the {name} ring, got {pres.name or 'a custom presentation'}")


# ---------------------------------------------------------------------------
# armendariz_3_3: length and delta


def _word_length(w) -> int:
    return sum(g.indices[0] for g in w) if w else -1


def length_and_delta(e: RingElem, pres: Presentation | None = None):
    """(l(e), delta(e)) for e in one component U_0, U_a, U_b or U_2."""
    pres = pres or e.pres
    _require(pres, "armendariz_3_3")
    if e.is_zero():
        raise ZeroElementError("l(0) is -infinity and delta(0) is undefined")
    classes = {_armendariz_class(w) for w in e.terms}
    if len(classes) > 1:
        raise MixedComponentError(f"{e} mixes components {sorted(classes)}")
    length = max(_word_length(w) for w in e.terms)
    top = [w for w in e.terms if _word_length(w) == length]
    # U_a, U_b: the single word of top length; U_2: largest b index among ties
    delta = max(top, key=lambda w: w[-1].indices[0] if w else 0)
    return length, delta


# ---------------------------------------------------------------------------
# cedo_3_1: the series witness


def cedo_witness(pres: Presentation, n: int, order: int) -> TruncSeries:
    b1, b2 = pres.gen("b1", n), pres.gen("b2", n)
    return TruncSeries(pres, order, [b1 - b2, b1, b2])


def cedo_x_member(pres: Presentation, i: int, order: int | None = None):
    f = SkewPoly(pres, [pres.gen("a0", i), -pres.gen("a1", i)])
    return f if order is None else TruncSeries.from_poly(f, order)


def cedo_series_witness(n: int, pres: Presentation, t: int = 4, witness=None) -> CheckReport:
    """Check (a0[i] - a1[i] x) * w_n = 0 mod x^(t+1) for every i <= n."""
    _require(pres, "cedo_3_1")
    if t < 3:
        raise ValueError("order t must be at least 3")
    w = cedo_witness(pres, n, t) if witness is None else TruncSeries.from_poly(witness, t)
    alpha = Endomorphism.identity(pres)
    details = {"n": n, "order": t, "witness": str(w)}
    for i in range(n + 1):
        prod = skew_mul_series(cedo_x_member(pres, i, t), w, alpha, pres)
        for k, c in enumerate(prod.coeffs):
            if not c.is_zero():
                return CheckReport("cedo_series_witness", "fail",
                                   [{"i": i, "x_power": k, "coefficient": format_element(c)}], details)
    return CheckReport("cedo_series_witness", "pass", [], details)


def cedo_zip_evidence(n: int, pres: Presentation, t: int = 4) -> CheckReport:
    """X_n has a nonzero right annihilator in the series slice, containing w_n."""
    _require(pres, "cedo_3_1")
    X = [cedo_x_member(pres, i, t) for i in range(n + 1)]
    bounds = Bounds(n, 1)
    details = {"n": n, "order": t, "bounds": bounds.to_dict()}
    try:
        F = zip_witness_search(X, "right", pres, bounds, order=t)
    except VacuousQueryError as exc:
        basis = exc.basis
        details["annihilator_dim"] = basis.dim
        found = basis.contains(cedo_witness(pres, n, t))
        verdict = "evidence-only" if found else "fail"
        return CheckReport("cedo_not_right_zip", verdict, [str(cedo_witness(pres, n, t))], details)
    return CheckReport("cedo_not_right_zip", "fail", [[str(f) for f in F or ()]], details)


# ---------------------------------------------------------------------------
# section4: Beachy-Blair and zip witnesses


def _in_ideal_span(w) -> bool:
    """Support words allowed for members of the left ideal generated by A: <A> U V."""
    return bool(w) and (w[0].family == "a" or len(w) > 1)


def bb_failure_witness(F, pres: Presentation, bounds: Bounds | None = None) -> RingElem:
    """b_k annihilating every member of F from the left; k = max leading a-index, or 0."""
    _require(pres, "section4")
    F = list(F)
    leads = []
    for r in F:
        for w in r.terms:
            if not _in_ideal_span(w):
                raise MembershipError(f"support word {format_word(w)} of {r} is not in <A> U V")
            if bounds is not None and not pres.in_bounds(w, bounds):
                raise MembershipError(f"support word {format_word(w)} is outside the bounds")
            if w[0].family == "a":
                leads.append(w[0].indices[0])
    bk = pres.gen("b", max(leads, default=0))
    for r in F:
        if not multiply(bk, r, pres).is_zero():
            raise NcannError(f"{bk} does not annihilate {r}")
    return bk


def right_zip_certificate(X, pres: Presentation, bounds: Bounds) -> CheckReport:
    """Singleton right-zip witness: a member with nonzero scalar part."""
    _require(pres, "section4")
    X = list(X)
    details = {"bounds": bounds.to_dict(), "size": len(X)}
    for r in X:
        if r.scalar_part:
            right = annihilator(AnnQuery("right", (r,), bounds), pres)
            left = annihilator(AnnQuery("left", (r,), bounds), pres)
            details.update(right_dim=right.dim, left_dim=left.dim)
            verdict = "pass" if right.is_zero() and left.is_zero() else "fail"
            return CheckReport("right_zip", verdict, [str(r)], details)
    b0 = pres.gen("b", 0)
    obstruction = all(multiply(r, b0, pres).is_zero() for r in X)
    details["obstruction"] = str(b0) if obstruction else None
    details["note"] = "no member has a nonzero scalar part; b[0] lies in the right annihilator"
    return CheckReport("right_zip", "fail", [str(b0)] if obstruction else [], details)


def _scalar_free(f) -> bool:
    return all(c.scalar_part == 0 for c in f.coeffs)


def staircase_key(key, t: int) -> bool:
    """(x-power j, word) lies below the staircase: every index < t - j."""
    j, w = key
    return all(i < t - j for g in w for i in g.indices)


def series_bb_evidence(J, pres: Presentation, bounds: Bounds, t: int) -> CheckReport:
    """h = g f_a for g = sum_{i<=t} a_i x^i; its truncated left annihilator must
    avoid the staircase region (x^j coefficients with all indices < t - j)."""
    _require(pres, "section4")
    if t < 1:
        raise ValueError("order t must be at least 1")
    J = [TruncSeries.from_poly(SkewPoly.from_ring(f) if isinstance(f, RingElem) else f, t) for f in J]
    for f in J:
        if not _scalar_free(f):
            raise PreconditionError(f"{f} has a nonzero scalar-series part; l.ann of it is already zero")
    alpha = Endomorphism.identity(pres)
    g = TruncSeries(pres, t, [pres.gen("a", i) for i in range(t + 1)])
    chosen = None
    for f in J:
        if not skew_mul_series(g, f, alpha, pres).is_zero():
            chosen = f
            break
    if chosen is None:
        raise NoGeneratorError(f"g*f vanishes mod x^{t + 1} for every generator; enlarge t")
    fa = TruncSeries(pres, t, [decompose_components(c)["a"] for c in chosen.coeffs])
    h = skew_mul_series(g, fa, alpha, pres)
    ann = annihilator(AnnQuery("left", (h,), bounds, order=t), pres)
    low = intersect_coordinates(ann, lambda key: staircase_key(key, t))
    details = {"order": t, "bounds": bounds.to_dict(), "h": str(h), "annihilator_dim": ann.dim,
               "staircase_dim": len(low)}
    witnesses = [str(e) for e in SubspaceBasis(pres, ann.slice, low).elements()]
    return CheckReport("series_bb", "evidence-only" if not low else "fail", witnesses, details)


# ---------------------------------------------------------------------------
# exhaustive searches


def coefficient_choices(words, p: int, max_support: int):
    """Every element with support <= max_support on ``words`` (zero first)."""
    out = [{}]
    for size in range(1, max_support + 1):
        for combo in itertools.combinations(words, size):
            for coeffs in itertools.product(range(1, p), repeat=size):
                out.append(dict(zip(combo, coeffs)))
    return out


def armendariz_search(pres: Presentation, max_index: int = 3, max_support: int = 2, x_degree: int = 2,
                      max_report: int = 10) -> dict:
    """Every f with x-degree <= x_degree and coefficient support <= max_support
    against every g in the polynomial slice of the same x-degree.

    Counts f whose right annihilator K_f differs from {g : c_i s_j = 0} (an
    Armendariz violation) and f, g pairs breaking the scalar-part conclusion.
    """
    from ._gf2kernel import run_scan

    if pres.p != 2:
        raise UnsupportedRingError("the bitset scan runs over GF(2)")
    words = enumerate_basis(pres, Bounds(max_index))
    pos = {w: i for i, w in enumerate(words)}
    n = len(words)
    for u in words:
        for v in words:
            for w in multiply(RingElem(pres, {u: 1}), RingElem(pres, {v: 1}), pres).terms:
                if w not in pos:
                    raise NcannError("word products leave the index slice")
    choices = coefficient_choices(words, 2, max_support)
    prod = {}
    T = np.zeros((len(choices), n), dtype=np.uint64)
    masks = np.zeros(len(choices), dtype=np.uint64)
    for ci, c in enumerate(choices):
        elem = RingElem(pres, c)
        for u in c:
            masks[ci] |= np.uint64(1) << np.uint64(pos[u])
        for v in words:
            key = (tuple(sorted(c, key=pres.word_key)), v)
            if key not in prod:
                prod[key] = multiply(elem, RingElem(pres, {v: 1}), pres)
            for w in prod[key].terms:
                T[ci, pos[w]] |= np.uint64(1) << np.uint64(pos[v])
    total, zero_div, dims, nviol, viol, nlem, lem = run_scan(T, masks, n, x_degree, pos.get((), -1),
                                                             max_report)

    def show(row):
        return str(SkewPoly(pres, [RingElem(pres, choices[i]) for i in row]))
    return {
        "max_index": max_index, "max_support": max_support, "x_degree": x_degree,
        "slice_words": n, "f_scanned": int(total), "zero_divisor_f": int(zero_div),
        "kernel_dim_total": int(dims), "violations": int(nviol),
        "violation_examples": [show(r) for r in viol[:min(nviol, max_report)]],
        "lemma_failures": int(nlem), "lemma_examples": [show(r) for r in lem[:min(nlem, max_report)]],
    }


def _elements_with_support(words, pres, max_support):
    return [RingElem(pres, c) for c in coefficient_choices(words, pres.p, max_support)[1:]]


def _lemma_4_1(pres, bounds, sample_count, seed):
    out = {}
    # (a) nonzero r in span V, s in K + span <A>: rs != 0
    words = enumerate_basis(pres, bounds)
    v_words = [w for w in words if _section4_class(w) == "ba"]
    a_words = [w for w in words if _section4_class(w) in ("0", "a") and len(w) <= 1]
    rs = _elements_with_support(v_words, pres, 2)
    ss = _elements_with_support(a_words, pres, 2)
    zero_pairs = [(str(r), str(s)) for r in rs for s in ss if multiply(r, s, pres).is_zero()]
    out["a"] = {"pairs": len(rs) * len(ss), "zero_products": zero_pairs[:5]}
    # (b) left annihilator of a_0..a_N is spanned by words b_j, j >= N
    N = bounds.max_index
    ann = annihilator(AnnQuery("left", tuple(pres.gen("a", i) for i in range(N + 1)), bounds), pres)
    stray = [str(e) for e in ann.elements()
             if len(e.terms) != 1 or _section4_class(e.support()[0]) != "b" or e.support()[0][0].indices[0] < N]
    out["b"] = {"annihilator": describe_basis(ann), "stray": stray}
    # (c) nonzero scalar part: both annihilators vanish
    rng = random.Random(seed)
    nonscalar = [w for w in words if w]
    bad = []
    for _ in range(sample_count):
        terms = {(): rng.randrange(1, pres.p)}
        for w in rng.sample(nonscalar, rng.randint(0, 3)):
            terms[w] = rng.randrange(1, pres.p)
        r = RingElem(pres, terms)
        for side in ("left", "right"):
            if not annihilator(AnnQuery(side, (r,), bounds), pres).is_zero():
                bad.append((side, str(r)))
    out["c"] = {"samples": sample_count, "nonzero_annihilators": bad[:5]}
    ok = not zero_pairs and not stray and not bad
    return CheckReport("lemma_4_1", "evidence-only" if ok else "fail",
                       zero_pairs[:5] + stray + bad[:5], {"bounds": bounds.to_dict(), **out})


def _lemma_4_2(pres, bounds, n=2, max_support=2):
    """sum r_i a_i s = 0 iff every r_i a_i s = 0, r_i nonzero, s nonzero in span <A>."""
    words = [w for w in enumerate_basis(pres, bounds) if len(w) <= 1]
    rs = _elements_with_support(words, pres, max_support)
    ss = _elements_with_support([w for w in words if len(w) == 1 and w[0].family == "a"], pres, max_support)
    a = [pres.gen("a", i) for i in range(1, n + 1)]
    table = {(ri, i, si): multiply(multiply(r, a[i], pres), s, pres)
             for ri, r in enumerate(rs) for i in range(n) for si, s in enumerate(ss)}
    counter = []
    checked = 0
    for si in range(len(ss)):
        for combo in itertools.product(range(len(rs)), repeat=n):
            checked += 1
            parts = [table[(ri, i, si)] for i, ri in enumerate(combo)]
            total = parts[0]
            for q in parts[1:]:
                total = total + q
            if total.is_zero() != all(q.is_zero() for q in parts):
                counter.append([str(rs[ri]) for ri in combo] + [str(ss[si])])
    return CheckReport("lemma_4_2", "evidence-only" if not counter else "fail", counter[:5],
                       {"bounds": bounds.to_dict(), "n": n, "tuples": checked, "counterexamples": len(counter)})


def _lemma_4_3(pres, bounds, x_degree=1, max_support=2):
    """Every f with a nonzero right annihilator in R[x] has f_0 = 0, and so does every g."""
    words = enumerate_basis(pres, bounds)
    choices = [RingElem(pres, c) for c in coefficient_choices(words, pres.p, max_support)]
    failures, zero_div, scanned = [], 0, 0
    for coeffs in itertools.product(choices, repeat=x_degree + 1):
        f = SkewPoly(pres, coeffs)
        if f.is_zero():
            continue
        scanned += 1
        K = annihilator(AnnQuery("right", (f,), bounds, x_degree=x_degree), pres)
        if K.is_zero():
            continue
        zero_div += 1
        g_scalar = any(not w for v in K.vectors for (_, w) in v)
        if not _scalar_free(f) or g_scalar:
            failures.append(str(f))
    return CheckReport("lemma_4_3", "evidence-only" if not failures else "fail", failures[:5],
                       {"bounds": bounds.to_dict(), "x_degree": x_degree, "f_scanned": scanned,
                        "zero_divisor_f": zero_div})


def _lemma_3_4(pres, bounds, max_support=2, x_degree=2):
    res = armendariz_search(pres, bounds.max_index, max_support, x_degree)
    verdict = "evidence-only" if res["lemma_failures"] == 0 else "fail"
    return CheckReport("lemma_3_4", verdict, res["lemma_examples"], res)


LEMMAS = ("lemma_3_4", "lemma_4_1", "lemma_4_2", "lemma_4_3")


def verify_lemma(name: str, pres: Presentation, bounds: Bounds | None = None, sample_count: int = 20,
                 seed: int = 0, **params) -> CheckReport:
    if name not in LEMMAS:
        raise ValueError(f"unknown lemma {name!r}; choose from {LEMMAS}")
    _require(pres, "armendariz_3_3" if name == "lemma_3_4" else "section4")
    if name == "lemma_3_4":
        return _lemma_3_4(pres, bounds or Bounds(3), **params)
    if name == "lemma_4_1":
        return _lemma_4_1(pres, bounds or Bounds(2, 3), sample_count, seed)
    if name == "lemma_4_2":
        return _lemma_4_2(pres, bounds or Bounds(2, 1), **params)
    return _lemma_4_3(pres, bounds or Bounds(1, 1), **params)


# ---------------------------------------------------------------------------
# random members used by the ledgers


def random_ideal_member(pres, rng, max_index=5, max_degree=3, max_support=4) -> RingElem:
    """Random element supported on <A> U V (the left ideal generated by A)."""
    words = [w for w in enumerate_basis(pres, Bounds(max_index, max_degree)) if _in_ideal_span(w)]
    k = rng.randint(1, max_support)
    return RingElem(pres, {w: rng.randrange(1, pres.p) for w in rng.sample(words, k)})


def random_element(pres, rng, bounds, max_support=4, scalar=None) -> RingElem:
    words = enumerate_basis(pres, bounds)
    k = rng.randint(1, max_support)
    terms = {w: rng.randrange(1, pres.p) for w in rng.sample(words, min(k, len(words)))}
    if scalar is True:
        terms[()] = rng.randrange(1, pres.p)
    elif scalar is False:
        terms.pop((), None)
    return RingElem(pres, terms)


# ---------------------------------------------------------------------------
# claim ledgers


def _section4_claims(ring, bounds, order, seed):
    pres = ring.pres
    rng = random.Random(seed)
    reports = [check_basis_claim(pres, bounds, seed=seed)]
    reports.append(verify_lemma("lemma_4_1", pres, Bounds(min(bounds.max_index, 2), 3), seed=seed))
    reports.append(verify_lemma("lemma_4_2", pres))
    reports.append(verify_lemma("lemma_4_3", pres))
    # not left Beachy-Blair / not left zip: A is faithful in R, yet every slice keeps b_N
    N = bounds.max_index
    faithful, ann = is_faithful_upto([pres.gen("a", i) for i in range(N + 1)], "left", pres, bounds)
    bN = pres.gen("b", N)
    reports.append(CheckReport("a_generators_keep_b_N", "evidence-only" if ann.contains(bN) and not faithful
                               else "fail", [str(bN)], {"bounds": bounds.to_dict(), "dim": ann.dim}))
    bad = []
    for _ in range(20):
        F = [random_ideal_member(pres, rng, N, bounds.max_degree) for _ in range(rng.randint(1, 4))]
        bk = bb_failure_witness(F, pres)
        if any(not multiply(bk, r, pres).is_zero() for r in F):
            bad.append([str(r) for r in F])
    reports.append(CheckReport("bb_failure", "pass" if not bad else "fail", bad[:5], {"samples": 20}))
    t = order if order is not None else 3
    reports.append(series_bb_evidence([pres.gen("a", 0)], pres, Bounds(max(N, 2 * t), 2), t))
    small = Bounds(N, min(bounds.max_degree, 2))
    for _ in range(5):
        X = [random_element(pres, rng, small, scalar=False) for _ in range(2)]
        X.insert(rng.randrange(len(X) + 1), random_element(pres, rng, small, scalar=True))
        reports.append(right_zip_certificate(X, pres, small))
    reports.append(alpha_compatibility_check(Endomorphism.identity(pres), pres, Bounds(2, 2)))
    shift = alpha_compatibility_check(shift_endomorphism(pres), pres, Bounds(2, 2))
    expected = shift.witnesses[:1] and shift.witnesses[0]["a"] == "b[0]" and shift.witnesses[0]["b"] == "a[0]"
    reports.append(CheckReport("shift_not_compatible", "pass" if expected else "fail",
                               shift.witnesses, shift.details))
    return reports


def _armendariz_claims(ring, bounds, order, seed):
    pres = ring.pres
    reports = [check_basis_claim(pres, bounds, seed=seed)]
    t = order if order is not None else 8
    f = TruncSeries(pres, t, [pres.gen("a", i) for i in range(t + 1)])
    g = TruncSeries(pres, t, [pres.gen("b", j) for j in range(t + 1)])
    alpha = Endomorphism.identity(pres)
    zero = skew_mul_series(f, g, alpha, pres).is_zero()
    reports.append(CheckReport("zero_series_product", "evidence-only" if zero else "fail", [],
                               {"order": t}))
    pair = strong_armendariz_check(f, g, alpha, pres) if zero else None
    a1b0 = multiply(pres.gen("a", 1), pres.gen("b", 0), pres)
    reports.append(CheckReport("not_strongly_armendariz", "pass" if pair == (1, 0) else "fail",
                               [{"pair": list(pair) if pair else None, "a[1]*b[0]": str(a1b0)}], {"order": t}))
    search = armendariz_search(pres, bounds.max_index)
    reports.append(CheckReport("armendariz", "evidence-only" if search["violations"] == 0 else "fail",
                               search["violation_examples"], search))
    reports.append(CheckReport("lemma_3_4", "evidence-only" if search["lemma_failures"] == 0 else "fail",
                               search["lemma_examples"], search))
    return reports


def _cedo_claims(ring, bounds, order, seed):
    pres = ring.pres
    t = order if order is not None else 4
    reports = [check_basis_claim(pres, Bounds(min(bounds.max_index, 2), min(bounds.max_degree, 3)), seed=seed)]
    reports.extend(cedo_series_witness(n, pres, t) for n in range(5))
    reports.append(cedo_zip_evidence(min(bounds.max_index, 2), pres, t))
    reports.append(alpha_compatibility_check(Endomorphism.identity(pres), pres, Bounds(1, 2)))
    return reports


def run_claims(name: str, p: int = 2, bounds: Bounds | None = None, order: int | None = None,
               seed: int = 0) -> list:
    ring = builtin_ring(name, p)
    bounds = bounds or DEFAULT_BOUNDS
    if bounds.max_degree is None:
        raise ValueError("claim ledgers need a finite degree bound")
    runner = {"section4": _section4_claims, "armendariz_3_3": _armendariz_claims,
              "cedo_3_1": _cedo_claims}[name]
    return runner(ring, bounds, order, seed)
