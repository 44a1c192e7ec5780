"""Skew polynomials R[x; alpha] and order-t truncations of R[[x; alpha]].

Multiplication follows x*b = alpha(b)*x, i.e. the coefficient of x^(i+j)
collects a_i * alpha^i(b_j).
"""

from __future__ import annotations

import threading
from typing import Callable, Iterable, Mapping

from .algebra import (
    Bounds,
    GeneratorId,
    Presentation,
    RingElem,
    format_element,
    multiply,
    rule_instances,
)
from .errors import DegreeOverflowError, NcannError, NoInverseError, RelationViolationError
from .linalg import Slice, SubspaceBasis, intersect_coordinates


class Endomorphism:
    """Ring map given by generator images and extended multiplicatively.

    ``images`` maps a GeneratorId to its image (a RingElem); it may be a
    callable or a mapping.  Generators missing from a mapping are fixed.
    ``inverse`` (automorphisms only) returns None for generators without a
    preimage.
    """

    def __init__(self, pres: Presentation, images=None, kind: str = "endomorphism",
                 inverse=None, name: str = ""):
        if kind not in ("endomorphism", "automorphism"):
            raise ValueError(f"unknown kind {kind!r}")
        self.pres = pres
        self.kind = kind
        self.name = name
        self.is_identity = images is None
        self._images = _as_callable(pres, images)
        self._inverse = _as_callable(pres, inverse, partial=True) if inverse is not None else None
        self._word_cache = ({}, {})
        self._lock = threading.Lock()
        self._validated = set()

    @classmethod
    def identity(cls, pres: Presentation) -> "Endomorphism":
        return cls(pres, None, kind="automorphism", inverse=None, name="id")

    @property
    def has_inverse(self):
        return self.is_identity or (self.kind == "automorphism" and self._inverse is not None)

    def image(self, g: GeneratorId, inverse: bool = False) -> RingElem:
        if self.is_identity:
            return self.pres.element({(g,): 1})
        fn = self._inverse if inverse else self._images
        out = fn(g)
        if out is None:
            raise NoInverseError(f"{g} has no preimage under {self.name or 'alpha'}")
        return out

    def word_image(self, word, inverse: bool = False) -> RingElem:
        cache = self._word_cache[1 if inverse else 0]
        hit = cache.get(word)
        if hit is not None:
            return hit
        out = self.pres.one()
        for g in word:
            out = multiply(out, self.image(g, inverse), self.pres)
        with self._lock:
            return cache.setdefault(word, out)

    def __call__(self, e: RingElem) -> RingElem:
        return apply_endomorphism(self, e, 1)


def _as_callable(pres, images, partial=False):
    if images is None or callable(images):
        return images
    table = dict(images)

    def lookup(g):
        if g in table:
            return table[g]
        return None if partial else pres.element({(g,): 1})
    return lookup


def shift_endomorphism(pres: Presentation, by: int = 1) -> Endomorphism:
    """Index shift g[i,...] -> g[i+by,...] on every family without a fixed range."""

    def image(g):
        if pres.families[g.family].fixed_range is not None:
            return pres.element({(g,): 1})
        return pres.element({(GeneratorId(g.family, tuple(i + by for i in g.indices)),): 1})
    return Endomorphism(pres, image, kind="endomorphism", name=f"shift{by:+d}")


def endomorphism_from_dsl(text: str, pres: Presentation) -> Endomorphism:
    from .dsl import parse_map_statements

    kind, forward, backward = parse_map_statements(text, pres)

    def table(rules, partial):
        def image(g):
            word = (g,)
            for rule in rules:
                env = rule.match(word, 0)
                if env is not None:
                    return pres.element([(c, w) for c, w in rule.expand(env, pres.p)])
            return None if partial else pres.element({word: 1})
        return image

    inverse = table(backward, True) if backward else None
    if kind == "automorphism" and inverse is None:
        raise NoInverseError("automorphism table without inverse statements")
    return Endomorphism(pres, table(forward, False), kind=kind, inverse=inverse, name="dsl")


def validate_endomorphism(alpha: Endomorphism, pres: Presentation, bounds: Bounds) -> list:
    """Rule instances (and inverse identities) that ``alpha`` breaks within bounds."""
    violations = []
    if alpha.is_identity:
        return violations
    for rule, lhs, rhs in rule_instances(pres, bounds):
        # images of free-algebra words: lhs and rhs must agree in R
        left = alpha.word_image(lhs)
        right = pres.zero()
        for c, w in rhs:
            right = right + alpha.word_image(w).scale(c)
        if left != right:
            violations.append({"rule": str(rule), "instance": "*".join(str(g) for g in lhs),
                               "image_lhs": str(left), "image_rhs": str(right)})
    if alpha.kind == "automorphism":
        for g in pres.generators(bounds):
            e = pres.element({(g,): 1})
            try:
                there_and_back = apply_endomorphism(alpha, apply_endomorphism(alpha, e, -1), 1)
                back_and_there = apply_endomorphism(alpha, apply_endomorphism(alpha, e, 1), -1)
            except NoInverseError as exc:
                violations.append({"generator": str(g), "error": str(exc)})
                continue
            if there_and_back != e or back_and_there != e:
                violations.append({"generator": str(g), "error": "alpha and its inverse do not compose to id"})
    return violations


def apply_endomorphism(alpha: Endomorphism, e: RingElem, power: int = 1,
                       pres: Presentation | None = None, bounds: Bounds | None = None,
                       validate: bool = False) -> RingElem:
    """alpha^power(e); negative powers need an automorphism with an inverse table."""
    pres = pres or e.pres
    if validate and bounds is not None and bounds not in alpha._validated:
        bad = validate_endomorphism(alpha, pres, bounds)
        if bad:
            raise RelationViolationError(f"{alpha.name or 'alpha'} breaks {len(bad)} relation instance(s)", bad)
        alpha._validated.add(bounds)
    if power == 0 or alpha.is_identity or not e.terms:
        return e
    inverse = power < 0
    if inverse and not alpha.has_inverse:
        raise NoInverseError(f"{alpha.name or 'alpha'} is not an automorphism with a known inverse")
    out = e
    for _ in range(abs(power)):
        acc = pres.zero()
        for w, c in out.terms.items():
            acc = acc + alpha.word_image(w, inverse).scale(c)
        out = acc
    if bounds is not None and bounds.max_degree is not None and out.grade > bounds.max_degree:
        raise DegreeOverflowError(f"image grade {out.grade} exceeds max degree {bounds.max_degree}")
    return out


# ---------------------------------------------------------------------------


def _fmt_coeff_times(c: RingElem, k: int) -> str:
    xs = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
    if not xs:
        return format_element(c)
    if c.terms == {(): 1}:
        return xs
    text = format_element(c)
    if len(c.terms) > 1:
        text = f"({text})"
    return f"{text}*{xs}"


class SkewPoly:
    """Element sum_i coeffs[i] x^i of R[x; alpha]; trailing zeros are trimmed."""

    __slots__ = ("pres", "coeffs")

    def __init__(self, pres: Presentation, coeffs: Iterable[RingElem]):
        cs = list(coeffs)
        while cs and not cs[-1].terms:
            cs.pop()
        self.pres = pres
        self.coeffs = tuple(cs)

    @classmethod
    def from_ring(cls, e: RingElem) -> "SkewPoly":
        return cls(e.pres, (e,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def coefficient(self, i: int) -> RingElem:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.pres.zero()

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _zip(self, other, op):
        if isinstance(other, RingElem):
            other = SkewPoly.from_ring(other)
        if not isinstance(other, SkewPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.pres, [op(self.coefficient(i), other.coefficient(i)) for i in range(n)])

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return SkewPoly(self.pres, [-c for c in self.coeffs])

    def scale(self, c: int) -> "SkewPoly":
        return SkewPoly(self.pres, [a.scale(c) for a in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, RingElem):
            other = SkewPoly.from_ring(other)
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.pres is other.pres and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("poly", self.coeffs))

    def __str__(self):
        parts = [_fmt_coeff_times(c, k) for k, c in enumerate(self.coeffs) if c.terms]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"SkewPoly({str(self)!r})"

    def to_dict(self):
        return {"coefficients": [format_element(c) for c in self.coeffs]}


class TruncSeries:
    """Power series modulo x^(order+1); always exactly order+1 coefficients."""

    __slots__ = ("pres", "order", "coeffs")

    def __init__(self, pres: Presentation, order: int, coeffs: Iterable[RingElem]):
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = list(coeffs)[:order + 1]
        cs += [pres.zero()] * (order + 1 - len(cs))
        self.pres = pres
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def from_poly(cls, f, order: int) -> "TruncSeries":
        if isinstance(f, RingElem):
            return cls(f.pres, order, (f,))
        if isinstance(f, TruncSeries):
            return cls(f.pres, order, f.coeffs)
        return cls(f.pres, order, f.coeffs)

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError("cannot raise the order of a truncated series")
        return TruncSeries(self.pres, order, self.coeffs)

    def coefficient(self, i: int) -> RingElem:
        return self.coeffs[i] if 0 <= i <= self.order else self.pres.zero()

    def is_zero(self):
        return not any(c.terms for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def _zip(self, other, op):
        if isinstance(other, (RingElem, SkewPoly)):
            other = TruncSeries.from_poly(other, self.order)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if other.order != self.order:
            raise NcannError(f"series orders differ: {self.order} vs {other.order}")
        return TruncSeries(self.pres, self.order, [op(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return TruncSeries(self.pres, self.order, [-c for c in self.coeffs])

    def scale(self, c: int) -> "TruncSeries":
        return TruncSeries(self.pres, self.order, [a.scale(c) for a in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.pres is other.pres and self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("series", self.order, self.coeffs))

    def __str__(self):
        parts = [_fmt_coeff_times(c, k) for k, c in enumerate(self.coeffs) if c.terms]
        return (" + ".join(parts) if parts else "0") + f" + O(x^{self.order + 1})"

    def __repr__(self):
        return f"TruncSeries({str(self)!r})"

    def to_dict(self):
        return {"order": self.order, "coefficients": [format_element(c) for c in self.coeffs]}


def _convolve(fc, gc, alpha, pres, bounds, top):
    p = pres.p
    acc = [dict() for _ in range(top + 1)]
    twisted = {}
    for i, a in enumerate(fc):
        if not a.terms:
            continue
        for j, b in enumerate(gc):
            if i + j > top:
                break
            if not b.terms:
                continue
            key = (i, j)
            tb = twisted.get(key)
            if tb is None:
                tb = twisted[key] = apply_endomorphism(alpha, b, i, pres)
            prod = multiply(a, tb, pres, bounds)
            target = acc[i + j]
            for w, c in prod.terms.items():
                s = (target.get(w, 0) + c) % p
                if s:
                    target[w] = s
                else:
                    target.pop(w, None)
    return [RingElem(pres, d) for d in acc]


def skew_mul_poly(f: SkewPoly, g: SkewPoly, alpha: Endomorphism, pres: Presentation | None = None,
                  bounds: Bounds | None = None) -> SkewPoly:
    pres = pres or f.pres
    if not f.coeffs or not g.coeffs:
        return SkewPoly(pres, ())
    top = len(f.coeffs) + len(g.coeffs) - 2
    return SkewPoly(pres, _convolve(f.coeffs, g.coeffs, alpha, pres, bounds, top))


def skew_mul_series(f: TruncSeries, g: TruncSeries, alpha: Endomorphism,
                    pres: Presentation | None = None, bounds: Bounds | None = None) -> TruncSeries:
    pres = pres or f.pres
    if f.order != g.order:
        raise NcannError(f"series orders differ: {f.order} vs {g.order}")
    return TruncSeries(pres, f.order, _convolve(f.coeffs, g.coeffs, alpha, pres, bounds, f.order))


def coefficient_set(V, pres: Presentation | None = None) -> frozenset:
    """Union of all coefficients of the members of V, plus 0 (also for empty V)."""
    V = list(V)
    if pres is None:
        if not V:
            raise ValueError("coefficient_set of an empty family needs the presentation")
        pres = V[0].pres
    out = {pres.zero()}
    for f in V:
        if isinstance(f, RingElem):
            out.add(f)
        else:
            out.update(f.coeffs)
    return frozenset(out)


def phi_extend(A: SubspaceBasis, x_degree: int, kind: str = "poly") -> SubspaceBasis:
    """Polynomials (or series) of x-degree <= x_degree with every coefficient in A."""
    if A.slice.kind != "ring":
        raise ValueError("phi_extend expects a subspace of a ring slice")
    sl = Slice(A.slice.bounds, kind, x_degree)
    vectors = [{(k, w): c for w, c in v.items()} for k in range(x_degree + 1) for v in A.vectors]
    return SubspaceBasis(A.pres, sl, vectors)


def psi_restrict(B: SubspaceBasis) -> SubspaceBasis:
    """B intersected with R: members of B that are constant in x."""
    if B.slice.kind == "ring":
        return B
    constant = intersect_coordinates(B, lambda key: key[0] == 0)
    return SubspaceBasis(B.pres, B.slice.ring_slice, [{w: c for (_, w), c in v.items()} for v in constant])
