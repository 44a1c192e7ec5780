"""Exact sparse linear algebra over GF(p) on bounded slices.

Vectors are dicts key -> nonzero residue.  Ring-slice keys are normal words;
polynomial and series slices use (x_power, word).
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass

from .algebra import Bounds, Presentation, RingElem, enumerate_basis, format_word, max_slice
from .errors import SliceTooLargeError
from .field import inv


@dataclass(frozen=True)
class Slice:
    bounds: Bounds
    kind: str = "ring"  # ring | poly | series
    x_degree: int | None = None  # max x-degree (poly) or truncation order (series)

    def __post_init__(self):
        if self.kind not in ("ring", "poly", "series"):
            raise ValueError(f"unknown slice kind {self.kind!r}")
        if self.kind != "ring" and (self.x_degree is None or self.x_degree < 0):
            raise ValueError("poly/series slices need a non-negative x_degree")

    @property
    def ring_slice(self):
        return Slice(self.bounds)

    def to_dict(self):
        out = {"kind": self.kind, **self.bounds.to_dict()}
        if self.kind == "poly":
            out["x_degree"] = self.x_degree
        elif self.kind == "series":
            out["order"] = self.x_degree
        return out


_slice_cache: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def slice_keys(pres: Presentation, sl: Slice):
    """(keys, key -> position) for the slice, in canonical order."""
    per_pres = _slice_cache.setdefault(pres, {})
    hit = per_pres.get(sl)
    if hit is None:
        words = enumerate_basis(pres, sl.bounds)
        if sl.kind == "ring":
            keys = words
        else:
            keys = [(k, w) for k in range(sl.x_degree + 1) for w in words]
        if len(keys) > max_slice():
            raise SliceTooLargeError(f"slice dimension {len(keys)} exceeds NCANN_MAX_SLICE={max_slice()}")
        hit = (keys, {k: i for i, k in enumerate(keys)})
        per_pres[sl] = hit
    return hit


def add_scaled(target: dict, vec: dict, c: int, p: int):
    """target += c * vec in place."""
    for k, v in vec.items():
        s = (target.get(k, 0) + c * v) % p
        if s:
            target[k] = s
        else:
            target.pop(k, None)


def rref(vectors, index: dict, p: int) -> list:
    """Reduced row echelon basis of span(vectors); pivots ordered by ``index``."""
    rows = {}  # pivot key -> row with coefficient 1 at pivot, 0 at other pivots
    for vec in vectors:
        v = dict(vec)
        for k in [k for k in v if k in rows]:
            c = v.get(k)
            if c:
                add_scaled(v, rows[k], -c, p)
        if not v:
            continue
        q = min(v, key=index.__getitem__)
        s = inv(v[q], p)
        v = {k: (c * s) % p for k, c in v.items()}
        for row in rows.values():
            c = row.get(q)
            if c:
                add_scaled(row, v, -c, p)
        rows[q] = v
    return [rows[q] for q in sorted(rows, key=index.__getitem__)]


def kernel(domain, image_of, p: int) -> list:
    """Basis (unreduced) of {sum c_k e_k : sum c_k image_of(k) = 0} for k in domain."""
    pivots = {}  # codomain key -> (image, combo), image coefficient 1 at key
    out = []
    for k in domain:
        img = dict(image_of(k))
        combo = {k: 1}
        while img:
            q = min(img)
            row = pivots.get(q)
            if row is None:
                s = inv(img[q], p)
                pivots[q] = ({a: (c * s) % p for a, c in img.items()},
                             {a: (c * s) % p for a, c in combo.items()})
                break
            c = img[q]
            add_scaled(img, row[0], -c, p)
            add_scaled(combo, row[1], -c, p)
        else:
            out.append(combo)
    return out


def rank(vectors, p: int) -> int:
    keys = sorted({k for v in vectors for k in v})
    return len(rref(vectors, {k: i for i, k in enumerate(keys)}, p))


def element_vector(e) -> dict:
    if isinstance(e, RingElem):
        return dict(e.terms)
    out = {}
    for k, c in enumerate(e.coeffs):
        for w, v in c.terms.items():
            out[(k, w)] = v
    return out


class SubspaceBasis:
    """Subspace of a slice, held as a reduced echelon basis in canonical key order."""

    def __init__(self, pres: Presentation, sl: Slice, vectors=()):
        self.pres = pres
        self.slice = sl
        keys, index = slice_keys(pres, sl)
        self._index = index
        for v in vectors:
            for k in v:
                if k not in index:
                    raise ValueError(f"vector key {k!r} is outside the slice")
        self.vectors = tuple(rref(vectors, index, pres.p))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def pivots(self):
        return [min(v, key=self._index.__getitem__) for v in self.vectors]

    def is_zero(self):
        return not self.vectors

    def contains(self, item) -> bool:
        v = item if isinstance(item, dict) else element_vector(item)
        if any(k not in self._index for k in v):
            return False
        v = dict(v)
        for row, q in zip(self.vectors, self.pivots):
            c = v.get(q)
            if c:
                add_scaled(v, row, -c, self.pres.p)
        return not v

    def contains_subspace(self, other: "SubspaceBasis") -> bool:
        return all(self.contains(v) for v in other.vectors)

    def elements(self) -> list:
        from .skew import SkewPoly, TruncSeries

        out = []
        for v in self.vectors:
            if self.slice.kind == "ring":
                out.append(RingElem(self.pres, dict(v)))
                continue
            n = self.slice.x_degree + 1
            coeffs = [dict() for _ in range(n)]
            for (k, w), c in v.items():
                coeffs[k][w] = c
            elems = tuple(RingElem(self.pres, c) for c in coeffs)
            if self.slice.kind == "poly":
                out.append(SkewPoly(self.pres, elems))
            else:
                out.append(TruncSeries(self.pres, self.slice.x_degree, elems))
        return out

    def __eq__(self, other):
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return self.pres is other.pres and self.slice == other.slice and self.vectors == other.vectors

    def __hash__(self):
        return hash((self.slice, len(self.vectors)))

    def __repr__(self):
        return f"SubspaceBasis(dim={self.dim}, slice={self.slice.to_dict()})"

    def to_dict(self) -> dict:
        return {
            "slice": self.slice.to_dict(),
            "dim": self.dim,
            "basis": [serialize_vector(v, self) for v in self.vectors],
        }


def serialize_vector(v: dict, basis: SubspaceBasis) -> list:
    keys = sorted(v, key=basis._index.__getitem__)
    out = []
    for k in keys:
        c = v[k]
        if basis.slice.kind == "ring":
            out.append([format_word(k), c])
        else:
            out.append([k[0], format_word(k[1]), c])
    return out


def intersect_coordinates(basis: SubspaceBasis, keep) -> list:
    """Vectors of span(basis) supported only on keys satisfying ``keep``."""
    vecs = basis.vectors
    combos = kernel(range(len(vecs)),
                    lambda i: {k: c for k, c in vecs[i].items() if not keep(k)},
                    basis.pres.p)
    out = []
    for combo in combos:
        v = {}
        for i, c in combo.items():
            add_scaled(v, vecs[i], c, basis.pres.p)
        out.append(v)
    return out
