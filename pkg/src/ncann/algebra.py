"""Finitely presented graded algebras over GF(p).

A presentation is a list of generator families (``a[i]``, ``b1[j]``,
``ainf``) plus oriented, index-guarded rewrite rules whose left and right
sides have equal word length.  Homogeneity makes the algebra graded by word
length, so products of bounded-degree slices are computed exactly.
"""

from __future__ import annotations

import itertools
import os
import random
import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import (
    DegreeOverflowError,
    IndexBoundsError,
    InhomogeneousRuleError,
    NcannError,
    SliceTooLargeError,
    UnknownFamilyError,
    UnsupportedRingError,
)
from .field import check_prime
from .report import CheckReport


def max_slice() -> int:
    return int(os.environ.get("NCANN_MAX_SLICE", "20000"))


class GeneratorId(NamedTuple):
    family: str
    indices: tuple = ()

    def __str__(self):
        if not self.indices:
            return self.family
        return "%s[%s]" % (self.family, ",".join(str(i) for i in self.indices))


# A word is a tuple of GeneratorId; the empty tuple is the identity.
Word = tuple


def format_word(word: Word) -> str:
    return "*".join(str(g) for g in word) if word else "1"


@dataclass(frozen=True)
class Family:
    name: str
    arity: int
    rank: int
    # indices live in range(fixed_range) regardless of Bounds (e.g. a_lambda, lambda in GF(p))
    fixed_range: int | None = None


@dataclass(frozen=True)
class Bounds:
    max_index: int
    max_degree: int | None = None

    def __post_init__(self):
        if self.max_index < 0 or (self.max_degree is not None and self.max_degree < 0):
            raise ValueError("bounds must be non-negative")

    def to_dict(self):
        return {"max_index": self.max_index, "max_degree": self.max_degree}


# ---------------------------------------------------------------------------
# rule syntax trees


@dataclass(frozen=True)
class LinExpr:
    const: int = 0
    coeffs: tuple = ()  # ((var, coef), ...)

    @classmethod
    def var(cls, name):
        return cls(0, ((name, 1),))

    def eval(self, env) -> int:
        return self.const + sum(c * env[v] for v, c in self.coeffs)

    def variables(self):
        return {v for v, _ in self.coeffs}

    @property
    def is_simple(self):
        """A bare variable or a constant; only these may appear on a rule's left side."""
        return not self.coeffs or (self.const == 0 and len(self.coeffs) == 1 and self.coeffs[0][1] == 1)

    def __str__(self):
        parts = []
        for v, c in self.coeffs:
            if c == 1:
                parts.append(("+", v))
            elif c == -1:
                parts.append(("-", v))
            elif c < 0:
                parts.append(("-", f"{-c}*{v}"))
            else:
                parts.append(("+", f"{c}*{v}"))
        if self.const or not parts:
            parts.append(("-" if self.const < 0 else "+", str(abs(self.const))))
        out = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, text in parts[1:]:
            out += sign + text
        return out


_OPS = {
    ">=": lambda a, b: a >= b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    "<": lambda a, b: a < b,
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
}


@dataclass(frozen=True)
class Comparison:
    left: LinExpr
    op: str
    right: LinExpr

    def holds(self, env) -> bool:
        return _OPS[self.op](self.left.eval(env), self.right.eval(env))

    def __str__(self):
        return f"{self.left} {self.op} {self.right}"


@dataclass(frozen=True)
class LetterPattern:
    family: str
    indices: tuple = ()  # of LinExpr

    def instantiate(self, env) -> GeneratorId:
        return GeneratorId(self.family, tuple(e.eval(env) for e in self.indices))

    def __str__(self):
        if not self.indices:
            return self.family
        return "%s[%s]" % (self.family, ",".join(str(e) for e in self.indices))


@dataclass(frozen=True)
class RhsWord:
    coef: int
    letters: tuple  # of LetterPattern


@dataclass(frozen=True)
class RhsSum:
    var: str
    low: LinExpr
    high: LinExpr
    body: tuple  # of RhsWord | RhsSum


def _rhs_words(items):
    for item in items:
        if isinstance(item, RhsSum):
            yield from _rhs_words(item.body)
        else:
            yield item


def _format_rhs(items):
    if not items:
        return "0"
    out = []
    for item in items:
        if isinstance(item, RhsSum):
            out.append(f"sum({item.var}={item.low}..{item.high})({_format_rhs(item.body)})")
        else:
            word = "*".join(str(x) for x in item.letters) or "1"
            out.append(word if item.coef == 1 else f"{item.coef}*{word}")
    return " + ".join(out)


@dataclass(frozen=True)
class RewriteRule:
    lhs: tuple  # of LetterPattern
    rhs: tuple = ()  # of RhsWord | RhsSum; empty means 0
    guard: tuple = ()  # of Comparison
    label: str = ""

    @property
    def grade(self):
        return len(self.lhs)

    def lhs_variables(self):
        out = set()
        for letter in self.lhs:
            for e in letter.indices:
                out |= e.variables()
        return out

    def match(self, word: Word, pos: int):
        """Bind index variables so that lhs equals word[pos:pos+len(lhs)]; None if no match."""
        env = {}
        for pattern, g in zip(self.lhs, word[pos:pos + len(self.lhs)]):
            if pattern.family != g.family:
                return None
            for e, value in zip(pattern.indices, g.indices):
                if not e.coeffs:
                    if e.const != value:
                        return None
                    continue
                name = e.coeffs[0][0]
                bound = env.get(name)
                if bound is None:
                    env[name] = value
                elif bound != value:
                    return None
        for cmp in self.guard:
            if not cmp.holds(env):
                return None
        return env

    def expand(self, env, p) -> list:
        """Instantiate the right side: a list of (coef, word)."""
        out = []
        self._expand(self.rhs, dict(env), p, out)
        return out

    def _expand(self, items, env, p, out):
        for item in items:
            if isinstance(item, RhsSum):
                for k in range(item.low.eval(env), item.high.eval(env) + 1):
                    env[item.var] = k
                    self._expand(item.body, env, p, out)
                env.pop(item.var, None)
            else:
                c = item.coef % p
                if c:
                    out.append((c, tuple(x.instantiate(env) for x in item.letters)))

    def __str__(self):
        text = "*".join(str(x) for x in self.lhs) + " -> " + _format_rhs(self.rhs)
        if self.guard:
            text += " when " + " and ".join(str(c) for c in self.guard)
        return text


# ---------------------------------------------------------------------------


class ComponentScheme:
    """Classifies normal words into direct-sum component classes."""

    def __init__(self, classes: Sequence[str], classify: Callable[[Word], str]):
        self.classes = tuple(classes)
        self.classify = classify


class Presentation:
    def __init__(self, p: int, families: Sequence[Family], rules: Sequence[RewriteRule] = (),
                 claimed_basis: Callable[[Word], bool] | None = None,
                 component_scheme: ComponentScheme | None = None, name: str = ""):
        self.p = check_prime(p)
        self.name = name
        self.families = {}
        for fam in families:
            self.families[fam.name] = fam
        self.rules = tuple(rules)
        self.claimed_basis = claimed_basis
        self.component_scheme = component_scheme
        self._by_family = {}
        for rule in self.rules:
            self._validate_rule(rule)
            self._by_family.setdefault(rule.lhs[0].family, []).append(rule)
        self._max_lhs = max((r.grade for r in self.rules), default=0)
        self._cache = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Presentation({self.name or 'anonymous'}, p={self.p}, " \
               f"families={list(self.families)}, rules={len(self.rules)})"

    def _validate_rule(self, rule):
        if not rule.lhs:
            raise InhomogeneousRuleError("rule with empty left side")
        for letter in list(rule.lhs) + [x for w in _rhs_words(rule.rhs) for x in w.letters]:
            fam = self.families.get(letter.family)
            if fam is None:
                raise UnknownFamilyError(f"unknown family {letter.family!r}")
            if len(letter.indices) != fam.arity:
                raise UnknownFamilyError(
                    f"family {fam.name} has arity {fam.arity}, got {len(letter.indices)} indices")
        for letter in rule.lhs:
            if not all(e.is_simple for e in letter.indices):
                raise NcannError(f"left-side indices must be variables or constants: {letter}")
        for w in _rhs_words(rule.rhs):
            if len(w.letters) != rule.grade:
                raise InhomogeneousRuleError(
                    f"rule {rule} is inhomogeneous: grade {rule.grade} vs {len(w.letters)}")

    # -- generators and ordering --------------------------------------------

    def family(self, name) -> Family:
        try:
            return self.families[name]
        except KeyError:
            raise UnknownFamilyError(f"unknown family {name!r}") from None

    def check_generator(self, g: GeneratorId):
        fam = self.family(g.family)
        if len(g.indices) != fam.arity:
            raise UnknownFamilyError(f"{g}: family {fam.name} has arity {fam.arity}")
        if any(i < 0 for i in g.indices):
            raise IndexBoundsError(f"{g}: negative index")
        if fam.fixed_range is not None and any(i >= fam.fixed_range for i in g.indices):
            raise IndexBoundsError(f"{g}: index outside range({fam.fixed_range})")

    def letter_key(self, g: GeneratorId):
        return (self.families[g.family].rank, g.indices)

    def word_key(self, word: Word):
        return (len(word), tuple(self.letter_key(g) for g in word))

    def generators(self, bounds: Bounds) -> list:
        out = []
        for fam in sorted(self.families.values(), key=lambda f: f.rank):
            top = fam.fixed_range if fam.fixed_range is not None else bounds.max_index + 1
            for idx in itertools.product(range(top), repeat=fam.arity):
                out.append(GeneratorId(fam.name, idx))
        return out

    def in_bounds(self, word: Word, bounds: Bounds) -> bool:
        for g in word:
            if self.families[g.family].fixed_range is None and any(i > bounds.max_index for i in g.indices):
                return False
        return True

    # -- rewriting ----------------------------------------------------------

    def matches(self, word: Word) -> Iterator:
        """All redexes of ``word`` as (position, rule, env), leftmost first."""
        for pos, g in enumerate(word):
            for rule in self._by_family.get(g.family, ()):
                if pos + rule.grade <= len(word):
                    env = rule.match(word, pos)
                    if env is not None:
                        yield pos, rule, env

    def is_irreducible(self, word: Word) -> bool:
        return next(self.matches(word), None) is None

    def _irreducible_extension(self, word: Word) -> bool:
        # prefix already irreducible: only redexes ending at the last letter are new
        n = len(word)
        for length in range(1, min(self._max_lhs, n) + 1):
            pos = n - length
            for rule in self._by_family.get(word[pos].family, ()):
                if rule.grade == length and rule.match(word, pos) is not None:
                    return False
        return True

    def rewrite_step(self, word: Word, pos, rule, env) -> list:
        n = rule.grade
        return [(c, word[:pos] + u + word[pos + n:]) for c, u in rule.expand(env, self.p)]

    def nf_word(self, word: Word) -> tuple:
        """Normal form of a single word as a tuple of (word, coef)."""
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        try:
            result = self._reduce_word(word)
        except RecursionError:
            raise NcannError(f"rewriting of {format_word(word)} does not terminate") from None
        with self._lock:
            return self._cache.setdefault(word, result)

    def _reduce_word(self, word):
        redex = next(self.matches(word), None)
        if redex is None:
            return ((word, 1),)
        p = self.p
        acc = {}
        for c, u in self.rewrite_step(word, *redex):
            for v, d in self.nf_word(u):
                acc[v] = (acc.get(v, 0) + c * d) % p
        return tuple((v, c) for v, c in acc.items() if c)

    # -- element constructors ----------------------------------------------

    def element(self, raw=None, bounds: Bounds | None = None) -> "RingElem":
        return normal_form(raw if raw is not None else {}, self, bounds)

    def zero(self) -> "RingElem":
        return RingElem(self, {})

    def one(self) -> "RingElem":
        return RingElem(self, {(): 1})

    def scalar(self, c: int) -> "RingElem":
        c %= self.p
        return RingElem(self, {(): c} if c else {})

    def gen(self, family: str, *indices) -> "RingElem":
        g = GeneratorId(family, tuple(indices))
        self.check_generator(g)
        return self.element({(g,): 1})

    def word(self, *letters) -> "RingElem":
        """Element of the word given as GeneratorIds or (family, indices...) tuples."""
        gs = []
        for x in letters:
            gs.append(x if isinstance(x, GeneratorId) else GeneratorId(x[0], tuple(x[1:])))
        for g in gs:
            self.check_generator(g)
        return self.element({tuple(gs): 1})


class RingElem:
    """Sparse GF(p)-combination of normal words; immutable."""

    __slots__ = ("pres", "terms", "_hash")

    def __init__(self, pres: Presentation, terms: dict):
        # terms must already be normal with nonzero coefficients in range(p)
        self.pres = pres
        self.terms = terms
        self._hash = None

    @property
    def p(self):
        return self.pres.p

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def items(self) -> list:
        key = self.pres.word_key
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]))

    def support(self) -> list:
        return [w for w, _ in self.items()]

    def coefficient(self, word: Word) -> int:
        return self.terms.get(word, 0)

    @property
    def scalar_part(self) -> int:
        return self.terms.get((), 0)

    @property
    def grade(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def is_homogeneous(self):
        return len({len(w) for w in self.terms}) <= 1

    def _combine(self, other, sign):
        if not isinstance(other, RingElem):
            if isinstance(other, int):
                other = self.pres.scalar(other)
            else:
                return NotImplemented
        if other.pres is not self.pres:
            raise NcannError("elements belong to different presentations")
        p = self.p
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = (out.get(w, 0) + sign * c) % p
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return RingElem(self.pres, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __radd__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __neg__(self):
        p = self.p
        return RingElem(self.pres, {w: (-c) % p for w, c in self.terms.items()})

    def scale(self, c: int) -> "RingElem":
        c %= self.p
        if not c:
            return RingElem(self.pres, {})
        return RingElem(self.pres, {w: (c * d) % self.p for w, d in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, RingElem):
            return multiply(self, other, self.pres)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.pres is other.pres and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"RingElem({format_element(self)!r})"


def format_element(e: RingElem) -> str:
    """Canonical text; re-parses to an equal element."""
    if not e.terms:
        return "0"
    parts = []
    for w, c in e.items():
        if not w:
            parts.append(str(c))
        elif c == 1:
            parts.append(format_word(w))
        else:
            parts.append(f"{c}*{format_word(w)}")
    return " + ".join(parts)


def _raw_terms(raw) -> Iterable:
    if isinstance(raw, RingElem):
        return raw.terms.items()
    if isinstance(raw, Mapping):
        return raw.items()
    return ((w, c) for c, w in raw)


def check_bounds(e, pres: Presentation, bounds: Bounds):
    for w, _ in _raw_terms(e):
        if not pres.in_bounds(w, bounds):
            raise IndexBoundsError(f"{format_word(w)} has an index above {bounds.max_index}")


def normal_form(raw, pres: Presentation, bounds: Bounds | None = None) -> RingElem:
    """Reduce a raw combination to normal words.

    ``raw`` may be a RingElem, a mapping word -> coefficient, or an iterable
    of (coefficient, word) pairs.
    """
    p = pres.p
    acc = {}
    for w, c in _raw_terms(raw):
        w = tuple(w)
        c %= p
        if not c:
            continue
        for g in w:
            pres.check_generator(g)
        if bounds is not None and not pres.in_bounds(w, bounds):
            raise IndexBoundsError(f"{format_word(w)} has an index above {bounds.max_index}")
        for v, d in pres.nf_word(w):
            acc[v] = (acc.get(v, 0) + c * d) % p
    return RingElem(pres, {v: c for v, c in acc.items() if c})


def multiply(e1: RingElem, e2: RingElem, pres: Presentation | None = None,
             bounds: Bounds | None = None) -> RingElem:
    """Exact product; with ``bounds`` the grades must fit the slice (never truncates)."""
    pres = pres or e1.pres
    if bounds is not None:
        check_bounds(e1, pres, bounds)
        check_bounds(e2, pres, bounds)
        if bounds.max_degree is not None and e1.terms and e2.terms \
                and e1.grade + e2.grade > bounds.max_degree:
            raise DegreeOverflowError(
                f"product grade {e1.grade + e2.grade} exceeds max degree {bounds.max_degree}")
    p = pres.p
    acc = {}
    nf = pres.nf_word
    for w1, c1 in e1.terms.items():
        for w2, c2 in e2.terms.items():
            c = c1 * c2
            for v, d in nf(w1 + w2):
                acc[v] = (acc.get(v, 0) + c * d) % p
    return RingElem(pres, {v: c for v, c in acc.items() if c})


def enumerate_basis(pres: Presentation, bounds: Bounds) -> list:
    """Irreducible words of grade <= max_degree with indices <= max_index, canonically ordered.

    With ``max_degree=None`` the enumeration runs until a grade has no
    irreducible words (and fails once the slice cap is exceeded).
    """
    cap = max_slice()
    gens = pres.generators(bounds)
    out = [()]
    level = [()]
    grade = 0
    while level and (bounds.max_degree is None or grade < bounds.max_degree):
        nxt = []
        for w in level:
            for g in gens:
                u = w + (g,)
                if pres._irreducible_extension(u):
                    nxt.append(u)
        out.extend(nxt)
        if len(out) > cap:
            raise SliceTooLargeError(f"slice dimension exceeds NCANN_MAX_SLICE={cap}")
        level = nxt
        grade += 1
    return out


def all_words(pres: Presentation, bounds: Bounds, max_degree: int | None = None) -> Iterator:
    """Every word (reducible or not) in the bounds, canonically ordered."""
    d = bounds.max_degree if max_degree is None else max_degree
    if d is None:
        raise ValueError("all_words needs a finite degree")
    gens = pres.generators(bounds)
    for n in range(d + 1):
        yield from itertools.product(gens, repeat=n)


def reduce_randomized(raw, pres: Presentation, rng: random.Random) -> RingElem:
    """Normal form using a random redex at every step and no memo.

    Used as confluence evidence: the result must agree with ``normal_form``.
    """
    p = pres.p
    work = {}
    for w, c in _raw_terms(raw):
        if c % p:
            work[tuple(w)] = (work.get(tuple(w), 0) + c) % p
    done = {}
    while work:
        w = rng.choice(sorted(work, key=pres.word_key))
        c = work.pop(w)
        if not c:
            continue
        redexes = list(pres.matches(w))
        if not redexes:
            done[w] = (done.get(w, 0) + c) % p
            continue
        for d, u in pres.rewrite_step(w, *rng.choice(redexes)):
            work[u] = (work.get(u, 0) + c * d) % p
    return RingElem(pres, {w: c for w, c in done.items() if c})


def rule_instances(pres: Presentation, bounds: Bounds) -> Iterator:
    """Yield (rule, lhs_word, rhs_terms) for every rule instance with indices in bounds."""
    for rule in pres.rules:
        ranges = {}
        for letter in rule.lhs:
            fam = pres.families[letter.family]
            top = fam.fixed_range if fam.fixed_range is not None else bounds.max_index + 1
            for e in letter.indices:
                for v in e.variables():
                    ranges[v] = min(ranges.get(v, top), top)
        names = sorted(ranges)
        for values in itertools.product(*(range(ranges[n]) for n in names)):
            env = dict(zip(names, values))
            if not all(c.holds(env) for c in rule.guard):
                continue
            lhs = tuple(x.instantiate(env) for x in rule.lhs)
            if not pres.in_bounds(lhs, bounds):
                continue
            yield rule, lhs, rule.expand(env, pres.p)


def check_basis_claim(pres: Presentation, bounds: Bounds, samples: int = 200,
                      seed: int = 0) -> CheckReport:
    """Compare the irreducible words with the claimed basis, then sample confluence.

    Both halves are bounded evidence: basis equality inside ``bounds`` and
    agreement of randomly ordered reductions on sampled words.
    """
    if pres.claimed_basis is None:
        raise NcannError("presentation has no claimed basis")
    if bounds.max_degree is None:
        raise ValueError("check_basis_claim needs a finite max_degree")
    found = enumerate_basis(pres, bounds)
    claimed = [w for w in all_words(pres, bounds) if pres.claimed_basis(w)]
    details = {"bounds": bounds.to_dict(), "normal_words": len(found), "claimed_words": len(claimed)}
    if found != claimed:
        fs, cs = set(found), set(claimed)
        diff = sorted(fs ^ cs, key=pres.word_key)
        first = diff[0]
        return CheckReport("basis_claim", "fail", [{
            "word": format_word(first),
            "irreducible": first in fs,
            "claimed": first in cs,
        }], details)

    rng = random.Random(seed)
    gens = pres.generators(bounds)
    mismatches = []
    for _ in range(samples):
        n = rng.randint(0, bounds.max_degree)
        w = tuple(rng.choice(gens) for _ in range(n))
        canonical = normal_form({w: 1}, pres)
        other = reduce_randomized({w: 1}, pres, rng)
        if canonical != other:
            mismatches.append({"word": format_word(w), "nf": str(canonical), "alternative": str(other)})
            break
    details["confluence_samples"] = samples
    if mismatches:
        return CheckReport("basis_claim", "fail", mismatches, details)
    return CheckReport("basis_claim", "pass", [], details)


def decompose_components(e: RingElem, pres: Presentation | None = None) -> dict:
    """Split ``e`` into its direct-sum components (class name -> RingElem)."""
    pres = pres or e.pres
    scheme = pres.component_scheme
    if scheme is None:
        raise UnsupportedRingError(f"{pres.name or 'presentation'} declares no component scheme")
    parts = {name: {} for name in scheme.classes}
    for w, c in e.terms.items():
        parts[scheme.classify(w)][w] = c
    return {name: RingElem(pres, terms) for name, terms in parts.items()}
