"""``ncann`` command line.

Exit codes: 0 ok, 1 verification failure, 2 usage or parse error, 3 bounds overflow.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import errors
from .algebra import Bounds, RingElem, check_basis_claim, enumerate_basis, format_word
from .annihilator import AnnQuery, annihilator, armendariz_check, strong_armendariz_check, zip_witness_search
from .dsl import evaluate, parse_expression, parse_presentation, split_elements
from .rings import BUILTIN_NAMES, armendariz_search, builtin_ring, run_claims
from .skew import Endomorphism, SkewPoly, endomorphism_from_dsl

DEFAULT_SEED = 20240601

USAGE_ERRORS = (errors.DSLSyntaxError, errors.InhomogeneousRuleError, errors.UnknownFamilyError,
                errors.FieldError, errors.UnsupportedRingError, errors.RingMismatchError)
BOUNDS_ERRORS = (errors.IndexBoundsError, errors.DegreeOverflowError, errors.SliceTooLargeError)


@dataclass
class RunConfig:
    command: str
    ring: str = "section4"
    p: int = 2
    idx: int = 3
    deg: int | None = 3
    order: int | None = None
    x_degree: int | None = None
    side: str = "left"
    exprs: list = field(default_factory=list)
    elems: str | None = None
    alpha: str | None = None
    budget: int | None = None
    search: bool = False
    claim: bool = False
    seed: int = DEFAULT_SEED
    as_json: bool = False
    output: str | None = None

    @property
    def bounds(self):
        return Bounds(self.idx, self.deg)


def load_ring(source: str, p: int = 2):
    if source in BUILTIN_NAMES:
        return builtin_ring(source, p).pres
    if not os.path.exists(source):
        raise errors.UnsupportedRingError(f"{source!r} is neither a built-in ring nor a readable file")
    with open(source, encoding="utf-8") as fh:
        return parse_presentation(fh.read(), os.path.basename(source))


def _read_elems(spec):
    if spec is None:
        return []
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            spec = fh.read()
    # newlines separate elements in files, as ';' does inline
    return split_elements(spec.replace("\n", ";"))


def _alpha(cfg, pres):
    if cfg.alpha is None:
        return Endomorphism.identity(pres)
    with open(cfg.alpha, encoding="utf-8") as fh:
        return endomorphism_from_dsl(fh.read(), pres)


def _ev(text, pres, alpha, order=None):
    return evaluate(parse_expression(text), pres, alpha=alpha, order=order)


def _element_json(e):
    if isinstance(e, RingElem):
        return [[format_word(w), c] for w, c in e.items()]
    return e.to_dict()


def _cmd_nf(cfg, pres):
    alpha = _alpha(cfg, pres)
    out = []
    for text in cfg.exprs:
        e = _ev(text, pres, alpha, cfg.order)
        out.append({"input": text, "nf": str(e), "terms": _element_json(e)})
    return 0, out, "\n".join(o["nf"] for o in out)


def _cmd_mul(cfg, pres):
    if len(cfg.exprs) < 2:
        raise errors.NcannError("mul needs at least two expressions")
    text = "*".join(f"({t})" for t in cfg.exprs)
    e = _ev(text, pres, _alpha(cfg, pres), cfg.order)
    return 0, {"factors": cfg.exprs, "product": str(e), "terms": _element_json(e)}, str(e)


def _query_members(cfg, pres, alpha):
    texts = _read_elems(cfg.elems) + list(cfg.exprs)
    if not texts:
        raise errors.NcannError("no elements given (use --elems)")
    return [_ev(t, pres, alpha, cfg.order) for t in texts]


def _cmd_ann(cfg, pres):
    alpha = _alpha(cfg, pres)
    X = _query_members(cfg, pres, alpha)
    basis = annihilator(AnnQuery(cfg.side, X, cfg.bounds, cfg.order, cfg.x_degree), pres, alpha)
    report = basis.to_dict()
    report["side"] = cfg.side
    report["evidence_only"] = basis.slice.kind == "series"
    return 0, report, None


def _cmd_zip(cfg, pres):
    alpha = _alpha(cfg, pres)
    X = _query_members(cfg, pres, alpha)
    report = {"side": cfg.side, "bounds": cfg.bounds.to_dict(), "size": len(X)}
    try:
        F = zip_witness_search(X, cfg.side, pres, cfg.bounds, cfg.budget, alpha, cfg.order, cfg.x_degree)
    except errors.VacuousQueryError as exc:
        report.update(vacuous=True, annihilator=exc.basis.to_dict(), message=str(exc))
        return 1, report, None
    report.update(vacuous=False, found=F is not None, witness=[str(f) for f in F] if F else None)
    return 0 if F is not None else 1, report, None


def _cmd_armendariz(cfg, pres):
    if cfg.search:
        return 0, armendariz_search(pres, cfg.idx, x_degree=cfg.x_degree or 2), None
    alpha = _alpha(cfg, pres)
    texts = _read_elems(cfg.elems) + list(cfg.exprs)
    if len(texts) != 2:
        raise errors.NcannError("armendariz needs exactly two elements f;g")
    if cfg.order is not None:
        f, g = (evaluate(parse_expression(t), pres, alpha=alpha, order=cfg.order) for t in texts)
        pair = strong_armendariz_check(f, g, alpha, pres)
        kind = "series"
    else:
        f, g = (evaluate(parse_expression(t), pres, alpha=alpha, as_series=False) for t in texts)
        f = SkewPoly.from_ring(f) if isinstance(f, RingElem) else f
        g = SkewPoly.from_ring(g) if isinstance(g, RingElem) else g
        pair = armendariz_check(f, g, alpha, pres, None)
        kind = "poly"
    return 0, {"kind": kind, "f": str(f), "g": str(g), "order": cfg.order,
               "violation": list(pair) if pair else None,
               "evidence_only": kind == "series"}, None


def _cmd_check(cfg, pres):
    reports = run_claims(cfg.ring, cfg.p, cfg.bounds, cfg.order, cfg.seed)
    code = 0 if all(r.passed for r in reports) else 1
    return code, [r.to_dict() for r in reports], None


def _cmd_basis(cfg, pres):
    words = enumerate_basis(pres, cfg.bounds)
    report = {"bounds": cfg.bounds.to_dict(), "count": len(words), "words": [format_word(w) for w in words]}
    code = 0
    if cfg.claim:
        claim = check_basis_claim(pres, cfg.bounds, seed=cfg.seed)
        report["claim"] = claim.to_dict()
        code = 0 if claim.passed else 1
    return code, report, None


COMMANDS = {"nf": _cmd_nf, "mul": _cmd_mul, "ann": _cmd_ann, "zip": _cmd_zip,
            "armendariz": _cmd_armendariz, "check": _cmd_check, "basis": _cmd_basis}


def execute(cfg: RunConfig):
    """Run one command; returns (exit code, JSON-able report, optional plain text)."""
    try:
        pres = load_ring(cfg.ring, cfg.p)
        return COMMANDS[cfg.command](cfg, pres)
    except BOUNDS_ERRORS as exc:
        return 3, {"error": type(exc).__name__, "message": str(exc)}, None
    except USAGE_ERRORS as exc:
        return 2, {"error": type(exc).__name__, "message": str(exc)}, None
    except (errors.NcannError, ValueError) as exc:
        return 1, {"error": type(exc).__name__, "message": str(exc)}, None


def build_parser():
    parser = argparse.ArgumentParser(prog="ncann", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, bounds=True):
        sp.add_argument("--ring", default="section4", help="built-in name or DSL file")
        sp.add_argument("--p", type=int, default=2, help="field characteristic")
        if bounds:
            sp.add_argument("--idx", type=int, default=3, help="max generator index N")
            sp.add_argument("--deg", type=int, default=3, help="max word grade d")
        sp.add_argument("--order", type=int, default=None, help="series truncation order t")
        sp.add_argument("--alpha", default=None, help="endomorphism table file")
        sp.add_argument("--json", dest="as_json", action="store_true", help="print JSON")
        sp.add_argument("--output", default=None, help="also write the JSON report here")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)

    sp = sub.add_parser("nf", help="normal form of expressions")
    common(sp, bounds=False)
    sp.add_argument("exprs", nargs="+")
    sp = sub.add_parser("mul", help="product of expressions")
    common(sp, bounds=False)
    sp.add_argument("exprs", nargs="+")
    for name, help_ in (("ann", "one-sided annihilator in a slice"), ("zip", "greedy finite zip witness")):
        sp = sub.add_parser(name, help=help_)
        common(sp)
        sp.add_argument("--side", choices=("left", "right"), default="left")
        sp.add_argument("--elems", default=None, help="file or ';'-separated elements")
        sp.add_argument("--xdeg", dest="x_degree", type=int, default=None, help="polynomial x-degree")
        sp.add_argument("exprs", nargs="*")
        if name == "zip":
            sp.add_argument("--budget", type=int, default=None)
    sp = sub.add_parser("armendariz", help="Armendariz check of f;g, or an exhaustive --search")
    common(sp)
    sp.add_argument("--elems", default=None)
    sp.add_argument("--search", action="store_true")
    sp.add_argument("--xdeg", dest="x_degree", type=int, default=None)
    sp.add_argument("exprs", nargs="*")
    sp = sub.add_parser("check", help="claim ledger of a built-in ring")
    sp.add_argument("ring", choices=BUILTIN_NAMES)
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--idx", type=int, default=3)
    sp.add_argument("--deg", type=int, default=3)
    sp.add_argument("--order", type=int, default=None)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--output", default=None)
    sp = sub.add_parser("basis", help="normal words in a slice")
    common(sp)
    sp.add_argument("--claim", action="store_true", help="also check the claimed basis")
    return parser


def config_from_args(ns) -> RunConfig:
    kw = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    return RunConfig(**kw)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    code, report, text = execute(cfg)
    payload = json.dumps(report, indent=2, ensure_ascii=False)
    if cfg.output:
        tmp = cfg.output + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
        os.replace(tmp, cfg.output)
    if text is not None and not cfg.as_json and code == 0:
        print(text)
    else:
        print(payload)
    if code:
        print(f"ncann: exit {code}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
