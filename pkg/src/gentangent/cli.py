"""Command-line front end: classify JSON-described structures, verify
registered propositions over seeded batches, build named families, and dump
fixture files.

Input schema (matrices row-major, numbers as decimal doubles)::

    {"n": int,
     "operator":  {"H": [[...]], "sigma": [[...]], "tau": [[...]], "K": [[...]]},
     "operator2": {... same shape, optional, for triple classification ...},
     "metric":    {"gram": [[...]], "kind": "symmetric"},
     "family":    "<optional family id>",
     "base":      {"g": [[...]], "J": [[...]], "omega": [[...]], "b": [[...]]}}

A family id plus base data may replace the explicit operator blocks.
Classification output echoes the input document with the classification
fields merged in at top level, so it can be re-ingested unchanged.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
``GENTANGENT_TOL`` overrides the default tolerance.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import registry
from .ae_zoo import (
    FAMILY_IDS,
    INCOMPATIBLE,
    AeManifoldData,
    build_family,
    classify_pair,
    fundamental_tensor,
)
from .core import (
    GENERAL,
    SKEW,
    SYMMETRIC,
    BaseForm,
    BilinearForm,
    BlockOperator,
    Tolerance,
    close,
    signature,
)
from .errors import GentangentError
from .canonical import g0
from .gen_metrics import (
    metric_from_endomorphism,
    symplectic_from_endomorphism,
)
from .generators import (
    AE_KINDS,
    random_ae_pair,
    random_kahler_data,
    random_metric,
    random_symplectic,
)
from .triples import classify_triple


class InputError(Exception):
    """Schema or validation problem in a CLI input document; exits 2."""


def _tolerance(args) -> Tolerance:
    value = 1e-9
    env = os.environ.get("GENTANGENT_TOL")
    if env is not None:
        try:
            value = float(env)
        except ValueError:
            raise InputError(f"GENTANGENT_TOL is not a number: {env!r}")
    if getattr(args, "tol", None) is not None:
        value = args.tol
    if value <= 0:
        raise InputError("tolerance must be positive")
    return Tolerance(value, value)


def _matrix(doc, key, n, context):
    if key not in doc or doc[key] is None:
        raise InputError(f"{context}: missing matrix {key!r}")
    try:
        m = np.asarray(doc[key], dtype=float)
    except (TypeError, ValueError):
        raise InputError(f"{context}: matrix {key!r} is not numeric")
    if m.ndim != 2 or m.shape != (n, n) or m.size == 0:
        raise InputError(
            f"{context}: matrix {key!r} must be {n}x{n}, got shape {m.shape}")
    return m


def _read_operator(doc, n, context="operator"):
    if not isinstance(doc, dict) or not doc:
        raise InputError(f"{context}: expected an object with H, sigma, tau, K")
    return BlockOperator(
        _matrix(doc, "H", n, context),
        _matrix(doc, "sigma", n, context),
        _matrix(doc, "tau", n, context),
        _matrix(doc, "K", n, context),
    )


def _read_metric(doc, n):
    if not isinstance(doc, dict):
        raise InputError("metric: expected an object with a gram matrix")
    gram = _matrix(doc, "gram", 2 * n, "metric")
    kind = doc.get("kind", "symmetric")
    kinds = {"symmetric": SYMMETRIC, "skew": SKEW, "general": GENERAL}
    if kind not in kinds:
        raise InputError(f"metric: unknown kind {kind!r}")
    return BilinearForm(gram, kinds[kind])


def _read_base(doc, n, tol):
    """(J, g) pair, lone metric, or lone symplectic form from a base block."""
    if not isinstance(doc, dict):
        raise InputError("base: expected an object")
    if "omega" in doc and "g" not in doc:
        return BaseForm(_matrix(doc, "omega", n, "base"), SKEW)
    if "g" not in doc:
        raise InputError("base: needs at least g or omega")
    g = BaseForm(_matrix(doc, "g", n, "base"), SYMMETRIC)
    if "J" not in doc:
        return g
    j = _matrix(doc, "J", n, "base")
    ident = np.eye(n)
    alpha = epsilon = None
    for a in (+1, -1):
        if close(j @ j, a * ident, tol):
            alpha = a
    for e in (+1, -1):
        if close(j.T @ g.gram @ j, e * g.gram, tol):
            epsilon = e
    if alpha is None or epsilon is None:
        raise InputError("base: (J, g) is not an (alpha, epsilon) pair")
    return AeManifoldData(j, g, alpha, epsilon)


def _operator_doc(op: BlockOperator) -> dict:
    return {"H": op.H.tolist(), "sigma": op.sigma.tolist(),
            "tau": op.tau.tolist(), "K": op.K.tolist()}


def _resolve_operator(doc, n, tol):
    if "operator" in doc:
        return _read_operator(doc["operator"], n)
    if "family" in doc:
        if "base" not in doc:
            raise InputError("a family id needs base data")
        family = doc["family"]
        if family not in FAMILY_IDS:
            raise InputError(
                f"unknown family {family!r}; known: {', '.join(FAMILY_IDS)}")
        return build_family(family, _read_base(doc["base"], n, tol), tol)
    raise InputError("document has neither operator blocks nor a family id")


def _classify(doc, tol):
    if not isinstance(doc, dict):
        raise InputError("top level: expected a JSON object")
    if "n" not in doc or not isinstance(doc["n"], int) or doc["n"] < 1:
        raise InputError("top level: n must be a positive integer")
    n = doc["n"]
    op = _resolve_operator(doc, n, tol)
    out = {"n": n, "operator": _operator_doc(op)}
    if "operator2" in doc:
        second = _read_operator(doc["operator2"], n, "operator2")
        report = classify_triple(op, second, tol)
        out["operator2"] = _operator_doc(second)
        out["triple"] = {
            "kind": report.kind,
            "commutation": report.commutation_sign,
            "product": _operator_doc(report.product),
        }
        return out
    if "metric" in doc:
        metric = _read_metric(doc["metric"], n)
        out["metric"] = {"gram": metric.gram.tolist(),
                         "kind": {SYMMETRIC: "symmetric", SKEW: "skew",
                                  GENERAL: "general"}[metric.kind]}
        cls = classify_pair(op, metric, tol)
        out["class"] = cls.name
        if cls.name != INCOMPATIBLE:
            out["alpha"] = cls.alpha
            out["epsilon"] = cls.epsilon
            out["signature"] = list(cls.signature)
            out["fundamental"] = fundamental_tensor(op, metric, tol).kind
        return out
    _, metric_report = metric_from_endomorphism(op, tol)
    _, symplectic_report = symplectic_from_endomorphism(op, tol)
    out["inducer"] = {
        "metric_valid": metric_report.valid,
        "metric_violations": list(metric_report.violations),
        "symplectic_valid": symplectic_report.valid,
        "symplectic_violations": list(symplectic_report.violations),
    }
    return out


def _classify_table(out):
    lines = []
    if "triple" in out:
        lines.append(f"triple kind    {out['triple']['kind']}")
        lines.append(f"commutation    {out['triple']['commutation']}")
    elif "class" in out:
        lines.append(f"class          {out['class']}")
        if out["class"] != INCOMPATIBLE:
            lines.append(f"alpha          {out['alpha']:+d}")
            lines.append(f"epsilon        {out['epsilon']:+d}")
            sig = out["signature"]
            lines.append(f"signature      ({sig[0]}, {sig[1]})")
            lines.append(f"fundamental    {out['fundamental']}")
    else:
        ind = out["inducer"]
        lines.append(f"metric inducer      "
                     f"{'valid' if ind['metric_valid'] else 'invalid: ' + ', '.join(ind['metric_violations'])}")
        lines.append(f"symplectic inducer  "
                     f"{'valid' if ind['symplectic_valid'] else 'invalid: ' + ', '.join(ind['symplectic_violations'])}")
    return "\n".join(lines)


def _load_json(path):
    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(str(exc))
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")


def cmd_classify(args) -> int:
    tol = _tolerance(args)
    out = _classify(_load_json(args.input), tol)
    if args.format == "json":
        print(json.dumps(out))
    else:
        print(_classify_table(out))
        print(json.dumps(out))
    return 0


def cmd_verify(args) -> int:
    tol = _tolerance(args)
    ids = registry.REGISTRY_IDS if args.id == "all" else (args.id,)
    for pid in ids:
        if pid not in registry.REGISTRY_IDS:
            print(f"unknown proposition id {pid!r}; registry:", file=sys.stderr)
            for known in registry.REGISTRY_IDS:
                print(f"  {known:24s} {registry.describe(known)}",
                      file=sys.stderr)
            return 2
    reports = [registry.run_check(pid, args.dim, args.trials, args.seed, tol)
               for pid in ids]
    if args.format == "json":
        print(json.dumps([
            {"id": r.id, "trials": r.trials, "failures": r.failures,
             "max_residual": r.max_residual, "elapsed": r.elapsed,
             "passed": r.passed} for r in reports]))
    else:
        print(f"{'id':26s} {'trials':>7s} {'failures':>9s} "
              f"{'max residual':>13s} {'time':>7s}  status")
        for r in reports:
            status = "pass" if r.passed else "FAIL"
            print(f"{r.id:26s} {r.trials:7d} {r.failures:9d} "
                  f"{r.max_residual:13.3e} {r.elapsed:6.2f}s  {status}")
    return 0 if all(r.passed for r in reports) else 1


_FAMILY_BASE_KIND = {
    "Jg": "metric", "Fg": "metric", "Jom": "symplectic", "Fom": "symplectic",
    "JlamJ+": "Hermitian", "JlamJ-": "Hermitian",
    "FlamF+": "ParaHermitian", "FlamF-": "ParaHermitian",
    "JJgFlat": "Hermitian", "JJgSharp": "Hermitian",
    "FFgFlat": "ParaHermitian", "FFgSharp": "ParaHermitian",
    "FJg": "Hermitian", "JFg": "ParaHermitian",
}


def _default_base(family, n, seed):
    kind = _FAMILY_BASE_KIND[family]
    if kind == "metric":
        return random_metric(n, n, 0, seed)
    even = n if n % 2 == 0 else n + 1
    if kind == "symplectic":
        return random_symplectic(even, seed)
    return random_ae_pair(kind, even, seed)


def _base_doc(base) -> dict:
    if isinstance(base, AeManifoldData):
        return {"g": base.g.gram.tolist(), "J": base.J.tolist()}
    if base.kind == SKEW:
        return {"omega": base.gram.tolist()}
    return {"g": base.gram.tolist()}


def cmd_build(args) -> int:
    tol = _tolerance(args)
    if args.family not in FAMILY_IDS:
        print(f"unknown family {args.family!r}; known: {', '.join(FAMILY_IDS)}",
              file=sys.stderr)
        return 2
    if args.input is not None:
        doc = _load_json(args.input)
        if not isinstance(doc, dict) or "base" not in doc:
            raise InputError("build input needs a base block")
        n = doc.get("n")
        if not isinstance(n, int) or n < 1:
            raise InputError("top level: n must be a positive integer")
        base = _read_base(doc["base"], n, tol)
    else:
        base = _default_base(args.family, args.dim, args.seed)
    op = build_family(args.family, base, tol)
    out = {"n": op.n, "family": args.family, "base": _base_doc(base),
           "operator": _operator_doc(op)}
    print(json.dumps(out))
    return 0


def cmd_fixtures(args) -> int:
    out_dir = args.out
    os.makedirs(out_dir, exist_ok=True)
    n = args.dim
    even = n if n % 2 == 0 else n + 1
    docs = {}
    g = random_metric(n, n, 0, args.seed)
    docs["metric"] = {"n": n, "seed": args.seed, "base": {"g": g.gram.tolist()}}
    om = random_symplectic(even, args.seed)
    docs["symplectic"] = {"n": even, "seed": args.seed,
                          "base": {"omega": om.gram.tolist()}}
    for kind in AE_KINDS:
        m = 4 if kind == "IndefiniteHermitian" else even
        data = random_ae_pair(kind, m, args.seed)
        family = "JJgFlat" if data.alpha == -1 else "FFgFlat"
        op = build_family(family, data)
        docs[f"ae-{kind.lower()}"] = {
            "n": m, "seed": args.seed, "family": family,
            "base": _base_doc(data),
            "operator": _operator_doc(op),
            "metric": {"gram": g0(m).gram.tolist(), "kind": "symmetric"},
        }
    kd = random_kahler_data(even, args.seed)
    docs["kahler"] = {
        "n": even, "seed": args.seed,
        "base": {"g": kd.g.gram.tolist(), "J": kd.J1.tolist(),
                 "b": kd.b.tolist()},
        "kahler": {"b": kd.b.tolist(), "g": kd.g.gram.tolist(),
                   "J1": kd.J1.tolist(), "J2": kd.J2.tolist()},
    }
    for name, doc in docs.items():
        path = os.path.join(out_dir, f"{name}.json")
        with open(path, "w") as fh:
            json.dump(doc, fh)
        print(path)
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gentangent",
        description="Classify, verify and build structures on the fiber V + V*.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=None,
                       help="relative tolerance (default 1e-9)")
        p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("classify", help="classify a JSON-described structure")
    p.add_argument("input", nargs="?", default=None,
                   help="input file ('-' or omitted: stdin)")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run a registered proposition check")
    p.add_argument("id", help="proposition id, or 'all'")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("build", help="build a named family and emit JSON")
    p.add_argument("family")
    p.add_argument("--input", default=None,
                   help="JSON with base data ('-' for stdin); default: seeded random base")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--seed", type=int, default=42)
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("fixtures", help="dump seeded generator fixtures")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default="fixtures")
    common(p)
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, GentangentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
