"""Command-line front end.

Every command reads one JSON document (``--input FILE``, or stdin) and writes one
JSON document to stdout.  Keys are sorted so equal inputs give byte-identical
output whatever ``--jobs`` is.

Input document::

    {"p": 2, "truncation": 7,
     "algebra": {"kind": "exterior", "n": 3}            # or "symmetric", or explicit
     "ideal": {"n": 4, "generators": [{"terms": [{"c": 1, "m": [0, 1]}]}]},
     "group": "(D(4) * F(2))",
     "fixture": "F2xF2",
     "module": "residue" | "algebra" | "ideal" | "ideal_twist" | "quotient"
               | "kernel" | "kernel_twist" | "cohomology" | {explicit},
     "search": {"n": 4, "r": 1},
     "budget": 50000000}                                 # entry cap for dual realisation

Explicit algebras are ``{"dims": [...], "products": [{"i", "j", "matrix"}]}`` and
explicit modules ``{"lo": 0, "dims": [...], "actions": [{"j", "i", "matrix"}]}``;
matrices are row-major lists of rows, columns indexed by pairs (a, b) with a major.

Exit codes: 0 computed (also when defects are found), 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from math import comb

import numpy as np

from . import __version__
from .criteria import (cup_surjectivity_check, five_term_dims, is_quadratic_algebra,
                       is_quadratic_module, koszul_check, theorem_b_check)
from .errors import BudgetExceeded, GroupParseError, H14NonzeroWarning, KoszulkitError
from .fplinalg import check_prime
from .graded import (GradedModule, TruncatedGradedAlgebra, algebra_as_module, quotient_module,
                     residue_module, shift, trim)
from .groups import (cohomology_module, free_times_free_fixture, h1_dim, parse_group,
                     psi_and_kernel, verify_theorem_c)
from .homology import METHODS, CellCache, homology_table, lowest_degree
from .monomial import exterior_algebra, exterior_element, symmetric_algebra
from .quadratic import (DEFAULT_BUDGET, ideal_in_exterior, ideal_twist, quadratic_dual_algebra,
                        quadratic_dual_module, quadratic_part_algebra, quadratic_part_module,
                        realize_algebra, realize_module)
from .search import search, summarize

COMMANDS = ("homology", "quadratic-check", "koszul-check", "dual", "criterion-b", "five-term",
            "group", "theorem-c", "search")

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3


class InputError(KoszulkitError):
    pass


# ------------------------------------------------------------------ parsing

def _need(doc, key, kind=None):
    if key not in doc:
        raise InputError(f"missing field {key!r}")
    v = doc[key]
    if kind is not None and not isinstance(v, kind):
        raise InputError(f"field {key!r} has the wrong type")
    return v


def _nat(doc, key, default=None):
    v = doc.get(key, default)
    if v is None:
        raise InputError(f"missing field {key!r}")
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise InputError(f"field {key!r} must be a non-negative integer")
    return v


def _matrix(block, rows, cols):
    m = np.asarray(block["matrix"], dtype=np.int64)
    if m.size == 0:
        m = np.zeros((rows, cols), dtype=np.int64)
    if m.shape != (rows, cols):
        raise InputError(f"matrix has shape {m.shape}, expected {(rows, cols)}")
    return m


def explicit_algebra(spec: dict, p: int) -> TruncatedGradedAlgebra:
    dims = [int(d) for d in _need(spec, "dims", list)]
    products = {}
    for b in spec.get("products", []):
        i, j = int(b["i"]), int(b["j"])
        if i + j >= len(dims):
            continue
        products[(i, j)] = _matrix(b, dims[i + j], dims[i] * dims[j])
    return TruncatedGradedAlgebra.build(p, dims, products, name=spec.get("name", "A"))


def explicit_module(spec: dict, A: TruncatedGradedAlgebra) -> GradedModule:
    lo = _nat(spec, "lo", 0)
    dims = [int(d) for d in _need(spec, "dims", list)]
    actions = {}
    for b in spec.get("actions", []):
        j, i = int(b["j"]), int(b["i"])
        if not lo <= j or j + i > lo + len(dims) - 1 or i > A.D:
            continue
        actions[(j, i)] = _matrix(b, dims[j + i - lo], dims[j - lo] * A.dims[i])
    return GradedModule.build(A, lo, dims, actions, name=spec.get("name", "M"))


def ideal_relations(spec: dict, p: int) -> tuple[int, np.ndarray]:
    n = _nat(spec, "n")
    rows = []
    for g in _need(spec, "generators", list):
        terms = [(int(t["c"]), t["m"]) for t in _need(g, "terms", list)]
        v = exterior_element(n, terms)
        if len(v) != comb(n, 2):
            raise InputError("ideal generators must have exterior degree 2")
        rows.append(v % p)
    return n, np.array(rows, dtype=np.int64).reshape(len(rows), comb(n, 2))


def resolve(doc: dict, D: int, default_module: str = "residue"):
    """(algebra, module) described by the document."""
    p = doc["p"]
    want = doc.get("module", default_module)
    if "group" in doc:
        pk = psi_and_kernel(parse_group(doc["group"]), p, D + 2 if want == "kernel_twist" else D)
        choices = {"kernel": lambda: pk.kernel,
                   "kernel_twist": lambda: trim(shift(pk.kernel, 2)),
                   "cohomology": lambda: cohomology_module(pk.cohomology, p, D),
                   "residue": lambda: residue_module(pk.exterior, D)}
        return pk.exterior, _pick(choices, want)
    if "ideal" in doc:
        n, R2 = ideal_relations(doc["ideal"], p)
        L = exterior_algebra(n, p, D)
        I, B = ideal_in_exterior(n, p, R2, D, L)
        choices = {"ideal": lambda: I, "ideal_twist": lambda: ideal_twist(I),
                   "quotient": lambda: quotient_module(algebra_as_module(L), I, name="Lambda/I"),
                   "residue": lambda: residue_module(L, D)}
        return L, _pick(choices, want)
    A = algebra_from(doc, D)
    if isinstance(want, dict):
        return A, explicit_module(want, A)
    choices = {"residue": lambda: residue_module(A, D), "algebra": lambda: algebra_as_module(A)}
    return A, _pick(choices, want)


def _pick(choices, want):
    if not isinstance(want, str) or want not in choices:
        raise InputError(f"module must be one of {sorted(choices)} here, got {want!r}")
    return choices[want]()


def algebra_from(doc: dict, D: int) -> TruncatedGradedAlgebra:
    p = doc["p"]
    spec = _need(doc, "algebra", dict)
    kind = spec.get("kind")
    if kind == "exterior":
        return exterior_algebra(_nat(spec, "n"), p, D)
    if kind == "symmetric":
        return symmetric_algebra(_nat(spec, "n"), p, D)
    if kind is None:
        return explicit_algebra(spec, p)
    raise InputError(f"unknown algebra kind {kind!r}")


# ----------------------------------------------------------------- commands

def _bounds(doc, M, D):
    b = doc.get("bounds", {})
    j_max = _nat(b, "j_max", M.top if M.lowest_nonzero is not None else D)
    i_max = _nat(b, "i_max", max(0, j_max - lowest_degree(M)))
    return i_max, j_max


def cmd_homology(doc, D, args):
    A, M = resolve(doc, D)
    i_max, j_max = _bounds(doc, M, D)
    T = homology_table(A, M, i_max, j_max, method=args.method, jobs=args.jobs, cache=_cache(args))
    out = T.to_dict()
    out["verdict"] = "Computed"
    return out


def cmd_koszul(doc, D, args):
    A, M = resolve(doc, D)
    M = trim(M) if M.lowest_nonzero is not None else M
    i_max, j_max = _bounds(doc, M, D)
    rep = koszul_check(A, M, i_max, j_max, method=args.method, jobs=args.jobs, cache=_cache(args))
    out = rep.to_dict()
    out["certified"] = out.pop("verified_up_to")
    return out


def cmd_quadratic(doc, D, args):
    A, M = resolve(doc, D, default_module="residue")
    if doc.get("module", "residue") == "residue":
        res = is_quadratic_algebra(A, D, args.method)
        what = "algebra"
    else:
        res = is_quadratic_module(A, M, None, args.method)
        what = "module"
    return {"object": what, "quadratic": res.quadratic,
            "witness": None if res.witness is None else {"i": res.witness[0], "j": res.witness[1]},
            "certified": {"j_max": res.checked_up_to},
            "verdict": "Quadratic" if res.quadratic else "NotQuadratic"}


def cmd_dual(doc, D, args):
    A, M = resolve(doc, D, default_module="residue")
    qA = quadratic_part_algebra(A)
    dA = quadratic_dual_algebra(qA)
    budget = _nat(doc, "budget", DEFAULT_BUDGET)
    Ad = realize_algebra(dA, D, budget=budget)
    out = {"generators": dA.V_dim, "relations": dA.R.basis.tolist(),
           "dual_algebra_dims": list(Ad.dims)}
    if doc.get("module", "residue") != "residue":
        qM = quadratic_part_module(M, qA)
        dM = quadratic_dual_module(qM)
        out["dual_module_dims"] = list(realize_module(dM, D, Ad, budget=budget).dims)
        out["module_relations"] = dM.K.basis.tolist()
    out["verdict"] = "Computed"
    return out


def cmd_criterion_b(doc, D, args):
    n, R2 = ideal_relations(_need(doc, "ideal", dict), doc["p"])
    rep = theorem_b_check(n, doc["p"], R2, D, route=args.route, method=args.method)
    return rep.to_dict()


def cmd_five_term(doc, D, args):
    if doc.get("fixture") not in ("F2xF2", "F(2) x F(2)"):
        raise InputError('five-term needs {"fixture": "F2xF2"}')
    fx = free_times_free_fixture(doc["p"], D)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", H14NonzeroWarning)
        dims = five_term_dims(fx.B, fx.N, args.method)
    out = dims.to_dict()
    out["cup_surjective_on_N"] = cup_surjectivity_check(fx.N)
    out["warnings"] = [str(w.message) for w in caught]
    out["verdict"] = "Computed"
    return out


def cmd_group(doc, D, args):
    e = parse_group(_need(doc, "group", str))
    pk = psi_and_kernel(e, doc["p"], D)
    return {"group": str(e), "h1": h1_dim(e), "cohomology_dims": list(pk.cohomology.dims),
            "kernel_dims": [pk.kernel.dim(k) for k in range(D + 1)], "verdict": "Computed"}


def cmd_theorem_c(doc, D, args):
    e = parse_group(_need(doc, "group", str))
    rep = verify_theorem_c(e, doc["p"], D, jobs=args.jobs, cache=_cache(args))
    out = rep.to_dict()
    out["certified"] = out.pop("verified_up_to")
    out["group"] = str(e)
    return out


def cmd_search(doc, D, args):
    spec = _need(doc, "search", dict)
    n, r = _nat(spec, "n"), _nat(spec, "r")
    if r > comb(n, 2):
        raise InputError(f"r = {r} exceeds dim Lambda^2 = {comb(n, 2)}")
    records = list(search(n, doc["p"], r, D, args.seed, args.count, jobs=args.jobs,
                          timestamp=args.timestamps))
    return {"n": n, "p": doc["p"], "r": r, "truncation": D, "seed": args.seed,
            "records": [rec.to_dict() for rec in records], "summary": summarize(records),
            "verdict": "Computed"}


HANDLERS = {"homology": cmd_homology, "quadratic-check": cmd_quadratic,
            "koszul-check": cmd_koszul, "dual": cmd_dual, "criterion-b": cmd_criterion_b,
            "five-term": cmd_five_term, "group": cmd_group, "theorem-c": cmd_theorem_c,
            "search": cmd_search}


def _cache(args):
    return CellCache(args.cache_dir) if args.cache_dir else None


# --------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="koszulkit", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", help="JSON input document (default: stdin)")
    ap.add_argument("--max-degree", type=int, help="truncation degree D (overrides the input)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--route", choices=("direct", "dual", "both"), default="both")
    ap.add_argument("--cache-dir")
    ap.add_argument("--method", choices=METHODS, default="auto")
    ap.add_argument("--timestamps", action="store_true",
                    help="add wall-clock timestamps to search records (breaks byte-identity)")
    return ap


def load_document(args) -> dict:
    text = open(args.input).read() if args.input and args.input != "-" else sys.stdin.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(doc, dict):
        raise InputError("input must be a JSON object")
    doc["p"] = check_prime(_nat(doc, "p"))
    return doc


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.seed < 0 or args.seed >= 2**64:
            raise InputError("seed must be an unsigned 64-bit integer")
        if args.count < 0 or args.jobs < 1:
            raise InputError("count must be >= 0 and jobs >= 1")
        doc = load_document(args)
        D = args.max_degree if args.max_degree is not None else _nat(doc, "truncation")
        if D < 2:
            raise InputError("truncation degree must be at least 2")
        out = HANDLERS[args.command](doc, D, args)
        out["command"] = args.command
        out["p"] = doc["p"]
        out["truncation"] = D
        json.dump(_plain(out), stdout, sort_keys=True, indent=2)
        stdout.write("\n")
        return EXIT_OK
    except BudgetExceeded as exc:
        _error(exc, "budget")
        return EXIT_BUDGET
    except GroupParseError as exc:
        _error(exc, "input", position=exc.pos)
        return EXIT_INPUT
    except (KoszulkitError, ValueError, KeyError, TypeError, OSError) as exc:
        _error(exc, "input")
        return EXIT_INPUT


def _error(exc, kind, **extra):
    doc = {"error": type(exc).__name__, "kind": kind, "message": str(exc), **extra}
    json.dump(doc, sys.stderr, sort_keys=True)
    sys.stderr.write("\n")


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def main():
    sys.exit(run())
