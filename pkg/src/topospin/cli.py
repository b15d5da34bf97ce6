"""Command-line interface.

Every successful invocation prints one JSON object with the fixed keys
``command``, ``inputs``, ``value``, ``decomposition``, ``assertions`` and
``elapsed_ms``; diagnostics go to stderr.  Exit codes: 0 success, 1 a
mathematical assertion failed (or an undefined value was requested), 2
invalid input, 3 term budget exceeded.

Set ``TOPOSPIN_CACHE`` to a directory to memoize results keyed by the
request; replayed output is byte-identical apart from ``elapsed_ms``.
"""

import argparse
import hashlib
import json
import os
import sys
import time

from . import analytic, brute, modular, optimality
from .category import (
    BOUNDARIES,
    LadderSpec,
    fibonacci,
    ising,
    load_category,
    zn_strings,
)
from .errors import BudgetExceeded, DivisionByZero, ValidationError, ZeroPhi
from .replica import Triple, alpha, beta, gamma, identity

__all__ = ["main", "build_parser"]

_PERM_TOKENS = {"alpha": alpha, "beta": beta, "gamma": gamma, "id": identity,
                "identity": identity}


def _parse_theory(text):
    """Resolve a --theory string into category / modular inputs."""
    if text.startswith("zn:"):
        parts = text.split(":")
        if len(parts) != 3:
            raise ValidationError(f"expected zn:N:p, got {text!r}")
        try:
            N, p = int(parts[1]), int(parts[2])
        except ValueError:
            raise ValidationError(f"expected integers in {text!r}") from None
        if N < 1:
            raise ValidationError(f"need N >= 1 in {text!r}")
        return {"kind": "zn", "N": N, "p": p, "cat": zn_strings(N, p)}
    if text == "fibonacci":
        return {"kind": "builtin", "cat": fibonacci()}
    if text == "ising":
        return {"kind": "builtin", "cat": ising()}
    if text.startswith("file:"):
        return {"kind": "file", "cat": load_category(text[5:])}
    raise ValidationError(
        f"unknown theory {text!r}; expected zn:N:p, fibonacci, ising or file:PATH"
    )


def _theory_modular(th, text):
    if th["kind"] == "zn":
        return modular.twisted_zn(th["N"], th["p"])
    cat = th["cat"]
    if cat.twists is None:
        raise ValidationError(
            f"theory {text!r} carries no twists; its double is unavailable"
        )
    return modular.doubled(cat)


def _parse_triple(text, r):
    tokens = [t.strip() for t in text.split(",")]
    if len(tokens) != 3:
        raise ValidationError(
            f"expected three comma-separated tokens for the region "
            f"permutations, got {text!r}"
        )
    perms = []
    for tok in tokens:
        if tok not in _PERM_TOKENS:
            raise ValidationError(
                f"unknown permutation token {tok!r}; "
                f"choose from {sorted(set(_PERM_TOKENS))}"
            )
        perms.append(_PERM_TOKENS[tok](r))
    return Triple(*perms)


def _parse_ladders(text):
    out = {}
    for item in text.split(","):
        if "=" not in item:
            raise ValidationError(f"expected BOUNDARY=N, got {item!r}")
        key, _, val = item.partition("=")
        try:
            out[key.strip()] = int(val)
        except ValueError:
            raise ValidationError(f"rung count {val!r} is not an integer") from None
    return LadderSpec.from_dict(out)


def _cnum(z):
    if z is None:
        return None
    z = complex(z)
    return {"re": float(z.real), "im": float(z.imag)}


def _assert_close(name, lhs, rhs, tol):
    lhs, rhs = complex(lhs), complex(rhs)
    ok = abs(lhs - rhs) <= tol * max(1.0, abs(rhs))
    return {"name": name, "pass": bool(ok), "lhs": _cnum(lhs), "rhs": _cnum(rhs),
            "tol": tol}


def _report_decomposition(rep):
    return {
        "phi": _cnum(rep.phi),
        "prefactor_exponent": rep.normalization_exponent,
        "terms": {
            "enumerated": rep.terms_enumerated,
            "surviving": rep.terms_surviving,
        },
    }


# ------------------------------------------------------------ subcommands

def _cmd_phi(args):
    th = _parse_theory(args.theory)
    inputs = {
        "theory": args.theory,
        "route": args.route,
        "r": args.r,
        "triple": args.triple,
        "ladders": None,
        "seed": args.seed,
        "budget": args.budget,
    }
    triple = None
    if args.triple is not None:
        triple = _parse_triple(args.triple, args.r)
    ladders = None
    if args.ladders is not None:
        ladders = _parse_ladders(args.ladders)
        inputs["ladders"] = ladders.as_dict()
    budget = args.budget if args.budget is not None else brute.DEFAULT_BUDGET

    if args.route == "modular":
        if triple is not None or ladders is not None or args.seed is not None:
            raise ValidationError(
                "the modular route takes no --triple/--ladders/--seed"
            )
        md = _theory_modular(th, args.theory)
        value = modular.phi_invariant(md, args.r)
        terms = {"enumerated": md.n, "surviving": md.n}
        return inputs, value, {"phi": _cnum(value), "prefactor_exponent": 0,
                               "terms": terms}, []

    if args.route == "brute":
        if th["kind"] != "zn":
            raise ValidationError("the brute-force route needs a zn:N:p theory")
        if ladders is not None:
            raise ValidationError("the brute-force route takes no --ladders")
        circuit = None
        if args.seed is not None:
            circuit = brute.random_vertex_circuit(th["N"], args.seed)
        rep = brute.phi_brute(th["N"], th["p"], triple=triple, r=args.r,
                              circuit=circuit, budget=budget)
        return inputs, rep.value, _report_decomposition(rep), []

    if args.route == "analytic":
        if args.seed is not None:
            raise ValidationError("the analytic route takes no --seed")
        if th["kind"] == "zn" and triple is None and ladders is None:
            rep = analytic.phi_zn_constrained(th["N"], th["p"], args.r)
        else:
            rep = analytic.phi_stringnet(th["cat"], triple=triple, r=args.r,
                                         ladders=ladders, budget=budget)
        return inputs, rep.value, _report_decomposition(rep), []

    # ratio
    if triple is not None:
        raise ValidationError("the ratio fixes its own permutation triples")
    if args.seed is not None:
        raise ValidationError("the ratio route takes no --seed")
    if th["kind"] == "zn" and ladders is None:
        rep = brute.phi_ratio_brute(th["N"], th["p"], args.r, budget=budget)
    else:
        rep = analytic.phi_ratio_stringnet(th["cat"], args.r, ladders=ladders,
                                           budget=budget)
    terms = {"enumerated": rep.terms_enumerated, "surviving": rep.terms_surviving}
    return inputs, rep.value, {"phi": None, "prefactor_exponent": 0,
                               "terms": terms}, []


def _cmd_lens(args):
    th = _parse_theory(args.theory)
    md = _theory_modular(th, args.theory)
    value = modular.lens_partition(md, args.r)
    phi = modular.phi_invariant(md, args.r)
    inputs = {"theory": args.theory, "r": args.r}
    deco = {"phi": _cnum(phi), "prefactor_exponent": 1,
            "terms": {"enumerated": md.n, "surviving": md.n}}
    return inputs, value, deco, []


def _cmd_zeta(args):
    th = _parse_theory(args.theory)
    md = _theory_modular(th, args.theory)
    value = modular.higher_central_charge(md, args.r)
    inputs = {"theory": args.theory, "r": args.r}
    checks = [_assert_close("zeta-unit-modulus", abs(value), 1.0, 1e-12)]
    return inputs, value, None, checks


def _cmd_search(args):
    res = optimality.min_replica_search(args.n, p=args.p, k_max=args.k_max)
    inputs = {"n": args.n, "p": args.p, "k_max": args.k_max}
    checks = [
        {"name": f"no-witness-of-size-{k}", "pass": True, "lhs": _cnum(0.0),
         "rhs": _cnum(0.0), "tol": 0.0}
        for k in res.exhausted
    ]
    if res.witness is not None:
        ver = optimality.verify_witness(res.witness, p=args.p)
        checks.append(
            {"name": f"witness-of-size-{res.k_min}-verifies",
             "pass": bool(ver["valid"]), "lhs": _cnum(float(ver["phase"])),
             "rhs": _cnum(0.0), "tol": 0.0}
        )
        print(f"witness kets: {list(res.witness.kets)}", file=sys.stderr)
        print(f"witness bras: {list(res.witness.bras)}", file=sys.stderr)
        value = complex(res.k_min)
    else:
        value = None
    deco = {"phi": None, "prefactor_exponent": 0,
            "terms": {"enumerated": res.nodes,
                      "surviving": 0 if res.k_min is None else res.k_min}}
    return inputs, value, deco, checks


def _cmd_verify(args):
    if args.suite != "abelian-cross":
        raise ValidationError(f"unknown suite {args.suite!r}")
    budget = args.budget if args.budget is not None else brute.DEFAULT_BUDGET
    checks = []
    for N in (2, 3):
        for r in (2, 3):
            for p in range(N):
                tag = f"zn:{N}:{p}:r={r}"
                rb = brute.phi_brute(N, p, r=r, budget=budget)
                rc = analytic.phi_zn_constrained(N, p, r)
                closed = modular.phi_closed_form_zn(N, p, r)
                md = modular.phi_invariant(modular.twisted_zn(N, p), r)
                checks.append(_assert_close(
                    f"{tag}:brute-equals-constrained", rb.phi, rc.phi, 1e-12))
                checks.append(_assert_close(
                    f"{tag}:constrained-matches-closed-form", rc.phi, closed, 1e-9))
                checks.append(_assert_close(
                    f"{tag}:closed-form-matches-modular", closed, md, 1e-9))
    npass = sum(1 for c in checks if c["pass"])
    inputs = {"suite": args.suite, "budget": args.budget}
    return inputs, complex(npass), None, checks


def _cmd_ladder_scan(args):
    th = _parse_theory(args.theory)
    boundary = args.boundary.replace("Λ", "L")
    if boundary not in BOUNDARIES:
        raise ValidationError(
            f"unknown boundary {args.boundary!r}, expected one of {BOUNDARIES}"
        )
    budget = args.budget if args.budget is not None else brute.DEFAULT_BUDGET
    inputs = {"theory": args.theory, "r": args.r, "boundary": boundary,
              "max_n": args.max_n, "budget": args.budget}
    base = analytic.phi_stringnet(th["cat"], r=args.r, budget=budget)
    checks = []
    for n in range(2, args.max_n + 1):
        rep = analytic.phi_stringnet(
            th["cat"], r=args.r, ladders={boundary: n}, budget=budget
        )
        checks.append(_assert_close(
            f"extracted-invariant-stable:n={n}", rep.phi, base.phi, 1e-10))
    return inputs, base.phi, _report_decomposition(base), checks


# ------------------------------------------------------------------ main

def build_parser():
    ap = argparse.ArgumentParser(
        prog="topospin",
        description="Topological spin invariants of doubled phases: modular, "
                    "brute-force and constrained-sum routes.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, theory=True, r=True):
        if theory:
            sp.add_argument("--theory", required=True,
                            help="zn:N:p | fibonacci | ising | file:PATH")
        if r:
            sp.add_argument("--r", type=int, required=True,
                            help="contraction degree (replica pairs)")
        sp.add_argument("--out", help="also write the JSON result to this file")
        sp.add_argument("--jobs", type=int, default=1,
                        help="worker processes (reserved; evaluation is "
                             "currently serial)")

    sp = sub.add_parser("phi", help="invariant by a chosen route")
    sp.add_argument("route", choices=("modular", "brute", "analytic", "ratio"))
    common(sp)
    sp.add_argument("--triple",
                    help="region permutations, e.g. alpha,beta,gamma "
                         "(tokens alpha|beta|gamma|id)")
    sp.add_argument("--ladders",
                    help="boundary rung counts, e.g. AL=2,BC=3 "
                         "(boundaries AL,AB,BC,AC,BL,CL)")
    sp.add_argument("--seed", type=int,
                    help="attach a seeded random vertex circuit (brute only)")
    sp.add_argument("--budget", type=int, help="nominal term-count budget")
    sp.set_defaults(func=_cmd_phi)

    sp = sub.add_parser("lens", help="lens-space value phi/D from modular data")
    common(sp)
    sp.set_defaults(func=_cmd_lens)

    sp = sub.add_parser("zeta", help="unit-modulus phase phi/|phi|")
    common(sp)
    sp.set_defaults(func=_cmd_zeta)

    sp = sub.add_parser("search-min-replicas",
                        help="prove the minimal balanced-pair size")
    sp.add_argument("--n", type=int, required=True, help="cyclic group order")
    sp.add_argument("--p", type=int, default=1, help="cocycle coupling")
    sp.add_argument("--k-max", type=int, default=8, dest="k_max")
    common(sp, theory=False, r=False)
    sp.set_defaults(func=_cmd_search)

    sp = sub.add_parser("verify", help="run a cross-validation suite")
    sp.add_argument("--suite", default="abelian-cross",
                    choices=("abelian-cross",))
    sp.add_argument("--budget", type=int)
    common(sp, theory=False, r=False)
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("ladder-scan",
                        help="scan boundary-ladder rung counts and check the "
                             "extracted invariant is unchanged")
    common(sp)
    sp.add_argument("--boundary", default="AL")
    sp.add_argument("--max-n", type=int, default=6, dest="max_n")
    sp.add_argument("--budget", type=int)
    sp.set_defaults(func=_cmd_ladder_scan)
    return ap


def _cache_lookup(command, inputs):
    root = os.environ.get("TOPOSPIN_CACHE")
    if not root:
        return None, None
    key = json.dumps({"command": command, "inputs": inputs}, sort_keys=True)
    digest = hashlib.sha256(key.encode()).hexdigest()
    path = os.path.join(root, digest + ".json")
    if os.path.exists(path):
        with open(path) as fh:
            return json.load(fh), path
    return None, path


def main(argv=None):
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    if getattr(args, "r", None) is not None and args.r < 2:
        print(
            f"warning: r={args.r} is a degenerate contraction "
            "(the invariant starts being informative at r=2)",
            file=sys.stderr,
        )
    if getattr(args, "jobs", 1) is not None and getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return 2
    try:
        inputs, value, deco, checks = args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ZeroPhi, DivisionByZero) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    cached, cache_path = _cache_lookup(args.command, inputs)
    if cached is not None:
        doc = cached
    else:
        doc = {
            "command": args.command,
            "inputs": inputs,
            "value": _cnum(value),
            "decomposition": deco,
            "assertions": checks,
        }
        if cache_path is not None:
            with open(cache_path, "w") as fh:
                json.dump(doc, fh)
    doc["elapsed_ms"] = (time.perf_counter() - t0) * 1e3
    text = json.dumps(doc, indent=1)
    print(text)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if any(not c["pass"] for c in doc["assertions"]):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
