"""Command-line interface: certificates, counts, and cached reports.

Every command emits a single self-describing JSON document (schema
version embedded, integers as decimal strings) and exits 0 exactly when
every requested certificate passed.  Results of expensive computations
are cached content-addressed; reruns with the same configuration produce
byte-identical reports except for the duration field.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys
import time
from fractions import Fraction

import jsonschema

from .cache import ResultCache, resolve_cache_dir
from .convolution import (Recipe, RecipeFormatError, RecipeNotFound,
                          SearchBounds, g2_recipe, realize, rigidity_index,
                          local_profile, search_g2_recipe)
from .counting import (DEFAULT_SERIES_NAIVE_BUDGET, chi_series, series_term,
                       ChiSeries)
from .errors import (BadCharacteristic, BadResidue, NotInBase, NotOrdinary,
                     TooLarge, TooSmallPrime)
from .finitegroups import (adjoint_decomposition, bigness_check, build_h56,
                           conjugacy_classes, sym_power_rep)
from .g2forms import (DenominatorClash, generation_certificate,
                      invariant_form_space, lie_stabilizer_dim, reduce_mod)
from .rings import InvalidCharacteristic
from .zeta import local_type_prediction, zeta_analysis

SCHEMA_PATH = os.path.join(os.path.dirname(__file__), "schemas",
                           "report.schema.json")

_HANDLED_ERRORS = (BadResidue, BadCharacteristic, TooLarge, NotOrdinary,
                   TooSmallPrime, NotInBase, InvalidCharacteristic,
                   DenominatorClash, RecipeFormatError, RecipeNotFound,
                   ValueError)


def _profile_json(profile):
    return [[[ev, [str(x) for x in part]] for ev, part in point]
            for point in profile]


def _matrix_json(m):
    return [[m.ring.to_str(x) for x in row] for row in m.data]


# ---------------------------------------------------------------------------
# command handlers: each returns (outputs dict, passed bool)

def _recipe_from_args(args):
    if getattr(args, "recipe", None):
        with open(args.recipe, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
        return Recipe.from_lines(lines)
    if getattr(args, "search", False):
        bounds = SearchBounds()
        return search_g2_recipe(bounds)
    return g2_recipe()


def _triple_payload(recipe):
    return {"kind": "triple", "recipe": list(recipe.to_lines()), "v": 1}


def _compute_triple_record(recipe):
    t = realize(recipe)
    d2, f2 = invariant_form_space(t, 2)
    d3, f3 = invariant_form_space(t, 3)
    stab = lie_stabilizer_dim((f3[0], f2[0])) if d2 and d3 else -1
    from .convolution import matches_g2_profile
    return {
        "recipe": list(recipe.to_lines()),
        "matrices": [_matrix_json(m) for m in t.matrices],
        "a_infinity": _matrix_json(t.a_infinity()),
        "denominator": str(t.denominator()),
        "product_ok": t.product_relation_holds(),
        "rigidity_index": str(rigidity_index(t)),
        "profile": _profile_json(local_profile(t)),
        "profile_ok": matches_g2_profile(t),
        "invariant_form_dims": [str(d2), str(d3)],
        "lie_stabilizer_dim": str(stab),
    }


def _triple_passed(rec):
    return (rec["product_ok"] and rec["profile_ok"]
            and rec["rigidity_index"] == "2"
            and rec["invariant_form_dims"] == ["1", "1"]
            and rec["lie_stabilizer_dim"] == "14")


def cmd_triple(args, cache):
    recipe = _recipe_from_args(args)
    rec = cache.fetch_or_compute(_triple_payload(recipe),
                                 lambda: _compute_triple_record(recipe))
    return rec, _triple_passed(rec)


def cmd_certify(args, cache):
    recipe = _recipe_from_args(args)
    t = realize(recipe)
    per_ell = []
    all_generate = True
    for ell in args.ell:
        payload = {"kind": "certify", "recipe": list(recipe.to_lines()),
                   "ell": ell, "v": 1}

        def compute(ell=ell):
            try:
                report = generation_certificate(reduce_mod(t, ell))
                return report.to_json()
            except _HANDLED_ERRORS as exc:
                return {"ell": str(ell), "verdict": "Error",
                        "error": f"{type(exc).__name__}: {exc}"}

        rec = cache.fetch_or_compute(payload, compute)
        per_ell.append(rec)
        if rec.get("verdict") != "Generates":
            all_generate = False
    return {"per_ell": per_ell,
            "summary": "Generates" if all_generate else "Incomplete"}, \
        all_generate


def cmd_hmodule(args, cache):
    payload = {"kind": "hmodule", "ellprime": args.ellprime, "v": 1}

    def compute():
        group = build_h56(args.ellprime)
        order = group.order
        classes = conjugacy_classes(group)
        decomp = adjoint_decomposition(group)
        big = bigness_check(group)
        return {
            "ellprime": str(args.ellprime),
            "order": str(order),
            "num_conjugacy_classes": str(len(classes)),
            "class_sizes": sorted(str(len(c)) for c in classes),
            "decomposition": decomp.to_json(),
            "bigness": big.to_json(),
        }

    rec = cache.fetch_or_compute(payload, compute)
    passed = (rec["decomposition"]["constituents"] == [["1", "7"], ["7", "6"]]
              and rec["bigness"]["verdict"] == "Big")
    return rec, passed


def cmd_sl2(args, cache):
    payload = {"kind": "sl2", "ell": args.ell, "power": args.power, "v": 1}

    def compute():
        rep = sym_power_rep(args.ell, args.power)
        decomp = adjoint_decomposition(rep)
        return {"ell": str(args.ell), "power": str(args.power),
                "decomposition": decomp.to_json()}

    rec = cache.fetch_or_compute(payload, compute)
    return rec, True


def _series_terms(args, cache, k_max):
    budget = args.budget if args.budget else DEFAULT_SERIES_NAIVE_BUDGET

    def one(k):
        payload = {"kind": "series-term", "q": args.q, "s": args.s, "k": k,
                   "variant": args.variant, "naive_budget": budget, "v": 1}

        def compute():
            t, crossed = series_term(args.q, args.s, k, variant=args.variant,
                                     naive_budget=budget)
            return {"t": str(t), "cross_checked": crossed}

        return cache.fetch_or_compute(payload, compute)

    workers = args.workers or min(4, os.cpu_count() or 1)
    ks = list(range(1, k_max + 1))
    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(workers) as pool:
            recs = list(pool.map(one, ks))
    else:
        recs = [one(k) for k in ks]
    return recs


def cmd_count(args, cache):
    try:
        recs = _series_terms(args, cache, args.kmax)
    except TooLarge as exc:
        raise TooLarge(f"{exc} (smallest failing k determines the bound)")
    outputs = {
        "q": str(args.q),
        "s": str(args.s % args.q),
        "variant": args.variant,
        "terms": [r["t"] for r in recs],
        "cross_checked_k": [str(k) for k, r in enumerate(recs, 1)
                            if r["cross_checked"]],
    }
    return outputs, True


def cmd_zeta(args, cache):
    recs = _series_terms(args, cache, args.kmax)
    series = ChiSeries(q=args.q, s=args.s % args.q, variant=args.variant,
                       terms=[int(r["t"]) for r in recs],
                       cross_checked=[k for k, r in enumerate(recs, 1)
                                      if r["cross_checked"]])
    report = zeta_analysis(series)
    outputs = {"series": series.to_json(), "analysis": report.to_json()}
    passed = (not report.inconsistent) and \
        (report.weil_ok or report.underdetermined)
    return outputs, passed


def cmd_predict(args, cache):
    s = Fraction(args.s)
    pred = local_type_prediction(s)
    return pred.to_json(), True


# ---------------------------------------------------------------------------
# plumbing

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", default=None,
                        help="cache directory (default: $G2RIGID_CACHE_DIR "
                             "or ~/.cache/g2rigid)")
    common.add_argument("--budget", type=int, default=None,
                        help="enumeration budget for naive cross-checks")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--variant", choices=["consecutive", "cyclic"],
                        default="consecutive",
                        help="reading of the wrap-around difference factor")
    common.add_argument("--workers", type=int, default=None)

    p = argparse.ArgumentParser(
        prog="g2rigid",
        description="certificates and point counts for the rank-7 rigid "
                    "monodromy tuple")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("triple", parents=[common],
                        help="construct and certify the triple over Q")
    sp.add_argument("--recipe", help="file with recipe lines to replay")
    sp.add_argument("--search", action="store_true",
                    help="run the breadth-first recipe search instead of "
                         "replaying the pinned recipe")
    sp.set_defaults(fn=cmd_triple)

    sp = sub.add_parser("certify", parents=[common],
                        help="mod-l generation certificates")
    sp.add_argument("--ell", required=True,
                    help="comma-separated list of primes")
    sp.add_argument("--recipe", help="file with recipe lines to replay")
    sp.set_defaults(fn=cmd_certify)

    sp = sub.add_parser("hmodule", parents=[common],
                        help="order-56 monomial group certificate")
    sp.add_argument("--ellprime", type=int, required=True)
    sp.set_defaults(fn=cmd_hmodule)

    sp = sub.add_parser("sl2", parents=[common],
                        help="symmetric-power adjoint decomposition")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--power", type=int, required=True)
    sp.set_defaults(fn=cmd_sl2)

    sp = sub.add_parser("count", parents=[common],
                        help="character-sum series over extensions")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--kmax", type=int, default=7)
    sp.set_defaults(fn=cmd_count)

    sp = sub.add_parser("zeta", parents=[common],
                        help="spectral analysis of the series")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--kmax", type=int, default=7)
    sp.set_defaults(fn=cmd_zeta)

    sp = sub.add_parser("predict", parents=[common],
                        help="local-type predictions for a rational s")
    sp.add_argument("--s", required=True, help="rational, e.g. 8/5")
    sp.set_defaults(fn=cmd_predict)
    return p


def _flatten(prefix, obj, rows):
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}{k}." if prefix else f"{k}.", obj[k], rows)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}{i}.", v, rows)
    else:
        rows.append((prefix.rstrip("."), obj))


def _emit(envelope, fmt, out):
    if fmt == "json":
        with open(SCHEMA_PATH, "r", encoding="utf-8") as fh:
            schema = json.load(fh)
        jsonschema.validate(envelope, schema)
        out.write(json.dumps(envelope, sort_keys=True, indent=2) + "\n")
    else:
        rows = []
        _flatten("", envelope["outputs"], rows)
        out.write("key,value\n")
        for k, v in rows:
            out.write(f"{k},{v}\n")


def _config_json(args):
    skip = {"fn", "command", "cache_dir", "format"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip or v is None:
            continue
        out[k] = v if isinstance(v, (bool, list)) else str(v)
    return out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "ell", None) is not None and args.command == "certify":
        args.ell = [int(x) for x in str(args.ell).split(",") if x]
    cache = ResultCache(resolve_cache_dir(args.cache_dir))
    start = time.monotonic()
    try:
        outputs, passed = args.fn(args, cache)
    except _HANDLED_ERRORS as exc:
        outputs = {"error": f"{type(exc).__name__}: {exc}"}
        passed = False
    envelope = {
        "schema_version": "1",
        "command": args.command,
        "config": _config_json(args),
        "outputs": outputs,
        "passed": passed,
        "cache_keys": sorted(set(cache.keys_used)),
        "duration_s": f"{time.monotonic() - start:.3f}",
    }
    _emit(envelope, args.format, sys.stdout)
    print(f"# cache hits: {cache.hits}, misses: {cache.misses}",
          file=sys.stderr)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
