"""Command-line front end: ``zetacode <subcommand> [flags]``.

Every output carries a ``metadata`` header (version, seed, config echo,
timestamp).  The config echo leaves out ``--threads`` and ``--out`` so that
runs differing only in parallelism or destination produce identical bytes
apart from the timestamp.

Exit codes: 0 success, 1 domain error, 2 I/O, parse or usage error.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from . import __version__
from . import io as zio
from ._accel import set_threads
from .cycles import STATISTICS, count_4cycles, count_triangles, rate_scaling_probe, tail_probability
from .ensemble import EnsembleSpec, averaged_zeta
from .errors import InputFormatError, ZetacodeError
from .gaussian import (
    MAX_WICK_ORDER,
    direct_inverse_det,
    four_cycle_term_census,
    gaussian_det_estimator,
    paper_real_expectation,
    wick_coefficient,
)
from .graph import hashimoto_matrix, is_cycle_code, random_cover, tanner_from_parity
from .pseudo import codewords_bruteforce, cover_pseudocodewords, exponent_mod2_is_codeword, pseudocodewords_from_zeta
from .series import UnivariatePolynomial
from .zeta import closed_walk_counts, edge_zeta_inverse_det, prime_cycle_counts

NOT_ECHOED = ("threads", "out", "func")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x.numerator)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if np.isfinite(x) else None
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    when = datetime.fromtimestamp(int(epoch), timezone.utc) if epoch else datetime.now(timezone.utc)
    return when.isoformat(timespec="seconds")


def _metadata(args) -> dict:
    config = {k: v for k, v in sorted(vars(args).items()) if k not in NOT_ECHOED}
    return {"version": __version__, "seed": args.seed, "config": _jsonable(config),
            "timestamp": _timestamp()}


def _emit(args, result, rows=None, columns=None) -> None:
    meta = _metadata(args)
    if args.format == "csv":
        if rows is None:
            raise UsageError(f"subcommand {args.command!r} has no CSV form; use --format json")
        buf = _io.StringIO()
        buf.write(f"# version={meta['version']}\n")
        buf.write(f"# seed={meta['seed']}\n")
        buf.write(f"# config={json.dumps(meta['config'], sort_keys=True)}\n")
        buf.write(f"# timestamp={meta['timestamp']}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow(["" if v is None else v for v in _jsonable(list(r))])
        text = buf.getvalue()
    else:
        text = json.dumps({"metadata": meta, "result": _jsonable(result)}, indent=2, sort_keys=True) + "\n"
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputFormatError(f"cannot write output: {exc.strerror}", args.out) from exc
    else:
        sys.stdout.write(text)


def _require_seed(args):
    if args.seed is None:
        raise UsageError(f"{args.command} is stochastic: --seed is required")


def _graph(args):
    if not args.graph:
        raise UsageError(f"{args.command} needs --graph PATH")
    return zio.read_edge_list(args.graph)


def _parity(args):
    if args.alist and args.dense:
        raise UsageError("give one of --alist or --dense, not both")
    if args.alist:
        return zio.read_alist(args.alist)
    if args.dense:
        return zio.read_dense(args.dense, binary=True)
    raise UsageError(f"{args.command} needs --alist PATH or --dense PATH")


def parse_grid(text: str) -> list[float]:
    """``A:B:STEP`` inclusive of ``B`` (up to rounding)."""
    try:
        a, b, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"--u-grid must be A:B:STEP, got {text!r}") from None
    if step <= 0 or b < a:
        raise UsageError("--u-grid needs STEP > 0 and B >= A")
    n = int(np.floor((b - a) / step + 1e-9))
    return [round(a + i * step, 12) for i in range(n + 1)]


def _float_list(text, name):
    try:
        return [float(x) for x in str(text).split(",")]
    except ValueError:
        raise UsageError(f"{name} must be a number or a comma-separated list, got {text!r}") from None


def _int_list(text, name):
    try:
        return [int(x) for x in str(text).split(",")]
    except ValueError:
        raise UsageError(f"{name} must be an integer or a comma-separated list, got {text!r}") from None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_zeta(args):
    g = _graph(args)
    D = 2 * g.num_edges if args.degree is None else args.degree
    if args.univariate:
        s = edge_zeta_inverse_det(g, "single", D)
        coeffs = UnivariatePolynomial.from_series(s).coeffs
        coeffs = list(coeffs) + [0] * (D + 1 - len(coeffs))
        result = {"num_vertices": g.num_vertices, "num_edges": g.num_edges, "degree": D,
                  "zeta_inverse": coeffs,
                  "zeta": [s.reciprocal().coefficient((d,)) for d in range(D + 1)]}
        rows = [(d, c, result["zeta"][d]) for d, c in enumerate(coeffs)]
        return _emit(args, result, rows, ["degree", "zeta_inverse", "zeta"])
    s = edge_zeta_inverse_det(g, None, D)
    result = {"num_vertices": g.num_vertices, "num_edges": g.num_edges, "degree": D,
              "zeta_inverse": s.to_json()}
    rows = [(" ".join(map(str, e)), c) for e, c in s.sorted_terms()]
    return _emit(args, result, rows, ["exponent", "coefficient"])


def cmd_pseudo(args):
    H = _parity(args)
    n = H.shape[1]
    D = 2 * n if args.degree is None else args.degree
    terms = pseudocodewords_from_zeta(H, D)
    entries = [{"exponent": list(e), "coefficient": c, "mod2_codeword": exponent_mod2_is_codeword(e, H)}
               for e, c in terms.items()]
    result = {"num_bits": n, "num_checks": H.shape[0], "degree": D, "pseudocodewords": entries,
              "violations": sum(not x["mod2_codeword"] for x in entries)}
    rows = [(" ".join(map(str, x["exponent"])), x["coefficient"], x["mod2_codeword"]) for x in entries]
    return _emit(args, result, rows, ["exponent", "coefficient", "mod2_codeword"])


def cmd_cover(args):
    _require_seed(args)
    H = _parity(args)
    if args.M < 1:
        raise UsageError("--M must be at least 1")
    T = tanner_from_parity(H)
    cover = random_cover(T.graph, args.M, args.seed)
    found = cover_pseudocodewords(T, cover)
    distinct = sorted({w for w, _, _ in found})
    base = codewords_bruteforce(H)
    entries = []
    for w in distinct:
        proj = next(p for x, p, _ in found if x == w)
        ok = next(o for x, _, o in found if x == w)
        entries.append({"omega": list(w), "mod2_projection": list(proj), "is_codeword": ok})
    result = {"M": args.M, "num_bits": T.num_bits, "num_checks": T.num_checks,
              "permutations": [list(p) for p in cover.perms],
              "base_codewords": len(base), "lifted_codewords": len(found),
              "pseudocodewords": entries, "violations": sum(not ok for _, _, ok in found),
              "cycle_code": is_cycle_code(H)}
    rows = [(" ".join(str(x) for x in e["omega"]), " ".join(map(str, e["mod2_projection"])), e["is_codeword"])
            for e in entries]
    return _emit(args, result, rows, ["omega", "mod2_projection", "is_codeword"])


def _ensemble_spec(args) -> EnsembleSpec:
    if args.spec:
        try:
            with open(args.spec) as fh:
                obj = json.load(fh)
        except OSError as exc:
            raise InputFormatError(f"cannot read file: {exc.strerror}", args.spec) from exc
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"invalid JSON: {exc.msg}", args.spec, exc.lineno) from exc
        if args.seed is not None:
            obj["seed"] = args.seed
        elif "seed" not in obj and obj.get("kind") != "point_mass":
            raise UsageError("ensemble spec has no seed; give --seed")
        if args.samples is not None:
            obj["samples"] = args.samples
        try:
            return EnsembleSpec.from_json(obj)
        except (KeyError, TypeError) as exc:
            raise InputFormatError(f"malformed ensemble spec: {exc}", args.spec) from exc
    kind = args.kind or ("point_mass" if args.graph else None)
    if kind is None:
        raise UsageError("ensemble needs --kind (or --spec PATH)")
    if kind != "point_mass":
        _require_seed(args)
    seed = 0 if args.seed is None else args.seed
    if kind == "point_mass":
        return EnsembleSpec.point_mass(_graph(args), seed=seed, samples=args.samples or 1)
    samples = args.samples or 1000
    if kind == "erdos_renyi":
        if args.N is None or args.p is None:
            raise UsageError("erdos_renyi needs --N and --p")
        return EnsembleSpec.erdos_renyi(_int_list(args.N, "--N")[0], args.p, seed=seed, samples=samples)
    if None in (args.num_bits, args.num_checks, args.bit_degree):
        raise UsageError("bipartite_config needs --num-bits, --num-checks and --bit-degree")
    return EnsembleSpec.bipartite_config(args.num_bits, args.num_checks, args.bit_degree, seed=seed, samples=samples)


def _u_values(args) -> list[float]:
    if args.u is not None and args.u_grid:
        raise UsageError("give one of --u or --u-grid, not both")
    if args.u_grid:
        return parse_grid(args.u_grid)
    if args.u is None:
        raise UsageError(f"{args.command} needs --u X or --u-grid A:B:STEP")
    return [args.u]


def cmd_ensemble(args):
    spec = _ensemble_spec(args)
    us = _u_values(args)
    out = []
    for u in us:
        try:
            out.append(averaged_zeta(spec, u, threads=args.threads).to_json())
        except ZetacodeError as exc:
            if len(us) == 1:
                raise
            # a grid point beyond every sample's radius is reported, not fatal
            stats = getattr(exc, "stats", None) or {}
            out.append({"u": u, "mean": None, "stderr": None, "included": 0, "excluded": spec.samples,
                        "radius_min": stats.get("radius_min"), "radius_median": stats.get("radius_median"),
                        "max_condition": None})
    result = {"spec": spec.to_json(), "estimates": out}
    cols = ["u", "mean", "stderr", "included", "excluded", "radius_min", "radius_median", "max_condition"]
    return _emit(args, result, [[e[c] for c in cols] for e in out], cols)


def cmd_gaussian(args):
    _require_seed(args)
    if args.graph:
        g = zio.read_edge_list(args.graph)
        m = hashimoto_matrix(g).astype(float)
    elif args.dense:
        g = None
        m = zio.read_dense(args.dense, binary=False)
    else:
        raise UsageError("gaussian needs --dense PATH (matrix) or --graph PATH (Hashimoto matrix)")
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputFormatError(f"matrix must be square, got shape {m.shape}", args.dense or args.graph)
    # decimal file entries are read as the exact decimals they denote
    exact_m = [[Fraction(repr(float(x))) for x in row] for row in m.tolist()]
    u = 0.1 if args.u is None else args.u
    S = args.samples or 100_000
    k_max = min(MAX_WICK_ORDER, 4 if args.degree is None else args.degree)
    rows = []
    direct = direct_inverse_det(m, u)
    for variant in ("complex", "paper_real"):
        try:
            r = gaussian_det_estimator(m, u, S, variant=variant, seed=args.seed)
            exact = direct if variant == "complex" else paper_real_expectation(m, u)
            rows.append({"variant": variant, "mean": r.mean, "stderr": r.stderr, "target": exact,
                         "z_score": (r.mean - exact) / r.stderr if r.stderr > 0 else None, "error": None})
        except ZetacodeError as exc:
            rows.append({"variant": variant, "mean": None, "stderr": None, "target": None,
                         "z_score": None, "error": str(exc)})
    result = {"u": u, "samples": S, "direct_inverse_det": direct, "estimators": rows,
              "wick_coefficients": [wick_coefficient(exact_m, k).value for k in range(k_max + 1)]}
    if g is not None and g.num_edges <= 8:
        c = four_cycle_term_census(g)
        result["fourth_order_census"] = {
            "total": c.total,
            "by_structure": {s: sum((r.contribution for r in c.rows if r.structure == s), Fraction(0))
                             for s in ("4-cycle", "2-cycle product", "mixed")},
            "closed_walks": c.closed_walks,
            "prime_counts": list(c.prime_counts),
            "matches_prime_cycles": c.matches_prime_cycles,
        }
    cols = ["variant", "mean", "stderr", "target", "z_score", "error"]
    return _emit(args, result, [[r[c] for c in cols] for r in rows], cols)


def cmd_cycles(args):
    g = _graph(args)
    L = 6 if args.degree is None else args.degree
    primes = prime_cycle_counts(g, L) if g.num_edges else [0] * (L + 1)
    walks = closed_walk_counts(g, L) if g.num_edges else [0] * L
    result = {"num_vertices": g.num_vertices, "num_edges": g.num_edges, "cycle_rank": g.cycle_rank,
              "prime_cycle_counts": primes[1:], "closed_walks": walks}
    if g.is_simple():
        result["triangles"] = count_triangles(g)
        result["four_cycles"] = count_4cycles(g)
    rows = [(length, primes[length], walks[length - 1]) for length in range(1, L + 1)]
    return _emit(args, result, rows, ["length", "prime_cycles", "closed_walks"])


def cmd_ldp(args):
    _require_seed(args)
    if args.N is None or args.p is None or args.t is None:
        raise UsageError("ldp needs --N, --p and --t")
    Ns = _int_list(args.N, "--N")
    ts = _float_list(args.t, "--t")
    S = args.samples or 10_000
    set_threads(args.threads)
    rows = []
    probes = []
    if len(Ns) > 1:
        for t in ts:
            probe = rate_scaling_probe(args.p, t, Ns, S, seed=args.seed, statistic=args.statistic)
            rows.extend(probe.estimates)
            probes.append({"t": t, "spread": probe.spread, "flagged": probe.flagged})
    else:
        spec = EnsembleSpec.erdos_renyi(Ns[0], args.p, seed=args.seed, samples=S)
        rows = tail_probability(spec, args.statistic, ts, S)
    cols = ["N", "p", "t", "hits", "samples", "P_hat", "ci_lo", "ci_hi", "phi_hat", "phi_lower", "below_resolution"]
    table = [[r.N, r.p, r.t, r.hits, r.samples, r.p_hat, r.ci_lo, r.ci_hi, r.phi_hat, r.phi_lower,
              r.below_resolution] for r in rows]
    result = {"statistic": args.statistic, "rows": [dict(zip(cols, r)) for r in table]}
    if probes:
        result["scaling"] = probes
    return _emit(args, result, table, cols)


COMMANDS = {
    "zeta": (cmd_zeta, "edge or Ihara zeta function of a graph"),
    "pseudo": (cmd_pseudo, "pseudo-codewords of a cycle code from zeta monomials"),
    "cover": (cmd_cover, "random M-cover lift and its pseudo-codewords"),
    "ensemble": (cmd_ensemble, "ensemble-averaged inverse determinant over u"),
    "gaussian": (cmd_gaussian, "Gaussian determinant estimators and moment coefficients"),
    "cycles": (cmd_cycles, "prime-cycle and short-cycle census of a graph"),
    "ldp": (cmd_ldp, "Erdos-Renyi cycle-count tails and rate scaling"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", metavar="PATH", help="edge-list file")
    common.add_argument("--alist", metavar="PATH", help="parity-check matrix in alist format")
    common.add_argument("--dense", metavar="PATH", help="dense whitespace-separated matrix")
    common.add_argument("--spec", metavar="PATH", help="JSON ensemble spec {kind, params, seed, samples}")
    common.add_argument("--degree", type=int, metavar="D", help="truncation degree / maximum order")
    common.add_argument("--univariate", action="store_true", help="single variable u for every edge")
    common.add_argument("--u", type=float, metavar="X")
    common.add_argument("--u-grid", metavar="A:B:STEP")
    common.add_argument("--samples", type=int, metavar="S")
    common.add_argument("--seed", type=int, metavar="S")
    common.add_argument("--kind", choices=["point_mass", "erdos_renyi", "bipartite_config"])
    common.add_argument("--N", metavar="N[,N...]", help="vertex count (ldp accepts a list)")
    common.add_argument("--p", type=float)
    common.add_argument("--num-bits", type=int)
    common.add_argument("--num-checks", type=int)
    common.add_argument("--bit-degree", type=int)
    common.add_argument("--M", type=int, default=2, help="cover degree")
    common.add_argument("--statistic", choices=list(STATISTICS), default="triangles")
    common.add_argument("--t", metavar="T[,T...]")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1, metavar="K")
    parser = argparse.ArgumentParser(prog="zetacode", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"zetacode {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (fn, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        args.func(args)
    except UsageError as exc:
        print(f"zetacode {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except InputFormatError as exc:
        print(f"zetacode {args.command}: input error: {exc}", file=sys.stderr)
        return 2
    except (ZetacodeError, ValueError, ArithmeticError) as exc:
        print(f"zetacode {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
