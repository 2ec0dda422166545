"""Command-line entry point: ``heckezeta <subcommand> [options]``.

Exit codes: 0 success, 1 failed check, 2 parameter error, 3 numerical
regime error (pole, bracket, contour, ...), 4 resource limit.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import serialize as ser
from .cache import DetCache, cache_key
from .errors import HeckeError, ParameterError
from .group import (UnitaryRep, character_rep, induce_from_index2, sign_rep, trivial_rep)

log = logging.getLogger("heckezeta")

COMMON_KEYS = {"w", "rep", "M", "R", "N_direct", "out", "cache", "workers", "seed", "tol"}


# -- parameter helpers -------------------------------------------------------

def parse_rep(spec: str, w: float) -> UnitaryRep:
    """trivial | sign | character:LAM[:SSIGN] | induced-index2 | matrix:FILE.json"""
    spec = spec.strip()
    if spec == "trivial":
        return trivial_rep()
    if spec == "sign":
        return sign_rep()
    if spec == "induced-index2":
        return induce_from_index2(w)
    if spec.startswith("character:"):
        parts = spec.split(":")[1:]
        try:
            lam = float(parts[0])
            sgn = int(parts[1]) if len(parts) > 1 else 1
        except (ValueError, IndexError):
            raise ParameterError("character spec is character:LAM[:+1|-1]", rep=spec)
        return character_rep(lam, sgn)
    if spec.startswith("matrix:"):
        path = Path(spec[len("matrix:"):])
        try:
            doc = json.loads(path.read_text())
        except (OSError, ValueError) as exc:
            raise ParameterError("cannot read representation file", path=str(path), reason=str(exc))

        def mat(x):
            a = np.array(x, dtype=float)
            return a[..., 0] + 1j * a[..., 1] if a.ndim == 3 else a.astype(complex)
        return UnitaryRep(mat(doc["U_S"]), mat(doc["U_T"]), doc.get("name", path.stem))
    raise ParameterError("unknown representation", rep=spec)


def _s(text) -> complex:
    try:
        return ser.parse_complex(text)
    except ValueError as exc:
        raise ParameterError(str(exc))


def _floats(text) -> list:
    try:
        return [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise ParameterError("expected a comma-separated list of numbers", value=text)


def _tag(x: float) -> str:
    return format(float(x), "g")


def _params(args, keys) -> dict:
    out = {}
    for k in keys:
        v = getattr(args, k, None)
        if v is not None:
            out[k] = v if isinstance(v, (int, float, str)) else str(v)
    return out


def _disc(args, rep):
    from .transfer import DiscretizationParams
    kw = {"w": args.w, "rep": rep}
    if args.M is not None:
        kw["M"] = args.M
    if args.R is not None:
        kw["R"] = args.R
    if args.N_direct is not None:
        kw["N_direct"] = args.N_direct
    return DiscretizationParams(**kw)


# -- subcommands -------------------------------------------------------------

def cmd_delta(args, rep, out):
    from .resonances import compute_delta
    d = compute_delta(args.w, tol=args.tol or 1e-10)
    print(f"{d:.10f}")
    if args.out:
        ser.write_json(Path(args.out) / "delta.json", {"w": args.w, "delta": d}, "delta",
                       _params(args, ["w", "tol"]))
    return 0


def _zeta_value(args, rep, s):
    from .zeta import ZetaQuery, zeta_eval_report
    q = ZetaQuery(args.w, s, rep, M=args.M, R=args.R)
    cache = DetCache(args.cache, seed=args.seed or 0)
    p = q.params()
    res = {}

    def compute():
        r = zeta_eval_report(q)
        res["r"] = r
        return r.value
    val = cache.lookup(cache_key(args.w, rep.key(), s, p.M, p.R), compute)
    return val, res.get("r")


def cmd_zeta(args, rep, out):
    s = _s(args.s)
    val, r = _zeta_value(args, rep, s)
    print(ser.fmt_complex(val))
    if r is not None and not r.converged:
        print(f"warning: not converged in M (change {r.change:.2e})", file=sys.stderr)
    return 0


def _growth_point(job):
    from .zeta import ZetaQuery, zeta_eval_report
    w, rep, sigma, t, R = job
    return zeta_eval_report(ZetaQuery(w, complex(sigma, t), rep, R=R))


def cmd_growth_scan(args, rep, out):
    from .resonances import compute_delta
    from .specfun import dyadic_window_fit
    from .zeta import refined_envelope
    if args.t_min < 1:
        raise ParameterError("t_min must be >= 1", t_min=args.t_min)
    delta = compute_delta(args.w)
    grid = np.geomspace(args.t_min, args.t_max, args.steps)
    jobs = [(args.w, rep, args.sigma, float(t), args.R) for t in grid]
    if (args.workers or 1) > 1:
        with ProcessPoolExecutor(args.workers) as ex:
            results = list(ex.map(_growth_point, jobs))
    else:
        results = [_growth_point(j) for j in jobs]
    rows = [(float(t), args.sigma, r.value.real, r.value.imag, r.log_abs, r.M_used, r.converged)
            for t, r in zip(grid, results)]
    la = np.array([r.log_abs for r in results])
    beta, icpt, r2, wt, wm = dyadic_window_fit(grid, la, t0=args.t_min)
    keep = wm > 0
    C = resid = float("nan")
    if keep.any():
        g = refined_envelope(wt[keep], delta)
        C = float(np.dot(g, wm[keep]) / np.dot(g, g))
        resid = float(np.sqrt(np.mean((wm[keep] - C * g) ** 2)) / np.mean(wm[keep]))
    params = _params(args, ["w", "rep", "sigma", "t_min", "t_max", "steps", "R"])
    stem = f"growth_w{_tag(args.w)}_sigma{_tag(args.sigma)}"
    outdir = Path(args.out or ".")
    ser.write_csv(outdir / f"{stem}.csv",
                  ["t", "sigma", "re_Z", "im_Z", "log_abs_Z", "M_used", "converged"], rows,
                  "growth-scan", params)
    summary = {"beta_hat": beta, "intercept": icpt, "r2": r2, "delta": delta,
               "beta_bound": delta + 0.25, "refined_C": C, "refined_residual": resid,
               "window_t": list(map(float, wt)), "window_max": list(map(float, wm)),
               "all_converged": all(r.converged for r in results)}
    ser.write_json(outdir / f"{stem}.json", summary, "growth-scan", params)
    print(f"beta_hat={beta:.6f} delta={delta:.10f} refined_residual={resid:.4f}")
    return 0


def cmd_resonances(args, rep, out):
    from .resonances import find_zeros
    box = _floats(args.box)
    if len(box) != 4:
        raise ParameterError("box is sigma_min,sigma_max,t_min,t_max", box=args.box)
    zs, cells = find_zeros(args.w, rep, box, M=args.M, R=args.R)
    params = _params(args, ["w", "rep", "box", "M", "R"])
    payload = {"w": args.w, "rep_id": rep.key(), "box": box, "zeros": [z.to_dict() for z in zs]}
    outdir = Path(args.out or ".")
    ser.write_json(outdir / f"resonances_w{_tag(args.w)}.json", payload, "resonances", params)
    for z in zs:
        print(f"{ser.fmt_complex(z.s)} mult={z.multiplicity} residual={z.residual:.2e}")
    return 0


def cmd_weyl_count(args, rep, out):
    from .resonances import weyl_count
    T = _floats(args.T)
    rpt = weyl_count(args.w, rep, args.sigma, T, M=args.M, R=args.R)
    params = _params(args, ["w", "rep", "sigma", "T", "M", "R"])
    outdir = Path(args.out or ".")
    stem = f"weyl_w{_tag(args.w)}_sigma{_tag(args.sigma)}"
    ser.write_csv(outdir / f"{stem}.csv", ["T", "N", "M"],
                  zip(map(float, rpt.T), map(int, rpt.N), map(int, rpt.window_counts)),
                  "weyl-count", params)
    ser.write_json(outdir / f"{stem}.json", rpt.to_dict(), "weyl-count", params)
    print(f"eta_hat={rpt.eta:.6f} one_plus_delta={1 + rpt.delta:.6f}")
    return 0


def cmd_cover(args, rep, out):
    from .limitset import box_count, omega_area, refine_cover
    outdir = Path(args.out or ".")
    params = _params(args, ["w", "h", "area_scan"])
    if args.area_scan:
        hs = _floats(args.area_scan)
        rows = []
        for h in hs:
            c = refine_cover(args.w, h)
            rows.append((h, omega_area(c, h), box_count(c, h), len(c)))
        ser.write_csv(outdir / f"area_w{_tag(args.w)}.csv", ["h", "area", "boxes", "intervals"], rows,
                      "cover", params)
        slope = np.polyfit(np.log(hs), np.log([r[1] for r in rows]), 1)[0]
        print(f"area_slope={slope:.6f}")
        return 0
    if args.h is None:
        raise ParameterError("cover needs --h or --area-scan")
    c = refine_cover(args.w, args.h)
    path = outdir / f"cover_w{_tag(args.w)}_h{_tag(args.h)}.csv"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(ser.provenance("cover", params) + "\n" + c.to_csv())
    print(f"intervals={len(c)} area={omega_area(c, args.h):.17g}")
    return 0


def cmd_euler_check(args, rep, out):
    from .zeta import ZetaQuery, euler_product_report, zeta_eval
    s = _s(args.s)
    q = ZetaQuery(args.w, s, rep, M=args.M, R=args.R)
    e = euler_product_report(q, args.ell_max, args.k_max)
    z = zeta_eval(q)
    gap = abs(e.value - z) / abs(z)
    print(f"euler={ser.fmt_complex(e.value)} det={ser.fmt_complex(z)} rel_gap={gap:.3e} classes={e.n_classes}")
    return 0 if gap < 1e-5 else 1


def cmd_factor_check(args, rep, out):
    from .zeta import factorization_check
    r = factorization_check(args.w, _s(args.s), M=args.M, R=args.R)
    print(f"residual={r:.3e}")
    return 0 if r < 1e-8 else 1


def cmd_recursion_check(args, rep, out):
    from .transfer import recursion_check
    r = recursion_check(_s(args.s), args.k, _disc(args, rep))
    print(f"residual={r.residual:.3e} rank={r.rank} bound={r.rank_bound}")
    return 0 if (r.residual < 1e-10 and r.rank <= r.rank_bound) else 1


def cmd_specfun(args, rep, out):
    from .specfun import hurwitz_zeta, lerch, periodic_zeta
    s = _s(args.s)
    if args.fn == "hurwitz":
        v = hurwitz_zeta(s, args.a)
    elif args.fn == "periodic":
        v = periodic_zeta(args.lam, s, method=args.method)
    else:
        v = lerch(_s(args.z), s, args.lam)
    print(ser.fmt_complex(complex(v)))
    return 0


def cmd_dump_matrix(args, rep, out):
    from .transfer import build_closed, build_direct
    p = _disc(args, rep)
    s = _s(args.s)
    tm = (build_direct if args.builder == "direct" else build_closed)(s, p, basis=args.basis)
    params = _params(args, ["w", "rep", "s", "M", "R", "basis", "builder"])
    outdir = Path(args.out or ".")
    rows = [(i, j, complex(tm.A[i, j])) for i in range(tm.size) for j in range(tm.size)]
    ser.write_csv(outdir / f"matrix_w{_tag(args.w)}_M{p.M}.csv", ["row", "col", "entry"], rows,
                  "dump-matrix", params)
    print(f"size={tm.size} det={ser.fmt_complex(tm.det_one_minus())}")
    return 0


def cmd_report(args, rep, out):
    from .report import emit_report
    written = emit_report(Path(args.results))
    for p in written:
        print(p)
    return 0


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--w", type=float, help="Hecke width w > 2")
    common.add_argument("--rep", default=None,
                        help="trivial | sign | character:LAM[:+-1] | induced-index2 | matrix:FILE")
    common.add_argument("--M", type=int, default=None, help="polynomial degree cutoff")
    common.add_argument("--R", type=float, default=None, help="disk radius")
    common.add_argument("--N-direct", dest="N_direct", type=int, default=None)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--cache", default=None, help="JSONL cache (default $HECKE_CACHE)")
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--config", default=None, help="flat key = value file")
    common.add_argument("--json-errors", action="store_true")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="heckezeta", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command")

    def add(name, fn, help_, **kw):
        sp = sub.add_parser(name, parents=[common], help=help_, **kw)
        sp.set_defaults(func=fn)
        return sp

    add("delta", cmd_delta, "Hausdorff dimension of the limit set; writes delta.json with --out")
    sp = add("zeta", cmd_zeta, "Z(s, rho) = det(1 - L_s)")
    sp.add_argument("--s")
    sp = add("growth-scan", cmd_growth_scan,
             "log|Z| on a vertical line; CSV columns t,sigma,re_Z,im_Z,log_abs_Z,M_used,converged")
    sp.add_argument("--sigma", type=float)
    sp.add_argument("--t-min", dest="t_min", type=float, default=10.0)
    sp.add_argument("--t-max", dest="t_max", type=float, default=200.0)
    sp.add_argument("--steps", type=int, default=24)
    sp = add("resonances", cmd_resonances, "zeros in a box; JSON {w, rep_id, box, zeros}")
    sp.add_argument("--box", help="sigma_min,sigma_max,t_min,t_max")
    sp = add("weyl-count", cmd_weyl_count, "N(sigma,T) and window counts; CSV columns T,N,M")
    sp.add_argument("--sigma", type=float)
    sp.add_argument("--T", help="comma-separated T grid")
    sp = add("cover", cmd_cover, "limit set cover; CSV columns left,right,depth,is_tail "
                                 "(or h,area,boxes,intervals with --area-scan)")
    sp.add_argument("--h", type=float, default=None)
    sp.add_argument("--area-scan", dest="area_scan", default=None, help="comma-separated h list")
    sp = add("euler-check", cmd_euler_check, "Euler product against the determinant")
    sp.add_argument("--s")
    sp.add_argument("--ell-max", dest="ell_max", type=float)
    sp.add_argument("--k-max", dest="k_max", type=int, default=None)
    sp = add("factor-check", cmd_factor_check, "index-2 factorization residual")
    sp.add_argument("--s")
    sp = add("recursion-check", cmd_recursion_check, "finite-rank recursion residual")
    sp.add_argument("--s")
    sp.add_argument("--k", type=int, default=1)
    sp = add("specfun", cmd_specfun, "Hurwitz, periodic or Lerch zeta values")
    sp.add_argument("--fn", choices=["hurwitz", "periodic", "lerch"], default=None)
    sp.add_argument("--s")
    sp.add_argument("--a", type=float, default=1.0)
    sp.add_argument("--lam", type=float, default=0.0)
    sp.add_argument("--z", default="0")
    sp.add_argument("--method", default="auto", choices=["auto", "direct", "continuation"])
    sp = add("dump-matrix", cmd_dump_matrix, "transfer matrix entries; CSV columns row,col,entry")
    sp.add_argument("--s")
    sp.add_argument("--basis", default="bergman", choices=["bergman", "raw"])
    sp.add_argument("--builder", default="closed", choices=["closed", "direct"])
    sp = add("report", cmd_report, "SVG figures from scan outputs in --results")
    sp.add_argument("--results")
    return p


def _apply_config(args, parser_dests: set) -> None:
    if not args.config:
        return
    try:
        cfg = ser.read_config(Path(args.config))
    except (OSError, ValueError) as exc:
        raise ParameterError("cannot read config", path=args.config, reason=str(exc))
    unknown = sorted(set(cfg) - parser_dests)
    if unknown:
        raise ParameterError("unknown config keys", keys=unknown)
    for k, v in cfg.items():
        if getattr(args, k, None) is None:
            setattr(args, k, v)


REQUIRED = {
    "zeta": ("s",), "growth-scan": ("sigma",), "resonances": ("box",), "weyl-count": ("sigma", "T"),
    "euler-check": ("s", "ell_max"), "factor-check": ("s",), "recursion-check": ("s",),
    "specfun": ("fn", "s"), "dump-matrix": ("s",), "report": ("results",),
}

_TYPES = {"w": float, "M": int, "R": float, "N_direct": int, "tol": float, "workers": int,
          "seed": int, "sigma": float, "t_min": float, "t_max": float, "steps": int,
          "ell_max": float, "k_max": int, "k": int, "h": float, "a": float, "lam": float}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        sp = parser._subparsers._group_actions[0].choices[args.command]
        dests = {a.dest for a in sp._actions} - {"help", "config", "func"}
        _apply_config(args, dests)
        for k, typ in _TYPES.items():
            v = getattr(args, k, None)
            if isinstance(v, str):
                try:
                    setattr(args, k, typ(v))
                except ValueError:
                    raise ParameterError("bad config value", key=k, value=v)
        missing = [k for k in REQUIRED.get(args.command, ()) if getattr(args, k, None) is None]
        if args.command not in ("report", "specfun") and args.w is None:
            missing.insert(0, "w")
        if missing:
            raise ParameterError("missing required options", options=["--" + m.replace("_", "-") for m in missing])
        if args.w is not None and not (args.w > 2 and math.isfinite(args.w)):
            raise ParameterError("w must be a finite number > 2", w=args.w)
        if args.rep is None:
            args.rep = "trivial"
        rep = parse_rep(args.rep, args.w) if args.w is not None else trivial_rep()
        return int(args.func(args, rep, sys.stdout) or 0)
    except HeckeError as exc:
        if args.json_errors:
            print(json.dumps(exc.to_dict(), sort_keys=True), file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
