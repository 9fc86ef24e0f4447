"""Command-line front end: ``linepack {bounds,lp,certify,figure,fetch}``.

Exit codes: 0 success, 1 certificate failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import math
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from linepack import bounds, certify, frames, ingest, lp
from linepack.errors import LinepackError, NotTight

log = logging.getLogger("linepack")

CSV_HEADER = ("n", "packing_coherence", "welch", "bukh_cox", "orthoplex", "levenshtein", "best_bound", "achiever")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(value: float | None, digits: int = 9) -> str:
    """Fixed 9-significant-digit rendering; empty for not-applicable."""
    if value is None:
        return ""
    return f"{value:.{digits}g}"


def _jsonable(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item"):
        return obj.item()
    return obj


def _dump(obj, out) -> None:
    json.dump(_jsonable(obj), out, indent=2, sort_keys=True)
    out.write("\n")


# -- figure data -----------------------------------------------------------


@dataclass(frozen=True)
class FigureRow:
    n: int
    packing_coherence: float | None
    welch: float | None
    bukh_cox: float | None
    orthoplex: float | None
    levenshtein: float | None
    best_bound: float
    achiever: str

    def cells(self) -> list[str]:
        return [
            str(self.n),
            fmt(self.packing_coherence),
            fmt(self.welch),
            fmt(self.bukh_cox),
            fmt(self.orthoplex),
            fmt(self.levenshtein),
            fmt(self.best_bound),
            self.achiever,
        ]


def figure_rows(
    d: int,
    n_min: int,
    n_max: int,
    field: str = "real",
    packings_dir=None,
    orthoplex_strict: bool = True,
) -> list[FigureRow]:
    """One row per n in [n_min, n_max] with n > d; packing data read when present."""
    rows = []
    for n in range(n_min, n_max + 1):
        if n <= d:
            log.warning("skipping n=%d: bounds need n > d=%d", n, d)
            continue
        rep = bounds.bound_report(d, n, field, orthoplex_strict=orthoplex_strict)
        mu = None
        if packings_dir is not None:
            path = ingest.find_packing(packings_dir, d, n, field)
            if path is not None:
                mu = ingest.packing_coherence(ingest.load_packing(path, d, n, field))
        rows.append(
            FigureRow(n, mu, rep.welch, rep.bukh_cox, rep.orthoplex, rep.levenshtein, rep.best, rep.achiever)
        )
    return rows


def render_csv(rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(CSV_HEADER) + "\n")
    for row in rows:
        buf.write(",".join(row.cells()) + "\n")
    return buf.getvalue()


# -- subcommands -----------------------------------------------------------


def cmd_bounds(args, out) -> int:
    rep = bounds.bound_report(args.d, args.n, args.field, orthoplex_strict=not args.orthoplex_nonstrict)
    if args.json:
        _dump(rep.to_dict(), out)
        return 0
    out.write(f"d={rep.d} n={rep.n} field={rep.field}\n")
    for name in ("welch", "bukh_cox", "orthoplex", "levenshtein"):
        value = getattr(rep, name)
        out.write(f"{name:<12} {'n/a' if value is None else f'{value:.6f}'}\n")
    out.write(f"{'best':<12} {rep.best:.6f}\n")
    out.write(f"{'achiever':<12} {rep.achiever}\n")
    return 0


def cmd_lp(args, out) -> int:
    sol = lp.tangency_solve(args.k, args.field, args.grid)
    report = {"tangency": sol.to_dict()}
    if args.minimize:
        opt = lp.minimize_c0(args.k, args.field, args.grid)
        report["minimized"] = opt.to_dict()
        report["gap"] = sol.c0 - opt.c0
    if args.json:
        _dump(report, out)
        return 0
    out.write(f"k={sol.k} field={sol.field}\n")
    out.write(f"c0 {sol.c0:.7f}\nc1 {sol.c1:.7f}\nc2 {sol.c2:.7f}\n")
    out.write(f"x*  {sol.x_star:.7f}\n")
    out.write(f"min slack {sol.feasibility.min_slack:.3e} on {sol.feasibility.grid_size} points\n")
    if args.minimize:
        out.write(f"LP-optimal c0 {opt.c0:.7f}\n")
        out.write(f"gap (tangency - LP) {report['gap']:.3e}\n")
    return 0


def cmd_certify(args, out) -> int:
    rec = ingest.load_packing(args.input, args.d, args.n, args.field)
    x = rec.configuration
    report = {"input": str(args.input), "d": rec.d, "n": rec.n, "field": rec.field, "checksum": rec.checksum}
    if args.mode == "lemma":
        cert = certify.lemma_certificate(x)
        report |= {"certificate": "lemma", **cert.to_dict()}
        ok = cert.valid
    else:
        try:
            if args.mode == "theorem3":
                diag = certify.diagnose_theorem3_equality(x, args.tol)
                report |= {"certificate": "theorem3", **diag.to_dict()}
                ok = diag.all_hold
            else:
                res = certify.welch_equality_check(x, args.tol)
                report |= {"certificate": "welch-equality", **res.to_dict()}
                ok = res.equal
        except NotTight as exc:
            report |= {"certificate": args.mode, "error": str(exc), "residual": exc.residual}
            ok = False
    report["passed"] = bool(ok)
    _dump(report, out)
    return 0 if ok else 1


def cmd_figure(args, out) -> int:
    packings = None if args.no_packings else (args.packings or ingest.bundled_packings_dir())
    rows = figure_rows(args.d, args.n_min, args.n_max, args.field, packings, not args.orthoplex_nonstrict)
    text = render_csv(rows)
    if args.out:
        try:
            with open(args.out, "w", newline="\n", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc.strerror}") from None
    if args.json:
        _dump([asdict(r) for r in rows], out)
    elif not args.out:
        out.write(text)
    return 0


def cmd_fetch(args, out) -> int:
    cache = Path(args.cache_dir or _default_cache())
    ns = range(args.n_min, args.n_max + 1) if args.n_min is not None else [args.n]
    fetched = []
    for n in ns:
        url = ingest.resolve_url(args.url.format(d=args.d, n=n), args.base_url)
        rec = ingest.fetch_packing(url, cache, args.d, n, args.field)
        item = {"url": url, "d": rec.d, "n": rec.n, "checksum": rec.checksum,
                "coherence": ingest.packing_coherence(rec)}
        if args.out_dir:
            dest = Path(args.out_dir)
            dest.mkdir(parents=True, exist_ok=True)
            path = dest / ingest.packing_filename(rec.d, rec.n, rec.field)
            path.write_bytes(ingest.serialize_packing(rec))
            item["path"] = str(path)
        fetched.append(item)
    if args.json:
        _dump(fetched, out)
    else:
        for item in fetched:
            out.write(f"n={item['n']} coherence={fmt(item['coherence'])} {item['url']}\n")
    return 0


def _default_cache() -> str:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return os.path.join(base, "linepack")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="linepack", description="Coherence bounds and certificates for line packings.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, field_default="real"):
        sp.add_argument("--field", choices=frames.FIELDS, default=field_default)
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    b = sub.add_parser("bounds", help="all coherence lower bounds for (d, n)")
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--orthoplex-nonstrict", action="store_true")
    common(b)
    b.set_defaults(func=cmd_bounds)

    q = sub.add_parser("lp", help="tangency triple and LP optimum for dimension k")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--minimize", action="store_true")
    q.add_argument("--grid", type=int, default=lp.DEFAULT_GRID)
    common(q, "complex")
    q.set_defaults(func=cmd_lp)

    c = sub.add_parser("certify", help="run a certificate on a packing file")
    c.add_argument("input")
    mode = c.add_mutually_exclusive_group(required=True)
    mode.add_argument("--lemma", dest="mode", action="store_const", const="lemma")
    mode.add_argument("--theorem3", dest="mode", action="store_const", const="theorem3")
    mode.add_argument("--welch-equality", dest="mode", action="store_const", const="welch-equality")
    c.add_argument("--d", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--tol", type=float, default=1e-8)
    common(c)
    c.set_defaults(func=cmd_certify)

    f = sub.add_parser("figure", help="CSV of bounds and packing coherence over a range of n")
    f.add_argument("--d", type=int, required=True)
    f.add_argument("--n-min", type=int, required=True)
    f.add_argument("--n-max", type=int, required=True)
    f.add_argument("--packings", help="directory of <field>-d<d>-n<n>.txt files (default: bundled)")
    f.add_argument("--no-packings", action="store_true")
    f.add_argument("--out", help="CSV path (default: stdout)")
    f.add_argument("--orthoplex-nonstrict", action="store_true", help="apply orthoplex bound at n >= threshold")
    common(f)
    f.set_defaults(func=cmd_figure)

    g = sub.add_parser("fetch", help="download packing files into the cache")
    g.add_argument("url", help="url or name; may contain {d} and {n} placeholders")
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--n-min", type=int)
    g.add_argument("--n-max", type=int)
    g.add_argument("--base-url", help=f"base for relative names (default: ${ingest.ENV_DB_URL})")
    g.add_argument("--cache-dir")
    g.add_argument("--out-dir", help="also write each packing as <field>-d<d>-n<n>.txt here")
    common(g)
    g.set_defaults(func=cmd_fetch)
    return p


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    logging.basicConfig(level=logging.WARNING, format="linepack: %(message)s", stream=sys.stderr)
    try:
        args = build_parser().parse_args(argv)
        if args.command == "fetch" and (args.n is None) == (args.n_min is None or args.n_max is None):
            raise UsageError("fetch needs either --n or both --n-min and --n-max")
        return args.func(args, out)
    except (UsageError, LinepackError, ValueError, OSError) as exc:
        msg = " ".join(str(exc).split())
        sys.stderr.write(f"linepack: error: {msg}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
