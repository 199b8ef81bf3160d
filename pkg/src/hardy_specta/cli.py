"""Command-line front end.

Every subcommand prints one JSON document on stdout that embeds the run
configuration.  Exit status: 0 success, 1 a verification check failed,
2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import catalog, harness, operator, verdicts
from .errors import HardySpectaError
from .mobius import MobiusMap, SymbolClass, canonical_map, to_canonical
from .report import RunConfig, dumps, envelope, rasterize, tolerances_from_env
from .series import TaylorFunction


class UsageError(Exception):
    pass


def _complex(text: str) -> complex:
    """Parse ``RE,IM`` or a bare real number."""
    try:
        if "," in text:
            re_, im = text.split(",", 1)
            return complex(float(re_), float(im))
        return complex(float(text), 0.0)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected RE,IM or a number, got {text!r}") from exc


def _load_json(path: str, what: str):
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {what} file {path}: {exc.strerror}") from exc
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise UsageError(f"{what} file {path}: invalid UTF-8 at byte offset {exc.start}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise UsageError(f"{what} file {path}: malformed JSON at byte offset {offset}: {exc.msg}") from exc


# --- argument groups -----------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=float, default=2.0, help="Hardy exponent (default 2)")
    p.add_argument("--trunc", type=int, default=128, metavar="N", help="truncation order (default 128)")
    p.add_argument("--quad", type=int, default=4096, metavar="M", help="quadrature points (default 4096)")
    p.add_argument("--out", metavar="FILE", help="also write the report here")


def _symbol_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--symbol", metavar="FILE", help='symbol JSON {"a":[re,im],"b":...,"c":...,"d":...}')
    p.add_argument("--class", dest="cls", choices=[c.value for c in SymbolClass], help="canonical class tag")
    p.add_argument("--r", type=float, help="parameter r (HA, HNA_I, HNA_II)")
    p.add_argument("--omega", type=_complex, metavar="RE,IM", help="rotation (EA)")
    p.add_argument("--a", type=_complex, metavar="RE,IM", help="translation (PA, PNA) or multiplier (LOX)")
    p.add_argument("--c", type=_complex, metavar="RE,IM", help="interior fixed point (LOX)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hardy-specta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="class, parameter and conjugator of a symbol")
    _symbol_args(p)
    _common(p)

    p = sub.add_parser("spectrum", help="cataloged spectrum and point spectrum")
    _symbol_args(p)
    _common(p)

    p = sub.add_parser("verdict", help="SVEP / property (C) / decomposability flags")
    _symbol_args(p)
    _common(p)
    p.add_argument("--adjoint", action="store_true", help="list the adjoint flags first")

    p = sub.add_parser("eigen", help="cataloged eigenpair with its residual")
    _symbol_args(p)
    _common(p)
    p.add_argument("--gen", type=_complex, default=0j, metavar="RE,IM", help="lambda (HA) or s (HNA_I)")
    p.add_argument("--matrix-out", metavar="FILE", help="write the truncated operator matrix")

    for name, helptext in (("localspec", "cataloged local spectrum of a function"),
                           ("localradius", "predicted and estimated local spectral radius")):
        p = sub.add_parser(name, help=helptext)
        _symbol_args(p)
        _common(p)
        p.add_argument("--function", metavar="FILE", help='function JSON {"p":2,"coeffs":[[re,im],...]}')
        p.add_argument("--coeffs", metavar="RE,IM;...", help="inline coefficients, ';'-separated")
        p.add_argument("--adjoint", action="store_true", help="use C_phi* instead of C_phi")
        if name == "localradius":
            p.add_argument("--window", type=int, nargs=2, metavar=("N0", "N1"), help="regression window")
            p.add_argument("--matrix-out", metavar="FILE", help="write the truncated operator matrix")

    p = sub.add_parser("verify", help="numerical corroboration suites")
    p.add_argument("--suite", default="all", choices=harness.SUITES + ("all",))
    p.add_argument("--seed", type=int, default=1)
    _common(p)

    p = sub.add_parser("raster", help="membership raster of a cataloged region")
    _symbol_args(p)
    _common(p)
    p.add_argument("--raster", type=int, nargs=2, default=(256, 256), metavar=("W", "H"))
    p.add_argument("--which", choices=("spectrum", "point", "full"), default="spectrum")
    p.add_argument("--pgm", metavar="FILE", help="write a plain PGM (P2) image")
    return parser


# --- helpers ---------------------------------------------------------------------------


def _symbol(args, tol) -> MobiusMap:
    if args.symbol:
        try:
            return MobiusMap.from_json(_load_json(args.symbol, "symbol"), tol)
        except HardySpectaError:
            raise
        except ValueError as exc:
            raise UsageError(f"symbol file {args.symbol}: {exc}") from exc
    if not args.cls:
        raise UsageError("give either --symbol FILE or --class TAG with its parameter")
    m = canonical_map(args.cls, _class_param(args))
    return MobiusMap(*m.coeffs, tol=tol)


def _class_param(args):
    cls = SymbolClass(args.cls)
    need = {SymbolClass.EA: "omega", SymbolClass.PA: "a", SymbolClass.PNA: "a"}.get(cls, "r")
    if cls is SymbolClass.LOX:
        if args.a is None:
            raise UsageError("--class LOX needs --a RE,IM (and optionally --c RE,IM)")
        return (args.a, args.c if args.c is not None else 0j)
    value = getattr(args, need)
    if value is None:
        raise UsageError(f"--class {cls.value} needs --{need}")
    return value


def _class_and_param(args, tol):
    dec = to_canonical(_symbol(args, tol))
    param = dec.param if dec.symbol_class is SymbolClass.LOX else dec.param[0]
    return dec, param


def _function(args, p: float) -> TaylorFunction:
    if args.function:
        try:
            return TaylorFunction.from_json(_load_json(args.function, "function")).with_exponent(p)
        except ValueError as exc:
            raise UsageError(f"function file {args.function}: {exc}") from exc
    if args.coeffs:
        try:
            return TaylorFunction([_complex(x.strip()) for x in args.coeffs.split(";")], p)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(str(exc)) from exc
    raise UsageError("give --function FILE or --coeffs")


def _write_matrix(path, m: MobiusMap, n: int, adjoint: bool) -> None:
    mat = operator.build_matrix(m, n)
    if adjoint:
        mat = mat.conj_transpose()
    Path(path).write_text(dumps(mat.to_json(), indent=0) + "\n")


# --- commands ---------------------------------------------------------------------------


def cmd_classify(args, cfg):
    dec = to_canonical(_symbol(args, cfg.tol))
    return dec.to_json(), 0


def cmd_spectrum(args, cfg):
    dec, param = _class_and_param(args, cfg.tol)
    sigma = catalog.spectrum(dec.symbol_class, param, cfg.p)
    point = catalog.point_spectrum(dec.symbol_class, param, cfg.p)
    out = {"class": dec.symbol_class.value, "spectrum": sigma.to_json(), "pointSpectrum": point.to_json()}
    if not isinstance(sigma, catalog.NumericOnly):
        out["fullSpectrum"] = catalog.full_spectrum(sigma).to_json()
    return out, 0


def cmd_verdict(args, cfg):
    # verdicts depend on the class only, so a bare --class is enough
    if args.cls and not args.symbol:
        cls = SymbolClass(args.cls)
    else:
        cls = to_canonical(_symbol(args, cfg.tol)).symbol_class
    rep = verdicts.verdict(cls).to_json()
    if args.adjoint:
        order = ["class"] + [k for k in verdicts.FLAG_NAMES if k.endswith("Adjoint")]
        order += [k for k in rep if k not in order]
        rep = {k: rep[k] for k in order}
    return rep, 0


def cmd_eigen(args, cfg):
    dec, param = _class_and_param(args, cfg.tol)
    pair = catalog.eigenfunction(dec.symbol_class, param, args.gen, cfg.p, cfg.trunc)
    check = harness.eigen_residual(dec.symbol_class, param, args.gen, cfg.p, cfg.trunc)
    if args.matrix_out:
        _write_matrix(args.matrix_out, canonical_map(dec.symbol_class, param), cfg.trunc, False)
    return {"class": dec.symbol_class.value, "eigenpair": pair.to_json(), "residual": check.to_json()}, 0


def cmd_localspec(args, cfg):
    dec, param = _class_and_param(args, cfg.tol)
    f = _function(args, cfg.p)
    ans = verdicts.local_spectrum(dec.symbol_class, param, cfg.p, f, args.adjoint)
    return {"class": dec.symbol_class.value, "adjoint": args.adjoint, **ans.to_json()}, 0


def cmd_localradius(args, cfg):
    m = _symbol(args, cfg.tol)
    dec = to_canonical(m)
    param = dec.param if dec.symbol_class is SymbolClass.LOX else dec.param[0]
    f = _function(args, cfg.p)
    out = {"class": dec.symbol_class.value, "adjoint": args.adjoint}
    try:
        out["predicted"] = verdicts.local_radius_predicted(dec.symbol_class, param, cfg.p, f, args.adjoint)
    except HardySpectaError as exc:
        out["predicted"] = None
        out["predictedNote"] = str(exc)
    est = operator.local_spectral_radius_estimate(m, f, args.adjoint, args.window, cfg.p, cfg.trunc, cfg.quad)
    out["estimate"] = est.to_json()
    if out["predicted"]:
        out["relativeGap"] = abs(est.estimate - out["predicted"]) / out["predicted"]
    if args.matrix_out:
        _write_matrix(args.matrix_out, m, cfg.trunc, args.adjoint)
    return out, 0


def cmd_verify(args, cfg):
    # the eigen and radius checks are calibrated at N = 256
    n = max(cfg.trunc, 256)
    checks = harness.run_suite(args.suite, args.seed, n)
    failed = [c.name for c in checks if not c.passed]
    return {"suite": args.suite, "seed": args.seed, "N": n, "passed": not failed, "failed": failed,
            "checks": [c.to_json() for c in checks]}, (1 if failed else 0)


def cmd_raster(args, cfg):
    dec, param = _class_and_param(args, cfg.tol)
    sigma = catalog.spectrum(dec.symbol_class, param, cfg.p)
    region = {"spectrum": sigma, "point": catalog.point_spectrum(dec.symbol_class, param, cfg.p)}.get(args.which)
    if args.which == "full":
        region = catalog.full_spectrum(sigma)
    w, h = args.raster
    ras = rasterize(region, w, h)
    if args.pgm:
        Path(args.pgm).write_text(ras.to_pgm())
    members = {"isolatedExact": [[z.real, z.imag, region.contains(z)] for z in ras.isolated]}
    return {"class": dec.symbol_class.value, "region": region.to_json(), **members, "raster": ras.to_json()}, 0


COMMANDS = {
    "classify": cmd_classify,
    "spectrum": cmd_spectrum,
    "verdict": cmd_verdict,
    "eigen": cmd_eigen,
    "localspec": cmd_localspec,
    "localradius": cmd_localradius,
    "verify": cmd_verify,
    "raster": cmd_raster,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            cfg = RunConfig(args.trunc, args.quad, args.p, tolerances_from_env(), args.out)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        result, status = COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (HardySpectaError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = dumps(envelope(args.command, result, cfg)) + "\n"
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
