"""Command line front end and the end-to-end pipeline.

``run`` goes: index -> annulus -> bound ledger -> sampling order -> window
-> kernel and/or direct path -> trimmed factors, and returns a
:class:`FactorizationReport` whose ``to_dict`` is the JSON report.

Exit codes: 0 success, 2 invalid or unsuitable input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, field
from typing import Sequence

from . import __version__
from .bounds import BoundLedger, BoundsConfig, compute_ledger, is_self_inversive, rounding_floor
from .contour import AnnulusParams, choose_annulus, winding_number
from .errors import NumericalError, ValidationError
from .factor import FactorizationResult, factorize_window, spectral_symmetry_check, trivial_factorization
from .laurent import build_window
from .oracle import companion_roots, naive_factorize
from .poly import Polynomial, one_norm
from .precision import Precision

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 2, 3
PATH_AGREEMENT = 10.0

_HINTS = {
    "RankAmbiguous": "raise --precision or the sampling order (lower --eps-tilde)",
    "TrimViolation": "raise --precision or the sampling order (lower --eps-tilde)",
    "DegeneratePair": "use a larger --n",
    "SingularSystem": "check the index and n; raise --precision",
}


@dataclass
class RunConfig:
    coefficients: list  # [(re, im), ...] ascending, strings or numbers
    delta: str | float
    rho: float | None = None
    r: float | None = None
    R: float | None = None
    q: float = 0.5
    n: int | None = None
    delta0: str | float = "auto"
    eps_tilde: float | None = None
    path: str = "kernel"
    precision: str = "native"
    oracle_check: bool = False


@dataclass
class FactorizationReport:
    result: FactorizationResult
    ctx: Precision
    ledger: BoundLedger | None = None
    annulus: AnnulusParams | None = None
    ell: int | None = None
    warnings: list[str] = field(default_factory=list)
    path_disagreement: tuple[float, float] | None = None
    oracle_disagreement: tuple[float, float] | None = None
    symmetry: float | None = None
    trim_tolerance: float | None = None

    def to_dict(self) -> dict:
        ctx, res = self.ctx, self.result
        coeffs = lambda poly: [ctx.format_complex(c) for c in poly.coeffs]  # noqa: E731
        out = {
            "kappa": res.kappa,
            "n": res.n,
            "ell": self.ell,
            "p1": coeffs(res.p1),
            "p2": coeffs(res.p2),
            "p_minus": {"coeffs": coeffs(res.p1), "shift": res.kappa},
            "residual": _fmt_float(res.residual),
            "ledger": None,
            "path": res.path,
            "precision": ctx.name,
            "warnings": list(self.warnings),
        }
        if self.ledger is not None:
            led = {}
            for key, val in self.ledger.as_dict().items():
                led[key] = val if isinstance(val, (bool, int, str)) else _fmt_float(val)
            led["r"] = _fmt_float(self.annulus.r)
            led["R"] = _fmt_float(self.annulus.R)
            led["trim_tolerance"] = _fmt_float(self.trim_tolerance)
            led["trimmed_max"] = _fmt_float(res.trimmed_max)
            out["ledger"] = led
        if self.path_disagreement is not None:
            out["path_disagreement"] = [_fmt_float(v) for v in self.path_disagreement]
        if self.oracle_disagreement is not None:
            out["oracle_disagreement"] = [_fmt_float(v) for v in self.oracle_disagreement]
        if self.symmetry is not None:
            out["symmetry"] = _fmt_float(self.symmetry)
        return out


def _fmt_float(x: float) -> str:
    return repr(float(x))


def _polynomial(coefficients, ctx: Precision) -> Polynomial:
    if not coefficients:
        raise ValidationError("no coefficients given")
    vals = []
    for c in coefficients:
        if isinstance(c, (list, tuple)):
            if len(c) != 2:
                raise ValidationError(f"complex coefficient must be [re, im], got {c!r}")
            re, im = c
        else:
            re, im = c, "0"
        vals.append(ctx.complex_from_parts(_text(re), _text(im)))
    p = Polynomial(vals, ctx)
    if p.degree < 1:
        raise ValidationError("polynomial must have degree at least 1")
    if p.coeffs[0] == 0:
        raise ValidationError("p(0) = 0: divide out the zero root first")
    return p


def _text(v) -> str:
    return v if isinstance(v, str) else repr(v)


def run(config: RunConfig) -> FactorizationReport:
    """Factor one polynomial; raises package errors on failure."""
    if config.path not in ("kernel", "direct", "both"):
        raise ValueError(f"unknown path {config.path!r}")
    ctx = Precision.parse(config.precision)
    p = _polynomial(config.coefficients, ctx)
    nu = p.degree
    pn = p.to(Precision.native())
    notes: list[str] = []

    kappa = winding_number(pn)
    if kappa in (0, nu):
        result = trivial_factorization(p, kappa)
        return FactorizationReport(result, ctx, warnings=[f"trivial factorization: kappa = {kappa}"])

    pm = pn.monic()
    annulus = choose_annulus(pm, config.rho, kappa, config.r, config.R)
    n = nu + 1 if config.n is None else int(config.n)
    if n < nu:
        raise ValidationError(f"n = {n} must be at least nu = {nu}")

    roots = companion_roots(pm) if config.oracle_check else None
    bcfg = BoundsConfig(float(config.delta), config.q, config.delta0, config.eps_tilde)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        ledger = compute_ledger(pm, kappa, annulus, n, bcfg, roots)
    notes.extend(str(w.message) for w in caught)

    floor = rounding_floor(unit_roundoff=ctx.eps, cond_bound=ledger.cond_bound,
                           delta0=ledger.delta0, norm_p=ledger.norm_p)
    trim_tol = max(ledger.eps, floor)
    if floor > ledger.eps:
        notes.append(
            f"working precision limits the factors to about {floor:.3e}, above eps = "
            f"{ledger.eps:.3e}; structural zeros are trimmed at the larger value"
        )

    window = build_window(p.monic(), n, kappa, ledger.ell, annulus)
    paths = ("kernel", "direct") if config.path == "both" else (config.path,)
    results = {name: factorize_window(window, p, kappa, n, trim_tol, name) for name in paths}
    result = results[paths[0]]

    report = FactorizationReport(result, ctx, ledger, annulus, ledger.ell, notes,
                                 trim_tolerance=trim_tol)
    if len(paths) == 2:
        other = results["direct"]
        d1 = one_norm(result.p1 - other.p1)
        d2 = one_norm(result.p2 - other.p2)
        report.path_disagreement = (d1, d2)
        if max(d1, d2) > PATH_AGREEMENT * trim_tol:
            notes.append(f"kernel and direct paths disagree by {max(d1, d2):.3e} > 10 eps")
    if config.oracle_check:
        h1, h2 = naive_factorize(p)
        report.oracle_disagreement = (one_norm(result.p1 - h1), one_norm(result.p2 - h2))
    if is_self_inversive(p):
        report.symmetry = spectral_symmetry_check(result)
    return report


def load_input(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "coefficients" not in doc:
        raise ValidationError("input must be a JSON object with a 'coefficients' list")
    return doc


def _opt_float(v):
    return None if v is None else float(v)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="whfactor",
        description="Wiener-Hopf factorization p = p1 * p2 of a scalar polynomial "
        "through Toeplitz matrices built from Laurent coefficients of 1/p.",
    )
    ap.add_argument("--input", required=True, help="JSON file with 'coefficients' (ascending)")
    ap.add_argument("--rho", type=float, help="annulus parameter: rho <= |z| <= 1/rho")
    ap.add_argument("--inner-radius", type=float, dest="r", help="inner annulus radius r")
    ap.add_argument("--outer-radius", type=float, dest="R", help="outer annulus radius R")
    ap.add_argument("--delta", help="accuracy of the input coefficients")
    ap.add_argument("--q", type=float, default=0.5)
    ap.add_argument("--n", default="auto", help="window half-size (default nu + 1)")
    ap.add_argument("--delta0", default="auto",
                    help="auto, general, self-inversive, one or a number")
    ap.add_argument("--eps-tilde", default="auto",
                    help="accuracy demanded of window entries (default: from the ledger)")
    ap.add_argument("--path", choices=("kernel", "direct", "both"), default="kernel")
    ap.add_argument("--precision", default="native", help="native or ext:<digits>")
    ap.add_argument("--output", help="write the JSON report here instead of stdout")
    ap.add_argument("--oracle-check", action="store_true",
                    help="compare with the root-based factorizer")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return ap


def config_from_args(args: argparse.Namespace, doc: dict) -> RunConfig:
    delta = args.delta if args.delta is not None else doc.get("delta")
    if delta is None:
        raise ValidationError("the input accuracy delta is required (input file or --delta)")
    delta0 = args.delta0
    if delta0 not in ("auto", "general", "self-inversive", "one"):
        delta0 = float(delta0)
    return RunConfig(
        coefficients=doc["coefficients"],
        delta=delta,
        rho=args.rho if args.rho is not None else _opt_float(doc.get("rho")),
        r=args.r if args.r is not None else _opt_float(doc.get("r")),
        R=args.R if args.R is not None else _opt_float(doc.get("R")),
        q=args.q,
        n=None if args.n == "auto" else int(args.n),
        delta0=delta0,
        eps_tilde=None if args.eps_tilde == "auto" else float(args.eps_tilde),
        path=args.path,
        precision=args.precision,
        oracle_check=args.oracle_check,
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = load_input(args.input)
        report = run(config_from_args(args, doc))
    except ValidationError as exc:
        print(f"whfactor: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as exc:
        hint = _HINTS.get(type(exc).__name__)
        print(f"whfactor: {type(exc).__name__}: {exc}", file=sys.stderr)
        if hint:
            print(f"hint: {hint}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (OSError, ValueError) as exc:
        print(f"whfactor: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    text = json.dumps(report.to_dict(), indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
