"""Command-line front end.

Exit codes: 0 ok, 2 input error, 3 domain error, 4 hypothesis violation,
5 failed identity or failed verification check.
"""
import csv
import io
import json
import os
import sys
import tempfile
from functools import wraps
from pathlib import Path

import click

from .classify import classify
from .config import load_config
from .constants import derive_constants
from .errors import (
    BetaDigitsError,
    DomainError,
    HypothesisViolation,
    IdentityFailure,
    InputError,
    PrecisionExhausted,
    ReducibleDetected,
    ThresholdTieUnresolved,
)
from .exchange import exchange_sequence, reduce_to_N0
from .expansion import gamma_nu_profile
from .field import NumberField
from .linear_forms import ThresholdComparator, Y_sequence, compute_B, rho_table
from .pipeline import load_instance, run_verify
from .poly import parse_polynomial
from .roots import PRECISION_CAP, embed_loose

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_HYPOTHESIS, EXIT_IDENTITY = 0, 2, 3, 4, 5


def exit_code_for(exc):
    if isinstance(exc, InputError):
        return EXIT_INPUT
    if isinstance(exc, HypothesisViolation):
        return EXIT_HYPOTHESIS
    if isinstance(exc, IdentityFailure):
        return EXIT_IDENTITY
    if isinstance(exc, (DomainError, PrecisionExhausted, ThresholdTieUnresolved, ReducibleDetected)):
        return EXIT_DOMAIN
    return 1


def _guarded(fn):
    @wraps(fn)
    def run(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BetaDigitsError as exc:
            msg = f"error: {exc}"
            if isinstance(exc, HypothesisViolation):
                msg = f"hypothesis ({exc.hypothesis}) violated: {exc}"
                if exc.witness is not None:
                    msg += f" [witness n={exc.witness}]"
            click.echo(msg, err=True)
            sys.exit(exit_code_for(exc))

    return run


def atomic_write(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(rows, columns=None):
    rows = list(rows)
    columns = columns or (list(rows[0]) if rows else [])
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def json_text(obj):
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def emit(name, rows, fmt, out, extra=None):
    """Write rows as CSV or JSON to ``out/name.<fmt>``, or to stdout if out is None."""
    text = csv_text(rows) if fmt == "csv" else json_text(extra if extra is not None else rows)
    if out is None:
        click.echo(text, nl=False)
    else:
        atomic_write(Path(out) / f"{name}.{fmt}", text)


def _fmt(x):
    return f"{float(x):.17g}"


config_opt = click.option("--config", "config_path", type=click.Path(dir_okay=False), required=True)
nmax_opt = click.option("--n-max", type=click.IntRange(min=1), default=None)
out_opt = click.option("--out", type=click.Path(file_okay=False), default=None)
fmt_opt = click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
cap_opt = click.option("--precision-cap", type=click.IntRange(min=64), default=PRECISION_CAP)


@click.group()
def main():
    """Digit-exchange lower bounds for beta-expansions."""


@main.command("classify")
@click.argument("polynomial", required=False)
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None)
@out_opt
@cap_opt
@_guarded
def cmd_classify(polynomial, config_path, out, precision_cap):
    """Classify POLYNOMIAL (coefficients, constant term first).

    Put ``--`` before a polynomial whose first coefficient is negative.
    """
    if polynomial is None:
        if config_path is None:
            raise InputError("give a polynomial or --config")
        polynomial = load_config(config_path).polynomial
    p = parse_polynomial(polynomial)
    cls = classify(NumberField(p), precision_cap)
    emit("classification", None, "json", out, cls.to_json(p))


@main.command("expand")
@config_opt
@nmax_opt
@out_opt
@fmt_opt
@cap_opt
@_guarded
def cmd_expand(config_path, n_max, out, fmt, precision_cap):
    """Digits t_n with running counts gamma(n) and nu(n)."""
    cfg = load_config(config_path)
    n = n_max or cfg.n_max
    inst = load_instance(cfg, n + 1, precision_cap)
    d = inst.digits
    gam, nu = gamma_nu_profile(d)
    n = min(n, len(d.digits) - 1)
    rows = [{"n": k, "t_n": d.digits[k - 1], "gamma": int(gam[k]), "nu": int(nu[k])} for k in range(1, n + 1)]
    emit("digits", rows, fmt, out, {"T": d.T, "cycle": d.cycle, "rows": rows})


@main.command("transform")
@config_opt
@nmax_opt
@out_opt
@fmt_opt
@cap_opt
@_guarded
def cmd_transform(config_path, n_max, out, fmt, precision_cap):
    """Difference sequence s_n of the shifted digits and its support."""
    cfg = load_config(config_path)
    n = n_max or cfg.n_max
    inst = load_instance(cfg, n + 64, precision_cap)
    shifted, _, N0 = reduce_to_N0(inst.digits, inst.A)
    e = exchange_sequence(shifted)
    rows = [{"n": k, "s_n": int(e.s[k]), "in_gamma": int(e.s[k] != 0)} for k in range(min(n, e.horizon))]
    emit("transform", rows, fmt, out, {"N0": N0, **e.to_json()})


@main.command("linearforms")
@config_opt
@nmax_opt
@out_opt
@fmt_opt
@cap_opt
@_guarded
def cmd_linearforms(config_path, n_max, out, fmt, precision_cap):
    """Exact Y_R with certified |Y_R| and the comparison against C9."""
    cfg = load_config(config_path)
    n = n_max or cfg.y_max or min(cfg.n_max, 10_000)
    inst = load_instance(cfg, n + 64, precision_cap)
    shifted, A_t, _ = reduce_to_N0(inst.digits, inst.A)
    B = compute_B(A_t, inst.pi)
    e = exchange_sequence(shifted)
    n = min(n, e.horizon)
    Ys = Y_sequence(B, rho_table(e, B.D, n), n)
    cmp = ThresholdComparator(B, inst.root, precision_cap)
    rows = []
    for R, Y in enumerate(Ys):
        ball = embed_loose(Y, inst.root, 64)
        rows.append(
            {
                "R": R,
                "Y_R": ";".join(Y.to_strings()),
                "abs_lo": _fmt(ball.abs_lower()),
                "abs_hi": _fmt(ball.abs_upper()),
                "above_C9": int(cmp.at_least(Y)),
            }
        )
    emit("linear_forms", rows, fmt, out, {"B": [b.to_strings() for b in B.B], "rows": rows})


@main.command("constants")
@config_opt
@out_opt
@cap_opt
@_guarded
def cmd_constants(config_path, out, precision_cap):
    """Explicit constants with their formulas."""
    cfg = load_config(config_path)
    inst = load_instance(cfg, 64, precision_cap)
    shifted, A_t, N0 = reduce_to_N0(inst.digits, inst.A)
    B = compute_B(A_t, inst.pi)
    rec = derive_constants(B, inst.root, shifted.T, N0)
    emit("constants", None, "json", out, rec.to_json())


@main.command("verify")
@config_opt
@nmax_opt
@out_opt
@fmt_opt
@cap_opt
@click.option("--quiet", is_flag=True, help="No progress messages on stderr.")
@_guarded
def cmd_verify(config_path, n_max, out, fmt, precision_cap, quiet):
    """Full pipeline; writes report.json, rows.csv and plot.csv under --out."""
    cfg = load_config(config_path)
    log = None if quiet else (lambda m: click.echo(m, err=True))
    report, plot = run_verify(cfg, n_max, precision_cap, log=log)
    plot_rows = [dict(zip(plot, vals)) for vals in zip(*plot.values())]
    if out is None:
        emit("rows", report["rows"], fmt, None, report)
    else:
        # everything is built in memory first, so a failure leaves no partial files
        atomic_write(Path(out) / "report.json", json_text(report))
        atomic_write(Path(out) / "rows.csv", csv_text(report["rows"]))
        atomic_write(Path(out) / "plot.csv", csv_text(plot_rows))
    failed = [s["name"] for s in report["lemmas"] if not s["ok"]]
    if report["bound"]["failures_in_range"]:
        failed.append("lower_bound")
    if failed:
        click.echo(f"verification failed: {', '.join(failed)}", err=True)
        sys.exit(EXIT_IDENTITY)


if __name__ == "__main__":
    main()
