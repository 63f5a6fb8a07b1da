"""Command line: swx <info|delta|chamber|resolve|table> <manifest-path> [options].

Exit codes: 0 success, 1 usage, 2 domain or validation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence

from . import chambers, swinv
from .errors import OnWallError, SWXError, ValidationError
from .exterior import render
from .lattice import enumerate_characteristic, van_der_blij_check
from .manifest import Manifest, load_manifest
from .report import Report, fmt_q, multivector_record
from .topology import invariants, u_c

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_vector(text: str, rational: bool = False) -> tuple:
    try:
        parts = [p.strip() for p in text.split(",")]
        if rational:
            return tuple(Fraction(p) for p in parts)
        return tuple(int(p) for p in parts)
    except (ValueError, ZeroDivisionError):
        kind = "rational" if rational else "integer"
        raise UsageError(f"cannot parse {text!r} as a comma-separated {kind} vector") from None


def parse_o1(text: str) -> int:
    if text in ("+1", "1", "+"):
        return 1
    if text in ("-1", "-"):
        return -1
    raise UsageError(f"--o1 must be +1 or -1, got {text!r}")


def sw_record(form: swinv.SWForm) -> dict:
    return {str(r): multivector_record(m) for r, m in form.values.items()}


def sw_display(form: swinv.SWForm) -> str:
    if not form:
        return "0"
    if form.b1 == 0:
        return fmt_q(form.scalar())
    return "; ".join(f"[{r}] {render(m, dual=True)}" for r, m in form.values.items())


def _vec(v) -> list[str]:
    return [fmt_q(x) for x in v]


def _model_header(m: Manifest) -> dict:
    return {"manifest": m.source, "name": m.model.name}


def _need_c(args, m: Manifest) -> tuple[int, ...]:
    if args.c is None:
        raise UsageError("--c is required")
    c = parse_vector(args.c)
    if len(c) != m.model.b2:
        raise ValidationError(f"--c has {len(c)} entries, manifest has b2 = {m.model.b2}")
    return c


def cmd_info(m: Manifest, args=None) -> Report:
    x = m.model
    inv = invariants(x)
    out = {
        "b1": x.b1,
        "b2": x.b2,
        "form": [list(r) for r in x.form.gram],
        "signature": list(x.form.signature),
        "euler": inv.euler,
        "sigma": inv.sigma,
        "even": x.form.is_even(),
        "h_ref": list(x.h_ref),
        "validation": "ok",
    }
    if m.flags.has_vanishing:
        out["psc"] = m.flags.psc_vanishing_side or "omega=" + ",".join(map(str, m.flags.psc_omega))
    if m.flags.notes:
        out["notes"] = m.flags.notes
    return Report("info", _model_header(m), out)


def cmd_delta(m: Manifest, args) -> Report:
    x = m.model
    c = _need_c(args, m)
    o1 = parse_o1(args.o1)
    delta = swinv.wall_delta(x, c, o1)
    if args.r is not None:
        delta = swinv.SWForm(delta.b1, delta.w_c, {r: v for r, v in delta.values.items() if r == args.r})
    inputs = _model_header(m) | {"c": list(c), "o1": o1, "r": args.r}
    out = {
        "w_c": delta.w_c,
        "u_c": multivector_record(u_c(x, c)),
        "window": swinv.window(x.b1, delta.w_c),
        "components": sw_record(delta),
        "delta": sw_display(delta),
    }
    return Report("delta", inputs, out)


def _chamber_record(where) -> dict:
    if isinstance(where, chambers.OnWall):
        return {"sheet": where.sheet, "side": None, "chamber": "OnWall"}
    return {"sheet": where.sheet, "side": where.side, "chamber": str(where)}


def cmd_chamber(m: Manifest, args) -> Report:
    x = m.model
    c = _need_c(args, m)
    if args.omega is None:
        raise UsageError("--omega is required")
    omega = parse_vector(args.omega, rational=True)
    b = parse_vector(args.b, rational=True) if args.b is not None else (Fraction(0),) * x.b2
    if len(omega) != x.b2 or len(b) != x.b2:
        raise ValidationError(f"--omega and --b need {x.b2} entries")
    p = chambers.PeriodPair(omega, b)
    where = chambers.classify(x, c, p)
    inputs = _model_header(m) | {"c": list(c), "omega": _vec(omega), "b": _vec(b)}
    out = _chamber_record(where) | {
        "c_good": not isinstance(where, chambers.OnWall),
        "wall_value": fmt_q(chambers.wall_value(x, c, p)),
    }
    return Report("chamber", inputs, out)


def _resolve_side(m: Manifest, c, explicit: str | None, warnings: list[str]) -> tuple[str | None, str]:
    if explicit is not None:
        if explicit not in ("+", "-"):
            raise UsageError("--vanish must be + or -")
        return explicit, "option"
    try:
        side = m.vanishing_side(c)
    except OnWallError as exc:
        # only harmless when there is nothing to cross
        if swinv.wall_delta(m.model, c):
            raise
        warnings.append(f"{exc}; wall-crossing difference is zero so both sides vanish")
        return "-", "flag (on wall, zero delta)"
    return side, "flag"


def _p2_warnings(m: Manifest, rows: dict[int, tuple[Fraction, Fraction]]) -> list[str]:
    if not swinv.is_p2_lattice(m.model):
        return []
    return swinv.p2_discrepancies(rows)


def cmd_resolve(m: Manifest, args) -> Report:
    x = m.model
    c = _need_c(args, m)
    o1 = parse_o1(args.o1)
    warnings: list[str] = []
    side, source = _resolve_side(m, c, args.vanish, warnings)
    if side is None:
        raise UsageError("--vanish is required: manifest declares no vanishing chamber")
    v = swinv.resolve(x, c, o1, side)
    inputs = _model_header(m) | {"c": list(c), "o1": o1, "vanish": side, "vanish_source": source}
    out = {
        "w_c": v.w_c,
        "plus": sw_display(v.plus),
        "minus": sw_display(v.minus),
        "plus_components": sw_record(v.plus),
        "minus_components": sw_record(v.minus),
        "provenance": {"plus": v.provenance[0], "minus": v.provenance[1]},
    }
    if x.b1 == 0 and o1 == 1:
        warnings += _p2_warnings(m, {c[0]: (v.plus.scalar(), v.minus.scalar())})
    return Report("resolve", inputs, out, warnings)


def _table_row(m: Manifest, c: tuple[int, ...], o1: int) -> tuple[dict, tuple | None, list[str]]:
    x = m.model
    delta = swinv.wall_delta(x, c, o1)
    row = {
        "c": list(c),
        "w_c": delta.w_c,
        "delta": sw_display(delta),
        "vdb": van_der_blij_check(x.form, c),
    }
    warnings: list[str] = []
    scalars = None
    if m.flags.has_vanishing:
        side, _ = _resolve_side(m, c, None, warnings)
        v = swinv.resolve(x, c, o1, side)
        row["vanish"] = side
        row["plus"] = sw_display(v.plus)
        row["minus"] = sw_display(v.minus)
        if x.b1 == 0:
            check = swinv.PscCheck(c, v.w_c, v.plus.scalar(), v.minus.scalar())
            row["psc_check"] = "ok" if check.ok else "FAIL"
            scalars = (check.plus, check.minus)
    return row, scalars, warnings


def _row_job(payload):
    m, c, o1 = payload
    return _table_row(m, c, o1)


def cmd_table(m: Manifest, args) -> Report:
    if args.box is None or args.box < 1:
        raise UsageError("--box must be a positive integer")
    o1 = parse_o1(args.o1)
    classes = enumerate_characteristic(m.model.form, args.box)
    jobs = getattr(args, "jobs", 1) or 1
    payloads = [(m, c, o1) for c in classes]
    if jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_row_job, payloads, chunksize=max(1, len(payloads) // (4 * jobs))))
    else:
        results = [_row_job(p) for p in payloads]
    rows, warnings, scalars = [], [], {}
    for c, (row, sc, w) in zip(classes, results):
        rows.append(row)
        warnings.extend(w)
        if sc is not None and len(c) == 1:
            scalars[c[0]] = sc
    if o1 == 1:
        warnings.extend(_p2_warnings(m, scalars))
    inputs = _model_header(m) | {"box": args.box, "o1": o1}
    return Report("table", inputs, {"rows": rows, "count": len(rows)}, warnings)


COMMANDS = {
    "info": cmd_info,
    "delta": cmd_delta,
    "chamber": cmd_chamber,
    "resolve": cmd_resolve,
    "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="swx", description="Chamber-resolved Seiberg-Witten invariants for b+ = 1.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("manifest", help="manifest JSON path, or catalog:NAME")
    p.add_argument("--c", help="characteristic class, e.g. 3 or 2,4 (use --c=-1,1 for a leading minus)")
    p.add_argument("--omega", help="period ray, entries may be p/q")
    p.add_argument("--b", help="twist class, entries may be p/q (default 0)")
    p.add_argument("--o1", default="+1", help="orientation of H^1: +1 or -1")
    p.add_argument("--r", type=int, help="restrict delta to one degree")
    p.add_argument("--vanish", help="side (+ or -) on which the invariant vanishes")
    p.add_argument("--box", type=int, help="coordinate bound for table")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for table")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    return p


def run(argv: Sequence[str] | None = None) -> tuple[int, str, str]:
    """Execute a command; returns (exit code, stdout text, stderr text)."""
    try:
        args = build_parser().parse_args(argv)
        manifest = load_manifest(args.manifest)
        report = COMMANDS[args.command](manifest, args)
    except UsageError as exc:
        return EXIT_USAGE, "", f"usage error: {exc}\n"
    except SWXError as exc:
        return EXIT_DOMAIN, "", f"error: {type(exc).__name__}: {exc}\n"
    except OSError as exc:
        return EXIT_IO, "", f"I/O error: {exc}\n"
    text = report.to_machine() if args.format == "machine" else report.to_text()
    return EXIT_OK, text, ""


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
