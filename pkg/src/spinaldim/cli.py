"""Command-line front end.

Usage:
    spinaldim info --preset grigorchuk
    spinaldim sizes --preset grigorchuk --max-level 8 --verify --format csv
    spinaldim dim --preset "sunic 4"
    spinaldim verify --seq omega.json --max-level 7
    spinaldim cantor --code "12(1)" --s 4
    spinaldim fulldim --n 3 --max-level 8

Exit codes: 0 success, 2 verification mismatch, 64 usage error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import cantor as cantor_mod
from .dimension import dimension_exact, dimension_window, fraction_decimal
from .errors import SpinalError
from .fulldim import check_delta_lemma, h_exponent_table
from .gf2 import Functional
from .oracle import DEFAULT_DEGREE_CAP, vertex_number
from .sequence import PERIODIC, DefiningSequence, preset
from .sizes import size_exponent, t_index_first, t_index_general
from .spinal import grigorchuk_generators
from .verify import oracle_exponents, oracle_t_indices, spinal_tree_group

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_USAGE = 64

SIZE_COLUMNS = ("m", "exponent", "exponent_over_2m_num", "exponent_over_2m_den",
                "branch", "oracle_exponent", "match")
FORMATS = click.Choice(["text", "json", "csv"])


def load_sequence(seq: str | None, preset_name: str | None) -> DefiningSequence:
    """--seq is a JSON file or an inline JSON object; --preset a preset name."""
    if (seq is None) == (preset_name is None):
        raise click.UsageError("give exactly one of --seq or --preset")
    if preset_name is not None:
        try:
            return preset(preset_name)
        except (KeyError, TypeError) as exc:
            raise click.UsageError(str(exc)) from exc
    text = seq if seq.lstrip().startswith("{") else _read(seq)
    try:
        return DefiningSequence.from_json(json.loads(text))
    except (ValueError, KeyError, SpinalError) as exc:
        raise click.UsageError(f"bad sequence JSON: {exc}") from exc


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise click.UsageError(f"cannot read {path}: {exc}") from exc


def _check_level(m: int) -> None:
    if m < 1:
        raise click.UsageError("--max-level must be positive")
    if vertex_number(m + 1, 0) > DEFAULT_DEGREE_CAP:
        raise click.UsageError(f"--max-level {m} exceeds the oracle degree cap")


def emit(fmt: str, payload: dict, rows: list[dict] | None = None, columns=None) -> None:
    """Write a report; CSV carries only the rows, JSON everything."""
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(columns or (rows[0] if rows else [])),
                                lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows or [])
        click.echo(buf.getvalue(), nl=False)
    else:
        for key, value in payload.items():
            if key == "rows":
                continue
            click.echo(f"{key}: {value}")
        if rows:
            cols = list(columns or rows[0])
            click.echo("  ".join(cols))
            for r in rows:
                click.echo("  ".join(str(r.get(c, "")) for c in cols))


def sequence_options(fn):
    fn = click.option("--preset", "preset_name", metavar="NAME",
                      help='Preset: grigorchuk, "sunic N", constant.')(fn)
    fn = click.option("--seq", metavar="FILE|JSON", help="Sequence as a JSON file or inline JSON.")(fn)
    return fn


def format_options(fn):
    fn = click.option("--precision", default=12, show_default=True, type=click.IntRange(0, 200))(fn)
    fn = click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)(fn)
    return fn


@click.group()
def cli():
    """Spinal groups on the binary tree: level sizes, Hausdorff dimension and constructions."""


@cli.command()
@sequence_options
@format_options
def info(seq, preset_name, fmt, precision):
    """Describe a defining sequence."""
    omega = load_sequence(seq, preset_name)
    form = omega.syllable_form()
    payload = {
        "sequence": omega.to_json(),
        "mode": omega.mode,
        "syllables": [[str(x), a] for x, a in zip(form.letters, form.multiplicities)],
        "tail": form.tail,
        "cycle_start": form.cycle_start,
        "diminf": omega.diminf() if omega.mode == PERIODIC else None,
        "diminf_estimate": omega.diminf_estimate(),
    }
    emit(fmt, payload)
    return EXIT_OK


@cli.command()
@sequence_options
@click.option("--max-level", "max_level", default=8, show_default=True, type=int)
@click.option("--verify", is_flag=True, help="Compare with the permutation-group oracle.")
@format_options
def sizes(seq, preset_name, max_level, verify, fmt, precision):
    """log2 |G mod m| for m = 1..max-level."""
    omega = load_sequence(seq, preset_name)
    _check_level(max_level)
    oracle = oracle_exponents(omega, max_level) if verify else None
    rows, ok = [], True
    for m in range(1, max_level + 1):
        br = size_exponent(omega, m)
        ratio = Fraction(br.exponent, 1 << m)
        row = {"m": m, "exponent": br.exponent, "exponent_over_2m_num": ratio.numerator,
               "exponent_over_2m_den": ratio.denominator, "branch": br.branch,
               "oracle_exponent": "", "match": ""}
        if oracle is not None:
            row["oracle_exponent"] = oracle[m - 1]
            row["match"] = oracle[m - 1] == br.exponent
            ok &= row["match"]
        rows.append(row)
    emit(fmt, {"sequence": omega.to_json(), "verified": bool(verify), "all_match": ok if verify else None,
               "rows": rows}, rows, SIZE_COLUMNS)
    return EXIT_OK if ok else EXIT_MISMATCH


def _complete_syllables(omega: DefiningSequence) -> int:
    return omega.head_length - 1


@cli.command()
@sequence_options
@click.option("--k-lo", type=int, default=None, help="Window start (finite prefixes).")
@click.option("--k-hi", type=int, default=None, help="Window end (finite prefixes).")
@format_options
def dim(seq, preset_name, k_lo, k_hi, fmt, precision):
    """Hausdorff dimension: exact when periodic, a labelled window otherwise."""
    omega = load_sequence(seq, preset_name)
    if omega.mode == PERIODIC:
        res = dimension_exact(omega)
    else:
        hi = _complete_syllables(omega) if k_hi is None else k_hi
        lo = 2 if k_lo is None else k_lo
        if hi < max(lo, 2):
            raise click.UsageError("the prefix is too short for a dimension window")
        res = dimension_window(omega, lo, hi)
    payload = res.to_json(precision)
    if fmt == "csv":
        rows = [{"value": str(res.value), "decimal": res.decimal(precision), "mode": res.mode,
                 "interval_lo": str(res.interval[0]) if res.interval else "",
                 "interval_hi": str(res.interval[1]) if res.interval else ""}]
        emit(fmt, payload, rows)
    else:
        emit(fmt, payload)
    return EXIT_OK


@cli.command()
@sequence_options
@click.option("--max-level", "max_level", default=7, show_default=True, type=int)
@format_options
def verify(seq, preset_name, max_level, fmt, precision):
    """Check the size formula and both index lemmas against the oracle."""
    omega = load_sequence(seq, preset_name)
    _check_level(max_level)
    G = spinal_tree_group(omega, max_level)
    rows = []
    orc = G.level_exponents()
    for m in range(1, max_level + 1):
        f = size_exponent(omega, m).exponent
        rows.append({"check": "size", "psi": "", "m": m, "formula": f, "oracle": orc[m - 1],
                     "match": f == orc[m - 1]})
    if omega.length >= max_level:
        w1 = omega.letter(1)
        for x in range(1, 1 << omega.n):
            psi = Functional(x, omega.n)
            got = oracle_t_indices(omega, psi, max_level, group=G)
            for m in range(1, max_level + 1):
                f = t_index_first(omega, m) if psi == w1 else t_index_general(omega, psi, m)
                rows.append({"check": "t_index", "psi": str(psi), "m": m, "formula": f,
                             "oracle": got[m - 1], "match": f == got[m - 1]})
    ok = all(r["match"] for r in rows)
    emit(fmt, {"sequence": omega.to_json(), "all_match": ok,
               "mismatches": sum(not r["match"] for r in rows), "rows": rows}, rows,
         ("check", "psi", "m", "formula", "oracle", "match"))
    return EXIT_OK if ok else EXIT_MISMATCH


def _show(x, precision: int):
    if isinstance(x, tuple):
        return [_show(v, precision) for v in x]
    return {"exact": str(x), "decimal": fraction_decimal(x, precision)}


@cli.command()
@click.option("--code", required=True, help='Code over {1,2}, e.g. "12(1)" or "(2)".')
@click.option("--s", "s", type=int, default=3, show_default=True, help="Separator, s > 2.")
@click.option("--digits", type=int, default=40, show_default=True,
              help="Code digits used for the finite construction check.")
@click.option("--surrogate-length", type=int, default=None,
              help="Digits repeated by the periodic surrogate.")
@format_options
def cantor(code, s, digits, surrogate_length, fmt, precision):
    """Dimension of the sequence built from a Cantor code."""
    if s <= 2:
        raise click.UsageError(f"the construction needs s > 2 (got s = {s})")
    try:
        c = cantor_mod.CantorCode.parse(code)
    except SpinalError as exc:
        raise click.UsageError(str(exc)) from exc
    shown = c.digits(min(len(c.prefix), 4)) if not c.is_periodic else c.digits(4)
    payload = {
        "code": str(c),
        "s": s,
        "x_hat": _show(cantor_mod.code_to_point(c), precision),
        "multiplicities_prefix": cantor_mod.construction_multiplicities(shown, s),
        "predicted_dimension": _show(cantor_mod.predicted_dimension(c, s), precision),
    }
    ok = True
    if c.is_periodic:
        predicted = cantor_mod.predicted_dimension(c, s)
        sur = cantor_mod.periodic_surrogate(c, s, surrogate_length)
        exact = dimension_exact(sur.omega).value
        est = cantor_mod.construction_estimate(c, s, digits=digits)
        gap = abs(est.value - predicted)
        checks = {
            "surrogate_block": list(sur.block),
            "surrogate_dimension": _show(exact, precision),
            "surrogate_matches_own_chain": exact == sur.chain_value,
            "surrogate_gap_to_prediction": fraction_decimal(abs(exact - predicted), precision),
            "construction_digits": digits,
            "construction_window": fraction_decimal(est.value, precision),
            "construction_within_1e-6": gap <= Fraction(1, 10 ** 6),
        }
        ok = checks["surrogate_matches_own_chain"] and checks["construction_within_1e-6"]
        payload["verification"] = checks
    else:
        payload["verification"] = "finite code: certified interval only"
    payload["status"] = "ok" if ok else "mismatch"
    if fmt == "csv":
        pred = payload["predicted_dimension"]
        lo, hi = (pred, pred) if isinstance(pred, dict) else pred
        emit(fmt, payload, [{"code": str(c), "s": s, "predicted_lo": lo["exact"],
                             "predicted_hi": hi["exact"], "status": payload["status"]}])
    else:
        emit(fmt, payload)
    return EXIT_OK if ok else EXIT_MISMATCH


@cli.command()
@click.option("--n", "n", type=int, default=3, show_default=True)
@click.option("--max-level", "max_level", type=int, default=8, show_default=True)
@click.option("--depth", type=int, default=None, help="Truncation depth of b~_n (default: max-level).")
@click.option("--delta-check", is_flag=True, help="Also run the delta-lemma membership check.")
@format_options
def fulldim(n, max_level, depth, delta_check, fmt, precision):
    """log2 |H_n mod m| and its ratio to 2^m."""
    if n < 3:
        raise click.UsageError("H_n needs n >= 3")
    depth = max_level if depth is None else depth
    if max_level > depth:
        raise click.UsageError(f"level {max_level} is beyond the reliable depth {depth}")
    if max_level < n + 1:
        raise click.UsageError(f"--max-level must be at least n + 1 = {n + 1}")
    _check_level(max_level)
    rows = [{"m": m, "exponent": e, "exponent_over_2m_num": r.numerator,
             "exponent_over_2m_den": r.denominator}
            for m, e, r in h_exponent_table(n, max_level)]
    payload = {"n": n, "rows": rows}
    ok = True
    if delta_check:
        g = grigorchuk_generators(6)
        summary = {}
        for k in (2, 3):
            rep = check_delta_lemma([g["a"], g["b"], g["c"]][:k], 6)
            summary[str(k)] = {"memberships": len(rep.outcomes), "failures": len(rep.failures()),
                               "identities": rep.identity_conjugation and rep.identity_commutator}
            ok &= rep.ok
        payload["delta_lemma"] = summary
    emit(fmt, payload, rows, ("m", "exponent", "exponent_over_2m_num", "exponent_over_2m_den"))
    return EXIT_OK if ok else EXIT_MISMATCH


def main(argv: list[str] | None = None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="spinaldim", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        return 1
    except SpinalError as exc:
        click.echo(f"Error: {exc}", err=True)
        return EXIT_USAGE
    return rv if isinstance(rv, int) else EXIT_OK


def run() -> None:
    sys.exit(main())
