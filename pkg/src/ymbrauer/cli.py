"""Command-line front end: ``ymbrauer <subcommand> [options]``.

Every subcommand prints one JSON document
``{"subcommand", "params", "results", "certificates", "version"}`` (or CSV of
the result rows). Exit status 3 signals that an enumeration cap fired and
status 4 that a sum could not be certified; click reports usage errors with
status 2.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from fractions import Fraction

import click
import mpmath

from . import __version__
from .algebra_core import ExactScalar, Partition, enumerate_partitions, z_lambda
from .walled_brauer import (
    SizeLimitError,
    dim_from_omega,
    omega_expansion,
    omega_mixed,
    traceless_projector,
    weingarten_mixed,
)
from .weights import _dim_int, from_pair
from .witten_zeta import DivergenceError, ZetaQuery, zeta

EXIT_CAP = 3
EXIT_UNCERTIFIED = 4

PRECISION_ENV = "YMBRAUER_PREC"
THREADS_ENV = "YMBRAUER_THREADS"


# ---------------------------------------------------------------------------
# serialisation
# ---------------------------------------------------------------------------


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def encode(x):
    """Lossless JSON form: constants as fraction strings, ratfuns as coefficient lists."""
    if isinstance(x, ExactScalar):
        num, den = x.numerator_coeffs(), x.denominator_coeffs()
        if len(num) <= 1 and len(den) == 1:
            return _frac(x.as_fraction())
        return {"num": [_frac(c) for c in num], "den": [_frac(c) for c in den]}
    if isinstance(x, Fraction):
        return _frac(x)
    if isinstance(x, mpmath.mpf):
        return mpmath.nstr(x, 17)
    if isinstance(x, Partition):
        return list(x.parts)
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    return x


def emit(ctx: click.Context, subcommand: str, params: dict, results: list, certificates: dict):
    fmt = ctx.obj["format"]
    doc = {
        "subcommand": subcommand,
        "params": encode(params),
        "results": encode(results),
        "certificates": encode(certificates),
        "version": __version__,
    }
    if fmt == "json":
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        buf = io.StringIO()
        rows = doc["results"]
        keys = sorted({k for r in rows for k in r})
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: json.dumps(r.get(k), sort_keys=True) if isinstance(r.get(k), (dict, list)) else r.get(k) for k in keys})
        text = buf.getvalue()
    out = ctx.obj["out"]
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _partition(text: str) -> Partition:
    text = text.strip()
    if text in {"", "0", "-"}:
        return Partition(())
    return Partition(tuple(int(x) for x in text.replace(",", " ").split()))


def _rational(text: str) -> Fraction:
    return Fraction(text)


class Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _guard(fn):
    """Translate library exceptions into the documented exit codes."""

    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SizeLimitError as exc:
            raise Failure(EXIT_CAP, f"size cap '{exc.cap}' fired: {exc}") from exc
        except DivergenceError as exc:
            raise Failure(EXIT_UNCERTIFIED, f"not certifiable: {exc}") from exc

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


@click.group()
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write to FILE instead of stdout.")
@click.option("--precision", type=int, default=None, help="mpmath working precision in bits.")
@click.version_option(__version__)
@click.pass_context
def main(ctx, fmt, out, precision):
    """Representation theory and Yang-Mills computations on surfaces."""
    bits = precision or int(os.environ.get(PRECISION_ENV, "128"))
    if bits < 53:
        raise click.BadParameter("precision must be at least 53 bits", param_hint="--precision")
    mpmath.mp.prec = bits
    ctx.obj = {"format": fmt, "out": out, "precision": bits, "threads": int(os.environ.get(THREADS_ENV, "1"))}


@main.command()
@click.option("--N", "N", type=click.IntRange(1), required=True)
@click.option("--lambda", "lam", default="", help="Partition, e.g. '2 1'.")
@click.option("--mu", default="", help="Partition, e.g. '1'.")
@click.pass_context
@_guard
def dim(ctx, N, lam, mu):
    """Dimension of [lambda, mu]_N by the Weyl formula and the Omega route."""
    la, mu_ = _partition(lam), _partition(mu)
    if la.length + mu_.length > N:
        raise click.BadParameter("l(lambda) + l(mu) exceeds N")
    weyl = _dim_int(from_pair(la, mu_, N).entries)
    row = {"lambda": la, "mu": mu_, "N": N, "weyl": Fraction(weyl)}
    if la.size + mu_.size <= 4:
        row["omega_route"] = dim_from_omega(la, mu_, N)
        row["agree"] = row["omega_route"].as_fraction() == weyl
    emit(ctx, "dim", {"N": N, "lambda": la, "mu": mu_}, [row], {"weyl": "exact", "omega_route": "exact"})


@main.command("zeta")
@click.option("--group", type=click.Choice(["U", "SU"]), default="SU", show_default=True)
@click.option("--N", "N", type=click.IntRange(1), required=True)
@click.option("--s", "s", default="2", help="Exponent, rational.")
@click.option("--q", "q", type=float, default=None, help="Casimir damping in (0,1].")
@click.option("--cutoff", type=click.IntRange(0), default=20, show_default=True)
@click.pass_context
@_guard
def zeta_cmd(ctx, group, N, s, q, cutoff):
    """Truncated Witten zeta value with its certified tail."""
    res = zeta(ZetaQuery(group, _rational(s), N, cutoff, q=q))
    row = {"partial_sum": res.partial_sum, "tail_bound": res.tail_bound, "terms": res.terms_used}
    cert = {"tail_bound": res.tail_bound, **res.details}
    emit(ctx, "zeta", {"group": group, "N": N, "s": s, "q": q, "cutoff": cutoff}, [row], cert)


@main.command()
@click.option("--n", "n", type=click.IntRange(0), required=True)
@click.option("--m", "m", type=click.IntRange(0), required=True)
@click.pass_context
@_guard
def projector(ctx, n, m):
    """Coefficients of the traceless projector q_{n,m} on walled Brauer diagrams."""
    q = traceless_projector(n, m)
    # identity first, then by number of horizontal pairs
    rows = [{"diagram": d.label(), "h": d.h, "coefficient": c} for d, c in sorted(q.terms.items(), key=lambda t: (t[0].h, t[0]))]
    emit(ctx, "projector", {"n": n, "m": m}, rows, {"coefficients": "exact"})


@main.command()
@click.option("--n", "n", type=click.IntRange(0), required=True)
@click.option("--m", "m", type=click.IntRange(0), required=True)
@click.option("--terms", type=click.IntRange(1), default=4, show_default=True, help="Terms of the 1/N expansion.")
@click.pass_context
@_guard
def omega(ctx, n, m, terms):
    """Omega_{n,m} and its inverse Wg_{n,m}, with expansions in 1/N."""
    om, wg = omega_mixed(n, m), weingarten_mixed(n, m)
    rows = []
    for d in sorted(set(om.terms) | set(wg.terms)):
        w = wg.terms.get(d, ExactScalar(0))
        row = {
            "diagram": d.label(),
            "omega": om.terms.get(d, ExactScalar(0)),
            "weingarten": w,
            "weingarten_expansion": {str(k): v for k, v in w.laurent_at_infinity(terms).items()} if w else {},
        }
        if n + m <= 4 and d.is_permutation():
            row["omega_genus_coefficients"] = omega_expansion(d.to_permutation(), n, m, 2)
        rows.append(row)
    emit(ctx, "omega", {"n": n, "m": m, "terms": terms}, rows, {"coefficients": "exact"})


@main.command("gross-taylor")
@click.option("--N", "N", type=click.IntRange(1), default=5, show_default=True)
@click.option("--degree", type=click.IntRange(0, 6), default=3, show_default=True)
@click.pass_context
@_guard
def gross_taylor(ctx, N, degree):
    """Wick expansions of p_[lam,mu] and their orthogonality table."""
    from .newton_wick import wick_inner_product, wick_newton

    labels = []
    for total in range(degree + 1):
        for a in range(total + 1):
            for la in enumerate_partitions(a):
                for mu in enumerate_partitions(total - a):
                    labels.append((la, mu))
    rows = []
    for la, mu in labels:
        expansion = [{"lambda": t.lam, "mu": t.mu, "coefficient": t.coefficient} for t in wick_newton(la, mu)]
        inner = {}
        for la2, mu2 in labels:
            if la2.size - mu2.size != la.size - mu.size:
                continue
            v = wick_inner_product(la, mu, la2, mu2, N)
            if v:
                inner[f"{list(la2.parts)}|{list(mu2.parts)}"] = v
        expected = z_lambda(la) * z_lambda(mu)
        key = f"{list(la.parts)}|{list(mu.parts)}"
        ok = set(inner) == {key} and inner[key].as_fraction() == expected
        rows.append({"lambda": la, "mu": mu, "wick_expansion": expansion, "inner_products": inner, "orthogonal": ok})
    emit(ctx, "gross-taylor", {"N": N, "degree": degree}, rows, {"inner_products": "exact"})


@main.command()
@click.option("--genus", type=click.IntRange(1), default=2, show_default=True)
@click.option("--word", required=True, help="Tokens such as 'a1 b1^-1'.")
@click.pass_context
@_guard
def dehn(ctx, genus, word):
    """Word problem and cyclically shortest representative."""
    from .surface_words import SurfaceWord, cyclic_reduce, dehn_shorten, is_identity

    try:
        w = SurfaceWord.parse(genus, word)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--word") from exc
    short = dehn_shorten(w)
    row = {
        "word": w.text(),
        "identity": bool(is_identity(w)),
        "cyclically_reduced": cyclic_reduce(w).text(),
        "shortest": short.text(),
        "length": len(short),
    }
    emit(ctx, "dehn", {"genus": genus, "word": word}, [row], {"length": "exact"})


@main.command("brauer-census")
@click.option("--genus", type=click.IntRange(2), default=2, show_default=True)
@click.option("--omega", "omega_word", default="a1", show_default=True)
@click.option("--n", "n", type=click.IntRange(0), default=1, show_default=True)
@click.option("--m", "m", type=click.IntRange(0), default=0, show_default=True)
@click.option("--cap", type=click.IntRange(1), default=None, help="Maximum number of maps.")
@click.option("--max-h", type=click.IntRange(0), default=None)
@click.option("--admissible-only", is_flag=True, help="Skip non-admissible horizontal diagrams.")
@click.pass_context
@_guard
def brauer_census(ctx, genus, omega_word, n, m, cap, max_h, admissible_only):
    """Exhaustive Euler-characteristic census of Brauer maps."""
    from .brauer_maps import CENSUS_CAP, verify_geo_bound
    from .surface_words import SurfaceWord, relator

    w = SurfaceWord.parse(genus, omega_word)
    rep = verify_geo_bound(
        relator(genus), w, n, m, cap=cap or CENSUS_CAP, max_h=max_h, all_horizontal=not admissible_only
    )
    doc = rep.to_json()
    doc["ok"] = rep.ok
    params = {"genus": genus, "omega": omega_word, "n": n, "m": m, "cap": cap, "max_h": max_h}
    emit(ctx, "brauer-census", params, [doc], {"counts": "exact"})
    if not rep.ok:
        ctx.exit(1)


_CONFIGS = {
    "simple": "simple_loop_map",
    "figure-eight": "figure_eight_map",
    "venn": "venn_map",
    "parallel": "parallel_pair_map",
}


def _areas(text: str) -> dict:
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        name, _, val = item.partition("=")
        out[name.strip()] = Fraction(val.strip())
    return out


@main.command()
@click.option("--config", "config_name", type=click.Choice(sorted(_CONFIGS)), default="simple", show_default=True)
@click.option("--genus", type=click.IntRange(2), default=2, show_default=True)
@click.option("--N", "N", type=click.IntRange(1), default=3, show_default=True)
@click.option("--group", type=click.Choice(["U", "SU"]), default="U", show_default=True)
@click.option("--areas", default="disc=1,outer=3", show_default=True, help="face=area pairs.")
@click.option("--cutoff", type=click.IntRange(0), default=8, show_default=True)
@click.option("--tolerance", type=float, default=None)
@click.pass_context
@_guard
def irf(ctx, config_name, genus, N, group, areas, cutoff, tolerance):
    """Wilson-loop expectation through the IRF sum, with certified tails."""
    from . import maps_irf

    config = getattr(maps_irf, _CONFIGS[config_name])(genus)
    try:
        av = maps_irf.AreaVector(_areas(areas))
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--areas") from exc
    try:
        res = maps_irf.wilson_expectation(config, av, N, group, cutoff, tolerance=tolerance)
    except maps_irf.TruncationError as exc:
        raise Failure(EXIT_UNCERTIFIED, str(exc)) from exc
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc
    row = {"value": res.value, "trace_value": res.trace_value, "fields": res.fields, "reference_face": res.reference_face}
    cert = {
        "error_bound": res.error_bound,
        "numerator_tail": res.numerator_tail,
        "denominator_tail": res.denominator_tail,
        **res.details,
    }
    params = {"config": config_name, "genus": genus, "N": N, "group": group, "areas": areas, "cutoff": cutoff}
    emit(ctx, "irf", params, [row], cert)


@main.command("partition-fn")
@click.option("--N", "N", type=click.IntRange(2), required=True)
@click.option("--genus", type=click.IntRange(2), default=2, show_default=True)
@click.option("--T", "T", default="0", show_default=True, help="Total area; 0 gives the ABG volume.")
@click.option("--group", type=click.Choice(["U", "SU"]), default="SU", show_default=True)
@click.option("--cutoff", type=click.IntRange(0), default=20, show_default=True)
@click.option("--string-q", default=None, help="Also compare string-expansion blocks at this q.")
@click.option("--degree-cap", type=click.IntRange(0, 4), default=3, show_default=True)
@click.pass_context
@_guard
def partition_fn(ctx, N, genus, T, group, cutoff, string_q, degree_cap):
    """Partition function values and optional string-expansion comparison."""
    from .maps_irf import partition_function, string_expansion_check

    value, tail = partition_function(N, genus, Fraction(T), group, cutoff)
    rows = [{"kind": "partition_function", "value": value, "tail_bound": tail}]
    cert = {"tail_bound": tail}
    if string_q is not None:
        try:
            blocks = string_expansion_check(N, genus, Fraction(string_q), degree_cap, group)
        except ValueError as exc:
            raise click.BadParameter(str(exc), param_hint="--degree-cap") from exc
        for b in blocks:
            rows.append({"kind": "string_block", **b})
        cert["string_blocks"] = "floating, compared at working precision"
    params = {"N": N, "genus": genus, "T": T, "group": group, "cutoff": cutoff, "string_q": string_q}
    emit(ctx, "partition-fn", params, rows, cert)


def run(argv=None) -> int:
    """Entry point returning the exit code instead of exiting."""
    try:
        main.main(args=argv, prog_name="ymbrauer", standalone_mode=False)
    except Failure as exc:
        click.echo(f"error: {exc}", err=True)
        return exc.code
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    return 0


def entry():
    sys.exit(run())


if __name__ == "__main__":
    entry()
