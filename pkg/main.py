import json
import logging
import sys
from fractions import Fraction
from functools import wraps
from pathlib import Path
from typing import List, Optional, Sequence

import click
import pandas as pd
import yaml

from core.config import ToriCountConfig, set_config
from core.counter import (
    TorsionCounter,
    bound_exponent,
    cylinder_bound,
    empirical_exponent,
    fink_minkowski_bound,
    general_bound_exponent,
    hypersurface_exponent,
)
from core.exporter import Exporter
from core.types import CosetDecomposition, fraction_text
from tori.arith import (
    MainTerm,
    MainTermParams,
    abel_reciprocal_sum,
    conv_identity_check,
    coset_main_term_exact,
    jordan_progression_main_term_exact,
    jordan_sum_progression,
    jordan_table,
    prefix_sums,
    zeta_bracket,
)
from tori.errors import InputError, ToriCountError
from tori.ffield import make_field
from tori.intlat import IntegerLattice, IntMatrix, minor_gcd, p_saturation, saturation, smith_normal_form, successive_minima
from tori.logging_config import setup_default_logging
from tori.torsion import (
    TorsionCoset,
    TorsionPoint,
    TorusSubgroup,
    coset_order,
    coset_upper_bound,
    count_coset_exact,
    solve_monomial_equations,
)
from tori.variety import (
    coset_in_variety,
    divide_by_binomial,
    evaluate_at_torsion_point,
    format_polynomial,
    is_admissible_hypersurface,
    parse_polynomial,
    relation_fiber_bound,
    stabilizer_lattice,
)

logger = logging.getLogger(__name__)


# input parsing

def _json_value(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"cannot parse {what} {text!r}: {e.msg}") from e


def _matrix(text: str) -> IntMatrix:
    """Parse a matrix given as JSON rows, e.g. "[[2,4],[6,8]]"."""
    rows = _json_value(text, "matrix")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError(f"a matrix is a nonempty list of rows, got {text!r}")
    return IntMatrix.from_rows([[int(x) for x in r] for r in rows])


def _vectors(text: Optional[str]) -> List[tuple]:
    """Parse integer vectors given as JSON, e.g. "[[1,-1],[0,2]]"."""
    if not text:
        return []
    vectors = _json_value(text, "vectors")
    if not isinstance(vectors, list) or not all(isinstance(v, list) for v in vectors):
        raise InputError(f"expected a list of integer vectors, got {text!r}")
    return [tuple(int(x) for x in v) for v in vectors]


def _point(text: str, p: int = 0) -> TorsionPoint:
    """Parse a torsion point from comma-separated exponents, e.g. "1/5,2/5"."""
    return TorsionPoint.from_strings([t for t in text.split(",") if t.strip()], p)


def _polynomial(text: Optional[str], file: Optional[str], p: int, k: int, nvars: Optional[int], max_field_bits: int):
    if file:
        text = Path(file).read_text(encoding="utf-8")
    if not text:
        raise InputError("give a polynomial inline or with --file")
    field = make_field(p, k, max_field_bits) if p else None
    if not p and k != 1:
        raise InputError("--k needs a prime characteristic --p")
    return parse_polynomial(text.strip(), nvars, field)


def _coset(rep: str, relations: Optional[str], p: int) -> TorsionCoset:
    point = _point(rep, p)
    group = TorusSubgroup.from_relations(point.ambient_dim, _vectors(relations), p)
    return TorsionCoset(point, group)


def _coset_spec(text: str) -> TorsionCoset:
    """Parse "REP@RELATIONS", e.g. "1/2,0@[[1,0]]" (characteristic 0)."""
    rep, _, relations = text.partition("@")
    return _coset(rep, relations or None, 0)


def _coefficient(text: str, P):
    """Parse a scalar: an integer, "num/den" or a coefficient vector "[c0,c1,...]"."""
    text = text.strip()
    if text.startswith("["):
        if P.field is None:
            raise InputError("coefficient vectors need a finite coefficient field (--p, --k)")
        return P.field.element(_json_value(text, "coefficient"))
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"cannot parse coefficient {text!r}") from e


# output

def _emit(ctx, result) -> None:
    click.echo(Exporter(ctx.obj["config"]).to_json(result))


def _handles_errors(command):
    """Map library errors to the JSON error envelope and exit code 1."""

    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except ToriCountError as e:
            logger.error(f"{command.__name__} failed: {e.message}")
            click.echo(json.dumps({"error": e.to_dict()}, sort_keys=True))
            sys.exit(1)
        except (OSError, yaml.YAMLError) as e:
            logger.error(f"{command.__name__} failed: {e}")
            click.echo(json.dumps({"error": {"kind": "input", "message": str(e)}}, sort_keys=True))
            sys.exit(1)
        except Exception as e:
            logger.error(f"Unexpected error in {command.__name__}: {type(e).__name__}: {e}", exc_info=True)
            click.echo(json.dumps({"error": {"kind": "internal", "message": str(e)}}, sort_keys=True))
            sys.exit(1)

    return wrapper


def _polynomial_options(command):
    command = click.option("--nvars", type=int, default=None, help="Number of variables (default: largest index used)")(command)
    command = click.option("--k", "k", type=int, default=1, show_default=True, help="Coefficient field F_{p^k}")(command)
    command = click.option("--p", "p", type=int, default=0, show_default=True, help="Characteristic (0 or a prime)")(command)
    command = click.option("--file", "file", type=click.Path(exists=True, dir_okay=False), help="Read the polynomial from a file")(command)
    command = click.argument("polynomial", required=False)(command)
    return command


@click.group()
@click.option('--verbose', '-v', is_flag=True, help="Enable verbose (DEBUG level) logging")
@click.option('--quiet', '-q', is_flag=True, help="Suppress all logging output")
@click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False), help="YAML configuration file")
@click.option('--max-field-bits', type=int, default=None, help="Largest field F_{p^l} as log2 of its size")
@click.option('--max-points', type=int, default=None, help="Largest number of torus points enumerated per run")
@click.option('--minima-dim-cap', type=int, default=None, help="Largest dimension for successive minima")
@click.option('--format', 'output_format', type=click.Choice(["json"]), default="json", show_default=True)
@click.pass_context
def cli(ctx, verbose, quiet, config_path, max_field_bits, max_points, minima_dim_cap, output_format):
    """ToriCount - counting torsion points of bounded order on subvarieties of tori."""
    ctx.ensure_object(dict)

    if quiet:
        logging.disable(logging.CRITICAL)
    else:
        setup_default_logging(verbose=verbose)

    try:
        config = ToriCountConfig.load(Path(config_path) if config_path else None)
    except ToriCountError as e:
        click.echo(json.dumps({"error": e.to_dict()}, sort_keys=True))
        sys.exit(1)
    config = config.with_overrides(
        max_field_bits=max_field_bits,
        max_points=max_points,
        minima_dim_cap=minima_dim_cap,
    )
    ctx.obj["config"] = set_config(config)
    logger.debug(f"CLI initialized (verbose={verbose}, quiet={quiet}, limits={config.limits})")


# arith

@cli.command()
@click.option("--d", "d", type=int, required=True, help="Totient index")
@click.option("--N", "N", type=int, default=None, help="Tabulate J_d(1..N)")
@click.option("--m", "m", type=int, default=None, help="Progression modulus")
@click.option("--a", "a", type=int, default=0, show_default=True, help="Progression residue")
@click.option("--x", "x", type=int, default=None, help="Progression cutoff")
@click.pass_context
@_handles_errors
def jordan(ctx, d, N, m, a, x):
    """Jordan totient table, or its sum over a progression against the main term."""
    if x is None:
        table = jordan_table(d, N or 10)
        _emit(ctx, {"d": d, "N": table.size, "values": list(table.values)})
        return
    m = m or 1
    exact = jordan_sum_progression(d, m, a, x)
    main = jordan_progression_main_term_exact(MainTermParams(d=d, m=m, a=a, x=x))
    value = main.value(x)
    _emit(ctx, {"d": d, "m": m, "a": a, "x": x, "exact": exact, "main_term": main, "main": value, "ratio": exact / value})


@cli.command()
@click.option("--s", "s", type=int, required=True, help="Integer argument s >= 2")
@click.pass_context
@_handles_errors
def zeta(ctx, s):
    """Bracket ζ(s) between two floats."""
    lower, upper = zeta_bracket(s, ctx.obj["config"].numerics.zeta_tolerance)
    _emit(ctx, {"s": s, "lower": lower, "upper": upper, "value": (lower + upper) / 2})


@cli.command("coset-main")
@click.option("--p", "p", type=int, default=0, show_default=True)
@click.option("--d", "d", type=int, required=True)
@click.option("--g", "g", type=int, default=1, show_default=True)
@click.option("--T", "T", type=int, required=True)
@click.pass_context
@_handles_errors
def coset_main(ctx, p, d, g, T):
    """Main term of the count of points of order <= T on a coset."""
    main = coset_main_term_exact(p, d, g)
    _emit(ctx, {"p": p, "d": d, "g": g, "T": T, "main_term": main, "value": main.value(T)})


@cli.command("conv-check")
@click.option("--d", "d", type=int, required=True)
@click.option("--n", "n", type=int, required=True, help="Check every n' <= n")
@click.pass_context
@_handles_errors
def conv_check(ctx, d, n):
    """Check the gcd-weighted totient convolution identity for 1..n."""
    failures = [k for k in range(1, n + 1) if not conv_identity_check(d, k)]
    _emit(ctx, {"d": d, "n": n, "holds": not failures, "failures": failures})


@cli.command()
@click.option("--values", required=True, help="Comma-separated a_1, a_2, ...")
@click.option("--T", "T", type=int, default=None, help="Cutoff (default: number of values)")
@click.pass_context
@_handles_errors
def abel(ctx, values, T):
    """Sum a_n / n through the partial sums of a_n."""
    try:
        a = [Fraction(v) for v in values.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"cannot parse values {values!r}") from e
    T = T or len(a)
    nonnegative = all(v >= 0 for v in a)
    value = abel_reciprocal_sum(prefix_sums(a), T, nonnegative)
    _emit(ctx, {"T": T, "value": value, "float": float(value)})


# intlat

@cli.command()
@click.argument("matrix")
@click.pass_context
@_handles_errors
def snf(ctx, matrix):
    """Smith normal form A = U D V of a JSON matrix."""
    result = smith_normal_form(_matrix(matrix))
    _emit(ctx, {
        "factors": list(result.invariant_factors),
        "rank": result.rank,
        "U": result.U.to_list(),
        "D": result.D.to_list(),
        "V": result.V.to_list(),
        "U_inv": result.U_inv.to_list(),
        "V_inv": result.V_inv.to_list(),
    })


@cli.command()
@click.argument("matrix")
@click.option("--k", "k", type=int, default=None, help="Minor size (default: all)")
@click.pass_context
@_handles_errors
def minors(ctx, matrix, k):
    """gcd of all k x k minors."""
    A = _matrix(matrix)
    sizes = [k] if k else range(1, min(A.nrows, A.ncols) + 1)
    _emit(ctx, {"minors": {str(s): minor_gcd(A, s) for s in sizes}})


@cli.command()
@click.argument("vectors")
@click.option("--p", "p", type=int, default=0, show_default=True)
@click.pass_context
@_handles_errors
def saturate(ctx, vectors, p):
    """Saturation and p-saturation of the lattice spanned by JSON vectors."""
    generators = _vectors(vectors)
    if not generators:
        raise InputError("need at least one generator")
    lattice = IntegerLattice.from_generators(len(generators[0]), generators)
    group = TorusSubgroup(lattice, p)
    _emit(ctx, {
        "lattice": lattice,
        "saturation": saturation(lattice),
        "p_saturation": p_saturation(lattice, p),
        "components": group.components,
    })


@cli.command()
@click.option("--point", "point", default=None, help="Torsion point; uses its relation lattice")
@click.option("--vectors", "vectors", default=None, help="Generators of a full-rank lattice (JSON)")
@click.pass_context
@_handles_errors
def minima(ctx, point, vectors):
    """Successive minima in the sup norm, with witnesses."""
    config = ctx.obj["config"]
    if point:
        zeta_point = _point(point)
        result = TorsionCounter(config).minkowski_relations(zeta_point)
        order = zeta_point.order
    else:
        generators = _vectors(vectors)
        if not generators:
            raise InputError("give --point or --vectors")
        lattice = IntegerLattice.from_generators(len(generators[0]), generators)
        result = successive_minima(lattice, config.limits.minima_dim_cap, config.limits.minima_vector_budget)
        order = None
    _emit(ctx, {
        "minima": list(result.minima),
        "witnesses": [list(w) for w in result.witnesses],
        "product": result.product,
        "order": order,
        "nodes": result.nodes,
    })


# torsion

@cli.command("coset-count")
@click.option("--rep", required=True, help="Representative, e.g. 1/2,0")
@click.option("--relations", default=None, help="Lattice generators (JSON)")
@click.option("--p", "p", type=int, default=0, show_default=True)
@click.option("--T", "T", type=int, required=True)
@click.pass_context
@_handles_errors
def coset_count(ctx, rep, relations, p, T):
    """Exact number of points of order <= T on a torsion coset."""
    cap = ctx.obj["config"].limits.max_components
    coset = _coset(rep, relations, p)
    order = coset_order(coset, cap)
    exact = count_coset_exact(coset, T, cap)
    main = None
    if coset.dimension >= 1:
        terms = [coset_main_term_exact(p, coset.dimension, g) for _, g in coset.reduced_components(cap)]
        main = MainTerm(sum((t.coefficient for t in terms), Fraction(0)), coset.dimension + 1, coset.dimension + 1)
    _emit(ctx, {
        "coset": coset,
        "T": T,
        "exact": exact,
        "order": order,
        "components": coset.group.components,
        "main_term": main,
        "main": main.value(T) if main else None,
        "histogram": coset.order_histogram(cap),
    })


@cli.command("coset-bound")
@click.option("--rep", required=True)
@click.option("--relations", default=None)
@click.option("--p", "p", type=int, default=0, show_default=True)
@click.option("--T", "T", type=int, required=True)
@click.pass_context
@_handles_errors
def coset_bound(ctx, rep, relations, p, T):
    """Upper bound [G:G^0] T^(d+1) / ord(C) for a torsion coset."""
    coset = _coset(rep, relations, p)
    bound = coset_upper_bound(coset, T, ctx.obj["config"].limits.max_components)
    _emit(ctx, {"coset": coset, "T": T, "bound": bound, "float": float(bound)})


@cli.command("solve-monomial")
@click.argument("matrix")
@click.option("--target", required=True, help="Right-hand side torsion point")
@click.option("--p", "p", type=int, default=0, show_default=True)
@click.pass_context
@_handles_errors
def solve_monomial(ctx, matrix, target, p):
    """Solve x^U = ζ; prints the connected solution cosets."""
    cosets = solve_monomial_equations(_matrix(matrix), _point(target, p))
    _emit(ctx, {"solutions": cosets, "count": len(cosets)})


# variety

@cli.command()
@_polynomial_options
@click.pass_context
@_handles_errors
def admissible(ctx, polynomial, file, p, k, nvars):
    """Decide whether Z(P) contains no torsion coset of codimension 1."""
    P = _polynomial(polynomial, file, p, k, nvars, ctx.obj["config"].limits.max_field_bits)
    _emit(ctx, dict(is_admissible_hypersurface(P).to_dict(), polynomial=format_polynomial(P)))


@cli.command()
@_polynomial_options
@click.pass_context
@_handles_errors
def stabilizer(ctx, polynomial, file, p, k, nvars):
    """Support-difference lattice of P and the stabilizer dimension it gives."""
    P = _polynomial(polynomial, file, p, k, nvars, ctx.obj["config"].limits.max_field_bits)
    _emit(ctx, stabilizer_lattice(P))


@cli.command("in-variety")
@_polynomial_options
@click.option("--rep", required=True)
@click.option("--relations", default=None)
@click.pass_context
@_handles_errors
def in_variety(ctx, polynomial, file, p, k, nvars, rep, relations):
    """Test whether a torsion coset lies in Z(P)."""
    config = ctx.obj["config"]
    P = _polynomial(polynomial, file, p, k, nvars, config.limits.max_field_bits)
    coset = _coset(rep, relations, p)
    _emit(ctx, {"coset": coset, "contained": coset_in_variety(coset, P, config.limits.max_field_bits)})


@cli.command()
@_polynomial_options
@click.option("--point", "point", required=True)
@click.pass_context
@_handles_errors
def evaluate(ctx, polynomial, file, p, k, nvars, point):
    """Evaluate P exactly at a torsion point."""
    config = ctx.obj["config"]
    P = _polynomial(polynomial, file, p, k, nvars, config.limits.max_field_bits)
    value = evaluate_at_torsion_point(P, _point(point, p), config.limits.max_field_bits)
    _emit(ctx, {"value": value.to_text() if hasattr(value, "to_text") else str(value), "zero": value == 0})


@cli.command()
@_polynomial_options
@click.option("--u", "u", required=True, help="Direction, e.g. 1,1")
@click.option("--c", "c", default="1", show_default=True, help="Constant of X^u - c")
@click.pass_context
@_handles_errors
def divide(ctx, polynomial, file, p, k, nvars, u, c):
    """Divide P by the binomial X^u - c."""
    P = _polynomial(polynomial, file, p, k, nvars, ctx.obj["config"].limits.max_field_bits)
    direction = tuple(int(x) for x in u.split(","))
    quotient = divide_by_binomial(P, direction, _coefficient(c, P))
    _emit(ctx, {"divides": quotient is not None, "quotient": format_polynomial(quotient) if quotient is not None else None})


@cli.command("fiber-bound")
@_polynomial_options
@click.option("--relations", required=True, help="n - 1 independent vectors (JSON)")
@click.pass_context
@_handles_errors
def fiber_bound(ctx, polynomial, file, p, k, nvars, relations):
    """Bound on the points of Z(P) in a fibre cut out by n - 1 relations."""
    P = _polynomial(polynomial, file, p, k, nvars, ctx.obj["config"].limits.max_field_bits)
    _emit(ctx, {"bound": relation_fiber_bound(P, _vectors(relations))})


# counting

@cli.command("count-charp")
@_polynomial_options
@click.option("--T", "T", type=int, required=True)
@click.pass_context
@_handles_errors
def count_charp(ctx, polynomial, file, p, k, nvars, T):
    """Exact number of torsion points of order <= T on Z(P) over F̄_p."""
    config = ctx.obj["config"]
    if not p:
        raise InputError("count-charp needs a prime characteristic --p")
    P = _polynomial(polynomial, file, p, k, nvars, config.limits.max_field_bits)
    _emit(ctx, TorsionCounter(config).count_variety_charp(P, T))


@cli.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--T", "T_list", type=int, multiple=True, required=True, help="Cutoff; repeat for a series")
@click.option("--method", type=click.Choice(["auto", "enumeration", "divisor-count"]), default="auto", show_default=True)
@click.option("--table", "table", type=click.Path(dir_okay=False), default=None, help="Also write the series as CSV")
@click.option("--series", "series", is_flag=True, help="Add the T:exact pairs in the empirical-exponent input format")
@click.pass_context
@_handles_errors
def fink(ctx, p, T_list, method, table, series):
    """Count torsion points on X1 + X2 = 1 and check the known bounds."""
    config = ctx.obj["config"]
    reports = TorsionCounter(config).verify_fink(p, list(T_list), method)
    exporter = Exporter(config)
    if table:
        exporter.save_table(exporter.to_table(reports), Path(table))
    if len(reports) == 1 and not series:
        _emit(ctx, reports[0])
        return
    payload = {"reports": reports, "passed": all(r.passed for r in reports)}
    if series:
        payload["series"] = ",".join(f"{T}:{count}" for T, count in exporter.series(reports))
    _emit(ctx, payload)


@cli.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--T", "T", type=int, required=True)
@click.option("--method", type=click.Choice(["auto", "enumeration", "divisor-count"]), default="auto", show_default=True)
@click.pass_context
@_handles_errors
def cylinder(ctx, p, T, method):
    """Count torsion points on X1 + X2 = 1 inside G_m^3 against 48 T^(5/2)."""
    report = TorsionCounter(ctx.obj["config"]).count_cylinder(p, T, method)
    _emit(ctx, report)


@cli.command()
@_polynomial_options
@click.option("--l", "l_list", type=int, multiple=True, required=True, help="Field degree; repeat for a table")
@click.option("--r", "r", type=int, required=True, help="Dimension of Z(P)")
@click.option("--table", "table", type=click.Path(dir_okay=False), default=None)
@click.pass_context
@_handles_errors
def langweil(ctx, polynomial, file, p, k, nvars, l_list, r, table):
    """Count points of Z(P) over F_{p^l} and compare with q^r."""
    config = ctx.obj["config"]
    if not p:
        raise InputError("langweil needs a prime characteristic --p")
    P = _polynomial(polynomial, file, p, k, nvars, config.limits.max_field_bits)
    report = TorsionCounter(config).lang_weil_check(P, list(l_list), r)
    if table:
        exporter = Exporter(config)
        exporter.save_table(exporter.lang_weil_table(report), Path(table))
    _emit(ctx, report)


@cli.command()
@click.option("--d", "d", type=int, default=None, help="Dimension of X")
@click.option("--delta", "delta", type=int, default=None, help="Dimension of the stabilizer")
@click.option("--n", "n", type=int, default=None, help="Ambient dimension of a hypersurface")
@click.pass_context
@_handles_errors
def exponent(ctx, d, delta, n):
    """Counting exponents: d+1-1/(d-δ+1), d+1 or n-1/n."""
    if n is not None:
        value, kind = hypersurface_exponent(n), "hypersurface"
    elif d is None:
        raise InputError("give --d (with optional --delta) or --n")
    elif delta is not None:
        value, kind = bound_exponent(d, delta), "admissible"
    else:
        value, kind = Fraction(general_bound_exponent(d)), "general"
    _emit(ctx, {"kind": kind, "d": d, "delta": delta, "n": n, "value": fraction_text(value), "float": float(value)})


@cli.command("fink-bounds")
@click.option("--T", "T", type=int, required=True)
@click.pass_context
@_handles_errors
def fink_bounds(ctx, T):
    """The closed-form bounds used by the fink and cylinder commands."""
    _emit(ctx, {"T": T, "minkowski": fink_minkowski_bound(T), "fink": 16 * T ** 1.5, "cylinder": cylinder_bound(T)})


def _load_cosets(cosets: Sequence[str], file: Optional[str]) -> List[TorsionCoset]:
    result = [_coset_spec(text) for text in cosets]
    if file:
        with open(file, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
        entries = data.get("cosets", []) if isinstance(data, dict) else data
        for entry in entries:
            if not isinstance(entry, dict) or "rep" not in entry:
                raise InputError(f"each coset entry needs a 'rep', got {entry!r}")
            rep = [str(x) for x in entry["rep"]]
            point = TorsionPoint.from_strings(rep)
            relations = [tuple(int(x) for x in v) for v in entry.get("relations") or []]
            result.append(TorsionCoset(point, TorusSubgroup.from_relations(point.ambient_dim, relations)))
    return result


@cli.command("char0-main")
@click.option("--coset", "cosets", multiple=True, help="Coset as REP@RELATIONS, e.g. 1/2,0@[[1,0]]")
@click.option("--file", "file", type=click.Path(exists=True, dir_okay=False), help="YAML file with a 'cosets' list")
@click.option("--T", "T", type=int, required=True)
@click.pass_context
@_handles_errors
def char0_main(ctx, cosets, file, T):
    """Main term b T^(a+1) for a union of torsion cosets in characteristic 0."""
    decomposition = CosetDecomposition(_load_cosets(cosets, file))
    _emit(ctx, TorsionCounter(ctx.obj["config"]).char0_main_term(decomposition, T))


@cli.command("empirical-exponent")
@click.option("--series", "series", default=None, help="Pairs T:count separated by commas")
@click.option("--file", "file", type=click.Path(exists=True, dir_okay=False), help="CSV with columns T and exact")
@click.pass_context
@_handles_errors
def empirical_exponent_command(ctx, series, file):
    """Least-squares slope of log(count) against log(T)."""
    pairs = []
    if series:
        try:
            pairs = [tuple(int(x) for x in item.split(":")) for item in series.split(",") if item.strip()]
        except ValueError as e:
            raise InputError(f"cannot parse series {series!r}") from e
    if file:
        frame = pd.read_csv(file)
        if not {"T", "exact"} <= set(frame.columns):
            raise InputError(f"{file} needs columns T and exact")
        pairs.extend(zip(frame["T"].astype(int), frame["exact"].astype(int)))
    _emit(ctx, {"points": len(pairs), "slope": empirical_exponent(pairs)})


if __name__ == "__main__":
    cli(obj={})
