"""Command-line surface.

Subcommands: map, profile, sweep, rotcheck, gen, algebra, plot.
Exit codes: 0 success, 1 negative verdict (unrelated mappings, inequivalent
series), 2 usage or data error.
"""

from __future__ import annotations

import functools
import json
import sys

import click

from . import algebra as fs
from .equivalence import rotation_relatedness
from .errors import MapeqError
from .mapping import Alphabet, mapping_to_json
from .seqio import (
    FastaRecord,
    GeneratorSpec,
    format_fasta,
    generate,
    read_fasta,
)
from .svgplot import emit_plot
from .sweep import (
    SweepConfig,
    resolve_mapping,
    run_profile,
    run_sweep,
)
from .operators import profile_csv_text
from .equivalence import report_csv_text


def _data_errors(f):
    """Map library and input errors to exit code 2 with a message on stderr."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (MapeqError, json.JSONDecodeError, OSError, ValueError) as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(2)

    return wrapper


@click.group()
@click.option("--seed", type=int, default=None, help="Global RNG seed override.")
@click.option("--boundary", type=click.Choice(["circular", "truncated"]),
              default=None, help="Correlation boundary mode.")
@click.option("--tol", type=float, default=None, help="Global tolerance override.")
@click.option("--out", type=click.Path(), default=None, help="Output path.")
@click.pass_context
def main(ctx, seed, boundary, tol, out):
    """Symbolic-sequence mapping equivalence toolkit."""
    ctx.obj = {"seed": seed, "boundary": boundary, "tol": tol, "out": out}


def _merged(ctx, key, local):
    return local if local is not None else ctx.obj.get(key)


def _load_sequence(ctx, input_path, gen_path, alphabet, seed):
    if (input_path is None) == (gen_path is None):
        raise click.UsageError("give exactly one of --input / --gen")
    if input_path is not None:
        records = read_fasta(input_path, alphabet)
        if not records:
            raise MapeqError(f"no records in {input_path}")
        return records[0].sequence
    with open(gen_path) as fh:
        spec = GeneratorSpec.from_json_dict(json.load(fh))
    if seed is not None and seed != spec.seed:
        spec = GeneratorSpec(spec.kind, spec.alphabet, spec.length, seed,
                             probs=spec.probs, transition=spec.transition,
                             initial=spec.initial)
    return generate(spec)


@main.command("map")
@click.argument("name")
@click.option("--out", type=click.Path(), default=None)
@click.pass_context
@_data_errors
def map_cmd(ctx, name, out):
    """Print (or export) a mapping table as JSON."""
    text = mapping_to_json(resolve_mapping(name))
    out = _merged(ctx, "out", out)
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


@main.command("profile")
@click.option("--input", "input_path", type=click.Path(exists=True), default=None,
              help="FASTA input (first record).")
@click.option("--gen", "gen_path", type=click.Path(exists=True), default=None,
              help="Generator spec JSON.")
@click.option("--mapping", required=True, help="Built-in name or mapping JSON path.")
@click.option("--operator", type=click.Choice(["correlation", "spectrum"]),
              default="correlation", show_default=True)
@click.option("--max-lag", type=int, default=None,
              help="Largest lag (correlation); default min(N-1, 1000).")
@click.option("--boundary", type=click.Choice(["circular", "truncated"]),
              default=None)
@click.option("--also-naive", is_flag=True,
              help="Also write the naive-DFT spectrum and cross-check it.")
@click.option("--out", type=click.Path(), default=None)
@click.option("--seed", type=int, default=None)
@click.pass_context
@_data_errors
def profile_cmd(ctx, input_path, gen_path, mapping, operator, max_lag,
                boundary, also_naive, out, seed):
    """Write an operator profile CSV for one mapping."""
    out = _merged(ctx, "out", out)
    seed = _merged(ctx, "seed", seed)
    boundary = _merged(ctx, "boundary", boundary) or "circular"
    if also_naive and operator != "spectrum":
        raise click.UsageError("--also-naive applies to the spectrum operator")
    if also_naive and not out:
        raise click.UsageError("--also-naive requires --out")
    table = resolve_mapping(mapping)
    seq = _load_sequence(ctx, input_path, gen_path, table.alphabet, seed)
    profile, _ = run_profile(seq, table, operator, out, max_lag=max_lag,
                             boundary=boundary, also_naive=also_naive)
    if not out:
        click.echo(profile_csv_text(profile, mapping=table.label), nl=False)


@main.command("sweep")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="Sweep config JSON; flags override file values.")
@click.option("--input", "input_path", type=click.Path(exists=True), default=None)
@click.option("--gen", "gen_path", type=click.Path(exists=True), default=None)
@click.option("--mapping1", default=None)
@click.option("--mapping2", default=None)
@click.option("--operator", type=click.Choice(["correlation", "spectrum"]),
              default=None)
@click.option("--lengths", default=None,
              help="Comma-separated explicit lengths, e.g. 128,256,512.")
@click.option("--n-min", type=int, default=None)
@click.option("--n-max", type=int, default=None)
@click.option("--factor", type=float, default=None)
@click.option("--max-lag", type=int, default=None)
@click.option("--exclude-dc/--no-exclude-dc", "exclude_dc", default=None,
              help="Drop the DC bin from spectrum rho (default: drop).")
@click.option("--exclude-lag0/--no-exclude-lag0", "exclude_lag0", default=None,
              help="Drop lag 0 from correlation rho (default: keep).")
@click.option("--boundary", type=click.Choice(["circular", "truncated"]),
              default=None)
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(), default=None)
@click.pass_context
@_data_errors
def sweep_cmd(ctx, config_path, input_path, gen_path, mapping1, mapping2,
              operator, lengths, n_min, n_max, factor, max_lag, exclude_dc,
              exclude_lag0, boundary, seed, out):
    """Run a consistency-vs-length sweep and write the report CSV."""
    if config_path:
        cfg = SweepConfig.from_json_file(config_path)
    else:
        if mapping1 is None or mapping2 is None:
            raise click.UsageError("--mapping1/--mapping2 required without --config")
        cfg = SweepConfig(mapping1=mapping1, mapping2=mapping2)
    gen_spec = None
    if gen_path:
        with open(gen_path) as fh:
            gen_spec = GeneratorSpec.from_json_dict(json.load(fh))
    cfg = cfg.override(
        mapping1=mapping1, mapping2=mapping2, operator=operator,
        fasta=input_path, generator=gen_spec,
        lengths=tuple(int(s) for s in lengths.split(",")) if lengths else None,
        n_min=n_min, n_max=n_max, factor=factor, max_lag=max_lag,
        exclude_dc=exclude_dc, exclude_lag0=exclude_lag0,
        boundary=_merged(ctx, "boundary", boundary),
        seed=_merged(ctx, "seed", seed),
        out=_merged(ctx, "out", out),
    )
    report = run_sweep(cfg)
    if cfg.out:
        click.echo(f"wrote {cfg.out} ({len(report)} rows)")
    else:
        click.echo(report_csv_text(report), nl=False)


@main.command("rotcheck")
@click.argument("mapping1")
@click.argument("mapping2")
@click.option("--tol", type=float, default=None,
              help="Relative Gram-proportionality tolerance (default 1e-9).")
@click.pass_context
@_data_errors
def rotcheck_cmd(ctx, mapping1, mapping2, tol):
    """Decide whether two mappings differ by a scaled rotation.

    Exits 0 when related, 1 when unrelated.
    """
    tol = _merged(ctx, "tol", tol)
    verdict = rotation_relatedness(
        resolve_mapping(mapping1), resolve_mapping(mapping2),
        tol=1e-9 if tol is None else tol,
    )
    if verdict.related:
        click.echo(
            f"related: lambda={verdict.scale!r} gram_residual={verdict.residual:.3e} "
            f"alignment_residual={verdict.alignment_residual:.3e}"
        )
        sys.exit(0)
    click.echo(f"unrelated: gram_residual={verdict.residual:.3e}")
    sys.exit(1)


@main.command("gen")
@click.option("--spec", "spec_path", type=click.Path(exists=True), default=None,
              help="Generator spec JSON (iid or markov).")
@click.option("--alphabet", default="ATGC", show_default=True)
@click.option("--length", type=int, default=None)
@click.option("--probs", default=None,
              help="Comma-separated symbol probabilities (default uniform).")
@click.option("--id", "record_id", default="generated", show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(), default=None)
@click.pass_context
@_data_errors
def gen_cmd(ctx, spec_path, alphabet, length, probs, record_id, seed, out):
    """Generate a synthetic FASTA sequence (iid or Markov)."""
    seed = _merged(ctx, "seed", seed)
    out = _merged(ctx, "out", out)
    if spec_path:
        with open(spec_path) as fh:
            spec = GeneratorSpec.from_json_dict(json.load(fh))
        if seed is not None and seed != spec.seed:
            spec = GeneratorSpec(spec.kind, spec.alphabet, spec.length, seed,
                                 probs=spec.probs, transition=spec.transition,
                                 initial=spec.initial)
    else:
        if length is None:
            raise click.UsageError("--length required without --spec")
        ab = Alphabet(alphabet)
        if probs:
            p = [float(s) for s in probs.split(",")]
        else:
            p = [1.0 / ab.size] * ab.size
        spec = GeneratorSpec("iid", ab, length, seed if seed is not None else 0,
                             probs=p)
    seq = generate(spec)
    text = format_fasta([FastaRecord(record_id, seq)])
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@main.command("algebra")
@click.argument("operation", type=click.Choice(["add", "mul", "scalar", "equiv"]))
@click.argument("series", nargs=-1, type=click.Path(exists=True))
@click.option("--alphabet", default="ATGC", show_default=True)
@click.option("--factor", type=float, default=None, help="Scalar for 'scalar'.")
@click.option("--tol", type=float, default=None,
              help="Coefficient tolerance for 'equiv' (default 1e-9).")
@click.option("--out", type=click.Path(), default=None)
@click.pass_context
@_data_errors
def algebra_cmd(ctx, operation, series, alphabet, factor, tol, out):
    """Formal-series demo: add/mul/scalar/equiv on serialized series files.

    Series files hold one term per line: ``<coefficient><TAB><word>``.
    ``equiv`` exits 0 (equivalent, printing the scalar) or 1.
    """
    ab = Alphabet(alphabet)
    out = _merged(ctx, "out", out)
    tol = _merged(ctx, "tol", tol)

    def load(path):
        with open(path) as fh:
            return fs.parse_series(fh.read(), ab)

    def emit(result):
        text = fs.series_text(result)
        if out:
            with open(out, "w", newline="") as fh:
                fh.write(text)
        else:
            click.echo(text, nl=False)

    if operation in ("add", "mul", "equiv"):
        if len(series) != 2:
            raise click.UsageError(f"{operation} needs exactly two series files")
        f, g = load(series[0]), load(series[1])
        if operation == "add":
            emit(fs.add(f, g))
        elif operation == "mul":
            emit(fs.mul(f, g))
        else:
            c = fs.scalar_equivalent(f, g, tol=1e-9 if tol is None else tol)
            if c is None:
                click.echo("not equivalent")
                sys.exit(1)
            click.echo(f"equivalent: c={c!r}")
    else:
        if len(series) != 1:
            raise click.UsageError("scalar needs exactly one series file")
        if factor is None:
            raise click.UsageError("scalar needs --factor")
        emit(fs.scalar(factor, load(series[0])))


@main.command("plot")
@click.argument("report_csv", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
@click.pass_context
@_data_errors
def plot_cmd(ctx, report_csv, out):
    """Render a sweep report CSV to an SVG chart."""
    out = _merged(ctx, "out", out)
    if not out:
        raise click.UsageError("plot requires --out")
    emit_plot(report_csv, out)
    click.echo(f"wrote {out}")


if __name__ == "__main__":
    main()
