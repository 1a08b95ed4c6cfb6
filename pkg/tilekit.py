"""Command-line entry point: classify, construct, verify, cf, render and pipeline."""
import sys
import logging
from typing import Any, Dict, Optional, Sequence

import click

from models import CheckKind, ContinuedFractionReport, RunConfig
from orchestrator import PIPELINE_EXIT_CODES, TilingOrchestrator
from tiling.classify import EXIT_CODES, classify_lattice, classify_wavelet
from tiling.construct import expanding_seed, finite_measure_mult_tile, prop32_lattice, prop32_wavelet_set
from tiling.diophantine import approx_bound_check, cf_expand
from tiling.errors import (
    CapExceeded,
    InvariantViolation,
    MixedRadicals,
    NoRectangularDomain,
    NotDiagonalizable,
    TilekitError,
)
from tiling.exactnum import as_scalar
from tiling.gram import default_indices, gram_check
from tiling.linalg2 import Mat2
from tiling.scb import scb_complete
from tiling.setalg import RectSet
from tiling.speegle import speegle_iterate
from tiling.verify import axis_strip, check_multiplicative, check_raster, check_translational
from utils.report_builder import (
    prop32_report,
    render_set,
    scb_report,
    seed_report,
    set_document,
    speegle_report,
    write_json,
)
from utils.scalar_loader import (
    load_gram_indices,
    load_json_argument,
    load_lattice,
    load_rational_matrix,
    load_rectset,
    matrix_to_json,
    parse_lattice,
    parse_matrix,
    parse_rectset,
    parse_window,
)
from utils.trace_tracker import IterationTracer
import config

logger = logging.getLogger("tilekit")


def _emit(payload: Any, out: Optional[str]) -> None:
    """JSON to ``out`` when given, otherwise to stdout."""
    text = write_json(payload, out)
    if not out:
        click.echo(text, nl=False)


def _render(s, path: Optional[str], title: str) -> None:
    if path:
        render_set(s, path, title=title, resolution=config.DEFAULT_RESOLUTION)


matrix_option = click.option("--matrix", "matrix", help="2x2 matrix as inline JSON or a JSON file.")
lattice_option = click.option("--lattice", "lattice", default=None, help="Lattice basis P (columns span P Z^2); default Z^2.")
out_option = click.option("--out", "out", default=None, help="Write the JSON document here instead of stdout.")
render_option = click.option("--render", "render", default=None, help="Also draw the set (.svg or .pgm).")
depth_option = click.option("--depth", type=click.IntRange(min=0), default=config.DEFAULT_DEPTH, show_default=True)
cap_option = click.option("--cap", type=click.IntRange(min=1), default=config.DEFAULT_CAP, show_default=True)


@click.group()
@click.option("-v", "--verbose", count=True, help="Repeat for more logging on stderr.")
def cli(verbose: int):
    """Exact simultaneous lattice and dilation tilings of the plane."""
    level = config.LOG_LEVEL
    if verbose == 1:
        level = "INFO"
    elif verbose > 1:
        level = "DEBUG"
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


@cli.command()
@click.option("--matrix", "matrix", required=True, help="Rational dilation matrix A.")
@lattice_option
@click.option("--wavelet", is_flag=True, help="Decide wavelet sets: Z^2 translations, A^T dilations.")
@out_option
def classify(matrix: str, lattice: Optional[str], wavelet: bool, out: Optional[str]) -> int:
    """Decide whether a simultaneous tile exists."""
    if wavelet and lattice is not None:
        raise click.UsageError("--wavelet fixes the lattice to Z^2; drop --lattice")
    a = load_rational_matrix(matrix)
    report = classify_wavelet(a) if wavelet else classify_lattice(a, load_lattice(lattice))
    _emit(report, out)
    return EXIT_CODES[report.case]


@cli.group()
def construct():
    """Build explicit tiles, seeds and packings."""


@construct.command()
@click.option("--lambda1", default="2", show_default=True, help="Eigenvalue with |lambda1| > 1.")
@click.option("--lambda2", default="1", show_default=True, help="Eigenvalue +1 or -1.")
@click.option("--shear", default="0", show_default=True, help="Shear t of the lattice [[1,0],[-t,1]] Z^2.")
@depth_option
@click.option("--height", default=None, help="Report the coverage defect over [-1/2,1/2) x [-height,height).")
@out_option
@render_option
def prop32(lambda1: str, lambda2: str, shear: str, depth: int, height: Optional[str],
           out: Optional[str], render: Optional[str]) -> int:
    """Truncated explicit tile for a unimodular second eigenvalue."""
    l1, l2, t = as_scalar(lambda1), as_scalar(lambda2), as_scalar(shear)
    tile = prop32_wavelet_set(l1, l2, depth)
    report = prop32_report(tile, l1, l2, t, depth, as_scalar(height) if height is not None else None)
    doc = set_document(tile, report,
                       matrix=matrix_to_json(Mat2.diag(l1, l2)),
                       lattice=matrix_to_json(prop32_lattice(t).basis))
    _emit(doc, out)
    _render(tile, render, f"T_{depth}")
    return 0


@construct.command()
@click.option("--matrix", "matrix", required=True, help="Diagonal dilation matrix.")
@lattice_option
@cap_option
@click.option("--bands", type=click.IntRange(min=1), default=config.SEED_BANDS, show_default=True)
@out_option
@render_option
def seed(matrix: str, lattice: Optional[str], cap: int, bands: int,
         out: Optional[str], render: Optional[str]) -> int:
    """A multiplicative tile: a packing annulus when expanding, a band tile otherwise."""
    a = load_rational_matrix(matrix)
    lat = load_lattice(lattice)
    if abs(a.m11) > 1 and abs(a.m22) > 1:
        s, power = expanding_seed(a, lat, cap)
        report = seed_report(s, a, power=power)
    else:
        s = finite_measure_mult_tile(a, bands)
        report = seed_report(s, a, bands=bands)
    _emit(set_document(s, report, matrix=matrix_to_json(a), lattice=matrix_to_json(lat.basis)), out)
    _render(s, render, "seed")
    return 0


@construct.command()
@click.option("--matrix", "matrix", required=True, help="Diagonal expanding dilation matrix.")
@lattice_option
@depth_option
@cap_option
@click.option("--seed", "seed_path", default=None, help="Seed set; defaults to the packing annulus.")
@out_option
@render_option
def scb(matrix: str, lattice: Optional[str], depth: int, cap: int, seed_path: Optional[str],
        out: Optional[str], render: Optional[str]) -> int:
    """Complete a seed into a set tiling by both the lattice and the dilation."""
    a = load_rational_matrix(matrix)
    lat = load_lattice(lattice)
    s = load_rectset(seed_path) if seed_path else expanding_seed(a, lat, cap)[0]
    result = scb_complete(s, a, lat, depth, cap=cap, mult_depth=config.MULT_CHECK_DEPTH)
    doc = set_document(result.tile, scb_report(result, a),
                       matrix=matrix_to_json(a), lattice=matrix_to_json(lat.basis))
    _emit(doc, out)
    _render(result.tile, render, f"completion depth {depth}")
    return 0


@construct.command()
@click.option("--matrix", "matrix", required=True, help="Diagonal dilation with |l1| > 1 > |l2|.")
@lattice_option
@click.option("--steps", type=click.IntRange(min=1), default=config.ITERATION_STEPS, show_default=True)
@cap_option
@click.option("--bands", type=click.IntRange(min=1), default=config.SEED_BANDS, show_default=True)
@click.option("--omega", "omega_path", default=None, help="Finite multiplicative tile; defaults to the band tile.")
@click.option("--trace-dir", default=None, help="Also write the per-step trace as CSV into this folder.")
@out_option
@render_option
def speegle(matrix: str, lattice: Optional[str], steps: int, cap: int, bands: int, omega_path: Optional[str],
            trace_dir: Optional[str], out: Optional[str], render: Optional[str]) -> int:
    """Iterate lattice packings whose addresses fill a multiplicative tile."""
    a = load_rational_matrix(matrix)
    lat = load_lattice(lattice)
    omega = load_rectset(omega_path) if omega_path else finite_measure_mult_tile(a, bands)
    tracer = IterationTracer(trace_dir) if trace_dir else None
    trace, last = speegle_iterate(omega, a, lat, steps, cap=cap, tracer=tracer)
    report = speegle_report(last, trace, a, bands)
    doc = set_document(last if last is not None else RectSet.empty(), report,
                       iteration=trace, matrix=matrix_to_json(a), lattice=matrix_to_json(lat.basis))
    _emit(doc, out)
    if last is not None:
        _render(last, render, f"S_{len(trace.steps)}")
    return 0 if trace.status == "ok" else 1


def _from_document(option: Optional[str], document: Dict[str, Any], key: str) -> Optional[Any]:
    """Decoded option value, or the value stored under ``key`` in the set file."""
    if option is not None:
        return load_json_argument(option)
    return document.get(key)


@cli.command()
@click.option("--set", "set_path", required=True, help="Set JSON: {\"rects\": [{\"x\": [a,b], \"y\": [c,d]}]}.")
@matrix_option
@lattice_option
@click.option("--window", default=config.DEFAULT_WINDOW, show_default=True, help="x0,x1,y0,y1")
@depth_option
@click.option("--raster", type=click.IntRange(min=16), default=None, help="Cell-centre sampling at this resolution.")
@click.option("--gram", "gram", default=None, help="Index list [[n,[a1,a2]],...] or 'default'.")
@click.option("--exclude-axis", default=None, help="Leave |x| < eps out of the multiplicative coverage.")
@click.option("--require-cover", is_flag=True, help="Fail on a positive coverage defect.")
@out_option
def verify(set_path: str, matrix: Optional[str], lattice: Optional[str], window: str, depth: int,
           raster: Optional[int], gram: Optional[str], exclude_axis: Optional[str], require_cover: bool,
           out: Optional[str]) -> int:
    """Check packing and coverage of a set; matrix and lattice default to those stored in the set file."""
    document = load_json_argument(set_path)
    tile = parse_rectset(document)
    matrix_data = _from_document(matrix, document, "matrix")
    a = parse_matrix(matrix_data) if matrix_data is not None else None
    lat = parse_lattice(_from_document(lattice, document, "lattice"))
    box = parse_window(window)
    exclude = axis_strip(box, as_scalar(exclude_axis)) if exclude_axis else None

    result: Dict[str, Any] = {}
    if raster:
        result["translational"] = check_raster(tile, CheckKind.translational, box, raster, lattice=lat,
                                               exclude=None, require_cover=require_cover)
    else:
        result["translational"] = check_translational(tile, lat, box, require_cover=require_cover)
    if a is not None:
        if raster or not a.is_diagonal():
            result["multiplicative"] = check_raster(tile, CheckKind.multiplicative, box,
                                                    raster or config.DEFAULT_RESOLUTION, a=a, depth=depth,
                                                    exclude=exclude, require_cover=require_cover)
        else:
            result["multiplicative"] = check_multiplicative(tile, a, depth, box, exclude=exclude,
                                                            require_cover=require_cover)
    if gram is not None:
        if a is None:
            raise click.UsageError("--gram needs a dilation matrix")
        indices = default_indices(config.GRAM_LEVELS) if gram == "default" else load_gram_indices(gram)
        result["gram"] = gram_check(tile, a, indices, tolerance=config.GRAM_TOLERANCE, dps=config.GRAM_DPS)

    passed = all(report.passed for report in result.values())
    payload = {"passed": passed}
    payload.update({key: report.model_dump(mode="json") for key, report in result.items()})
    _emit(payload, out)
    return 0 if passed else 1


@cli.command()
@click.argument("beta")
@click.option("--count", type=click.IntRange(min=1), default=config.CF_COUNT, show_default=True)
@click.option("--period-search", type=click.IntRange(min=0), default=config.CF_PERIOD_SEARCH, show_default=True)
@click.option("--check", "check_n", type=click.IntRange(min=0), default=None,
              help="Run the approximation bound for convergent n.")
@click.option("--c", "c", default="1/10", show_default=True)
@click.option("--eps", "eps", default="1/2", show_default=True)
@out_option
def cf(beta: str, count: int, period_search: int, check_n: Optional[int], c: str, eps: str,
       out: Optional[str]) -> int:
    """Continued fraction of an exact scalar such as 'sqrt(3)'."""
    x = as_scalar(beta)
    expansion = cf_expand(x, max(count, (check_n or 0) + 1), period_search=period_search)
    shown = min(count, len(expansion.partial_quotients))
    report = ContinuedFractionReport(
        beta=str(x),
        partial_quotients=expansion.partial_quotients[:shown],
        convergents=expansion.convergent_strings()[:shown],
        M=expansion.M[:shown],
        terminated=expansion.terminated,
        period_start=expansion.period[0] if expansion.period else None,
        period_length=expansion.period[1] if expansion.period else None,
    )
    if check_n is not None:
        report.check = approx_bound_check(x, check_n, c, eps, expansion=expansion)
    _emit(report, out)
    return 0 if report.check is None or report.check.passed else 1


@cli.command()
@click.option("--set", "set_path", required=True)
@click.option("--out", "out", required=True, help="Picture path ending in .svg or .pgm.")
@click.option("--window", default=None, help="x0,x1,y0,y1; defaults to the bounding box.")
@click.option("--resolution", type=click.IntRange(min=1), default=config.DEFAULT_RESOLUTION, show_default=True)
@click.option("--title", default="")
def render(set_path: str, out: str, window: Optional[str], resolution: int, title: str) -> int:
    """Draw a set for inspection."""
    s = load_rectset(set_path)
    render_set(s, out, window=parse_window(window) if window else None, title=title, resolution=resolution)
    _emit({"path": out, "boxes": len(s), "measure": str(s.measure())}, None)
    return 0


@cli.command()
@click.option("--matrix", "matrix", required=True)
@lattice_option
@click.option("--depth", type=click.IntRange(min=1), default=config.DEFAULT_DEPTH, show_default=True)
@cap_option
@click.option("--window", default=config.DEFAULT_WINDOW, show_default=True)
@click.option("--bands", type=click.IntRange(min=1), default=config.SEED_BANDS, show_default=True)
@click.option("--steps", type=click.IntRange(min=1), default=config.ITERATION_STEPS, show_default=True)
@click.option("--exclude-axis", default=None)
@click.option("--results-dir", default=None, help="Keep the report and iteration trace here.")
@click.option("--save", is_flag=True, help="Keep the report and trace in the configured results folder.")
@out_option
def pipeline(matrix: str, lattice: Optional[str], depth: int, cap: int, window: str, bands: int, steps: int,
             exclude_axis: Optional[str], results_dir: Optional[str], save: bool, out: Optional[str]) -> int:
    """Classify, build in the eigenframe and verify, in one run."""
    if save and not results_dir:
        results_dir = config.RESULTS_DIR
    a = load_rational_matrix(matrix)
    lat = load_lattice(lattice)
    box = parse_window(window)
    run_config = RunConfig(depth=depth, cap=cap, window=box.as_strings(), bands=bands, steps=steps,
                           exclude_axis=exclude_axis, results_dir=results_dir)
    report = TilingOrchestrator(results_dir).run(a, lat, run_config)
    _emit(report, out)
    return PIPELINE_EXIT_CODES.get(report.status, 2)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and map failures to exit codes: 2 bad input, 3 unsupported, 1 no tile or failed check."""
    try:
        code = cli.main(args=list(argv) if argv is not None else None, prog_name="tilekit",
                        standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        return 1
    except CapExceeded as e:
        click.echo(f"error: {e}", err=True)
        return 1
    except (NoRectangularDomain, MixedRadicals, NotDiagonalizable) as e:
        click.echo(f"unsupported: {e}", err=True)
        return 3
    except InvariantViolation as e:
        logger.error(f"❌ internal check failed: {e}")
        return 1
    except (TilekitError, ValueError) as e:
        click.echo(f"invalid input: {e}", err=True)
        return 2
    return code if isinstance(code, int) else 0


if __name__ == "__main__":
    sys.exit(main())
