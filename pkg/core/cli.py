# core/cli.py
"""
Command-line entry point. Reports go to stdout (or --out); logs go to stderr
and to logs/<SUBCOMMAND>-<timestamp>/run.log.

Exit codes: 0 pass, 1 mathematical failure or invalid input structure,
2 usage, I/O, format or resource-limit refusal.
"""

import argparse
import logging
import sys
import traceback
from datetime import datetime
from pathlib import Path
from typing import List, Optional

from .config import (
    Caps,
    default_jmax,
    default_log_dir,
    default_nmax,
    default_seed,
    default_workers,
)
from .errors import FormatError, HochlatError, ResourceLimit
from .formats import dump_table, dumps, load_bimodule, load_morphism, load_table, table_to_dict
from .homology import cohomology_dims, homology_dims
from .homotopy_free import HomotopyFree, check_homotopy
from .natural_splitting import (
    SigmaTower,
    build_tower,
    sigma_operator_norm,
    verify_inductive_hypothesis,
    verify_naturality,
    verify_splitting,
)
from .semilattice import chain_semilattice, free_unital_semilattice, unitize
from .suite import SuiteRunner
from .tower_store import TowerStore

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def handle_exception(exc_type, exc_value, exc_traceback):
    """Logs unhandled exceptions to the root logger."""
    root = logging.getLogger()
    if root.handlers:
        tb_text = "".join(traceback.format_exception(exc_type, exc_value, exc_traceback))
        root.critical(f"Unhandled exception:\n{tb_text}")
    sys.__excepthook__(exc_type, exc_value, exc_traceback)


def setup_logging(mode: str, log_dir: Optional[Path] = None, verbose: bool = False) -> Path:
    """Configures the root logger for one run; returns the run's log directory."""
    run_timestamp = datetime.now().strftime("%Y%m%d-%H%M%S")
    run_dir = Path(log_dir or default_log_dir()) / f"{mode.upper()}-{run_timestamp}"
    run_dir.mkdir(parents=True, exist_ok=True)

    root = logging.getLogger()
    root.setLevel(logging.DEBUG if verbose else logging.INFO)
    if root.hasHandlers():
        root.handlers.clear()

    formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")

    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(formatter)
    root.addHandler(stream_handler)

    file_handler = logging.FileHandler(run_dir / "run.log", encoding="utf-8")
    file_handler.setFormatter(formatter)
    root.addHandler(file_handler)

    logging.getLogger("asyncio").setLevel(logging.WARNING)
    return run_dir


# --- Output -------------------------------------------------------------------


def _emit(args, data: dict, text: str) -> None:
    body = dumps(data) if args.format == "json" else text.rstrip("\n") + "\n"
    out = getattr(args, "out", None)
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(body, encoding="utf-8")
        logger.info(f"Report written to {path}")
    else:
        sys.stdout.write(body)


def _emit_table(args, table) -> None:
    if args.out:
        dump_table(table, args.out)
        logger.info(f"Wrote {table.describe()} to {args.out}")
    else:
        sys.stdout.write(dumps(table_to_dict(table)))


def _caps(args) -> Caps:
    env = Caps.from_env()
    return Caps(
        max_elements=args.cap_elements if args.cap_elements is not None else env.max_elements,
        max_dim=args.cap_dim if args.cap_dim is not None else env.max_dim,
    )


def _witness(exc: Exception):
    for attr in ("triple", "pair", "witness", "index"):
        value = getattr(exc, attr, None)
        if value is not None:
            return list(value) if isinstance(value, tuple) else value
    return None


def _format_dims(report) -> str:
    sym = "H_" if report.kind == "homology" else "H^"
    lines = [f"{report.kind} of {report.table} with coefficients {report.coefficients}"]
    if not report.unit_linked:
        lines.append("  (coefficients are not unit-linked)")
    for d in report.degrees:
        lines.append(
            f"  n={d.n}: dim C={d.dim_c} rank_in={d.rank_in} dim ker={d.dim_ker} dim {sym}{d.n}={d.dim_h}"
        )
    return "\n".join(lines)


def _load_tower(args, caps: Caps) -> SigmaTower:
    store = TowerStore(args.tower) if getattr(args, "tower", None) else None
    if store is not None and store.exists():
        return store.load(args.jmax)
    tower = build_tower(args.jmax, caps)
    if store is not None:
        store.save(tower)
    return tower


# --- Subcommands --------------------------------------------------------------


def cmd_validate(args, caps: Caps) -> int:
    try:
        table = load_table(args.table, caps)
    except (FormatError, ResourceLimit):
        raise
    except HochlatError as e:
        diagnostic = {
            "status": "invalid",
            "error": type(e).__name__,
            "message": str(e),
            "witness": _witness(e),
        }
        _emit(args, diagnostic, f"invalid: {type(e).__name__}: {e}")
        return EXIT_FAILURE
    data = {
        "status": "valid",
        "size": table.size,
        "unit": table.unit,
        "commutative": table.commutative,
        "idempotent": table.idempotent,
        "kind": table.describe(),
    }
    _emit(args, data, f"valid: {table.describe()}")
    return EXIT_OK


def cmd_free(args, caps: Caps) -> int:
    _emit_table(args, free_unital_semilattice(args.k, caps))
    return EXIT_OK


def cmd_chain(args, caps: Caps) -> int:
    _emit_table(args, chain_semilattice(args.n, caps))
    return EXIT_OK


def cmd_unitize(args, caps: Caps) -> int:
    _emit_table(args, unitize(load_table(args.table, caps)))
    return EXIT_OK


def _coefficients(args, table):
    if args.coefficients in ("A", "Adual"):
        return args.coefficients
    return load_bimodule(args.coefficients, table)


def cmd_homology(args, caps: Caps) -> int:
    table = load_table(args.table, caps)
    report = homology_dims(table, args.nmax, _coefficients(args, table), caps)
    _emit(args, report.to_dict(), _format_dims(report))
    return EXIT_OK


def cmd_cohomology(args, caps: Caps) -> int:
    table = load_table(args.table, caps)
    report = cohomology_dims(table, args.nmax, _coefficients(args, table), caps)
    _emit(args, report.to_dict(), _format_dims(report))
    return EXIT_OK


def cmd_homotopy_check(args, caps: Caps) -> int:
    records = []
    for k in args.k:
        homotopy = HomotopyFree(k, caps)
        for n in args.n:
            records.append(check_homotopy(homotopy, n))
    passed = all(r.identity_verified and r.within_bound for r in records)
    data = {"passed": passed, "records": [r.to_dict() for r in records]}
    lines = [
        f"k={r.k} n={r.n}: identity {'ok' if r.identity_verified else 'FAILED'}, "
        f"||s_n|| = {r.exact_norm} (bound {r.bound})"
        for r in records
    ]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if passed else EXIT_FAILURE


def cmd_sigma_build(args, caps: Caps) -> int:
    tower = build_tower(args.jmax, caps)
    TowerStore(args.out).save(tower)
    for j, norm in tower.norms().items():
        logger.info(f"||w[{j}]|| = {norm} ({len(tower.w[j])} terms)")
    return EXIT_OK


def cmd_sigma_verify(args, caps: Caps) -> int:
    table = load_table(args.table, caps)
    tower = _load_tower(args, caps)
    splitting = verify_splitting(tower, table)
    hypothesis = verify_inductive_hypothesis(tower, table)
    norms = [sigma_operator_norm(tower, table, j) for j in range(1, tower.max_degree + 1)]
    passed = splitting.passed and hypothesis.passed and all(r.within_bound for r in norms)
    data = {
        "passed": passed,
        "splitting": splitting.to_dict(),
        "inductive_hypothesis": hypothesis.to_dict(),
        "norms": [r.to_dict() for r in norms],
    }
    lines = [f"splitting on {table.describe()}: {'pass' if passed else 'FAIL'}"]
    for d in splitting.degrees:
        lines.append(f"  j={d.degree}: {d.checked} tensors, {'ok' if d.passed else f'fails at {d.witness}'}")
    for r in norms:
        lines.append(f"  ||sigma_{r.degree}|| = {r.exact_norm} <= ||w[{r.degree}]|| = {r.w_norm}")
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if passed else EXIT_FAILURE


def cmd_naturality_check(args, caps: Caps) -> int:
    theta = load_morphism(args.morphism, caps)
    tower = _load_tower(args, caps)
    report = verify_naturality(tower, theta)
    lines = [f"naturality {report.source} -> {report.target}: {'pass' if report.passed else 'FAIL'}"]
    for d in report.degrees:
        lines.append(f"  j={d.degree}: {d.checked} tensors, {'ok' if d.passed else f'fails at {d.witness}'}")
    _emit(args, report.to_dict(), "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAILURE


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"degree must be >= 1, got {value}")
    return value


def _parse_sizes(text: str) -> List[int]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes must be a comma-separated list of integers, got {text!r}")


def cmd_suite(args, caps: Caps) -> int:
    tower = None
    if args.tower and TowerStore(args.tower).exists():
        tower = TowerStore(args.tower).load(args.jmax)
    runner = SuiteRunner(
        sizes=args.sizes,
        jmax=args.jmax,
        nmax=args.nmax,
        seed=args.seed,
        named=not args.no_named,
        workers=args.workers,
        caps=caps,
        tower=tower,
    )
    report = runner.run()
    summary = report.summary()
    data = {
        "config": {"seed": args.seed, "sizes": report.sizes, "jmax": args.jmax, "nmax": args.nmax},
        "summary": summary,
        "instances": [i.to_dict() for i in report.instances],
    }
    lines = [f"suite: {summary['passed']}/{summary['instances']} passed ({summary['status']})"]
    lines += [f"  {note}" for note in summary["controls"]]
    lines += [f"  FAILED {i.name}: {i.detail}" for i in report.instances if not i.passed]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAILURE


# --- Parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--log-dir", type=Path, default=None)
    common.add_argument("--cap-elements", type=int, default=None)
    common.add_argument("--cap-dim", type=int, default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="hochlat", description="Hochschild (co)homology of semilattice convolution algebras."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a semigroup table file")
    p.add_argument("table")
    p.add_argument("--out")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("free", parents=[common], help="write the free unital semilattice on k generators")
    p.add_argument("k", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_free)

    p = sub.add_parser("chain", parents=[common], help="write the n-element chain under max")
    p.add_argument("n", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("unitize", parents=[common], help="adjoin an identity to a table")
    p.add_argument("table")
    p.add_argument("--out")
    p.set_defaults(func=cmd_unitize)

    for name, func, default_coeff in (
        ("homology", cmd_homology, "A"),
        ("cohomology", cmd_cohomology, "Adual"),
    ):
        p = sub.add_parser(name, parents=[common], help=f"exact {name} dimensions")
        p.add_argument("--table", required=True)
        p.add_argument("--coefficients", default=default_coeff, help="A, Adual or a bimodule file")
        p.add_argument("--nmax", type=_positive_int, default=default_nmax())
        p.add_argument("--out")
        p.set_defaults(func=func)

    p = sub.add_parser("homotopy-check", parents=[common], help="verify s_n on free semilattices")
    p.add_argument("--k", type=int, nargs="+", default=[1, 2])
    p.add_argument("--n", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--out")
    p.set_defaults(func=cmd_homotopy_check)

    p = sub.add_parser("sigma-build", parents=[common], help="build and store the splitting tower")
    p.add_argument("--jmax", type=_positive_int, default=default_jmax())
    p.add_argument("--out", required=True, help="tower directory")
    p.set_defaults(func=cmd_sigma_build)

    p = sub.add_parser("sigma-verify", parents=[common], help="verify the natural splitting on a table")
    p.add_argument("--table", required=True)
    p.add_argument("--jmax", type=_positive_int, default=default_jmax())
    p.add_argument("--tower", help="tower directory; built in-run when missing")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sigma_verify)

    p = sub.add_parser("naturality-check", parents=[common], help="verify naturality along a morphism")
    p.add_argument("--morphism", required=True)
    p.add_argument("--jmax", type=_positive_int, default=default_jmax())
    p.add_argument("--tower", help="tower directory; built in-run when missing")
    p.add_argument("--out")
    p.set_defaults(func=cmd_naturality_check)

    p = sub.add_parser("suite", parents=[common], help="run the acceptance suite")
    p.add_argument("--seed", type=int, default=default_seed())
    p.add_argument("--sizes", type=_parse_sizes, default=[1, 2, 3, 4])
    p.add_argument("--jmax", type=_positive_int, default=default_jmax())
    p.add_argument("--nmax", type=_positive_int, default=default_nmax())
    p.add_argument("--workers", type=int, default=default_workers())
    p.add_argument("--no-named", action="store_true", help="skip named families, control and morphisms")
    p.add_argument("--tower", help="reuse a stored tower")
    p.add_argument("--out")
    p.set_defaults(func=cmd_suite)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    log_path = setup_logging(args.command.replace("-", "_"), args.log_dir, args.verbose)
    sys.excepthook = handle_exception
    logger.info(f"🚀 hochlat {args.command}; logs for this run are in: {log_path}")

    try:
        caps = _caps(args)
        code = args.func(args, caps)
    except (ResourceLimit, FormatError, ValueError) as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return EXIT_USAGE
    except HochlatError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return EXIT_FAILURE
    except OSError as e:
        logger.error(f"❌ I/O error: {e}")
        return EXIT_USAGE
    except KeyboardInterrupt:
        logger.info("🛑 Stopped by user.")
        return EXIT_USAGE
    logger.info("✅ Done." if code == EXIT_OK else f"⚠️ Finished with exit code {code}.")
    return code
