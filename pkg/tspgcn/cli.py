import argparse
import dataclasses
import logging
import os
import sys

from tspgcn.data import (
    DEFAULT_SPLIT_SIZES,
    SOLVERS,
    SPLITS,
    Dataset,
    dataset_stats,
    generate_dataset,
    read_dataset,
    write_dataset,
    write_stats_csv,
)
from tspgcn.decode import DECODERS, decode_batch
from tspgcn.errors import InvalidArgumentError, TspError
from tspgcn.evalbench import (
    SWEEP_AXES,
    benchmark,
    export_figure,
    sweep,
    write_report_csv,
    write_sweep_csv,
)
from tspgcn.evalbench.benchmark import report_header
from tspgcn.model import GcnModel
from tspgcn.oracle import HELD_KARP_DEFAULT_CAP
from tspgcn.train import fit, load_train_config

logger = logging.getLogger(__name__)

HOLDOUT_FRACTION = 0.1


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so run() owns the exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# --- Command Handlers ---


def _existing_file(path, what):
    path = os.path.abspath(path)
    if not os.path.isfile(path):
        raise FileNotFoundError(f"{what} not found at {path}")
    return path


def handle_generate(args):
    """Handler for the 'generate' command."""
    if args.count is None:
        args.count = DEFAULT_SPLIT_SIZES[args.split]
    print(f"\n🚀 Generating {args.count} TSP{args.n} instances (seed={args.seed}, solver={args.solver})...")
    dataset = generate_dataset(
        n=args.n,
        count=args.count,
        seed=args.seed,
        solver=args.solver,
        split=args.split,
        max_exact_n=args.max_exact,
        threads=args.threads,
        quiet=args.quiet,
    )
    out = os.path.abspath(args.out)
    write_dataset(dataset, out)
    stats = dataset_stats(dataset)
    print(f"✅ Mean tour length {stats.mean_len:.4f} (std {stats.std_len:.4f}) over {stats.count} instances")
    print(f"\n✅ Dataset generation complete. Results saved to {out}")
    return 0


def handle_stats(args):
    """Handler for the 'stats' command."""
    print("\n🚀 Computing dataset statistics...")
    rows = []
    for path in args.data:
        dataset = read_dataset(_existing_file(path, "Dataset"), split=args.split)
        rows.append(dataset_stats(dataset))
    if args.out:
        write_stats_csv(rows, os.path.abspath(args.out))
        print(f"\n✅ Statistics saved to {os.path.abspath(args.out)}")
    for row in rows:
        print(",".join(str(v) for v in row.to_row()))
    return 0


def handle_train(args):
    """Handler for the 'train' command."""
    print("\n🚀 Training graph ConvNet...")
    train_config, model_config = load_train_config(_existing_file(args.config, "Config file"))
    if args.seed is not None:
        train_config = dataclasses.replace(train_config, seed=args.seed)
    data = read_dataset(_existing_file(args.data, "Training data"), split="train")
    if args.val_data:
        train_set = data
        val_set = read_dataset(_existing_file(args.val_data, "Validation data"), split="val")
    else:
        holdout = max(1, int(len(data) * HOLDOUT_FRACTION))
        if holdout >= len(data):
            raise InvalidArgumentError(f"{args.data}: too few records ({len(data)}) to hold out a validation split")
        train_set = Dataset("train", data.n, data.records[:-holdout], exact=data.exact)
        val_set = Dataset("val", data.n, data.records[-holdout:], exact=data.exact)
        print(f"✅ Holding out the last {holdout} records for validation")

    model = GcnModel(model_config, seed=train_config.seed)
    print(f"✅ Model has {model.store.num_parameters()} parameters; training for {train_config.epochs} epochs")
    out = os.path.abspath(args.out_checkpoint)
    history = fit(
        model,
        train_set,
        val_set,
        train_config,
        out,
        log_path=os.path.abspath(args.log) if args.log else None,
        threads=args.threads,
        quiet=args.quiet,
    )
    validated = [row for row in history if row["val_loss"] == row["val_loss"]]
    if validated:
        best = min(validated, key=lambda row: row["val_loss"])
        print(f"✅ Best validation loss {best['val_loss']:.4f} (gap {best['val_gap']:.2f}%) at epoch {best['epoch']}")
    print(f"\n✅ Training complete. Checkpoint saved to {out}")
    return 0


def handle_solve(args):
    """Handler for the 'solve' command."""
    print(f"\n🚀 Solving with decoder {args.decoder} (beam width {args.beam_width})...")
    model = GcnModel.load(_existing_file(args.checkpoint, "Checkpoint"))
    data = read_dataset(_existing_file(args.data, "Dataset"))
    heatmaps = model.heatmaps(data.instances)
    tours = decode_batch(
        heatmaps,
        args.decoder,
        args.beam_width,
        instances=data.instances,
        symmetrize=args.symmetrize,
        threads=args.threads,
        quiet=args.quiet,
    )
    solved = Dataset(data.split, data.n, tuple(zip(data.instances, tours)), exact=False)
    out = os.path.abspath(args.out)
    write_dataset(solved, out)
    print(f"\n✅ Decoding complete. Tours saved to {out}")
    return 0


def handle_benchmark(args):
    """Handler for the 'benchmark' command."""
    data = read_dataset(_existing_file(args.data, "Dataset"), max_exact_n=args.max_exact)
    model = None
    if any(method.startswith("model:") for method in args.method):
        if not args.checkpoint:
            raise InvalidArgumentError("model methods need --checkpoint")
        model = GcnModel.load(_existing_file(args.checkpoint, "Checkpoint"))
    reports = []
    for method in args.method:
        print(f"\n🚀 Benchmarking {method} on {len(data)} TSP{data.n} instances ({args.threads} threads)...")
        report = benchmark(
            method,
            data,
            threads=args.threads,
            model=model,
            seed=args.seed,
            max_exact_n=args.max_exact,
            symmetrize=args.symmetrize,
            quiet=args.quiet,
        )
        reports.append(report)
        print(f"✅ {method}: mean length {report.mean_len:.4f}, mean gap {report.mean_gap_pct:.2f}% ({report.reference})")
    print(",".join(report_header(reports)))
    for report in reports:
        print(",".join(str(v) for v in report.to_row()))
    if args.out:
        write_report_csv(reports, os.path.abspath(args.out))
        print(f"\n✅ Benchmark complete. Results saved to {os.path.abspath(args.out)}")
    return 0


def _parse_values(raw, axis):
    try:
        return [int(v) for v in raw.split(",") if v.strip()]
    except ValueError:
        raise InvalidArgumentError(f"--values for axis {axis} must be comma-separated integers, got {raw!r}") from None


def handle_sweep(args):
    """Handler for the 'sweep' command."""
    values = _parse_values(args.values, args.axis)
    print(f"\n🚀 Sweeping {args.axis} over {values}...")
    data = read_dataset(_existing_file(args.data, "Dataset"))
    if args.axis == "beam_width":
        _existing_file(args.checkpoint, "Checkpoint")
    rows = sweep(
        args.axis,
        values,
        data,
        args.checkpoint,
        decoder=args.decoder,
        beam_width=args.beam_width,
        threads=args.threads,
        quiet=args.quiet,
    )
    for axis, value, report in rows:
        print(f"✅ {axis}={value}: mean gap {report.mean_gap_pct:.2f}%")
    if args.out:
        write_sweep_csv(rows, os.path.abspath(args.out))
        print(f"\n✅ Sweep complete. Results saved to {os.path.abspath(args.out)}")
    return 0


def handle_render(args):
    """Handler for the 'render' command."""
    print(f"\n🚀 Rendering instance {args.index}...")
    model = GcnModel.load(_existing_file(args.checkpoint, "Checkpoint"))
    data = read_dataset(_existing_file(args.data, "Dataset"))
    if not 0 <= args.index < len(data):
        raise InvalidArgumentError(f"--index {args.index} outside [0, {len(data) - 1}]")
    instance, opt_tour = data.records[args.index]
    heatmaps = model.heatmaps([instance])
    (pred_tour,) = decode_batch(heatmaps, args.decoder, args.beam_width, instances=[instance])
    out = export_figure(instance, heatmaps[0], pred_tour, opt_tour, os.path.abspath(args.out))
    print(f"\n✅ Figure saved to {out}")
    return 0


# --- Main Argparse Setup ---


def _add_threads(parser):
    parser.add_argument(
        "--threads",
        type=int,
        default=os.cpu_count() or 1,
        help="Worker pool size (default: number of logical cores).",
    )


def _add_decoder(parser):
    parser.add_argument("--decoder", choices=DECODERS, default="greedy", help="Heat-map decoder (default: greedy).")
    parser.add_argument("--beam-width", type=int, default=1, help="Beam width for beam decoders (default: 1).")


def build_parser():
    parser = ArgumentParser(
        prog="tsp_bench.py",
        description="Graph ConvNet TSP toolkit: datasets, training, decoding and benchmarks.",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging.")
    parser.add_argument("-q", "--quiet", action="store_true", help="Hide progress bars.")
    subparsers = parser.add_subparsers(
        dest="command",
        required=True,
        parser_class=ArgumentParser,
        help="generate, stats, train, solve, benchmark, sweep, render",
    )

    # 'generate' command
    parser_generate = subparsers.add_parser("generate", help="Generate random instances paired with reference tours.")
    parser_generate.add_argument("--n", type=int, required=True, help="Nodes per instance.")
    parser_generate.add_argument("--count", type=int, help="Number of instances (default: 10000 train, 1000 val/test).")
    parser_generate.add_argument("--seed", type=int, default=1, help="Generation seed (default: 1).")
    parser_generate.add_argument("-o", "--out", default="dataset.txt", help="Output dataset path (default: dataset.txt).")
    parser_generate.add_argument("--solver", choices=SOLVERS, default="held_karp", help="Reference solver (default: held_karp).")
    parser_generate.add_argument("--split", choices=SPLITS, default="train", help="Split label (default: train).")
    parser_generate.add_argument(
        "--max-exact",
        type=int,
        default=HELD_KARP_DEFAULT_CAP,
        help=f"Largest n Held-Karp accepts (default: {HELD_KARP_DEFAULT_CAP}).",
    )
    _add_threads(parser_generate)
    parser_generate.set_defaults(func=handle_generate)

    # 'stats' command
    parser_stats = subparsers.add_parser("stats", help="Mean/std tour length of dataset files.")
    parser_stats.add_argument("--data", nargs="+", required=True, help="Dataset files.")
    parser_stats.add_argument("--split", choices=SPLITS, default="test", help="Split label for the rows (default: test).")
    parser_stats.add_argument("-o", "--out", help="Optional CSV output path.")
    parser_stats.set_defaults(func=handle_stats)

    # 'train' command
    parser_train = subparsers.add_parser("train", help="Train the graph ConvNet on a dataset.")
    parser_train.add_argument("--config", required=True, help="Training config (key=value or .json5).")
    parser_train.add_argument("--data", required=True, help="Training dataset.")
    parser_train.add_argument("--out-checkpoint", required=True, help="Path of the best checkpoint.")
    parser_train.add_argument("--val-data", help="Validation dataset (default: last 10%% of --data).")
    parser_train.add_argument("--log", help="Optional CSV training log.")
    parser_train.add_argument("--seed", type=int, help="Override the config seed.")
    _add_threads(parser_train)
    parser_train.set_defaults(func=handle_train)

    # 'solve' command
    parser_solve = subparsers.add_parser("solve", help="Decode tours for a dataset with a trained model.")
    parser_solve.add_argument("--checkpoint", required=True, help="Model checkpoint.")
    parser_solve.add_argument("--data", required=True, help="Dataset to solve.")
    _add_decoder(parser_solve)
    parser_solve.add_argument("-o", "--out", required=True, help="Output path, dataset text format.")
    parser_solve.add_argument("--symmetrize", action="store_true", help="Average p_ij and p_ji before decoding.")
    _add_threads(parser_solve)
    parser_solve.set_defaults(func=handle_solve)

    # 'benchmark' command
    parser_benchmark = subparsers.add_parser("benchmark", help="Compare solvers and decoders on a dataset.")
    parser_benchmark.add_argument(
        "--method",
        action="append",
        required=True,
        help="exact, brute, nearest_neighbor, {nearest,random,farthest}_insertion[+2opt],\n"
        "model:greedy, model:beam:<b>, model:beam-shortest:<b>. Repeatable.",
    )
    parser_benchmark.add_argument("--data", required=True, help="Dataset to benchmark on.")
    parser_benchmark.add_argument("-o", "--out", help="Optional CSV report path.")
    parser_benchmark.add_argument("--checkpoint", help="Model checkpoint for model:* methods.")
    parser_benchmark.add_argument(
        "--max-exact",
        type=int,
        default=HELD_KARP_DEFAULT_CAP,
        help=f"Largest n the exact method accepts (default: {HELD_KARP_DEFAULT_CAP}).",
    )
    parser_benchmark.add_argument("--seed", type=int, default=0, help="Seed for random insertion (default: 0).")
    parser_benchmark.add_argument("--symmetrize", action="store_true", help="Average p_ij and p_ji before decoding.")
    _add_threads(parser_benchmark)
    parser_benchmark.set_defaults(func=handle_benchmark)

    # 'sweep' command
    parser_sweep = subparsers.add_parser("sweep", help="Benchmark a model across beam widths or capacities.")
    parser_sweep.add_argument("--axis", choices=SWEEP_AXES, required=True, help="Swept quantity.")
    parser_sweep.add_argument("--values", required=True, help="Comma-separated values, e.g. 1,2,4,8.")
    parser_sweep.add_argument(
        "--checkpoint",
        required=True,
        help="Model checkpoint; for l_conv/h a template containing {value}.",
    )
    parser_sweep.add_argument("--data", required=True, help="Dataset to benchmark on.")
    parser_sweep.add_argument("--decoder", choices=DECODERS, default="beam", help="Decoder (default: beam).")
    parser_sweep.add_argument("--beam-width", type=int, default=1, help="Beam width for capacity sweeps (default: 1).")
    parser_sweep.add_argument("-o", "--out", help="Optional CSV output path.")
    _add_threads(parser_sweep)
    parser_sweep.set_defaults(func=handle_sweep)

    # 'render' command
    parser_render = subparsers.add_parser("render", help="Export an SVG of one instance, its heat-map and tours.")
    parser_render.add_argument("--checkpoint", required=True, help="Model checkpoint.")
    parser_render.add_argument("--data", required=True, help="Dataset file.")
    parser_render.add_argument("--index", type=int, default=0, help="Record index (default: 0).")
    _add_decoder(parser_render)
    parser_render.add_argument("-o", "--out", default="figure.svg", help="SVG output path (default: figure.svg).")
    parser_render.set_defaults(func=handle_render)

    return parser


def run(argv=None):
    """Parse argv and run one subcommand; returns the process exit code."""
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        parser.print_help(sys.stderr)
        return 1
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"❌ {e}", file=sys.stderr)
        return 1
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else 0

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    if getattr(args, "threads", 1) < 1:
        print("❌ Error: --threads must be at least 1", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (TspError, OSError) as e:
        logger.debug("command %s failed", args.command, exc_info=True)
        print(f"❌ Error: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())
