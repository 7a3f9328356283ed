#!/usr/bin/env python3
"""
Faultline - fault-tolerant resource estimates for quantum chemistry

Usage:
    python main.py factorize --tensor h.bin --one-body t.txt --eps 1e-3
    python main.py estimate --objective vn --eps 1e-3
    python main.py overhead --counts table --regime both --interleave 1,10,100
    python main.py sweep --interleave-range 1:1000:13 --name EC --basis cc-pVDZ
    python main.py verify --suite all --seed 42
    python main.py report faultline_output/overhead.csv --format table
    python main.py synth --vector 0.6,0.8 --method tree
    python main.py run-program program.txt --seed 7
    python main.py config --show
"""

__version__ = "1.0.0"

import functools
import sys
import traceback
from pathlib import Path

import click
import numpy as np
import pandas as pd
import yaml

from modules.config_manager import DEFAULT_CONFIG, ConfigManager, RunConfig, parse_value
from modules.cost_model import total_cost, volume_breakdown
from modules.exceptions import FaultlineError, ValidationError, VerificationError
from modules.factorizer import factorize as factorize_tensor
from modules.factorizer import reconstruction_error
from modules.ft_overhead import (
    REGIMES,
    estimate_overhead,
    magic_state_budget,
    msd_ratio_grid,
    parallel_footprint,
    parallel_runtime,
    tradeoff_curve,
)
from modules.gizens import givens_ladder, gizens_tree, format_circuit, verify_basis_change, write_circuit
from modules.molecule_table import ingest, read_counts
from modules.ppm_engine import (
    compile_program,
    execute,
    format_record,
    magic_register_count,
    read_program,
    rotation_paulis,
    schedule_layers,
    speedup_estimate,
    t_count,
)
from modules.report_writer import (
    FORMATS,
    curve_frame,
    estimate_frame,
    overhead_frame,
    overhead_row,
    read_report,
    render,
    write_csv,
)
from modules.tensor_io import read_one_body, read_tensor
from modules.utils import banner, format_sig, set_quiet, status, timer, warn
from modules.verify_suites import format_results, run_suites


class FaultlineGroup(click.Group):
    """Command group whose bad-option errors exit with the validation code"""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = 1
            raise


def handle_errors(command):
    """Map Faultline errors onto exit codes the way every command reports them"""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except VerificationError as e:
            print(f"\n❌ Verification failed: {e}")
            sys.exit(e.exit_code)
        except (FaultlineError, FileNotFoundError) as e:
            print(f"\n❌ {e}")
            sys.exit(getattr(e, "exit_code", 1))
        except yaml.YAMLError as e:
            print(f"\n❌ Invalid configuration file: {e}")
            sys.exit(1)
        except KeyboardInterrupt:
            print("\n\n⚠️  Interrupted by user.")
            sys.exit(1)
        except Exception as e:
            print(f"\n❌ Error: {e}")
            traceback.print_exc()
            sys.exit(1)

    return wrapper


def load_config(ctx: click.Context) -> ConfigManager:
    """Load and report the configuration named by --config / FAULTLINE_CONFIG"""
    status("📋 Loading configuration...")
    manager = ConfigManager(ctx.obj.get("config_path"))
    manager.load()
    if manager.config_path.exists():
        status(f"✅ Configuration loaded from {manager.config_path}")
    else:
        status("ℹ️  No configuration file found, using built-in defaults")
    for note in manager.warnings():
        warn(note)
    return manager


def parse_interleave(text: str) -> list[int]:
    """'1,10,100' -> [1, 10, 100]"""
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise ValidationError(f"--interleave expects comma-separated integers, got '{text}'") from e
    if not values:
        raise ValidationError("--interleave needs at least one value")
    return values


def parse_range(text: str) -> list[int]:
    """'A:B:steps' -> log-spaced unique integers from A to B"""
    parts = text.split(":")
    try:
        start, stop, steps = (int(p) for p in parts)
    except ValueError as e:
        raise ValidationError(f"--interleave-range expects A:B:steps, got '{text}'") from e
    if start < 1 or stop < start or steps < 1:
        raise ValidationError(f"--interleave-range needs 1 <= A <= B and steps >= 1, got '{text}'")
    values = np.unique(np.rint(np.geomspace(start, stop, steps)).astype(int))
    return [int(v) for v in values]


def parse_vector(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise ValidationError(f"--vector expects comma-separated numbers, got '{text}'") from e


def regime_names(values: tuple[str, ...], manager: ConfigManager) -> list[str]:
    """Expand --regime values; 'both' means the high and moderate presets"""
    if not values:
        return [manager.get("overhead.regime", "moderate")]
    names = []
    for value in values:
        for name in (["high", "moderate"] if value == "both" else [value]):
            if name not in names:
                names.append(name)
    return names


def logical_counts(run: RunConfig, source: str, table) -> list[tuple]:
    """(instance, n_T, n_L) per molecule row from the published counts or the cost model"""
    rows = []
    if source == "table":
        counts = read_counts(run.counts)
        for inst in table:
            entry = counts.get((inst.name, inst.basis))
            if entry is None:
                raise ValidationError(f"{inst.label} has no entry in {run.counts}")
            rows.append((inst, entry.n_T, entry.n_L))
    elif source == "model":
        for inst in table:
            report = total_cost(inst, run.eps_total, "vn", run.constants, run.pe_constant)
            rows.append((inst, report.n_T, report.n_L))
    else:
        raise ValidationError(f"--counts must be 'table' or 'model', got '{source}'")
    return rows


@click.group(cls=FaultlineGroup)
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None,
              help="Config file (defaults to $FAULTLINE_CONFIG or ~/.faultline/config.yaml)")
@click.option("--quiet", "-q", is_flag=True, help="Print only tables and errors")
@click.version_option(__version__, prog_name="faultline")
@click.pass_context
def cli(ctx, config_path, quiet):
    """🧮 Faultline - fault-tolerant resource estimates for quantum chemistry"""
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config_path
    set_quiet(quiet)


@cli.command()
@click.option("--tensor", "tensor_path", required=True, type=click.Path(path_type=Path),
              help="Two-electron tensor (text, or binary for .bin/.dat)")
@click.option("--one-body", "one_body_path", type=click.Path(path_type=Path), default=None,
              help="One-body matrix (same formats)")
@click.option("--eps", "eps_trunc", type=float, default=1e-3, show_default=True,
              help="Truncation budget in Hartree")
@click.option("--name", default="molecule", show_default=True, help="Name for the molecules row")
@click.option("--basis", default="custom", show_default=True, help="Basis label for the molecules row")
@click.option("--output", "-o", type=click.Path(path_type=Path), default=None,
              help="Append the N,R,M,alpha row to this molecules CSV")
@click.pass_context
@handle_errors
def factorize(ctx, tensor_path, one_body_path, eps_trunc, name, basis, output):
    """Double-factorize a two-electron tensor and report R, M and α"""
    banner("🔬 Double Factorization")
    status(f"📋 Reading {tensor_path}")
    h = read_tensor(tensor_path)
    t = read_one_body(one_body_path) if one_body_path else None

    with timer("Factorization"):
        f = factorize_tensor(h, t, eps_trunc)
    max_abs, frobenius = reconstruction_error(f, h)

    print(f"N = {f.n_orbitals}")
    print(f"R = {f.rank_R}")
    print(f"M = {f.rank_M}  (max per block {max(f.per_rank_M, default=0)})")
    print(f"alpha = {f.alpha:.6g} Ha")
    print(f"truncation bound = {f.truncation_error_bound:.3e} Ha")
    print(f"reconstruction error: max-abs {max_abs:.3e}, Frobenius {frobenius:.3e}")

    if output:
        if f.rank_R == 0:
            raise ValidationError("empty factorization has no cost-model row")
        new_file = not output.exists() or output.stat().st_size == 0
        output.parent.mkdir(parents=True, exist_ok=True)
        with open(output, "a", encoding="utf-8") as handle:
            if new_file:
                handle.write("name,basis,N,R,M,alpha,note\n")
            handle.write(f"{name},{basis},{f.n_orbitals},{f.rank_R},{f.rank_M},{f.alpha:.6g},\n")
        status(f"📂 Row written to {output}")


@cli.command()
@click.option("--molecules", type=click.Path(path_type=Path), default=None, help="Molecules CSV")
@click.option("--objective", default=None, help="vn (qubits × T-count) or vd (qubits × T-depth)")
@click.option("--eps", "eps_total", type=float, default=None, help="Total error budget in Hartree")
@click.option("--output", "-o", type=click.Path(path_type=Path), default=None, help="CSV output path")
@click.option("--breakdown", is_flag=True, help="Print the per-subroutine volume breakdown")
@click.pass_context
@handle_errors
def estimate(ctx, molecules, objective, eps_total, output, breakdown):
    """Logical qubits, T-count and T-depth for every molecule row"""
    manager = load_config(ctx)
    run = RunConfig.from_manager(manager, molecules=molecules, objective=objective, eps_total=eps_total)
    table = ingest(run.molecules)
    for note in table.warnings:
        warn(note)

    banner(f"🧮 Cost Model ({run.objective.upper()}, ε = {run.eps_total:g} Ha)")
    reports = []
    with timer(f"Estimating {len(table)} instance(s)"):
        for inst in table:
            report = total_cost(inst, run.eps_total, run.objective, run.constants, run.pe_constant)
            for note in report.notes:
                warn(note)
            reports.append(report)

    frame = estimate_frame(reports)
    path = write_csv(frame, output or run.output_dir / f"estimate_{run.objective}.csv")
    print(render(frame, "estimate", "table"), end="")

    if breakdown:
        for report in reports:
            print(f"\n{report.instance.label}")
            for row in volume_breakdown(report):
                print(f"  {row.label:<18} ×{row.applications}  T {row.t_count:>8}  depth {row.t_depth:>6}  {row.share_percent:5.1f}%")
    status(f"\n📂 Results saved to: {path}")


@cli.command()
@click.option("--molecules", type=click.Path(path_type=Path), default=None, help="Molecules CSV")
@click.option("--counts", "source", default="table", show_default=True,
              help="table: published counts; model: run the cost model")
@click.option("--regime", "regimes", multiple=True,
              help="high, moderate, average, a custom regime, or both (repeatable)")
@click.option("--interleave", default=None, help="Interleaving ratios, e.g. 1,10,100")
@click.option("--speedup", type=float, default=None, help="Parallel magic-state speedup for --details")
@click.option("--details", is_flag=True, help="Print distance, idle cost and distillation levels per row")
@click.option("--output", "-o", type=click.Path(path_type=Path), default=None, help="CSV output path")
@click.pass_context
@handle_errors
def overhead(ctx, molecules, source, regimes, interleave, speedup, details, output):
    """RSG footprint and run time from logical counts"""
    manager = load_config(ctx)
    run = RunConfig.from_manager(
        manager,
        molecules=molecules,
        interleave=parse_interleave(interleave) if interleave else None,
    )
    table = ingest(run.molecules)
    for note in table.warnings:
        warn(note)
    names = regime_names(regimes, manager)
    resolved = [manager.get_regime(name) for name in names]

    banner(f"🏗️  Fault-Tolerant Overhead ({', '.join(names)}; counts from {source})")
    rows = []
    with timer("Overhead estimates"):
        counts = logical_counts(run, source, table)
        for regime in resolved:
            for inst, n_t, n_l in counts:
                for value in run.interleave:
                    report = estimate_overhead(n_t, n_l, regime, run.ft_params, interleave=value)
                    for note in report.warnings:
                        warn(f"{inst.label} ({regime.label}): {note}")
                    rows.append(overhead_row(inst.name, inst.basis, report))
                    if details:
                        budget = magic_state_budget(regime, n_t, n_l, run.ft_params)
                        line = (f"  {inst.label:<18} {regime.label:<9} d={report.d:<3} "
                                f"idle={report.idle_qubit_rsgs} RSG/qubit  15-to-1 levels={budget.levels}")
                        if speedup:
                            _, t_par = parallel_runtime(n_t, report.d, run.ft_params.f_rsg, value, speedup)
                            n_par = parallel_footprint(n_l, report.d, run.ft_params, speedup, value)
                            line += f"  parallel: {format_sig(t_par / 3600)} h on {format_sig(n_par)} RSGs"
                        print(line)

    frame = overhead_frame(rows)
    path = write_csv(frame, output or run.output_dir / "overhead.csv")
    print(render(frame, "overhead", "table"), end="")
    status(f"\n📂 Results saved to: {path}")


@cli.command()
@click.option("--interleave-range", "interleave_range", default="1:1000:13", show_default=True,
              help="A:B:steps, log-spaced integer interleaving ratios")
@click.option("--molecules", type=click.Path(path_type=Path), default=None, help="Molecules CSV")
@click.option("--name", "names", multiple=True, help="Molecule name filter (repeatable)")
@click.option("--basis", "bases", multiple=True, help="Basis filter (repeatable)")
@click.option("--counts", "source", default="table", show_default=True, help="table or model")
@click.option("--regime", "regimes", multiple=True, help="Regime(s); 'both' for high and moderate")
@click.option("--msd-grid", is_flag=True, help="Also write the distillation-share grid (average regime)")
@click.option("--output", "-o", type=click.Path(path_type=Path), default=None, help="CSV output path")
@click.pass_context
@handle_errors
def sweep(ctx, interleave_range, molecules, names, bases, source, regimes, msd_grid, output):
    """Footprint/run-time trade-off curves over interleaving ratios"""
    manager = load_config(ctx)
    run = RunConfig.from_manager(manager, molecules=molecules)
    values = parse_range(interleave_range)
    table = ingest(run.molecules).select(list(names), list(bases))
    if not len(table):
        raise ValidationError("no molecule rows match the --name/--basis filters")

    banner(f"📈 Interleaving Sweep ({len(values)} ratios from {values[0]} to {values[-1]})")
    frames = []
    with timer("Trade-off curves"):
        counts = logical_counts(run, source, table)
        for name in regime_names(regimes, manager):
            regime = manager.get_regime(name)
            for inst, n_t, n_l in counts:
                points = tradeoff_curve(n_t, n_l, regime, run.ft_params, values)
                frames.append(curve_frame(inst.name, inst.basis, regime.label, points))

    frame = pd.concat(frames, ignore_index=True)
    path = write_csv(frame, output or run.output_dir / "tradeoff_curves.csv")
    print(render(frame, "curve", "plotdata"), end="")
    status(f"\n📂 Curves saved to: {path}")

    if msd_grid:
        n_l_values = [int(v) for v in np.geomspace(1e3, 1e5, 9)]
        n_t_values = [float(v) for v in np.geomspace(1e9, 1e15, 7)]
        grid = msd_ratio_grid(n_l_values, n_t_values, manager.get_regime("average"), run.ft_params)
        grid_path = run.output_dir / "msd_ratio_grid.csv"
        grid_path.parent.mkdir(parents=True, exist_ok=True)
        grid.to_csv(grid_path, lineterminator="\n")
        status(f"📂 Distillation-share grid saved to: {grid_path}")


@cli.command()
@click.option("--suite", default="all", show_default=True, help="gizens, ppm, factorizer or all")
@click.option("--seed", type=int, default=None, help="Seed (defaults to the config seed)")
@click.option("--samples", type=int, default=None, help="Random instances per check")
@click.option("--shots", type=int, default=None, help="Shots per compiled program (ppm suite)")
@click.pass_context
@handle_errors
def verify(ctx, suite, seed, samples, shots):
    """Run the dense-oracle verification suites"""
    manager = load_config(ctx)
    seed = int(manager.get("seed", 42)) if seed is None else seed
    banner(f"🧪 Verification ({suite}, seed {seed})")
    with timer("Verification"):
        results = run_suites(suite, seed, samples=samples, shots=shots)
    print(format_results(results))
    failed = [r.suite for r in results if not r.passed]
    if failed:
        raise VerificationError(", ".join(failed))
    status("\n✅ All checks passed")


@cli.command()
@click.argument("report_file", type=click.Path(path_type=Path))
@click.option("--format", "fmt", default="table", show_default=True, help="csv, table or plotdata")
@handle_errors
def report(report_file, fmt):
    """Render an estimate, overhead or sweep CSV"""
    if fmt not in FORMATS:
        raise ValidationError(f"unknown format '{fmt}' (use {', '.join(FORMATS)})")
    kind, frame = read_report(report_file)
    print(render(frame, kind, fmt), end="")


@cli.command()
@click.option("--vector", required=True, help="Comma-separated unit vector of Majorana coefficients")
@click.option("--method", default="tree", show_default=True, help="tree (log depth) or ladder (linear depth)")
@click.option("--check", is_flag=True, help="Verify the circuit on the dense oracle")
@click.option("--output", "-o", type=click.Path(path_type=Path), default=None, help="Circuit text output path")
@handle_errors
def synth(vector, method, check, output):
    """Synthesize a Majorana basis-change circuit"""
    u = parse_vector(vector)
    if method == "tree":
        circuit = gizens_tree(u)
    elif method == "ladder":
        circuit = givens_ladder(u)
    else:
        raise ValidationError(f"--method must be tree or ladder, got '{method}'")
    status(f"ℹ️  {circuit.rotation_count} rotations in {circuit.depth} layers on {circuit.n_modes} modes")
    if output:
        write_circuit(circuit, output)
        status(f"📂 Circuit saved to: {output}")
    else:
        print(format_circuit(circuit), end="")
    if check:
        result = verify_basis_change(circuit, u)
        if not result.passed:
            raise VerificationError(f"basis-change residual {result.residual:.3e}")
        status(f"✅ Dense check passed (residual {result.residual:.3e})")


@cli.command("run-program")
@click.argument("program_file", type=click.Path(path_type=Path))
@click.option("--seed", type=int, default=None, help="Measurement seed (defaults to the config seed)")
@click.option("--all-measurements", is_flag=True, help="Include magic-state gadget measurements")
@click.option("--max-parallel", type=int, default=None, help="Layer width bound for the schedule")
@click.pass_context
@handle_errors
def run_program(ctx, program_file, seed, all_measurements, max_parallel):
    """Compile a Clifford+T program to PPMs and execute it with a Clifford frame"""
    manager = load_config(ctx)
    seed = int(manager.get("seed", 42)) if seed is None else seed
    program = read_program(program_file)
    stream = compile_program(program)
    schedule = schedule_layers(rotation_paulis(program), m=max_parallel)
    status(f"ℹ️  {program.n_qubits} data qubits, {t_count(stream)} T gates, "
           f"{magic_register_count(stream)} magic register(s), {len(stream.ops)} stream ops")
    status(f"ℹ️  T layers: {schedule.depth} (speedup {speedup_estimate(schedule):.2f})")
    result = execute(stream, seed=seed)
    print(format_record(result, all_measurements=all_measurements), end="")


@cli.command()
@click.option("--show", is_flag=True, help="Show current configuration")
@click.option("--set", "set_pair", nargs=2, type=str, metavar="KEY VALUE",
              help="Set a configuration value (e.g., --set overhead.regime high)")
@click.option("--init", "init", is_flag=True, help="Write a config file with the defaults")
@click.option("--force", is_flag=True, help="Overwrite an existing file with --init")
@click.pass_context
@handle_errors
def config(ctx, show, set_pair, init, force):
    """Manage Faultline configuration"""
    manager = ConfigManager(ctx.obj.get("config_path"))

    if init:
        if manager.config_path.exists() and not force:
            raise ValidationError(f"{manager.config_path} already exists (use --force to overwrite)")
        manager.save(DEFAULT_CONFIG)
        print(f"✅ Default configuration written to {manager.config_path}")

    elif set_pair:
        key, value = set_pair
        if manager.config_path.exists():
            manager.load()
        manager.set(key, parse_value(value))
        is_valid, errors = manager.validate()
        if not is_valid:
            raise ValidationError("refusing to save an invalid configuration:\n  • " + "\n  • ".join(errors))
        manager.save()
        print(f"✅ Set {key} = {manager.get(key)!r}")

    elif show:
        manager.load()
        print("\n📋 Current Configuration")
        print("=" * 60)
        print(f"Config file: {manager.config_path}{'' if manager.config_path.exists() else ' (not found, defaults)'}")
        print()
        print(yaml.dump(manager.config, default_flow_style=False, sort_keys=False), end="")
        is_valid, errors = manager.validate()
        if not is_valid:
            print("\n❌ Configuration errors:")
            for error in errors:
                print(f"  • {error}")
            sys.exit(1)

    else:
        print("\n📋 Configuration Management")
        print("=" * 60)
        print("Usage:")
        print("  python main.py config --show              # Show current config")
        print("  python main.py config --set KEY VALUE     # Set a config value")
        print("  python main.py config --init              # Write the defaults")
        print()
        print(f"Config file location: {manager.config_path}")
        print(f"Regimes: {', '.join(sorted(REGIMES))}")
        print()


if __name__ == "__main__":
    cli()
