"""
Командная строка: run, compare, export-world.
"""

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional

import structlog

from .comparator import ScenarioComparator
from .config import RunConfig, ScenarioKind, load_config
from .exceptions import SwarmLocalizerError
from .export import export_csv, export_map, write_summary
from .trial import run_swarm_trial
from .world import default_maze, dump_world, load_world

# Имена файлов сравнения по сценариям
COMPARE_FILES = {
    ScenarioKind.BASELINE: "baseline_data.csv",
    ScenarioKind.IMU_FUSED: "kalman.csv",
    ScenarioKind.GREEDY_SWARM: "swarm_data.csv",
}


def parse_seeds(text: str) -> List[int]:
    """Разбирает `1..5`, `1,3,7` или одиночный сид."""
    try:
        if ".." in text:
            low, high = (int(part) for part in text.split("..", 1))
            seeds = list(range(low, high + 1))
        else:
            seeds = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Некорректный список сидов: {text}")
    if not seeds or min(seeds) < 0:
        raise argparse.ArgumentTypeError(f"Некорректный список сидов: {text}")
    return seeds


def configure_logging(verbose: bool = False) -> None:
    structlog.configure(
        wrapper_class=structlog.make_filtering_bound_logger(logging.DEBUG if verbose else logging.INFO),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swarm-localizer",
        description="Симуляция локализации роя с жадной коррекцией EKF",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Подробный лог (DEBUG)")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="INI-файл конфигурации")
    common.add_argument("--duration", type=float, help="Длительность испытания (с)")
    common.add_argument("--world", type=Path, help="Файл мира (по умолчанию встроенный лабиринт)")
    common.add_argument("--out", type=Path, required=True, help="Каталог результатов")

    run = sub.add_parser("run", parents=[common], help="Одно испытание")
    run.add_argument("--scenario", choices=[s.value for s in ScenarioKind], default="greedy")
    run.add_argument("--seed", type=int, default=1)
    run.add_argument("--agents", type=int, default=1, help="Число агентов в рое")
    run.add_argument("--comm-mode", choices=["temporal", "radius"], help="Режим контакта с соседями")

    compare = sub.add_parser("compare", parents=[common], help="Сравнение трех сценариев")
    compare.add_argument("--seeds", type=parse_seeds, default=list(range(1, 6)))
    group = compare.add_mutually_exclusive_group()
    group.add_argument("--parallel", dest="parallel", action="store_true", default=True)
    group.add_argument("--sequential", dest="parallel", action="store_false")

    export = sub.add_parser("export-world", help="Сохранить мир в файл")
    export.add_argument("--world", type=Path, help="Исходный файл мира")
    export.add_argument("--out", type=Path, required=True, help="Файл мира")
    return parser


def _load_run_config(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    if args.duration is not None:
        cfg = replace(cfg, duration=args.duration)
    if args.world is not None:
        cfg = replace(cfg, world_path=str(args.world))
    return cfg


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = replace(_load_run_config(args), scenario=ScenarioKind(args.scenario), seed=args.seed)
    if args.comm_mode:
        cfg = replace(cfg, comm=replace(cfg.comm, mode=args.comm_mode))

    records = run_swarm_trial(cfg, args.agents)
    mapping = cfg.mapping_config()
    for record in records:
        out = args.out if record.agent_id == 0 else args.out / f"agent{record.agent_id}"
        out.mkdir(parents=True, exist_ok=True)
        export_csv(record, out / "trace.csv")
        export_map(record, mapping, out / "map.pgm")
        write_summary(record, out / "summary.txt")
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    cfg = _load_run_config(args)
    comparator = ScenarioComparator(cfg, seeds=args.seeds)
    records = comparator.compare(parallel=args.parallel)

    for record in records:
        out = args.out / f"seed_{record.seed}"
        out.mkdir(parents=True, exist_ok=True)
        export_csv(record, out / COMPARE_FILES[record.scenario])

    args.out.mkdir(parents=True, exist_ok=True)
    rates = comparator.eta_per_seed(records)
    with open(args.out / "eta.txt", "w", encoding="utf-8") as fh:
        fh.write("seed,eta_percent\n")
        for seed, eta in rates.items():
            fh.write(f"{seed},{eta:.4f}\n")

    stats = comparator.get_summary_stats(records)
    (args.out / "summary.json").write_text(comparator.to_json(stats), encoding="utf-8")
    # Код 1, если хотя бы одно испытание не выполнилось
    return 0 if len(records) == len(comparator.seeds) * len(comparator.scenarios) else 1


def _cmd_export_world(args: argparse.Namespace) -> int:
    world = load_world(args.world) if args.world else default_maze()
    args.out.parent.mkdir(parents=True, exist_ok=True)
    dump_world(world, args.out)
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "compare": _cmd_compare,
    "export-world": _cmd_export_world,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    logger = structlog.get_logger(__name__)

    try:
        return _COMMANDS[args.command](args)
    except SwarmLocalizerError as e:
        logger.error("Ошибка выполнения", command=args.command, error=str(e))
        print(f"swarm-localizer: {e}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as e:
        print(f"swarm-localizer: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
