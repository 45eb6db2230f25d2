import configparser
import logging
from typing import List, Optional, Tuple

from schema import OracleBudget, SolverConfig

DEFAULT_CONFIG_PATH = "config.ini"


def read_config(path: Optional[str] = None) -> configparser.ConfigParser:
    # a missing file leaves every section empty, so all the fallbacks apply
    parser = configparser.ConfigParser()
    parser.read(path or DEFAULT_CONFIG_PATH)
    return parser


def setup_logging(parser: configparser.ConfigParser, verbose: bool = False) -> None:
    dev_mode = parser.getboolean("cli", "dev_mode", fallback=False)
    level_name = parser.get("cli", "log_level", fallback="INFO" if dev_mode else "WARNING")
    if verbose:
        level_name = "DEBUG"
    logger = logging.getLogger()
    logger.setLevel(level_name.upper())
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        logger.addHandler(handler)


def load_solver_config(
    parser: configparser.ConfigParser, budget_nodes: Optional[int] = None
) -> SolverConfig:
    oracle = OracleBudget(
        max_host_order=parser.getint("oracle", "max_host_order", fallback=16),
        max_subset_order=parser.getint("oracle", "max_subset_order", fallback=16),
        node_budget=budget_nodes or parser.getint("oracle", "node_budget", fallback=2_000_000),
    )
    return SolverConfig(
        partition_cap=parser.getint("exact_three", "partition_cap", fallback=12),
        delta_cap=parser.getint("ptas", "delta_cap", fallback=6),
        state_budget=parser.getint("ptas", "state_budget", fallback=200_000),
        strict_cap=parser.getboolean("ptas", "strict_cap", fallback=False),
        oracle=oracle,
    )


def cli_defaults(parser: configparser.ConfigParser) -> Tuple[int, str, Optional[str]]:
    """(jobs, format, out) from the [cli] section."""
    return (
        parser.getint("cli", "jobs", fallback=1),
        parser.get("cli", "format", fallback="json"),
        parser.get("cli", "out", fallback=None),
    )


def bench_defaults(parser: configparser.ConfigParser) -> Tuple[List[int], int, int]:
    raw = parser.get("bench", "a_values", fallback="25,50,100,200,400,1000")
    return (
        [int(x) for x in raw.split(",") if x.strip()],
        parser.getint("bench", "b", fallback=2),
        parser.getint("bench", "c", fallback=1),
    )
