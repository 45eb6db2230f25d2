import configparser

from cli.config import bench_defaults, cli_defaults, load_solver_config, read_config
from schema import SolverConfig


def test_fallbacks_without_file(tmp_path):
    parser = read_config(str(tmp_path / "absent.ini"))
    config = load_solver_config(parser)
    assert config.partition_cap == 12
    assert config.delta_cap == 6
    assert config.oracle.max_host_order == 16
    assert cli_defaults(parser) == (1, "json", None)
    assert bench_defaults(parser) == ([25, 50, 100, 200, 400, 1000], 2, 1)


def test_example_config_is_readable():
    parser = read_config("example_config.ini")
    config = load_solver_config(parser)
    assert config.state_budget > 0
    assert parser.getboolean("cli", "dev_mode") is False


def test_budget_nodes_override():
    parser = configparser.ConfigParser()
    parser.read_string("[oracle]\nnode_budget = 10\n[ptas]\nstrict_cap = true\n")
    config = load_solver_config(parser, budget_nodes=99)
    assert config.oracle.node_budget == 99
    assert config.strict_cap
    assert load_solver_config(parser).oracle.node_budget == 10


def test_example_config_sections_are_all_read():
    parser = read_config("example_config.ini")
    assert set(parser.sections()) == {"cli", "oracle", "exact_three", "ptas", "bench"}
    assert set(parser["oracle"]) == {"max_host_order", "max_subset_order", "node_budget"}
    assert set(SolverConfig.__fields__) == {
        "partition_cap",
        "delta_cap",
        "state_budget",
        "strict_cap",
        "oracle",
    }
