"""Batch execution: solve each instance, re-verify, collect report records."""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from forest.embedding import Embedding, verify_embedding
from forest.errors import (
    BudgetExceeded,
    ForestError,
    InvalidInstance,
    SizeLimit,
    StateExplosion,
)
from forest.graph import Forest
from schema import InstanceSidecar, ReportRecord, RunConfig, SolverConfig
from solver.exact_three import exact3_supertree
from solver.greedy import greedy_supertree
from solver.oracle import oracle_max_subforest, oracle_min_superforest
from solver.pairwise import mcs_trees, supertree2
from solver.ptas import ptas_subforest

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VERIFY = 3
EXIT_BUDGET = 4

BUDGET_ERRORS = (BudgetExceeded, SizeLimit, StateExplosion)


@dataclass
class SolverOutput:
    forest: Forest
    checks: List[Tuple[Forest, Forest, Embedding]]
    """(pattern, host, embedding) triples the verifier re-checks."""

    bound: Optional[Fraction] = None
    details: Dict[str, Any] = field(default_factory=dict)


SolverFn = Callable[
    [Sequence[Forest], SolverConfig, RunConfig, Optional[InstanceSidecar]], SolverOutput
]


def _arity(forests: Sequence[Forest], k: int, name: str) -> None:
    if len(forests) != k:
        raise InvalidInstance(f"{name} takes {k} trees, got {len(forests)}")


def _into_result(
    forests: Sequence[Forest], result: Forest, embeddings: Sequence[Embedding]
) -> List[Tuple[Forest, Forest, Embedding]]:
    return [(f, result, e) for f, e in zip(forests, embeddings)]


def _from_result(
    result: Forest, forests: Sequence[Forest], embeddings: Sequence[Embedding]
) -> List[Tuple[Forest, Forest, Embedding]]:
    return [(result, f, e) for f, e in zip(forests, embeddings)]


def _solve_mcs2(forests, config, run, sidecar) -> SolverOutput:
    _arity(forests, 2, "mcs2")
    result = mcs_trees(forests[0], forests[1])
    return SolverOutput(
        forest=result.common,
        checks=_from_result(result.common, forests, [result.embed1, result.embed2]),
    )


def _solve_super2(forests, config, run, sidecar) -> SolverOutput:
    _arity(forests, 2, "super2")
    result = supertree2(forests[0], forests[1])
    return SolverOutput(
        forest=result.tree,
        checks=_into_result(forests, result.tree, result.embeddings),
        details={"commonSize": result.common_size},
    )


def _solve_greedy(forests, config, run, sidecar) -> SolverOutput:
    result, trace = greedy_supertree(forests)
    details: Dict[str, Any] = {
        "perRotationOrders": trace.per_rotation_orders,
        "chosenIndex": trace.chosen_index,
    }
    known = sidecar.params.get("known_order") if sidecar is not None else None
    if known:
        details["knownOrder"] = known
        details["ratioLowerBound"] = str(Fraction(result.order, known))
    return SolverOutput(
        forest=result.tree,
        checks=_into_result(forests, result.tree, result.embeddings),
        bound=trace.bound,
        details=details,
    )


def _solve_exact3(forests, config, run, sidecar) -> SolverOutput:
    _arity(forests, 3, "exact3")
    result = exact3_supertree(*forests, partition_cap=config.partition_cap)
    return SolverOutput(
        forest=result.tree,
        checks=_into_result(forests, result.tree, result.embeddings),
        details={
            "type": result.kind,
            "stats": {
                "dpStates": result.dp_states,
                "partitions": result.partitions,
                "maxDegree": result.max_degree,
            },
        },
    )


def _solve_ptas(forests, config, run, sidecar) -> SolverOutput:
    result = ptas_subforest(
        forests,
        epsilon=run.epsilon or 1.0,
        delta=run.delta,
        delta_cap=config.delta_cap,
        state_budget=config.state_budget,
        strict_cap=config.strict_cap,
    )
    return SolverOutput(
        forest=result.forest,
        checks=_from_result(result.forest, forests, result.embeddings),
        bound=result.guarantee,
        details={
            "deltaUsed": result.delta_used,
            "capped": result.capped,
            "guarantee": str(result.guarantee),
            "bestVector": list(result.best_vector),
            "independentSetBound": result.independent_set_bound,
        },
    )


def _solve_oracle_sub(forests, config, run, sidecar) -> SolverOutput:
    result = oracle_max_subforest(forests, config.oracle)
    return SolverOutput(
        forest=result.forest,
        checks=_from_result(result.forest, forests, result.embeddings),
    )


def _solve_oracle_super(forests, config, run, sidecar) -> SolverOutput:
    result = oracle_min_superforest(forests, config.oracle)
    return SolverOutput(
        forest=result.forest,
        checks=_into_result(forests, result.forest, result.embeddings),
        details={"connected": result.forest.is_tree()},
    )


SOLVERS: Dict[str, SolverFn] = {
    "mcs2": _solve_mcs2,
    "super2": _solve_super2,
    "greedy": _solve_greedy,
    "exact3": _solve_exact3,
    "ptas": _solve_ptas,
    "oracle-sub": _solve_oracle_sub,
    "oracle-super": _solve_oracle_super,
}


def forest_json(forest: Forest) -> Dict[str, Any]:
    return {"order": forest.order, "edges": [list(e) for e in forest.edges()]}


def verify_output(output: SolverOutput) -> str:
    ok = all(verify_embedding(p, h, e) for p, h, e in output.checks)
    return "pass" if ok else "fail"


Task = Tuple[str, List[Forest], Optional[InstanceSidecar], RunConfig, SolverConfig]


def _skipped(instance: str, run: RunConfig, e: Exception, reason: str) -> ReportRecord:
    return ReportRecord(
        instance=instance,
        algorithm=run.subcommand,
        verification="skipped",
        details={"error": type(e).__name__, "message": str(e), "reason": reason},
    )


def solve_instance(task: Task) -> Tuple[ReportRecord, Optional[Forest]]:
    instance, forests, sidecar, run, config = task
    started = time.perf_counter()
    try:
        output = SOLVERS[run.subcommand](forests, config, run, sidecar)
    except BUDGET_ERRORS as e:
        logger.warning("%s on %s: %s", run.subcommand, instance, e)
        return _skipped(instance, run, e, "budget"), None
    except ForestError as e:
        logger.error("%s on %s: %s", run.subcommand, instance, e)
        return _skipped(instance, run, e, "input"), None
    elapsed = time.perf_counter() - started
    status = verify_output(output)
    details = dict(output.details)
    details["result"] = forest_json(output.forest)
    details["embeddings"] = [list(e.mapping) for _, _, e in output.checks]
    logger.info(
        "%s on %s: order %d, verification %s",
        run.subcommand,
        instance,
        output.forest.order,
        status,
    )
    record = ReportRecord(
        instance=instance,
        algorithm=run.subcommand,
        order=output.forest.order,
        bound=str(output.bound) if output.bound is not None else None,
        wall_time=elapsed if run.timings else None,
        verification=status,
        details=details,
    )
    return record, output.forest


def run_batch(
    instances: List[Tuple[str, List[Forest], Optional[InstanceSidecar]]],
    run: RunConfig,
    config: SolverConfig,
) -> List[Tuple[ReportRecord, Optional[Forest]]]:
    tasks: List[Task] = [(name, forests, meta, run, config) for name, forests, meta in instances]
    if run.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=run.jobs) as pool:
            results = list(pool.map(solve_instance, tasks))
    else:
        results = [solve_instance(t) for t in tasks]
    results.sort(key=lambda item: item[0].instance)
    return results


def exit_status(records: Sequence[ReportRecord]) -> int:
    if any(r.verification == "fail" for r in records):
        return EXIT_VERIFY
    if any(r.details.get("reason") == "input" for r in records):
        return EXIT_PARSE
    if any(r.verification == "skipped" for r in records):
        return EXIT_BUDGET
    return EXIT_OK
