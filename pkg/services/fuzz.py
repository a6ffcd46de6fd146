"""Randomised verification of the bounds over many seeded instances"""

import asyncio
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable

import numpy as np

from core.config import numerics_config
from core.errors import NumericalError
from models.fuzz import FailedTrial, FuzzSettings, FuzzSummary, TrialResult
from models.sampling import SampleConfig
from services.bounds import check_instance, compare_relations
from services.entropy import conjugate_pair
from services.sampling import generator, random_density_matrix, random_povm

logger = logging.getLogger(__name__)

STREAM_TRIAL = 3


def derive_seed(master: int, index: int) -> int:
    """64-bit seed of trial ``index``; independent of scheduling"""
    state = np.random.SeedSequence([master, index]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def run_trial(settings: FuzzSettings, index: int) -> TrialResult:
    """Sample (M, N, rho) for trial ``index`` and check every bound on it."""
    return run_seeded_trial(settings, derive_seed(settings.seed, index), index)


def run_seeded_trial(settings: FuzzSettings, seed: int, index: int = 0) -> TrialResult:
    """Replay entry point: the trial is fully determined by its own seed."""
    rng = generator(seed, STREAM_TRIAL)

    dim = int(rng.integers(settings.dims[0], settings.dims[1] + 1))
    rank_one = settings.rank_one or bool(rng.integers(2))
    n_m, n_n = (int(k) for k in rng.integers(settings.outcomes[0], settings.outcomes[1] + 1, size=2))
    if rank_one:
        # Полной POVM ранга один нужно не меньше dim исходов
        n_m, n_n = max(n_m, dim), max(n_n, dim)
    state_rank = 1 if rng.random() < 0.5 else int(rng.integers(1, dim + 1))

    result = TrialResult(
        index=index,
        seed=seed,
        dim=dim,
        outcomes=(n_m, n_n),
        state_rank=state_rank,
        rank_one=rank_one,
    )
    try:
        rho = random_density_matrix(
            SampleConfig(seed=derive_seed(seed, 0), dim=dim, state_rank=state_rank)
        )
        m = random_povm(
            SampleConfig(seed=derive_seed(seed, 1), dim=dim, n_outcomes=n_m, rank_one_only=rank_one)
        )
        n = random_povm(
            SampleConfig(seed=derive_seed(seed, 2), dim=dim, n_outcomes=n_n, rank_one_only=rank_one)
        )
        pairs = [conjugate_pair(a) for a in settings.alphas]
        report = check_instance(
            m, n, rho, pair=pairs[0], extra_orders=settings.orders, extra_pairs=pairs[1:]
        )
    except NumericalError as e:
        logger.error(f"Trial {index} (seed={seed}) failed: {e}")
        return result.model_copy(update={"error": f"{type(e).__name__}: {e}"})

    update = {
        "relation1_bound": report.relation1_bound,
        "uncoupled_bound": report.uncoupled_bound,
        "sharper": compare_relations(report),
        "min_slack": report.slacks(),
        "violations": report.violations,
    }
    if m.is_rank_one() and n.is_rank_one():
        update["saturation_gap"] = abs(report.norm_max - report.f_value)
    return result.model_copy(update=update)


def summarize(settings: FuzzSettings, results: Iterable[TrialResult]) -> FuzzSummary:
    ordered = sorted(results, key=lambda r: r.index)
    tol = numerics_config.VIOLATION_TOL

    min_slack: dict[str, float] = {}
    failed: list[FailedTrial] = []
    gaps = [r.saturation_gap for r in ordered if r.saturation_gap is not None]
    for r in ordered:
        for name, value in r.min_slack.items():
            min_slack[name] = min(value, min_slack.get(name, value))
        if r.error is not None:
            failed.append(FailedTrial(index=r.index, seed=r.seed, reason=r.error))
        elif r.violations:
            names = ", ".join(sorted({v.bound for v in r.violations}))
            failed.append(FailedTrial(index=r.index, seed=r.seed, reason=f"violated: {names}"))
        elif r.saturation_gap is not None and r.saturation_gap > tol:
            failed.append(
                FailedTrial(
                    index=r.index, seed=r.seed, reason=f"not saturated: gap {r.saturation_gap:.3e}"
                )
            )

    relation1 = [r for r in ordered if r.sharper == "relation1"]
    uncoupled = [r for r in ordered if r.sharper == "uncoupled"]
    return FuzzSummary(
        seed=settings.seed,
        trials=len(ordered),
        violations=sum(1 for r in ordered if r.violations),
        saturation_checked=len(gaps),
        saturation_failures=sum(1 for g in gaps if g > tol),
        max_saturation_gap=max(gaps) if gaps else None,
        errors=sum(1 for r in ordered if r.error is not None),
        min_slack=min_slack,
        relation1_sharper=len(relation1),
        uncoupled_sharper=len(uncoupled),
        relation1_sharper_seed=relation1[0].seed if relation1 else None,
        uncoupled_sharper_seed=uncoupled[0].seed if uncoupled else None,
        failed=failed,
    )


async def run_fuzz_async(settings: FuzzSettings) -> FuzzSummary:
    """
    Run the trials on a pool of ``settings.jobs`` threads and gather the
    results; every trial is a pure function of its derived seed.
    """
    loop = asyncio.get_running_loop()
    logger.info(f"Starting {settings.trials} trials on {settings.jobs} workers")
    with ThreadPoolExecutor(max_workers=settings.jobs) as pool:
        futures = [
            loop.run_in_executor(pool, run_trial, settings, index)
            for index in range(settings.trials)
        ]
        results = await asyncio.gather(*futures)
    return summarize(settings, results)


def run_fuzz(settings: FuzzSettings) -> FuzzSummary:
    if settings.jobs > 1:
        return asyncio.run(run_fuzz_async(settings))
    logger.info(f"Starting {settings.trials} trials serially")
    return summarize(settings, (run_trial(settings, i) for i in range(settings.trials)))
