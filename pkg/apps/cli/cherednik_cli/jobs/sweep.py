from __future__ import annotations

import logging
import random
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor

from cherednik_core.params import (
    alcove_representatives,
    integer_regular_lambda,
    random_lambda,
    regime_lambda,
)
from cherednik_core.schemas import RunReport
from cherednik_core.services import VerificationRunner, merge_reports

from ..config import RunConfig

logger = logging.getLogger(__name__)

Task = tuple[str, Callable[[], RunReport]]

GR_MAX_M = 2


def build_tasks(runner: VerificationRunner, config: RunConfig) -> list[Task]:
    rng = random.Random(config.seed)
    size = config.rank
    tasks: list[Task] = []
    for theta in alcove_representatives(size):
        label = ",".join(map(str, theta.values))
        tasks.extend(
            [
                (f"order θ={label}", lambda t=theta: runner.order(t)),
                (f"fixed-points θ={label}", lambda t=theta: runner.fixed_points(t)),
                (f"charts θ={label}", lambda t=theta: runner.charts(t)),
                (f"ch-cycles θ={label}", lambda t=theta: runner.ch_cycles(t)),
                (
                    f"sections θ={label}",
                    lambda t=theta: runner.sections(t, 1, config.cap),
                ),
            ],
        )
        for m in range(config.m + 1):
            tasks.append(
                (
                    f"abl-verify θ={label} m={m}",
                    lambda t=theta, k=m: runner.abl_verify(t, k, config.window),
                ),
            )
        lam = regime_lambda(theta, rng)
        tasks.append(
            (
                f"shift-verify θ={label}",
                lambda t=theta, x=lam: runner.shift_verify(x, t, config.top, 12),
            ),
        )
        integral = integer_regular_lambda(theta, rng)
        tasks.append(
            (
                f"shift-verify integral θ={label}",
                lambda t=theta, x=integral: runner.shift_verify(x, t, config.top, 12),
            ),
        )
        for m in range(min(config.m, GR_MAX_M) + 1):
            tasks.append(
                (
                    f"gr-verify θ={label} m={m}",
                    lambda t=theta, x=lam, k=m: runner.gr_verify(x, t, k, config.cap),
                ),
            )
    for sample in range(config.samples):
        lam = random_lambda(size, rng)
        tasks.append((f"homs sample {sample}", lambda x=lam: runner.homs(x, config.depth)))
    return tasks


def run_sweep(runner: VerificationRunner, config: RunConfig) -> RunReport:
    tasks = build_tasks(runner, config)
    logger.info("Sweep started", extra={"tasks": len(tasks), "threads": config.threads})
    with ThreadPoolExecutor(max_workers=config.threads) as executor:
        futures = [executor.submit(task) for _, task in tasks]
        parts = []
        for index, ((label, _), future) in enumerate(zip(tasks, futures), start=1):
            parts.append((label, future.result()))
            logger.info("Sweep progress", extra={"done": index, "total": len(tasks), "task": label})
    return merge_reports("sweep", config.params(), parts)
