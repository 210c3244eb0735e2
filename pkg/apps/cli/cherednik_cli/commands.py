from __future__ import annotations

import logging
from collections.abc import Callable

from cherednik_core.params import DeformParam, theta_order
from cherednik_core.schemas import RunReport
from cherednik_core.services import VerificationRunner

from .config import RunConfig
from .jobs.sweep import run_sweep

logger = logging.getLogger(__name__)

Handler = Callable[[VerificationRunner, RunConfig], RunReport]


def _optional_lambda(config: RunConfig) -> DeformParam | None:
    return config.deform_param() if config.lam is not None else None


def handle_order(runner: VerificationRunner, config: RunConfig) -> RunReport:
    return runner.order(config.stab_param(), _optional_lambda(config))


def handle_homs(runner: VerificationRunner, config: RunConfig) -> RunReport:
    return runner.homs(config.deform_param(), config.depth)


def handle_fixed_points(runner: VerificationRunner, config: RunConfig) -> RunReport:
    return runner.fixed_points(config.stab_param())


def handle_charts(runner: VerificationRunner, config: RunConfig) -> RunReport:
    return runner.charts(config.stab_param())


def handle_sections(runner: VerificationRunner, config: RunConfig) -> RunReport:
    return runner.sections(config.stab_param(), config.m, config.cap)


def handle_abl(runner: VerificationRunner, config: RunConfig) -> RunReport:
    return runner.abl_verify(config.stab_param(), config.m, config.window)


def handle_shift(runner: VerificationRunner, config: RunConfig) -> RunReport:
    lam, theta = config.deform_param(), config.stab_param()
    return runner.shift_verify(lam, theta, config.top, config.window)


def handle_gr(runner: VerificationRunner, config: RunConfig) -> RunReport:
    return runner.gr_verify(config.deform_param(), config.stab_param(), config.m, config.cap)


def handle_ch_cycles(runner: VerificationRunner, config: RunConfig) -> RunReport:
    theta = config.stab_param()
    logger.debug("Cycles requested", extra={"eta": theta_order(theta).describe()})
    return runner.ch_cycles(theta, _optional_lambda(config))


def handle_sweep(runner: VerificationRunner, config: RunConfig) -> RunReport:
    return run_sweep(runner, config)


HANDLERS: dict[str, Handler] = {
    "order": handle_order,
    "homs": handle_homs,
    "fixed-points": handle_fixed_points,
    "charts": handle_charts,
    "sections": handle_sections,
    "abl-verify": handle_abl,
    "shift-verify": handle_shift,
    "gr-verify": handle_gr,
    "ch-cycles": handle_ch_cycles,
    "sweep": handle_sweep,
}
