"""
Run orchestration for the command-line modes.

run(config) performs one solve, sweep, sobolev, fit or validate run and
returns the artifact bytes; writing them is up to the caller. Identical
configs give byte-identical artifacts.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path

from weakcoupling.closed_forms import E_from_sobolev, sobolev_estimate, sobolev_from_E
from weakcoupling.exceptions import EXIT_DATA, WeakCouplingError
from weakcoupling.models.config import RunConfig
from weakcoupling.models.enums import Quantity, Regime, RunMode
from weakcoupling.models.results import SobolevEstimate, SweepResult
from weakcoupling.services.asymptotics import (
    bound_violations,
    check_monotone,
    default_alphas,
    exponent_regression,
    fit_critical,
    fit_subcritical,
    sweep,
)
from weakcoupling.services.grid import build_grid
from weakcoupling.services.potentials import (
    analytic_integral,
    as_descriptor,
    profile_for,
    require_positive_integral,
    sample_potential,
)
from weakcoupling.services.serialization import (
    emit_csv,
    emit_json,
    parse_csv,
    parse_json,
    records_from_json,
    sweep_payload,
)
from weakcoupling.services.solver import plan_grid, solve_coupling, solve_E
from weakcoupling.services.validation import run_validation

logger = logging.getLogger('weakcoupling')


@dataclass(frozen=True)
class RunOutcome:
    """Exit status, artifact bytes and the payload they were rendered from."""

    status: int
    artifact: bytes
    payload: dict = field(default_factory=dict)


def grid_integral(config: RunConfig, alpha: float | None = None) -> float:
    """
    I_h of V (coupling 1) on the grid planned for the smallest coupling.

    Raises:
        WeakCouplingError: NONPOSITIVE_INTEGRAL
    """
    if alpha is None:
        alphas = config.alphas or default_alphas(config.regime or Regime.SUBCRITICAL)
        alpha = min(alphas) if alphas else 1.0
    descriptor = as_descriptor(config.potential)
    grid = build_grid(plan_grid(profile_for(descriptor), config.d, config.p, alpha,
                                n=config.grid_n, extent=config.grid_l))
    return require_positive_integral(sample_potential(grid, descriptor))


def run_solve(config: RunConfig) -> RunOutcome:
    descriptor = as_descriptor(config.potential)
    state = solve_coupling(
        descriptor, config.d, config.p, config.alpha, config.solver_config(),
        n=config.grid_n, extent=config.grid_l,
    )
    payload = {
        'd': config.d,
        'p': config.p,
        'alpha': config.alpha,
        'potential': descriptor.canonical(),
        'analytic_integral': analytic_integral(descriptor, config.d),
        **state.as_dict(),
    }
    return RunOutcome(0, emit_json(payload), payload)


def _sweep_alphas(config: RunConfig) -> tuple[float, ...]:
    if config.alphas is not None:
        return config.alphas
    return default_alphas(config.regime or Regime.SUBCRITICAL)


def _run_sweep(config: RunConfig) -> SweepResult:
    alphas = _sweep_alphas(config)
    if config.regime is not None and alphas:
        grid_integral(config, min(alphas))
    return sweep(
        config.potential, config.d, config.p, alphas, config.solver_config(),
        n=config.grid_n, extent=config.grid_l, workers=config.workers,
    )


def run_sweep(config: RunConfig) -> RunOutcome:
    result = _run_sweep(config)
    payload = sweep_payload(result)
    payload['monotone_violations'] = [list(pair) for pair in check_monotone(result)]
    payload['bound_violations'] = bound_violations(result)
    if config.output_format == 'csv':
        return RunOutcome(0, emit_csv(result), payload)
    return RunOutcome(0, emit_json(payload), payload)


def run_sobolev(config: RunConfig) -> RunOutcome:
    if config.d == 1 and config.numeric:
        E1, state = solve_E(1.0, 1, config.p, config.solver_config(), n=config.grid_n, extent=config.grid_l)
        estimate = SobolevEstimate(
            d=1, p=config.p, S=sobolev_from_E(E1, 1, config.p), E1=E1,
            nodes=state.grid.size, extent=state.extent, converged=state.converged,
        )
    else:
        estimate = sobolev_estimate(config.d, config.p, nodes=config.grid_n)
    payload = estimate.as_dict()
    if config.d == 1:
        closed = config.p / 2
        payload['closed_form'] = {'S': closed, 'E1': E_from_sobolev(1.0, 1, config.p, closed)}
    return RunOutcome(0, emit_json(payload), payload)


def load_sweep(config: RunConfig) -> tuple[SweepResult, float | None]:
    """
    Sweep records from --input (CSV or JSON by extension), with the
    integral stored alongside them when the artifact carries one.

    Raises:
        WeakCouplingError: IO_FAILURE; MALFORMED_ARTIFACT when the file does not parse
    """
    path = Path(config.input_path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise WeakCouplingError('IO_FAILURE', path=str(path), reason=e.strerror or str(e)) from e
    integral = None
    try:
        if path.suffix.lower() == '.json':
            records = records_from_json(data)
            integral = parse_json(data).get('integral')
        else:
            records = parse_csv(data)
    except WeakCouplingError as e:
        if e.code != 'PARSE_ERROR':
            raise
        raise WeakCouplingError('MALFORMED_ARTIFACT', path=str(path), **e.data) from e
    except UnicodeDecodeError as e:
        raise WeakCouplingError('MALFORMED_ARTIFACT', path=str(path), reason=str(e)) from e
    logger.info("fit.loaded", extra={'path': str(path), 'records': len(records)})
    records = sorted(records, key=lambda r: r.alpha, reverse=True)
    descriptor = as_descriptor(config.potential).canonical()
    return SweepResult(d=config.d, p=config.p, records=tuple(records), descriptor=descriptor), integral


def run_fit(config: RunConfig) -> RunOutcome:
    if config.input_path:
        result, stored = load_sweep(config)
        integral = config.integral or stored
        if integral is None:
            integral = grid_integral(config, min(result.alphas) if len(result) else None)
    else:
        result = _run_sweep(config)
        integral = config.integral

    if config.regime == Regime.SUBCRITICAL:
        fit = fit_subcritical(result, config.d, config.p, integral)
        payload = fit.as_dict()
        payload['exponents'] = {
            'grad_norm': exponent_regression(result, Quantity.GRAD_NORM, config.d, config.p),
            'sup_norm': exponent_regression(result, Quantity.SUP_NORM, config.d, config.p),
            'expected_grad_norm': 1 / (config.p - config.d),
            'expected_sup_norm': config.d / (config.p - config.d),
        }
    else:
        fit = fit_critical(result, config.d, integral)
        payload = fit.as_dict()
    return RunOutcome(0, emit_json(payload), payload)


def run_validate(config: RunConfig) -> RunOutcome:
    checks = run_validation()
    passed = all(check.passed for check in checks)
    payload = {'passed': passed, 'checks': [check.as_dict() for check in checks]}
    return RunOutcome(0 if passed else EXIT_DATA, emit_json(payload), payload)


RUNNERS = {
    RunMode.SOLVE: run_solve,
    RunMode.SWEEP: run_sweep,
    RunMode.SOBOLEV: run_sobolev,
    RunMode.FIT: run_fit,
    RunMode.VALIDATE: run_validate,
}


def run(config: RunConfig) -> RunOutcome:
    """
    Execute one run.

    Non-convergence is reported inside the artifact; only configuration,
    data and I/O problems raise.

    Raises:
        WeakCouplingError: see exit_code for the category
    """
    logger.info("run.start", extra={'mode': str(config.mode), 'd': config.d, 'p': config.p})
    outcome = RUNNERS[RunMode(config.mode)](config)
    logger.info("run.finished", extra={'mode': str(config.mode), 'status': outcome.status})
    return outcome


def write_artifact(data: bytes, path: str | Path) -> None:
    """
    Raises:
        WeakCouplingError: IO_FAILURE
    """
    try:
        Path(path).write_bytes(data)
    except OSError as e:
        raise WeakCouplingError('IO_FAILURE', path=str(path), reason=e.strerror or str(e)) from e
