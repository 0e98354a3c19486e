"""
Weak-coupling asymptotics: alpha-sweeps, rescaled minimizers and fits.

    sweep                 one solve per alpha, records sorted by alpha descending
    rescale_minimizer     f_alpha(x) = alpha^{-d/(p(p-d))} u_alpha(x alpha^{-1/(p-d)})
    fit_subcritical       limit of lambda alpha^{-p/(p-d)}               (p > d)
    fit_critical          limit of alpha^{1/(d-1)} log(1/|lambda|)       (p = d)
    exponent_regression   log-log slopes of ||grad u|| and ||u||_inf^p
    oscillation_diagnostic, check_monotone

Fits always compare against the closed form evaluated at the grid
integral I_h, never the analytic integral.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from weakcoupling.conf import weakcoupling_settings
from weakcoupling.exceptions import WeakCouplingError
from weakcoupling.models.config import SolverConfig
from weakcoupling.models.enums import CoordinateKind, Quantity, Regime
from weakcoupling.models.grid import Field, Grid
from weakcoupling.models.results import FitResult, GroundState, SweepRecord, SweepResult
from weakcoupling.services.functional import norm_p, rayleigh
from weakcoupling.services.grid import build_grid, dilate, resample
from weakcoupling.services.potentials import as_descriptor, profile_for, sample_potential
from weakcoupling.services.solver import plan_grid, seed_field, solve_lambda, start_field

logger = logging.getLogger('weakcoupling')



def default_alphas(regime: Regime) -> tuple[float, ...]:
    """Geometric couplings, ratio about 2^{-1/2}, 8 to 12 points, largest first."""
    hi, lo = (0.3, 1e-3) if regime == Regime.SUBCRITICAL else (0.8, 0.05)
    count = int(np.clip(round(math.log(hi / lo) / math.log(math.sqrt(2))) + 1, 8, 12))
    return tuple(float(a) for a in np.geomspace(hi, lo, count))


def _record(alpha: float, state: GroundState) -> SweepRecord:
    return SweepRecord(
        alpha=float(alpha),
        lam=state.lam,
        grad_norm_p=state.grad_norm_p,
        sup_u=state.sup_u,
        residual=state.residual,
        iterations=state.iterations,
        converged=state.converged,
        extent=state.extent,
    )


def _solve_one(profile, descriptor, d: int, p: float, alpha: float, config: SolverConfig,
               n: int | None, extent: float | None):
    grid = build_grid(plan_grid(profile, d, p, alpha, n=n, extent=extent))
    potential = sample_potential(grid, descriptor, alpha)
    state = solve_lambda(grid, potential, config)

    final_grid = state.grid
    final_potential = potential if final_grid is grid else sample_potential(final_grid, descriptor, alpha)
    seed = seed_field(final_grid, final_potential, p)
    bound = math.nan
    if seed is not None:
        # Same first iterate as the solver, so a restart from seed starts exactly at bound
        bound = rayleigh(final_grid, start_field(final_grid, seed, p), final_potential, p)
        if state.lam > bound:
            logger.info("sweep.bound_restart", extra={'alpha': alpha, 'lambda': state.lam, 'bound': bound})
            state = solve_lambda(final_grid, final_potential, config.fixed(), initial=seed)
    logger.info("sweep.record", extra={
        'alpha': alpha, 'lambda': state.lam, 'converged': state.converged, 'extent': state.extent,
    })
    return state, bound, final_potential.integral


def sweep(potential, d: int, p: float, alphas, config: SolverConfig | None = None,
          n: int | None = None, extent: float | None = None, workers: int | None = None) -> SweepResult:
    """
    Solve lambda(alpha V) for every alpha.

    Solves run on SWEEP_WORKERS threads; the result does not depend on the
    worker count. Non-converged solves are recorded, not raised.

    Raises:
        WeakCouplingError: INVALID_CONFIG for non-positive or repeated alphas
    """
    alphas = [float(a) for a in alphas]
    if any(not a > 0 for a in alphas) or len(set(alphas)) != len(alphas):
        raise WeakCouplingError('INVALID_CONFIG', alphas=alphas, reason='alphas must be positive and distinct')
    descriptor = as_descriptor(potential)
    if not alphas:
        return SweepResult(d=d, p=p, records=(), descriptor=descriptor.canonical())

    config = config.with_p(p) if config is not None else SolverConfig(p=p)
    profile = profile_for(descriptor)
    ordered = sorted(alphas, reverse=True)
    workers = workers or weakcoupling_settings.SWEEP_WORKERS

    def run(alpha):
        return _solve_one(profile, descriptor, d, p, alpha, config, n, extent)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, ordered))
    else:
        outcomes = [run(alpha) for alpha in ordered]

    return SweepResult(
        d=d, p=p,
        records=tuple(_record(a, state) for a, (state, _, _) in zip(ordered, outcomes)),
        descriptor=descriptor.canonical(),
        bounds=tuple(bound for _, bound, _ in outcomes),
        states=tuple(state for state, _, _ in outcomes),
        integrals=tuple(integral for _, _, integral in outcomes),
    )


def check_monotone(result: SweepResult, slack: float = 1e-10) -> list[tuple[float, float]]:
    """
    Pairs (alpha_i, alpha_{i+1}) where lambda / alpha fails to be non-increasing in alpha.

    Empty list when the sweep is monotone.
    """
    alphas = result.alphas
    ratios = result.lambdas / alphas
    return [
        (float(alphas[i]), float(alphas[i + 1]))
        for i in range(len(alphas) - 1)
        if ratios[i + 1] < ratios[i] - slack
    ]


def bound_violations(result: SweepResult) -> list[float]:
    """Alphas of converged records whose lambda exceeds the test-function bound."""
    return [
        record.alpha
        for record, bound in zip(result.records, result.bounds)
        if record.converged and math.isfinite(bound) and record.lam > bound
    ]


def _require_subcritical(d: int, p: float) -> None:
    if not p > d:
        raise WeakCouplingError('DOMAIN', d=d, p=p, reason='needs p > d')


def rescale_minimizer(state: GroundState, alpha: float, d: int, p: float,
                      reference: Grid | None = None) -> Field:
    """
    f_alpha(x) = alpha^{-d/(p(p-d))} u_alpha(x alpha^{-1/(p-d)}).

    Returned on the exactly dilated grid, or interpolated onto reference.
    """
    _require_subcritical(d, p)
    grid = dilate(state.grid, alpha ** (1.0 / (p - d)))
    f = Field(grid, alpha ** (-d / (p * (p - d))) * state.field.values)
    if reference is None:
        return f
    return Field(reference, resample(f, reference))


def _aligned(f: Field, reference: Field) -> np.ndarray:
    """f shifted so its maximum sits on the reference maximum (line grids), zero fill."""
    if f.grid.kind != CoordinateKind.LINE:
        return f.values
    shift = int(np.argmax(reference.values)) - int(np.argmax(f.values))
    if shift == 0:
        return f.values
    out = np.zeros_like(f.values)
    if shift > 0:
        out[shift:] = f.values[:-shift]
    else:
        out[:shift] = f.values[-shift:]
    return out


def minimizer_distance(f: Field, reference: Field, p: float) -> float:
    """||f - reference||_p + max |f - reference| after aligning the maxima."""
    grid = reference.grid
    if f.grid.size != grid.size or f.grid.kind != grid.kind:
        raise WeakCouplingError('SHAPE_MISMATCH', expected=grid.size, got=f.grid.size)
    diff = _aligned(f, reference) - reference.values
    return norm_p(grid, diff, p) + float(np.max(np.abs(diff)))


def _fit_set(result: SweepResult) -> list[SweepRecord]:
    records = sorted(result.converged(), key=lambda r: r.alpha, reverse=True)
    if len(records) < 3:
        raise WeakCouplingError('INSUFFICIENT_DATA', converged=len(records), required=3)
    return records


def _integral(result: SweepResult, integral: float | None) -> float:
    value = integral if integral is not None else result.integral
    if value is None:
        raise WeakCouplingError('INVALID_CONFIG', reason='potential integral I_h is required')
    if not value > 0:
        raise WeakCouplingError('NONPOSITIVE_INTEGRAL', integral=value)
    return float(value)


def _aitken(values: np.ndarray) -> float:
    """Delta-squared extrapolation of the last three values."""
    r1, r2, r3 = values[-3:]
    denominator = (r3 - r2) - (r2 - r1)
    if denominator == 0:
        return float(r3)
    return float(r3 - (r3 - r2) ** 2 / denominator)


def correction_exponent(d: int, p: float) -> float:
    """s = 1/(p-d): the ratio of the potential's range to the minimizer's length scale."""
    return 1.0 / (p - d)


def _tail(alphas: np.ndarray, values: np.ndarray, parameters: int) -> tuple[np.ndarray, np.ndarray]:
    """The smaller half of the alphas, keeping at least parameters + 1 points when there are that many."""
    order = np.argsort(alphas)
    keep = min(len(alphas), max(parameters + 1, math.ceil(len(alphas) / 2)))
    chosen = np.sort(order[:keep])
    return alphas[chosen], values[chosen]


def _least_squares(alphas: np.ndarray, values: np.ndarray, exponents) -> np.ndarray | None:
    design = np.column_stack([np.ones_like(alphas)] + [alphas ** e for e in exponents])
    coef, *_ = np.linalg.lstsq(design, values, rcond=None)
    return coef if np.all(np.isfinite(coef)) else None


def extrapolate_power(alphas: np.ndarray, values: np.ndarray, s: float) -> tuple[float, tuple[float, ...], str]:
    """
    Fit values = r0 + c1 alpha^s + c2 alpha^{2s} on the small-alpha tail.

    Three records fit r0 + c1 alpha^s only. Returns (r0, (c1, c2), method);
    Aitken delta-squared on the three smallest alphas when least squares
    gives no finite fit.
    """
    alphas = np.asarray(alphas, dtype=float)
    values = np.asarray(values, dtype=float)
    exponents = (s, 2 * s) if len(alphas) > 3 else (s,)
    tail_alphas, tail_values = _tail(alphas, values, len(exponents) + 1)
    coef = _least_squares(tail_alphas, tail_values, exponents)
    if coef is None:
        order = np.argsort(alphas)[::-1]
        return _aitken(values[order]), (math.nan, math.nan), 'aitken'
    corrections = tuple(float(c) for c in coef[1:]) + (0.0,) * (2 - len(exponents))
    return float(coef[0]), corrections, f'least-squares s={s:g}'


def fit_subcritical(result: SweepResult, d: int, p: float, integral: float | None = None) -> FitResult:
    """
    Extrapolate r(alpha) = lambda alpha^{-p/(p-d)} to alpha -> 0.

    The correction exponent is fixed at s = 1/(p-d); at d = 1, p = 2 the
    model r0 + c1 alpha + c2 alpha^2 is exact to second order.

    Raises:
        WeakCouplingError: DOMAIN if p <= d; INSUFFICIENT_DATA with fewer
            than three converged records
    """
    from weakcoupling.closed_forms import predicted_lambda_subcritical

    _require_subcritical(d, p)
    records = _fit_set(result)
    I = _integral(result, integral)
    alphas = np.array([r.alpha for r in records])
    values = np.array([r.lam for r in records]) * alphas ** (-p / (p - d))
    s = correction_exponent(d, p)
    r0, (c1, c2), method = extrapolate_power(alphas, values, s)
    prediction = predicted_lambda_subcritical(1.0, d, p, I)
    fit = FitResult(
        regime=Regime.SUBCRITICAL,
        fitted=r0,
        coefficients=(r0, c1, c2, s),
        prediction=prediction,
        relative_error=abs(r0 - prediction) / abs(prediction),
        alphas=tuple(alphas.tolist()),
        values=tuple(values.tolist()),
        method=method,
        integral=I,
    )
    logger.info("fit.subcritical", extra={'fitted': r0, 'prediction': prediction, 's': s, 'method': method})
    return fit


def fit_critical(result: SweepResult, d: int, integral: float | None = None) -> FitResult:
    """
    Fit g(alpha) = alpha^{1/(d-1)} log(1/|lambda|) = g0 + c1 alpha^{1/d} + c2 alpha^{1/(d-1)}.

    The last term carries the constant in log(1/|lambda|); three records
    fit g0 + c1 alpha^{1/d} only.

    Raises:
        WeakCouplingError: NONNEGATIVE_LAMBDA if any fitted lambda >= 0;
            INSUFFICIENT_DATA with fewer than three converged records
    """
    from weakcoupling.closed_forms import predicted_log_rate_critical

    if d < 2:
        raise WeakCouplingError('DOMAIN', d=d, reason='critical law needs d >= 2')
    records = _fit_set(result)
    for record in records:
        if not record.lam < 0:
            raise WeakCouplingError('NONNEGATIVE_LAMBDA', alpha=record.alpha, lam=record.lam)
    I = _integral(result, integral)
    alphas = np.array([r.alpha for r in records])
    values = alphas ** (1.0 / (d - 1)) * np.log(1.0 / np.abs([r.lam for r in records]))
    exponents = (1.0 / d, 1.0 / (d - 1)) if len(records) > 3 else (1.0 / d,)
    coef = _least_squares(alphas, values, exponents)
    if coef is None:
        raise WeakCouplingError('NUMERICAL_FAILURE', where='fit_critical', values=values.tolist())
    g0 = float(coef[0])
    c1 = float(coef[1])
    c2 = float(coef[2]) if len(coef) > 2 else 0.0
    prediction = predicted_log_rate_critical(d, I)
    fit = FitResult(
        regime=Regime.CRITICAL,
        fitted=g0,
        coefficients=(g0, c1, c2),
        prediction=prediction,
        relative_error=abs(g0 - prediction) / abs(prediction),
        alphas=tuple(alphas.tolist()),
        values=tuple(values.tolist()),
        method=f'least-squares s={1.0 / d:g},{1.0 / (d - 1):g}' if len(exponents) > 1 else f'least-squares s={1.0 / d:g}',
        integral=I,
    )
    logger.info("fit.critical", extra={'fitted': fit.fitted, 'prediction': prediction, 'method': fit.method})
    return fit


def exponent_regression(result: SweepResult, quantity: Quantity, d: int, p: float) -> float:
    """
    Least-squares slope of log(quantity) against log(alpha).

    GRAD_NORM uses ||grad u||_p, SUP_NORM uses ||u||_inf^p.
    """
    _require_subcritical(d, p)
    records = result.converged()
    if len(records) < 2:
        raise WeakCouplingError('INSUFFICIENT_DATA', converged=len(records), required=2)
    x = np.log([r.alpha for r in records])
    if Quantity(quantity) == Quantity.GRAD_NORM:
        y = np.log([r.grad_norm_p for r in records])
    else:
        y = p * np.log([r.sup_u for r in records])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def oscillation_diagnostic(state: GroundState, rho: float, d: int) -> float:
    """
    sup over |x| <= rho of u^d - 1, after rescaling u so that u(rho) = 1.

    Raises:
        WeakCouplingError: DOMAIN if p != d; DEGENERATE_FIELD if u(rho) <= 0
    """
    grid = state.grid
    if grid.kind == CoordinateKind.LINE:
        raise WeakCouplingError('INVALID_CONFIG', reason='radial state required', kind=str(grid.kind))
    if state.p != d:
        raise WeakCouplingError('DOMAIN', d=d, p=state.p, reason='oscillation diagnostic needs p = d')
    radii = grid.radii
    at_rho = float(np.interp(rho, radii, state.field.values))
    if not at_rho > 0:
        raise WeakCouplingError('DEGENERATE_FIELD', rho=rho, value=at_rho)
    inside = radii <= rho
    inside[0] = True
    return float(np.max((state.field.values[inside] / at_rho) ** d) - 1.0)
