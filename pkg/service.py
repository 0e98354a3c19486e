"""
Lab: the single public interface for weak-coupling computations.

Usage:
    from weakcoupling import lab, WeakCouplingError

    grid = lab.build_grid(GridSpec(d=1, kind=CoordinateKind.LINE, n=4097, extent=40))
    state = lab.solve_coupling('gaussian:A=1,s=1', d=1, p=2, alpha=0.1)
    result = lab.sweep('gaussian:A=1,s=1', d=1, p=2, alphas=[0.2, 0.1, 0.05])
    lab.fit_subcritical(result, d=1, p=2)

Implementation is split into modules under weakcoupling/services/:
    grid.py         build_grid, quadrature, grow, embed, resample
    functional.py   eval_Q, rayleigh, grad_Q, el_residual, gradient_check
    potentials.py   parse_potential, format_potential, sample_potential
    solver.py       solve_lambda, solve_E, solve_coupling
    asymptotics.py  sweep, rescale_minimizer, fits, diagnostics
plus the pure formulas of weakcoupling/closed_forms.py.
"""

from weakcoupling import closed_forms
from weakcoupling.services import asymptotics, functional, grid, potentials, runner, solver


class Lab:
    """
    Single interface for grids, solves, sweeps, fits and closed forms.

    Every attribute is a plain function; Lab holds no state.
    """

    # Grids
    build_grid = staticmethod(grid.build_grid)
    quadrature = staticmethod(grid.quadrature)
    differences = staticmethod(grid.differences)
    gradient_magnitudes = staticmethod(grid.gradient_magnitudes)
    domain_measure = staticmethod(grid.domain_measure)

    # Functional
    eval_Q = staticmethod(functional.eval_Q)
    rayleigh = staticmethod(functional.rayleigh)
    grad_Q = staticmethod(functional.grad_Q)
    el_residual = staticmethod(functional.el_residual)
    gradient_check = staticmethod(functional.gradient_check)

    # Potentials
    parse_potential = staticmethod(potentials.parse_potential)
    format_potential = staticmethod(potentials.format_potential)
    sample_potential = staticmethod(potentials.sample_potential)

    # Solver
    solve_lambda = staticmethod(solver.solve_lambda)
    solve_E = staticmethod(solver.solve_E)
    solve_coupling = staticmethod(solver.solve_coupling)

    # Asymptotics
    default_alphas = staticmethod(asymptotics.default_alphas)
    sweep = staticmethod(asymptotics.sweep)
    rescale_minimizer = staticmethod(asymptotics.rescale_minimizer)
    minimizer_distance = staticmethod(asymptotics.minimizer_distance)
    fit_subcritical = staticmethod(asymptotics.fit_subcritical)
    fit_critical = staticmethod(asymptotics.fit_critical)
    exponent_regression = staticmethod(asymptotics.exponent_regression)
    oscillation_diagnostic = staticmethod(asymptotics.oscillation_diagnostic)
    check_monotone = staticmethod(asymptotics.check_monotone)
    bound_violations = staticmethod(asymptotics.bound_violations)
    correction_exponent = staticmethod(asymptotics.correction_exponent)

    # Closed forms
    omega = staticmethod(closed_forms.omega)
    hardy_constant = staticmethod(closed_forms.hardy_constant)
    sobolev_constant = staticmethod(closed_forms.sobolev_constant)
    E_closed_1d = staticmethod(closed_forms.E_closed_1d)
    E_from_sobolev = staticmethod(closed_forms.E_from_sobolev)
    explicit_minimizer_1d = staticmethod(closed_forms.explicit_minimizer_1d)
    prediction = staticmethod(closed_forms.prediction)
    capacity_annulus = staticmethod(closed_forms.capacity_annulus)
    second_order_coefficient_1d = staticmethod(closed_forms.second_order_coefficient_1d)
    predicted_sqrt_binding_1d = staticmethod(closed_forms.predicted_sqrt_binding_1d)

    # Runs
    run = staticmethod(runner.run)
