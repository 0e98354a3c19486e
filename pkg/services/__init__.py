"""
Weakcoupling services: the numerical operations behind the Lab facade.

    grid.py           build_grid, quadrature, differences, grow/embed/resample
    functional.py     Q, N, Rayleigh quotient, gradient, Euler-Lagrange residual
    potentials.py     descriptor parsing and sampling of presets
    solver.py         solve_lambda, solve_E, grid planning
    asymptotics.py    sweeps, rescaled minimizers, fits
    serialization.py  CSV/JSON artifacts
    validation.py     invariant suite of the validate command
    runner.py         one command-line run per RunConfig
"""
