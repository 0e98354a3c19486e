"""
Exceptions for Weakcoupling.

All errors are WeakCouplingError with a structured code for programmatic handling.
Non-convergence of a solve is not an error: it is reported on the GroundState.
"""

from typing import Any

import numpy as np

# Exit status of the command-line surface per error category
EXIT_CONFIGURATION = 2
EXIT_DATA = 3
EXIT_IO = 4


class WeakCouplingError(Exception):
    """
    Structured exception for grid, solver, fit and CLI operations.

    Usage:
        try:
            lab.fit_critical(sweep, d=2, integral=i_h)
        except WeakCouplingError as e:
            if e.code == 'NONNEGATIVE_LAMBDA':
                print(f"alpha={e.data['alpha']} did not bind")

    Attributes:
        code: Error code for programmatic handling
        message: Human-readable message
        data: Additional context data
    """

    _default_messages = {
        'INVALID_GRID': 'Invalid grid specification',
        'INVALID_CONFIG': 'Invalid configuration',
        'SHAPE_MISMATCH': 'Array length does not match the grid',
        'DOMAIN': 'Parameters outside the domain of the formula',
        'EPSILON_REQUIRED': 'p < 2 requires a positive gradient regularization',
        'PARSE_ERROR': 'Malformed potential descriptor',
        'UNKNOWN_PRESET': 'Unknown potential preset',
        'NONPOSITIVE_INTEGRAL': 'Potential integral must be positive',
        'NONNEGATIVE_LAMBDA': 'Eigenvalue is not negative',
        'INSUFFICIENT_DATA': 'Not enough converged records to fit',
        'NUMERICAL_FAILURE': 'Non-finite energy encountered',
        'DEGENERATE_FIELD': 'Field vanishes where it must be positive',
        'IO_FAILURE': 'Could not read or write artifact',
        'MALFORMED_ARTIFACT': 'Sweep artifact could not be parsed',
    }

    _exit_codes = {
        'NONPOSITIVE_INTEGRAL': EXIT_DATA,
        'NONNEGATIVE_LAMBDA': EXIT_DATA,
        'NUMERICAL_FAILURE': EXIT_DATA,
        'DEGENERATE_FIELD': EXIT_DATA,
        'MALFORMED_ARTIFACT': EXIT_DATA,
        'IO_FAILURE': EXIT_IO,
    }

    def __init__(self, code: str, message: str | None = None, **data: Any):
        self.code = code
        self.message = message or self._default_messages.get(code, code)
        self.data = data
        super().__init__(f"[{code}] {self.message}")

    @property
    def exit_code(self) -> int:
        """CLI exit status: 2 configuration, 3 data, 4 I/O."""
        return self._exit_codes.get(self.code, EXIT_CONFIGURATION)

    def as_dict(self) -> dict[str, Any]:
        """Serialize to dict (useful for JSON reports)."""
        return {
            'code': self.code,
            'message': self.message,
            'data': {
                k: float(v) if isinstance(v, np.floating) else v
                for k, v in self.data.items()
            }
        }
