"""
Built-in potential presets.

    gaussian  A exp(-r^2 / 2 s^2)
    box       A on r < R, A/2 at r = R
    mix       A1 gaussian(s1) - A2 gaussian(s2), may change sign
    hardy     A min(1, (R / r)^2), capped inverse square
    file      two-column CSV (radius, value), linear interpolation
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from weakcoupling.exceptions import WeakCouplingError


def _omega(d: int) -> float:
    from weakcoupling.closed_forms import omega
    return omega(d)


class GaussianProfile:
    tag = 'gaussian'
    parameters = (('A', 1.0), ('s', 1.0))

    def __init__(self, A: float = 1.0, s: float = 1.0):
        if not s > 0:
            raise WeakCouplingError('INVALID_CONFIG', preset=self.tag, s=s)
        self.A = float(A)
        self.s = float(s)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return self.A * np.exp(-r * r / (2 * self.s * self.s))

    def integral(self, d: int) -> float:
        return self.A * (2 * math.pi * self.s * self.s) ** (d / 2)

    def length_scale(self) -> float:
        return self.s

    def support_radius(self) -> float:
        return 6.0 * self.s


class BoxProfile:
    tag = 'box'
    parameters = (('A', 1.0), ('R', 1.0))

    def __init__(self, A: float = 1.0, R: float = 1.0):
        if not R > 0:
            raise WeakCouplingError('INVALID_CONFIG', preset=self.tag, R=R)
        self.A = float(A)
        self.R = float(R)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        values = np.where(r < self.R, self.A, 0.0)
        # Half value on the edge matches the trapezoid rule
        return np.where(np.isclose(r, self.R, rtol=1e-12, atol=0.0), 0.5 * self.A, values)

    def integral(self, d: int) -> float:
        return self.A * _omega(d) * self.R ** d / d

    def length_scale(self) -> float:
        return self.R

    def support_radius(self) -> float:
        return self.R


class MixProfile:
    tag = 'mix'
    parameters = (('A1', None), ('s1', None), ('A2', None), ('s2', None))

    def __init__(self, A1: float, s1: float, A2: float, s2: float):
        self.inner = GaussianProfile(A1, s1)
        self.outer = GaussianProfile(A2, s2)

    def __call__(self, r):
        return self.inner(r) - self.outer(r)

    def integral(self, d: int) -> float:
        return self.inner.integral(d) - self.outer.integral(d)

    def length_scale(self) -> float:
        return min(self.inner.s, self.outer.s)

    def support_radius(self) -> float:
        return max(self.inner.support_radius(), self.outer.support_radius())


class HardyProfile:
    tag = 'hardy'
    parameters = (('A', 1.0), ('R', 1.0))

    def __init__(self, A: float = 1.0, R: float = 1.0):
        if not R > 0:
            raise WeakCouplingError('INVALID_CONFIG', preset=self.tag, R=R)
        self.A = float(A)
        self.R = float(R)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        with np.errstate(divide='ignore'):
            tail = (self.R / r) ** 2
        return self.A * np.minimum(1.0, tail)

    def integral(self, d: int) -> float | None:
        # |x|^{-2} is not integrable at infinity for d >= 2
        return 4.0 * self.A * self.R if d == 1 else None

    def length_scale(self) -> float:
        return self.R

    def support_radius(self) -> float:
        return 16.0 * self.R


class TabulatedProfile:
    tag = 'file'
    parameters = (('path', None),)

    def __init__(self, path: str):
        self.path = str(path)
        try:
            with Path(self.path).open(newline='') as fh:
                rows = [row for row in csv.reader(fh) if row and not row[0].startswith('#')]
        except OSError as e:
            raise WeakCouplingError('IO_FAILURE', path=self.path, reason=str(e)) from e
        try:
            # Optional header row
            if rows and not _is_number(rows[0][0]):
                rows = rows[1:]
            table = np.array([[float(a), float(b)] for a, b, *_ in rows], dtype=float)
        except ValueError as e:
            raise WeakCouplingError('PARSE_ERROR', path=self.path, reason=str(e)) from e
        if table.shape[0] < 2 or np.any(np.diff(table[:, 0]) <= 0) or table[0, 0] < 0:
            raise WeakCouplingError(
                'PARSE_ERROR', path=self.path, reason='need >= 2 rows with increasing radii >= 0',
            )
        self.radii = table[:, 0]
        self.values = table[:, 1]

    def __call__(self, r):
        return np.interp(np.asarray(r, dtype=float), self.radii, self.values, left=0.0, right=0.0)

    def integral(self, d: int) -> None:
        return None

    def length_scale(self) -> float:
        return 4.0 * float(np.median(np.diff(self.radii)))

    def support_radius(self) -> float:
        return float(self.radii[-1])


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


BUILTIN_PRESETS = {
    cls.tag: cls
    for cls in (GaussianProfile, BoxProfile, MixProfile, HardyProfile, TabulatedProfile)
}
