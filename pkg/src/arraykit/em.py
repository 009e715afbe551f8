"""Physical constants, unit helpers, angle conventions and small complex
linear algebra used throughout the toolkit.

Angles
------
Two conventions appear in this package:

* *from-array-axis* ``theta`` in ``[0, pi]``; broadside is ``pi/2``. This is
  the canonical convention of every array computation.
* *broadside-offset* ``phi`` in ``[-pi/2, pi/2]``; broadside is ``0``. Used
  for user-facing steering angles ("steer to +30 deg").

They are related by ``theta = pi/2 - phi``.
"""

import numpy as np

from .errors import DomainError, ShapeError

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact

DB_FLOOR = -200.0


def wavelength(frequency):
    """Free-space wavelength in metres for a frequency in hertz."""
    f = np.asarray(frequency, dtype=float)
    if np.any(~np.isfinite(f)) or np.any(f <= 0):
        raise DomainError(f"frequency must be positive, got {frequency!r}")
    lam = SPEED_OF_LIGHT / f
    return float(lam) if lam.ndim == 0 else lam


def wavenumber(frequency):
    """Free-space wavenumber ``k = 2*pi/lambda`` in rad/m."""
    return 2.0 * np.pi / wavelength(frequency)


def db_power(ratio):
    """``10*log10(ratio)`` with ``0`` mapped to :data:`DB_FLOOR`."""
    r = np.asarray(ratio, dtype=float)
    if np.any(r < 0):
        raise DomainError("power ratio must be non-negative")
    with np.errstate(divide="ignore"):
        out = np.where(r > 0, 10.0 * np.log10(np.where(r > 0, r, 1.0)), DB_FLOOR)
    out = np.maximum(out, DB_FLOOR)
    return float(out) if out.ndim == 0 else out


def db_amplitude(ratio):
    """``20*log10(|ratio|)`` with ``0`` mapped to :data:`DB_FLOOR`."""
    a = np.abs(np.asarray(ratio))
    return db_power(a * a)


def broadside_to_axis(phi):
    """Broadside-offset angle (rad) to from-array-axis angle (rad)."""
    return np.pi / 2 - phi


def axis_to_broadside(theta):
    """From-array-axis angle (rad) to broadside-offset angle (rad)."""
    return np.pi / 2 - theta


def hermitian_product(h):
    """Return ``H @ H^H`` for an ``Nr x Nt`` matrix (vectors are columns)."""
    h = np.asarray(h, dtype=complex)
    if h.ndim == 1:
        h = h[:, None]
    if h.ndim != 2:
        raise ShapeError(f"expected a matrix, got shape {h.shape}")
    return h @ h.conj().T


def determinant(m):
    """Determinant of a small dense complex matrix.

    Gaussian elimination with partial pivoting. Diagonal inputs are exact
    since no elimination step touches them.
    """
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"determinant needs a square matrix, got {a.shape}")
    n = a.shape[0]
    det = 1.0 + 0.0j
    for col in range(n):
        pivot = col + int(np.argmax(np.abs(a[col:, col])))
        if a[pivot, col] == 0:
            return 0.0 + 0.0j
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            det = -det
        det *= a[col, col]
        below = a[col + 1:, col]
        if np.any(below != 0):
            factors = below / a[col, col]
            a[col + 1:, col:] -= np.outer(factors, a[col, col:])
    return det
