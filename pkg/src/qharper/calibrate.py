"""Coupling-scale calibration against a confinement target.

The two-photon coincidence at the injection site factorizes into the
square of the single-photon confinement for a same-site input, so the
calibrator targets p_1 = sqrt(target). Because the couplings scale
linearly with t, one eigendecomposition at unit scale serves every trial
t: only the phases exp(-i*E*t*z) change.
"""

import numpy as np

from .errors import CalibrationError, InvalidParameterError
from .lattice import LatticeParams, build_hamiltonian, coupling_profile
from .spectra import eigendecompose

DEFAULT_T_MIN = 1e-4
DEFAULT_T_MAX = 2.0
DEFAULT_TOL = 1e-4

# Grid resolution in dimensionless depth x = t*z; the confinement curve
# oscillates on the scale of the inverse spectral span, well above this.
_X_STEP = 0.01


def _confinement_curve(params: LatticeParams, z: float):
    """Return f(t) -> p_1(t*z) built from one unit-scale decomposition."""
    sd = eigendecompose(build_hamiltonian(coupling_profile(params.with_t(1.0))))
    weights = sd.eigenvectors[0] ** 2  # boundary-site overlap per mode
    energies = sd.eigenvalues

    def p1(t):
        amps = weights * np.exp(-1j * energies * (t * z))
        return float(np.abs(amps.sum()) ** 2)

    return p1


def calibrate_coupling(params: LatticeParams, z: float, target: float,
                       t_min: float = DEFAULT_T_MIN, t_max: float = DEFAULT_T_MAX,
                       tol: float = DEFAULT_TOL) -> float:
    """Smallest t >= t_min with boundary confinement sqrt(target) at depth t*z.

    Scans upward from the floor, brackets the first downward crossing of
    sqrt(target), and bisects it to |p_1 - sqrt(target)| <= tol. Two
    degenerate outcomes: if the floor already sits within tolerance, or if
    the confinement stays above the target over the whole bracket (the
    zero-evolution limit, e.g. tiny z), the floor is returned, since no
    t does better than staying put. Raises CalibrationError with the
    achieved coincidence range when the whole bracket undershoots the
    target instead.
    """
    if not 0 < target < 1:
        raise InvalidParameterError("target must lie in (0, 1), got %r" % (target,))
    if not (0 < t_min < t_max):
        raise InvalidParameterError("need 0 < t_min < t_max")
    if not z > 0:
        raise InvalidParameterError("z must be positive, got %r" % (z,))
    p1 = _confinement_curve(params, z)
    s = float(np.sqrt(target))

    f_lo = p1(t_min)
    if abs(f_lo - s) <= tol:
        return float(t_min)

    n_grid = max(16, int(np.ceil((t_max - t_min) * z / _X_STEP)))
    ts = np.linspace(t_min, t_max, n_grid + 1)
    sign0 = np.sign(f_lo - s)
    lo = t_min
    bracket = None
    values = [f_lo]
    for t in ts[1:]:
        f = p1(t)
        values.append(f)
        if abs(f - s) <= tol:
            bracket = (lo, float(t))  # close enough to bisect immediately
        if np.sign(f - s) != sign0:
            bracket = (lo, float(t))
        if bracket is not None:
            break
        lo = float(t)
    if bracket is None:
        values = np.array(values) ** 2
        if values.min() > target:
            return float(t_min)  # over-performs everywhere; nothing to trim
        raise CalibrationError(
            "confinement target %g unreachable for t in [%g, %g]; "
            "achieved coincidence range [%g, %g]"
            % (target, t_min, t_max, values.min(), values.max()),
            achieved=(float(values.min()), float(values.max())),
        )

    a, b = bracket
    fa = p1(a) - s
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = p1(mid) - s
        if abs(fm) <= tol:
            return float(mid)
        if np.sign(fm) == np.sign(fa):
            a, fa = mid, fm
        else:
            b = mid
    raise CalibrationError(
        "bisection failed to converge to tolerance %g" % tol
    )
