"""Free-space electromagnetic Green's tensor and the scalar hopping amplitude.

Everything is expressed in natural units: the single-emitter spontaneous
emission rate gamma_0 is the energy unit, hbar = 1, and lengths are measured
in 1/k_0 (inverse resonant wavenumber).  In these units the dipole coupling
constant mu_0 * omega_0^2 * |P|^2 equals 3*pi.

The scalar amplitude ``hopping_scalar`` is the tensor contraction
``mu_0 omega_0^2 P* . G(r x_hat) . P`` for a linear dipole tilted by an angle
theta from the chain axis.  Its overall constant is fixed so that
Im G(r -> 0) = 1/2, the on-site spontaneous-emission limit; this is the
unique normalization consistent with the three-dimensional tensor above.
The closed form used throughout is

    G(r) = (3/4) e^{ir} [ A/r + B (i/r^2 - 1/r^3) ],
    A = 1 - cos^2(theta),  B = 1 - 3 cos^2(theta).

At the magic tilt theta = arccos(1/sqrt(3)) the 1/r^2 and 1/r^3 terms cancel
identically and G(r) = e^{ir}/(2r): the hopping decays with the same power as
the lattice dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "MAGIC_ANGLE",
    "DIPOLE_COUPLING",
    "DipoleOrientation",
    "ChainGeometry",
    "green_tensor",
    "hopping_scalar",
    "hopping_coefficients",
]

#: Dipole tilt that removes every (1 - 3 cos^2 theta) term: arccos(1/sqrt(3)).
MAGIC_ANGLE = float(np.arccos(1.0 / np.sqrt(3.0)))

#: mu_0 * omega_0^2 * |P|^2 in gamma_0 = 1, k_0 = 1 units.
DIPOLE_COUPLING = 3.0 * np.pi


@dataclass(frozen=True)
class DipoleOrientation:
    """Linear transition dipole tilted by ``theta`` radians from the chain axis."""

    theta: float = MAGIC_ANGLE

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= np.pi / 2 + 1e-12:
            raise ValueError(f"dipole tilt must lie in [0, pi/2], got {self.theta}")

    @property
    def unit_vector(self) -> np.ndarray:
        """Unit dipole direction in the x-z plane (chain along x)."""
        return np.array([np.cos(self.theta), 0.0, np.sin(self.theta)])


@dataclass(frozen=True)
class ChainGeometry:
    """A finite open chain of ``n_sites`` emitters with lattice constant ``spacing``.

    ``spacing`` is the dimensionless product d * k_0.
    """

    n_sites: int
    spacing: float = np.pi / 2

    def __post_init__(self) -> None:
        if self.n_sites < 2:
            raise ValueError(f"need at least 2 emitters, got {self.n_sites}")
        if self.spacing <= 0.0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")

    def require_even(self) -> None:
        """Two-species constructions need an even number of sites."""
        if self.n_sites % 2:
            raise ValueError(
                f"sublattice structure undefined for odd n_sites = {self.n_sites}"
            )


def green_tensor(separation) -> np.ndarray:
    """Classical 3D free-space electromagnetic Green's tensor at resonance.

    Parameters
    ----------
    separation : array_like, shape (3,)
        Relative position of the two dipoles in units of 1/k_0.

    Returns
    -------
    (3, 3) complex ndarray
        ``e^{ir}/(4 pi r^3) [ (r^2 + i r - 1) I + (-r^2 - 3 i r + 3) rr/r^2 ]``
        with r = |separation| (k_0 = 1 units).

    Raises
    ------
    ValueError
        For zero separation; the on-site value diverges and is excluded from
        every chain Hamiltonian.
    """
    rvec = np.asarray(separation, dtype=float)
    if rvec.shape != (3,):
        raise ValueError(f"separation must be a 3-vector, got shape {rvec.shape}")
    r = float(np.linalg.norm(rvec))
    if r == 0.0:
        raise ValueError("Green's tensor diverges at zero separation")
    proj = np.outer(rvec, rvec) / r**2
    pref = np.exp(1j * r) / (4.0 * np.pi * r**3)
    return pref * ((r**2 + 1j * r - 1.0) * np.eye(3) + (-(r**2) - 3j * r + 3.0) * proj)


def hopping_coefficients(orientation: DipoleOrientation) -> tuple[float, float]:
    """Angular coefficients (A, B) = (1 - cos^2 theta, 1 - 3 cos^2 theta)."""
    c2 = np.cos(orientation.theta) ** 2
    return 1.0 - c2, 1.0 - 3.0 * c2


def hopping_scalar(r, orientation: DipoleOrientation = DipoleOrientation()):
    """Scalar hopping amplitude G(r) between two emitters a distance r apart.

    Accepts a scalar or an ndarray of distances (units 1/k_0, all > 0) and
    returns the complex amplitude in gamma_0 = 1 units.  The imaginary part
    tends to +1/2 as r -> 0 for every tilt angle.

    Raises
    ------
    ValueError
        If any distance is not strictly positive.
    """
    rr = np.asarray(r, dtype=float)
    if np.any(rr <= 0.0):
        raise ValueError("hopping amplitude requires r > 0")
    A, B = hopping_coefficients(orientation)
    phase = np.exp(1j * rr)
    value = 0.75 * phase * (A / rr + B * (1j / rr**2 - 1.0 / rr**3))
    if np.isscalar(r):
        return complex(value)
    return value
