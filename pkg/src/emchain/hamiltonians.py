"""Builders for every chain Hamiltonian used in the analysis.

Real-space operators are dense complex ndarrays on finite open chains with
sites j = 1..N at positions j*d.  The photon-mediated hopping makes them
complex symmetric (H == H.T, not Hermitian).  The alternating two-species
chain adds the staggered diagonal +h, -h, +h, ... starting at site 1.

Momentum-space objects are 2x2 blocks in the (odd, even) sublattice basis
with the gauge fixed by Fourier phases e^{i k j d}: the off-diagonal carries
e^{-+ i k d} times the odd-distance hopping sum Gt_d(k) - Gt_2d(k).

The deformation family interpolates the sigma_0-stripped chain toward a
chain of decoupled dissipative dimers.  Both endpoints are assembled
exactly in real space and the path is linear in the control parameter, which
realizes the continuous-momentum inverse Fourier transform of the deformed
Bloch symbol without the aliasing a finite momentum sample would introduce.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dispersion import discrete_ft, g_of_k, is_light_line
from .greens import ChainGeometry, DipoleOrientation, hopping_scalar

__all__ = [
    "AlternationStrength",
    "BlochSample",
    "build_rddi",
    "build_two_band",
    "with_onsite_decay",
    "strip_even_hoppings",
    "dimer_blocks",
    "build_bloch",
    "build_deformed_bloch",
    "build_deformed_real_space",
    "build_short_range_ssh",
]

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

#: Trivial endpoint of the deformation: a dissipative intra-cell dimer
#: coupling.  The sign is chosen so that it adds constructively to the
#: nearest-neighbour dissipative hopping of the chain; with the opposite sign
#: the intra-cell bond passes through zero along the path and the imaginary
#: line gap closes, which the deformation is required to preserve.
DIMER_TARGET = -1.0j * SIGMA_X


@dataclass(frozen=True)
class AlternationStrength:
    """Staggered detuning amplitude h, optionally recorded as h = c * N^(-alpha)."""

    h: float
    alpha: float | None = None
    coefficient: float = 1.0

    def __post_init__(self) -> None:
        if self.h < 0.0:
            raise ValueError("h < 0 is equivalent to a sublattice swap; use h >= 0")

    @classmethod
    def from_scaling(cls, alpha: float, n_sites: int, coefficient: float = 1.0):
        return cls(h=coefficient * float(n_sites) ** (-alpha), alpha=alpha, coefficient=coefficient)


@dataclass(frozen=True)
class BlochSample:
    """One quasi-momentum point: the 2x2 Bloch matrix and its two bands."""

    k: float
    matrix: np.ndarray
    omega_plus: complex
    omega_minus: complex


def _staggered_diagonal(n_sites: int, h: float) -> np.ndarray:
    """+h on odd sites (j = 1, 3, ...), -h on even, with j counted from 1."""
    j = np.arange(1, n_sites + 1)
    return h * (-1.0) ** (j + 1)


def build_rddi(
    geometry: ChainGeometry, orientation: DipoleOrientation = DipoleOrientation()
) -> np.ndarray:
    """Photon-mediated hopping Hamiltonian on the open chain.

    Entry (i, j), i != j, is -G(|i - j| d); the diagonal is zero (the on-site
    term is attached separately, see ``with_onsite_decay``).  The result is
    complex symmetric by the evenness of G.
    """
    n = geometry.n_sites
    idx = np.arange(n)
    sep = np.abs(idx[:, None] - idx[None, :]).astype(float) * geometry.spacing
    H = np.zeros((n, n), dtype=complex)
    mask = sep > 0
    H[mask] = -hopping_scalar(sep[mask], orientation)
    return H


def build_two_band(
    geometry: ChainGeometry,
    orientation: DipoleOrientation = DipoleOrientation(),
    alternation: AlternationStrength = AlternationStrength(0.0),
) -> np.ndarray:
    """Alternating two-species chain: RDDI plus the staggered diagonal."""
    geometry.require_even()
    H = build_rddi(geometry, orientation)
    np.fill_diagonal(H, _staggered_diagonal(geometry.n_sites, alternation.h))
    return H


def with_onsite_decay(H: np.ndarray) -> np.ndarray:
    """Attach the uniform on-site decay -i/2 (gamma_0 = 1 units).

    With this term every eigenvalue lies in the closed lower half-plane and
    the physical decay rate of an eigenstate is -2 Im(omega).
    """
    return H - 0.5j * np.eye(H.shape[0])


def strip_even_hoppings(H: np.ndarray) -> np.ndarray:
    """Remove all even-separation hoppings (the sigma_0 part of the symbol).

    Both sublattices carry the identical even-distance hopping set, so this
    is the real-space analogue of dropping the -Gt_2d(k) sigma_0 term from
    the Bloch matrix.  The diagonal (odd "separation" zero is even) is kept
    only through its staggered, traceless part.
    """
    n = H.shape[0]
    idx = np.arange(n)
    sep = np.abs(idx[:, None] - idx[None, :])
    out = np.where(sep % 2 == 1, H, 0.0)
    diag = H.diagonal()
    out[idx, idx] = diag - diag.mean()
    return out


def dimer_blocks(n_sites: int) -> np.ndarray:
    """Block-diagonal chain of decoupled intra-cell dimers (DIMER_TARGET per cell)."""
    if n_sites % 2:
        raise ValueError("dimer chain needs even n_sites")
    H = np.zeros((n_sites, n_sites), dtype=complex)
    for c in range(n_sites // 2):
        H[2 * c : 2 * c + 2, 2 * c : 2 * c + 2] = DIMER_TARGET
    return H


def build_bloch(
    k: float,
    alternation: AlternationStrength = AlternationStrength(0.0),
    spacing: float = np.pi / 2,
    orientation: DipoleOrientation = DipoleOrientation(),
    tolerance: float = 1e-10,
) -> BlochSample:
    """Two-band Bloch matrix at quasi-momentum k (d k in [-pi/2, pi/2]).

    Assembled from the lattice Fourier sums: diagonal +/-h - Gt_2d(k),
    off-diagonals -e^{-+ i k d} (Gt_d(k) - Gt_2d(k)).  Exactly on the light
    line the splitting sum vanishes term by term and the matrix is diagonal.
    """
    kd = k * spacing
    if abs(kd) > np.pi / 2 + 1e-9:
        raise ValueError("two-band Bloch matrix defined on d*k in [-pi/2, pi/2]")
    h = alternation.h
    g2 = discrete_ft(k, 2.0 * spacing, orientation, tolerance)
    if is_light_line(k, spacing):
        diff = 0.0 + 0.0j
    else:
        g1 = discrete_ft(k, spacing, orientation, tolerance)
        diff = g1.value - g2.value
    m = np.array(
        [
            [h - g2.value, -np.exp(-1j * kd) * diff],
            [-np.exp(1j * kd) * diff, -h - g2.value],
        ]
    )
    root = np.sqrt(diff**2 + h**2 + 0.0j)
    return BlochSample(k=k, matrix=m, omega_plus=-g2.value + root, omega_minus=-g2.value - root)


def build_deformed_bloch(
    k: float,
    lam: float,
    alternation: AlternationStrength = AlternationStrength(0.0),
    spacing: float = np.pi / 2,
) -> np.ndarray:
    """Deformation path H(lam) = (1 - lam) H'(k) + lam * DIMER_TARGET.

    H'(k) is the sigma_0-stripped Bloch matrix h sigma_z - i g(k) cos(kd)
    sigma_x - i g(k) sin(kd) sigma_y with the ideal piecewise g(k).  Both the
    sublattice pseudo-Hermiticity sigma_z H sigma_z = H^dagger and the
    imaginary line gap survive along the whole path.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError("deformation parameter must lie in [0, 1]")
    kd = k * spacing
    h = alternation.h
    g = g_of_k(k, spacing)
    ssh = h * SIGMA_Z - 1j * g * np.cos(kd) * SIGMA_X - 1j * g * np.sin(kd) * SIGMA_Y
    return (1.0 - lam) * ssh + lam * DIMER_TARGET


def build_deformed_real_space(
    geometry: ChainGeometry,
    lam: float,
    alternation: AlternationStrength = AlternationStrength(0.0),
    orientation: DipoleOrientation = DipoleOrientation(),
) -> np.ndarray:
    """Open-chain realization of the deformation family.

    Linear interpolation between the sigma_0-stripped two-band chain and the
    decoupled dimer chain; the hopping set of each endpoint is the exact
    continuous-momentum inverse Fourier transform of the corresponding Bloch
    symbol, truncated by the open boundary.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError("deformation parameter must lie in [0, 1]")
    geometry.require_even()
    stripped = strip_even_hoppings(build_two_band(geometry, orientation, alternation))
    return (1.0 - lam) * stripped + lam * dimer_blocks(geometry.n_sites)


def build_short_range_ssh(
    k: float, g: float, h: float, spacing: float = np.pi / 2
) -> np.ndarray:
    """Short-range analogue with a constant real off-diagonal coupling g.

    h sigma_z - i g cos(kd) sigma_x - i g sin(kd) sigma_y on the full zone
    d k in [-pi, pi]; eigenvalues +/- sqrt(h^2 - g^2) independent of k.
    """
    kd = k * spacing
    if abs(kd) > np.pi + 1e-9:
        raise ValueError("short-range model defined on d*k in [-pi, pi]")
    return h * SIGMA_Z - 1j * g * np.cos(kd) * SIGMA_X - 1j * g * np.sin(kd) * SIGMA_Y
