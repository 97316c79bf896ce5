"""Non-Hermitian eigenanalysis: left/right spectra, the eigenvector-angle
coalescence metric, Jordan-structure census, line-gap detection, and
power-law finite-size fits.

Eigenvector coalescence is diagnosed with the smallest angle between
normalized right eigenvectors,

    alpha_m = min_{i != j} arccos |<psi_i | psi_j>|,

which drops to zero at an exceptional point but stays pi/2 for
diagonalizable degeneracies (degenerate clusters are orthonormalized first
when, and only when, their eigenvector bundle is numerically full rank).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
import scipy.linalg as sla

__all__ = [
    "Spectrum",
    "EpReport",
    "JordanCensus",
    "JordanClusteringError",
    "LineGapReport",
    "PowerLawFit",
    "EdgeEpScaling",
    "eigendecompose",
    "angle_metric",
    "scan_eps",
    "jordan_structure",
    "line_gap",
    "fit_power_law",
    "min_decay_rate",
    "h_edge_ep_scaling",
]

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


class JordanClusteringError(ValueError):
    """Eigenvalue clusters are separated by less than the safety margin."""


@dataclass
class Spectrum:
    """Full complex eigensystem with left/right pairing.

    ``right`` and ``left`` hold unit-norm column eigenvectors ordered like
    ``eigenvalues`` (sorted by (Re, Im)).  ``condition[i]`` is the eigenvalue
    condition number 1/|<l_i|r_i>|; it diverges at an exceptional point and
    serves as the per-eigenvalue diagonalizability diagnostic.
    """

    eigenvalues: np.ndarray
    right: np.ndarray
    left: np.ndarray
    condition: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.size


@dataclass
class EpReport:
    """Result of an exceptional-point scan over the alternation strength."""

    h_values: list[float]
    h_grid: np.ndarray
    angle_curve: np.ndarray
    refined_angles: list[float] = field(default_factory=list)
    jordan_block_count: int | None = None


@dataclass(frozen=True)
class JordanCensus:
    """Counts of elementary sectors found by rank comparison."""

    diagonalizable_1x1: int
    defective_2x2: int
    other: tuple = ()

    @property
    def total_defective(self) -> int:
        return self.defective_2x2 + sum(1 for _ in self.other)


@dataclass(frozen=True)
class LineGapReport:
    """Maximal-margin horizontal line Im(omega) = c through the spectrum."""

    gapped: bool
    c: float
    margin: float
    below: int
    above: int


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares power law value = prefactor * size^exponent."""

    exponent: float
    prefactor: float
    r_squared: float
    window: tuple[float, float]


@dataclass(frozen=True)
class EdgeEpScaling:
    """Finite-size scaling of the edge-block coalescence strength."""

    fit: PowerLawFit
    h_values: dict[int, float]
    angle_minima: dict[int, float]


def eigendecompose(matrix: np.ndarray) -> Spectrum:
    """Complete eigensystem of a dense complex matrix.

    Right vectors satisfy H v = lambda v, left vectors H^dagger u =
    conj(lambda) u; both are normalized to unit Euclidean norm and ordered
    deterministically by (Re, Im) of the eigenvalue.
    """
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("eigendecompose needs a square matrix")
    w, vl, vr = sla.eig(matrix, left=True, right=True)
    order = np.lexsort((w.imag, w.real))
    w, vl, vr = w[order], vl[:, order], vr[:, order]
    vr = vr / np.linalg.norm(vr, axis=0)
    vl = vl / np.linalg.norm(vl, axis=0)
    overlap = np.abs(np.sum(vl.conj() * vr, axis=0))
    cond = np.where(overlap > 0.0, 1.0 / np.maximum(overlap, 1e-300), np.inf)
    return Spectrum(eigenvalues=w, right=vr, left=vl, condition=cond)


def _degenerate_clusters(w: np.ndarray, tol: float) -> list[np.ndarray]:
    """Chain-cluster eigenvalues whose pairwise distance is below ``tol``."""
    n = w.size
    order = np.lexsort((w.imag, w.real))
    clusters: list[list[int]] = []
    for i in order:
        placed = False
        for cl in clusters:
            if any(abs(w[i] - w[j]) < tol for j in cl):
                cl.append(i)
                placed = True
                break
        if not placed:
            clusters.append([i])
    return [np.array(cl) for cl in clusters]


def angle_metric(spectrum: Spectrum, degeneracy_tol: float = 1e-8) -> float:
    """Smallest angle between all pairs of normalized right eigenvectors.

    Within numerically degenerate eigenvalue clusters the vectors are
    replaced by an orthonormal basis of their span provided the bundle is
    full rank (a diagonalizable degeneracy, which should report pi/2); a
    rank-deficient bundle is a defective cluster and is left untouched so the
    vanishing angle is visible.
    """
    if spectrum.dim < 2:
        raise ValueError("angle metric needs at least two eigenvectors")
    w = spectrum.eigenvalues
    scale = max(np.max(np.abs(w)), 1.0)
    V = spectrum.right.copy()
    for cl in _degenerate_clusters(w, degeneracy_tol * scale):
        if cl.size < 2:
            continue
        bundle = V[:, cl]
        svals = np.linalg.svd(bundle, compute_uv=False)
        if svals[-1] > 1e-3:
            q, _ = np.linalg.qr(bundle)
            V[:, cl] = q[:, : cl.size]
    gram = np.abs(V.conj().T @ V)
    iu = np.triu_indices(spectrum.dim, k=1)
    return float(np.arccos(np.clip(np.max(gram[iu]), -1.0, 1.0)))


def _pair_angle(spectrum: Spectrum, indices) -> float:
    a = spectrum.right[:, indices[0]]
    b = spectrum.right[:, indices[1]]
    return float(np.arccos(np.clip(abs(np.vdot(a, b)), -1.0, 1.0)))


def _restricted_angle(matrix: np.ndarray, restrict: str | None) -> float:
    spec = eigendecompose(matrix)
    if restrict is None:
        return angle_metric(spec)
    if restrict == "lowest_re":
        idx = np.argsort(spec.eigenvalues.real)[:2]
        return _pair_angle(spec, idx)
    if restrict == "decay_near_gamma0":
        idx = np.argsort(np.abs(spec.eigenvalues.imag))[:2]
        return _pair_angle(spec, idx)
    raise ValueError(f"unknown restriction {restrict!r}")


def _golden_minimize(f: Callable[[float], float], a: float, b: float, xtol: float):
    c, d = b - GOLDEN * (b - a), a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return ((a + b) / 2, fc) if fc < fd else ((a + b) / 2, fd)


def scan_eps(
    builder: Callable[[float], np.ndarray],
    h_grid,
    restrict: str | None = None,
    detection_threshold: float = 0.01,
    prefilter: float = 0.35,
    refine_xtol: float = 1e-5,
    census_tolerance: float | None = None,
) -> EpReport:
    """Scan the eigenvector-angle metric over an h grid and refine its dips.

    Every local minimum of the sampled curve below ``prefilter`` is refined
    by golden-section search; refined minima whose angle falls below
    ``detection_threshold`` are reported as exceptional points.  The angle
    dips grow as sqrt|h - h*| away from a coalescence, so grid samples
    rarely drop below the detection threshold themselves; the pre-filter
    keeps refinement affordable.
    """
    h_grid = np.asarray(h_grid, dtype=float)
    if np.any(np.diff(h_grid) <= 0):
        raise ValueError("h_grid must be strictly increasing")
    f = lambda h: _restricted_angle(builder(float(h)), restrict)
    curve = np.array([f(h) for h in h_grid])
    minima: list[int] = []
    for i in range(len(h_grid)):
        left = curve[i - 1] if i > 0 else np.inf
        right = curve[i + 1] if i < len(h_grid) - 1 else np.inf
        if curve[i] < prefilter and curve[i] <= left and curve[i] <= right:
            minima.append(i)
    detections: list[tuple[float, float]] = []
    for i in minima:
        a = h_grid[max(i - 1, 0)]
        b = h_grid[min(i + 1, len(h_grid) - 1)]
        h_star, val = _golden_minimize(f, a, b, refine_xtol)
        if val < detection_threshold:
            detections.append((h_star, val))
    detections.sort()
    report = EpReport(
        h_values=[h for h, _ in detections],
        h_grid=h_grid,
        angle_curve=curve,
        refined_angles=[v for _, v in detections],
    )
    if detections and census_tolerance is not None:
        h_best = min(detections, key=lambda t: t[1])[0]
        census = jordan_structure(builder(h_best), census_tolerance)
        report.jordan_block_count = census.total_defective
    return report


def _numerical_rank(M: np.ndarray, cutoff: float) -> int:
    svals = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(svals > cutoff))


def jordan_structure(matrix: np.ndarray, tolerance: float = 1e-6) -> JordanCensus:
    """Census of Jordan sectors by rank comparison.

    Eigenvalues are clustered at ``tolerance * ||H||``; for each cluster of
    algebraic multiplicity m, the geometric multiplicity is dim - rank(H -
    lambda) and the number of blocks of size >= 2 is rank(H - lambda) -
    rank((H - lambda)^2).  Only 1x1 and 2x2 sectors occur in this model;
    anything larger is reported in ``other``.

    Raises
    ------
    JordanClusteringError
        When distinct clusters approach within twice the clustering
        tolerance, making the census ambiguous.
    """
    matrix = np.asarray(matrix, dtype=complex)
    n = matrix.shape[0]
    w = np.linalg.eigvals(matrix)
    scale = max(np.max(np.abs(w)), np.linalg.norm(matrix, 2) if n <= 64 else 1.0, 1.0)
    tol = tolerance * scale
    clusters = _degenerate_clusters(w, tol)
    centers = [np.mean(w[cl]) for cl in clusters]
    for i in range(len(centers)):
        for j in range(i + 1, len(centers)):
            if abs(centers[i] - centers[j]) < 2.0 * tol:
                raise JordanClusteringError(
                    f"clusters at {centers[i]:.6g} and {centers[j]:.6g} separated by "
                    f"less than 2x the clustering tolerance; adjust tolerance"
                )
    ones = 0
    twos = 0
    other = []
    cutoff = np.sqrt(tol) * scale if tol > 0 else 1e-8 * scale
    cutoff = max(cutoff, 1e-12 * scale)
    for cl, lam in zip(clusters, centers):
        m = cl.size
        if m == 1:
            ones += 1
            continue
        shifted = matrix - lam * np.eye(n)
        r1 = _numerical_rank(shifted, cutoff)
        r2 = _numerical_rank(shifted @ shifted, cutoff * cutoff * max(1.0, scale))
        geo = n - r1
        big_blocks = r1 - r2
        if m == 2 and geo >= 2:
            ones += 2
        elif m == 2 and big_blocks >= 1:
            twos += 1
        else:
            other.append((m, geo, big_blocks))
    return JordanCensus(diagonalizable_1x1=ones, defective_2x2=twos, other=tuple(other))


def line_gap(spectrum: Spectrum, threshold: float = 0.1) -> LineGapReport:
    """Maximal-margin horizontal line separating the spectrum.

    Scans the sorted imaginary parts for the widest gap; the line sits at
    the gap midpoint.  ``gapped`` requires nonempty sets on both sides and a
    half-gap margin above ``threshold`` (gamma_0 units).
    """
    im = np.sort(spectrum.eigenvalues.imag)
    if im.size < 2:
        return LineGapReport(False, float(im.mean()) if im.size else 0.0, 0.0, im.size, 0)
    gaps = np.diff(im)
    i = int(np.argmax(gaps))
    c = 0.5 * (im[i] + im[i + 1])
    margin = 0.5 * gaps[i]
    return LineGapReport(
        gapped=bool(margin > threshold),
        c=float(c),
        margin=float(margin),
        below=i + 1,
        above=im.size - i - 1,
    )


def fit_power_law(sizes: Sequence[float], values: Sequence[float]) -> PowerLawFit:
    """Least-squares line in log-log coordinates.

    Raises
    ------
    ValueError
        For fewer than 4 points or any non-positive value.
    """
    sizes = np.asarray(sizes, dtype=float)
    values = np.asarray(values, dtype=float)
    if sizes.size < 4:
        raise ValueError("power-law fit needs at least 4 points")
    if np.any(sizes <= 0) or np.any(values <= 0):
        raise ValueError("power-law fit needs strictly positive data")
    lx, ly = np.log(sizes), np.log(values)
    slope, intercept = np.polyfit(lx, ly, 1)
    pred = slope * lx + intercept
    ss_res = float(np.sum((ly - pred) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return PowerLawFit(
        exponent=float(slope),
        prefactor=float(np.exp(intercept)),
        r_squared=float(r2),
        window=(float(sizes.min()), float(sizes.max())),
    )


def min_decay_rate(hopping_matrix: np.ndarray) -> float:
    """Smallest physical decay rate of the chain, on-site term included.

    The argument is the hopping-only Hamiltonian; the decay rate of an
    eigenstate is 1 - 2 Im(omega_hop).
    """
    w = np.linalg.eigvals(hopping_matrix)
    return float(1.0 - 2.0 * np.max(w.imag))


def h_edge_ep_scaling(
    n_list: Sequence[int],
    builder_factory: Callable[[int], Callable[[float], np.ndarray]],
    h_max: float = 0.2,
    coarse_step: float = 0.005,
    detection_threshold: float = 0.05,
    refine_xtol: float = 1e-5,
) -> EdgeEpScaling:
    """Locate the edge-block coalescence strength for each chain length and
    fit its power law in N.

    The scan is restricted to the light-line pair (the two lowest-real-part
    eigenvalues, which is where that pair sits for h of the order of the
    coalescence strength).

    Raises
    ------
    ValueError
        Naming the offending N if no coalescence dip is found for it.
    """
    n_list = list(n_list)
    if any(n % 2 for n in n_list):
        raise ValueError("chain lengths must be even")
    if sorted(n_list) != n_list:
        raise ValueError("chain lengths must be ascending")
    h_values: dict[int, float] = {}
    angle_minima: dict[int, float] = {}
    for n in n_list:
        builder = builder_factory(n)
        f = lambda h: _restricted_angle(builder(float(h)), "lowest_re")
        grid = np.arange(coarse_step, h_max + coarse_step / 2, coarse_step)
        vals = np.array([f(h) for h in grid])
        i = int(np.argmin(vals))
        a = grid[max(i - 1, 0)]
        b = grid[min(i + 1, len(grid) - 1)]
        h_star, v = _golden_minimize(f, a, b, refine_xtol)
        if v > detection_threshold:
            raise ValueError(f"edge block not identified at N = {n} (min angle {v:.3g})")
        h_values[n] = h_star
        angle_minima[n] = v
    fit = fit_power_law(n_list, [h_values[n] for n in n_list])
    return EdgeEpScaling(fit=fit, h_values=h_values, angle_minima=angle_minima)
