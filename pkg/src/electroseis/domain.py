"""Computational domain, grid, region masks, and smooth cutoff.

The domain is an axis-aligned box.  A near-boundary shell of uniform width
(measured as distance to the nearest face) is the measurement region; its
complement is the interior region where parameter perturbations live.  The
cutoff is a product of a spatial plateau over the interior region and a
temporal plateau over the bulk of the symmetric time interval, with quintic
smoothstep transitions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

REGION_SHELL = 0
REGION_INTERIOR = 1


def smoothstep5(s: np.ndarray) -> np.ndarray:
    """Quintic smoothstep 6s^5 - 15s^4 + 10s^3 clamped to [0, 1]."""
    s = np.clip(s, 0.0, 1.0)
    return s * s * s * (s * (6.0 * s - 15.0) + 10.0)


@dataclass(frozen=True)
class Domain:
    """Axis-aligned box with a measurement shell and a time horizon."""

    lower: np.ndarray
    upper: np.ndarray
    shell_width: float
    final_time: float
    delta: float

    @property
    def extent(self) -> np.ndarray:
        return self.upper - self.lower

    def boundary_distance(self, x: np.ndarray) -> np.ndarray:
        """Distance from points ``(..., 3)`` to the nearest box face."""
        x = np.asarray(x)
        d = np.minimum(x - self.lower, self.upper - x)
        return np.min(d, axis=-1)

    def interior_box(self) -> tuple[np.ndarray, np.ndarray]:
        """Bounds of the interior region (shell removed)."""
        return self.lower + self.shell_width, self.upper - self.shell_width


@dataclass(frozen=True)
class Grid:
    """Uniform tensor grid over a Domain with Yee staggering bookkeeping."""

    n: tuple[int, int, int]
    h: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    dt: float
    n_t: int
    node_region: np.ndarray = field(repr=False)   # REGION_* label per node
    cell_region: np.ndarray = field(repr=False)   # REGION_* label per cell

    @property
    def node_shape(self) -> tuple[int, int, int]:
        return tuple(m + 1 for m in self.n)

    def axis_nodes(self, axis: int) -> np.ndarray:
        return self.lower[axis] + self.h[axis] * np.arange(self.n[axis] + 1)

    def axis_centers(self, axis: int) -> np.ndarray:
        return self.lower[axis] + self.h[axis] * (np.arange(self.n[axis]) + 0.5)

    def node_mesh(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return np.meshgrid(*(self.axis_nodes(a) for a in range(3)), indexing="ij")

    def stagger_axes(self, kind: str, component: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Coordinate arrays of one staggered component family.

        ``kind`` is 'node', 'edge', 'face', or 'cell'.  Edge component c is
        cell-centred along axis c; face component c is cell-centred along the
        two transverse axes.
        """
        axes = []
        for a in range(3):
            if kind == "node":
                centered = False
            elif kind == "cell":
                centered = True
            elif kind == "edge":
                centered = a == component
            elif kind == "face":
                centered = a != component
            else:
                raise ValueError(f"unknown staggering kind {kind!r}")
            axes.append(self.axis_centers(a) if centered else self.axis_nodes(a))
        return tuple(axes)

    def stagger_mesh(self, kind: str, component: int):
        return np.meshgrid(*self.stagger_axes(kind, component), indexing="ij")

    @property
    def interior_node_mask(self) -> np.ndarray:
        return self.node_region == REGION_INTERIOR


def build_domain(lower, upper, shell_width: float, final_time: float, delta: float,
                 n, dt: float, n_t: int) -> tuple[Domain, Grid]:
    """Validate geometry and materialize the domain with its grid and masks."""
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if lower.shape != (3,) or upper.shape != (3,):
        raise ValidationError("domain corners must be 3-vectors")
    if not np.all(upper > lower):
        raise ValidationError("domain upper corner must exceed lower corner componentwise")
    extent = upper - lower
    if not (0.0 < shell_width < 0.5 * float(np.min(extent))):
        raise ValidationError(
            f"shell width {shell_width} leaves an empty interior "
            f"(must lie in (0, {0.5 * float(np.min(extent))}))")
    if not (0.0 < delta < final_time):
        raise ValidationError("time transition width must satisfy 0 < delta < T")
    n = tuple(int(m) for m in n)
    if any(m < 1 for m in n):
        raise ValidationError("cell counts must be positive")
    h = extent / np.asarray(n, dtype=float)
    if not np.all(h > 0.0):
        raise ValidationError("nonpositive grid spacing")
    if dt <= 0.0 or n_t < 0:
        raise ValidationError("need dt > 0 and n_t >= 0")

    domain = Domain(lower=lower, upper=upper, shell_width=shell_width,
                    final_time=float(final_time), delta=float(delta))

    node_pts = np.stack(np.meshgrid(
        *(lower[a] + h[a] * np.arange(n[a] + 1) for a in range(3)), indexing="ij"), axis=-1)
    cell_pts = np.stack(np.meshgrid(
        *(lower[a] + h[a] * (np.arange(n[a]) + 0.5) for a in range(3)), indexing="ij"), axis=-1)
    node_region = np.where(domain.boundary_distance(node_pts) < shell_width,
                           REGION_SHELL, REGION_INTERIOR).astype(np.int8)
    cell_region = np.where(domain.boundary_distance(cell_pts) < shell_width,
                           REGION_SHELL, REGION_INTERIOR).astype(np.int8)
    if not np.any(cell_region == REGION_INTERIOR):
        raise ValidationError("empty interior: shell covers every cell")

    grid = Grid(n=n, h=h, lower=lower, upper=upper, dt=float(dt), n_t=int(n_t),
                node_region=node_region, cell_region=cell_region)
    return domain, grid


@dataclass(frozen=True)
class Cutoff:
    """Space-time plateau function chi(x, t) = chi1(x) * chi2(t).

    ``chi1`` lives on grid nodes; ``chi2`` is sampled on a symmetric time grid
    ``times`` spanning [-T, T].
    """

    chi1: np.ndarray
    chi2: np.ndarray
    times: np.ndarray

    def values(self) -> np.ndarray:
        """Full chi array of shape ``chi1.shape + (len(times),)``."""
        return self.chi1[..., None] * self.chi2


def build_cutoff(domain: Domain, grid: Grid) -> Cutoff:
    """Quintic-smoothstep cutoff: 1 on the closed interior region and on
    [-T + delta, T - delta], 0 within one cell of the spatial boundary and at
    |t| = T."""
    h_min = float(np.min(grid.h))
    inner = domain.shell_width            # plateau starts at the interior region
    outer = h_min                         # support ends one cell from the boundary
    band = inner - outer
    if band < 3.0 * h_min:
        raise ValidationError(
            f"spatial transition band {band:.3g} thinner than 3 cells "
            f"({3 * h_min:.3g}); refine the grid or widen the shell")
    pts = np.stack(grid.node_mesh(), axis=-1)
    dist = domain.boundary_distance(pts)
    chi1 = smoothstep5((dist - outer) / band)
    chi1[dist >= inner] = 1.0
    chi1[dist <= outer] = 0.0

    T, delta = domain.final_time, domain.delta
    if delta < 3.0 * grid.dt:
        raise ValidationError(
            f"time transition band {delta:.3g} thinner than 3 steps ({3 * grid.dt:.3g})")
    m = int(round(T / grid.dt))
    times = grid.dt * np.arange(-m, m + 1)
    chi2 = smoothstep5((T - np.abs(times)) / delta)
    chi2[np.abs(times) >= T] = 0.0
    return Cutoff(chi1=chi1, chi2=chi2, times=times)
