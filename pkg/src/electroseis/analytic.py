"""Analytic field generators: constants, affine ramps, and smooth bumps.

These are the building blocks for material-coefficient maps, perturbation
profiles, and divergence-free initial data.  Every spec evaluates on arbitrary
coordinate meshes, so the same object can be sampled at nodes, edge centres,
face centres, or quadrature points.

The compact bump is ``amp * max(0, 1 - |x - c|^2 / r^2)^3``: polynomial inside
its support ball, identically zero outside, and C^2 across the support edge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import operators as ops
from .errors import ValidationError


class ScalarSpec:
    """Base class for scalar analytic fields."""

    def values(self, X, Y, Z) -> np.ndarray:
        raise NotImplementedError

    def gradient(self, X, Y, Z) -> np.ndarray:
        raise NotImplementedError

    def __add__(self, other):
        return SumSpec((self, other))


@dataclass(frozen=True)
class Constant(ScalarSpec):
    value: float

    def values(self, X, Y, Z):
        return np.full(np.shape(X), float(self.value))

    def gradient(self, X, Y, Z):
        return np.zeros((3,) + np.shape(X))


@dataclass(frozen=True)
class Affine(ScalarSpec):
    a0: float
    ax: float
    ay: float
    az: float

    def values(self, X, Y, Z):
        return self.a0 + self.ax * X + self.ay * Y + self.az * Z

    def gradient(self, X, Y, Z):
        shape = np.shape(X)
        return np.stack([np.full(shape, self.ax),
                         np.full(shape, self.ay),
                         np.full(shape, self.az)])


@dataclass(frozen=True)
class CompactBump(ScalarSpec):
    """amp * (1 - |x-c|^2/r^2)_+^3, supported on the ball of radius r about c."""

    amp: float
    center: tuple[float, float, float]
    radius: float

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ValidationError("bump radius must be positive")

    def _s(self, X, Y, Z):
        c = self.center
        r2 = ((X - c[0]) ** 2 + (Y - c[1]) ** 2 + (Z - c[2]) ** 2) / self.radius**2
        return np.maximum(0.0, 1.0 - r2)

    def values(self, X, Y, Z):
        return self.amp * self._s(X, Y, Z) ** 3

    def gradient(self, X, Y, Z):
        c = self.center
        s = self._s(X, Y, Z)
        pref = self.amp * 3.0 * s**2 * (-2.0 / self.radius**2)
        return np.stack([pref * (X - c[0]), pref * (Y - c[1]), pref * (Z - c[2])])


@dataclass(frozen=True)
class Gaussian(ScalarSpec):
    amp: float
    center: tuple[float, float, float]
    sigma: float

    def values(self, X, Y, Z):
        c = self.center
        r2 = (X - c[0]) ** 2 + (Y - c[1]) ** 2 + (Z - c[2]) ** 2
        return self.amp * np.exp(-0.5 * r2 / self.sigma**2)

    def gradient(self, X, Y, Z):
        c = self.center
        v = self.values(X, Y, Z) / self.sigma**2
        return np.stack([-v * (X - c[0]), -v * (Y - c[1]), -v * (Z - c[2])])


@dataclass(frozen=True)
class SumSpec(ScalarSpec):
    parts: tuple

    def values(self, X, Y, Z):
        return sum(p.values(X, Y, Z) for p in self.parts)

    def gradient(self, X, Y, Z):
        return sum(p.gradient(X, Y, Z) for p in self.parts)


# ---------------------------------------------------------------------------
# Vector initial-data specs for the electromagnetic solver
# ---------------------------------------------------------------------------

class VectorSpec:
    """Base class for 3-vector fields with staggered sampling hooks."""

    def node_values(self, grid) -> np.ndarray:
        """Field collocated at grid nodes, shape ``(3, N1, N2, N3)``."""
        raise NotImplementedError

    def edge_values(self, grid) -> list[np.ndarray]:
        raise NotImplementedError

    def face_values(self, grid) -> list[np.ndarray]:
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantVector(VectorSpec):
    v: tuple[float, float, float]

    def node_values(self, grid):
        shape = grid.node_shape
        return np.stack([np.full(shape, float(c)) for c in self.v])

    def edge_values(self, grid):
        return [np.full(s, float(c)) for c, s in zip(self.v, ops.edge_shapes(grid.n))]

    def face_values(self, grid):
        return [np.full(s, float(c)) for c, s in zip(self.v, ops.face_shapes(grid.n))]


@dataclass(frozen=True)
class CurlPotential(VectorSpec):
    """curl(psi e_axis) for a compact bump psi: solenoidal by construction.

    Staggered samplings take the *discrete* curl of the sampled potential, so
    the staggered divergence vanishes to round-off; node sampling uses the
    analytic curl.
    """

    amp: float
    center: tuple[float, float, float]
    radius: float
    axis: int = 2

    def _psi(self):
        return CompactBump(self.amp, self.center, self.radius)

    def node_values(self, grid):
        X, Y, Z = grid.node_mesh()
        g = self._psi().gradient(X, Y, Z)
        out = np.zeros_like(g)
        a = self.axis
        # curl(psi e_a) = grad(psi) x e_a
        i, j = (a + 1) % 3, (a + 2) % 3
        out[i] = g[j]
        out[j] = -g[i]
        return out

    def edge_values(self, grid):
        pot = [np.zeros(s) for s in ops.face_shapes(grid.n)]
        X, Y, Z = grid.stagger_mesh("face", self.axis)
        pot[self.axis] = self._psi().values(X, Y, Z)
        return ops.curl_faces_to_edges(pot, grid.h, grid.n)

    def face_values(self, grid):
        pot = [np.zeros(s) for s in ops.edge_shapes(grid.n)]
        X, Y, Z = grid.stagger_mesh("edge", self.axis)
        pot[self.axis] = self._psi().values(X, Y, Z)
        return ops.curl_edges_to_faces(pot, grid.h)


def scalar_spec_from_tokens(tokens: list[str]) -> ScalarSpec:
    """Parse a scalar field spec: ``constant v`` | ``affine a0 ax ay az`` |
    ``bump amp cx cy cz r`` | ``gauss amp cx cy cz sigma``."""
    if not tokens:
        raise ValidationError("empty field spec")
    kind, args = tokens[0], [float(t) for t in tokens[1:]]
    if kind == "constant" and len(args) == 1:
        return Constant(args[0])
    if kind == "affine" and len(args) == 4:
        return Affine(*args)
    if kind == "bump" and len(args) == 5:
        return CompactBump(args[0], tuple(args[1:4]), args[4])
    if kind == "gauss" and len(args) == 5:
        return Gaussian(args[0], tuple(args[1:4]), args[4])
    raise ValidationError(f"bad scalar field spec: {' '.join(tokens)!r}")


def vector_spec_from_tokens(tokens: list[str]) -> VectorSpec:
    """Parse a vector field spec: ``constant vx vy vz`` |
    ``vortex amp cx cy cz r axis``."""
    if not tokens:
        raise ValidationError("empty field spec")
    kind = tokens[0]
    if kind == "constant" and len(tokens) == 4:
        return ConstantVector(tuple(float(t) for t in tokens[1:]))
    if kind == "vortex" and len(tokens) == 7:
        args = [float(t) for t in tokens[1:6]]
        return CurlPotential(args[0], tuple(args[1:4]), args[4], int(tokens[6]))
    raise ValidationError(f"bad vector field spec: {' '.join(tokens)!r}")
