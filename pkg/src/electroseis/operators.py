"""Discrete differential operators on collocated and staggered box grids.

Collocated operators act on node arrays of shape ``(N1, N2, N3)`` (or stacks
thereof) with second-order central stencils in the interior and second-order
one-sided stencils at the boundary; stencil weights come from Fornberg's
algorithm so arbitrary derivative orders share one code path.

Staggered operators implement the Yee arrangement: edge vector fields are
triples of arrays with component ``c`` cell-centred along axis ``c`` and
node-aligned transversally; face fields are the complementary arrangement.
The discrete curl/divergence pairs satisfy the exact algebraic identities

    div_faces(curl_edges(e)) == 0            (everywhere)
    div_nodes(curl_faces(f)) == 0            (at interior nodes)

which the solvers rely on for divergence preservation.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


# ---------------------------------------------------------------------------
# 1D stencils
# ---------------------------------------------------------------------------

def fornberg_weights(z: float, x: np.ndarray, m: int) -> np.ndarray:
    """Finite-difference weights for derivatives 0..m at point ``z`` on nodes ``x``.

    Classic Fornberg recursion; returns an array of shape ``(m + 1, len(x))``
    whose row ``k`` holds the weights of the k-th derivative.
    """
    x = np.asarray(x, dtype=float)
    n = len(x)
    if n < m + 1:
        raise ValueError(f"need at least {m + 1} nodes for derivative order {m}")
    c = np.zeros((m + 1, n))
    c1 = 1.0
    c4 = x[0] - z
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - z
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[k, i] = c1 * (k * c[k - 1, i - 1] - c5 * c[k, i - 1]) / c2
                c[0, i] = -c1 * c5 * c[0, i - 1] / c2
            for k in range(mn, 0, -1):
                c[k, j] = (c4 * c[k, j] - k * c[k - 1, j]) / c3
            c[0, j] = c4 * c[0, j] / c3
        c1 = c2
    return c


@lru_cache(maxsize=None)
def _central_weights(order: int) -> tuple[np.ndarray, int]:
    """Second-order-accurate central stencil for the given derivative order.

    Returns ``(weights, half_width)``; weights apply to offsets
    ``-half_width .. +half_width`` and must be divided by ``h**order``.
    """
    # odd orders need one extra point on each side for O(h^2) accuracy
    half = (order + 1) // 2 if order % 2 else order // 2
    offsets = np.arange(-half, half + 1, dtype=float)
    w = fornberg_weights(0.0, offsets, order)[order]
    return w, half


@lru_cache(maxsize=None)
def _onesided_weights(order: int, npts: int) -> np.ndarray:
    """One-sided stencil (left end) of ``npts`` points for the given order."""
    offsets = np.arange(npts, dtype=float)
    return fornberg_weights(0.0, offsets, order)[order]


def derivative_1d(f: np.ndarray, order: int, h: float, axis: int) -> np.ndarray:
    """k-th derivative along ``axis``: central interior, one-sided ends, all O(h^2)."""
    if order == 0:
        return f.copy()
    w, half = _central_weights(order)
    n = f.shape[axis]
    npts_b = order + 2  # one-sided O(h^2) stencil width
    if n < max(2 * half + 1, half + npts_b):
        raise ValueError(f"axis of length {n} too short for derivative order {order}")
    fm = np.moveaxis(f, axis, 0)
    out = np.zeros_like(fm)
    for j, wj in enumerate(w):
        if wj != 0.0:
            out[half:n - half] += wj * fm[j:n - 2 * half + j]
    wb = _onesided_weights(order, npts_b)
    for i in range(half):
        out[i] = np.tensordot(wb, fm[i:i + npts_b], axes=(0, 0))
        # right end: mirrored stencil; odd orders flip sign
        sign = -1.0 if order % 2 else 1.0
        out[n - 1 - i] = sign * np.tensordot(wb, fm[n - 1 - i - npts_b + 1:n - i][::-1], axes=(0, 0))
    return np.moveaxis(out, 0, axis) / h**order


def gradient_nodes(f: np.ndarray, h) -> np.ndarray:
    """Gradient of a node scalar field; returns shape ``(3,) + f.shape``."""
    return np.stack([derivative_1d(f, 1, h[a], axis=a) for a in range(3)])


def divergence_nodes(v: np.ndarray, h) -> np.ndarray:
    """Divergence of a node vector field of shape ``(3, N1, N2, N3)``."""
    return sum(derivative_1d(v[a], 1, h[a], axis=a) for a in range(3))


def curl_nodes(v: np.ndarray, h) -> np.ndarray:
    """Curl of a node vector field of shape ``(3, N1, N2, N3)``."""
    d = lambda comp, ax: derivative_1d(v[comp], 1, h[ax], axis=ax)
    return np.stack([
        d(2, 1) - d(1, 2),
        d(0, 2) - d(2, 0),
        d(1, 0) - d(0, 1),
    ])


# ---------------------------------------------------------------------------
# Staggered (Yee) operators
# ---------------------------------------------------------------------------

def edge_shapes(n) -> list[tuple[int, int, int]]:
    n1, n2, n3 = n
    return [(n1, n2 + 1, n3 + 1), (n1 + 1, n2, n3 + 1), (n1 + 1, n2 + 1, n3)]


def face_shapes(n) -> list[tuple[int, int, int]]:
    n1, n2, n3 = n
    return [(n1 + 1, n2, n3), (n1, n2 + 1, n3), (n1, n2, n3 + 1)]


def zeros_edges(n) -> list[np.ndarray]:
    return [np.zeros(s) for s in edge_shapes(n)]


def zeros_faces(n) -> list[np.ndarray]:
    return [np.zeros(s) for s in face_shapes(n)]


def curl_edges_to_faces(e, h) -> list[np.ndarray]:
    """Discrete curl of an edge field, producing a face field."""
    e1, e2, e3 = e
    h1, h2, h3 = h
    c1 = (e3[:, 1:, :] - e3[:, :-1, :]) / h2 - (e2[:, :, 1:] - e2[:, :, :-1]) / h3
    c2 = (e1[:, :, 1:] - e1[:, :, :-1]) / h3 - (e3[1:, :, :] - e3[:-1, :, :]) / h1
    c3 = (e2[1:, :, :] - e2[:-1, :, :]) / h1 - (e1[:, 1:, :] - e1[:, :-1, :]) / h2
    return [c1, c2, c3]


def curl_faces_to_edges(f, h, n) -> list[np.ndarray]:
    """Discrete curl of a face field, producing an edge field.

    Only interior edges receive values; edges lying in the boundary faces
    (the tangential ones) are left at zero, matching the PEC constraint.
    """
    f1, f2, f3 = f
    h1, h2, h3 = h
    c1, c2, c3 = zeros_edges(n)
    c1[:, 1:-1, 1:-1] = ((f3[:, 1:, :] - f3[:, :-1, :]) / h2)[:, :, 1:-1] \
        - ((f2[:, :, 1:] - f2[:, :, :-1]) / h3)[:, 1:-1, :]
    c2[1:-1, :, 1:-1] = ((f1[:, :, 1:] - f1[:, :, :-1]) / h3)[1:-1, :, :] \
        - ((f3[1:, :, :] - f3[:-1, :, :]) / h1)[:, :, 1:-1]
    c3[1:-1, 1:-1, :] = ((f2[1:, :, :] - f2[:-1, :, :]) / h1)[:, 1:-1, :] \
        - ((f1[:, 1:, :] - f1[:, :-1, :]) / h2)[1:-1, :, :]
    return [c1, c2, c3]


def divergence_faces_to_cells(f, h) -> np.ndarray:
    f1, f2, f3 = f
    return (f1[1:, :, :] - f1[:-1, :, :]) / h[0] \
        + (f2[:, 1:, :] - f2[:, :-1, :]) / h[1] \
        + (f3[:, :, 1:] - f3[:, :, :-1]) / h[2]


def divergence_edges_to_interior_nodes(e, h) -> np.ndarray:
    """Staggered divergence of an edge field at interior nodes."""
    e1, e2, e3 = e
    return ((e1[1:, :, :] - e1[:-1, :, :]) / h[0])[:, 1:-1, 1:-1] \
        + ((e2[:, 1:, :] - e2[:, :-1, :]) / h[1])[1:-1, :, 1:-1] \
        + ((e3[:, :, 1:] - e3[:, :, :-1]) / h[2])[1:-1, 1:-1, :]


def zero_tangential_edges(e) -> None:
    """PEC projection: zero edge components lying inside the boundary faces."""
    e1, e2, e3 = e
    e1[:, 0, :] = e1[:, -1, :] = 0.0
    e1[:, :, 0] = e1[:, :, -1] = 0.0
    e2[0, :, :] = e2[-1, :, :] = 0.0
    e2[:, :, 0] = e2[:, :, -1] = 0.0
    e3[0, :, :] = e3[-1, :, :] = 0.0
    e3[:, 0, :] = e3[:, -1, :] = 0.0


def zero_normal_faces(f) -> None:
    """Zero face components normal to the boundary (n . B = 0)."""
    f1, f2, f3 = f
    f1[0, :, :] = f1[-1, :, :] = 0.0
    f2[:, 0, :] = f2[:, -1, :] = 0.0
    f3[:, :, 0] = f3[:, :, -1] = 0.0


# ---------------------------------------------------------------------------
# Interpolation between staggerings
# ---------------------------------------------------------------------------

def _avg_along(a: np.ndarray, axis: int) -> np.ndarray:
    sl0 = [slice(None)] * a.ndim
    sl1 = [slice(None)] * a.ndim
    sl0[axis] = slice(None, -1)
    sl1[axis] = slice(1, None)
    return 0.5 * (a[tuple(sl0)] + a[tuple(sl1)])


def _spread_along(a: np.ndarray, axis: int) -> np.ndarray:
    """Cell-to-node averaging along one axis with copied end values."""
    shape = list(a.shape)
    shape[axis] += 1
    out = np.empty(shape)
    mid = [slice(None)] * a.ndim
    mid[axis] = slice(1, -1)
    lo = [slice(None)] * a.ndim
    lo[axis] = 0
    hi = [slice(None)] * a.ndim
    hi[axis] = -1
    out[tuple(mid)] = _avg_along(a, axis)
    out[tuple(lo)] = np.take(a, 0, axis=axis)
    out[tuple(hi)] = np.take(a, -1, axis=axis)
    return out


def nodes_to_edges(p: np.ndarray) -> list[np.ndarray]:
    """Sample a node scalar at the three edge families by adjacent averaging."""
    return [_avg_along(p, 0), _avg_along(p, 1), _avg_along(p, 2)]


def nodes_to_faces(p: np.ndarray) -> list[np.ndarray]:
    """Sample a node scalar at the three face families (4-node average)."""
    return [
        _avg_along(_avg_along(p, 1), 2),
        _avg_along(_avg_along(p, 0), 2),
        _avg_along(_avg_along(p, 0), 1),
    ]


def edges_to_nodes(e) -> np.ndarray:
    """Collocate an edge vector field at nodes; returns ``(3, N1, N2, N3)``."""
    return np.stack([_spread_along(e[0], 0), _spread_along(e[1], 1), _spread_along(e[2], 2)])


def faces_to_nodes(f) -> np.ndarray:
    """Collocate a face vector field at nodes."""
    return np.stack([
        _spread_along(_spread_along(f[0], 1), 2),
        _spread_along(_spread_along(f[1], 0), 2),
        _spread_along(_spread_along(f[2], 0), 1),
    ])


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

def trapezoid_axis_weights(npts: int, h: float) -> np.ndarray:
    w = np.full(npts, h)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def node_volume_weights(shape, h) -> np.ndarray:
    """Tensor-product trapezoid weights over a node grid."""
    w1 = trapezoid_axis_weights(shape[0], h[0])
    w2 = trapezoid_axis_weights(shape[1], h[1])
    w3 = trapezoid_axis_weights(shape[2], h[2])
    return w1[:, None, None] * w2[None, :, None] * w3[None, None, :]


def integrate_nodes(f: np.ndarray, h) -> float:
    """Volume integral of a node scalar field (trapezoid product rule)."""
    return float(np.sum(f * node_volume_weights(f.shape, h)))


def integrate_space_time(vals: np.ndarray, h, dt: float) -> float:
    """Integral over a space-time block ``(..., N1, N2, N3, NT)``."""
    wt = trapezoid_axis_weights(vals.shape[-1], dt)
    spatial = node_volume_weights(vals.shape[-4:-1], h)
    w = spatial[..., None] * wt
    total = np.sum(vals * w, axis=(-4, -3, -2, -1))
    return float(np.sum(total))
