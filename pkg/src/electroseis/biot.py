"""Explicit solver for the damped poroelastic (Biot) subsystem.

Fields: solid displacement u and relative fluid displacement w, both node
vector fields, driven by the body source xi*D from the electromagnetic solve:

    rho   u_tt + rho_f w_tt - div tau                      = F1
    rho_f u_tt + rho_e w_tt + grad p + (eta/kappa) w_t - xi D = F2
    tau = (lam div u + C div w) I + G (grad u + grad u^T)
    p   = -(C div u + M div w)

Discretization: central second differences in time; the per-node 2x2 block in
(u_tt, w_tt) is inverted in closed form with the damping term discretized as
the centered average (w^{n+1} - w^{n-1}) / (2 dt) and folded into the block.
Spatial derivatives are central in the interior with second-order one-sided
closure at the boundary.  The traction-free / drained-wall conditions
(n . tau = 0, p = 0) are imposed by overwriting the traction rows of tau and
the boundary values of p before taking div tau and grad p, which is what a
ghost-node construction would produce for the one-sided stencils.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import operators as ops
from .domain import Grid
from .errors import NumericalError, ValidationError
from .parameters import DiagonalizationData, ParameterFields


@dataclass
class BiotState:
    """Two time levels of (u, w) plus the cached constitutive fields.

    ``tau`` has shape (3, 3) + nodes and ``p`` nodes, both evaluated from the
    current level by :func:`constitutive`.
    """

    u: np.ndarray       # (3, N1, N2, N3) at level n
    w: np.ndarray
    u_prev: np.ndarray  # level n-1
    w_prev: np.ndarray
    tau: np.ndarray
    p: np.ndarray
    step: int
    time: float

    def copy(self) -> "BiotState":
        return BiotState(self.u.copy(), self.w.copy(), self.u_prev.copy(),
                         self.w_prev.copy(), self.tau.copy(), self.p.copy(),
                         self.step, self.time)


def constitutive(u: np.ndarray, w: np.ndarray, p: ParameterFields, grid: Grid):
    """Bulk stress tau and pore pressure from (u, w); tau is symmetric."""
    h = grid.h
    div_u = ops.divergence_nodes(u, h)
    div_w = ops.divergence_nodes(w, h)
    grads = [[ops.derivative_1d(u[i], 1, h[j], axis=j) for j in range(3)] for i in range(3)]
    tau = np.empty((3, 3) + u.shape[1:])
    diag_part = p.lam * div_u + p.C * div_w
    for i in range(3):
        for j in range(3):
            tau[i, j] = p.G * (grads[i][j] + grads[j][i])
        tau[i, i] += diag_part
    pressure = -(p.C * div_u + p.M * div_w)
    return tau, pressure


def _apply_traction_bc(tau: np.ndarray, pressure: np.ndarray) -> None:
    """Overwrite boundary values with n.tau = 0 (per face normal) and p = 0."""
    for j in range(3):
        tau[0, j][0, :, :] = tau[0, j][-1, :, :] = 0.0
        tau[j, 0][0, :, :] = tau[j, 0][-1, :, :] = 0.0
        tau[1, j][:, 0, :] = tau[1, j][:, -1, :] = 0.0
        tau[j, 1][:, 0, :] = tau[j, 1][:, -1, :] = 0.0
        tau[2, j][:, :, 0] = tau[2, j][:, :, -1] = 0.0
        tau[j, 2][:, :, 0] = tau[j, 2][:, :, -1] = 0.0
    pressure[0, :, :] = pressure[-1, :, :] = 0.0
    pressure[:, 0, :] = pressure[:, -1, :] = 0.0
    pressure[:, :, 0] = pressure[:, :, -1] = 0.0


def _rhs_fields(state_u, state_w, p: ParameterFields, grid: Grid, source, f1, f2):
    """Spatial right-hand sides (R1, R2) of the acceleration block system."""
    tau, pressure = constitutive(state_u, state_w, p, grid)
    _apply_traction_bc(tau, pressure)
    h = grid.h
    div_tau = np.stack([
        sum(ops.derivative_1d(tau[i, j], 1, h[j], axis=j) for j in range(3))
        for i in range(3)])
    grad_p = ops.gradient_nodes(pressure, h)
    r1 = div_tau
    r2 = -grad_p
    if source is not None:
        r2 = r2 + source
    if f1 is not None:
        r1 = r1 + f1
    if f2 is not None:
        r2 = r2 + f2
    return r1, r2


def _block_solve(p: ParameterFields, diag: DiagonalizationData, dt: float,
                 r1: np.ndarray, r2: np.ndarray):
    """Invert the per-node 2x2 system [[rho, rho_f], [rho_f, rho_e + nu dt/2]]."""
    nu = p.eta / p.kappa
    a = p.rho
    b = p.rho_f
    d = p.rho_e + 0.5 * dt * nu
    det = a * d - b * b  # = rho0 + rho * nu * dt / 2 > 0
    acc_u = (d * r1 - b * r2) / det
    acc_w = (a * r2 - b * r1) / det
    return acc_u, acc_w


def cfl_dt_biot(p: ParameterFields, diag: DiagonalizationData, grid: Grid,
                cfl: float = 0.4) -> float:
    """Largest admissible step: cfl * h_min / sqrt(max squared wave speed)."""
    speeds = [np.max(diag.c), np.max(diag.eig1), np.max(diag.eig2)]
    if p.alpha is not None:
        speeds.append(np.max(p.alpha * p.beta))
    return cfl * float(np.min(grid.h)) / np.sqrt(float(max(speeds)))


def init_biot(grid: Grid, p: ParameterFields, diag: DiagonalizationData, dt: float,
              source0=None, f1_0=None, f2_0=None) -> BiotState:
    """Zero-initial-data state with a Taylor-consistent ghost level.

    With u(0) = w(0) = 0 and zero first differences, the ghost level is
    u(-dt) = (dt^2/2) u_tt(0), computed from the t = 0 source/body force.
    """
    shape = (3,) + grid.node_shape
    zero = np.zeros(shape)
    r1, r2 = _rhs_fields(zero, zero, p, grid, source0, f1_0, f2_0)
    acc_u, acc_w = _block_solve(p, diag, dt, r1, r2)
    u_prev = 0.5 * dt * dt * acc_u
    w_prev = 0.5 * dt * dt * acc_w
    tau, pressure = constitutive(zero, zero, p, grid)
    return BiotState(u=zero.copy(), w=zero.copy(), u_prev=u_prev, w_prev=w_prev,
                     tau=tau, p=pressure, step=0, time=0.0)


def init_biot_from_levels(grid: Grid, p: ParameterFields, u0, w0, u_prev, w_prev,
                          step: int = 0, time: float = 0.0) -> BiotState:
    """State from two prescribed levels (testing and manufactured runs)."""
    tau, pressure = constitutive(u0, w0, p, grid)
    return BiotState(u=np.asarray(u0, float).copy(), w=np.asarray(w0, float).copy(),
                     u_prev=np.asarray(u_prev, float).copy(),
                     w_prev=np.asarray(w_prev, float).copy(),
                     tau=tau, p=pressure, step=step, time=time)


def step_biot(state: BiotState, p: ParameterFields, diag: DiagonalizationData,
              grid: Grid, dt: float, source=None, f1=None, f2=None,
              cfl: float = 0.4, blowup: float = 1e12) -> BiotState:
    """Advance one central-difference step.

    ``source`` is the xi*D body force collocated at nodes for the *current*
    level; ``f1`` / ``f2`` are optional extra body forces (manufactured
    solutions).  The damping average (w^{n+1} - w^{n-1}) / (2 dt) is rewritten
    as (w^n - w^{n-1}) / dt + (dt/2) w_tt and moved into the block solve.
    """
    if dt > cfl_dt_biot(p, diag, grid, cfl) * (1.0 + 1e-12):
        raise ValidationError(
            f"CFL violation: dt = {dt:.4g} > {cfl_dt_biot(p, diag, grid, cfl):.4g}")
    r1, r2 = _rhs_fields(state.u, state.w, p, grid, source, f1, f2)
    nu = p.eta / p.kappa
    r2 = r2 - nu * (state.w - state.w_prev) / dt
    acc_u, acc_w = _block_solve(p, diag, dt, r1, r2)
    u_new = 2.0 * state.u - state.u_prev + dt * dt * acc_u
    w_new = 2.0 * state.w - state.w_prev + dt * dt * acc_w
    mx = max(float(np.max(np.abs(u_new))), float(np.max(np.abs(w_new))))
    if not np.isfinite(mx) or mx > blowup:
        raise NumericalError(f"Biot field blow-up detected (max |field| = {mx:.3e})")
    tau, pressure = constitutive(u_new, w_new, p, grid)
    return BiotState(u=u_new, w=w_new, u_prev=state.u, w_prev=state.w,
                     tau=tau, p=pressure, step=state.step + 1, time=state.time + dt)


def energy_monitor(state: BiotState, p: ParameterFields, grid: Grid,
                   dt: float | None = None) -> float:
    """Discrete energy E = ||A^(1/2) v||^2 + Bform(r, r).

    v is the centred velocity between the two stored levels and r their
    midpoint; Bform is the elastic/poroelastic bilinear form

        (div v1, lam div v1 + C div v2) + (div v2, C div v1 + M div v2)
        + (2 G e(v1), e(v1)).

    With zero source the damped dynamics make E non-increasing up to O(dt^2)
    per step.
    """
    dt_loc = grid.dt if dt is None else dt
    vu = (state.u - state.u_prev) / dt_loc
    vw = (state.w - state.w_prev) / dt_loc
    mu = 0.5 * (state.u + state.u_prev)
    mw = 0.5 * (state.w + state.w_prev)
    h = grid.h
    kinetic = p.rho * np.sum(vu * vu, axis=0) + 2.0 * p.rho_f * np.sum(vu * vw, axis=0) \
        + p.rho_e * np.sum(vw * vw, axis=0)
    div_u = ops.divergence_nodes(mu, h)
    div_w = ops.divergence_nodes(mw, h)
    strain2 = np.zeros(mu.shape[1:])
    for i in range(3):
        for j in range(3):
            eij = 0.5 * (ops.derivative_1d(mu[i], 1, h[j], axis=j)
                         + ops.derivative_1d(mu[j], 1, h[i], axis=i))
            strain2 += eij * eij
    potential = p.lam * div_u**2 + 2.0 * p.C * div_u * div_w + p.M * div_w**2 \
        + 2.0 * p.G * strain2
    return ops.integrate_nodes(kinetic + potential, h)


def run_biot(state: BiotState, p: ParameterFields, diag: DiagonalizationData,
             grid: Grid, dt: float, n_t: int, stride: int = 1,
             source_at=None, f1_at=None, f2_at=None, cfl: float = 0.4,
             blowup: float = 1e12):
    """Apply ``n_t`` steps with optional time-dependent sources.

    ``source_at`` / ``f1_at`` / ``f2_at`` are callables of the step index
    returning node fields (or None).  Returns (snapshots, times).
    """
    snaps = [state.copy()]
    times = [state.time]
    for k in range(n_t):
        src = source_at(state.step) if source_at is not None else None
        f1 = f1_at(state.step) if f1_at is not None else None
        f2 = f2_at(state.step) if f2_at is not None else None
        state = step_biot(state, p, diag, grid, dt, source=src, f1=f1, f2=f2,
                          cfl=cfl, blowup=blowup)
        if (k + 1) % stride == 0:
            snaps.append(state.copy())
            times.append(state.time)
    return snaps, np.asarray(times)
