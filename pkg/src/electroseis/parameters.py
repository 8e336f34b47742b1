"""Material coefficient fields, derived electric parameters, and admissibility.

All coefficients live on grid nodes.  The electromagnetic side uses the
derived fields

    alpha = 1/mu,  beta = 1/epsilon,  gamma = sigma/epsilon,
    xi = L*eta/(kappa*epsilon),

and the poroelastic side is diagonalized through the per-node quantities

    rho0 = rho*rho_e - rho_f^2,   rho1 = rho0/rho_f,   c = rho_e*G/rho0,

the 2x2 matrix ``a`` obtained by inverting the triangular density factor
against the moduli block, and ``a_tilde`` (a with c added to its (1,1) entry)
whose two eigenvalues are wave speeds squared.  Admissibility collects every
positivity condition the analysis needs, with numeric margins and worst-node
locations.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields as dc_fields

import numpy as np

from .analytic import ScalarSpec
from .domain import Grid
from .errors import AdmissibilityError, ValidationError

PRIMAL_NAMES = ("mu", "epsilon", "sigma", "L", "eta", "kappa",
                "lam", "G", "C", "M", "rho", "rho_f", "rho_e")
DERIVED_NAMES = ("alpha", "beta", "gamma", "xi")


@dataclass
class ParameterFields:
    """Node-sampled material coefficients plus derived electric parameters."""

    mu: np.ndarray
    epsilon: np.ndarray
    sigma: np.ndarray
    L: np.ndarray
    eta: np.ndarray
    kappa: np.ndarray
    lam: np.ndarray
    G: np.ndarray
    C: np.ndarray
    M: np.ndarray
    rho: np.ndarray
    rho_f: np.ndarray
    rho_e: np.ndarray
    alpha: np.ndarray | None = None
    beta: np.ndarray | None = None
    gamma: np.ndarray | None = None
    xi: np.ndarray | None = None

    @property
    def shape(self):
        return self.mu.shape

    def copy(self) -> "ParameterFields":
        kw = {}
        for f in dc_fields(self):
            v = getattr(self, f.name)
            kw[f.name] = None if v is None else v.copy()
        return ParameterFields(**kw)


def fields_from_specs(grid: Grid, specs: dict[str, ScalarSpec]) -> ParameterFields:
    """Sample a dict of analytic specs (one entry per primal coefficient)."""
    missing = [n for n in PRIMAL_NAMES if n not in specs]
    if missing:
        raise ValidationError(f"missing parameter specs: {', '.join(missing)}")
    X, Y, Z = grid.node_mesh()
    return ParameterFields(**{n: np.asarray(specs[n].values(X, Y, Z), dtype=float)
                              for n in PRIMAL_NAMES})


def _argmin_node(arr: np.ndarray) -> tuple[int, ...]:
    return tuple(int(i) for i in np.unravel_index(int(np.argmin(arr)), arr.shape))


def derive_em_parameters(p: ParameterFields) -> ParameterFields:
    """Populate alpha, beta, gamma, xi; raises naming field and node on bad input."""
    for name in ("mu", "epsilon", "kappa", "eta"):
        arr = getattr(p, name)
        if np.any(arr <= 0.0):
            raise ValidationError(
                f"{name} must be strictly positive; violated at node "
                f"{_argmin_node(arr)} (value {arr.min():.6g})")
    p.alpha = 1.0 / p.mu
    p.beta = 1.0 / p.epsilon
    p.gamma = p.sigma / p.epsilon
    p.xi = p.L * p.eta / (p.kappa * p.epsilon)
    return p


@dataclass
class DiagonalizationData:
    """Per-node diagonalization of the poroelastic principal part."""

    rho0: np.ndarray
    rho1: np.ndarray
    a11: np.ndarray
    a12: np.ndarray
    a21: np.ndarray
    a22: np.ndarray
    c: np.ndarray
    eig1: np.ndarray  # larger eigenvalue of a_tilde
    eig2: np.ndarray  # smaller eigenvalue of a_tilde

    def a_tilde(self) -> np.ndarray:
        """Stacked 2x2 matrices, shape ``grid + (2, 2)``."""
        top = np.stack([self.c + self.a11, self.a12], axis=-1)
        bot = np.stack([self.a21, self.a22], axis=-1)
        return np.stack([top, bot], axis=-2)

    def det_a_tilde(self) -> np.ndarray:
        return (self.c + self.a11) * self.a22 - self.a12 * self.a21

    def trace_a_tilde(self) -> np.ndarray:
        return self.c + self.a11 + self.a22


def compute_diagonalization(p: ParameterFields) -> DiagonalizationData:
    """Build rho0, rho1, the matrix a, c, and the eigenvalues of a_tilde.

    The matrix is

        a = [[rho0/rho_e, rho_f], [0, rho_e]]^-1
            [[lam + G - (rho_f/rho_e) C,  C],
             [C - (rho_f/rho_e) M,        M]]

    and eigenvalues use the closed-form 2x2 quadratic formula.
    """
    rho0 = p.rho * p.rho_e - p.rho_f**2
    if np.any(rho0 <= 0.0):
        raise AdmissibilityError(
            f"rho*rho_e - rho_f^2 must be positive; violated at node "
            f"{_argmin_node(rho0)} (value {rho0.min():.6g})")
    rho1 = rho0 / p.rho_f
    r = p.rho_f / p.rho_e
    a11 = (p.rho_e * (p.lam + p.G) - 2.0 * p.rho_f * p.C + p.rho_f**2 * p.M / p.rho_e) / rho0
    a12 = (p.rho_e * p.C - p.rho_f * p.M) / rho0
    a21 = (p.C - r * p.M) / p.rho_e
    a22 = p.M / p.rho_e
    c = p.rho_e * p.G / rho0
    tr = c + a11 + a22
    disc = (c + a11 - a22) ** 2 + 4.0 * a12 * a21
    root = np.sqrt(np.maximum(disc, 0.0))
    eig1 = 0.5 * (tr + root)
    eig2 = 0.5 * (tr - root)
    return DiagonalizationData(rho0=rho0, rho1=rho1, a11=a11, a12=a12, a21=a21,
                               a22=a22, c=c, eig1=eig1, eig2=eig2)


@dataclass
class CheckResult:
    name: str
    margin: float
    location: tuple[int, ...]
    passed: bool


@dataclass
class AdmissibilityReport:
    """Outcome of every positivity/SPD check with worst-case margins."""

    checks: list[CheckResult] = field(default_factory=list)
    threshold: float = 1e-10

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _spd_margin_2x2(a: np.ndarray, b: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Sylvester margin min(a, a*d - b^2) for the symmetric matrix [[a,b],[b,d]]."""
    return np.minimum(a, a * d - b * b)


def check_admissibility(p: ParameterFields, diag: DiagonalizationData,
                        threshold: float = 1e-10) -> AdmissibilityReport:
    """Evaluate every admissibility condition at every node.

    Failures are reported (flag + margin + worst node), never raised.
    """
    report = AdmissibilityReport(threshold=threshold)

    def add(name: str, margin_field: np.ndarray):
        loc = _argmin_node(margin_field)
        m = float(margin_field[loc])
        report.checks.append(CheckResult(name=name, margin=m, location=loc,
                                         passed=m > threshold))

    add("density_spd", _spd_margin_2x2(p.rho, p.rho_f, p.rho_e))
    add("moduli_spd", _spd_margin_2x2(p.lam, p.C, p.M))
    add("rho_e_gt_rho_f", p.rho_e - p.rho_f)
    add("rho_gt_rho_f", p.rho - p.rho_f)
    add("rho0_positive", diag.rho0)
    add("det_a_tilde_positive", diag.det_a_tilde())
    add("trace_a_tilde_positive", diag.trace_a_tilde())
    add("a_tilde_eigs_positive", np.minimum(diag.eig1, diag.eig2))
    return report


def wave_speed_fields(p: ParameterFields, diag: DiagonalizationData,
                      report: AdmissibilityReport | None = None) -> list[np.ndarray]:
    """The four squared wave-speed fields whose pseudoconvexity matters:
    alpha*beta, rho_e*G/rho0, and the two eigenvalues of a_tilde."""
    if p.alpha is None or p.beta is None:
        raise ValidationError("derive_em_parameters must run before wave_speed_fields")
    if report is None:
        report = check_admissibility(p, diag)
    if not report.all_passed:
        failed = [c.name for c in report.checks if not c.passed]
        raise AdmissibilityError(f"admissibility failed: {', '.join(failed)}")
    return [p.alpha * p.beta, diag.c, diag.eig1, diag.eig2]


# ---------------------------------------------------------------------------
# Twin-experiment parameter sets
# ---------------------------------------------------------------------------

def perturb_derived(base: ParameterFields, bumps: dict[str, ScalarSpec],
                    grid: Grid, scale: float = 1.0) -> ParameterFields:
    """Second parameter set from bumps on the derived fields (alpha, beta,
    gamma, xi).

    The primal coefficients are back-solved so the forward model sees exactly
    the requested derived perturbation:

        mu = 1/alpha,  epsilon = 1/beta,  sigma = gamma/beta,
        L = xi*kappa/(eta*beta).
    """
    if base.alpha is None:
        raise ValidationError("base parameter set must be derived first")
    X, Y, Z = grid.node_mesh()
    out = base.copy()
    new = {name: getattr(base, name).copy() for name in DERIVED_NAMES}
    for name, spec in bumps.items():
        if name not in DERIVED_NAMES:
            raise ValidationError(f"perturbation target must be one of {DERIVED_NAMES}, got {name!r}")
        new[name] = new[name] + scale * spec.values(X, Y, Z)
    if np.any(new["alpha"] <= 0.0) or np.any(new["beta"] <= 0.0):
        raise AdmissibilityError("perturbation drives alpha or beta nonpositive")
    if np.any(new["gamma"] < 0.0) or np.any(new["xi"] < 0.0):
        raise AdmissibilityError("perturbation drives gamma or xi negative")
    out.mu = 1.0 / new["alpha"]
    out.epsilon = 1.0 / new["beta"]
    out.sigma = new["gamma"] / new["beta"]
    out.L = new["xi"] * out.kappa / (out.eta * new["beta"])
    return derive_em_parameters(out)
