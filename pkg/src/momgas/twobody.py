"""Two-particle states and boundary-condition residuals of the
momentum-dependent contact gas.

The model Hamiltonian, in units 2m = hbar = 1, is

    H = -sum_j d^2/dx_j^2
        + 2*lam * sum_{j<k} (d_j - d_k) delta(x_j - x_k) (d_j - d_k).

The singular interaction is equivalent to boundary conditions on each
hyperplane x_j = x_k (spectator coordinates held fixed and distinct):

    (d_j - d_k) chi   continuous across x_j = x_k,
    chi|_{x_j = x_k + 0+} - chi|_{x_j = x_k - 0+}
        = 2*lam * (d_j - d_k) chi|_{x_j = x_k - 0+}.

For N = 2 in the relative coordinate x = x1 - x2 (the center of mass
decouples) they reduce to

    chi'(0+) = chi'(-0+),      chi(0+) - chi(-0+) = 4*lam*chi'(0+),

and the solutions at energy E = k^2 are

    chi_plus(x)  = cos(k*x)                       (even channel, lam-blind),
    chi_minus(x) = sin(k*x)/(2*lam*k) + sgn(x)*cos(k*x)   (odd channel).

For lam < 0 the odd channel additionally hosts one bound state at
k = i/(2*lam), E = -1/(4*lam^2), with wavefunction proportional to
sgn(x)*exp(-|x|/(2*|lam|)); we return it normalized to unit L2 norm.
Scattering states are returned unnormalized, exactly as written above.

Conventions fixed here and relied on by every other module:

  * units 2m = hbar = 1; lam is dimensionless in these units;
  * the formal chi'(0) generated by the interaction is the average of the
    left and right derivatives (they coincide on eigenfunctions);
  * sgn(0) = 0, so chi_minus(0) is that average of its one-sided limits;
  * one-sided limits are taken analytically, by branch selection, never by
    shrinking a numerical offset.  The `offset` argument of `bc_residual`
    exists only for probing generic functions that are not eigenfunctions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "Parity", "Coupling", "TwoBodyState", "BoundaryResidual",
    "scattering_state", "bound_state",
    "eval_two_body", "eval_two_body_derivative",
    "two_body_residual", "bc_residual",
]


class Parity(Enum):
    """Exchange parity of the two-particle relative wavefunction."""
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class Coupling:
    """Interaction strength `lam` and the dual boson-gas coupling cB = 1/lam.

    lam > 0 is the repulsive sector, lam < 0 the attractive one; lam = 0
    is the free model and carries no dual coupling.
    """
    lam: float

    def __post_init__(self):
        if self.lam == 0:
            raise ValueError("lam = 0 is the free model; the dual coupling 1/lam is undefined")

    @property
    def cB(self) -> float:
        return 1.0 / self.lam

    @property
    def repulsive(self) -> bool:
        return self.lam > 0


@dataclass(frozen=True)
class TwoBodyState:
    """A two-particle relative-motion eigenstate.

    `k` is the relative momentum (real for scattering states, purely
    imaginary for the bound state) and `energy` = k^2 is real in both
    cases (negative for the bound state).
    """
    parity: Parity
    k: complex
    energy: float

    @property
    def bound(self) -> bool:
        return self.energy < 0


@dataclass(frozen=True)
class BoundaryResidual:
    """Defects of the two matching conditions at a contact hyperplane.

    Both vanish (to evaluation roundoff) on true eigenfunctions.
    `derivative_jump` is the defect of the first line ((d_j - d_k) chi
    continuous), `value_jump_defect` of the second (value jump minus
    2*lam*(d_j - d_k) chi evaluated on the lower side).
    """
    derivative_jump: complex
    value_jump_defect: complex


def _sgn(x: float) -> int:
    return (x > 0) - (x < 0)


def scattering_state(parity: Parity, k: float) -> TwoBodyState:
    """Scattering state of given parity at real relative momentum k."""
    k = float(k)
    return TwoBodyState(parity=parity, k=complex(k), energy=k * k)


def bound_state(lam: float) -> TwoBodyState | None:
    """The odd-channel bound state, or None in the repulsive sector.

    Exists iff lam < 0, at k = i/(2*lam) with E = -1/(4*lam^2).
    """
    if lam == 0:
        raise ValueError("lam = 0 is the free model; no bound state is defined")
    if lam > 0:
        return None
    return TwoBodyState(parity=Parity.ODD, k=1j / (2.0 * lam), energy=-1.0 / (4.0 * lam * lam))


def _bound_params(state: TwoBodyState, lam: float) -> tuple[float, float]:
    # decay rate kappa = 1/(2|lam|) and L2 normalization 1/sqrt(2|lam|)
    if lam >= 0:
        raise ValueError("bound state requested with lam >= 0; it exists only for lam < 0")
    if state.parity is not Parity.ODD:
        raise ValueError("the bound state lives in the odd channel")
    kappa = 1.0 / (2.0 * abs(lam))
    norm = 1.0 / math.sqrt(2.0 * abs(lam))
    return kappa, norm


def eval_two_body(state: TwoBodyState, lam: float, x: float) -> complex:
    """Evaluate the two-particle relative wavefunction at x = x1 - x2.

    chi_plus(x) = cos(k x); chi_minus(x) = sin(k x)/(2 lam k) + sgn(x) cos(k x);
    the bound state (energy < 0) is the lam < 0 continuation of chi_minus,
    normalized to unit L2 norm: sgn(x) exp(-|x|/(2|lam|)) / sqrt(2|lam|).
    """
    if state.parity is Parity.EVEN:
        return cmath.cos(state.k * x)
    if state.bound:
        kappa, norm = _bound_params(state, lam)
        return _sgn(x) * math.exp(-kappa * abs(x)) * norm
    if lam == 0:
        raise ValueError("odd channel requires lam != 0")
    if state.k == 0:
        raise ValueError("odd channel degenerates at k = 0 (sin(kx)/(2 lam k) is singular)")
    k = state.k
    return cmath.sin(k * x) / (2.0 * lam * k) + _sgn(x) * cmath.cos(k * x)


def eval_two_body_derivative(state: TwoBodyState, lam: float, x: float) -> complex:
    """d/dx of `eval_two_body`, with sgn(0) = 0 (average convention at x = 0).

    For the bound state the derivative is continuous, -kappa * exp(-kappa|x|)
    times the normalization, and that value is returned also at x = 0.
    """
    if state.parity is Parity.EVEN:
        return -state.k * cmath.sin(state.k * x)
    if state.bound:
        kappa, norm = _bound_params(state, lam)
        return -kappa * math.exp(-kappa * abs(x)) * norm
    if lam == 0:
        raise ValueError("odd channel requires lam != 0")
    if state.k == 0:
        raise ValueError("odd channel degenerates at k = 0")
    k = state.k
    return cmath.cos(k * x) / (2.0 * lam) - k * _sgn(x) * cmath.sin(k * x)


def _one_sided(state: TwoBodyState, lam: float, side: int) -> tuple[complex, complex]:
    # value and derivative at x -> side * 0+ with the sgn branch fixed to `side`
    if state.parity is Parity.EVEN:
        return 1.0 + 0j, 0.0 + 0j
    if state.bound:
        kappa, norm = _bound_params(state, lam)
        return side * norm + 0j, -kappa * norm + 0j
    if lam == 0:
        raise ValueError("odd channel requires lam != 0")
    if state.k == 0:
        raise ValueError("odd channel degenerates at k = 0")
    return side * 1.0 + 0j, 1.0 / (2.0 * lam) + 0j


def two_body_residual(state: TwoBodyState, lam: float) -> BoundaryResidual:
    """Defects of the two-particle matching conditions at x = 0, analytically.

    First line: chi'(0+) - chi'(-0+).  Second line: [chi(0+) - chi(-0+)]
    - 4*lam*chi'(0+) (the relative-coordinate form; (d_1 - d_2) = 2 d_x).
    """
    vp, dp = _one_sided(state, lam, +1)
    vm, dm = _one_sided(state, lam, -1)
    return BoundaryResidual(
        derivative_jump=dp - dm,
        value_jump_defect=(vp - vm) - 4.0 * lam * dp,
    )


def bc_residual(wavefunction, lam: float, pair: tuple[int, int], base_point,
                offset: float = 1e-6) -> BoundaryResidual:
    """Defects of the N-body matching conditions at a point on x_j = x_k.

    `pair` holds 0-based coordinate indices (j, k); `base_point` must lie on
    the hyperplane x_j = x_k with all spectator coordinates distinct from
    each other and from the contact value.

    `wavefunction` is either an object exposing
    ``one_sided_pair(x, pair, side) -> (value, gradient)`` (the analytic
    path used for Bethe wavefunctions; `offset` is ignored), or a pair of
    callables ``(f, grad)`` evaluated a finite distance `offset` from the
    hyperplane -- the diagnostic path for generic non-eigenfunctions.

    Returns the defect of both matching conditions:
    (d_j - d_k) chi continuity, and the value jump minus
    2*lam*(d_j - d_k) chi taken on the x_j = x_k - 0+ side.
    """
    j, k = pair
    x = [float(v) for v in base_point]
    n = len(x)
    if not (0 <= j < n and 0 <= k < n) or j == k:
        raise ValueError(f"pair {pair!r} is not a valid coordinate pair for {n} coordinates")
    t = x[j]
    scale = 1.0 + max(abs(v) for v in x)
    if abs(x[j] - x[k]) > 1e-9 * scale:
        raise ValueError("base_point does not lie on the hyperplane x_j = x_k")
    spectators = [v for m, v in enumerate(x) if m not in (j, k)]
    for a, va in enumerate(spectators):
        if abs(va - t) < 1e-9 * scale:
            raise ValueError("a spectator coordinate coincides with the contact point")
        for vb in spectators[a + 1:]:
            if abs(va - vb) < 1e-9 * scale:
                raise ValueError("spectator coordinates coincide; the sector is ill-defined")

    if hasattr(wavefunction, "one_sided_pair"):
        vp, gp = wavefunction.one_sided_pair(x, (j, k), +1)
        vm, gm = wavefunction.one_sided_pair(x, (j, k), -1)
    else:
        try:
            f, grad = wavefunction
        except TypeError:
            raise ValueError(
                "wavefunction must expose one_sided_pair() or be a (value, gradient) pair"
            ) from None
        if offset <= 0:
            raise ValueError("offset must be positive for the finite-offset diagnostic path")
        xp = list(x)
        xp[j], xp[k] = t + offset / 2.0, t - offset / 2.0
        xm = list(x)
        xm[j], xm[k] = t - offset / 2.0, t + offset / 2.0
        vp, gp = f(xp), grad(xp)
        vm, gm = f(xm), grad(xm)

    dplus = gp[j] - gp[k]
    dminus = gm[j] - gm[k]
    return BoundaryResidual(
        derivative_jump=dplus - dminus,
        value_jump_defect=(vp - vm) - 2.0 * lam * dminus,
    )
