"""Two-parameter search for coincident steady and oscillatory criticality.

The target is a parameter point where mode k1 has a simple root at 0 and
mode k2 a simple root pair at +-i*omega0, with no other roots on the
imaginary axis (checked over a range of modes) and with both roots crossing
the axis transversally in independent parameter directions.

The search runs damped Newton iteration on the three real equations

    det M_k1(0; p) = 0,   Re det M_k2(i w; p) = 0,   Im det M_k2(i w; p) = 0

in the unknowns (p1, p2, w), using analytic parameter derivatives through
the adjugate-trace formula.  Models carrying an exact `family` callback are
rebuilt at every iterate, so the returned point is critical for the true
family rather than for its linearization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    AnalysisError,
    DegenerateJacobian,
    HygieneFailure,
    NoConvergence,
    SimplicityFailure,
)
from .model import ModelSpec
from .spectral import (
    CharMatrixContext,
    adjugate,
    char_matrix,
    char_matrix_context,
    char_matrix_dlam,
    find_roots_in_box,
    im_bound,
)

__all__ = ["CriticalPoint", "locate", "transversality"]

AXIS_TOL = 1e-6          # |Re lambda| below this counts as "on the axis"
RESIDUAL_TOL = 1e-10     # Newton convergence target on the determinants


@dataclass
class CriticalPoint:
    """A located codimension-two critical point and its certificates.

    alpha_star holds raw parameter coordinates: for models with an exact
    family callback these are the family's own parameters; otherwise they
    are offsets from the spec's base point.  omega0 is the oscillation
    frequency in the model's own time units.  transversality stores the two
    crossing speeds (d Re(steady root)/d p2, d Re(oscillatory root)/d p1).
    """

    alpha_star: tuple
    k1: int
    k2: int
    omega0: float
    transversality: tuple
    residuals: tuple
    hygiene: dict
    spec_critical: ModelSpec
    eigendata: Optional[object] = None
    guess: tuple = ()
    iterations: int = 0
    notes: dict = field(default_factory=dict)


def _spec_at(spec: ModelSpec, params) -> ModelSpec:
    """Model at raw parameters: exact rebuild if available, else fold."""
    if spec.family is not None:
        return spec.family(float(params[0]), float(params[1]))
    alpha = (
        float(params[0]) - spec.base_params[0],
        float(params[1]) - spec.base_params[1],
    )
    folded = ModelSpec(
        num_species=spec.num_species,
        domain_length=spec.domain_length,
        lags=spec.lags,
        diffusion=spec.diffusion_at(alpha),
        diffusion_deriv=spec.diffusion_deriv,
        reaction_matrices=spec.reaction_matrices_at(alpha),
        reaction_matrices_deriv=spec.reaction_matrices_deriv,
        quadratic=spec.quadratic,
        cubic=spec.cubic,
        family=None,
        base_params=(float(params[0]), float(params[1])),
        name=spec.name,
        extras=spec.extras,
    )
    return folded


def _char_param_derivative(ctx: CharMatrixContext, lam: complex, direction: int) -> np.ndarray:
    """d/d p_i of the characteristic matrix at fixed lambda."""
    spec = ctx.spec
    M = ctx.mu_k * np.diag(spec.diffusion_deriv[direction]).astype(complex)
    for A, r in zip(spec.reaction_matrices_deriv[direction], ctx.lags):
        M -= A * np.exp(-lam * r)
    return M


def _det_gradient(ctx: CharMatrixContext, lam: complex):
    """det, and its derivatives w.r.t. (p1, p2, lambda) via adjugate traces."""
    M = char_matrix(ctx, lam)
    adj = adjugate(M)
    det = M[0, 0] * adj[0, 0] + M[0, 1] * adj[1, 0] if ctx.m == 2 else complex(
        np.linalg.det(M)
    )
    if ctx.m == 1:
        det = complex(M[0, 0])
    d_lam = complex(np.trace(adj @ char_matrix_dlam(ctx, lam)))
    d_p = [
        complex(np.trace(adj @ _char_param_derivative(ctx, lam, i))) for i in (0, 1)
    ]
    return complex(det), d_p[0], d_p[1], d_lam


def _residual_vector(spec_i: ModelSpec, k1: int, k2: int, omega: float):
    ctx1 = char_matrix_context(spec_i, k1)
    ctx2 = char_matrix_context(spec_i, k2)
    det1 = _det_gradient(ctx1, 0.0 + 0.0j)
    det2 = _det_gradient(ctx2, 1j * omega)
    F = np.array([det1[0].real, det2[0].real, det2[0].imag])
    return F, det1, det2


def locate(
    spec: ModelSpec,
    k1: int,
    k2: int,
    initial_guess,
    k_scan: int = 20,
    tol: float = RESIDUAL_TOL,
    max_iter: int = 60,
) -> CriticalPoint:
    """Newton search for the codimension-two point; certified on return.

    initial_guess is (p1, p2, omega) in raw parameter coordinates.  Raises
    NoConvergence, DegenerateJacobian, SimplicityFailure or HygieneFailure.
    """
    x = np.array([float(v) for v in initial_guess])
    if len(x) != 3:
        raise ValueError("initial_guess must be (p1, p2, omega)")

    def evaluate(xv):
        spec_i = _spec_at(spec, xv[:2])
        return (spec_i,) + _residual_vector(spec_i, k1, k2, xv[2])

    try:
        spec_i, F, det1, det2 = evaluate(x)
    except AnalysisError as err:
        raise NoConvergence(f"initial guess not evaluable: {err}") from err
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        if np.max(np.abs(F)) < tol:
            break
        J = np.array(
            [
                [det1[1].real, det1[2].real, 0.0],
                [det2[1].real, det2[2].real, (1j * det2[3]).real],
                [det2[1].imag, det2[2].imag, (1j * det2[3]).imag],
            ]
        )
        scale = np.max(np.abs(J))
        if not np.isfinite(scale) or scale == 0.0:
            raise DegenerateJacobian("Jacobian is not finite")
        if abs(np.linalg.det(J)) < 1e-12 * scale**3:
            raise DegenerateJacobian(
                f"Newton Jacobian nearly singular (|det| = {abs(np.linalg.det(J)):.3e})"
            )
        step = np.linalg.solve(J, -F)
        accepted = False
        for _ in range(20):
            x_new = x + step
            try:
                spec_new, F_new, det1_new, det2_new = evaluate(x_new)
            except AnalysisError:
                step *= 0.5
                continue
            if np.linalg.norm(F_new) < np.linalg.norm(F):
                accepted = True
                break
            step *= 0.5
        if not accepted:
            raise NoConvergence(
                f"damped Newton stalled at residual {np.max(np.abs(F)):.3e}"
            )
        x, spec_i, F, det1, det2 = x_new, spec_new, F_new, det1_new, det2_new
    else:
        raise NoConvergence(
            f"no convergence in {max_iter} iterations; residual {np.max(np.abs(F)):.3e}"
        )

    if x[2] < 0:  # pick the root in the upper half-plane
        x[2] = -x[2]
        spec_i, F, det1, det2 = evaluate(x)
    omega0 = float(x[2])
    if omega0 <= tol:
        raise SimplicityFailure("oscillatory root collapsed onto the real axis")

    # simplicity of both critical roots
    for label, det_info, ctx_k in (
        ("steady", det1, k1),
        ("oscillatory", det2, k2),
    ):
        ctx = char_matrix_context(spec_i, ctx_k)
        lam = 0.0j if label == "steady" else 1j * omega0
        scale = max(1.0, float(np.linalg.norm(char_matrix_dlam(ctx, lam), 2)))
        if abs(det_info[3]) < 1e-6 * scale ** (ctx.m - 1 if ctx.m > 1 else 1):
            raise SimplicityFailure(
                f"{label} root is not simple (|d det/d lambda| = {abs(det_info[3]):.3e})"
            )

    # isolation: each critical root alone in a small disk-like box
    iso = 0.1 * omega0
    ctx1 = char_matrix_context(spec_i, k1)
    ctx2 = char_matrix_context(spec_i, k2)
    n_zero = len(find_roots_in_box(ctx1, (-iso, iso), (-iso, iso)))
    if n_zero != 1:
        raise SimplicityFailure(
            f"expected an isolated steady root, found {n_zero} roots nearby"
        )
    n_hopf = len(
        find_roots_in_box(ctx2, (-iso, iso), (omega0 - iso, omega0 + iso))
    )
    if n_hopf != 1:
        raise SimplicityFailure(
            f"expected an isolated oscillatory root, found {n_hopf} roots nearby"
        )

    hygiene = _hygiene_scan(spec_i, k1, k2, omega0, k_scan)

    trans = _transversality_at(spec_i, k1, k2, omega0)
    if abs(trans[0]) <= 1e-8 or abs(trans[1]) <= 1e-8:
        raise SimplicityFailure(
            f"transversality failed: crossing speeds {trans}"
        )

    return CriticalPoint(
        alpha_star=(float(x[0]), float(x[1])),
        k1=int(k1),
        k2=int(k2),
        omega0=omega0,
        transversality=trans,
        residuals=(abs(det1[0]), abs(det2[0])),
        hygiene=hygiene,
        spec_critical=spec_i,
        guess=tuple(float(v) for v in initial_guess),
        iterations=n_iter,
    )


def _hygiene_scan(spec_i: ModelSpec, k1: int, k2: int, omega0: float, k_scan: int) -> dict:
    """Enumerate roots near the imaginary axis for modes 0..k_scan.

    Any root with |Re| < AXIS_TOL other than the certified critical ones is
    a failure.  The strip half-width is 5% of max(1, omega0); taller modes
    only shed roots further left, so the scan depth k_scan bounds the check.
    """
    half = 0.05 * max(1.0, omega0)
    counts = {}
    nearest_off = np.inf
    for k in range(k_scan + 1):
        ctx = char_matrix_context(spec_i, k)
        b_im = max(im_bound(ctx, half), 2.0 * omega0)
        roots = find_roots_in_box(ctx, (-half, half), (-b_im, b_im))
        counts[k] = len(roots)
        for root in roots:
            lam = root.lam
            is_steady = k == k1 and abs(lam) <= 10 * AXIS_TOL
            is_osc = k == k2 and min(
                abs(lam - 1j * omega0), abs(lam + 1j * omega0)
            ) <= 10 * AXIS_TOL
            if is_steady or is_osc:
                continue
            if abs(lam.real) < AXIS_TOL:
                raise HygieneFailure(
                    f"extra root on the axis at mode {k}: lambda = {lam:.3e}"
                )
            nearest_off = min(nearest_off, abs(lam.real))
    expected = {k1: 1, k2: 2} if k1 != k2 else {k1: 3}
    for k, n_exp in expected.items():
        if k <= k_scan and counts.get(k, 0) != n_exp:
            raise HygieneFailure(
                f"mode {k} carries {counts[k]} near-axis roots, expected {n_exp}"
            )
    return {
        "k_scan": k_scan,
        "strip_halfwidth": half,
        "near_axis_counts": counts,
        "nearest_offaxis_abs_re": None if not np.isfinite(nearest_off) else float(nearest_off),
    }


def _transversality_at(spec_i: ModelSpec, k1: int, k2: int, omega0: float) -> tuple:
    """Crossing speeds by implicit differentiation of det = 0.

    d lambda / d p_i = -(d det/d p_i) / (d det/d lambda); the pair returned
    is (Re d(steady)/d p2, Re d(oscillatory)/d p1).
    """
    ctx1 = char_matrix_context(spec_i, k1)
    ctx2 = char_matrix_context(spec_i, k2)
    _, d1_p1, d1_p2, d1_lam = _det_gradient(ctx1, 0.0j)
    _, d2_p1, d2_p2, d2_lam = _det_gradient(ctx2, 1j * omega0)
    gamma_p2 = (-d1_p2 / d1_lam).real
    nu_p1 = (-d2_p1 / d2_lam).real
    return (float(gamma_p2), float(nu_p1))


def transversality(spec: ModelSpec, cp: CriticalPoint) -> tuple:
    """Crossing-speed pair of a located critical point.

    Works from the spec rebuilt at the critical parameters so the result is
    exact for the true family.
    """
    del spec
    return _transversality_at(
        cp.spec_critical, cp.k1, cp.k2, cp.omega0
    )
