"""Critical eigenvectors, adjoint pairing, and delay-measure integrals.

At the critical point, mode k1 has the steady eigenfunction phi1 (constant
history) and mode k2 the oscillatory pair phi2*exp(i*omega0*theta).  The
matching adjoint rows psi act on forward segments, paired through

    (psi, phi)_k = psi(0) phi(0)
                 + sum_{j>=1} int_{-r_j}^0 psi(xi + r_j) A_j phi(xi) d xi.

The pairing has a closed form for exponential-polynomial profiles and a
64-node Gauss-Legendre fallback used as an independent cross-check.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import MultiDimensionalKernel, NoKernel, UnsupportedProfile
from .locator import CriticalPoint
from .model import ModelSpec
from .profiles import Profile, exp_profile
from .spectral import char_matrix, char_matrix_context, char_matrix_dlam

__all__ = [
    "null_vector",
    "EigenQuadruple",
    "EtaIntegrals",
    "eta_integrals",
    "eta_apply",
    "bilinear_form",
    "normalized_quadruple",
    "segment_integral",
]


def null_vector(M: np.ndarray, side: str = "right") -> np.ndarray:
    """One-dimensional kernel vector of a (numerically) singular matrix.

    side="right" returns v with M v = 0; side="left" returns w with
    w M = 0.  The smallest singular value must be below 1e-8 of the largest
    (NoKernel otherwise) and the second smallest above 1e-4 of the largest
    (MultiDimensionalKernel otherwise).  The first component larger than
    1e-8 in modulus is scaled to exactly 1.
    """
    M = np.asarray(M, dtype=complex)
    U, S, Vh = np.linalg.svd(M)
    s_max = S[0] if S[0] > 0 else 1.0
    if S[-1] > 1e-8 * s_max:
        raise NoKernel(
            f"smallest singular value {S[-1]:.3e} exceeds 1e-8 * {s_max:.3e}"
        )
    if len(S) > 1 and S[-2] < 1e-4 * s_max:
        raise MultiDimensionalKernel(
            f"second singular value {S[-2]:.3e} below 1e-4 * {s_max:.3e}"
        )
    if side == "right":
        v = np.conj(Vh[-1, :])
    elif side == "left":
        v = np.conj(U[:, -1])
    else:
        raise ValueError("side must be 'right' or 'left'")
    for comp in v:
        if abs(comp) > 1e-8:
            return v / comp
    raise NoKernel("kernel vector has no component above 1e-8")


@dataclass(frozen=True)
class EigenQuadruple:
    """Normalized critical eigenvectors and their certificates.

    phi vectors are scaled to first component 1; psi rows absorb the
    normalization (psi_i, phi_i)_{k_i} = 1.
    """

    k1: int
    k2: int
    omega0: float
    phi1_0: np.ndarray
    phi2_0: np.ndarray
    psi1_0: np.ndarray
    psi2_0: np.ndarray
    null_residuals: tuple
    normalization_residuals: tuple

    @property
    def dim(self) -> int:
        return self.phi1_0.shape[0]

    def phi1_profile(self) -> Profile:
        return exp_profile(self.phi1_0, 0.0)

    def phi2_profile(self) -> Profile:
        return exp_profile(self.phi2_0, 1j * self.omega0)

    def psi1_profile(self) -> Profile:
        """Adjoint row as a function of the forward variable s >= 0."""
        return exp_profile(self.psi1_0, 0.0)

    def psi2_profile(self) -> Profile:
        return exp_profile(self.psi2_0, -1j * self.omega0)


@dataclass(frozen=True)
class EtaIntegrals:
    """Moments of one mode's delay measure.

    int_deta          = -mu_k D + sum_j A_j        (total mass)
    int_theta_deta    = -sum_{j>=1} r_j A_j        (first moment)
    exp_weighted(c)   = -mu_k D + sum_j A_j e^{-c r_j}
    """

    k: int
    int_deta: np.ndarray
    int_theta_deta: np.ndarray
    _diff_term: np.ndarray
    _matrices: tuple
    _lags: tuple

    def exp_weighted(self, c: complex) -> np.ndarray:
        M = self._diff_term.astype(complex).copy()
        for A, r in zip(self._matrices, self._lags):
            M += A * cmath.exp(-c * r)
        return M


def eta_integrals(spec: ModelSpec, k: int, alpha=(0.0, 0.0)) -> EtaIntegrals:
    ctx = char_matrix_context(spec, k, alpha)
    diff_term = -np.diag(ctx.mu_k * ctx.diffusion)
    total = diff_term.astype(complex).copy()
    first = np.zeros_like(total)
    for A, r in zip(ctx.matrices, ctx.lags):
        total += A
        first -= r * A
    return EtaIntegrals(
        k=int(k),
        int_deta=total,
        int_theta_deta=first,
        _diff_term=diff_term,
        _matrices=ctx.matrices,
        _lags=ctx.lags,
    )


def eta_apply(spec: ModelSpec, k: int, profile: Profile, alpha=(0.0, 0.0)) -> np.ndarray:
    """Integral of the mode-k delay measure against a history profile:
    (-mu_k D + A_0) profile(0) + sum_{j>=1} A_j profile(-r_j)."""
    ctx = char_matrix_context(spec, k, alpha)
    out = (-ctx.mu_k * np.diag(ctx.diffusion) + ctx.matrices[0]).astype(
        complex
    ) @ profile.evaluate(0.0)
    for A, r in zip(ctx.matrices[1:], ctx.lags[1:]):
        out += A @ profile.evaluate(-r)
    return out


def segment_integral(a: complex, power: int, r: float) -> complex:
    """int_{-r}^0 xi^power exp(a xi) d xi for power in {0, 1}."""
    ar = a * r
    if power == 0:
        if a == 0:
            return complex(r)
        # -(expm1(-a r))/a, stable for small |a r|
        return -cmath_expm1(-ar) / a
    if power == 1:
        if abs(ar) < 1e-4:
            # series: -r^2/2 + a r^3/3 - a^2 r^4 / 8 + a^3 r^5 / 30
            return complex(
                -(r**2) / 2.0 + a * r**3 / 3.0 - a**2 * r**4 / 8.0 + a**3 * r**5 / 30.0
            )
        e = cmath.exp(-ar)
        return -1.0 / a**2 + e * (r / a + 1.0 / a**2)
    raise UnsupportedProfile(f"segment integral with power {power}")


def cmath_expm1(z: complex) -> complex:
    """expm1 for complex arguments, accurate near zero."""
    if abs(z) < 1e-4:
        return z * (1.0 + z / 2.0 * (1.0 + z / 3.0 * (1.0 + z / 4.0)))
    return cmath.exp(z) - 1.0


def bilinear_form(
    spec: ModelSpec,
    k: int,
    psi: Profile,
    phi: Profile,
    alpha=(0.0, 0.0),
    method: str = "closed",
) -> complex:
    """Adjoint pairing (psi, phi)_k between a forward row profile and a
    history profile.

    method="closed" uses exact segment integrals (left profiles must be
    pure exponentials, else UnsupportedProfile); method="quadrature" uses
    64-node Gauss-Legendre on each lag interval.
    """
    ctx = char_matrix_context(spec, k, alpha)
    base = complex(psi.evaluate(0.0) @ phi.evaluate(0.0))
    if method == "closed":
        acc = base
        for pt in psi.terms:
            if pt.power != 0:
                raise UnsupportedProfile(
                    "closed-form pairing requires exponential left profiles"
                )
            for ft in phi.terms:
                a = pt.rate + ft.rate
                for A, r in zip(ctx.matrices[1:], ctx.lags[1:]):
                    # int_{-r}^0 psi(xi+r) A phi(xi) dxi with
                    # psi(s) = w e^{c s}: w e^{c r} A [v xi^q e^{(c+d) xi}]
                    weight = cmath.exp(pt.rate * r)
                    acc += (
                        weight
                        * (pt.vector @ (A @ ft.vector))
                        * segment_integral(a, ft.power, r)
                    )
        return acc
    if method == "quadrature":
        nodes, weights = np.polynomial.legendre.leggauss(64)
        acc = base
        for A, r in zip(ctx.matrices[1:], ctx.lags[1:]):
            xi = 0.5 * r * (nodes - 1.0)       # map [-1,1] -> [-r, 0]
            w = 0.5 * r * weights
            left = psi.evaluate(xi + r)        # (64, m)
            right = phi.evaluate(xi)           # (64, m)
            acc += np.einsum("q,qi,ij,qj->", w, left, A, right)
        return complex(acc)
    raise ValueError("method must be 'closed' or 'quadrature'")


def normalized_quadruple(spec: ModelSpec, cp: CriticalPoint) -> EigenQuadruple:
    """Eigenvectors of both critical roots, normalized against their
    adjoints, computed on the spec rebuilt at the critical point."""
    sc = cp.spec_critical
    ctx1 = char_matrix_context(sc, cp.k1)
    ctx2 = char_matrix_context(sc, cp.k2)
    M1 = char_matrix(ctx1, 0.0j)
    M2 = char_matrix(ctx2, 1j * cp.omega0)

    phi1 = null_vector(M1, "right")
    phi2 = null_vector(M2, "right")
    psi1_raw = null_vector(M1, "left")
    psi2_raw = null_vector(M2, "left")

    n1 = psi1_raw @ char_matrix_dlam(ctx1, 0.0j) @ phi1
    n2 = psi2_raw @ char_matrix_dlam(ctx2, 1j * cp.omega0) @ phi2
    psi1 = psi1_raw / n1
    psi2 = psi2_raw / n2

    quad = EigenQuadruple(
        k1=cp.k1,
        k2=cp.k2,
        omega0=cp.omega0,
        phi1_0=phi1,
        phi2_0=phi2,
        psi1_0=psi1,
        psi2_0=psi2,
        null_residuals=(
            float(np.linalg.norm(M1 @ phi1)),
            float(np.linalg.norm(M2 @ phi2)),
            float(np.linalg.norm(psi1 @ M1)),
            float(np.linalg.norm(psi2 @ M2)),
        ),
        normalization_residuals=(
            abs(
                bilinear_form(sc, cp.k1, exp_profile(psi1, 0.0), exp_profile(phi1, 0.0))
                - 1.0
            ),
            abs(
                bilinear_form(
                    sc,
                    cp.k2,
                    exp_profile(psi2, -1j * cp.omega0),
                    exp_profile(phi2, 1j * cp.omega0),
                )
                - 1.0
            ),
        ),
    )
    return quad
