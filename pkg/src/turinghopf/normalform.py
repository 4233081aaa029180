"""Second-order manifold corrections and third-order normal-form coefficients.

At a codimension-two point where a steady mode k1 and an oscillatory mode k2
lose stability together, the flow on the four-dimensional center manifold is

    dz1/dt = a1(alpha) z1 + a11 z1^2 + a23 z2 conj(z2)
             + a111 z1^3 + a123 z1 z2 conj(z2) + ...
    dz2/dt = i omega0 z2 + b2(alpha) z2 + b12 z1 z2
             + b112 z1^2 z2 + b223 z2^2 conj(z2) + ...

This module computes the quadratic manifold corrections h_q (one boundary
value problem per monomial q and spatial mode), the parameter-linear
functionals a1, b2, and the five nonlinear coefficients, by two independent
routes that are cross-checked against each other:

  * the general route: mode-interaction brackets from `basis` contracted
    against the quadratic/cubic forms and the h corrections, valid for every
    critical mode pair;
  * the case route: the specialized closed forms for each of the five
    interaction kinds (both modes uniform, equal nonzero modes, steady
    patterned, wave patterned, distinct nonzero modes), whose compact real
    reductions assume a real model.

Every h correction carries certificates: the interior derivative relation
and the boundary relation are evaluated exactly from the stored term list.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .basis import (
    InnerProductTable,
    inner_product_table,
    interaction_kind,
    product_modes,
    triple_bracket,
)
from .eigensystem import (
    EigenQuadruple,
    bilinear_form,
    eta_apply,
    normalized_quadruple,
)
from .errors import ResonantSolve
from .locator import CriticalPoint
from .model import ModelSpec
from .profiles import Profile, ProfileTerm, exp_profile, zero_profile
from .spectral import char_matrix, char_matrix_context, char_matrix_dlam

__all__ = [
    "InnerProductTable",
    "inner_product_table",
    "HRecord",
    "NormalForm",
    "compute_h",
    "linear_functionals",
    "linear_coefficients",
    "cubic_coefficients",
    "compute_normal_form",
]

# Monomial bookkeeping: q = (p1, p2, p3) are the powers of (z1, z2, conj z2).
_MONOMIALS = ("200", "011", "020", "110")
_CONJUGATES = {"020": "002", "110": "101"}

_SINGULAR_REL = 1e-8
_RESIDUAL_SAMPLES = 20


@dataclass(frozen=True)
class HRecord:
    """One spatial-mode component of one quadratic manifold correction.

    Attributes
    ----------
    q : str
        Monomial label among '200', '020', '002', '110', '101', '011'
        (powers of z1, z2, conj z2).
    mode : int
        Spatial mode index of this component.
    profile : Profile
        The correction as a function of history angle theta in [-r, 0].
    forcing : ndarray
        Constant m-vector: the mode's share of the quadratic forcing.
    rate : complex
        The monomial's linear growth rate c_q (0, i*omega0, 2i*omega0, ...).
    interior_residual : float
        Max norm of d/dtheta h - c_q h - source over sample angles.
    boundary_residual : float
        Norm of the defect in the lag-measure boundary relation.
    pinned : str
        '' for a regular solve; otherwise which adjoint row fixed the
        kernel component of a resonant solve ('steady' or 'oscillatory').
    """

    q: str
    mode: int
    profile: Profile
    forcing: np.ndarray
    rate: complex
    interior_residual: float
    boundary_residual: float
    pinned: str = ""


@dataclass
class NormalForm:
    """Coefficient set of the third-order reduced flow plus certificates.

    The primary coefficients come from the general route; the case-route
    values and the worst relative disagreement between the two routes are
    recorded alongside.
    """

    k1: int
    k2: int
    omega0: float
    case_tag: str
    a1_coeffs: tuple
    b2_coeffs: tuple
    a11: complex
    a23: complex
    b12: complex
    a111: complex
    a123: complex
    b112: complex
    b223: complex
    h_records: tuple = ()
    general_route: dict = field(default_factory=dict)
    case_route: dict = field(default_factory=dict)
    route_discrepancy: float = 0.0

    def a1(self, alpha) -> complex:
        return self.a1_coeffs[0] * alpha[0] + self.a1_coeffs[1] * alpha[1]

    def b2(self, alpha) -> complex:
        return self.b2_coeffs[0] * alpha[0] + self.b2_coeffs[1] * alpha[1]


# ---------------------------------------------------------------------------
# quadratic/cubic form evaluation on profiles


def _qform(spec: ModelSpec, p: Profile, q: Profile) -> np.ndarray:
    return np.asarray(
        spec.quadratic(p.lag_samples(spec.lags), q.lag_samples(spec.lags)),
        dtype=complex,
    )


def _cform(spec: ModelSpec, p: Profile, q: Profile, r: Profile) -> np.ndarray:
    return np.asarray(
        spec.cubic(
            p.lag_samples(spec.lags),
            q.lag_samples(spec.lags),
            r.lag_samples(spec.lags),
        ),
        dtype=complex,
    )


def _monomial_data(q: str, eigen: EigenQuadruple, spec: ModelSpec):
    """Rate c_q, scalar weight, forcing direction, and mode product for q."""
    phi1 = eigen.phi1_profile()
    phi2 = eigen.phi2_profile()
    phi2b = phi2.conjugate()
    w0 = 1j * eigen.omega0
    if q == "200":
        return 0.0 + 0.0j, 0.5, _qform(spec, phi1, phi1), (eigen.k1, eigen.k1)
    if q == "011":
        return 0.0 + 0.0j, 1.0, _qform(spec, phi2, phi2b), (eigen.k2, eigen.k2)
    if q == "020":
        return 2.0 * w0, 0.5, _qform(spec, phi2, phi2), (eigen.k2, eigen.k2)
    if q == "110":
        return w0, 1.0, _qform(spec, phi1, phi2), (eigen.k1, eigen.k2)
    raise ValueError(f"unknown monomial label {q!r}")


# ---------------------------------------------------------------------------
# the h solver


def _interior_sources(q, k, eigen, coef, qvec, prod):
    """Center-projection terms feeding the mode-k slice of monomial q.

    Returns a list of (weight, vector, rate) triples: the interior equation
    for the slice is dh/dtheta - c_q h = sum_i weight_i vector_i e^{rate_i
    theta}.
    """
    w0 = 1j * eigen.omega0
    sources = []
    if k == eigen.k1:
        bracket = triple_bracket(prod[0], prod[1], eigen.k1)
        w = coef * bracket * (eigen.psi1_0 @ qvec)
        if w != 0:
            sources.append((w, eigen.phi1_0, 0.0 + 0.0j))
    if k == eigen.k2:
        bracket = triple_bracket(prod[0], prod[1], eigen.k2)
        w2 = coef * bracket * (eigen.psi2_0 @ qvec)
        w3 = coef * bracket * (np.conj(eigen.psi2_0) @ qvec)
        if w2 != 0:
            sources.append((w2, eigen.phi2_0, w0))
        if w3 != 0:
            sources.append((w3, np.conj(eigen.phi2_0), -w0))
    return sources


def _particular_profile(sources, rate_c, dim) -> Profile:
    """Particular solution p with p(0) = 0 of dp/dtheta - c p = sources."""
    terms = []
    for w, vec, lam in sources:
        v = w * np.asarray(vec, dtype=complex)
        if abs(lam - rate_c) > 1e-12 * max(1.0, abs(rate_c)):
            scale = 1.0 / (lam - rate_c)
            terms.append(ProfileTerm(scale * v, lam, 0))
            terms.append(ProfileTerm(-scale * v, rate_c, 0))
        else:
            terms.append(ProfileTerm(v, rate_c, 1))
    if not terms:
        return zero_profile(dim)
    return Profile.from_terms(terms, dim).collect()


def _solve_slice(spec, eigen, k, q, rate_c, coef, qvec, prod):
    """Solve one boundary value problem: mode k of monomial q."""
    m = spec.num_species
    ctx = char_matrix_context(spec, k)
    forcing = coef * triple_bracket(prod[0], prod[1], k) * qvec

    sources = _interior_sources(q, k, eigen, coef, qvec, prod)
    particular = _particular_profile(sources, rate_c, m)

    boundary_rhs = -forcing.astype(complex)
    for w, vec, _lam in sources:
        boundary_rhs = boundary_rhs + w * np.asarray(vec, dtype=complex)

    delta = char_matrix(ctx, rate_c)
    rhs = eta_apply(spec, k, particular) - boundary_rhs

    svals = np.linalg.svd(delta, compute_uv=False)
    if svals[-1] > _SINGULAR_REL * svals[0]:
        h0 = np.linalg.solve(delta, rhs)
        pinned = ""
    else:
        # The operator is singular exactly when the slice shares the rate of
        # a critical eigenvalue; the solution is then fixed by requiring the
        # correction to carry no component along the matching adjoint
        # eigenfunction.
        if k == eigen.k1 and abs(rate_c) <= 1e-8 * max(1.0, eigen.omega0):
            psi_row, psi_rate, pinned = eigen.psi1_0, 0.0 + 0.0j, "steady"
        elif k == eigen.k2 and abs(rate_c - 1j * eigen.omega0) <= 1e-8 * max(
            1.0, eigen.omega0
        ):
            psi_row, psi_rate, pinned = eigen.psi2_0, 1j * eigen.omega0, "oscillatory"
        else:
            raise ResonantSolve(
                f"slice q={q} mode={k}: singular operator at rate {rate_c:.6g} "
                "matches no critical eigenvalue"
            )
        psi_profile = exp_profile(psi_row, -psi_rate, m)
        pair_particular = bilinear_form(spec, k, psi_profile, particular)
        pin_row = psi_row @ char_matrix_dlam(ctx, rate_c)
        stacked = np.vstack([delta, pin_row[None, :]])
        target = np.concatenate([rhs, [-pair_particular]])
        h0, *_ = np.linalg.lstsq(stacked, target, rcond=None)

    profile = (exp_profile(h0, rate_c, m) + particular).collect()
    interior = _interior_residual(profile, rate_c, sources, spec.max_lag)
    bres = float(
        np.linalg.norm(
            eta_apply(spec, k, profile) - rate_c * profile.evaluate(0.0) - boundary_rhs
        )
    )
    return HRecord(
        q=q,
        mode=k,
        profile=profile,
        forcing=forcing,
        rate=rate_c,
        interior_residual=interior,
        boundary_residual=bres,
        pinned=pinned,
    )


def _interior_residual(profile, rate_c, sources, max_lag) -> float:
    deriv = profile.derivative()
    thetas = np.linspace(-max_lag, 0.0, _RESIDUAL_SAMPLES)
    worst = 0.0
    for th in thetas:
        val = deriv.evaluate(th) - rate_c * profile.evaluate(th)
        for w, vec, lam in sources:
            val = val - w * np.asarray(vec, dtype=complex) * cmath.exp(lam * th)
        worst = max(worst, float(np.max(np.abs(val))))
    return worst


def compute_h(spec: ModelSpec, cp: CriticalPoint, eigen: EigenQuadruple):
    """All quadratic manifold corrections for the critical mode pair.

    Returns a tuple of HRecord covering the monomials '200', '011', '020',
    '110' on every spatial mode their forcing or center projection reaches,
    plus the conjugate monomials '002' and '101'.

    Raises
    ------
    ResonantSolve
        If a slice operator is singular at a rate that matches no critical
        eigenvalue (an extra resonance outside the supported setting).
    """
    spec_c = cp.spec_critical
    records = []
    for q in _MONOMIALS:
        rate_c, coef, qvec, prod = _monomial_data(q, eigen, spec_c)
        for k in product_modes(*prod):
            records.append(
                _solve_slice(spec_c, eigen, k, q, rate_c, coef, qvec, prod)
            )
    for rec in list(records):
        conj_q = _CONJUGATES.get(rec.q)
        if conj_q is None:
            continue
        records.append(
            HRecord(
                q=conj_q,
                mode=rec.mode,
                profile=rec.profile.conjugate(),
                forcing=np.conj(rec.forcing),
                rate=np.conj(rec.rate),
                interior_residual=rec.interior_residual,
                boundary_residual=rec.boundary_residual,
                pinned=rec.pinned,
            )
        )
    return tuple(records)


def _h_profile(h_records, q: str, mode: int, dim: int) -> Profile:
    """Component lookup; components not produced are identically zero."""
    for rec in h_records:
        if rec.q == q and rec.mode == mode:
            return rec.profile
    return zero_profile(dim)


def _h_modes(h_records, q: str):
    return sorted({rec.mode for rec in h_records if rec.q == q})


# ---------------------------------------------------------------------------
# parameter-linear coefficients


def linear_functionals(spec: ModelSpec, cp: CriticalPoint, eigen: EigenQuadruple):
    """Coefficient pairs of the parameter-linear normal-form terms.

    Returns ((a1_1, a1_2), (b2_1, b2_2)) such that a1(alpha) = a1_1 alpha_1
    + a1_2 alpha_2 acts on the steady variable and b2(alpha) likewise on the
    oscillatory one.  Each coefficient is the critical adjoint row applied
    to the parameter derivative of the mode's linear operator acting on the
    critical eigenfunction — which equals the parameter derivative of the
    corresponding critical eigenvalue.
    """
    spec_c = cp.spec_critical
    mu1 = (cp.k1 / spec_c.domain_length) ** 2
    mu2 = (cp.k2 / spec_c.domain_length) ** 2
    phi1_samples = eigen.phi1_profile().lag_samples(spec_c.lags)
    phi2_samples = eigen.phi2_profile().lag_samples(spec_c.lags)
    a1 = []
    b2 = []
    for i in range(2):
        dd = spec_c.diffusion_deriv[i]
        a1.append(
            complex(
                eigen.psi1_0
                @ (
                    spec_c.apply_linear_deriv(i, phi1_samples)
                    - mu1 * dd * eigen.phi1_0
                )
            )
        )
        b2.append(
            complex(
                eigen.psi2_0
                @ (
                    spec_c.apply_linear_deriv(i, phi2_samples)
                    - mu2 * dd * eigen.phi2_0
                )
            )
        )
    return tuple(a1), tuple(b2)


def linear_coefficients(spec: ModelSpec, cp: CriticalPoint, eigen: EigenQuadruple, alpha):
    """Values (a1, b2) of the parameter-linear terms at offset alpha."""
    a1c, b2c = linear_functionals(spec, cp, eigen)
    a1 = a1c[0] * alpha[0] + a1c[1] * alpha[1]
    b2 = b2c[0] * alpha[0] + b2c[1] * alpha[1]
    return a1, b2


# ---------------------------------------------------------------------------
# cubic coefficients: general route


def _general_route(spec, eigen, ipt, h_records) -> dict:
    m = spec.num_species
    k1, k2 = eigen.k1, eigen.k2
    w0 = eigen.omega0
    psi1 = eigen.psi1_0
    psi2 = eigen.psi2_0
    psi2b = np.conj(psi2)
    phi1 = eigen.phi1_profile()
    phi2 = eigen.phi2_profile()
    phi2b = phi2.conjugate()

    q11 = _qform(spec, phi1, phi1)
    q12 = _qform(spec, phi1, phi2)
    q12b = _qform(spec, phi1, phi2b)
    q22 = _qform(spec, phi2, phi2)
    q22b = _qform(spec, phi2, phi2b)
    q2b2b = _qform(spec, phi2b, phi2b)

    c111 = _cform(spec, phi1, phi1, phi1)
    c122b = _cform(spec, phi1, phi2, phi2b)
    c112 = _cform(spec, phi1, phi1, phi2)
    c222b = _cform(spec, phi2, phi2, phi2b)

    def h_term(psi, other, label, partner, target):
        total = 0.0 + 0.0j
        for k in _h_modes(h_records, label):
            prof = _h_profile(h_records, label, k, m)
            total += triple_bracket(k, partner, target) * (
                psi @ _qform(spec, other, prof)
            )
        return total

    a11 = 0.5 * (psi1 @ q11) * ipt.t_11_1
    a23 = (psi1 @ q22b) * ipt.t_22_1
    b12 = (psi2 @ q12) * ipt.t_12_2

    a111 = (
        (psi1 @ c111) * ipt.q_111_1 / 6.0
        + h_term(psi1, phi1, "200", k1, k1)
        + (1.0 / (2j * w0))
        * (-(psi1 @ q12) * (psi2 @ q11) + (psi1 @ q12b) * (psi2b @ q11))
        * ipt.t_12_1
        * ipt.t_11_2
    )

    a123 = (
        (psi1 @ c122b) * ipt.q_122_1
        + (1.0 / (1j * w0))
        * (
            (-(psi1 @ q12) * (psi2 @ q22b) + (psi1 @ q12b) * (psi2b @ q22b))
            * ipt.t_12_1
            * ipt.t_22_2
            + 0.5
            * (-(psi1 @ q22) * (psi2 @ q12b) + (psi1 @ q2b2b) * (psi2b @ q12))
            * ipt.t_12_2
            * ipt.t_22_1
        )
        + h_term(psi1, phi1, "011", k1, k1)
        + h_term(psi1, phi2, "101", k2, k1)
        + h_term(psi1, phi2b, "110", k2, k1)
    )

    b112 = (
        0.5 * (psi2 @ c112) * ipt.q_112_2
        + (1.0 / (2j * w0))
        * (
            (
                2.0 * (psi2 @ q11) * (psi1 @ q12) * ipt.t_12_1 * ipt.t_11_2
                + (psi2 @ q12b) * (psi2b @ q12) * ipt.t_12_2 ** 2
            )
            + (-(psi2 @ q22) * (psi2 @ q11) + (psi2 @ q22b) * (psi2b @ q11))
            * ipt.t_11_2
            * ipt.t_22_2
        )
        + h_term(psi2, phi1, "110", k1, k2)
        + h_term(psi2, phi2, "200", k2, k2)
    )

    b223 = (
        0.5 * (psi2 @ c222b) * ipt.q_222_2
        + (1.0 / (4j * w0))
        * (
            (psi2 @ q12b) * (psi1 @ q22) * ipt.t_12_2 * ipt.t_22_1
            + (2.0 / 3.0) * (psi2 @ q2b2b) * (psi2b @ q22) * ipt.t_22_2 ** 2
            + (-2.0 * (psi2 @ q22) * (psi2 @ q22b) + 4.0 * (psi2 @ q22b) * (psi2b @ q22b))
            * ipt.t_22_2 ** 2
        )
        + h_term(psi2, phi2, "011", k2, k2)
        + h_term(psi2, phi2b, "020", k2, k2)
    )

    return {
        "a11": complex(a11),
        "a23": complex(a23),
        "b12": complex(b12),
        "a111": complex(a111),
        "a123": complex(a123),
        "b112": complex(b112),
        "b223": complex(b223),
    }


# ---------------------------------------------------------------------------
# cubic coefficients: case route (compact real-model reductions)


def _case_route(spec, eigen, h_records) -> dict:
    m = spec.num_species
    k1, k2 = eigen.k1, eigen.k2
    w0 = eigen.omega0
    kind = interaction_kind(k1, k2)
    psi1 = eigen.psi1_0
    psi2 = eigen.psi2_0
    psi2b = np.conj(psi2)
    phi1 = eigen.phi1_profile()
    phi2 = eigen.phi2_profile()
    phi2b = phi2.conjugate()
    inv_r2 = 1.0 / np.sqrt(2.0)

    q11 = _qform(spec, phi1, phi1)
    q12 = _qform(spec, phi1, phi2)
    q12b = _qform(spec, phi1, phi2b)
    q22 = _qform(spec, phi2, phi2)
    q22b = _qform(spec, phi2, phi2b)
    q2b2b = _qform(spec, phi2b, phi2b)

    c111 = _cform(spec, phi1, phi1, phi1)
    c122b = _cform(spec, phi1, phi2, phi2b)
    c112 = _cform(spec, phi1, phi1, phi2)
    c222b = _cform(spec, phi2, phi2, phi2b)

    def hp(label, mode):
        return _h_profile(h_records, label, mode, m)

    def qh(psi, other, label, mode):
        return psi @ _qform(spec, other, hp(label, mode))

    zero = 0.0 + 0.0j

    if kind == "both-uniform":
        a11 = 0.5 * (psi1 @ q11)
        a23 = psi1 @ q22b
        b12 = psi2 @ q12
        a111 = (
            (psi1 @ c111) / 6.0
            + (1.0 / w0) * np.real(1j * (psi1 @ q12) * (psi2 @ q11))
            + qh(psi1, phi1, "200", 0)
        )
        a123 = (
            psi1 @ c122b
            + (2.0 / w0) * np.real(1j * (psi1 @ q12) * (psi2 @ q22b))
            + (1.0 / w0) * np.real(1j * (psi1 @ q22) * (psi2 @ q12b))
            + qh(psi1, phi1, "011", 0)
            + qh(psi1, phi2, "101", 0)
            + qh(psi1, phi2b, "110", 0)
        )
        b112 = (
            0.5 * (psi2 @ c112)
            + (1.0 / (2j * w0))
            * (
                (2.0 * (psi2 @ q11) * (psi1 @ q12) + (psi2 @ q12b) * (psi2b @ q12))
                + (-(psi2 @ q22) * (psi2 @ q11) + (psi2 @ q22b) * (psi2b @ q11))
            )
            + qh(psi2, phi1, "110", 0)
            + qh(psi2, phi2, "200", 0)
        )
        b223 = (
            0.5 * (psi2 @ c222b)
            + (1.0 / (4j * w0))
            * (
                (psi2 @ q12b) * (psi1 @ q22)
                + (2.0 / 3.0) * (psi2 @ q2b2b) * (psi2b @ q22)
                + (-2.0 * (psi2 @ q22) * (psi2 @ q22b) + 4.0 * (psi2 @ q22b) * (psi2b @ q22b))
            )
            + qh(psi2, phi2, "011", 0)
            + qh(psi2, phi2b, "020", 0)
        )
    elif kind == "equal-nonzero":
        a11 = a23 = b12 = zero
        a111 = 0.25 * (psi1 @ c111) + (
            qh(psi1, phi1, "200", 0) + inv_r2 * qh(psi1, phi1, "200", 2 * k1)
        )
        a123 = 1.5 * (psi1 @ c122b) + (
            qh(psi1, phi1, "011", 0)
            + inv_r2 * qh(psi1, phi1, "011", 2 * k1)
            + qh(psi1, phi2, "101", 0)
            + inv_r2 * qh(psi1, phi2, "101", 2 * k1)
            + qh(psi1, phi2b, "110", 0)
            + inv_r2 * qh(psi1, phi2b, "110", 2 * k1)
        )
        b112 = 0.75 * (psi2 @ c112) + (
            qh(psi2, phi1, "110", 0)
            + inv_r2 * qh(psi2, phi1, "110", 2 * k1)
            + qh(psi2, phi2, "200", 0)
            + inv_r2 * qh(psi2, phi2, "200", 2 * k1)
        )
        b223 = 0.75 * (psi2 @ c222b) + (
            qh(psi2, phi2, "011", 0)
            + inv_r2 * qh(psi2, phi2, "011", 2 * k1)
            + qh(psi2, phi2b, "020", 0)
            + inv_r2 * qh(psi2, phi2b, "020", 2 * k1)
        )
    elif kind == "steady-patterned":
        a11 = a23 = b12 = zero
        a111 = (
            0.25 * (psi1 @ c111)
            + (1.0 / w0) * np.real(1j * (psi1 @ q12) * (psi2 @ q11))
            + qh(psi1, phi1, "200", 0)
            + inv_r2 * qh(psi1, phi1, "200", 2 * k1)
        )
        a123 = (
            psi1 @ c122b
            + (2.0 / w0) * np.real(1j * (psi1 @ q12) * (psi2 @ q22b))
            + qh(psi1, phi1, "011", 0)
            + inv_r2 * qh(psi1, phi1, "011", 2 * k1)
            + qh(psi1, phi2, "101", k1)
            + qh(psi1, phi2b, "110", k1)
        )
        b112 = (
            0.5 * (psi2 @ c112)
            + (1.0 / (2j * w0))
            * (
                2.0 * (psi2 @ q11) * (psi1 @ q12)
                + (-(psi2 @ q22) * (psi2 @ q11) + (psi2 @ q22b) * (psi2b @ q11))
            )
            + qh(psi2, phi1, "110", k1)
            + qh(psi2, phi2, "200", 0)
        )
        b223 = (
            0.5 * (psi2 @ c222b)
            + (1.0 / (4j * w0))
            * (
                (2.0 / 3.0) * (psi2 @ q2b2b) * (psi2b @ q22)
                + (-2.0 * (psi2 @ q22) * (psi2 @ q22b) + 4.0 * (psi2 @ q22b) * (psi2b @ q22b))
            )
            + qh(psi2, phi2, "011", 0)
            + qh(psi2, phi2b, "020", 0)
        )
    elif kind == "wave-patterned":
        a11 = 0.5 * (psi1 @ q11)
        a23 = psi1 @ q22b
        b12 = psi2 @ q12
        a111 = (psi1 @ c111) / 6.0 + qh(psi1, phi1, "200", 0)
        a123 = (
            psi1 @ c122b
            + (1.0 / w0) * np.real(1j * (psi1 @ q22) * (psi2 @ q12b))
            + qh(psi1, phi1, "011", 0)
            + qh(psi1, phi2, "101", k2)
            + qh(psi1, phi2b, "110", k2)
        )
        b112 = (
            0.5 * (psi2 @ c112)
            + (1.0 / (2j * w0)) * (psi2 @ q12b) * (psi2b @ q12)
            + qh(psi2, phi1, "110", k2)
            + qh(psi2, phi2, "200", 0)
            + inv_r2 * qh(psi2, phi2, "200", 2 * k2)
        )
        b223 = (
            0.75 * (psi2 @ c222b)
            + (1.0 / (4j * w0)) * (psi2 @ q12b) * (psi1 @ q22)
            + qh(psi2, phi2, "011", 0)
            + inv_r2 * qh(psi2, phi2, "011", 2 * k2)
            + qh(psi2, phi2b, "020", 0)
            + inv_r2 * qh(psi2, phi2b, "020", 2 * k2)
        )
    else:  # distinct-nonzero
        res12 = 1.0 if k1 == 2 * k2 else 0.0
        res21 = 1.0 if k2 == 2 * k1 else 0.0
        a11 = zero
        a23 = inv_r2 * res12 * (psi1 @ q22b)
        b12 = inv_r2 * res12 * (psi2 @ q12)
        a111 = (
            0.25 * (psi1 @ c111)
            + (0.5 / w0) * res21 * np.real(1j * (psi1 @ q12) * (psi2 @ q11))
            + qh(psi1, phi1, "200", 0)
            + inv_r2 * qh(psi1, phi1, "200", 2 * k1)
        )
        a123 = (
            psi1 @ c122b
            + (0.5 / w0) * res12 * np.real(1j * (psi1 @ q22) * (psi2 @ q12b))
            + qh(psi1, phi1, "011", 0)
            + inv_r2 * qh(psi1, phi1, "011", 2 * k1)
            + inv_r2 * qh(psi1, phi2, "101", abs(k1 - k2))
            + inv_r2 * qh(psi1, phi2, "101", k1 + k2)
            + qh(psi1, phi2, "101", 0)
            + inv_r2 * qh(psi1, phi2b, "110", abs(k1 - k2))
            + inv_r2 * qh(psi1, phi2b, "110", k1 + k2)
            + qh(psi1, phi2b, "110", 0)
        )
        b112 = (
            0.5 * (psi2 @ c112)
            + (1.0 / (4j * w0))
            * (
                2.0 * res21 * (psi2 @ q11) * (psi1 @ q12)
                + res12 * (psi2 @ q12b) * (psi2b @ q12)
            )
            + inv_r2 * qh(psi2, phi1, "110", abs(k1 - k2))
            + inv_r2 * qh(psi2, phi1, "110", k1 + k2)
            + qh(psi2, phi1, "110", 0)
            + qh(psi2, phi2, "200", 0)
            + inv_r2 * qh(psi2, phi2, "200", 2 * k2)
        )
        b223 = (
            0.75 * (psi2 @ c222b)
            + (1.0 / (8j * w0)) * res12 * (psi2 @ q12b) * (psi1 @ q22)
            + qh(psi2, phi2, "011", 0)
            + inv_r2 * qh(psi2, phi2, "011", 2 * k2)
            + qh(psi2, phi2b, "020", 0)
            + inv_r2 * qh(psi2, phi2b, "020", 2 * k2)
        )

    return {
        "a11": complex(a11),
        "a23": complex(a23),
        "b12": complex(b12),
        "a111": complex(a111),
        "a123": complex(a123),
        "b112": complex(b112),
        "b223": complex(b223),
    }


def cubic_coefficients(
    spec: ModelSpec,
    cp: CriticalPoint,
    eigen: EigenQuadruple,
    ipt: InnerProductTable,
    h,
) -> NormalForm:
    """Assemble the full coefficient set by both routes and cross-check.

    The general route (mode-interaction brackets) provides the primary
    values; the case-specialized route is evaluated alongside and the worst
    relative disagreement is recorded in ``route_discrepancy``.
    """
    spec_c = cp.spec_critical
    general = _general_route(spec_c, eigen, ipt, h)
    case = _case_route(spec_c, eigen, h)

    worst = 0.0
    for key, gval in general.items():
        cval = case[key]
        scale = max(abs(gval), abs(cval))
        if scale > 1e-14:
            worst = max(worst, abs(gval - cval) / scale)

    a1c, b2c = linear_functionals(spec_c, cp, eigen)
    return NormalForm(
        k1=cp.k1,
        k2=cp.k2,
        omega0=eigen.omega0,
        case_tag=interaction_kind(cp.k1, cp.k2),
        a1_coeffs=a1c,
        b2_coeffs=b2c,
        a11=general["a11"],
        a23=general["a23"],
        b12=general["b12"],
        a111=general["a111"],
        a123=general["a123"],
        b112=general["b112"],
        b223=general["b223"],
        h_records=tuple(h),
        general_route=general,
        case_route=case,
        route_discrepancy=worst,
    )


def compute_normal_form(spec: ModelSpec, cp: CriticalPoint) -> NormalForm:
    """Full pipeline from a located critical point to the coefficient set."""
    eigen = normalized_quadruple(spec, cp)
    ipt = inner_product_table(cp.k1, cp.k2, spec.domain_length)
    h = compute_h(spec, cp, eigen)
    return cubic_coefficients(spec, cp, eigen, ipt, h)
