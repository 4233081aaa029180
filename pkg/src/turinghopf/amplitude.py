"""Planar amplitude reduction of the third-order normal form.

The three-dimensional reduced flow (one real steady amplitude, one complex
oscillatory amplitude) collapses in cylindrical coordinates to a planar
vector field.  This module performs that collapse, classifies the resulting
unfolding, computes the critical bifurcation half-lines in raw parameter
coordinates, and enumerates the predicted pattern inventory (counts and
Morse indices) region by region.

Two planar families arise:

* quadratic ("transcritical") kind, canonical form
      dr/dt = r (eps1 + a z + c r^2 + d z^2)
      dz/dt = eps2 z + b r^2 - z^2 + e r^2 z + f z^3,   b = +-1
* cubic ("pitchfork") kind, canonical form (after amplitude scaling and a
  possible time reversal)
      dr/dt = r (eps1 + r^2 + b0 z^2)
      dz/dt = z (eps2 + c0 r^2 + d0 z^2),               d0 = +-1

Here ``r`` is the oscillation amplitude and ``z`` the steady-mode amplitude;
``eps = eps_map @ alpha`` is the linear unfolding map.  When the cubic
coefficient of r^3 is negative the reduction reverses planar time, recorded
in ``time_reversed``: every stability statement about the original dynamics
must flip the sign of the canonical eigenvalues first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCoefficient, OnBoundary, SingularEpsMap
from .normalform import NormalForm

__all__ = [
    "AmplitudeSystem",
    "Equilibrium",
    "PatternPrediction",
    "RegionReport",
    "CriticalLine",
    "classify_degeneracy",
    "reduce_transcritical",
    "reduce_pitchfork",
    "planar_vector_field",
    "planar_jacobian",
    "equilibria",
    "critical_lines",
    "region_label",
    "region_inventory",
    "region_samples",
]

_ZERO_GUARD = 1e-12
_BOUNDARY_GUARD = 1e-10
_DEFAULT_LOCALITY = 0.05

# The twelve reachable sign patterns of the cubic unfolding, keyed by
# (d0, sign b0, sign c0, sign(d0 - b0*c0)).  Patterns missing from this
# table are algebraically unreachable (the fourth sign is forced by the
# first three in those cases).
_UNFOLDING_TABLE = {
    (1, 1, 1, 1): "Ia",
    (1, 1, 1, -1): "Ib",
    (1, 1, -1, 1): "II",
    (1, -1, 1, 1): "III",
    (1, -1, -1, 1): "IVa",
    (1, -1, -1, -1): "IVb",
    (-1, 1, 1, -1): "V",
    (-1, 1, -1, 1): "VIa",
    (-1, 1, -1, -1): "VIb",
    (-1, -1, 1, 1): "VIIa",
    (-1, -1, 1, -1): "VIIb",
    (-1, -1, -1, -1): "VIII",
}


@dataclass(frozen=True)
class AmplitudeSystem:
    """Planar amplitude system with its unfolding bookkeeping.

    ``eps_map`` is the 2x2 real matrix sending raw parameter offsets
    ``alpha = (alpha1, alpha2)`` to the canonical unfolding parameters
    ``(eps1, eps2)``; its rows are the linearized growth-rate coefficients
    of the oscillatory and steady critical modes (times the time-reversal
    sign for the cubic kind).  ``coefficients`` holds (a, b, c, d, e, f)
    for the quadratic kind and (b0, c0, d0) for the cubic kind.
    """

    kind: str
    eps_map: np.ndarray
    coefficients: dict
    time_reversed: bool
    unfolding_case: str

    def eps_of(self, alpha) -> tuple:
        e = self.eps_map @ np.asarray(alpha, dtype=float)
        return (float(e[0]), float(e[1]))

    def alpha_of(self, eps) -> tuple:
        a = np.linalg.solve(self.eps_map, np.asarray(eps, dtype=float))
        return (float(a[0]), float(a[1]))


@dataclass(frozen=True)
class Equilibrium:
    """One planar equilibrium with its analytic Jacobian data.

    ``eigenvalues`` are eigenvalues of the canonical-time planar Jacobian;
    callers must apply the system's time reversal before reading stability.
    """

    name: str
    point: tuple
    jacobian: np.ndarray
    eigenvalues: tuple
    exists: bool = True


@dataclass(frozen=True)
class PatternPrediction:
    """One pattern class of the full system predicted in a region."""

    kind: str
    count: int
    morse_index: int
    members: tuple


@dataclass(frozen=True)
class RegionReport:
    """Pattern inventory at one unfolding-plane sample."""

    region: str
    alpha: tuple
    eps: tuple
    equilibria: tuple
    patterns: tuple
    time_reversed: bool
    notes: str = ""


@dataclass(frozen=True)
class CriticalLine:
    """A bifurcation half-line through the critical point.

    ``base`` is the critical parameter pair; points on the line are
    ``base + t * direction`` for t > 0.  ``slope`` is d(alpha2)/d(alpha1)
    when the line is not vertical, else None.  ``eps_condition`` states the
    defining equation/side in canonical unfolding coordinates.
    """

    name: str
    eps_condition: str
    base: tuple
    direction: tuple
    slope: float | None
    halfline: str


def _real(x) -> float:
    return float(np.real(x))


def classify_degeneracy(nf: NormalForm, tol: float = 1e-8) -> str:
    """Decide which planar reduction applies to a computed normal form.

    Quadratic kind: a11, a23, Re b12 all nonzero and a11 != Re b12.
    Cubic kind: a11 = a23 = b12 = 0 together with the cubic nondegeneracy
    a111, a123, Re b112, Re b223 nonzero and a111*Re b223 != a123*Re b112.
    Anything else is unsupported.
    """
    a11 = _real(nf.a11)
    a23 = _real(nf.a23)
    reb12 = _real(nf.b12)
    if (
        abs(a11) > tol
        and abs(a23) > tol
        and abs(reb12) > tol
        and abs(a11 - reb12) > tol
    ):
        return "transcritical"
    if max(abs(a11), abs(a23), abs(nf.b12)) < tol:
        a111 = _real(nf.a111)
        a123 = _real(nf.a123)
        reb112 = _real(nf.b112)
        reb223 = _real(nf.b223)
        if (
            abs(a111) > tol
            and abs(a123) > tol
            and abs(reb112) > tol
            and abs(reb223) > tol
            and abs(a111 * reb223 - a123 * reb112) > tol
        ):
            return "pitchfork"
    return "unsupported"


def _eps_rows(nf: NormalForm, sign_factor: float) -> np.ndarray:
    row1 = [sign_factor * _real(c) for c in nf.b2_coeffs]
    row2 = [sign_factor * _real(c) for c in nf.a1_coeffs]
    return np.array([row1, row2], dtype=float)


def reduce_transcritical(nf: NormalForm) -> AmplitudeSystem:
    """Collapse a quadratic-kind normal form to its planar system.

    a = -Re(b12)/a11, b = -sign(a11 a23), c = Re(b223)/|a11 a23|,
    d = Re(b112)/a11^2, e = a123/|a11 a23|, f = a111/a11^2;
    eps1 = Re b2(alpha), eps2 = a1(alpha).  The case label follows the
    signs of (b, a): I (+1, a>0), II (+1, a<0), III (-1, a>0), IV (-1, a<0).
    """
    a11 = _real(nf.a11)
    a23 = _real(nf.a23)
    if abs(a11 * a23) < _ZERO_GUARD or abs(a11) < _ZERO_GUARD:
        raise DegenerateCoefficient(
            f"quadratic reduction needs a11*a23 bounded away from zero; "
            f"got a11={a11:.3e}, a23={a23:.3e}"
        )
    a = -_real(nf.b12) / a11
    b = -math.copysign(1.0, a11 * a23)
    c = _real(nf.b223) / abs(a11 * a23)
    d = _real(nf.b112) / a11**2
    e = _real(nf.a123) / abs(a11 * a23)
    f = _real(nf.a111) / a11**2
    if abs(a) < _ZERO_GUARD:
        raise DegenerateCoefficient("quadratic reduction needs a != 0")
    case = {(1.0, True): "I", (1.0, False): "II", (-1.0, True): "III", (-1.0, False): "IV"}[
        (b, a > 0)
    ]
    return AmplitudeSystem(
        kind="transcritical",
        eps_map=_eps_rows(nf, 1.0),
        coefficients={"a": a, "b": b, "c": c, "d": d, "e": e, "f": f},
        time_reversed=False,
        unfolding_case=case,
    )


def reduce_pitchfork(nf: NormalForm) -> AmplitudeSystem:
    """Collapse a cubic-kind normal form to its planar system.

    With s = sign(Re b223):  b0 = s*Re(b112)/|a111|, c0 = s*a123/|Re b223|,
    d0 = sign(a111 * Re b223), eps_j = s * (linear growth functionals).
    s = -1 reverses planar time (recorded in ``time_reversed``).
    """
    a111 = _real(nf.a111)
    reb223 = _real(nf.b223)
    reb112 = _real(nf.b112)
    a123 = _real(nf.a123)
    if abs(a111) < _ZERO_GUARD or abs(reb223) < _ZERO_GUARD:
        raise DegenerateCoefficient(
            f"cubic reduction needs a111 and Re b223 nonzero; "
            f"got a111={a111:.3e}, Re b223={reb223:.3e}"
        )
    s = math.copysign(1.0, reb223)
    b0 = s * reb112 / abs(a111)
    c0 = s * a123 / abs(reb223)
    d0 = math.copysign(1.0, a111 * reb223)
    disc = d0 - b0 * c0
    if abs(b0) < _ZERO_GUARD or abs(c0) < _ZERO_GUARD or abs(disc) < _ZERO_GUARD:
        raise DegenerateCoefficient(
            f"unfolding dispatch needs b0, c0, d0 - b0*c0 nonzero; "
            f"got b0={b0:.3e}, c0={c0:.3e}, d0-b0*c0={disc:.3e}"
        )
    key = (
        int(d0),
        1 if b0 > 0 else -1,
        1 if c0 > 0 else -1,
        1 if disc > 0 else -1,
    )
    case = _UNFOLDING_TABLE.get(key)
    if case is None:  # pragma: no cover - unreachable sign patterns
        raise DegenerateCoefficient(f"sign pattern {key} is not a valid unfolding")
    return AmplitudeSystem(
        kind="pitchfork",
        eps_map=_eps_rows(nf, s),
        coefficients={"b0": b0, "c0": c0, "d0": d0},
        time_reversed=(s == -1.0),
        unfolding_case=case,
    )


def planar_vector_field(sys: AmplitudeSystem, eps):
    """Return f(r, z) -> (dr, dz), the canonical-time planar field."""
    e1, e2 = float(eps[0]), float(eps[1])
    co = sys.coefficients
    if sys.kind == "pitchfork":
        b0, c0, d0 = co["b0"], co["c0"], co["d0"]

        def field(r, z):
            return (
                r * (e1 + r * r + b0 * z * z),
                z * (e2 + c0 * r * r + d0 * z * z),
            )

    else:
        a, b, c, d, e, f = (co[k] for k in "abcdef")

        def field(r, z):
            return (
                r * (e1 + a * z + c * r * r + d * z * z),
                e2 * z + b * r * r - z * z + e * r * r * z + f * z**3,
            )

    return field


def planar_jacobian(sys: AmplitudeSystem, eps, point) -> np.ndarray:
    """Analytic Jacobian of the canonical planar field at ``point``."""
    e1, e2 = float(eps[0]), float(eps[1])
    r, z = float(point[0]), float(point[1])
    co = sys.coefficients
    if sys.kind == "pitchfork":
        b0, c0, d0 = co["b0"], co["c0"], co["d0"]
        return np.array(
            [
                [e1 + 3 * r * r + b0 * z * z, 2 * b0 * r * z],
                [2 * c0 * r * z, e2 + c0 * r * r + 3 * d0 * z * z],
            ]
        )
    a, b, c, d, e, f = (co[k] for k in "abcdef")
    return np.array(
        [
            [e1 + a * z + 3 * c * r * r + d * z * z, r * (a + 2 * d * z)],
            [2 * b * r + 2 * e * r * z, e2 - 2 * z + e * r * r + 3 * f * z * z],
        ]
    )


def _make_equilibrium(sys, eps, name, r, z) -> Equilibrium:
    jac = planar_jacobian(sys, eps, (r, z))
    eig = np.linalg.eigvals(jac)
    return Equilibrium(
        name=name, point=(float(r), float(z)), jacobian=jac, eigenvalues=tuple(eig)
    )


def equilibria(sys: AmplitudeSystem, eps) -> tuple:
    """All existing equilibria of the planar system at ``eps``.

    Cubic kind: E1 = (0,0) always; E2 = (sqrt(-eps1), 0) for eps1 < 0;
    E3+- = (0, +-sqrt(-eps2/d0)) for eps2/d0 < 0; E4+- for positive radicands
    of r^2 = (b0 eps2 - d0 eps1)/(d0 - b0 c0), z^2 = (c0 eps1 - eps2)/
    (d0 - b0 c0).  Quadratic kind: E1 plus the closed-form axis and mixed
    roots of the same polynomial pattern.
    """
    e1, e2 = float(eps[0]), float(eps[1])
    co = sys.coefficients
    out = [_make_equilibrium(sys, eps, "E1", 0.0, 0.0)]
    if sys.kind == "pitchfork":
        b0, c0, d0 = co["b0"], co["c0"], co["d0"]
        if e1 < 0:
            out.append(_make_equilibrium(sys, eps, "E2", math.sqrt(-e1), 0.0))
        if e2 / d0 < 0:
            z = math.sqrt(-e2 / d0)
            out.append(_make_equilibrium(sys, eps, "E3+", 0.0, z))
            out.append(_make_equilibrium(sys, eps, "E3-", 0.0, -z))
        denom = d0 - b0 * c0
        r2 = (b0 * e2 - d0 * e1) / denom
        z2 = (c0 * e1 - e2) / denom
        if r2 > 0 and z2 > 0:
            r, z = math.sqrt(r2), math.sqrt(z2)
            out.append(_make_equilibrium(sys, eps, "E4+", r, z))
            out.append(_make_equilibrium(sys, eps, "E4-", r, -z))
        return tuple(out)

    a, b, c, d, e, f = (co[k] for k in "abcdef")
    # axis equilibria (r = 0): nonzero roots of f z^2 - z + eps2 = 0
    axis = []
    if abs(f) > _ZERO_GUARD:
        disc = 1.0 - 4.0 * f * e2
        if disc > 0:
            rt = math.sqrt(disc)
            axis = [(1.0 - rt) / (2 * f), (1.0 + rt) / (2 * f)]
        elif disc == 0:
            axis = [1.0 / (2 * f)]
    elif abs(e2) > _ZERO_GUARD:
        axis = [e2]
    for i, z in enumerate(sorted(axis)):
        if abs(z) > _ZERO_GUARD:
            out.append(_make_equilibrium(sys, eps, f"E3{'+' if i == 0 else '-'}", 0.0, z))
    # mixed equilibria (r > 0): eliminate r^2 = -(e1 + a z + d z^2)/c
    if abs(c) > _ZERO_GUARD:
        poly = [
            c * f - e * d,
            -c - b * d - e * a,
            c * e2 - b * a - e * e1,
            -b * e1,
        ]
        roots = np.roots(poly) if any(abs(p) > _ZERO_GUARD for p in poly[:-1]) else []
        count = 0
        for z in roots:
            if abs(z.imag) > 1e-10:
                continue
            z = float(z.real)
            r2 = -(e1 + a * z + d * z * z) / c
            if r2 > _ZERO_GUARD:
                count += 1
                out.append(
                    _make_equilibrium(sys, eps, f"E4{'+' if count == 1 else '-'}",
                                      math.sqrt(r2), z)
                )
    return tuple(out)


def _case3_geometry(sys: AmplitudeSystem):
    co = sys.coefficients
    return co["b0"], co["c0"], co["d0"]


def region_label(sys: AmplitudeSystem, eps) -> str:
    """Name the open region containing ``eps`` for the case-III geometry.

    Raises OnBoundary when any defining line function is within 1e-10.
    Returns "unlabeled" for systems outside the automated case.
    """
    if sys.kind != "pitchfork" or sys.unfolding_case != "III":
        return "unlabeled"
    b0, c0, d0 = _case3_geometry(sys)
    e1, e2 = float(eps[0]), float(eps[1])
    guards = (e1, e2, e2 - c0 * e1, d0 * e1 - b0 * e2)
    if min(abs(g) for g in guards) < _BOUNDARY_GUARD:
        raise OnBoundary(
            f"sample eps={e1:.3e},{e2:.3e} lies within {_BOUNDARY_GUARD} of a "
            "critical line"
        )
    if e1 > 0 and e2 > 0:
        return "D1"
    if e1 < 0 and e2 > 0:
        return "D2"
    if e1 < 0:
        return "D3" if e2 > c0 * e1 else "D4"
    # e1 > 0, e2 < 0; d0 = 1 in case III so the E4 line is eps2 = eps1/b0
    return "D5" if e2 < e1 / b0 else "D6"


def _halfline(sys, cp, name, normal_eps, side_vector, condition, half_desc) -> CriticalLine:
    """Build the raw-coordinate half-line {eps-normal . eps = 0, side}.

    ``normal_eps`` is the line normal in unfolding coordinates; the raw
    direction is the kernel of (normal_eps @ eps_map), oriented so that the
    unfolding-space image points toward ``side_vector``.
    """
    m = np.asarray(normal_eps, dtype=float) @ sys.eps_map
    d = np.array([-m[1], m[0]])
    d = d / np.linalg.norm(d)
    image = sys.eps_map @ d
    if float(np.dot(image, np.asarray(side_vector, dtype=float))) < 0:
        d = -d
    slope = None if abs(d[0]) < 1e-14 else float(d[1] / d[0])
    return CriticalLine(
        name=name,
        eps_condition=condition,
        base=tuple(float(x) for x in cp.alpha_star),
        direction=(float(d[0]), float(d[1])),
        slope=slope,
        halfline=half_desc,
    )


def critical_lines(sys: AmplitudeSystem, cp) -> tuple:
    """Bifurcation lines through the critical point, in raw coordinates.

    For the automated case-III geometry this returns the six half-lines
    L1..L6 walked counterclockwise in the unfolding plane; otherwise the
    four generic full lines are returned (both directions, halfline="both").
    """
    if abs(float(np.linalg.det(sys.eps_map))) < _ZERO_GUARD:
        raise SingularEpsMap(
            f"unfolding map determinant {np.linalg.det(sys.eps_map):.3e} below 1e-12"
        )
    if sys.kind != "pitchfork":
        b0 = c0 = d0 = None
    else:
        b0, c0, d0 = _case3_geometry(sys)
    if sys.kind == "pitchfork" and sys.unfolding_case == "III":
        return (
            _halfline(sys, cp, "L1", (1, 0), (0, 1), "eps1 = 0, eps2 > 0", "eps2 > 0"),
            _halfline(sys, cp, "L2", (0, 1), (-1, 0), "eps2 = 0, eps1 < 0", "eps1 < 0"),
            _halfline(sys, cp, "L3", (-c0, 1), (-1, -c0), "eps2 = c0*eps1, eps1 < 0", "eps1 < 0"),
            _halfline(sys, cp, "L4", (1, 0), (0, -1), "eps1 = 0, eps2 < 0", "eps2 < 0"),
            _halfline(sys, cp, "L5", (d0, -b0), (1, 1.0 / b0), "d0*eps1 = b0*eps2, eps1 > 0", "eps1 > 0"),
            _halfline(sys, cp, "L6", (0, 1), (1, 0), "eps2 = 0, eps1 > 0", "eps1 > 0"),
        )
    lines = [
        _halfline(sys, cp, "eps1=0", (1, 0), (0, 1), "eps1 = 0", "both"),
        _halfline(sys, cp, "eps2=0", (0, 1), (1, 0), "eps2 = 0", "both"),
    ]
    if sys.kind == "pitchfork":
        lines.append(
            _halfline(sys, cp, "eps2=c0*eps1", (-c0, 1), (1, c0), "eps2 = c0*eps1", "both")
        )
        lines.append(
            _halfline(sys, cp, "d0*eps1=b0*eps2", (d0, -b0), (b0, d0), "d0*eps1 = b0*eps2", "both")
        )
    return tuple(lines)


def _true_rates(eigenvalues, time_reversed: bool):
    s = -1.0 if time_reversed else 1.0
    return [s * complex(ev) for ev in eigenvalues]


def _steady_index(eq: Equilibrium, time_reversed: bool) -> int:
    """Morse index of a steady full-system object from an r = 0 equilibrium.

    At r = 0 the planar Jacobian is diagonal; the r-eigenvalue stands for a
    complex conjugate pair of the full linearization (two directions), the
    z-eigenvalue for one.
    """
    lam_r, lam_z = eq.jacobian[0, 0], eq.jacobian[1, 1]
    s = -1.0 if time_reversed else 1.0
    return 2 * int((s * lam_r).real > 0) + int((s * lam_z).real > 0)


def _orbit_index(eq: Equilibrium, time_reversed: bool) -> int:
    """Morse index of a periodic full-system object from an r > 0 equilibrium.

    The rotation phase is neutral; each unstable planar direction contributes
    one unstable direction of the orbit.
    """
    return sum(1 for lam in _true_rates(eq.eigenvalues, time_reversed) if lam.real > 0)


def _pattern_kinds(k1: int, k2: int) -> dict:
    steady_pair = "inhomogeneous steady pair" if k1 != 0 else "homogeneous steady pair"
    orbit = "homogeneous periodic orbit" if k2 == 0 else "inhomogeneous periodic orbit"
    mixed = "inhomogeneous periodic pair"
    return {"E1": "constant steady state", "E3": steady_pair, "E2": orbit, "E4": mixed}


def region_inventory(
    sys: AmplitudeSystem, cp, alpha_sample, locality: float = _DEFAULT_LOCALITY
) -> RegionReport:
    """Predicted pattern inventory at one raw-parameter offset sample.

    ``alpha_sample`` is the offset from the critical point.  The guard
    rejects samples outside the locality bound where the cubic truncation
    has no standing.  Groups the planar equilibria into full-system pattern
    classes with counts and Morse indices; stability is read through the
    time-reversal flag.
    """
    alpha = np.asarray(alpha_sample, dtype=float)
    if float(np.linalg.norm(alpha)) >= locality:
        raise ValueError(
            f"sample offset |alpha| = {np.linalg.norm(alpha):.3g} outside the "
            f"locality bound {locality}"
        )
    eps = sys.eps_of(alpha)
    region = region_label(sys, eps)
    eqs = equilibria(sys, eps)
    kinds = _pattern_kinds(cp.k1, cp.k2)
    groups: dict = {}
    for eq in eqs:
        base = eq.name[:2]
        groups.setdefault(base, []).append(eq)
    patterns = []
    for base in ("E1", "E3", "E2", "E4"):
        members = groups.get(base, [])
        if not members:
            continue
        rep = members[0]
        if base in ("E1", "E3"):
            index = _steady_index(rep, sys.time_reversed)
        else:
            index = _orbit_index(rep, sys.time_reversed)
        patterns.append(
            PatternPrediction(
                kind=kinds[base],
                count=len(members),
                morse_index=index,
                members=tuple(m.name for m in members),
            )
        )
    return RegionReport(
        region=region,
        alpha=(float(alpha[0]), float(alpha[1])),
        eps=eps,
        equilibria=eqs,
        patterns=tuple(patterns),
        time_reversed=sys.time_reversed,
    )


def _case3_wedges(sys: AmplitudeSystem) -> tuple:
    """Angular wedges (degrees, counterclockwise) of D1..D6 in the unfolding
    plane, bounded by the images of the six critical half-lines."""
    b0, c0, _ = _case3_geometry(sys)
    a3 = 180.0 + math.degrees(math.atan(c0))
    a5 = 360.0 - math.degrees(math.atan(1.0 / abs(b0)))
    return (
        ("D1", 0.0, 90.0),
        ("D2", 90.0, 180.0),
        ("D3", 180.0, a3),
        ("D4", a3, 270.0),
        ("D5", 270.0, a5),
        ("D6", a5, 360.0),
    )


def region_samples(
    sys: AmplitudeSystem, cp, distance: float = 0.01, samples_per_region: int = 1
) -> list:
    """Raw-parameter offset samples, one or more per region, at the given
    distance from the critical point measured in the unfolding plane.

    The distance is the Euclidean norm of (eps1, eps2), the plane in which
    the region geometry is defined; measuring there keeps every sample on
    the physically admissible side of the raw parameter space even when the
    unfolding map is strongly anisotropic.  Samples are placed on each
    region's angular bisector (several samples spread evenly across the
    wedge).  Returns a list of (region_name, alpha_offset) pairs.  Systems
    outside the automated case-III geometry get one sample per unfolding-
    plane quadrant, labeled by quadrant.
    """
    if samples_per_region < 1:
        raise ValueError("samples_per_region must be at least 1")
    if sys.kind == "pitchfork" and sys.unfolding_case == "III":
        wedges = _case3_wedges(sys)
    else:
        wedges = (
            ("Q1", 0.0, 90.0),
            ("Q2", 90.0, 180.0),
            ("Q3", 180.0, 270.0),
            ("Q4", 270.0, 360.0),
        )
    out = []
    for name, lo, hi in wedges:
        for i in range(samples_per_region):
            theta = math.radians(lo + (hi - lo) * (i + 1) / (samples_per_region + 1))
            eps = (distance * math.cos(theta), distance * math.sin(theta))
            out.append((name, sys.alpha_of(eps)))
    return out
