"""Per-mode characteristic matrices and root location in boxes.

For spatial mode k the linearization restricted to that mode is a delay
system whose characteristic matrix is

    M_k(lambda) = lambda*I + mu_k*D - sum_j A_j * exp(-lambda * r_j),

with mu_k = (k/l)^2.  Roots of det M_k are enumerated inside rectangles of
the complex plane with the argument principle (adaptive Gauss-Kronrod
quadrature of (det)'/det along the boundary), then polished by damped
Newton iteration and certified by the winding count.
"""

from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .basis import mode_wavenumber_sq
from .errors import BoundaryRoot, NonConvergence
from .model import ModelSpec

__all__ = [
    "ROOT_TOL",
    "CLEARANCE_TOL",
    "SIMPLICITY_TOL",
    "CharMatrixContext",
    "char_matrix_context",
    "char_matrix",
    "char_matrix_dlam",
    "char_matrix_d2lam",
    "det_and_derivative",
    "SpectralRoot",
    "winding_number",
    "find_roots_in_box",
    "rightmost_real_part",
    "dispersion_scan",
    "adjugate",
]

ROOT_TOL = 1e-10          # |det| at an accepted root
CLEARANCE_TOL = 1e-8      # min |det| allowed on a search-box boundary
SIMPLICITY_TOL = 1e-6     # |d det / d lambda| below this flags a multiple root


@dataclass
class CharMatrixContext:
    """Frozen ingredients of one mode's characteristic matrix."""

    spec: ModelSpec
    k: int
    alpha: tuple
    mu_k: float
    diffusion: np.ndarray         # diagonal, shape (m,)
    matrices: tuple               # A_j at this alpha
    lags: tuple

    @property
    def m(self) -> int:
        return self.spec.num_species


def char_matrix_context(spec: ModelSpec, k: int, alpha=(0.0, 0.0)) -> CharMatrixContext:
    alpha = tuple(float(a) for a in alpha)
    return CharMatrixContext(
        spec=spec,
        k=int(k),
        alpha=alpha,
        mu_k=mode_wavenumber_sq(k, spec.domain_length),
        diffusion=spec.diffusion_at(alpha),
        matrices=spec.reaction_matrices_at(alpha),
        lags=spec.lags,
    )


def char_matrix(ctx: CharMatrixContext, lam: complex) -> np.ndarray:
    """M_k(lambda) = lambda*I + mu_k*D - sum_j A_j exp(-lambda r_j)."""
    m = ctx.m
    M = lam * np.eye(m, dtype=complex) + np.diag(ctx.mu_k * ctx.diffusion).astype(complex)
    for A, r in zip(ctx.matrices, ctx.lags):
        M -= A * cmath.exp(-lam * r)
    return M


def char_matrix_dlam(ctx: CharMatrixContext, lam: complex) -> np.ndarray:
    """d/d lambda of the characteristic matrix: I + sum_j r_j A_j e^{-lam r_j}."""
    M = np.eye(ctx.m, dtype=complex)
    for A, r in zip(ctx.matrices, ctx.lags):
        if r != 0.0:
            M += r * A * cmath.exp(-lam * r)
    return M


def char_matrix_d2lam(ctx: CharMatrixContext, lam: complex) -> np.ndarray:
    """Second lambda-derivative: -sum_j r_j^2 A_j e^{-lam r_j}."""
    M = np.zeros((ctx.m, ctx.m), dtype=complex)
    for A, r in zip(ctx.matrices, ctx.lags):
        if r != 0.0:
            M -= (r * r) * A * cmath.exp(-lam * r)
    return M


def adjugate(M: np.ndarray) -> np.ndarray:
    """Adjugate via cofactor expansion (valid at singular matrices)."""
    m = M.shape[0]
    if m == 1:
        return np.array([[1.0 + 0.0j]])
    if m == 2:
        return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]])
    adj = np.empty_like(M)
    idx = np.arange(m)
    for i in range(m):
        rows = idx[idx != i]
        for j in range(m):
            cols = idx[idx != j]
            minor = M[np.ix_(rows, cols)]
            adj[j, i] = (-1) ** (i + j) * np.linalg.det(minor)
    return adj


def det_and_derivative(ctx: CharMatrixContext, lam: complex) -> tuple:
    """(det M_k(lambda), d det / d lambda).

    The derivative uses the adjugate trace formula, which stays valid at
    roots where the matrix itself is singular.
    """
    M = char_matrix(ctx, lam)
    dM = char_matrix_dlam(ctx, lam)
    if ctx.m == 1:
        return complex(M[0, 0]), complex(dM[0, 0])
    if ctx.m == 2:
        det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        ddet = (
            M[1, 1] * dM[0, 0]
            - M[1, 0] * dM[0, 1]
            - M[0, 1] * dM[1, 0]
            + M[0, 0] * dM[1, 1]
        )
        return complex(det), complex(ddet)
    det = complex(np.linalg.det(M))
    ddet = complex(np.trace(adjugate(M) @ dM))
    return det, ddet


def _det_batch(ctx: CharMatrixContext, lams: np.ndarray) -> np.ndarray:
    """Vectorized det M_k over an array of lambdas."""
    lams = np.asarray(lams, dtype=complex)
    m = ctx.m
    M = np.zeros(lams.shape + (m, m), dtype=complex)
    M += np.diag(ctx.mu_k * ctx.diffusion)
    M += lams[..., None, None] * np.eye(m)
    for A, r in zip(ctx.matrices, ctx.lags):
        M -= np.exp(-lams * r)[..., None, None] * A
    return np.linalg.det(M)


@dataclass(frozen=True)
class SpectralRoot:
    """One characteristic root with its quality certificates."""

    k: int
    lam: complex
    residual: float                 # |det| at the root
    multiplicity_evidence: complex  # d det / d lambda at the root


# ---------------------------------------------------------------------------
# boxes, boundaries, winding
# ---------------------------------------------------------------------------

def _box_corners(box):
    re0, re1, im0, im1 = box
    return [
        complex(re0, im0),
        complex(re1, im0),
        complex(re1, im1),
        complex(re0, im1),
    ]


def _boundary_min_abs(ctx, box, samples_per_edge: int = 128) -> float:
    corners = _box_corners(box)
    t = np.linspace(0.0, 1.0, samples_per_edge, endpoint=False)
    pts = []
    for z0, z1 in zip(corners, corners[1:] + corners[:1]):
        pts.append(z0 + t * (z1 - z0))
    vals = _det_batch(ctx, np.concatenate(pts))
    return float(np.min(np.abs(vals)))


def _edge_integral(ctx, z0: complex, z1: complex, quad_tol: float) -> complex:
    dz = z1 - z0

    def integrand(t, part):
        det, ddet = det_and_derivative(ctx, z0 + t * dz)
        val = ddet / det * dz
        return val.real if part == 0 else val.imag

    with warnings.catch_warnings():
        # accuracy warnings are expected near peaked integrands; the
        # integer-certification check below is the authoritative guard
        warnings.simplefilter("ignore", IntegrationWarning)
        re, _ = quad(
            integrand, 0.0, 1.0, args=(0,), epsabs=quad_tol, epsrel=quad_tol, limit=300
        )
        im, _ = quad(
            integrand, 0.0, 1.0, args=(1,), epsabs=quad_tol, epsrel=quad_tol, limit=300
        )
    return complex(re, im)


def winding_number(ctx: CharMatrixContext, re_range, im_range, quad_tol: float = 1e-10) -> int:
    """Number of roots (with multiplicity) inside the rectangle.

    Integrates (det)'/det counterclockwise with adaptive quadrature; the
    result must sit within 0.25 of an integer or the count is refused.
    """
    box = (re_range[0], re_range[1], im_range[0], im_range[1])
    return _winding(ctx, box, quad_tol)


def _winding(ctx, box, quad_tol: float = 1e-10) -> int:
    corners = _box_corners(box)
    total = 0.0 + 0.0j
    for z0, z1 in zip(corners, corners[1:] + corners[:1]):
        total += _edge_integral(ctx, z0, z1, quad_tol)
    w = total / (2j * np.pi)
    n = int(round(w.real))
    if abs(w - n) > 0.25:
        raise NonConvergence(
            f"winding quadrature did not certify an integer count: {w:.6f}"
        )
    return n


def _newton_polish(ctx, z0: complex, tol: float, max_iter: int = 100):
    """Damped Newton iteration on det; returns the root or None."""
    z = complex(z0)
    det, ddet = det_and_derivative(ctx, z)
    for _ in range(max_iter):
        if abs(det) <= tol:
            return z
        if ddet == 0 or not np.isfinite(abs(ddet)):
            return None
        step = -det / ddet
        # step damping: halve until the residual decreases
        for _ in range(20):
            z_new = z + step
            det_new, ddet_new = det_and_derivative(ctx, z_new)
            if np.isfinite(abs(det_new)) and abs(det_new) < abs(det):
                break
            step = 0.5 * step
        else:
            return None
        z, det, ddet = z_new, det_new, ddet_new
    return z if abs(det) <= tol else None


def _line_root_distance(ctx, line: np.ndarray) -> float:
    """Estimated distance from a sampled segment to the nearest root.

    Uses the Newton estimate |det| / |d det / dz| with the derivative
    approximated by differences of consecutive samples; cheap, batched and
    model-independent.
    """
    vals = _det_batch(ctx, line)
    step = np.abs(np.diff(line))
    slope = np.abs(np.diff(vals)) / np.maximum(step, 1e-300)
    pair_min = np.minimum(np.abs(vals[:-1]), np.abs(vals[1:]))
    dist = pair_min / np.maximum(slope, 1e-300)
    return float(np.min(dist))


def _split_candidates(ctx, box):
    """Candidate split lines across the longer side, best clearance first."""
    re0, re1, im0, im1 = box
    horizontal = (re1 - re0) >= (im1 - im0)
    span = (re1 - re0) if horizontal else (im1 - im0)
    t_samples = np.linspace(0.0, 1.0, 96)
    scored = []
    for frac in (0.5, 0.45, 0.55, 0.4, 0.6, 0.35, 0.65, 0.3, 0.7):
        c = (re0 + frac * span) if horizontal else (im0 + frac * span)
        if horizontal:
            line = c + 1j * (im0 + t_samples * (im1 - im0))
        else:
            line = (re0 + t_samples * (re1 - re0)) + 1j * c
        scored.append((c, _line_root_distance(ctx, line)))
    scored.sort(key=lambda cd: -cd[1])
    out = []
    for c, dist in scored:
        if dist <= 0.0:
            continue
        if horizontal:
            out.append(((re0, c, im0, im1), (c, re1, im0, im1), dist))
        else:
            out.append(((re0, re1, im0, c), (re0, re1, c, im1), dist))
    if not out:
        raise BoundaryRoot(
            "could not find a root-free split line inside the search box"
        )
    return out


def _enumerate_roots(ctx, box, w, tol, clearance, depth, max_depth):
    """Recursive certified enumeration; returns [(root, count)]."""
    if w == 0:
        return []
    re0, re1, im0, im1 = box
    diam = max(re1 - re0, im1 - im0)
    center = complex(0.5 * (re0 + re1), 0.5 * (im0 + im1))
    if w == 1:
        starts = [center] + [
            complex(re0 + fr * (re1 - re0), im0 + fi * (im1 - im0))
            for fr, fi in ((0.25, 0.25), (0.75, 0.25), (0.25, 0.75), (0.75, 0.75))
        ]
        for z0 in starts:
            root = _newton_polish(ctx, z0, tol)
            if root is not None and re0 <= root.real <= re1 and im0 <= root.imag <= im1:
                return [(root, 1)]
    if diam < max(1e3 * tol, 1e-9):
        # unresolvable cluster: report the polished center with its count
        root = _newton_polish(ctx, center, np.inf)
        return [(root if root is not None else center, w)]
    if depth >= max_depth:
        raise NonConvergence(
            f"root enumeration exceeded bisection depth {max_depth}"
        )
    last_err = None
    for left, right, _dist in _split_candidates(ctx, box):
        try:
            w_left = _winding(ctx, left)
            w_right = _winding(ctx, right)
            if w_left + w_right != w:
                raise NonConvergence(
                    "winding counts of sub-boxes do not add up "
                    f"({w_left} + {w_right} != {w})"
                )
            return _enumerate_roots(
                ctx, left, w_left, tol, clearance, depth + 1, max_depth
            ) + _enumerate_roots(
                ctx, right, w_right, tol, clearance, depth + 1, max_depth
            )
        except NonConvergence as err:
            last_err = err
            continue
    raise last_err if last_err is not None else NonConvergence(
        "no usable split line found"
    )


def _dedupe(pairs, merge_dist):
    merged = []
    for root, count in sorted(pairs, key=lambda rc: (rc[0].real, rc[0].imag)):
        if merged and abs(root - merged[-1][0]) <= merge_dist:
            merged[-1][1] += count
        else:
            merged.append([root, count])
    return [(r, c) for r, c in merged]


def find_roots_in_box(
    ctx: CharMatrixContext,
    re_range,
    im_range,
    tol: float = ROOT_TOL,
    clearance: float = CLEARANCE_TOL,
    max_depth: int = 12,
    max_dilations: int = 5,
) -> list:
    """All characteristic roots in a rectangle, certified by winding counts.

    The box is dilated by 1% (at most `max_dilations` times) if a root sits
    too close to its boundary; roots of multiplicity q are reported q times.
    Conjugate pairs inside the box are symmetrized exactly.
    """
    box = (float(re_range[0]), float(re_range[1]), float(im_range[0]), float(im_range[1]))
    if box[0] >= box[1] or box[2] >= box[3]:
        raise ValueError("empty search box")
    w = None
    for _ in range(max_dilations + 1):
        if _boundary_min_abs(ctx, box) > clearance:
            try:
                w = _winding(ctx, box)
                break
            except NonConvergence:
                pass  # an uncertified count also means the boundary is too hot
        cx, cy = 0.5 * (box[0] + box[1]), 0.5 * (box[2] + box[3])
        hw, hh = 0.505 * (box[1] - box[0]), 0.505 * (box[3] - box[2])
        box = (cx - hw, cx + hw, cy - hh, cy + hh)
    if w is None:
        raise BoundaryRoot(
            "a root stays within clearance of the box boundary after dilation"
        )
    pairs = _enumerate_roots(ctx, box, w, tol, clearance, 0, max_depth)
    pairs = _dedupe(pairs, 10.0 * tol)

    # snap near-real roots, then enforce conjugate pairing
    cleaned = []
    for root, count in pairs:
        if abs(root.imag) <= 10.0 * tol:
            root = complex(root.real, 0.0)
        cleaned.append([root, count])
    for i, (root, _) in enumerate(cleaned):
        if root.imag > 0:
            for jj, (other, _) in enumerate(cleaned):
                if other.imag < 0 and abs(np.conj(root) - other) <= 1e-6 * (1 + abs(root)):
                    cleaned[jj][0] = np.conj(root)

    roots = []
    for root, count in cleaned:
        det, ddet = det_and_derivative(ctx, root)
        rec = SpectralRoot(
            k=ctx.k,
            lam=complex(root),
            residual=abs(det),
            multiplicity_evidence=complex(ddet),
        )
        roots.extend([rec] * count)
    roots.sort(key=lambda r: (-r.lam.real, abs(r.lam.imag)))
    return roots


def _norm_sum(ctx) -> float:
    return sum(float(np.linalg.norm(A, 2)) for A in ctx.matrices)


def im_bound(ctx: CharMatrixContext, depth: float) -> float:
    """Bound on |Im lambda| over roots with Re lambda >= -depth.

    Row argument: if v is a root vector with largest component at row i,
    then |Im lambda| <= |lambda + mu_k d_i| <= sum_j sum_l |A_l[i,j]|
    e^{depth r_l}.  The diffusion term only shifts roots along the real
    axis, so the bound is independent of mu_k.
    """
    depth = max(float(depth), 0.0)
    total = np.zeros(ctx.m)
    for A, r in zip(ctx.matrices, ctx.lags):
        grow = float(np.exp(min(depth * r, 650.0)))
        total += np.sum(np.abs(A), axis=1) * grow
    return float(min(np.max(total) + 1.0, 1e6))


def re_upper_bound(ctx: CharMatrixContext) -> float:
    """Upper bound on Re lambda over all roots (same row argument)."""
    total = np.zeros(ctx.m)
    for A in ctx.matrices:
        total += np.sum(np.abs(A), axis=1)
    return float(np.max(total) + 1.0)


def _rightmost_root(ctx: CharMatrixContext, search_bound: float):
    """Rightmost root with Re >= -search_bound, or None.

    Delay systems have root chains whose count explodes with window depth,
    so the window is swept in vertical strips from the right; the first
    populated strip contains the rightmost root (all deeper strips hold
    roots with strictly smaller real part).
    """
    right = re_upper_bound(ctx)
    left_limit = -abs(search_bound)
    cursor = right
    width = 0.75
    best = None
    while cursor > left_limit:
        a = max(cursor - width, left_limit)
        h = im_bound(ctx, -a)
        roots = find_roots_in_box(ctx, (a, cursor), (-h, h))
        if roots:
            top = max(roots, key=lambda rt: (rt.lam.real, rt.lam.imag))
            best = top
            break
        cursor = a
    return best


def rightmost_real_part(ctx: CharMatrixContext, search_bound: float) -> float:
    """Largest real part among roots with Re >= -search_bound.

    Roots with positive real part are a priori confined to
    Re <= mu_k*max(D) + sum_j ||A_j||, so the scan always contains every
    unstable root.  Returns -inf if the window holds no roots.
    """
    top = _rightmost_root(ctx, search_bound)
    return float("-inf") if top is None else top.lam.real


def dispersion_scan(spec: ModelSpec, alpha, k_max: int, depth_margin: float = 2.0):
    """Rightmost root of each spatial mode k = 0..k_max.

    Returns a list of row dicts with keys k, mu_k, re_lambda, im_lambda,
    residual, ready for CSV serialization.  The per-mode search window
    reaches below the slowest diffusive decay rate so the reported root is
    the true rightmost one; modes whose window could not be resolved carry
    NaN entries.
    """
    rows = []
    for k in range(k_max + 1):
        ctx = char_matrix_context(spec, k, alpha)
        d_min = float(np.min(ctx.diffusion))
        bound = 1.2 * ctx.mu_k * d_min + _norm_sum(ctx) + depth_margin
        if ctx.lags[-1] > 0:
            bound = min(bound, 600.0 / (ctx.lags[-1] * max(ctx.m, 1)))
        try:
            top = _rightmost_root(ctx, bound)
        except (BoundaryRoot, NonConvergence):
            top = None
        if top is not None:
            rows.append(
                {
                    "k": k,
                    "mu_k": ctx.mu_k,
                    "re_lambda": top.lam.real,
                    "im_lambda": abs(top.lam.imag),
                    "residual": top.residual,
                }
            )
        else:
            rows.append(
                {
                    "k": k,
                    "mu_k": ctx.mu_k,
                    "re_lambda": float("nan"),
                    "im_lambda": float("nan"),
                    "residual": float("nan"),
                }
            )
    return rows
