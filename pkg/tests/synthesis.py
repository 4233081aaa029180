"""Randomized models with an exactly placed codimension-two critical point.

The generator draws random diffusion rates, delayed interaction matrices,
and dense symmetric quadratic/cubic forms, then solves for the entries of
the instantaneous interaction matrix so that the chosen steady mode carries
an exact zero root and the chosen oscillatory mode an exact imaginary pair.
Candidate draws are rejected unless every other (mode, rate) combination
the second-order solves touch is safely nonsingular, both critical roots
are simple, and both null vectors are well conditioned for the
first-component normalization.

Used by the coefficient cross-route identity tests: the general-formula
route and the case-specialized route must agree on these models to near
machine precision, which pins down every transcription of the coefficient
formulas on full-rank nonlinearities (structured examples with rank-one
quadratic forms cannot distinguish several wrong pairings).
"""

from itertools import permutations

import numpy as np
from scipy.optimize import fsolve

from turinghopf.locator import CriticalPoint
from turinghopf.model import ModelSpec
from turinghopf.spectral import (
    char_matrix,
    char_matrix_context,
    det_and_derivative,
)

_DET_FLOOR = 1e-2      # nonsingularity margin for every noncritical solve
_SIMPLE_FLOOR = 1e-2   # |d det / d lambda| at each critical root
_COMPONENT_FLOOR = 0.1 # first null-vector component (normalization anchor)


def _sym_tensor(rng, m, n_slots, order, scale):
    shape = (m,) + (n_slots,) * order
    raw = rng.uniform(-1.0, 1.0, size=shape)
    sym = np.zeros_like(raw)
    perms = list(permutations(range(1, order + 1)))
    for perm in perms:
        sym += np.transpose(raw, (0,) + perm)
    return sym * (scale / len(perms))


def _null_vector_ok(mat):
    """Simple-and-well-anchored check: sigma_1 healthy, v[0] not tiny."""
    _, s, vh = np.linalg.svd(mat)
    if s[0] < 0.1:
        return False
    v = vh[-1].conj()
    return abs(v[0]) >= _COMPONENT_FLOOR * np.linalg.norm(v)


def _well_separated(spec, k1, k2, w0):
    """No accidental (near-)criticality at any solve the pipeline performs."""
    kmax = max(2 * k1, 2 * k2, k1 + k2, 1) + 3
    critical = {(k1, 0), (k2, 1)}
    rates = {0: 0.0, 1: 1j * w0, 2: 2j * w0}
    for k in range(kmax + 1):
        ctx = char_matrix_context(spec, k)
        for tag, lam in rates.items():
            det, ddet = det_and_derivative(ctx, lam)
            if (k, tag) in critical:
                if abs(ddet) < _SIMPLE_FLOOR:
                    return False
                if not _null_vector_ok(char_matrix(ctx, lam)):
                    return False
            elif abs(det) < _DET_FLOOR:
                return False
    return True


def make_critical_model(k1, k2, seed, name=""):
    """Random two-species delayed model critical exactly at modes (k1, k2).

    Returns a (spec, point) pair whose point carries exact criticality data
    (residuals are zero by construction); parameter derivatives are zero,
    so only the coefficient machinery is exercised, not the unfolding.
    """
    rng = np.random.default_rng(np.random.SeedSequence((k1, k2, seed)))
    m = 2
    lags = (0.0, 1.0)
    n_slots = m * len(lags)
    for _ in range(300):
        length = rng.uniform(0.7, 1.4)
        w0 = rng.uniform(0.9, 2.1)
        diff = rng.uniform(0.3, 1.8, size=m)
        a_lag = rng.uniform(-1.0, 1.0, size=(m, m))
        pin = rng.uniform(-1.0, 1.0)
        mu1 = (k1 / length) ** 2
        mu2 = (k2 / length) ** 2
        s_steady = np.diag(mu1 * diff) - a_lag
        s_wave = (
            1j * w0 * np.eye(m)
            + np.diag(mu2 * diff)
            - a_lag * np.exp(-1j * w0)
        )

        def det_gap(u, s_steady=s_steady, s_wave=s_wave, pin=pin):
            x = np.array([[u[0], u[1]], [u[2], pin]])
            m1 = s_steady - x
            m2 = s_wave - x
            d1 = m1[0, 0] * m1[1, 1] - m1[0, 1] * m1[1, 0]
            d2 = m2[0, 0] * m2[1, 1] - m2[0, 1] * m2[1, 0]
            return [d1.real, d2.real, d2.imag]

        sol, _, ok, _ = fsolve(
            det_gap, rng.uniform(-1.5, 1.5, size=3), full_output=True,
            xtol=1e-13,
        )
        if ok != 1 or max(abs(v) for v in det_gap(sol)) > 1e-11:
            continue
        a_inst = np.array([[sol[0], sol[1]], [sol[2], pin]])

        t2 = _sym_tensor(rng, m, n_slots, 2, 1.0)
        t3 = _sym_tensor(rng, m, n_slots, 3, 1.0)

        def quadratic(a, b, t2=t2):
            xa = np.concatenate([np.asarray(v, dtype=complex) for v in a])
            xb = np.concatenate([np.asarray(v, dtype=complex) for v in b])
            return np.einsum("eab,a,b->e", t2, xa, xb)

        def cubic(a, b, c, t3=t3):
            xa = np.concatenate([np.asarray(v, dtype=complex) for v in a])
            xb = np.concatenate([np.asarray(v, dtype=complex) for v in b])
            xc = np.concatenate([np.asarray(v, dtype=complex) for v in c])
            return np.einsum("eabc,a,b,c->e", t3, xa, xb, xc)

        zero_v = np.zeros(m)
        zero_m = np.zeros((m, m))
        spec = ModelSpec(
            num_species=m,
            domain_length=length,
            lags=lags,
            diffusion=diff,
            diffusion_deriv=(zero_v, zero_v),
            reaction_matrices=(a_inst, a_lag),
            reaction_matrices_deriv=((zero_m, zero_m), (zero_m, zero_m)),
            quadratic=quadratic,
            cubic=cubic,
            name=name or f"random-critical-{k1}-{k2}-{seed}",
        )
        if not _well_separated(spec, k1, k2, w0):
            continue
        point = CriticalPoint(
            alpha_star=(0.0, 0.0),
            k1=k1,
            k2=k2,
            omega0=w0,
            transversality=(float("nan"), float("nan")),
            residuals=(0.0, 0.0),
            hygiene={},
            spec_critical=spec,
            guess=(),
            iterations=0,
            notes={"synthetic": True},
        )
        return spec, point
    raise RuntimeError(
        f"no well-separated critical model for modes ({k1}, {k2}), seed {seed}"
    )


def case_mode_pairs(case_index, count):
    """Mode pairs exercising one interaction kind, resonances included."""
    if case_index == 1:
        choices = [(0, 0)]
    elif case_index == 2:
        choices = [(1, 1), (2, 2)]
    elif case_index == 3:
        choices = [(1, 0), (2, 0)]
    elif case_index == 4:
        choices = [(0, 1), (0, 2)]
    elif case_index == 5:
        # generic, then both second-order resonances (k2 = 2 k1, k1 = 2 k2)
        choices = [(1, 3), (1, 2), (2, 1)]
    else:
        raise ValueError(f"unknown case index {case_index}")
    return [choices[i % len(choices)] for i in range(count)]
