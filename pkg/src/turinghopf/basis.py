"""Neumann cosine basis on the interval (0, l*pi) and product brackets.

The basis is beta_0(x) = 1, beta_n(x) = sqrt(2) * cos(n x / l) for n >= 1,
orthonormal for the inner product <u, v> = (1/(l pi)) * int_0^{l pi} u v dx.
Products of basis functions expand in finitely many modes; the brackets below
are the exact expansion coefficients, obtained from the product-to-sum
identities for cosines.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "mode_wavenumber_sq",
    "basis_function",
    "norm_factor",
    "pair_bracket",
    "triple_bracket",
    "quad_bracket",
    "product_modes",
    "interaction_kind",
    "InnerProductTable",
    "inner_product_table",
]


def mode_wavenumber_sq(k: int, domain_length: float) -> float:
    """Laplacian eigenvalue magnitude mu_k = (k / l)^2 for mode k."""
    return (k / domain_length) ** 2


def norm_factor(n: int) -> float:
    """Normalization constant of mode n: 1 for n = 0, sqrt(2) otherwise."""
    return 1.0 if n == 0 else np.sqrt(2.0)


def basis_function(n: int, x: np.ndarray, domain_length: float) -> np.ndarray:
    """Evaluate beta_n at positions x in (0, l*pi)."""
    x = np.asarray(x, dtype=float)
    return norm_factor(n) * np.cos(n * x / domain_length)


def pair_bracket(a: int, b: int) -> float:
    """<beta_a, beta_b> = delta_ab (orthonormality)."""
    return 1.0 if a == b else 0.0


def triple_bracket(a: int, b: int, c: int) -> float:
    """<beta_a * beta_b, beta_c>.

    Averaging cos(m x / l) over the interval gives delta_{m,0}, so the value
    is N_a N_b N_c / 4 times the number of sign choices with a +- b +- c = 0.
    """
    hits = sum(
        1
        for sb in (1, -1)
        for sc in (1, -1)
        if a + sb * b + sc * c == 0
    )
    return norm_factor(a) * norm_factor(b) * norm_factor(c) * hits / 4.0


def quad_bracket(a: int, b: int, c: int, d: int) -> float:
    """<beta_a * beta_b * beta_c, beta_d>."""
    hits = sum(
        1
        for sb in (1, -1)
        for sc in (1, -1)
        for sd in (1, -1)
        if a + sb * b + sc * c + sd * d == 0
    )
    norm = (
        norm_factor(a) * norm_factor(b) * norm_factor(c) * norm_factor(d)
    )
    return norm * hits / 8.0


def product_modes(a: int, b: int) -> tuple[int, ...]:
    """Modes spanned by the product beta_a * beta_b (sorted, distinct)."""
    return tuple(sorted({abs(a - b), a + b}))


def interaction_kind(k1: int, k2: int) -> str:
    """Classify the spatial interaction pattern of the two critical modes.

    Returns one of:
      "both-uniform"     : k1 == k2 == 0
      "equal-nonzero"    : k1 == k2 != 0
      "steady-patterned" : k1 != 0, k2 == 0 (patterned steady mode,
                            uniform oscillatory mode)
      "wave-patterned"   : k1 == 0, k2 != 0
      "distinct-nonzero" : k1 != k2, both nonzero
    """
    if k1 == 0 and k2 == 0:
        return "both-uniform"
    if k1 == k2:
        return "equal-nonzero"
    if k2 == 0:
        return "steady-patterned"
    if k1 == 0:
        return "wave-patterned"
    return "distinct-nonzero"


@dataclass(frozen=True)
class InnerProductTable:
    """The ten product brackets entering the third-order reduction.

    Naming: t_ab_c = <beta_{ka} beta_{kb}, beta_{kc}> (quadratic level) and
    q_abc_d = <beta_{ka} beta_{kb} beta_{kc}, beta_{kd}> (cubic level), with
    digit 1 meaning mode k1 and digit 2 meaning mode k2.
    """

    k1: int
    k2: int
    t_11_1: float
    t_22_1: float
    t_12_2: float
    t_11_2: float
    t_22_2: float
    t_12_1: float
    q_111_1: float
    q_222_2: float
    q_122_1: float
    q_112_2: float


def inner_product_table(k1: int, k2: int, domain_length: float = 1.0) -> InnerProductTable:
    """Evaluate the ten brackets for critical mode pair (k1, k2).

    The values depend only on the integer mode numbers, not on the domain
    length; the argument is accepted for interface symmetry with the rest of
    the package.
    """
    del domain_length
    return InnerProductTable(
        k1=k1,
        k2=k2,
        t_11_1=triple_bracket(k1, k1, k1),
        t_22_1=triple_bracket(k2, k2, k1),
        t_12_2=triple_bracket(k1, k2, k2),
        t_11_2=triple_bracket(k1, k1, k2),
        t_22_2=triple_bracket(k2, k2, k2),
        t_12_1=triple_bracket(k1, k2, k1),
        q_111_1=quad_bracket(k1, k1, k1, k1),
        q_222_2=quad_bracket(k2, k2, k2, k2),
        q_122_1=quad_bracket(k1, k2, k2, k1),
        q_112_2=quad_bracket(k1, k1, k2, k2),
    )
