"""Algebra of exponential-polynomial history profiles.

Center-manifold computations only ever meet vector-valued functions of the
delay variable that are finite sums of terms  v * theta^p * exp(c * theta)
with p in {0, 1}.  This module provides that little algebra: evaluation,
differentiation, conjugation, linear combinations and term merging.  The same
representation serves adjoint-side functions of the forward variable
s in [0, r].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["ProfileTerm", "Profile", "exp_profile", "zero_profile"]


@dataclass(frozen=True)
class ProfileTerm:
    """One term  vector * theta^power * exp(rate * theta)."""

    vector: np.ndarray      # complex, shape (m,)
    rate: complex
    power: int              # 0 or 1

    def __post_init__(self):
        object.__setattr__(self, "vector", np.asarray(self.vector, dtype=complex))
        object.__setattr__(self, "rate", complex(self.rate))
        if self.power not in (0, 1):
            raise ValueError(f"term power must be 0 or 1, got {self.power}")


@dataclass(frozen=True)
class Profile:
    """A finite sum of ProfileTerms; the empty sum is the zero profile."""

    terms: tuple
    dim: int

    @staticmethod
    def from_terms(terms, dim: int) -> "Profile":
        return Profile(terms=tuple(terms), dim=dim)

    def evaluate(self, theta) -> np.ndarray:
        """Value at scalar theta (or array of thetas, extra leading axis)."""
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(theta.shape + (self.dim,), dtype=complex)
        for t in self.terms:
            weight = np.exp(t.rate * theta)
            if t.power == 1:
                weight = weight * theta
            out += weight[..., None] * t.vector
        return out

    def derivative(self) -> "Profile":
        terms = []
        for t in self.terms:
            terms.append(ProfileTerm(t.rate * t.vector, t.rate, t.power))
            if t.power == 1:
                terms.append(ProfileTerm(t.vector, t.rate, 0))
        return Profile.from_terms(terms, self.dim).collect()

    def conjugate(self) -> "Profile":
        return Profile.from_terms(
            (ProfileTerm(np.conj(t.vector), np.conj(t.rate), t.power) for t in self.terms),
            self.dim,
        )

    def scale(self, s: complex) -> "Profile":
        return Profile.from_terms(
            (ProfileTerm(s * t.vector, t.rate, t.power) for t in self.terms),
            self.dim,
        )

    def __add__(self, other: "Profile") -> "Profile":
        if self.dim != other.dim:
            raise ValueError("profile dimensions differ")
        return Profile.from_terms(self.terms + other.terms, self.dim).collect()

    def collect(self, drop_tol: float = 0.0) -> "Profile":
        """Merge terms sharing (rate, power); optionally drop tiny terms."""
        acc: dict = {}
        for t in self.terms:
            key = (complex(t.rate), t.power)
            if key in acc:
                acc[key] = acc[key] + t.vector
            else:
                acc[key] = t.vector.copy()
        terms = []
        for (rate, power), vec in acc.items():
            if drop_tol > 0.0 and np.max(np.abs(vec)) <= drop_tol:
                continue
            terms.append(ProfileTerm(vec, rate, power))
        return Profile.from_terms(terms, self.dim)

    def lag_samples(self, lags) -> tuple:
        """Tuple of values at theta = -r_j for each lag r_j (r_0 = 0 first)."""
        return tuple(self.evaluate(-float(r)) for r in lags)


def exp_profile(vector, rate: complex, dim: int | None = None) -> Profile:
    """Pure exponential profile  vector * exp(rate * theta)."""
    vector = np.asarray(vector, dtype=complex)
    if dim is None:
        dim = vector.shape[0]
    return Profile.from_terms([ProfileTerm(vector, rate, 0)], dim)


def zero_profile(dim: int) -> Profile:
    return Profile.from_terms([], dim)
