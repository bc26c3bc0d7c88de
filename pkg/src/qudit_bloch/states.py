"""Reference two-qudit states and the correlation operators Lambda, T and U.

The correlation operators are assembled from the basis matrices, never from
the Bell projector, so comparing them with :func:`bell_state` is a genuine
check of the basis expansions.

Random states use numpy's PCG64 generator (``numpy.random.default_rng``).
Stream layout: a ``(2, d)`` array of standard normals per vector, real parts
first, imaginary parts second.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bases import ggm_basis, pob_basis, wob_basis, _check_dim


def _as_float(x) -> float:
    return float(Fraction(x)) if isinstance(x, str) else float(x)


def alpha_range(d: int) -> tuple[float, float]:
    """Admissible mixing parameters ``[-1/(d^2-1), 1]``."""
    return -1.0 / (d * d - 1), 1.0


def entanglement_threshold(d: int) -> float:
    """Isotropic states are entangled iff ``alpha > 1/(d+1)``."""
    return 1.0 / (d + 1)


@dataclass(frozen=True)
class IsotropicParams:
    dim: int
    alpha: float

    def __post_init__(self):
        _check_dim(self.dim)
        lo, hi = alpha_range(self.dim)
        # admit rounding at the exact endpoints
        if not (lo - 1e-12 <= self.alpha <= hi + 1e-12):
            raise ValueError(
                f"alpha={self.alpha} outside the admissible interval [{lo:.12g}, {hi}] for d={self.dim}"
            )

    @property
    def entangled(self) -> bool:
        return self.alpha > entanglement_threshold(self.dim)


def bell_vector(d: int) -> np.ndarray:
    """``|phi_+> = sum_j |j>|j> / sqrt(d)``."""
    _check_dim(d)
    v = np.zeros(d * d, dtype=np.complex128)
    v[:: d + 1] = 1.0 / np.sqrt(d)
    return v


def bell_state(d: int) -> np.ndarray:
    """Projector onto the maximally entangled state ``|phi_+>``."""
    v = bell_vector(d)
    return np.outer(v, v.conj())


def isotropic(d: int, alpha: float) -> np.ndarray:
    """``alpha |phi_+><phi_+| + (1 - alpha) / d^2``."""
    p = IsotropicParams(d, _as_float(alpha))
    return p.alpha * bell_state(d) + (1.0 - p.alpha) / d**2 * np.eye(d * d)


def maximally_mixed(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128) / n


def lambda_operator(d: int) -> np.ndarray:
    """``sum L_s x L_s - sum L_a x L_a + sum L^m x L^m`` over the Gell-Mann matrices."""
    basis = ggm_basis(d)
    out = np.zeros((d * d, d * d), dtype=np.complex128)
    for (kind, *_), m in basis:
        sign = -1.0 if kind == "a" else 1.0
        out += sign * np.kron(m, m)
    return out


def t_operator(d: int) -> np.ndarray:
    """``sum_{(L,M) != (0,0)} T_LM x T_LM``."""
    mats = pob_basis(d).traceless_matrices
    return sum(np.kron(m, m) for m in mats)


def u_operator(d: int) -> np.ndarray:
    """``sum_{(l,m) != (0,0)} U_lm x U_{-l,m}`` with ``-l`` taken mod ``d``."""
    basis = wob_basis(d)
    out = np.zeros((d * d, d * d), dtype=np.complex128)
    for (l, m), u in basis:
        if (l, m) == (0, 0):
            continue
        out += np.kron(u, basis[((-l) % d, m)])
    return out


def random_state_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    re, im = rng.standard_normal((2, d))
    v = re + 1j * im
    return v / np.linalg.norm(v)


def random_pure_product_state(d: int, seed: int) -> np.ndarray:
    """``|a><a| x |b><b|`` with Gaussian-random normalized ``a`` then ``b``."""
    _check_dim(d)
    rng = np.random.default_rng(seed)
    a = random_state_vector(d, rng)
    b = random_state_vector(d, rng)
    v = np.kron(a, b)
    return np.outer(v, v.conj())


def random_pure_state(d: int, seed: int) -> np.ndarray:
    _check_dim(d)
    v = random_state_vector(d, np.random.default_rng(seed))
    return np.outer(v, v.conj())


def random_density_matrix(d: int, seed: int) -> np.ndarray:
    """``G G^dagger / Tr(G G^dagger)`` for a complex Gaussian ``d x d`` matrix ``G``."""
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    rng = np.random.default_rng(seed)
    re, im = rng.standard_normal((2, d, d))
    g = re + 1j * im
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real
