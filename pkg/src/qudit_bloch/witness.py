"""Hilbert-Schmidt entanglement measure and entanglement witnesses.

Closed forms cover the isotropic family; for other states a candidate nearest
separable state is tested with the guess method: build the tangent-plane
operator and check it is non-negative on (sampled) pure product states.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from . import linalg
from .bases import Family
from .bloch import subsystem_dim
from .linalg import DEFAULT_TOL
from .states import (
    _as_float,
    entanglement_threshold,
    isotropic,
    lambda_operator,
    t_operator,
    u_operator,
)

DETECTION_THRESHOLD = 1e-9
SAMPLE_BLOCK = 1024


@dataclass(frozen=True)
class EntanglementWitness:
    """Hermitian operator plus the entangled state it was built against.

    ``direction_norm`` is ``||rho_sep - rho_ent||``, the distance between the
    separable reference state and ``target``.
    """

    operator: np.ndarray = field(repr=False)
    dim: int
    family_used: Family | None
    direction_norm: float
    target: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        op = linalg.as_matrix(self.operator)
        if op.shape != (self.dim**2, self.dim**2):
            raise ValueError(f"witness for d={self.dim} must be {self.dim**2}x{self.dim**2}, got {op.shape}")
        if linalg.hermiticity_defect(op) > DEFAULT_TOL:
            raise ValueError("entanglement witness must be Hermitian")
        object.__setattr__(self, "operator", op)


@dataclass(frozen=True)
class WitnessVerdict:
    min_sep_expectation: float
    n_samples: int
    detected: bool
    value_on_target: float


class AlphaRangeError(ValueError):
    pass


def _entangled_alpha(d: int, alpha) -> float:
    alpha = _as_float(alpha)
    lo = entanglement_threshold(d)
    if not lo < alpha <= 1.0:
        raise AlphaRangeError(
            f"alpha={alpha} is not in the entangled range ({lo:.10g}, 1] = (1/(d+1), 1] for d={d}"
        )
    return alpha


def nearest_separable_iso(d: int) -> np.ndarray:
    """Closest separable state to every entangled isotropic state: ``alpha = 1/(d+1)``."""
    return isotropic(d, 1.0 / (d + 1))


def hs_measure_iso(d: int, alpha) -> float:
    """``D = sqrt(d^2 - 1)/d * (alpha - 1/(d+1))`` for ``1/(d+1) < alpha <= 1``."""
    alpha = _entangled_alpha(d, alpha)
    return sqrt(d * d - 1) / d * (alpha - 1.0 / (d + 1))


def hs_distance(a, b) -> float:
    return linalg.hs_norm(linalg.as_matrix(a) - linalg.as_matrix(b))


def optimal_witness_iso(d: int, family=Family.GGM) -> EntanglementWitness:
    """Optimal witness for entangled isotropic states, written in one basis.

    ``(1/d) sqrt((d-1)/(d+1)) 1x1 - k X`` with ``(X, k)`` one of
    ``(Lambda, 1/(2 sqrt(d^2-1)))``, ``(T, 1/sqrt(d^2-1))`` or
    ``(U, 1/(d sqrt(d^2-1)))``. All three give the same operator.
    The recorded target is the Bell state (``alpha = 1``).
    """
    family = Family.parse(family)
    root = sqrt(d * d - 1)
    if family is Family.GGM:
        corr = lambda_operator(d) / (2 * root)
    elif family is Family.POB:
        corr = t_operator(d) / root
    else:
        corr = u_operator(d) / (d * root)
    op = sqrt((d - 1) / (d + 1)) / d * np.eye(d * d) - corr
    # U and T are Hermitian only as sums; drop the rounding residue
    op = 0.5 * (op + op.conj().T)
    target = isotropic(d, 1.0)
    return EntanglementWitness(op, d, family, hs_distance(nearest_separable_iso(d), target), target)


def guess_witness(rho_guess, rho_ent, tol: float = DEFAULT_TOL) -> EntanglementWitness:
    """Tangent-plane operator for a guessed nearest separable state.

    ``C = (g - e - <g, g - e> 1) / ||g - e||``. The guess is the true nearest
    separable state iff ``C`` is a witness; check with :func:`verify_witness`.
    """
    g = linalg.as_matrix(rho_guess)
    e = linalg.as_matrix(rho_ent)
    if g.shape != e.shape:
        raise ValueError(f"dimension mismatch: {g.shape} vs {e.shape}")
    d = subsystem_dim(g)
    diff = g - e
    norm = linalg.hs_norm(diff)
    if norm <= tol:
        raise ValueError("guess coincides with the entangled state; no witness direction")
    shift = linalg.hs_inner(g, diff).real
    op = (diff - shift * np.eye(d * d)) / norm
    op = 0.5 * (op + op.conj().T)
    return EntanglementWitness(op, d, None, norm, e)


def eval_witness(w: EntanglementWitness, rho) -> float:
    """``Tr(A rho)``; the imaginary part must vanish."""
    rho = linalg.as_matrix(rho)
    if rho.shape != w.operator.shape:
        raise ValueError(f"dimension mismatch: witness {w.operator.shape} vs state {rho.shape}")
    val = linalg.hs_inner(w.operator, rho)
    if abs(val.imag) > DEFAULT_TOL:
        raise ValueError(f"witness expectation has imaginary part {val.imag:.3g}")
    return val.real


def product_expectations(operator: np.ndarray, d: int, n_samples: int, seed: int) -> np.ndarray:
    """``<a b| A |a b>`` on ``n_samples`` random pure product states.

    Samples come in blocks of ``SAMPLE_BLOCK``; block ``i`` draws from
    ``default_rng([seed, i])`` so blocks are independent of evaluation order.
    """
    a4 = np.asarray(operator).reshape(d, d, d, d)
    out = np.empty(n_samples)
    for block, start in enumerate(range(0, n_samples, SAMPLE_BLOCK)):
        size = min(SAMPLE_BLOCK, n_samples - start)
        rng = np.random.default_rng([seed, block])
        re, im = rng.standard_normal((2, 2, size, d))
        v = re + 1j * im
        v /= np.linalg.norm(v, axis=-1, keepdims=True)
        a, b = v[0], v[1]
        vals = np.einsum("si,sk,ikjl,sj,sl->s", a.conj(), b.conj(), a4, a, b, optimize=True)
        out[start : start + size] = vals.real
    return out


def verify_witness(
    w: EntanglementWitness,
    d: int | None = None,
    n_samples: int = 10_000,
    seed: int = 0,
    target=None,
) -> WitnessVerdict:
    """Sample the witness on pure product states and on its target.

    Pure product states are the extreme points of the separable set, so their
    minimum bounds the separable minimum from above. ``detected`` requires a
    negative target value and no sampled value below ``-1e-9``.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    d = w.dim if d is None else d
    if d != w.dim:
        raise ValueError(f"witness is for d={w.dim}, not d={d}")
    target = w.target if target is None else target
    vals = product_expectations(w.operator, d, n_samples, seed)
    min_sep = float(vals.min())
    value = eval_witness(w, target) if target is not None else float("nan")
    detected = bool(value < -DETECTION_THRESHOLD and min_sep >= -DETECTION_THRESHOLD)
    return WitnessVerdict(min_sep, n_samples, detected, value)


def max_violation_iso(d: int, alpha) -> float:
    """``-<rho_alpha, A_opt>``, the largest violation of the witness inequality."""
    alpha = _entangled_alpha(d, alpha)
    return -eval_witness(optimal_witness_iso(d), isotropic(d, alpha))

