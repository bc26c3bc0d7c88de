"""Spin-1 observables for two-qutrit witness measurements (hbar = 1).

The Gell-Mann matrices are rewritten in terms of ``S_x, S_y, S_z``, their
squares and anticommutators, so ``<Lambda>`` and the optimal isotropic
witness become sums of local spin correlations.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from . import linalg
from .bases import Family
from .states import isotropic, lambda_operator
from .witness import EntanglementWitness, hs_distance, nearest_separable_iso

HBAR = 1.0
_R2 = 1.0 / sqrt(2.0)


@dataclass(frozen=True)
class SpinOperatorSet:
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray
    sx2: np.ndarray
    sy2: np.ndarray
    axy: np.ndarray
    ayz: np.ndarray
    azx: np.ndarray
    hbar: float = HBAR


def spin_operators() -> SpinOperatorSet:
    """The eight spin-1 observables in the ``m = 1, 0, -1`` basis."""
    c = np.complex128
    return SpinOperatorSet(
        sx=_R2 * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=c),
        sy=_R2 * np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=c),
        sz=np.array([[1, 0, 0], [0, 0, 0], [0, 0, -1]], dtype=c),
        sx2=0.5 * np.array([[1, 0, 1], [0, 2, 0], [1, 0, 1]], dtype=c),
        sy2=0.5 * np.array([[1, 0, -1], [0, 2, 0], [-1, 0, 1]], dtype=c),
        axy=np.array([[0, 0, -1j], [0, 0, 0], [1j, 0, 0]], dtype=c),
        ayz=_R2 * np.array([[0, -1j, 0], [1j, 0, 1j], [0, -1j, 0]], dtype=c),
        azx=_R2 * np.array([[0, 1, 0], [1, 0, -1], [0, -1, 0]], dtype=c),
    )


def gellmann_from_spin(label) -> np.ndarray:
    """Gell-Mann matrix ``label`` (qutrit GGM label) assembled from spin-1 observables."""
    s = spin_operators()
    one = np.eye(3, dtype=np.complex128)
    table = {
        ("s", 1, 2): _R2 * (s.sx + s.azx),
        ("s", 1, 3): s.sx2 - s.sy2,
        ("s", 2, 3): _R2 * (s.sx - s.azx),
        ("a", 1, 2): _R2 * (s.sy + s.ayz),
        ("a", 1, 3): s.axy,
        ("a", 2, 3): _R2 * (s.sy - s.ayz),
        ("d", 1): 2 * one + 0.5 * (s.sz - 3 * s.sx2 - 3 * s.sy2),
        ("d", 2): (-2 * one + 1.5 * (s.sz + s.sx2 + s.sy2)) / sqrt(3.0),
    }
    try:
        return table[tuple(label)]
    except KeyError:
        raise ValueError(f"{label!r} is not a qutrit Gell-Mann label") from None


def a_iso_qutrit() -> EntanglementWitness:
    """``(1 - (3/4) Lambda) / (3 sqrt 2)``, the optimal witness for isotropic qutrits."""
    op = (np.eye(9) - 0.75 * lambda_operator(3)) / (3 * sqrt(2.0))
    target = isotropic(3, 1.0)
    return EntanglementWitness(op, 3, Family.GGM, hs_distance(nearest_separable_iso(3), target), target)


def _lambda_terms() -> list[tuple[str, float, np.ndarray]]:
    """(name, coefficient, two-qutrit observable) for every term of ``<Lambda>``."""
    s = spin_operators()
    one = np.eye(3, dtype=np.complex128)
    k = np.kron
    return [
        ("Sx(x)Sx", 1.0, k(s.sx, s.sx)),
        ("Sy(x)Sy", -1.0, k(s.sy, s.sy)),
        ("Sz(x)Sz", 1.0, k(s.sz, s.sz)),
        ("1(x)1", 16.0 / 3.0, k(one, one)),
        ("1(x)Sx^2", -4.0, k(one, s.sx2)),
        ("1(x)Sy^2", -4.0, k(one, s.sy2)),
        ("Sx^2(x)1", -4.0, k(s.sx2, one)),
        ("Sy^2(x)1", -4.0, k(s.sy2, one)),
        ("Sx^2(x)Sx^2", 4.0, k(s.sx2, s.sx2)),
        ("Sy^2(x)Sy^2", 4.0, k(s.sy2, s.sy2)),
        ("Sx^2(x)Sy^2", 2.0, k(s.sx2, s.sy2)),
        ("Sy^2(x)Sx^2", 2.0, k(s.sy2, s.sx2)),
        ("{Sz,Sx}(x){Sz,Sx}", 1.0, k(s.azx, s.azx)),
        ("{Sy,Sz}(x){Sy,Sz}", -1.0, k(s.ayz, s.ayz)),
        ("{Sx,Sy}(x){Sx,Sy}", -1.0, k(s.axy, s.axy)),
    ]


@dataclass(frozen=True)
class ExpectationTerm:
    observable: str
    coefficient: float
    value: float


@dataclass(frozen=True)
class ExpectationReport:
    terms: tuple[ExpectationTerm, ...]
    lambda_expectation: float
    lambda_direct: float
    witness_expectation: float
    hbar: float = HBAR

    def rows(self) -> list[tuple[str, float, float]]:
        out = [(t.observable, t.coefficient, t.value) for t in self.terms]
        out.append(("<Lambda>", 1.0, self.lambda_expectation))
        out.append(("<A_iso>", 1.0, self.witness_expectation))
        return out


def witness_expectation_terms(rho) -> ExpectationReport:
    """Measure every spin correlation entering ``<Lambda>`` and assemble ``<A_iso>``.

    ``<A_iso> = <1x1>/(3 sqrt 2) - <Lambda>/(4 sqrt 2)``.
    """
    rho = linalg.as_matrix(rho)
    if rho.shape != (9, 9):
        raise ValueError(f"expected a two-qutrit (9x9) density matrix, got {rho.shape}")
    terms = []
    for name, coeff, obs in _lambda_terms():
        terms.append(ExpectationTerm(name, coeff, float(np.real(np.trace(obs @ rho)))))
    lam = sum(t.coefficient * t.value for t in terms)
    direct = float(np.real(np.trace(lambda_operator(3) @ rho)))
    norm = float(np.real(np.trace(rho)))
    a_iso = norm / (3 * sqrt(2.0)) - lam / (4 * sqrt(2.0))
    return ExpectationReport(tuple(terms), lam, direct, a_iso)
