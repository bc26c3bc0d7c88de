"""Bloch-vector encoding of qudit density matrices.

Components use ``b_i = Tr(A_i^dagger rho) / N`` with ``N`` the basis norm
constant, so that ``rho = 1/d + sum_i b_i A_i`` holds exactly in every
family. With this convention the purity is ``1/d + N |b|^2`` and pure states
sit on the radius ``sqrt((d - 1) / (N d))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt, sqrt
from typing import NamedTuple

import numpy as np

from . import linalg
from .angular import clebsch_gordan
from .bases import (
    IDENTITY,
    Family,
    OperatorBasis,
    format_label,
    get_basis,
    ggm_basis,
    magnetic_number,
    norm_constant,
    phase,
    pob_labels,
    spin_of,
    wob_basis,
)
from .linalg import DEFAULT_TOL


class InvalidStateError(ValueError):
    """A matrix failed one or more density-matrix invariants.

    ``failures`` names the broken invariants (``"hermitian"``, ``"trace"``,
    ``"positive"``, ``"shape"``).
    """

    def __init__(self, failures: list[str], details: str = ""):
        self.failures = list(failures)
        msg = "invalid density matrix: fails " + ", ".join(self.failures)
        if details:
            msg += f" ({details})"
        super().__init__(msg)


def check_density_matrix(rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Validate and return ``rho`` as a complex array.

    Raises
    ------
    InvalidStateError
        Listing every failed invariant.
    """
    try:
        rho = linalg.as_matrix(rho)
    except ValueError as exc:
        raise InvalidStateError(["shape"], str(exc)) from None
    if rho.shape[0] != rho.shape[1] or rho.shape[0] < 2:
        raise InvalidStateError(["shape"], f"got {rho.shape}")
    failures = []
    details = []
    herm = linalg.hermiticity_defect(rho)
    if herm > tol:
        failures.append("hermitian")
        details.append(f"max |rho - rho^dagger| = {herm:.3g}")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        failures.append("trace")
        details.append(f"trace = {tr.real:.12g}{tr.imag:+.3g}j")
    if "hermitian" not in failures:
        lo = linalg.min_eigenvalue(rho, tol)
        if lo < -tol:
            failures.append("positive")
            details.append(f"min eigenvalue = {lo:.6g}")
    if failures:
        raise InvalidStateError(failures, "; ".join(details))
    return rho


def purity(rho) -> float:
    """``Tr(rho^2)``."""
    rho = linalg.as_matrix(rho)
    return float(np.real(np.trace(rho @ rho)))


@dataclass(frozen=True)
class BlochVector:
    """Coefficients of ``rho - 1/d`` on the traceless elements of a basis."""

    family: Family
    dim: int
    components: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        comps = np.asarray(self.components, dtype=np.complex128).reshape(-1)
        if comps.size != self.dim**2 - 1:
            raise ValueError(
                f"a d={self.dim} Bloch vector needs {self.dim**2 - 1} components, got {comps.size}"
            )
        comps.setflags(write=False)
        object.__setattr__(self, "components", comps)

    @property
    def basis(self) -> OperatorBasis:
        return get_basis(self.family, self.dim)

    @property
    def labels(self) -> tuple:
        return self.basis.traceless_labels

    def items(self):
        return zip(self.labels, self.components)

    def __getitem__(self, label) -> complex:
        return complex(self.components[self.labels.index(tuple(label))])

    @property
    def radius(self) -> float:
        return radius(self)


def decompose(rho, family, tol: float = DEFAULT_TOL, validate: bool = True) -> BlochVector:
    """Bloch vector of ``rho`` in the given family."""
    family = Family.parse(family)
    rho = check_density_matrix(rho, tol) if validate else linalg.as_matrix(rho)
    d = rho.shape[0]
    basis = get_basis(family, d)
    mats = basis.traceless_matrices
    comps = np.einsum("kij,ij->k", mats.conj(), rho) / basis.norm
    return BlochVector(family, d, comps)


class Reconstruction(NamedTuple):
    """Matrix rebuilt from a Bloch vector, flagged if it is not a state."""

    matrix: np.ndarray
    is_state: bool
    min_eigenvalue: float


def reconstruct_matrix(b: BlochVector) -> np.ndarray:
    basis = b.basis
    return np.eye(b.dim, dtype=np.complex128) / b.dim + np.einsum(
        "k,kij->ij", b.components, basis.traceless_matrices
    )


def reconstruct(b: BlochVector, tol: float = DEFAULT_TOL) -> Reconstruction:
    """``1/d + sum_i b_i A_i``.

    Hermiticity is required (raises :class:`InvalidStateError`); positivity
    is only reported, since many vectors inside the ball are not states.
    """
    m = reconstruct_matrix(b)
    herm = linalg.hermiticity_defect(m)
    if herm > tol:
        raise InvalidStateError(["hermitian"], f"max |rho - rho^dagger| = {herm:.3g}")
    lo = linalg.min_eigenvalue(m, tol)
    return Reconstruction(m, lo >= -tol, lo)


def radius(b: BlochVector) -> float:
    """Euclidean length of the (complex) component vector."""
    return float(np.sqrt(np.sum(np.abs(b.components) ** 2)))


def radius_bound(family, d: int) -> float:
    """Radius of the ball holding every Bloch vector; pure states attain it.

    GGM ``sqrt((d-1)/2d)``, POB ``sqrt((d-1)/d)``, WOB ``sqrt(d-1)/d``.
    """
    return sqrt((d - 1) / (norm_constant(family, d) * d))


# -- standard matrices |j><k| -------------------------------------------------


def _check_index(d: int, *idx: int, base: int) -> None:
    for i in idx:
        if not base <= i <= d - 1 + base:
            raise ValueError(f"standard index {i} outside [{base}, {d - 1 + base}]")


def expand_standard_ggb(d: int, j: int, k: int) -> dict:
    """GGM coefficients of ``|j><k|`` (1-based); identity under :data:`IDENTITY`.

    Off-diagonal: ``(L_s +- i L_a) / 2``. Diagonal: ``-sqrt((j-1)/2j) L^{j-1}
    + sum_{n=0}^{d-j-1} L^{j+n} / sqrt(2 (j+n)(j+n+1)) + 1/d``.
    """
    ggm_basis(d)
    _check_index(d, j, k, base=1)
    if j < k:
        return {("s", j, k): 0.5, ("a", j, k): 0.5j}
    if j > k:
        return {("s", k, j): 0.5, ("a", k, j): -0.5j}
    coeffs: dict = {}
    if j > 1:
        coeffs[("d", j - 1)] = -sqrt((j - 1) / (2 * j))
    for n in range(d - j):
        coeffs[("d", j + n)] = 1.0 / sqrt(2 * (j + n) * (j + n + 1))
    coeffs[IDENTITY] = 1.0 / d
    return coeffs


def expand_standard_pob(d: int, i: int, j: int) -> dict:
    """POB coefficients of ``|i><j|`` (1-based), keyed by ``(L, M)``.

    ``sqrt((2L+1)/(2s+1)) C^{s m_i}_{s m_j, L M}`` with ``M = m_i - m_j``;
    every other ``M`` has coefficient zero.
    """
    _check_index(d, i, j, base=1)
    s = spin_of(d)
    mi, mj = magnetic_number(d, i), magnetic_number(d, j)
    M = int(mi - mj)
    coeffs = {}
    for L, M_ in pob_labels(d):
        if M_ != M:
            coeffs[(L, M_)] = 0.0
            continue
        coeffs[(L, M)] = sqrt((2 * L + 1) / d) * clebsch_gordan(s, mj, L, M, s, mi)
    return coeffs


def expand_standard_wob(d: int, j: int, k: int) -> dict:
    """WOB coefficients of ``|j><k|`` (0-based): ``exp(-2 pi i l j/d)/d`` on ``U_{l,(k-j) mod d}``."""
    wob_basis(d)
    _check_index(d, j, k, base=0)
    return {(l, (k - j) % d): phase(d, -l * j) / d for l in range(d)}


def combine(family, d: int, coeffs: dict) -> np.ndarray:
    """Sum ``coeff * element`` over a label-keyed coefficient map."""
    basis = get_basis(family, d)
    out = np.zeros((d, d), dtype=np.complex128)
    for label, c in coeffs.items():
        if label == IDENTITY:
            out += c * np.eye(d)
        else:
            out += c * basis[label]
    return out


# -- bipartite ---------------------------------------------------------------


@dataclass(frozen=True)
class BipartiteDecomposition:
    """``rho = 1/d^2 + n_i G_i x 1 + m_i 1 x G_i + c_ij G_i x G_j``."""

    dim: int
    family: Family
    n_coeffs: np.ndarray
    m_coeffs: np.ndarray
    c_matrix: np.ndarray
    identity_coeff: complex

    @property
    def labels(self) -> tuple:
        return get_basis(self.family, self.dim).traceless_labels

    def reconstruct(self) -> np.ndarray:
        mats = get_basis(self.family, self.dim).traceless_matrices
        d = self.dim
        eye = np.eye(d)
        out = self.identity_coeff * np.eye(d * d, dtype=np.complex128)
        local_a = np.einsum("k,kij->ij", self.n_coeffs, mats)
        local_b = np.einsum("k,kij->ij", self.m_coeffs, mats)
        out += np.kron(local_a, eye) + np.kron(eye, local_b)
        corr = np.einsum("ab,aij,bkl->ikjl", self.c_matrix, mats, mats).reshape(d * d, d * d)
        return out + corr

    def nonzero_correlations(self, tol: float = DEFAULT_TOL) -> list[tuple[str, str, complex]]:
        labels = self.labels
        rows, cols = np.nonzero(np.abs(self.c_matrix) > tol)
        return [
            (format_label(self.family, labels[a]), format_label(self.family, labels[b]), complex(self.c_matrix[a, b]))
            for a, b in zip(rows, cols)
        ]


def subsystem_dim(rho) -> int:
    n = linalg.as_matrix(rho).shape[0]
    d = isqrt(n)
    if d * d != n or d < 2:
        raise ValueError(f"bipartite operator must have dimension d^2 with d >= 2, got {n}")
    return d


def decompose_bipartite(rho, family, tol: float = DEFAULT_TOL, validate: bool = True) -> BipartiteDecomposition:
    """Project a two-qudit operator onto ``1x1``, ``G_i x 1``, ``1 x G_i`` and ``G_i x G_j``."""
    family = Family.parse(family)
    rho = linalg.as_matrix(rho)
    d = subsystem_dim(rho)
    if validate:
        check_density_matrix(rho, tol)
    basis = get_basis(family, d)
    mats = basis.traceless_matrices
    N = basis.norm
    # index rho as r[i, k, j, l] = <i k| rho |j l>
    r = rho.reshape(d, d, d, d)
    reduced_a = np.einsum("ikjk->ij", r)
    reduced_b = np.einsum("kikj->ij", r)
    n = np.einsum("aij,ij->a", mats.conj(), reduced_a) / (N * d)
    m = np.einsum("aij,ij->a", mats.conj(), reduced_b) / (N * d)
    c = np.einsum("aij,bkl,ikjl->ab", mats.conj(), mats.conj(), r) / (N * N)
    return BipartiteDecomposition(d, family, n, m, c, complex(np.trace(rho)) / (d * d))
