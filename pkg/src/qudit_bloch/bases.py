"""The three operator bases for a d-level system.

* generalized Gell-Mann matrices (GGM): ``d^2 - 1`` Hermitian traceless
  matrices, ``Tr(A_i A_j) = 2 delta_ij``; the identity is kept outside the basis.
* polarization operators (POB): ``T_LM`` built from Clebsch-Gordan
  coefficients, orthonormal, ``T_00 = 1/sqrt(d)`` stored first.
* Weyl operators (WOB): unitary ``U_nm``, ``Tr(U^dagger U') = d delta``,
  ``U_00 = 1`` stored first.

Labels: GGM ``("s", j, k)``, ``("a", j, k)``, ``("d", l)`` with 1-based
indices; POB ``(L, M)``; WOB ``(n, m)`` with 0-based indices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import sqrt

import numpy as np

from .angular import clebsch_gordan

MAX_DIM = 32

# key used for the identity coefficient in GGM expansions
IDENTITY = ("I",)


class Family(str, enum.Enum):
    GGM = "ggm"
    POB = "pob"
    WOB = "wob"

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown basis family {value!r}; expected one of ggm, pob, wob") from None


NORM_CONSTANT = {Family.GGM: 2.0, Family.POB: 1.0}


def norm_constant(family, d: int) -> float:
    """``N`` in ``Tr(A_i^dagger A_j) = N delta_ij``."""
    family = Family.parse(family)
    return float(d) if family is Family.WOB else NORM_CONSTANT[family]


def _check_dim(d: int) -> None:
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool):
        raise TypeError(f"dimension must be an integer, got {d!r}")
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    if d > MAX_DIM:
        raise ValueError(f"dimension above {MAX_DIM} is not supported, got {d}")


@dataclass(frozen=True)
class OperatorBasis:
    """An ordered family of ``d x d`` matrices with common norm constant."""

    family: Family
    dim: int
    labels: tuple
    matrices: np.ndarray  # shape (count, d, d), read-only
    norm: float

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(zip(self.labels, self.matrices))

    def __getitem__(self, label) -> np.ndarray:
        return self.matrices[self.index(label)]

    def index(self, label) -> int:
        return self.labels.index(tuple(label))

    @property
    def has_identity(self) -> bool:
        return self.family is not Family.GGM

    @property
    def traceless_labels(self) -> tuple:
        """Labels of the Bloch-vector elements (identity excluded)."""
        return self.labels[1:] if self.has_identity else self.labels

    @property
    def traceless_matrices(self) -> np.ndarray:
        return self.matrices[1:] if self.has_identity else self.matrices

    def gram(self) -> np.ndarray:
        """Matrix of ``Tr(A_i^dagger A_j)``."""
        flat = self.matrices.reshape(len(self), -1)
        return flat.conj() @ flat.T


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


# -- generalized Gell-Mann ---------------------------------------------------


def ggm_labels(d: int) -> list[tuple]:
    pairs = [(j, k) for j in range(1, d + 1) for k in range(j + 1, d + 1)]
    return (
        [("s", j, k) for j, k in pairs]
        + [("a", j, k) for j, k in pairs]
        + [("d", l) for l in range(1, d)]
    )


def ggm_element(d: int, label) -> np.ndarray:
    """One generalized Gell-Mann matrix in the standard basis."""
    _check_dim(d)
    kind, *idx = label
    m = np.zeros((d, d), dtype=np.complex128)
    if kind in ("s", "a"):
        if len(idx) != 2:
            raise ValueError(f"invalid GGM label {label!r}")
        j, k = idx
        if not 1 <= j < k <= d:
            raise ValueError(f"GGM label {label!r} needs 1 <= j < k <= {d}")
        if kind == "s":
            m[j - 1, k - 1] = m[k - 1, j - 1] = 1.0
        else:
            m[j - 1, k - 1] = -1j
            m[k - 1, j - 1] = 1j
        return m
    if kind == "d":
        if len(idx) != 1:
            raise ValueError(f"invalid GGM label {label!r}")
        (l,) = idx
        if not 1 <= l <= d - 1:
            raise ValueError(f"diagonal GGM index must satisfy 1 <= l <= {d - 1}, got {l}")
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        return np.diag(sqrt(2.0 / (l * (l + 1))) * diag).astype(np.complex128)
    raise ValueError(f"unknown GGM kind {kind!r}")


@lru_cache(maxsize=None)
def ggm_basis(d: int) -> OperatorBasis:
    """Symmetric, then antisymmetric (both lexicographic in ``(j, k)``), then diagonal."""
    _check_dim(d)
    labels = ggm_labels(d)
    mats = np.array([ggm_element(d, lab) for lab in labels])
    return OperatorBasis(Family.GGM, d, tuple(labels), _frozen(mats), 2.0)


# -- polarization operators --------------------------------------------------


def spin_of(d: int) -> Fraction:
    return Fraction(d - 1, 2)


def magnetic_number(d: int, k: int) -> Fraction:
    """``m_k = s - k + 1`` for the 1-based standard index ``k``."""
    return spin_of(d) - k + 1


def pob_labels(d: int) -> list[tuple[int, int]]:
    return [(L, M) for L in range(d) for M in range(-L, L + 1)]


def pob_element(d: int, L: int, M: int) -> np.ndarray:
    """``T_LM = sqrt((2L+1)/(2s+1)) sum_kl C^{s m_k}_{s m_l, L M} |k><l|``."""
    _check_dim(d)
    if not (0 <= L <= d - 1 and -L <= M <= L):
        raise ValueError(f"invalid polarization label (L={L}, M={M}) for d={d}")
    s = spin_of(d)
    pref = sqrt((2 * L + 1) / d)
    m = np.zeros((d, d), dtype=np.complex128)
    for k in range(1, d + 1):
        mk = magnetic_number(d, k)
        ml = mk - M
        if abs(ml) > s:
            continue
        l = int(s - ml) + 1
        m[k - 1, l - 1] = pref * clebsch_gordan(s, ml, L, M, s, mk)
    return m


@lru_cache(maxsize=None)
def pob_basis(d: int) -> OperatorBasis:
    """Ordered by ``L`` ascending then ``M`` ascending; ``T_00`` first."""
    _check_dim(d)
    labels = pob_labels(d)
    mats = np.array([pob_element(d, L, M) for L, M in labels])
    return OperatorBasis(Family.POB, d, tuple(labels), _frozen(mats), 1.0)


# -- Weyl operators ----------------------------------------------------------


def phase(d: int, x: int) -> complex:
    """``exp(2 pi i x / d)``, evaluated from the reduced angle."""
    angle = 2.0 * np.pi * (x % d) / d
    return complex(np.cos(angle), np.sin(angle))


def phase_sum(d: int, x: int) -> complex:
    """``sum_{n=0}^{d-1} exp(2 pi i n x / d)``; equals ``d`` if ``x = 0 mod d`` else 0."""
    return sum(phase(d, n * x) for n in range(d))


def wob_labels(d: int) -> list[tuple[int, int]]:
    return [(n, m) for n in range(d) for m in range(d)]


def wob_element(d: int, n: int, m: int) -> np.ndarray:
    """``U_nm = sum_k exp(2 pi i k n / d) |k><(k + m) mod d|``."""
    _check_dim(d)
    if not (0 <= n < d and 0 <= m < d):
        raise ValueError(f"Weyl indices must lie in [0, {d - 1}], got ({n}, {m})")
    u = np.zeros((d, d), dtype=np.complex128)
    for k in range(d):
        u[k, (k + m) % d] = phase(d, k * n)
    return u


@lru_cache(maxsize=None)
def wob_basis(d: int) -> OperatorBasis:
    """Lexicographic in ``(n, m)``; ``U_00`` first."""
    _check_dim(d)
    labels = wob_labels(d)
    mats = np.array([wob_element(d, n, m) for n, m in labels])
    return OperatorBasis(Family.WOB, d, tuple(labels), _frozen(mats), float(d))


def get_basis(family, d: int) -> OperatorBasis:
    family = Family.parse(family)
    return {Family.GGM: ggm_basis, Family.POB: pob_basis, Family.WOB: wob_basis}[family](d)


# -- label strings -----------------------------------------------------------


def format_label(family, label) -> str:
    """``"s:j,k"``, ``"a:j,k"``, ``"d:l"`` for GGM; ``"L,M"`` / ``"n,m"`` otherwise."""
    family = Family.parse(family)
    if family is Family.GGM:
        kind, *idx = label
        return f"{kind}:{','.join(str(i) for i in idx)}"
    return f"{label[0]},{label[1]}"


def parse_label(family, text: str) -> tuple:
    family = Family.parse(family)
    try:
        if family is Family.GGM:
            kind, rest = text.split(":")
            return (kind, *(int(i) for i in rest.split(",")))
        a, b = text.split(",")
        return (int(a), int(b))
    except ValueError:
        raise ValueError(f"malformed {family.value} label {text!r}") from None
