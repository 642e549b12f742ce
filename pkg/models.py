"""Domain models for the JCEntangle toolkit."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Tuple

import numpy as np

from errors import DomainError, SweepConfigError

# Dense complex128 2-D array, row-major. Matrices are never mutated after construction.
ComplexMatrix = np.ndarray
ComplexVector = np.ndarray

# Basis order of every two-atom operator: atom 1 is the first atom through the cavity.
TWO_ATOM_BASIS = ("e1e2", "e1g2", "g1e2", "g1g2")


def frozen_array(values, dtype=complex) -> np.ndarray:
    """Copy ``values`` into a read-only array."""
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


def rabi_angle(gt: float) -> float:
    """Validate a Rabi angle gt (finite, nonnegative) and return it as a float."""
    value = float(gt)
    if not math.isfinite(value) or value < 0:
        raise DomainError(f"Rabi angle gt must be finite and >= 0, got {gt!r}")
    return value


class FieldKind(str, enum.Enum):
    """Photon statistics of the cavity field."""

    FOCK = "fock"
    THERMAL = "thermal"


@dataclass(frozen=True, eq=False)
class PhotonDistribution:
    """Photon-number weights P_n, n = 0 .. len(weights) - 1."""

    weights: np.ndarray
    kind: FieldKind
    nominal_mean: float
    tail_mass: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", frozen_array(self.weights, float))
        if self.weights.ndim != 1 or not np.all(np.isfinite(self.weights)):
            raise DomainError("photon weights must be a finite 1-D sequence")
        if np.any(self.weights < 0):
            raise DomainError(f"photon weights must be nonnegative, got minimum {self.weights.min():g}")

    @property
    def support_size(self) -> int:
        return int(self.weights.size)

    @property
    def n_max(self) -> int:
        return self.support_size - 1

    @property
    def total_weight(self) -> float:
        return math.fsum(self.weights)

    def photon_numbers(self) -> np.ndarray:
        return np.arange(self.support_size)

    def __repr__(self) -> str:
        return (
            f"<PhotonDistribution {self.kind.value} mean={self.nominal_mean:g} "
            f"support={self.support_size} tail={self.tail_mass:.3g}>"
        )


@dataclass(frozen=True)
class TwoAtomCoefficients:
    """Amplitudes of |e1e2,n>, |e1g2,n+1>, |g1e2,n+1>, |g1g2,n+2> after both passages."""

    n: int
    alpha1: float
    alpha2: float
    alpha3: float
    alpha4: float

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.alpha1, self.alpha2, self.alpha3, self.alpha4)

    @property
    def norm_squared(self) -> float:
        return math.fsum(a * a for a in self.as_tuple())


@dataclass(frozen=True, eq=False)
class TwoAtomDensity:
    """Reduced 4x4 two-atom density matrix in the ``TWO_ATOM_BASIS`` order."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", frozen_array(self.matrix, complex))

    @property
    def populations(self) -> np.ndarray:
        return self.matrix.diagonal().real.copy()

    @property
    def coherence(self) -> complex:
        """The <e1g2|rho|g1e2> element."""
        return complex(self.matrix[1, 2])

    def swapped(self) -> "TwoAtomDensity":
        """Same state with the roles of atom 1 and atom 2 exchanged."""
        order = [0, 2, 1, 3]
        return TwoAtomDensity(self.matrix[np.ix_(order, order)])

    def __repr__(self) -> str:
        pops = ", ".join(f"{p:.5f}" for p in self.populations)
        return f"<TwoAtomDensity diag=({pops}) coherence={self.coherence.real:.5f}>"


@dataclass(frozen=True)
class EntanglementResult:
    """Concurrence, entanglement of formation and the descending lambda spectrum."""

    concurrence: float
    eof: float
    lambdas: Tuple[float, float, float, float]


@dataclass(frozen=True)
class TruncatedSpace:
    """Fock levels 0 .. field_dim - 1 under atom (x) atom (x) field."""

    field_dim: int

    @property
    def atom_field_dim(self) -> int:
        return 2 * self.field_dim

    @property
    def total_dim(self) -> int:
        return 4 * self.field_dim


@dataclass(frozen=True)
class SweepConfig:
    """One gt sweep for one field."""

    field_kind: FieldKind
    field_param: float
    gt_min: float
    gt_max: float
    steps: int
    tail_epsilon: float = 1e-12
    verify: bool = False
    output_path: Optional[Path] = None

    def validate(self) -> "SweepConfig":
        if not (math.isfinite(self.gt_min) and math.isfinite(self.gt_max)):
            raise SweepConfigError("gt range must be finite")
        if self.gt_min < 0:
            raise SweepConfigError(f"gt_min must be >= 0, got {self.gt_min}")
        if not self.gt_min < self.gt_max:
            raise SweepConfigError(f"gt_min ({self.gt_min}) must be below gt_max ({self.gt_max})")
        if self.steps < 2:
            raise SweepConfigError(f"steps must be >= 2, got {self.steps}")
        if self.field_param < 0 or not math.isfinite(self.field_param):
            raise SweepConfigError(f"field parameter must be finite and >= 0, got {self.field_param}")
        if self.field_kind is FieldKind.FOCK and not float(self.field_param).is_integer():
            raise SweepConfigError(f"Fock photon number must be an integer, got {self.field_param}")
        if self.field_kind is FieldKind.THERMAL and not 0 < self.tail_epsilon <= 1e-6:
            raise SweepConfigError(f"tail epsilon must lie in (0, 1e-6], got {self.tail_epsilon}")
        return self


@dataclass(frozen=True)
class SweepRow:
    """One sweep grid point."""

    gt: float
    concurrence: float
    eof: float


@dataclass(frozen=True)
class SweepSummary:
    """Peak and average entanglement over a sweep."""

    peak_eof: float
    peak_gt: float
    mean_eof: float
    entangled_fraction: float


@dataclass(frozen=True)
class FieldStatistics:
    """Mean photon number and variance metric of a cavity field."""

    kind: FieldKind
    nominal_mean: float
    mean_photon: float
    variance_metric: Optional[float]
    support_size: int
    tail_mass: float

    @property
    def nonclassical(self) -> Optional[bool]:
        if self.variance_metric is None:
            return None
        return self.variance_metric < 1.0


@dataclass(frozen=True)
class PointReport:
    """Everything computed at a single (field, gt) point."""

    gt: float
    density: TwoAtomDensity
    result: EntanglementResult
    xstate_concurrence: float
    coefficients: Optional[TwoAtomCoefficients] = None


@dataclass(frozen=True, eq=False)
class FigureSeries:
    """E_F curves over a shared gt grid, one column per field, plus the files written."""

    name: str
    gt: np.ndarray
    columns: Dict[str, np.ndarray]
    csv_path: Optional[Path] = None
    script_path: Optional[Path] = None

    def peak(self, label: str) -> float:
        return float(np.max(self.columns[label]))
