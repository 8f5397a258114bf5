from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import numpy as np

from bethe.core.errors import FactorError, SpecError
from bethe.lib import combinatorics


class EnsembleKind(str, Enum):
    REGULAR = "regular"
    IRREGULAR = "irregular"
    POISSON = "poisson"


class Solver(str, Enum):
    BP = "bp"
    NEWTON = "newton"
    CLOSED_FORM = "closed-form"


class Provenance(str, Enum):
    BP = "bp"
    GRID = "grid"
    NEWTON = "newton"


class OracleMode(str, Enum):
    EXACT = "exact"
    SAMPLED = "sampled"


class Units(str, Enum):
    NATS = "nats"
    BITS = "bits"


class PopulationInit(str, Enum):
    UNIFORM = "uniform"
    ANNEALED = "annealed"
    RANDOM = "random"


@dataclass(frozen=True)
class Alphabet:
    size: int
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.size < 2:
            raise SpecError(f"alphabet size must be >= 2, got {self.size}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.size)))
        if len(self.labels) != self.size:
            raise SpecError(f"alphabet has {len(self.labels)} labels for size {self.size}")
        if len(set(self.labels)) != self.size:
            raise SpecError(f"alphabet labels must be distinct: {self.labels}")

    @classmethod
    def binary(cls) -> "Alphabet":
        return cls(2)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as e:
            raise SpecError(f"unknown symbol {label!r} for alphabet {self.labels}") from e


@dataclass(frozen=True, eq=False)
class FactorTable:
    values: np.ndarray
    alphabet: Alphabet
    perm_invariant: bool = False

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        q = self.alphabet.size
        if values.ndim < 1 or any(dim != q for dim in values.shape):
            raise FactorError(f"factor shape {values.shape} does not match alphabet size {q}")
        if not np.all(np.isfinite(values)):
            raise FactorError("factor values must be finite")
        if np.any(values < 0):
            raise FactorError(f"factor values must be >= 0, found {values.min()}")
        if not np.any(values > 0):
            raise FactorError("factor table is all-zero")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def arity(self) -> int:
        return self.values.ndim

    @property
    def q(self) -> int:
        return self.alphabet.size

    @cached_property
    def support_size(self) -> float:
        """N_f = sum of f over X^r."""
        return float(self.values.sum())

    @cached_property
    def branch_sums(self) -> np.ndarray:
        """S_x = sum_i sum_{x: x_i = x} f(x)."""
        r = self.arity
        total = np.zeros(self.q)
        for i in range(r):
            total += self.values.sum(axis=tuple(j for j in range(r) if j != i))
        return total

    @cached_property
    def classes(self) -> combinatorics.Classes:
        if self.perm_invariant:
            return combinatorics.composition_classes(self.values)
        return combinatorics.dense_classes(self.values)

    @cached_property
    def branch_classes(self) -> combinatorics.BranchClasses:
        if not self.perm_invariant:
            raise FactorError("single-branch classes need a permutation-invariant factor")
        return combinatorics.branch_classes(self.values)


@dataclass(frozen=True, eq=False)
class FieldSpec:
    h: np.ndarray

    def __post_init__(self):
        h = np.array(self.h, dtype=np.float64)
        if h.ndim != 1 or np.any(h < 0) or not np.any(h > 0) or not np.all(np.isfinite(h)):
            raise SpecError(f"field must be a nonnegative vector with a positive entry, got {h}")
        h.setflags(write=False)
        object.__setattr__(self, "h", h)

    @classmethod
    def ones(cls, q: int) -> "FieldSpec":
        return cls(np.ones(q))


@dataclass(frozen=True, eq=False)
class RandomFieldSpec:
    fields: tuple[FieldSpec, ...]
    probs: np.ndarray

    def __post_init__(self):
        probs = np.array(self.probs, dtype=np.float64)
        if not self.fields or len(self.fields) != len(probs):
            raise SpecError("random field needs one probability per field")
        if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-10:
            raise SpecError(f"field probabilities must sum to 1, got {probs.sum()}")
        if len({f.h.shape for f in self.fields}) != 1:
            raise SpecError("all fields must share one alphabet")
        object.__setattr__(self, "fields", tuple(self.fields))
        object.__setattr__(self, "probs", probs)


@dataclass(frozen=True, eq=False)
class RegularSpec:
    l: int
    r: int
    factor: FactorTable

    def __post_init__(self):
        if self.l < 1 or self.r < 1:
            raise SpecError(f"degrees must be >= 1, got l={self.l}, r={self.r}")
        if self.factor.arity != self.r:
            raise SpecError(f"factor arity {self.factor.arity} != r={self.r}")

    @property
    def kind(self) -> EnsembleKind:
        return EnsembleKind.REGULAR

    @property
    def alphabet(self) -> Alphabet:
        return self.factor.alphabet

    @property
    def q(self) -> int:
        return self.factor.q


def _check_degree_law(name: str, law: dict[int, float]) -> dict[int, float]:
    if not law:
        raise SpecError(f"{name} degree distribution is empty")
    if any(d < 1 for d in law):
        raise SpecError(f"{name} degrees must be >= 1, got {sorted(law)}")
    if any(p < 0 for p in law.values()) or abs(sum(law.values()) - 1.0) > 1e-10:
        raise SpecError(f"{name} degree distribution must sum to 1, got {sum(law.values())}")
    return {int(d): float(p) for d, p in sorted(law.items()) if p > 0}


@dataclass(frozen=True, eq=False)
class IrregularSpec:
    L: dict[int, float]
    R: dict[int, float]
    factors: dict[int, FactorTable]

    def __post_init__(self):
        object.__setattr__(self, "L", _check_degree_law("variable", self.L))
        object.__setattr__(self, "R", _check_degree_law("factor", self.R))
        missing = [j for j in self.R if j not in self.factors]
        if missing:
            raise SpecError(f"no factor table for factor degrees {missing}")
        for j in self.R:
            if self.factors[j].arity != j:
                raise SpecError(f"factor for degree {j} has arity {self.factors[j].arity}")
        if len({self.factors[j].alphabet for j in self.R}) != 1:
            raise SpecError("all factor tables must share one alphabet")

    @property
    def kind(self) -> EnsembleKind:
        return EnsembleKind.IRREGULAR

    @property
    def alphabet(self) -> Alphabet:
        return self.factors[next(iter(self.R))].alphabet

    @property
    def q(self) -> int:
        return self.alphabet.size

    @property
    def l_prime(self) -> float:
        """L'(1), mean variable degree."""
        return sum(i * p for i, p in self.L.items())

    @property
    def r_prime(self) -> float:
        return sum(j * p for j, p in self.R.items())


@dataclass(frozen=True, eq=False)
class PoissonSpec:
    alpha: float
    k: int
    factor: FactorTable

    def __post_init__(self):
        if not self.alpha > 0:
            raise SpecError(f"factor density alpha must be > 0, got {self.alpha}")
        if self.k < 1:
            raise SpecError(f"factor degree k must be >= 1, got {self.k}")
        if self.factor.arity != self.k:
            raise SpecError(f"factor arity {self.factor.arity} != k={self.k}")

    @property
    def kind(self) -> EnsembleKind:
        return EnsembleKind.POISSON

    @property
    def alphabet(self) -> Alphabet:
        return self.factor.alphabet

    @property
    def q(self) -> int:
        return self.factor.q


@dataclass
class MessagePair:
    m_vf: np.ndarray
    m_fv: np.ndarray

    @classmethod
    def uniform(cls, q: int) -> "MessagePair":
        return cls(np.full(q, 1.0 / q), np.full(q, 1.0 / q))

    def copy(self) -> "MessagePair":
        return MessagePair(self.m_vf.copy(), self.m_fv.copy())

    def distance(self, other: "MessagePair") -> float:
        """L-infinity distance over both message vectors."""
        return float(
            max(np.max(np.abs(self.m_vf - other.m_vf)), np.max(np.abs(self.m_fv - other.m_fv)))
        )


@dataclass
class PoissonState:
    messages: MessagePair
    e: float

    @property
    def coupling(self) -> float:
        """e * sum_x m_vf(x) m_fv(x); equals alpha*k at a fixed point."""
        return float(self.e * np.dot(self.messages.m_vf, self.messages.m_fv))


@dataclass
class IrregularState:
    messages: MessagePair
    l_w: dict[int, float]
    r_w: dict[int, float]


@dataclass(frozen=True)
class SolveOptions:
    tol: float = 1e-10
    max_iters: int = 10_000
    damping: float = 0.0
    restarts: int = 8
    rng_seed: int = 0

    def __post_init__(self):
        if not self.tol > 0:
            raise SpecError(f"tol must be > 0, got {self.tol}")
        if self.max_iters < 1:
            raise SpecError(f"max_iters must be >= 1, got {self.max_iters}")
        if not 0.0 <= self.damping < 1.0:
            raise SpecError(f"damping must lie in [0, 1), got {self.damping}")
        if self.restarts < 0:
            raise SpecError(f"restarts must be >= 0, got {self.restarts}")


@dataclass
class SolveReport:
    converged: bool
    iterations: int
    residual: float
    objective: float = float("-inf")
    restart: int = 0
    error: str | None = None
    converged_starts: int = 0


@dataclass(frozen=True, eq=False)
class TypeAssignment:
    nu: np.ndarray
    mu: np.ndarray


@dataclass
class LdpcParams:
    omega: float
    h: float
    y: float
    z: float
    residual: float = 0.0

    @property
    def omega_prime(self) -> float:
        return 1.0 - 2.0 * self.omega


@dataclass
class DualPotential:
    tau: np.ndarray


@dataclass(frozen=True)
class NewtonOptions:
    grad_tol: float = 1e-12
    max_iters: int = 100
    backtrack: float = 0.5
    armijo: float = 1e-4
    ridge: float = 1e-12

    def __post_init__(self):
        if not (self.grad_tol > 0 and self.ridge > 0 and self.armijo > 0):
            raise SpecError("Newton tolerances must be positive")
        if not 0.0 < self.backtrack < 1.0:
            raise SpecError(f"backtracking factor must lie in (0, 1), got {self.backtrack}")


@dataclass
class NewtonReport:
    converged: bool
    iterations: int
    grad_norm: float
    history: list[float] = field(default_factory=list)
    reduced_classes: int = 0


@dataclass
class NewtonResult:
    """Optimum of the fixed-type inner problem.

    `entropy_energy` is max_mu H(mu) + sum mu log f under the marginal constraint,
    -inf when infeasible. `mu` holds per-class probabilities over `classes`.
    """

    nu: np.ndarray
    entropy_energy: float
    potential: DualPotential | None
    mu: np.ndarray | None
    classes: combinatorics.Classes | None
    report: NewtonReport
    certificate: np.ndarray | None = None

    @property
    def feasible(self) -> bool:
        return np.isfinite(self.entropy_energy)


@dataclass
class GrowthPoint:
    nu: np.ndarray
    value: float
    converged: bool
    iterations: int
    solver: Solver


@dataclass
class AnnealedResult:
    value: float
    report: SolveReport
    provenance: Provenance
    messages: MessagePair | None = None
    nu: np.ndarray | None = None
    boundary: bool = False
    design_rate: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def converged(self) -> bool:
        """Whether BP itself converged; provenance records any grid or Newton fallback."""
        return self.report.converged


@dataclass(frozen=True)
class ConstraintSet:
    """Linear constraints sum_x a_k(x) nu(x) = b_k and sum_x c_k(x) mu(x) = d_k."""

    nu_rows: tuple[np.ndarray, ...] = ()
    nu_rhs: tuple[float, ...] = ()
    mu_rows: tuple[np.ndarray, ...] = ()
    mu_rhs: tuple[float, ...] = ()


@dataclass
class ConstrainedResult:
    value: float
    nu: np.ndarray
    report: NewtonReport


@dataclass
class StabilityReport:
    matrix: np.ndarray
    eigenvalues: np.ndarray
    trivial_eigenvalue: float
    max_nontrivial_abs: float
    stable: bool
    marginal: bool
    symmetric: bool


@dataclass
class Population:
    members: np.ndarray

    def __post_init__(self):
        if self.members.ndim != 2 or self.members.shape[0] < 100:
            raise SpecError(f"population needs >= 100 members, got shape {self.members.shape}")

    @property
    def size(self) -> int:
        return self.members.shape[0]

    @classmethod
    def delta(cls, message: np.ndarray, size: int) -> "Population":
        return cls(np.tile(np.asarray(message, dtype=np.float64), (size, 1)))


@dataclass(frozen=True)
class PdOptions:
    population: int = 10_000
    sweeps: int = 1_000
    samples: int = 100_000
    rng_seed: int = 0
    blocks: int = 8

    def __post_init__(self):
        if self.population < 100:
            raise SpecError(f"population size must be >= 100, got {self.population}")
        if self.sweeps < 1 or self.samples < 2 or self.blocks < 1:
            raise SpecError("sweeps, samples and blocks must be positive")


@dataclass
class PdReport:
    sweeps: int
    resampled: int
    drift: float
    equilibrated: bool
    halves: tuple[float, float]


@dataclass
class RsResult:
    value: float
    stderr: float
    report: PdReport
    init: PopulationInit | None = None


@dataclass
class EqualityReport:
    annealed: float
    rs: float
    stderr: float
    difference: float
    within_tolerance: bool


@dataclass(frozen=True, eq=False)
class FiniteTypePair:
    v: np.ndarray
    u: np.ndarray


@dataclass
class RunConfig:
    command: str
    ensemble: dict
    factor: str
    q: int = 2
    output: str | None = None
    grid: int = 201
    solve: SolveOptions = field(default_factory=SolveOptions)
    newton: NewtonOptions = field(default_factory=NewtonOptions)
    seed: int = 0
    threads: int | None = None
    units: Units = Units.NATS

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "ensemble": self.ensemble,
            "factor": self.factor,
            "q": self.q,
            "grid": self.grid,
            "tol": self.solve.tol,
            "max_iters": self.solve.max_iters,
            "damping": self.solve.damping,
            "restarts": self.solve.restarts,
            "seed": self.seed,
            "threads": self.threads,
            "units": self.units.value,
        }
