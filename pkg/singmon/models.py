from fractions import Fraction
from math import gcd
from functools import reduce
from typing import Any, Dict, List, Optional, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    computed_field,
    field_serializer,
    field_validator,
    model_validator,
)


class FrameShape(BaseModel):
    """Exponent map m -> chi_m standing for the product of (1 - t^m)^chi_m.

    Stored canonically: keys ascending, no zero exponents. Serializes as
    ``{"chi": [[m, chi_m], ...]}``.
    """

    model_config = ConfigDict(frozen=True)

    chi: Dict[int, int] = Field(default_factory=dict)

    @field_validator("chi", mode="before")
    @classmethod
    def _accept_pairs(cls, value: Any) -> Any:
        if isinstance(value, (list, tuple)):
            merged: Dict[int, int] = {}
            for m, c in value:
                merged[int(m)] = merged.get(int(m), 0) + int(c)
            return merged
        return value

    @field_validator("chi")
    @classmethod
    def _canonical(cls, value: Dict[int, int]) -> Dict[int, int]:
        for m in value:
            if m < 1:
                raise ValueError(f"period {m} must be a positive integer")
        return {m: value[m] for m in sorted(value) if value[m] != 0}

    @field_serializer("chi")
    def _dump_chi(self, chi: Dict[int, int]) -> List[List[int]]:
        return [[m, c] for m, c in sorted(chi.items())]

    @property
    def support(self) -> List[int]:
        return list(self.chi)

    @property
    def degree(self) -> int:
        return sum(m * c for m, c in self.chi.items())

    def get(self, m: int) -> int:
        return self.chi.get(m, 0)

    def is_trivial(self) -> bool:
        return not self.chi

    def __hash__(self) -> int:
        return hash(tuple(self.chi.items()))

    def __str__(self) -> str:
        from singmon.processing.frameshape import fs_format

        return fs_format(self)


class IntPoly(BaseModel):
    """Dense integer polynomial, ascending coefficients, trailing zeros trimmed."""

    model_config = ConfigDict(frozen=True)

    coeffs: List[int] = Field(default_factory=list)

    @field_validator("coeffs")
    @classmethod
    def _trim(cls, value: List[int]) -> List[int]:
        end = len(value)
        while end and value[end - 1] == 0:
            end -= 1
        return list(value[:end])

    @property
    def degree(self) -> int:
        # zero polynomial has degree -1
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs))


class PowerSeries(BaseModel):
    model_config = ConfigDict(frozen=True)

    coeffs: List[int]
    order: int

    @model_validator(mode="after")
    def _length(self) -> "PowerSeries":
        if self.order < 0 or len(self.coeffs) != self.order + 1:
            raise ValueError(f"series of order {self.order} needs {self.order + 1} coefficients")
        return self


class WeightSystem(BaseModel):
    """Weights q_1..q_n and degrees d_1..d_{n-2} of a quasihomogeneous ICIS."""

    model_config = ConfigDict(frozen=True)

    weights: List[int]
    degrees: List[int]

    @model_validator(mode="after")
    def _shape(self) -> "WeightSystem":
        n = len(self.weights)
        if n < 3:
            raise ValueError("need at least three weights")
        if len(self.degrees) != n - 2:
            raise ValueError(f"{n} weights need {n - 2} degrees, got {len(self.degrees)}")
        if any(q <= 0 for q in self.weights) or any(d <= 0 for d in self.degrees):
            raise ValueError("weights and degrees must be positive")
        if reduce(gcd, self.weights) != 1:
            raise ValueError(f"weights {self.weights} are not normalized (gcd != 1)")
        return self

    @property
    def n(self) -> int:
        return len(self.weights)


class SeifertPair(BaseModel):
    model_config = ConfigDict(frozen=True)

    alpha: int = Field(ge=2)
    beta: Optional[int] = None

    @model_validator(mode="after")
    def _coprime(self) -> "SeifertPair":
        if self.beta is not None:
            if not 0 < self.beta < self.alpha:
                raise ValueError(f"beta={self.beta} outside (0, {self.alpha})")
            if gcd(self.alpha, self.beta) != 1:
                raise ValueError(f"({self.alpha}, {self.beta}) not coprime")
        return self


class SeifertData(BaseModel):
    """Orbit invariants {g; b; (alpha_i, beta_i)} together with the exponent R."""

    model_config = ConfigDict(frozen=True)

    genus: int = Field(ge=0)
    b: Optional[int] = None
    exponent: int
    pairs: List[SeifertPair] = Field(default_factory=list)

    @field_validator("pairs")
    @classmethod
    def _sorted(cls, value: List[SeifertPair]) -> List[SeifertPair]:
        return sorted(value, key=lambda p: (p.alpha, p.beta or 0))

    @model_validator(mode="after")
    def _congruences(self) -> "SeifertData":
        if self.exponent != 0:
            for p in self.pairs:
                if p.beta is not None and (self.exponent * p.beta - 1) % p.alpha != 0:
                    raise ValueError(f"R*beta != 1 mod alpha for {(p.alpha, p.beta)}")
        return self

    @property
    def alphas(self) -> List[int]:
        return [p.alpha for p in self.pairs]

    @property
    def r(self) -> int:
        return len(self.pairs)

    @property
    def vdeg(self) -> Optional[Fraction]:
        if self.b is None or any(p.beta is None for p in self.pairs):
            return None
        return -self.b + sum((Fraction(p.beta, p.alpha) for p in self.pairs), Fraction(0))


class PoincareBundle(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: FrameShape
    psi: FrameShape
    phi: FrameShape
    phi_tilde: FrameShape

    @model_validator(mode="after")
    def _product(self) -> "PoincareBundle":
        merged = dict(self.p.chi)
        for m, c in self.psi.chi.items():
            merged[m] = merged.get(m, 0) + c
        if FrameShape(chi=merged) != self.phi:
            raise ValueError("phi must equal p * psi")
        return self


class MonodromyResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    charpoly: FrameShape
    mu: int
    lambdas: Dict[int, int] = Field(default_factory=dict)
    exponents: Optional[List[int]] = None


class ResidueResult(BaseModel):
    """Residue of a Frame-shape function at exp(2*pi*i*index/alpha)."""

    model_config = ConfigDict(frozen=True)

    alpha: int
    index: int = 1
    real: float
    imag: float
    pole_order: int
    ledger: Dict[int, int] = Field(default_factory=dict)

    @property
    def value(self) -> complex:
        return complex(self.real, self.imag)


class RootSystemSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    family: str
    rank: int
    cartan: List[List[int]]
    affine_cartan: List[List[int]]
    mckay: List[List[int]]

    @model_validator(mode="after")
    def _matrices(self) -> "RootSystemSpec":
        size = self.rank + 1
        c, b = self.affine_cartan, self.mckay
        if len(c) != size or any(len(row) != size for row in c):
            raise ValueError("affine Cartan matrix has the wrong size")
        for i in range(size):
            if c[i][i] != 2:
                raise ValueError("Cartan diagonal must be 2")
            for j in range(size):
                if c[i][j] != c[j][i]:
                    raise ValueError("Cartan matrix must be symmetric")
                if b[i][j] != (2 if i == j else 0) - c[i][j] or b[i][j] < 0:
                    raise ValueError("McKay matrix must equal 2I - C with nonnegative entries")
        if [row[1:] for row in c[1:]] != self.cartan:
            raise ValueError("finite Cartan matrix must be the affine one without vertex 0")
        return self


class RepVector(BaseModel):
    model_config = ConfigDict(frozen=True)

    v: List[int]


Template = Union[int, str]


class CatalogRecord(BaseModel):
    """One row of the fixture file; string fields are expressions in the family parameter."""

    model_config = ConfigDict(frozen=True)

    name: str
    table: int  # 1 Kleinian, 2 simply elliptic
    group: str = ""
    label: Optional[str] = None
    aliases: List[str] = Field(default_factory=list)
    family: Optional[str] = None
    parameter: Optional[str] = None
    min: Optional[int] = None
    weights: List[Template]
    degrees: List[Template]
    alphas: List[Template] = Field(default_factory=list)
    g: Template
    b: Optional[Template] = None
    R: Template
    pi_A: str
    pi_M: Optional[str] = None
    w: Optional[List[Template]] = None


class CatalogEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    table: int  # 1 Kleinian, 2 simply elliptic
    group: str
    family: Optional[str] = None
    parameter: Optional[int] = None
    weights: WeightSystem
    genus: int
    b: Optional[int] = None
    alphas: List[int] = Field(default_factory=list)
    R: int
    pi_A: FrameShape
    pi_M: Optional[FrameShape] = None
    w: Optional[List[int]] = None


class CatalogDiff(BaseModel):
    entry: str
    field: str
    expected: str
    actual: str


class VerificationReport(BaseModel):
    """Named boolean checks plus free-form details for one verified subject."""

    subject: str
    checks: Dict[str, bool] = Field(default_factory=dict)
    details: Dict[str, Any] = Field(default_factory=dict)
    not_applicable: List[str] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(self.checks.values())


class CatalogReport(BaseModel):
    checked: List[str] = Field(default_factory=list)
    diffs: List[CatalogDiff] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return not self.diffs


class CommandConfig(BaseModel):
    """Resolved CLI invocation; identical configs give identical output."""

    subcommand: str
    params: Dict[str, Any] = Field(default_factory=dict)
    json_output: bool = False
    terms: Optional[int] = None
    seed: Optional[int] = None
