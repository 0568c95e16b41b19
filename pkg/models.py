from pydantic import BaseModel, Field, field_validator, model_validator
from typing import Optional, List, Dict, Union

# A polynomial is a list of coefficient strings, lowest degree first.
# A rational function is either such a list or {"num": [...], "den": [...]}.
RatFuncJson = Union[List[str], Dict[str, List[str]]]


def _stringify(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, list):
        return [_stringify(v) for v in value]
    if isinstance(value, dict):
        return {k: _stringify(v) for k, v in value.items()}
    return value


class ProblemFile(BaseModel):
    """Model for a parametric lattice problem file."""
    m: int
    basis: List[List[List[str]]]
    target: Optional[List[RatFuncJson]] = None
    delta: Optional[str] = None
    name: Optional[str] = None
    description: Optional[str] = None

    @field_validator("basis", "target", mode="before")
    @classmethod
    def _integers_as_strings(cls, value):
        return _stringify(value)

    @model_validator(mode="after")
    def _check_shape(self):
        if self.m < 1:
            raise ValueError("m must be positive")
        for i, row in enumerate(self.basis):
            if len(row) != self.m:
                raise ValueError(f"basis vector {i + 1} has {len(row)} entries, expected {self.m}")
        if len(self.basis) > self.m:
            raise ValueError(f"{len(self.basis)} basis vectors cannot be independent in dimension {self.m}")
        if self.target is not None and len(self.target) != self.m:
            raise ValueError(f"target has {len(self.target)} entries, expected {self.m}")
        return self


class EqpFuncModel(BaseModel):
    """Model for an eventually quasi-polynomial function in t."""
    threshold: int
    modulus: int
    pieces: List[List[str]]


class LeafModel(BaseModel):
    """Model for one progression t = modulus*s + residue of a reduced basis."""
    modulus: int
    residue: int
    threshold: int
    basis: List[List[List[str]]]
    basis_t: List[List[List[str]]]
    transcript: List[str] = []


class ReducedOutputModel(BaseModel):
    """Model for the output of the reduce command."""
    delta: str
    modulus: int
    threshold: int
    leaves: List[LeafModel]
    verified_samples: List[int] = []
    verification: Optional["VerificationReport"] = None


class FormulaLeafModel(BaseModel):
    """Model for the answer on one progression of t."""
    modulus: int
    residue: int
    threshold: int
    vector: List[List[str]]
    vector_t: List[List[str]]
    coefficients: List[List[str]]
    value: RatFuncJson


class FormulaModel(BaseModel):
    """Model for an EQP vector formula."""
    modulus: int
    threshold: int
    leaves: List[FormulaLeafModel]
    coordinates: List[EqpFuncModel]


class CheckResult(BaseModel):
    """Model for one check at one sampled value of t."""
    check: str
    t: Optional[int] = None
    passed: bool
    detail: Optional[str] = None


class LeafReport(BaseModel):
    """Model for the checks run on one progression."""
    modulus: int
    residue: int
    threshold: int
    samples: List[int] = []
    checks: List[CheckResult] = []
    counterexample: Optional[int] = None


class VerificationReport(BaseModel):
    """Model for a verification report."""
    passed: bool
    leaves: List[LeafReport] = []
    seed: Optional[int] = None
    trials: Optional[int] = None

    @property
    def failures(self) -> List[CheckResult]:
        return [c for leaf in self.leaves for c in leaf.checks if not c.passed]

    @property
    def verified_samples(self) -> List[int]:
        return sorted({t for leaf in self.leaves for t in leaf.samples})


class SolveResult(BaseModel):
    """Model for the output of the svp and cvp commands."""
    problem: str  # "svp" or "cvp"
    formula: FormulaModel
    threshold: int
    verified_samples: List[int] = []
    verification: Optional[VerificationReport] = None


class OracleResult(BaseModel):
    """Model for a brute-force answer at a single value of t."""
    problem: str
    t: int
    vector: List[str]
    value: str


class ProblemRequest(BaseModel):
    """Model for a request carrying a problem."""
    problem: ProblemFile
    delta: Optional[str] = None
    samples: Optional[int] = None
    verify: bool = True


class OracleRequest(BaseModel):
    """Model for a brute-force oracle request."""
    problem: ProblemFile
    at: int = Field(ge=0)
    kind: Optional[str] = None  # "svp" or "cvp"; cvp when the problem has a target


class FuzzRequest(BaseModel):
    """Model for a randomized verification run."""
    seed: int = 0
    trials: int = 20
    samples: Optional[int] = None

ReducedOutputModel.model_rebuild()
