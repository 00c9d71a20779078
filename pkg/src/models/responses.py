from pydantic import BaseModel, Field
from typing import Any, Dict, List, Optional, Union


class HypothesisCheck(BaseModel):
    name: str
    value: Union[bool, str]
    certificate: Optional[str] = None


class Verdict(BaseModel):
    text: str
    keys: List[str] = Field(default_factory=list)
    citations: List[str] = Field(default_factory=list)


class ReportWarning(BaseModel):
    code: str
    message: str


class ReportError(BaseModel):
    code: str
    message: str
    locus: Optional[str] = None


class ClassificationReport(BaseModel):
    """Outcome of one command on one document."""

    instance: str
    command: str
    hypotheses: List[HypothesisCheck] = Field(default_factory=list)
    verdict: Optional[Verdict] = None
    results: List[str] = Field(default_factory=list)
    certificates: Dict[str, Any] = Field(default_factory=dict)
    warnings: List[ReportWarning] = Field(default_factory=list)
    error: Optional[ReportError] = None
    exit_code: int = 0

    def hypothesis(self, name: str) -> Optional[HypothesisCheck]:
        return next((h for h in self.hypotheses if h.name == name), None)

    @property
    def failed_hypotheses(self) -> List[str]:
        return [h.name for h in self.hypotheses if h.value is False]

    @property
    def warning_codes(self) -> List[str]:
        return [w.code for w in self.warnings]
