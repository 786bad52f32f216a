"""
Pydantic wire models for the command line: code records, requests,
bounds rows and error payloads.
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class CodeRecord(BaseModel):
    """Code JSON: canonical integer entries of an RREF generator matrix"""
    p: int = Field(description="Field characteristic")
    m: int = Field(description="Extension degree")
    n: int = Field(ge=0, description="Code length")
    k: int = Field(ge=0, description="Dimension (number of generator rows)")
    gen: List[List[int]] = Field(description="Generator rows, entries in [0, p^m)")


class CommandRequest(BaseModel):
    """One parsed command line"""
    model_config = ConfigDict(extra="forbid")

    command: str = Field(description="Subcommand group, e.g. 'selfdual'")
    action: str = Field(description="Action within the group, e.g. 'base'")
    options: Dict[str, Any] = Field(default_factory=dict, description="Typed flag values")
    input_path: Optional[str] = Field(default=None, description="--in")
    output_path: Optional[str] = Field(default=None, description="--out")
    seed: int = Field(default=0, ge=0, description="Seed for randomized actions")
    budget: int = Field(default=2 ** 24, ge=1, description="Min-distance enumeration cap")
    format: Literal["json", "csv"] = Field(default="json", description="Output format")


class BoundsRow(BaseModel):
    q: int
    l: Optional[int] = None
    r: Optional[int] = None
    delta0: float
    delta1: Optional[float] = None
    delta1_exact: Optional[str] = Field(default=None, description="delta_1 as a reduced fraction")
    beats_gv: bool
    borderline: bool = False


class ErrorPayload(BaseModel):
    error: str
    detail: str
    context: Optional[Dict[str, Any]] = None
