"""
JSON model descriptors:

    {"model": "basic" | "twisted" | "custom", "r": ..., "patches": [...], "cone_R": ...}
"""

import json
from pathlib import Path
from typing import Annotated, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, ValidationError, model_validator

from ..errors import ModelDescriptorError
from ..geometry.profiles import EllipsePatch
from .triple import AdmissibleTriple, custom_triple, triple_by_name


class PatchSpec(BaseModel):
    """One ellipse patch α(u−a)² + βv² ≤ 1 restricted to u_range × v_range."""

    model_config = ConfigDict(extra="forbid")

    a: float = 0.0
    alpha: PositiveFloat
    beta: PositiveFloat
    u_range: Tuple[float, float] = (-1.0, 1.0)
    v_range: Tuple[float, float] = (-1.0, 1.0)
    name: str = ""

    @model_validator(mode="after")
    def _check_patch(self) -> "PatchSpec":
        for label, (lo, hi) in (("u_range", self.u_range), ("v_range", self.v_range)):
            if lo > hi:
                raise ValueError(f"{label} is empty: [{lo}, {hi}]")
        # the profile gauge is taken from the origin
        if self.alpha * self.a * self.a > 1.0:
            raise ValueError(f"ellipse centred at u={self.a} with alpha={self.alpha} excludes the origin")
        return self

    def to_patch(self) -> EllipsePatch:
        return EllipsePatch(
            a=self.a, alpha=self.alpha, beta=self.beta,
            u_range=self.u_range, v_range=self.v_range, name=self.name,
        )


class ModelDescriptor(BaseModel):
    """Canonical models take no parameters; custom models need all three."""

    model_config = ConfigDict(extra="forbid")

    model: Literal["basic", "twisted", "custom"]
    r: Optional[PositiveFloat] = None
    patches: Optional[Annotated[List[PatchSpec], Field(min_length=1)]] = None
    cone_R: Optional[PositiveFloat] = None

    @model_validator(mode="after")
    def _check_overrides(self) -> "ModelDescriptor":
        given = [key for key in ("r", "patches", "cone_R") if getattr(self, key) is not None]
        if self.model != "custom" and given:
            raise ValueError(f"canonical model '{self.model}' rejects overrides: {', '.join(given)}")
        if self.model == "custom":
            missing = [key for key in ("r", "patches", "cone_R") if getattr(self, key) is None]
            if missing:
                raise ValueError(f"custom model needs {', '.join(missing)}")
        return self

    def to_triple(self) -> AdmissibleTriple:
        if self.model != "custom":
            return triple_by_name(self.model)
        return custom_triple(self.r, [spec.to_patch() for spec in self.patches], self.cone_R)


def parse_descriptor(data: Union[str, dict]) -> ModelDescriptor:
    """Validate a descriptor given as JSON text or an already-parsed dict."""
    try:
        payload = json.loads(data) if isinstance(data, str) else data
        return ModelDescriptor.model_validate(payload)
    except json.JSONDecodeError as e:
        raise ModelDescriptorError(f"descriptor is not valid JSON: {e}") from e
    except ValidationError as e:
        raise ModelDescriptorError(f"invalid model descriptor: {e}") from e


def load_descriptor(path: Union[str, Path]) -> ModelDescriptor:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ModelDescriptorError(f"cannot read descriptor {path}: {e}") from e
    return parse_descriptor(text)
