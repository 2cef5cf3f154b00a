"""
Config Schemas - pydantic models for process specs and run configurations

A process is given either by catalog name (plus parameter overrides) or
inline:

    {"drift": 0.0, "sigma2": 1.0, "atoms": [[1.0, 0.5]],
     "density": {"kind": "gamma", "params": {"c": 1, "beta": 1}, "support": "positive"},
     "sampler": "composite", "flags": {"has_density": true, "density_support": "full-line"}}
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import pydantic
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from levymart import catalog
from levymart.errors import ValidationError
from levymart.levy_core import DENSITY_KINDS, DensityPiece, ProcessFlags, ProcessSpec, make_spec

SUPPORT_ALIASES = {
    'positive': (0.0, float('inf')),
    'negative': (float('-inf'), 0.0),
}


class DensityConfig(BaseModel):
    model_config = ConfigDict(extra='forbid')

    kind: str
    params: Dict[str, float]
    support: Union[Literal['positive', 'negative'], Tuple[float, float]] = 'positive'

    @field_validator('kind')
    @classmethod
    def known_kind(cls, value):
        if value not in DENSITY_KINDS:
            raise ValueError(f"unknown density kind '{value}'; known: {sorted(DENSITY_KINDS)}")
        return value

    @model_validator(mode='after')
    def params_match_kind(self):
        expected = DENSITY_KINDS[self.kind].param_names
        if set(self.params) != set(expected):
            raise ValueError(f"density kind '{self.kind}' takes parameters {list(expected)}, got {sorted(self.params)}")
        return self

    def to_piece(self) -> DensityPiece:
        lo, hi = SUPPORT_ALIASES[self.support] if isinstance(self.support, str) else self.support
        params = tuple(self.params[name] for name in DENSITY_KINDS[self.kind].param_names)
        return DensityPiece(self.kind, params, lo, hi)


class FlagsConfig(BaseModel):
    model_config = ConfigDict(extra='forbid')

    has_density: bool = False
    density_support: Literal['full-line', 'half-line-positive', 'none'] = 'none'
    cb1_density: Optional[bool] = None

    def to_flags(self) -> ProcessFlags:
        return ProcessFlags(self.has_density, self.density_support, self.cb1_density)


class ProcessConfig(BaseModel):
    model_config = ConfigDict(extra='forbid')

    name: Optional[str] = None
    params: Dict[str, float] = Field(default_factory=dict)
    drift: float = 0.0
    sigma2: float = Field(0.0, ge=0.0)
    atoms: List[Tuple[float, float]] = Field(default_factory=list)
    density: List[DensityConfig] = Field(default_factory=list)
    sampler: Optional[Literal['gaussian', 'compound-poisson', 'gamma-subordinator', 'composite']] = None
    flags: Optional[FlagsConfig] = None

    @field_validator('density', mode='before')
    @classmethod
    def single_density(cls, value):
        if isinstance(value, dict):
            return [value]
        return value

    @model_validator(mode='after')
    def catalog_or_inline(self):
        inline = self.drift != 0 or self.sigma2 != 0 or self.atoms or self.density or self.sampler or self.flags
        if self.name is not None and inline:
            raise ValueError("give either a catalog name with params or an inline triplet, not both")
        if self.name is None and self.params:
            raise ValueError("params overrides need a catalog name")
        return self

    def to_spec(self) -> ProcessSpec:
        if self.name is not None:
            return catalog.get_process(self.name, self.params)
        return make_spec(
            drift=self.drift,
            sigma2=self.sigma2,
            atoms=self.atoms,
            pieces=[d.to_piece() for d in self.density],
            sampler=self.sampler,
            flags=self.flags.to_flags() if self.flags else None,
        )


class RunConfig(BaseModel):
    """Everything needed to re-run a command; echoed into every report."""

    model_config = ConfigDict(extra='forbid')

    command: str
    process: Optional[ProcessConfig] = None
    options: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    output: Optional[str] = None
    tolerances: Dict[str, float] = Field(default_factory=dict)


def _explain(error: pydantic.ValidationError) -> str:
    parts = []
    for item in error.errors():
        where = '.'.join(str(loc) for loc in item['loc']) or 'config'
        parts.append(f"{where}: {item['msg']}")
    return '; '.join(parts)


def parse_process(data: Union[str, Dict[str, Any]]) -> ProcessConfig:
    """Validate a process given as a catalog name, a JSON string or a dict."""
    if isinstance(data, str):
        text = data.strip()
        if not text.startswith('{'):
            return ProcessConfig(name=text)
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValidationError(f"process config is not valid JSON: {e}")
    try:
        return ProcessConfig.model_validate(data)
    except pydantic.ValidationError as e:
        raise ValidationError(f"invalid process config: {_explain(e)}")


def resolve_process(
    process: Union[str, Dict[str, Any], ProcessConfig], params: Optional[Dict[str, float]] = None,
) -> Tuple[ProcessConfig, ProcessSpec]:
    """Catalog name, JSON text, '@path', dict or ProcessConfig -> (config, spec)."""
    if isinstance(process, ProcessConfig):
        cfg = process
    elif isinstance(process, str) and process.startswith('@'):
        cfg = load_process_file(process[1:])
    else:
        cfg = parse_process(process)
    if params:
        if cfg.name is None:
            raise ValidationError("parameter overrides apply to catalog processes only")
        cfg = cfg.model_copy(update={'params': {**cfg.params, **params}})
    return cfg, cfg.to_spec()


def load_process_file(path: Union[str, Path]) -> ProcessConfig:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ValidationError(f"cannot read process config '{path}': {e}")
    return parse_process(text)


def parse_run_config(data: Dict[str, Any]) -> RunConfig:
    try:
        return RunConfig.model_validate(data)
    except pydantic.ValidationError as e:
        raise ValidationError(f"invalid run config: {_explain(e)}")
