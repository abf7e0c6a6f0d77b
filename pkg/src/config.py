"""
Configuration for verification runs.

Defaults live on VerifyConfig. A key=value file (path from
RAMANUJAN_VERIFY_CONFIG or --config) overrides them, and explicit
overrides from the command line win over both.
"""

import logging
import os
from pathlib import Path
from typing import Dict, Mapping, Optional, Union

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import ConfigurationError
from .models import ContourSpec, QuadratureConfig, SummationConfig, AccelerationKind


logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "RAMANUJAN_VERIFY_CONFIG"


class VerifyConfig(BaseModel):
    """Every tolerance and work cap used by a run."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    contour_tol: float = Field(default=1e-15, gt=0.0)
    contour_nodes: int = Field(default=20, ge=4)
    residue_tol: float = Field(default=1e-16, gt=0.0)
    residue_max_terms: int = Field(default=400, ge=10)
    residue_max_w: float = Field(default=4.0, gt=0.0)
    quad_tol: float = Field(default=1e-12, gt=0.0)
    quad_max_panels: int = Field(default=200_000, ge=1)
    series_tol: float = Field(default=1e-12, gt=0.0)
    series_max_terms: int = Field(default=400, ge=10)
    identity_tol: float = Field(default=1e-8, gt=0.0)
    route_rtol: float = Field(default=1e-8, gt=0.0)
    printed_value_rtol: float = Field(default=1e-6, gt=0.0)
    closed_form_atol: float = Field(default=1e-10, gt=0.0)

    def contour_spec(self) -> ContourSpec:
        return ContourSpec(tol=self.contour_tol, nodes=self.contour_nodes)

    def quadrature_config(self, extrapolate: bool = False) -> QuadratureConfig:
        return QuadratureConfig(
            tol=self.quad_tol, max_panels=self.quad_max_panels, extrapolate=extrapolate
        )

    def summation_config(self, acceleration: AccelerationKind) -> SummationConfig:
        return SummationConfig(
            tol=self.series_tol, max_terms=self.series_max_terms, acceleration=acceleration
        )

    def echo(self) -> Dict[str, Union[float, int]]:
        """Flat dump for RunReport.config."""
        return self.model_dump()


DEFAULT_CONFIG = VerifyConfig()


def load_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, str]] = None,
) -> VerifyConfig:
    """
    Build the effective configuration.

    Args:
        path: key=value file; falls back to the RAMANUJAN_VERIFY_CONFIG variable
        overrides: string values from the command line, applied last

    Returns:
        Validated VerifyConfig

    Raises:
        ConfigurationError: missing file, unknown key or bad value
    """
    values: Dict[str, str] = {}

    config_path = path or os.getenv(CONFIG_ENV_VAR)
    if config_path:
        config_path = Path(config_path)
        if not config_path.is_file():
            raise ConfigurationError(f"config file not found: {config_path}")
        file_values = {k: v for k, v in dotenv_values(config_path).items() if v is not None}
        logger.debug("Loaded %d settings from %s", len(file_values), config_path)
        values.update(file_values)

    if overrides:
        values.update(overrides)

    unknown = sorted(set(values) - set(VerifyConfig.model_fields))
    if unknown:
        raise ConfigurationError(f"unknown configuration keys: {', '.join(unknown)}")

    try:
        return VerifyConfig(**values)
    except ValidationError as e:
        raise ConfigurationError(f"invalid configuration: {e}") from e


def parse_override(item: str) -> Dict[str, str]:
    """Split a ``key=value`` command-line override."""
    key, sep, value = item.partition("=")
    if not sep or not key.strip():
        raise ConfigurationError(f"override must look like key=value, got {item!r}")
    return {key.strip(): value.strip()}
