"""Model parameter types, volatility functions, the jump-diffusion drift and
the five benchmark parameter scenarios per model."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Union

from .errors import ConfigurationError

__all__ = [
    "Model",
    "CevParams",
    "HestonParams",
    "MertonParams",
    "ModelParams",
    "Scenario",
    "local_vol",
    "merton_drift",
    "scenario_params",
    "all_scenarios",
    "scenarios_from_json",
]


class Model(str, enum.Enum):
    CEV = "cev"
    HESTON = "heston"
    MERTON = "merton"


@dataclass(frozen=True)
class CevParams:
    """Local-volatility power law: instantaneous vol sigma * S**(zeta - 1)."""

    sigma: float
    zeta: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ConfigurationError(f"sigma must be positive, got {self.sigma}")
        if not 0 < self.zeta < 1:
            raise ConfigurationError(f"zeta must lie in (0, 1), got {self.zeta}")


@dataclass(frozen=True)
class HestonParams:
    """Square-root stochastic variance with mean level gamma and speed kappa."""

    xi: float
    rho: float
    gamma: float
    kappa: float
    v0: float

    def __post_init__(self):
        if not self.xi > 0:
            raise ConfigurationError(f"xi must be positive, got {self.xi}")
        if not -1 <= self.rho <= 1:
            raise ConfigurationError(f"rho must lie in [-1, 1], got {self.rho}")
        for name in ("gamma", "kappa", "v0"):
            if not getattr(self, name) > 0:
                raise ConfigurationError(f"{name} must be positive")


@dataclass(frozen=True)
class MertonParams:
    """Jump diffusion with Gaussian log-jumps N(alpha, beta^2) at intensity lam."""

    sigma: float
    alpha: float
    beta: float
    lam: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ConfigurationError(f"sigma must be positive, got {self.sigma}")
        if not self.beta > 0:
            raise ConfigurationError(f"beta must be positive, got {self.beta}")
        if self.lam < 0:
            raise ConfigurationError(f"lam must be nonnegative, got {self.lam}")


ModelParams = Union[CevParams, HestonParams, MertonParams]


@dataclass(frozen=True)
class Scenario:
    model: Model
    index: int
    params: ModelParams


# Benchmark parameter sets p1..p5 per model.
_SCENARIO_TABLE = {
    Model.CEV: {
        1: CevParams(sigma=0.2, zeta=0.5),
        2: CevParams(sigma=0.275, zeta=0.6),
        3: CevParams(sigma=0.35, zeta=0.7),
        4: CevParams(sigma=0.425, zeta=0.8),
        5: CevParams(sigma=0.5, zeta=0.9),
    },
    Model.HESTON: {
        1: HestonParams(xi=0.10, rho=-0.20, gamma=0.07, kappa=0.1, v0=0.07),
        2: HestonParams(xi=0.25, rho=-0.50, gamma=0.10, kappa=0.4, v0=0.10),
        3: HestonParams(xi=0.40, rho=-0.50, gamma=0.15, kappa=0.6, v0=0.15),
        4: HestonParams(xi=0.55, rho=-0.45, gamma=0.20, kappa=1.2, v0=0.20),
        5: HestonParams(xi=0.70, rho=-0.80, gamma=0.30, kappa=1.4, v0=0.30),
    },
    Model.MERTON: {
        1: MertonParams(sigma=0.20, alpha=-0.01, beta=0.01, lam=1.0),
        2: MertonParams(sigma=0.15, alpha=-0.05, beta=0.05, lam=2.0),
        3: MertonParams(sigma=0.20, alpha=-0.10, beta=0.10, lam=3.0),
        4: MertonParams(sigma=0.10, alpha=-0.10, beta=0.20, lam=5.0),
        5: MertonParams(sigma=0.10, alpha=-0.15, beta=0.20, lam=7.0),
    },
}


def local_vol(params: CevParams, S: float) -> float:
    """Instantaneous volatility sigma * S**(zeta-1) of the power-law model."""
    if not S > 0:
        raise ConfigurationError(f"spot must be positive, got {S}")
    return params.sigma * S ** (params.zeta - 1.0)


def merton_drift(params: MertonParams, r: float) -> float:
    """Risk-neutral log-price drift of the jump-diffusion model.

    b = r - sigma^2/2 - lam * (exp(alpha + beta^2/2) - 1), chosen so the
    discounted asset price is a martingale.
    """
    jump_mean = math.exp(params.alpha + 0.5 * params.beta**2) - 1.0
    return r - 0.5 * params.sigma**2 - params.lam * jump_mean


def scenario_params(model: Model, index: int) -> ModelParams:
    """Benchmark parameter set for scenario ``index`` in 1..5."""
    model = Model(model)
    try:
        return _SCENARIO_TABLE[model][index]
    except KeyError:
        raise ConfigurationError(
            f"unknown scenario index {index} for model {model.value}"
        ) from None


def all_scenarios(model: Model) -> list[Scenario]:
    model = Model(model)
    return [Scenario(model, i, _SCENARIO_TABLE[model][i]) for i in range(1, 6)]


_PARAM_CLS = {Model.CEV: CevParams, Model.HESTON: HestonParams, Model.MERTON: MertonParams}


def scenarios_from_json(path) -> dict:
    """Load scenario definitions from a JSON file.

    Expected schema: ``{"cev": {"1": {"sigma": .., "zeta": ..}, ...}, ...}``;
    returns a mapping (Model, index) -> ModelParams.
    """
    with open(path) as fh:
        raw = json.load(fh)
    out = {}
    for model_name, rows in raw.items():
        model = Model(model_name)
        cls = _PARAM_CLS[model]
        for idx, fields in rows.items():
            try:
                out[(model, int(idx))] = cls(**fields)
            except TypeError as exc:
                raise ConfigurationError(
                    f"bad scenario fields for {model_name}[{idx}]: {exc}"
                ) from None
    return out
