"""Contract descriptions, quotes, payoffs and the risk-free curve.

Everything here is an immutable value type; instances can be shared freely
across workers.  Rates are continuously compounded per annum and maturities
are year-fractions.
"""

from __future__ import annotations

import bisect
import enum
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .errors import ConfigurationError

__all__ = [
    "OptionType",
    "Exercise",
    "OptionSpec",
    "Quote",
    "YieldCurve",
    "intrinsic_value",
    "interp_rate",
]


class OptionType(str, enum.Enum):
    CALL = "call"
    PUT = "put"


class Exercise(str, enum.Enum):
    AMERICAN = "american"
    EUROPEAN = "european"


@dataclass(frozen=True)
class OptionSpec:
    """A vanilla contract: type, exercise style, strike and maturity."""

    option_type: OptionType
    exercise: Exercise
    strike: float
    maturity: float

    def __post_init__(self):
        object.__setattr__(self, "option_type", OptionType(self.option_type))
        object.__setattr__(self, "exercise", Exercise(self.exercise))
        if not self.strike > 0:
            raise ConfigurationError(f"strike must be positive, got {self.strike}")
        if not self.maturity > 0:
            raise ConfigurationError(f"maturity must be positive, got {self.maturity}")

    @property
    def is_put(self) -> bool:
        return self.option_type is OptionType.PUT

    @property
    def is_american(self) -> bool:
        return self.exercise is Exercise.AMERICAN

    def as_european(self) -> "OptionSpec":
        """Same contract with European exercise."""
        return replace(self, exercise=Exercise.EUROPEAN)

    def as_american(self) -> "OptionSpec":
        return replace(self, exercise=Exercise.AMERICAN)


def american_put(strike: float, maturity: float) -> OptionSpec:
    return OptionSpec(OptionType.PUT, Exercise.AMERICAN, strike, maturity)


def european_put(strike: float, maturity: float) -> OptionSpec:
    return OptionSpec(OptionType.PUT, Exercise.EUROPEAN, strike, maturity)


def american_call(strike: float, maturity: float) -> OptionSpec:
    return OptionSpec(OptionType.CALL, Exercise.AMERICAN, strike, maturity)


def european_call(strike: float, maturity: float) -> OptionSpec:
    return OptionSpec(OptionType.CALL, Exercise.EUROPEAN, strike, maturity)


@dataclass(frozen=True)
class Quote:
    """An observed price for a contract, optionally with its bid/ask."""

    spec: OptionSpec
    price: float
    bid: Optional[float] = None
    ask: Optional[float] = None

    def __post_init__(self):
        if self.price < 0:
            raise ConfigurationError(f"price must be nonnegative, got {self.price}")
        if (self.bid is None) != (self.ask is None):
            raise ConfigurationError("bid and ask must be given together")
        if self.bid is not None:
            if self.bid < 0 or self.ask < 0:
                raise ConfigurationError("bid/ask must be nonnegative")
            if self.bid > self.ask:
                raise ConfigurationError(f"bid {self.bid} exceeds ask {self.ask}")
            mid = 0.5 * (self.bid + self.ask)
            if abs(self.price - mid) > 1e-9 * max(1.0, mid):
                raise ConfigurationError(
                    f"price {self.price} is not the bid-ask midpoint {mid}"
                )


@dataclass(frozen=True)
class YieldCurve:
    """Piecewise-linear zero curve on (tenor, continuously-compounded rate) pillars."""

    pillars: tuple

    def __post_init__(self):
        pillars = tuple((float(t), float(r)) for t, r in self.pillars)
        if len(pillars) == 0:
            raise ConfigurationError("yield curve needs at least one pillar")
        tenors = [t for t, _ in pillars]
        if any(b <= a for a, b in zip(tenors, tenors[1:])):
            raise ConfigurationError("pillar tenors must be strictly increasing")
        object.__setattr__(self, "pillars", pillars)

    @classmethod
    def flat(cls, rate: float) -> "YieldCurve":
        return cls(pillars=((1.0, rate),))

    def rate(self, t: float) -> float:
        return interp_rate(self, t)


def intrinsic_value(spec: OptionSpec, spot: float) -> float:
    """Exercise value of the contract at the given spot."""
    if not spot > 0:
        raise ConfigurationError(f"spot must be positive, got {spot}")
    if spec.is_put:
        return max(spec.strike - spot, 0.0)
    return max(spot - spec.strike, 0.0)


def interp_rate(curve: YieldCurve, t: float) -> float:
    """Rate at tenor t: linear between pillars, flat beyond the ends."""
    if not t > 0:
        raise ConfigurationError(f"tenor must be positive, got {t}")
    pillars = curve.pillars
    tenors = [p[0] for p in pillars]
    if t <= tenors[0]:
        return pillars[0][1]
    if t >= tenors[-1]:
        return pillars[-1][1]
    i = bisect.bisect_right(tenors, t)
    t0, r0 = pillars[i - 1]
    t1, r1 = pillars[i]
    w = (t - t0) / (t1 - t0)
    return r0 + w * (r1 - r0)
