"""Recombining binomial engine (up factor u, down factor 1/u).

Prices American/European options by backward induction, inverts the tree for
the implied up factor u* that reproduces an observed American price, and
converts American quotes to pseudo-European prices on the fitted tree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import (
    BracketFailureError,
    ConfigurationError,
    ConvergenceError,
    ImmediateExerciseError,
    InadmissibleFactorError,
)
from .instruments import Exercise, OptionSpec, OptionType, Quote, intrinsic_value

__all__ = [
    "TreeConfig",
    "TreeQuoteResult",
    "up_probability",
    "tree_value",
    "admissible_u_bounds",
    "find_u_star",
    "deamericanize",
]


@dataclass(frozen=True)
class TreeConfig:
    """Step size, bisection tolerance/budget, bracket seed and the margin
    over intrinsic value below which an ITM put is treated as immediately
    exercisable."""

    dt: float = 0.0002
    bisection_tol: float = 1e-5
    max_bisection_iters: int = 200
    exclusion_factor: float = 0.01
    u_upper_seed: float = 3.0

    def __post_init__(self):
        if not self.dt > 0:
            raise ConfigurationError("dt must be positive")
        if not self.bisection_tol > 0:
            raise ConfigurationError("bisection_tol must be positive")
        if not self.exclusion_factor > 0:
            raise ConfigurationError("exclusion_factor must be positive")
        if not self.u_upper_seed > 1:
            raise ConfigurationError("u_upper_seed must exceed 1")


@dataclass(frozen=True)
class TreeQuoteResult:
    """Fitted up factor with the European revaluation on the same tree."""

    u_star: float
    european_price: float
    n_steps: int
    iterations: int


def up_probability(u: float, r: float, dt: float) -> float:
    """Risk-neutral probability of an up move: (e^{r dt} - 1/u) / (u - 1/u)."""
    growth = math.exp(r * dt)
    if not u > growth:
        raise InadmissibleFactorError(
            f"u={u} must exceed e^(r*dt)={growth} for p in (0, 1)"
        )
    return (growth - 1.0 / u) / (u - 1.0 / u)


@njit(cache=True)
def _backward_induction(S0, K, r, u, n, dt, is_put, is_american):
    growth = math.exp(r * dt)
    p = (growth - 1.0 / u) / (u - 1.0 / u)
    disc = math.exp(-r * dt)
    pu = disc * p
    pd = disc * (1.0 - p)

    # powers[k] = u**(k - n); spot at (step m, j ups) is S0 * powers[n + 2j - m]
    powers = np.empty(2 * n + 1)
    powers[n] = 1.0
    for k in range(1, n + 1):
        powers[n + k] = powers[n + k - 1] * u
        powers[n - k] = powers[n - k + 1] / u

    vals = np.empty(n + 1)
    for j in range(n + 1):
        S = S0 * powers[2 * j]
        payoff = K - S if is_put else S - K
        vals[j] = payoff if payoff > 0.0 else 0.0

    for m in range(n - 1, -1, -1):
        for j in range(m + 1):
            cont = pu * vals[j + 1] + pd * vals[j]
            if is_american:
                S = S0 * powers[n + 2 * j - m]
                ex = K - S if is_put else S - K
                if ex > cont:
                    cont = ex
            vals[j] = cont
    return vals[0]


def tree_value(
    spec: OptionSpec,
    S0: float,
    r: float,
    u: float,
    n_steps: int,
    dt: float,
) -> float:
    """Option value at the root of an n-step tree with up factor u.

    American exercise applies max(continuation, intrinsic) at every node
    including the root; European exercise discounts the terminal payoff only.
    """
    if n_steps < 1:
        raise ConfigurationError("n_steps must be at least 1")
    up_probability(u, r, dt)  # validates admissibility
    return _backward_induction(
        float(S0),
        float(spec.strike),
        float(r),
        float(u),
        int(n_steps),
        float(dt),
        spec.is_put,
        spec.is_american,
    )


def admissible_u_bounds(r: float, dt: float, k: float) -> tuple:
    """Bracket of up factors on which the put price is monotone in u.

    The lower end combines the convex-order condition
    u >= e^{r dt} + sqrt(e^{2 r dt} - 1) with the moneyness branch
    u >= e^{r dt}/k whenever the complementary branch u <= 1/k is empty
    (k is the strike normalized by the root spot).  The upper end is a
    search seed; callers double it until the target price is bracketed.
    """
    if not k > 0:
        raise ConfigurationError(f"moneyness must be positive, got {k}")
    growth = math.exp(r * dt)
    lower = growth + math.sqrt(growth * growth - 1.0)
    if 1.0 / k <= lower:
        # "u <= 1/k" branch is unreachable; enforce the other branch.
        lower = max(lower, growth / k)
    lower += 1e-8
    return lower, 3.0


def _tree_steps(maturity: float, dt: float) -> tuple:
    n = max(1, math.ceil(maturity / dt - 1e-12))
    return n, maturity / n


def find_u_star(
    target_american: float,
    spec: OptionSpec,
    S0: float,
    r: float,
    cfg: TreeConfig = TreeConfig(),
) -> TreeQuoteResult:
    """Bisect for the up factor whose American tree price matches the target,
    then revalue the European contract on the same tree.

    The tree price is monotonically increasing in u on the admissible range,
    so the deterministic bisection fixes u* uniquely.
    """
    if not spec.is_american:
        raise ConfigurationError("find_u_star expects an American contract")
    if spec.is_put:
        floor = intrinsic_value(spec, S0) * (1.0 + cfg.exclusion_factor)
        if target_american <= floor:
            raise ImmediateExerciseError(
                f"target {target_american} within {cfg.exclusion_factor:.0%} of "
                f"intrinsic {intrinsic_value(spec, S0)}; "
                "a unique European price cannot be determined"
            )

    n, dt = _tree_steps(spec.maturity, cfg.dt)
    lb, _ = admissible_u_bounds(r, dt, spec.strike / S0)
    eps = cfg.bisection_tol

    def am_price(u):
        return _backward_induction(
            float(S0), float(spec.strike), float(r), float(u), n, dt, spec.is_put, True
        )

    f_lb = am_price(lb)
    if f_lb > target_american + eps:
        raise BracketFailureError(
            f"target {target_american} below the deepest admissible tree "
            f"price {f_lb} at u={lb}"
        )

    ub = max(cfg.u_upper_seed, lb * 1.0001)
    f_ub = am_price(ub)
    doublings = 0
    while f_ub < target_american and doublings < 6:
        ub *= 2.0
        f_ub = am_price(ub)
        doublings += 1
    if f_ub < target_american - eps:
        raise BracketFailureError(
            f"no admissible u brackets target {target_american}; "
            f"price at u={ub} is {f_ub}"
        )

    u_lo, u_hi = lb, ub
    iterations = 0
    u_hat, f_hat = u_lo, f_lb
    while iterations < cfg.max_bisection_iters:
        u_hat = 0.5 * (u_lo + u_hi)
        f_hat = am_price(u_hat)
        iterations += 1
        if abs(f_hat - target_american) <= eps:
            break
        if f_hat > target_american:
            u_hi = u_hat
        else:
            u_lo = u_hat
    else:
        raise ConvergenceError(
            f"bisection did not meet tolerance {eps} within "
            f"{cfg.max_bisection_iters} iterations (last residual "
            f"{f_hat - target_american})"
        )

    european = _backward_induction(
        float(S0), float(spec.strike), float(r), float(u_hat), n, dt, spec.is_put, False
    )
    return TreeQuoteResult(
        u_star=u_hat, european_price=european, n_steps=n, iterations=iterations
    )


def deamericanize(
    quote: Quote,
    S0: float,
    r: float,
    cfg: TreeConfig = TreeConfig(),
) -> float:
    """Pseudo-European price of an American quote via the fitted tree.

    American calls on a non-dividend underlying with r >= 0 coincide with
    their European counterparts, so they pass through unchanged.
    """
    spec = quote.spec
    if not spec.is_american:
        raise ConfigurationError("deamericanize expects an American quote")
    if spec.option_type is OptionType.CALL:
        if r < 0:
            raise ConfigurationError("negative rates are not supported")
        return quote.price
    return find_u_star(quote.price, spec, S0, r, cfg).european_price
