"""Reality's explicit strategy.

Reality plays 0 until Skeptic offers a move whose worst-sign payoff at
|x| = n would leave capital at or below 1; then she plays x = +-n. A
negative quadratic stake (modified variant only) is punished immediately
with an outcome large enough to sink capital to -1 or lower. The sign of
a nonzero linear stake is always turned against Skeptic; ties (M = 0)
are broken by a configurable policy so traces stay deterministic.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .numeric import Scalar
from .protocol import ProtocolVariant, RealityMove, SkepticMove, payoff


class SignPolicy(enum.Enum):
    PREFER_POSITIVE = "positive"  # ties always resolve to +n
    ALTERNATE = "alternate"       # tie sign flips after each tied trigger


class TieBreaker:
    """Per-game mutable sign state for the ALTERNATE policy."""

    __slots__ = ("next_sign",)

    def __init__(self) -> None:
        self.next_sign = 1

    def flip(self) -> None:
        self.next_sign = -self.next_sign


@dataclass(frozen=True, slots=True)
class RealityDecision:
    move: RealityMove
    triggered: bool
    chosen_sign: int  # -1, 0, or +1; 0 iff outcome is 0


def preferred_sign(
    stake_linear: Scalar,
    policy: SignPolicy = SignPolicy.PREFER_POSITIVE,
    tie_state: TieBreaker | None = None,
) -> int:
    """Sign s in {-1, +1} minimizing s * stake_linear; policy breaks ties."""
    if stake_linear > 0:
        return -1
    if stake_linear < 0:
        return 1
    if policy is SignPolicy.ALTERNATE and tie_state is not None:
        return tie_state.next_sign
    return 1


def punishment_magnitude(
    capital_before: Scalar,
    smove: SkepticMove,
    variance: Scalar,
    n: int,
) -> RealityMove:
    """Outcome sinking capital to -1 or below against a negative V.

    Returns s*t with s the sign working against the linear stake and t
    the smallest integer >= n making capital + payoff <= -1. Such t
    exists: with V < 0 and s*M <= 0 the payoff is strictly decreasing in
    t, falling like V*t**2. The t >= n floor keeps the trigger-jump
    property intact on punishment rounds.
    """
    if not smove.stake_quadratic < 0:
        raise ValueError("punishment requires a negative quadratic stake")
    s = preferred_sign(smove.stake_linear)

    def sunk(t: int) -> bool:
        return capital_before + payoff(smove, variance, s * t) <= -1

    lo = max(n, 1)
    hi = lo
    while not sunk(hi):
        hi *= 2
    # payoff(s*t) is strictly decreasing in t, so bisect for the least t
    while lo < hi:
        mid = (lo + hi) // 2
        if sunk(mid):
            hi = mid
        else:
            lo = mid + 1
    return RealityMove(outcome=s * lo)


def decide(
    capital_before: Scalar,
    n: int,
    variance: Scalar,
    smove: SkepticMove,
    variant: ProtocolVariant,
    policy: SignPolicy = SignPolicy.PREFER_POSITIVE,
    tie_state: TieBreaker | None = None,
) -> RealityDecision:
    """Reality's move for round n.

    The trigger test evaluates the payoff at the sign-minimized outcome
    s*n, which coincides with the plain test at +n whenever M = 0. A
    tied trigger under ALTERNATE advances ``tie_state``.
    """
    if variant is ProtocolVariant.MODIFIED and smove.stake_quadratic < 0:
        move = punishment_magnitude(capital_before, smove, variance, n)
        return RealityDecision(
            move=move,
            triggered=True,
            chosen_sign=1 if move.outcome > 0 else -1,
        )

    tied = smove.stake_linear == 0
    s = preferred_sign(smove.stake_linear, policy, tie_state)
    # outcomes are plain ints (exact in either numeric domain); the game
    # loop coerces them into the game's mode
    if capital_before + payoff(smove, variance, s * n) <= 1:
        if tied and policy is SignPolicy.ALTERNATE and tie_state is not None:
            tie_state.flip()
        return RealityDecision(
            move=RealityMove(outcome=s * n), triggered=True, chosen_sign=s
        )
    return RealityDecision(
        move=RealityMove(outcome=0), triggered=False, chosen_sign=0
    )


class TriggerReality:
    """Bundled Reality player: the trigger strategy plus its tie state."""

    def __init__(
        self,
        variant: ProtocolVariant,
        policy: SignPolicy = SignPolicy.PREFER_POSITIVE,
    ) -> None:
        self.variant = variant
        self.policy = policy
        self.tie_state = TieBreaker()

    def respond(
        self, capital_before: Scalar, n: int, variance: Scalar, smove: SkepticMove
    ) -> RealityMove:
        return decide(
            capital_before,
            n,
            variance,
            smove,
            self.variant,
            self.policy,
            self.tie_state,
        ).move
