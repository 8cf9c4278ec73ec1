"""Negative quadratic stakes are a standing offer Reality always takes.

The standard variant simply forbids V_n < 0. The modified variant
allows it, and the bundled Reality responds with the smallest integer
outcome t >= n that drives capital to -1 or lower: a negative quadratic
stake pays Skeptic -V * (t^2 - v), which any sufficiently large |x|
turns into an arbitrarily deep loss. One round is all it takes.
"""
from fractions import Fraction

from forecastgame import (
    PowerLaw,
    ProtocolVariant,
    SkepticMove,
    TriggerReality,
    make_negative_v,
    punishment_magnitude,
    run_game,
)

variant = ProtocolVariant.MODIFIED
forecaster = PowerLaw(Fraction(0), 0)
skeptic = make_negative_v(Fraction(-1, 10))

trace = run_game(
    forecaster, skeptic, TriggerReality(variant), horizon=3, variant=variant
)

print("n   V        x    payoff   K after")
for r in trace:
    print(f"{r.n}   {str(r.stake_quadratic):6}  {str(r.outcome):3}  "
          f"{str(r.payoff):7}  {r.capital_after}")

assert all(r.capital_after <= -1 for r in trace)

# the sizing is minimal: one notch smaller would not sink the capital
move = punishment_magnitude(Fraction(1), SkepticMove(Fraction(0), Fraction(-1, 10)),
                            Fraction(0), 3)
print(f"\nfrom K=1 at n=3 the punishment outcome is {move.outcome}: "
      f"t=4 would leave 1 - 16/10 = -3/5 > -1, t=5 lands at -3/2")

print("\nthe standard variant rejects these moves outright"
      " (NegativeQuadraticStake); try:")
print("  forecastgame run --forecaster constant:c=0 --skeptic negv:v=-1/10"
      " --variant standard --rounds 1 --out t.jsonl   # exits 2")
