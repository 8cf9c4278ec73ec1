"""Dodging triggers is expensive when the variance forecasts are large.

Against v_n = n^2/2 the threshold-avoiding Skeptic can always stake
just enough quadratic term to keep the trigger test failing: he pays
V_n * v_n every quiet round for the privilege. With these forecasts the
deficit 1 - K_n slightly more than doubles every round (the quiet-round
rent is (1 - K) * v/(n^2 - v) + eps * v, and v/(n^2 - v) = 1 here), so
the avoider's capital crosses zero in under twenty rounds and then
plunges. Reality never needs to trigger at all; the forecasts alone
bankrupt anyone determined to avoid the trigger.
"""
from fractions import Fraction

from forecastgame import (
    PowerLaw,
    analyze_trace,
    kolmogorov_partial_sum,
    make_avoider,
    standard_matchup,
)
from forecastgame.skeptics import EpsilonSchedule

forecaster = PowerLaw(Fraction(1, 2), 2)
avoider = make_avoider(EpsilonSchedule.constant(Fraction(1, 10**6)))

trace = standard_matchup(forecaster, avoider, 40)
verdict = analyze_trace(trace)

print("round   deficit 1 - K_n")
for record in trace[:22]:
    deficit = 1 - record.capital_after
    print(f"{record.n:5}   {float(deficit):.9f}  ({deficit})")

print(f"\ntriggers:      {list(verdict.trigger_rounds)}")
print(f"bankrupt at:   round {verdict.bankrupt_at}")
print(f"sum v_n/n^2 so far: {verdict.kolmogorov_sum_at_horizon} "
      f"(grows by 1/2 each round: {kolmogorov_partial_sum(forecaster, 40)})")

assert verdict.trigger_rounds == ()
assert verdict.bankrupt_at == 19
print("\nzero triggers, yet bankrupt at round 19: avoidance rent compounds")
