"""The laziest Skeptic meets the trigger rule.

A Skeptic who stakes nothing earns nothing: every payoff is 0, so the
trigger test K + f(n) <= 1 holds at every single round and Reality plays
the full outcome x = +n each time. Capital never moves; the outcome sum
races off to N(N+1)/2. This is the cleanest view of what the trigger
rule does: it dares Skeptic to put money behind the forecasts, and an
idle Skeptic watches Reality make the running average S_n/n grow like
n/2 forever.
"""
from fractions import Fraction

from forecastgame import PowerLaw, analyze_trace, make_zero, standard_matchup

HORIZON = 1_000

trace = standard_matchup(PowerLaw(Fraction(1), 0), make_zero(), HORIZON)
verdict = analyze_trace(trace)

print(f"rounds played          {verdict.horizon}")
print(f"rounds triggered       {len(verdict.trigger_rounds)}")
print(f"final capital          {verdict.final_capital}")
print(f"final outcome sum      {trace[-1].outcome_sum_after}"
      f"  (= N(N+1)/2 = {HORIZON * (HORIZON + 1) // 2})")
print(f"final mean outcome     {verdict.final_mean_outcome}")
print(f"min trigger jump ratio {verdict.min_trigger_jump_ratio}")

assert all(r.triggered for r in trace)
assert verdict.final_capital == 1
assert verdict.min_trigger_jump_ratio == 1
print("\nevery round triggered; capital pinned at 1; the mean outcome grows like n/2")
