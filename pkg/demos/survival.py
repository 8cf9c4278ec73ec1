"""When the variance series converges, the avoider can afford the rent.

Same threshold-avoiding Skeptic, but against the modest forecasts
v_n = 1 and with a geometric margin eps_n = (1/8) * 2^-n whose total
cost is summable. Round 1 is a forced loss of face: at n = 1, v = 1 the
trigger test K_0 + f_1(s) <= 1 holds for every possible move (the
quadratic term cancels, f_1(s) = s * M_1), so Reality triggers once no
matter what. From round 2 on the avoider's margin keeps the test
strictly failing forever; the quiet-round rent sums to less than 1/16,
and capital settles strictly between 0 and 1 with no bankruptcy in ten
thousand rounds. Large total forecast variance, not the trigger rule,
is what ruins Skeptics.
"""
from forecastgame import analyze_trace
from forecastgame.acceptance import survival_trace

trace = survival_trace()
verdict = analyze_trace(trace)

print(f"horizon            {verdict.horizon}")
print(f"trigger rounds     {list(verdict.trigger_rounds)} (the unavoidable opener)")
print(f"bankrupt_at        {verdict.bankrupt_at}")
print(f"final capital      {float(verdict.final_capital):.12f}")
print(f"capital after 10   {float(trace[9].capital_after):.12f}")
print(f"capital after 100  {float(trace[99].capital_after):.12f}")
print(f"sum v_n/n^2        {float(verdict.kolmogorov_sum_at_horizon):.6f}"
      " (converging)")

assert verdict.trigger_rounds == (1,)
assert verdict.bankrupt_at is None
assert 0 < verdict.final_capital < 1
print("\none forced trigger, then quiet survival: the margin outlives the game")
