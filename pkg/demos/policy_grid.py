"""No stake policy escapes the trigger rule for long.

Fix v_n = n^2/2 and horizon 6, and let Skeptic pick each round's
quadratic stake from the grid V in {0, 1/4, 1/2, ..., 2} with M = 0.
That is 9^6 = 531441 distinct stake policies. Walking every one of
them through the engine shows how few survive: a policy "escapes" a
round only when K + V * (n^2 - v_n) > 1, which needs real quadratic
mass V > 0, and that same mass bleeds capital on the zero outcomes
that follow (payoff -V * v_n each quiet round).
"""
from forecastgame.acceptance import exhaustive_counts

HORIZON = 6
TOTAL = 9 ** HORIZON

triggered, declined, violations = exhaustive_counts(HORIZON)

print("stake grid per round: M = 0, V in {0, 1/4, 1/2, ..., 2}")
print(f"policies examined:    {TOTAL}")
print(f"triggered by round {HORIZON}: {triggered}")
print(f"never triggered:      {declined}")
print(f"capital above 1:      {violations}")

assert triggered + declined == TOTAL
assert violations == 0

share = declined / TOTAL
print(f"\nonly {share:.2%} of policies keep Reality at x=0 for all "
      f"{HORIZON} rounds, none ends with capital of 1 or more, and "
      f"every survivor paid for the privilege in quiet-round losses")
