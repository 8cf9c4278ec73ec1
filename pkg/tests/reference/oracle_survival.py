"""Reference loop for the avoider with geometric margins against v_n = 1.

Plays the trigger rule directly: Reality fires when K + f(n) <= 1 with the
sign that minimizes the linear term (moot here, M = 0 throughout). The
avoider adds margin eps_n = (1/8)*(1/2)^n on rounds where n^2 > v; when
n^2 <= v no quadratic stake has any effect at |x| = n, so it stakes zero.
Prints the trigger rounds and the final capital. Independent of the library.
"""
import time
from fractions import Fraction

N = 10**4
EPS, RATIO = Fraction(1, 8), Fraction(1, 2)

t0 = time.perf_counter()
capital, triggers = Fraction(1), []
for n in range(1, N + 1):
    v = Fraction(1)
    gap = n * n - v
    stake = (1 - capital) / gap + EPS * RATIO**n if gap > 0 else Fraction(0)
    if capital + stake * gap <= 1:
        triggers.append(n)          # outcome +-n, payoff stake*gap
        capital += stake * gap
    else:
        capital -= stake * v        # outcome 0, payoff -V*v

print(f"triggers    = {len(triggers)} {triggers[:5]}")
print(f"final K     ~ {float(capital):.12f}")
print(f"0 < K < 1   = {0 < capital < 1}")
print(f"elapsed     = {time.perf_counter() - t0:.1f}s")
