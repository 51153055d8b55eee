"""Two roads to the 5-adic L-function of omega^2.

Run with ``python3 demos/dual_route.py``.
"""

# %% interpolation: Euler-factor-corrected Bernoulli values
from peis.dirichlet import teichmuller_character
from peis.lfunctions import lp_interpolation, lp_measure_route

p = 5
chi = teichmuller_character(p) ** 2

for n in range(1, 6):
    print(n, lp_interpolation(n, chi, p, 12).digits())

# %% the measure: integrate <a>^-s chi omega^-1 against E_c and divide out the regularizer
for n in range(1, 6):
    a = lp_interpolation(n, chi, p, 12)
    b = lp_measure_route(1 - n, chi, p, 12, level=8)
    print(f"s = {1 - n:>2}: measure {b.digits()}   agreement {a.agreement(b)} digits")

# %% the measure route also reaches s > 0, where no Bernoulli value exists
for s in (1, 2, 3):
    print(s, lp_measure_route(s, chi, p, 12, level=8).digits())
