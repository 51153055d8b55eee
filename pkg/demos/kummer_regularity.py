"""Kummer congruences, irregular primes and a lambda-invariant.

Run with ``python3 demos/kummer_regularity.py``.
"""

# %% congruent weights give congruent stabilized zeta values
from peis.exact import format_rational, is_prime, stabilized_zeta
from peis.lfunctions import interpolated_branch, kummer_classical_check, regularity_scan
from peis.iwasawa import weierstrass_prepare

p = 7
for k, k2 in ((2, 8), (2, 44), (4, 46)):
    cert = kummer_classical_check(p, 1 if (k2 - k) % 42 else 2, k, k2)
    print(k, k2, format_rational(stabilized_zeta(k, p)), "v_7 of difference:", cert.valuation)

# %% irregular primes below 160
print([q for q in range(5, 160) if is_prime(q) and regularity_scan(q).irregular_indices])
print("691:", regularity_scan(691).irregular_indices)

# %% at p = 37 the branch u = 32 has mu = 0 and a single zero in the open disc
w = weierstrass_prepare(interpolated_branch(32, 37, 5, 4))
print("mu =", w.mu, "lambda =", w.lam)
