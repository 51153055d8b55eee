"""Serre's 5-adic family on the branch u = 2, specialized at a few weights.

Run with ``python3 demos/eisenstein_family.py``.
"""

# %% the family: every coefficient is a power series in T
from peis.eisenstein import fs_constant_term_audit, padic_G_star, serre_eisenstein_measure

p, M, N, M_T = 5, 12, 12, 16
fam = serre_eisenstein_measure(2, p, M, N, M_T)
print("a_0 =", fam[0].coeffs[:4], "...")
print("a_2 =", fam[2].coeffs[:4], "...")

# %% specialize at T = (1+p)^s - 1 and compare with G*_(s,2) built directly
for s in (1, 2, 3):
    spec = fam.specialize(s)
    ref = padic_G_star((s, 2), M, N, p)
    agree = min(spec[n].agreement(ref[n]) for n in range(M + 1))
    print(f"s = {s}: a_1..a_4 = {[c.residue for c in spec.coeffs[1:5]]}, agreement {agree}")

# %% the constant term is rebuilt from classical weights and lands in Lambda
audit = fs_constant_term_audit(serre_eisenstein_measure(2, p, 10, 12, 8))
print("certified:", audit.certified, "to", audit.precision, "digits on weights", audit.weights[:4], "...")
