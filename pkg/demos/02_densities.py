"""
How often is C_n divisible by p?
================================

Counting digit strings that end in each state is a vector-matrix product,
so the exact number of n < p^k with C_n = r (mod p) comes out for k well
past anything a direct sweep could reach.
"""
# %%
from catalan_automaton import PrimeContext, build
from catalan_automaton.analysis import census_series, oracle_census

a = build(PrimeContext(5), closed_form=False)
series = list(census_series(a, 40))

# %%
# Zero-class density for n < 5^k.  It creeps towards 1; the fraction of n
# with C_n not divisible by 5 shrinks roughly like (4/5)^k.
for c in series[:8] + series[9::10]:
    d = c.density(0)
    print(f"k={c.k:2d}  zero density {float(d):.6f}  nonzero {float(1 - d):.3e}")

# %%
# For small k the transfer-matrix counts can be checked by brute force.
for k in range(1, 7):
    assert series[k - 1].counts == oracle_census(a.ctx, k).counts
print("census matches the oracle sweep for k = 1..6")

# %%
# The same picture for other primes.  For p = 2 the nonzero class is just
# n = 2^j - 1, so only k + 1 of the 2^k values are odd.
for p in (2, 3, 7, 11):
    *_, last = census_series(build(PrimeContext(p), closed_form=False), 12)
    print(f"p={p:2d}  zero density below p^12: {float(last.density(0)):.6f}")
