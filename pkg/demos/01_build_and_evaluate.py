"""
Building the automaton and reading C_n mod p off it
===================================================

Every state is a polynomial in x and y over F_p.  Reading a base-p digit d
(least significant first) multiplies the state by Q^(p-1) and keeps the
terms whose exponents are both congruent to d, dividing those exponents by p.
The answer is the constant term of the final state.
"""
# %%
# Start small.  For p = 5 the closure stops after eight states.
from catalan_automaton import PrimeContext, build, evaluate, trace
from catalan_automaton.automaton import DigitString
from catalan_automaton.oracle import catalan_lucas_oracle

ctx = PrimeContext(5)
a = build(ctx, closed_form=False)
print(f"{len(a)} states for p = {ctx.p}")
for s in a.states:
    print(" ", a.describe(s.id), "->", [a.transition(s.id, d) for d in range(ctx.p)])

# %%
# n = 124 is 444 in base 5.  Follow the path state by state.
for s in trace(a, 124):
    print(a.describe(s))
print("C_124 mod 5 =", evaluate(a, 124))

# %%
# Huge inputs cost one transition per digit.  Here n = 5^400 - 1 has 280
# decimal digits, far beyond anything C_n itself could be computed for; its
# base-5 digits are all 4, and the answer is -1.
n = 5**400 - 1
print(f"{len(str(n))} decimal digits, {len(DigitString.from_int(n, 5))} base-5 digits")
print("automaton:", evaluate(a, n), " Lucas oracle:", catalan_lucas_oracle(n, ctx))

# %%
# For large p the dense table is replaced by closed-form transitions on
# state labels, so nothing of size p^2 is ever built.
big = PrimeContext(1_000_003)
fast = build(big)
n = big.p**3 - 1
print(type(fast).__name__, evaluate(fast, n), catalan_lucas_oracle(n, big))
