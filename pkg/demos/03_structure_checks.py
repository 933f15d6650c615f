"""
Structure of the transition table
=================================

For p >= 5 the automaton always has exactly p + 3 states: the start state,
two more polynomial states, zero, and the nonzero constants.  Each check
below returns a Report instead of raising, so a table of verdicts is easy to
print.
"""
# %%
from catalan_automaton import PrimeContext, build
from catalan_automaton import analysis

reports = []
for p in (5, 7, 11, 13, 101):
    ctx = PrimeContext(p)
    a = build(ctx, closed_form=False)
    reports += [
        analysis.state_bound_check(a),
        analysis.table1_check(ctx),
        analysis.table2_check(a),
        analysis.pk_minus_1_check(ctx, 20, a),
    ]
print(analysis.format_reports(reports))

# %%
# A single digit from (p+1)/2 .. p-2 anywhere in n sends the automaton to
# the zero state for good.
for p in (5, 7, 11, 13):
    forced = analysis.forced_zero_digit_set(PrimeContext(p))
    print(p, sorted(forced.digits))

# %%
# The nonzero constants reached are exactly the multiplicative closure of
# the central binomials binom(2d, d) with d <= (p-1)/2.
for p in (5, 7, 13, 31):
    g = analysis.generator_check(PrimeContext(p))
    print(f"p={p}: generators {sorted(g.generators)}, closure size {g.size}, "
          f"whole unit group: {g.generates}, equals constant states: {g.matches_constant_states}")
