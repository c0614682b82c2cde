# Lattice point counts from the recursion, one value at a time.
from fractions import Fraction

from lattice_mgn.pipeline import pipeline_run
from lattice_mgn.recursion import EvaluationContext, nbar_base, nbar_value

# The two base cases need no recursion at all
print(nbar_base(0, 3, (2, 2, 2)))   # 1 whenever the total is even
print(nbar_base(0, 3, (1, 2, 2)))   # 0, odd total
print(nbar_base(1, 1, (2,)))        # 1/2
print(nbar_base(1, 1, (4,)))        # (16 + 20) / 48 = 3/4

# (1,2) sits on level 2 and recurses into (0,3) and (1,1).
# Zero arguments are read off the fitted base polynomials,
# everything else is recomputed.
base = pipeline_run(1).nbar
ctx = EvaluationContext(base, raw_lower=True)
value = nbar_value(1, 2, (2, 2), ctx)
print(value, 4 * value)             # 17/12 and 17/3

# odd totals vanish before anything is computed
print(nbar_value(1, 2, (2, 1), ctx))

# A small table of values on the even coset, b1 and b2 both even
for b1 in (2, 4, 6):
    row = [nbar_value(1, 2, (b1, b2), ctx) for b2 in (2, 4, 6)]
    print(b1, [str(v) for v in row])

# the same numbers grow like a degree-4 polynomial in b1^2, b2^2
print(float(nbar_value(1, 2, (20, 20), ctx) / Fraction(20 ** 4)))
