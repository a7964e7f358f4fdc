"""Extension field arithmetic and the rank of vectors over the base field.

Elements of GF(q^N) are plain ints: the base-q digits of the integer are
the coordinates in the power basis, so for q = 2 the int IS the bit
pattern of the coordinate vector.
"""

import random

from gptrank import get_field, rank_over_base

ctx = get_field(2, 4)
print("field: GF(2^4), modulus coefficients (low to high):", ctx.modulus)

alpha = 2  # the class of x
print("\nalpha                =", alpha)
print("alpha^2              =", ctx.mul(alpha, alpha))
print("alpha^3 * alpha^2    =", ctx.mul(ctx.pow(alpha, 3), ctx.pow(alpha, 2)), "(= alpha^2 + alpha)")
print("alpha^-1             =", ctx.inv(alpha), "(= alpha^3 + 1)")
print("alpha + alpha^2      =", ctx.add(alpha, ctx.mul(alpha, alpha)))

# the field automorphism x -> x^q generates all conjugates
a = 11
print("\nconjugates of", a, "under x -> x^2:",
      [ctx.frobenius(a, i) for i in range(ctx.N)])

# rank over the base field: how many entries are independent over F_q
print("\nrank examples over F_2:")
for vec in ([2, 2, 3, 0], [1, 1, 1, 1], [1, 2, 4, 8], [0, 0, 0, 0]):
    print(f"  rank{tuple(vec)} = {rank_over_base(ctx, vec)}")

# a random vector of prescribed rank r is w A with A over F_2
from gptrank import sample_error_decomposed

rng = random.Random(7)
big = get_field(2, 12)
e, w, A = sample_error_decomposed(big, 8, 3, rng)
print("\nrank-3 vector of length 8 over GF(2^12):")
print("  e =", e)
print("  rank =", rank_over_base(big, e))
print("  built from", len(w), "independent elements times a full-rank binary matrix")
