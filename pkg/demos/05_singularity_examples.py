"""Compounds of filling walks need not be filling.

Three constructions, each certified analytically and confirmed by Monte
Carlo.  "Filling" means the harmonic measure lies in the Minkowski
(equivalently Hausdorff) class alpha = 1/2; more generally two walks are
equivalent at infinity when they share alpha.

  ex0: two nearest-neighbour walks on one level set of the equivalence
       function; every proper convex combination leaves the level set.
  ex1: two Minkowski-filling walks on the hyperbola branch; their average
       is not filling.
  ex2: a filling walk whose convolution with its own conjugate is not
       filling.
"""

from fractions import Fraction

from modwalk import (
    DenjoyParams,
    SimConfig,
    compare_with_analytic,
    example_ex0,
    example_ex1,
    example_ex2,
    harmonic_params,
    simulate,
)

print("== ex0: convex combinations leave a level set ==")
r0 = example_ex0()
print(f"  frozen pair on the level {r0.level}: common alpha = {r0.alpha_common:.12f}")
for t, alpha, gap in r0.combinations:
    print(f"  t = {t}: alpha = {alpha:.12f}, gap {gap:.2e}")

print()
print("== ex1: the average of two filling walks is not filling ==")
r1 = example_ex1(Fraction(1, 3), Fraction(1, 2), Fraction(1, 2))
print(f"  endpoint residuals: {r1.endpoint_residuals}")
print(f"  combination: alpha = {r1.alpha:.9f}, |alpha - 1/2| = {r1.alpha_gap:.2e}")

print()
print("  Monte Carlo confirmation (2e5 paths): the simulated cylinder")
print("  frequencies match the solved (alpha, p) and reject alpha = 1/2")
print("  at the solved p:")
cfg = SimConfig(paths=200_000, steps=400, seed=42, depth=3)
sim = simulate(r1.combination.to_group_measure(), cfg)
own = compare_with_analytic(sim, harmonic_params(r1.combination))
minkowski_best = compare_with_analytic(
    sim, DenjoyParams(Fraction(1, 2), Fraction(r1.p).limit_denominator(100))
)
print(f"  vs solved parameters: max|z| = {own.max_abs_z:.2f} (consistent)")
print(f"  vs (1/2, {float(Fraction(r1.p).limit_denominator(100)):.2f}):"
      f" max|z| = {minkowski_best.max_abs_z:.2f}")

print()
print("== ex2: convolution with the conjugate walk ==")
r2 = example_ex2(Fraction(1, 2))
print(f"  walk weights b = ba = {float(r2.mu1.bf):.10f}, B = {r2.mu1.bbarf}")
reduced = {k: f"{float(Fraction(v)):.10f}" for k, v in r2.mu_prime.to_json_dict().items()}
print(f"  reduced convolution walk: {reduced}")
print(f"  its Minkowski membership residual: {float(r2.minkowski_defect):.6f} != 0")
print(f"  exact witness 2b - B = {float(r2.witness):.6f}")
alpha2 = harmonic_params(r2.mu_prime).alpha
print(f"  harmonic alpha of the convolution: {float(alpha2):.9f}")
