"""The projective model: positions, projection, distance, group action.

Lifts live in the (n+1)-space with the signature-(n,1) form; the sign of the
self-product places a point inside, on, or outside the domain, and the
distance is an invariant of the isometric action.
"""

import math

import numpy as np

from qhspace import (
    Position,
    Quaternion,
    apply,
    bergman_distance,
    from_lift,
    project,
    q_infinity,
    q_zero,
    sample_elements,
)

n = 2
print("== distinguished points ==")
print("q_zero position:", q_zero(n).position.value, " projects to", project(q_zero(n)))
print("q_infinity position:", q_infinity(n).position.value, " projects to", project(q_infinity(n)))

print()
print("== positions from the self-product ==")
for lift in ([0, 0.5, 1], [0, Quaternion(0.0, 0.3), 1], [1, 0, 0]):
    point = from_lift(lift)
    value = point.self_product.re()
    print(f"lift {lift}: <z,z> = {value:+.3f} -> {point.position.value}")

print()
print("== the distance and its invariance ==")
z = from_lift([0, 0.5, 1])
w = from_lift([0, 1, 1])
rho = bergman_distance(z, w)
print(f"rho(z, w) = {rho:.12f}  with cosh^2(rho/2) = {math.cosh(rho / 2) ** 2:.12f}")

rng = np.random.default_rng(5)
q = Quaternion(*rng.standard_normal(4))
print("lift rescaling changes nothing:",
      abs(bergman_distance(z.rescaled(q), w) - rho) < 1e-12)

worst = 0.0
for g in sample_elements(n, seed=3, count=50, word_length=8):
    moved = bergman_distance(apply(g, z), apply(g, w))
    worst = max(worst, abs(moved - rho))
print(f"max |rho(gz, gw) - rho(z, w)| over 50 random isometries: {worst:.2e}")

g = next(iter(sample_elements(n, seed=12, count=1, word_length=8)))
image = apply(g, z)
print("action preserves the interior:", image.position is Position.INTERIOR)
