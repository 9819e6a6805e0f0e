"""Quaternionic cross-ratios and the corner-entry inequalities.

The ordered four-point product depends on the chosen lifts, but its absolute
value does not; evaluated against the distinguished boundary points it reads
off corner entries of a group element, and membership forces five
inequalities among those corners.
"""

import numpy as np

from qhspace import (
    Quaternion,
    corner_bound_slacks,
    cross_ratio,
    entry_identity_check,
    from_lift,
    identity_element,
    sample_elements,
)

rng = np.random.default_rng(9)


def boundary_point():
    v = Quaternion(*rng.standard_normal(4))
    t = Quaternion(0.5 * v.modulus_sq(), *rng.standard_normal(3))
    return from_lift([v, t, Quaternion(1)])


print("== lift dependence vs gauge invariance ==")
pts = [boundary_point() for _ in range(4)]
base = cross_ratio(*pts)
print(f"value = {base.value}, |value| = {base.abs_value:.6f}")
scales = [Quaternion(*rng.standard_normal(4)) for _ in range(4)]
moved = cross_ratio(*(p.rescaled(q) for p, q in zip(pts, scales)))
print(f"after rescaling lifts: value = {moved.value}")
print(f"               but    |value| = {moved.abs_value:.6f}"
      f"  (drift {abs(moved.abs_value - base.abs_value):.1e})")

print()
print("== corner-entry identities ==")
h = next(iter(sample_elements(2, seed=31, count=1, word_length=8)))
report = entry_identity_check(h)
print(f"|[h(qinf), q0, qinf, h(q0)]| = {report.lhs1:.9f} vs |a_n1n a_nn1| = {report.rhs1:.9f}")
print(f"|[h(qinf), qinf, q0, h(q0)]| = {report.lhs2:.9f} vs |a_nn a_n1n1| = {report.rhs2:.9f}")

print()
print("== the five corner inequalities ==")
print("identity element slacks:", corner_bound_slacks(identity_element(2)))
worst = np.full(5, np.inf)
for element in sample_elements(2, seed=47, count=200, word_length=10):
    worst = np.minimum(worst, corner_bound_slacks(element))
print("min slack per inequality over 200 random elements:")
for idx, value in enumerate(worst):
    print(f"  bound {idx + 1}: {value:+.3e}")
