"""Element classification and loxodromic invariants.

Elliptic elements fix an interior point, parabolic elements exactly one
boundary point, loxodromic elements exactly two.  For loxodromic elements
the invariants delta and mg are computed from the eigenvalue classes and are
stable under conjugation.
"""

from qhspace import (
    NormalFormParams,
    QMatrix,
    Quaternion,
    StabilizerKind,
    classify,
    compose,
    group_inverse,
    loxodromic_data,
    make_loxodromic,
    make_normal_form,
    project,
    random_element,
)
from qhspace.quaternion import I

print("== the trichotomy ==")
examples = {
    "diag(1, 2, 1/2)": make_loxodromic([Quaternion(1)], Quaternion(2)),
    "diag(i, 1, 1)": None,
    "vertical translation": make_normal_form(
        NormalFormParams(
            StabilizerKind.STAB_INFINITY,
            lam=Quaternion(1),
            mu=Quaternion(1),
            A=QMatrix.identity(1),
            a=QMatrix.zeros(1, 1),
            s=I,
        )
    ),
}
from qhspace import is_member

examples["diag(i, 1, 1)"] = is_member(QMatrix.diag([I, Quaternion(1), Quaternion(1)]))
for name, element in examples.items():
    cls = classify(element)
    print(f"{name}: {cls.kind.value}  (eigen moduli {[f'{m:.3f}' for m in cls.eigen_moduli]},"
          f" boundary classes {cls.boundary_classes})")

print()
print("== loxodromic data ==")
g = is_member(QMatrix.diag([I, Quaternion(2), Quaternion(0.5)]))
data = loxodromic_data(g)
print(f"unit classes: {[f'{v:.3f}' for v in data.unit_eigs]}")
print(f"expanding {data.lam_n:.3f}, contracting {data.lam_n1:.3f}")
print(f"delta = {data.delta:.6f}, mg = {data.mg:.6f}")
print("attracting point projects to", project(data.attracting))
print("repelling point projects to", project(data.repelling))

print()
print("== conjugation leaves delta and mg unchanged ==")
for seed in range(3):
    c = random_element(2, seed=seed, word_length=6)
    moved = loxodromic_data(compose(compose(c, g), group_inverse(c)))
    print(f"conjugator seed {seed}: delta drift {abs(moved.delta - data.delta):.2e},"
          f" mg drift {abs(moved.mg - data.mg):.2e}")
