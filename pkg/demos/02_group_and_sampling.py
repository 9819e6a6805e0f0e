"""The isometry group: membership, normal forms, seeded sampling.

Shows the indefinite Hermitian form, the admission check g* J g = J, the
three stabilizer normal forms, the structure formula for inverses, and the
thirteen unitarity identities evaluated over a seeded random batch.
"""

import numpy as np

from qhspace import (
    NormalFormParams,
    QMatrix,
    Quaternion,
    StabilizerKind,
    group_inverse,
    identity_residuals,
    is_member,
    make_loxodromic,
    make_normal_form,
    sample_elements,
)
from qhspace.errors import MembershipError
from qhspace.spn1 import form_matrix

n = 2
print("== the form and admission ==")
print("J =")
print(form_matrix(n).components[..., 0])

good = QMatrix.diag([Quaternion(1), Quaternion(2), Quaternion(0.5)])
print("diag(1, 2, 1/2) admitted with residual", is_member(good).residual)
try:
    is_member(QMatrix.diag([Quaternion(1), Quaternion(2), Quaternion(2)]))
except MembershipError as err:
    print("diag(1, 2, 2) rejected:", err)

print()
print("== normal forms ==")
vertical = make_normal_form(
    NormalFormParams(
        StabilizerKind.STAB_INFINITY,
        lam=Quaternion(1),
        mu=Quaternion(1),
        A=QMatrix.identity(n - 1),
        a=QMatrix.zeros(n - 1, 1),
        s=Quaternion(0, 1),
    )
)
print("vertical translation residual:", vertical.residual)
lox = make_loxodromic([Quaternion(0, 1)], Quaternion(1, 1))
print("loxodromic diag entries:", [str(lox.m[i, i]) for i in range(n + 1)])

inv = group_inverse(lox)
print("structure inverse check ||g g^-1 - I|| =",
      (lox.m @ inv.m - QMatrix.identity(n + 1)).norm_max())

print()
print("== seeded batch and the thirteen identities ==")
worst = np.zeros(13)
for element in sample_elements(n, seed=7, count=200, word_length=12):
    worst = np.maximum(worst, identity_residuals(element))
print("worst residual per identity over 200 elements:")
for idx, value in enumerate(worst):
    print(f"  identity {idx + 1:2d}: {value:.2e}")
