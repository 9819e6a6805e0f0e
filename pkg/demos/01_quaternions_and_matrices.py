"""Quaternion scalars and quaternionic matrices.

Walks through the non-commutative scalar layer (Hamilton product,
conjugation, similarity classes) and the matrix layer built on it
(Hermitian transpose, complex adjoint, right eigenvalues).
"""

import numpy as np

from qhspace import QMatrix, Quaternion, right_eigenpairs, right_eigenvalues, similar
from qhspace.quaternion import I, J, K

print("== the scalar layer ==")
print(f"i*j = {I * J}, j*i = {J * I}   (multiplication is not commutative)")
q = Quaternion(1, 2, 3, 4)
print(f"q = {q}, conj = {q.conj()}, |q| = {q.modulus():.6f}, q^-1 = {q.inverse()}")
print(f"q * q^-1 = {q * q.inverse()}")

# Similarity classes are determined by real part and modulus alone.
print(f"similar(i, j) = {similar(I, J)}")
print(f"similar(1+i, 1-i) = {similar(Quaternion(1, 1), Quaternion(1, -1))}")
w = Quaternion(0.3, -1.0, 0.5, 2.0)
conj = w * Quaternion(1, 1) * w.inverse()
print(f"w (1+i) w^-1 = {conj}  keeps Re = 1 and modulus = {conj.modulus():.6f}")

print()
print("== the matrix layer ==")
m = QMatrix.from_quaternions([[Quaternion(1), I], [J, Quaternion(0.5)]])
print("m[0,1] =", m[0, 1], " star(m)[1,0] =", m.star()[1, 0])
n = QMatrix.diag([K, Quaternion(2)])
print("star(m @ n) == star(n) @ star(m):",
      ((m @ n).star() - n.star() @ m.star()).norm_max() < 1e-14)

# The complex adjoint is a ring homomorphism; right eigenvalues come from it.
rng = np.random.default_rng(1)
a = QMatrix.from_components(rng.standard_normal((3, 3, 4)))
b = QMatrix.from_components(rng.standard_normal((3, 3, 4)))
hom = np.abs((a @ b).adjoint() - a.adjoint() @ b.adjoint()).max()
print(f"adjoint homomorphism defect on random 3x3: {hom:.2e}")

d = QMatrix.diag([Quaternion(0, 1), Quaternion(2), Quaternion(0.5)])
print("right eigenvalue representatives of diag(i, 2, 1/2):",
      [f"{v:.3f}" for v in right_eigenvalues(d)])
for lam, vec, resid in right_eigenpairs(d):
    print(f"  class {lam:.3f}: eigenvector residual {resid:.1e}")
