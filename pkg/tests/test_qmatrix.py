import numpy as np
import pytest

from qhspace.errors import ShapeMismatchError
from qhspace.qmatrix import (
    QMatrix,
    inverse_via_adjoint,
    right_eigenpairs,
    right_eigenvalues,
)
from qhspace.quaternion import I, J, K, Quaternion

rng = np.random.default_rng(20260809)


def random_qmatrix(rows, cols):
    return QMatrix.from_components(rng.standard_normal((rows, cols, 4)))


def test_identity_multiplication():
    m = random_qmatrix(3, 3)
    assert (QMatrix.identity(3) @ m - m).norm_max() == 0.0


def test_unit_diagonal_product():
    assert ((QMatrix.diag([I]) @ QMatrix.diag([J]))[0, 0]) == K


def test_order_matters_for_one_by_one():
    # [[i]] @ [[j]] = [[k]] while [[j]] @ [[i]] = [[-k]].
    assert (QMatrix.diag([I]) @ QMatrix.diag([J]))[0, 0] == K
    assert (QMatrix.diag([J]) @ QMatrix.diag([I]))[0, 0] == -K


def test_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        random_qmatrix(2, 3) @ random_qmatrix(2, 3)


def test_star_examples():
    assert QMatrix.identity(3).star().allclose(QMatrix.identity(3), 0.0)
    assert QMatrix.diag([I]).star()[0, 0] == -I


def test_star_is_involutive_exactly():
    m = random_qmatrix(3, 4)
    assert (m.star().star() - m).norm_max() == 0.0


def test_star_reverses_products():
    a, b = random_qmatrix(3, 3), random_qmatrix(3, 3)
    assert ((a @ b).star() - b.star() @ a.star()).norm_max() < 1e-13


def test_adjoint_homomorphism():
    for _ in range(10):
        a, b = random_qmatrix(3, 3), random_qmatrix(3, 3)
        lhs = (a @ b).adjoint()
        rhs = a.adjoint() @ b.adjoint()
        assert np.abs(lhs - rhs).max() < 1e-12


def test_adjoint_round_trip():
    m = random_qmatrix(3, 2)
    assert QMatrix.from_adjoint(m.adjoint()).allclose(m, 0.0)


def test_eigenvalues_real_diagonal():
    vals = right_eigenvalues(QMatrix.diag([Quaternion(2.0), Quaternion(0.5)]))
    assert np.allclose(sorted(abs(v) for v in vals), [0.5, 2.0])
    assert all(abs(v.imag) < 1e-12 for v in vals)


def test_eigenvalue_of_unit_i():
    (val,) = right_eigenvalues(QMatrix.diag([I]))
    assert abs(val - 1j) < 1e-14


def test_eigenvalues_of_conjugated_diagonal():
    # Oracle: build the similar matrix explicitly and compare class data.
    diag = QMatrix.diag([Quaternion(1, 1), Quaternion(3)])
    c = random_qmatrix(2, 2)
    m = c @ diag @ inverse_via_adjoint(c)
    vals = sorted(right_eigenvalues(m), key=lambda v: v.real)
    assert abs(vals[0] - (1 + 1j)) < 1e-8
    assert abs(vals[1] - 3) < 1e-8


def test_eigenvalues_are_similarity_invariants():
    m = random_qmatrix(3, 3)
    base = right_eigenvalues(m)
    for _ in range(5):
        h = random_qmatrix(3, 3)
        moved = right_eigenvalues(h @ m @ inverse_via_adjoint(h))
        got = sorted((v.real, abs(v)) for v in moved)
        want = sorted((v.real, abs(v)) for v in base)
        assert np.allclose(got, want, atol=1e-8)


def test_eigenpair_residuals_and_right_scaling():
    m = random_qmatrix(3, 3)
    pairs = right_eigenpairs(m, tol=1e-8)
    assert len(pairs) == 3
    for lam, vec, residual in pairs:
        assert residual <= 1e-10
        t = Quaternion.from_complex_pair(lam)
        q = Quaternion(*rng.standard_normal(4))
        scaled = vec.scale_right(q)
        moved = q.inverse() * t * q
        assert (m @ scaled - scaled.scale_right(moved)).norm_max() < 1e-10 * max(
            1.0, scaled.norm_fro()
        )


def test_inverse_via_adjoint():
    m = random_qmatrix(4, 4)
    assert (m @ inverse_via_adjoint(m) - QMatrix.identity(4)).norm_max() < 1e-12


def test_entry_access_and_components():
    m = QMatrix.from_quaternions([[Quaternion(1, 2, 3, 4), I], [J, K]])
    assert m[0, 0] == Quaternion(1, 2, 3, 4)
    assert m[1, 0] == J
    rebuilt = QMatrix.from_components(m.components)
    assert rebuilt.allclose(m, 0.0)


def test_scaling_sides_differ():
    m = QMatrix.diag([I])
    assert m.scale_left(J)[0, 0] == J * I
    assert m.scale_right(J)[0, 0] == I * J
    assert m.scale_left(J)[0, 0] == -m.scale_right(J)[0, 0]


def test_empty_blocks():
    empty = QMatrix.zeros(0, 0)
    col = QMatrix.zeros(0, 1)
    assert empty.norm_max() == 0.0
    prod = col.star() @ col
    assert prod.rows == 1 and prod.cols == 1
    assert prod[0, 0] == Quaternion(0.0)


def test_json_round_trip():
    m = random_qmatrix(2, 3)
    doc = m.to_json_dict()
    assert doc["rows"] == 2 and doc["cols"] == 3 and len(doc["entries"]) == 6
    assert QMatrix.from_json_dict(doc).allclose(m, 0.0)
