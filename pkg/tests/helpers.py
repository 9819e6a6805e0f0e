"""Shared generators for the test suite."""

from qhspace.geometry import ProjectivePoint, from_lift
from qhspace.qmatrix import QMatrix
from qhspace.quaternion import Quaternion
from qhspace.spn1 import (
    NormalFormParams,
    StabilizerKind,
    compose,
    make_normal_form,
)


def random_quaternion(rng, scale=1.0) -> Quaternion:
    return Quaternion(*(scale * rng.standard_normal(4)))


def random_unit_quaternion(rng) -> Quaternion:
    q = random_quaternion(rng)
    return q * (1.0 / q.modulus())


def random_interior_point(n, rng) -> ProjectivePoint:
    """Interior lift (v, t, 1) with 2 Re(t) > |v|^2."""
    v = [random_quaternion(rng) for _ in range(n - 1)]
    v_sq = sum(q.modulus_sq() for q in v)
    t = Quaternion(0.5 * v_sq + rng.uniform(0.1, 2.0), *rng.standard_normal(3))
    return from_lift(v + [t, Quaternion(1.0)])


def random_boundary_point(n, rng) -> ProjectivePoint:
    """Null lift (v, |v|^2/2 + imaginary, 1)."""
    v = [random_quaternion(rng) for _ in range(n - 1)]
    v_sq = sum(q.modulus_sq() for q in v)
    t = Quaternion(0.5 * v_sq, *rng.standard_normal(3))
    return from_lift(v + [t, Quaternion(1.0)])


def parabolic_factor(n, rng, kind=StabilizerKind.STAB_INFINITY, scale=0.15):
    """A unit-eigenvalue stabilizer factor with translation size ~ scale."""
    a = QMatrix.from_components(scale * rng.standard_normal((n - 1, 1, 4)))
    a_sq = float((a.entry_moduli() ** 2).sum()) if n > 1 else 0.0
    s = Quaternion(0.5 * a_sq, *(0.5 * scale * rng.standard_normal(3)))
    return make_normal_form(
        NormalFormParams(
            kind,
            lam=Quaternion(1.0),
            mu=Quaternion(1.0),
            A=QMatrix.identity(n - 1),
            a=a,
            s=s,
        )
    )


def small_perturbation(n, rng, scale=0.15):
    """Product of opposite parabolic factors: all four corners are nonzero
    but the off-corner product is small (of order scale**4)."""
    first = parabolic_factor(n, rng, StabilizerKind.STAB_INFINITY, scale)
    second = parabolic_factor(n, rng, StabilizerKind.STAB_ZERO, scale)
    return compose(first, second)


def swap_element(n):
    """The admitted involution exchanging the two distinguished boundary points."""
    quats = [[Quaternion(1.0 if i == j else 0.0) for j in range(n - 1)] for i in range(n - 1)]
    rows = []
    for i in range(n - 1):
        rows.append(quats[i] + [Quaternion(0.0), Quaternion(0.0)])
    rows.append([Quaternion(0.0)] * (n - 1) + [Quaternion(0.0), Quaternion(1.0)])
    rows.append([Quaternion(0.0)] * (n - 1) + [Quaternion(1.0), Quaternion(0.0)])
    from qhspace.spn1 import is_member

    return is_member(QMatrix.from_quaternions(rows))
