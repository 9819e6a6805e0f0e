"""Quaternionic cross-ratios and the corner-entry inequality battery.

The cross-ratio of four points of the closed domain is the ordered product

    [z1, z2, w1, w2] = <w1,z1> <w1,z2>^-1 <w2,z2> <w2,z1>^-1

evaluated on chosen lifts.  The value itself depends on the lifts (the
factors do not commute), but its absolute value

    |[z1,z2,w1,w2]| = |<w1,z1><w2,z2>| / |<w1,z2><w2,z1>|

does not.  Cross-ratios against the distinguished boundary points recover
the corner entries of a group element, which is what links them to the
discreteness condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import apply, q_infinity, q_zero
from .quaternion import Quaternion
from .spn1 import SpElement, herm_form

#: Relative tolerance (times the product of lift norms) below which a form
#: pairing is treated as vanishing.  Deliberately tight: degenerate cases are
#: routed to the fixed-point analysis, where a false negative is worse than a
#: false positive.
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class CrossRatioValue:
    """Lift-dependent value, lift-independent absolute value, degeneracy flag."""

    value: Quaternion
    abs_value: float
    degenerate: bool
    vanishing: tuple = ()


_PAIRING_NAMES = ("w1z1", "w1z2", "w2z2", "w2z1")


def cross_ratio(z1, z2, w1, w2) -> CrossRatioValue:
    """Cross-ratio of four points evaluated on their stored lifts.

    The quaternion product is taken strictly left to right; no reassociation
    is performed, since the factors do not commute.  The result is flagged
    degenerate when one of the inverted pairings vanishes; a vanishing
    numerator is ordinary data (the value is zero).
    """
    points = (z1, z2, w1, w2)
    f_w1z1 = herm_form(z1.lift, w1.lift)
    f_w1z2 = herm_form(z2.lift, w1.lift)
    f_w2z2 = herm_form(z2.lift, w2.lift)
    f_w2z1 = herm_form(z1.lift, w2.lift)
    norms = [p.lift.norm_fro() for p in points]
    cut = DEGENERACY_TOL
    vanishing = []
    for name, value, na, nb in (
        ("w1z1", f_w1z1, norms[2], norms[0]),
        ("w1z2", f_w1z2, norms[2], norms[1]),
        ("w2z2", f_w2z2, norms[3], norms[1]),
        ("w2z1", f_w2z1, norms[3], norms[0]),
    ):
        if value.modulus() <= cut * na * nb:
            vanishing.append(name)
    degenerate = "w1z2" in vanishing or "w2z1" in vanishing
    if degenerate:
        return CrossRatioValue(Quaternion(math.nan), math.nan, True, tuple(vanishing))
    value = f_w1z1 * f_w1z2.inverse() * f_w2z2 * f_w2z1.inverse()
    abs_value = (f_w1z1.modulus() * f_w2z2.modulus()) / (
        f_w1z2.modulus() * f_w2z1.modulus()
    )
    return CrossRatioValue(value, abs_value, False, tuple(vanishing))


@dataclass(frozen=True)
class EntryIdentityReport:
    """Both corner-entry identities of one element.

    ``lhs1``/``rhs1`` compare the cross-ratio |[h(qinf), q0, qinf, h(q0)]|
    with |a_n1n * a_nn1|; ``lhs2``/``rhs2`` compare |[h(qinf), qinf, q0,
    h(q0)]| with |a_nn * a_n1n1|.  ``vanishing1``/``vanishing2`` name the
    pairings that vanished, which is how stabilizer-type degeneracies are
    reported.
    """

    lhs1: float
    rhs1: float
    lhs2: float
    rhs2: float
    vanishing1: tuple
    vanishing2: tuple

    @property
    def degenerate(self):
        return bool(self.vanishing1 or self.vanishing2)


def entry_identity_check(h: SpElement) -> EntryIdentityReport:
    """Evaluate both cross-ratio / corner-entry identities for h."""
    qi = q_infinity(h.n)
    qz = q_zero(h.n)
    h_qi = apply(h, qi)
    h_qz = apply(h, qz)
    first = cross_ratio(h_qi, qz, qi, h_qz)
    second = cross_ratio(h_qi, qi, qz, h_qz)
    rhs1 = h.a_n1n.modulus() * h.a_nn1.modulus()
    rhs2 = h.a_nn.modulus() * h.a_n1n1.modulus()
    return EntryIdentityReport(
        lhs1=first.abs_value if not first.degenerate else math.nan,
        rhs1=rhs1,
        lhs2=second.abs_value if not second.degenerate else math.nan,
        rhs2=rhs2,
        vanishing1=first.vanishing,
        vanishing2=second.vanishing,
    )


def corner_bound_slacks(h: SpElement) -> np.ndarray:
    """Signed slacks of the five corner-entry inequalities of a group element.

    With p = |a_nn * a_n1n1|^(1/2) and q = |a_nn1 * a_n1n|^(1/2) the bounds
    are

        |beta* alpha|  <= 2 p q
        |gamma theta*| <= 2 p q
        p <= q + 1
        q <= p + 1
        p + q >= 1

    and each slack is (bound side) - (bounded side), so membership forces all
    five to be non-negative up to rounding.
    """
    p = math.sqrt(h.a_nn.modulus() * h.a_n1n1.modulus())
    q = math.sqrt(h.a_nn1.modulus() * h.a_n1n.modulus())
    beta_alpha = (h.beta.star() @ h.alpha)[0, 0].modulus()
    gamma_theta = (h.gamma @ h.theta.star())[0, 0].modulus()
    return np.array(
        [
            2.0 * p * q - beta_alpha,
            2.0 * p * q - gamma_theta,
            (q + 1.0) - p,
            (p + 1.0) - q,
            (p + q) - 1.0,
        ]
    )
