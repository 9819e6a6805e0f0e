"""The isometry group Sp(n,1) of the signature-(n,1) Hermitian form.

The form on the (n+1)-dimensional right quaternionic vector space is
``<z, w> = w* J z`` with

    J = [[ I_{n-1}, 0,  0],
         [ 0,       0, -1],
         [ 0,      -1,  0]],

so the last two coordinates carry the negative swap block.  An element g
belongs to the group when ``g* J g = J``; admission caches the block
partition

    g = [[A,     alpha,   beta  ],
         [gamma, a_nn,    a_nn1 ],
         [theta, a_n1n,   a_n1n1]]

with A of size (n-1) x (n-1), which everything downstream (inversion, the
thirteen unitarity identities, corner-entry inequalities, the conjugation
recursion) is phrased in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import MembershipError, ParameterError, ShapeMismatchError
from .qmatrix import QMatrix
from .quaternion import Quaternion, random_unit

#: Default absolute max-norm tolerance for group admission.
ADMISSION_TOL = 1e-9

#: Tolerance for normal-form parameter constraints.
CONSTRAINT_TOL = 1e-10


@lru_cache(maxsize=32)
def form_matrix(n: int) -> QMatrix:
    """The Hermitian form matrix J for quaternionic hyperbolic n-space."""
    if n < 1:
        raise ValueError("n must be at least 1")
    j = np.zeros((n + 1, n + 1))
    for i in range(n - 1):
        j[i, i] = 1.0
    j[n - 1, n] = -1.0
    j[n, n - 1] = -1.0
    return QMatrix(j.astype(complex), np.zeros_like(j, dtype=complex)).freeze()


def herm_form(z: QMatrix, w: QMatrix) -> Quaternion:
    """Evaluate ``<z, w> = w* J z`` on two (n+1)-component column vectors."""
    if z.cols != 1 or w.cols != 1 or z.rows != w.rows:
        raise ShapeMismatchError("form arguments must be equal-length column vectors")
    n = z.rows - 1
    return (w.star() @ (form_matrix(n) @ z))[0, 0]


class SpElement:
    """A matrix admitted into Sp(n,1), with cached block decomposition."""

    __slots__ = ("m", "n", "residual")

    def __init__(self, m: QMatrix, n: int, residual: float):
        self.m = m.freeze()
        self.n = n
        self.residual = residual

    # -- block views -------------------------------------------------------

    @property
    def A(self) -> QMatrix:
        return self.m.submatrix(slice(0, self.n - 1), slice(0, self.n - 1))

    @property
    def alpha(self) -> QMatrix:
        return self.m.submatrix(slice(0, self.n - 1), self.n - 1)

    @property
    def beta(self) -> QMatrix:
        return self.m.submatrix(slice(0, self.n - 1), self.n)

    @property
    def gamma(self) -> QMatrix:
        return self.m.submatrix(self.n - 1, slice(0, self.n - 1))

    @property
    def theta(self) -> QMatrix:
        return self.m.submatrix(self.n, slice(0, self.n - 1))

    @property
    def a_nn(self) -> Quaternion:
        return self.m[self.n - 1, self.n - 1]

    @property
    def a_nn1(self) -> Quaternion:
        return self.m[self.n - 1, self.n]

    @property
    def a_n1n(self) -> Quaternion:
        return self.m[self.n, self.n - 1]

    @property
    def a_n1n1(self) -> Quaternion:
        return self.m[self.n, self.n]

    def corner_moduli(self):
        """Moduli of (a_nn, a_nn1, a_n1n, a_n1n1)."""
        return (
            self.a_nn.modulus(),
            self.a_nn1.modulus(),
            self.a_n1n.modulus(),
            self.a_n1n1.modulus(),
        )

    def __repr__(self):
        return f"SpElement(n={self.n}, residual={self.residual:.2e})"

    # -- serialization -----------------------------------------------------

    def to_json_dict(self):
        out = self.m.to_json_dict()
        out["n"] = self.n
        out["residual"] = self.residual
        return out

    @classmethod
    def from_json_dict(cls, data, tol=ADMISSION_TOL):
        return is_member(QMatrix.from_json_dict(data), tol=tol)


def membership_residual(m: QMatrix):
    """Max-norm residual of ``m* J m - J`` and its worst entry index."""
    if m.rows != m.cols:
        raise ShapeMismatchError("group elements must be square")
    if m.rows < 2:
        raise ShapeMismatchError("group elements have size at least 2")
    n = m.rows - 1
    j = form_matrix(n)
    diff = m.star() @ (j @ m) - j
    moduli = diff.entry_moduli()
    worst = np.unravel_index(int(np.argmax(moduli)), moduli.shape)
    return float(moduli[worst]), (int(worst[0]), int(worst[1]))


def is_member(m: QMatrix, tol=ADMISSION_TOL) -> SpElement:
    """Admit a matrix into Sp(n,1) or raise :class:`MembershipError`."""
    residual, worst = membership_residual(m)
    if not (residual <= tol):
        raise MembershipError(residual, worst)
    return SpElement(m.copy(), m.rows - 1, residual)


def group_inverse(g: SpElement) -> SpElement:
    """Invert via the structure formula ``g^-1 = J g* J``.

    Assembled directly from the blocks of g; no generic linear solve is
    involved, so the cost is a handful of conjugations.
    """
    gs = g.m.star()
    # J g* J rearranges the starred blocks:
    #   [[A*,     -theta*,       -gamma*     ],
    #    [-beta*,  conj(a_n1n1),  conj(a_nn1)],
    #    [-alpha*, conj(a_n1n),   conj(a_nn) ]]
    inv = QMatrix.from_blocks(
        [
            [g.A.star(), -g.theta.star(), -g.gamma.star()],
            [
                -g.beta.star(),
                QMatrix.diag([g.a_n1n1.conj()]),
                QMatrix.diag([g.a_nn1.conj()]),
            ],
            [
                -g.alpha.star(),
                QMatrix.diag([g.a_n1n.conj()]),
                QMatrix.diag([g.a_nn.conj()]),
            ],
        ]
    )
    residual, _ = membership_residual(inv)
    return SpElement(inv, g.n, residual)


def compose(g: SpElement, h: SpElement, tol=None) -> SpElement:
    """Group product, admitted at a tolerance relaxed by the inputs' residuals."""
    if g.n != h.n:
        raise ShapeMismatchError("elements act on different spaces")
    if tol is None:
        tol = ADMISSION_TOL + 10.0 * (g.residual + h.residual)
    return is_member(g.m @ h.m, tol=tol)


def identity_element(n: int) -> SpElement:
    return SpElement(QMatrix.identity(n + 1), n, 0.0)


def identity_residuals(g: SpElement) -> np.ndarray:
    """Max-norm residuals of the thirteen block identities of g g^-1 = g^-1 g = I.

    The identities are the displayed block entries, in fixed order: from
    ``g @ group_inverse(g) = I`` the blocks (1,1)-I, (1,2), (1,3), (2,1),
    (2,2)-1, (2,3), (3,2); then from ``group_inverse(g) @ g = I`` the blocks
    (1,1)-I, (1,2), (1,3), (2,2)-1, (2,3), (3,2).  Regression baselines rely
    on this ordering.
    """
    n = g.n
    inv = group_inverse(g)
    eye = QMatrix.identity(n + 1)
    e1 = g.m @ inv.m - eye
    e2 = inv.m @ g.m - eye
    top = slice(0, n - 1)
    mid, bot = n - 1, n

    def block_max(err, rows, cols):
        return err.submatrix(rows, cols).norm_max()

    return np.array(
        [
            block_max(e1, top, top),
            block_max(e1, top, mid),
            block_max(e1, top, bot),
            block_max(e1, mid, top),
            block_max(e1, mid, mid),
            block_max(e1, mid, bot),
            block_max(e1, bot, mid),
            block_max(e2, top, top),
            block_max(e2, top, mid),
            block_max(e2, top, bot),
            block_max(e2, mid, mid),
            block_max(e2, mid, bot),
            block_max(e2, bot, mid),
        ]
    )


# -- stabilizer normal forms ------------------------------------------------


class StabilizerKind(Enum):
    """Which distinguished boundary points the normal form stabilizes."""

    STAB_INFINITY = "StabInfinity"
    STAB_ZERO = "StabZero"
    STAB_BOTH = "StabBoth"


@dataclass
class NormalFormParams:
    """Parameters for a stabilizer normal form.

    ``A`` is an (n-1) x (n-1) quaternionic unitary block, ``a`` an (n-1)
    column, and the scalars must satisfy ``conj(mu) * lam = 1`` and, for the
    two parabolic-type kinds, ``Re(conj(mu) * s) = |a|^2 / 2``.
    """

    kind: StabilizerKind
    lam: Quaternion
    mu: Quaternion
    A: QMatrix | None = None
    a: QMatrix | None = None
    s: Quaternion | None = None


def _check_unitary(A: QMatrix, tol):
    defect = (A.star() @ A - QMatrix.identity(A.rows)).norm_max()
    if defect > tol:
        raise ParameterError(f"A is not unitary: ||A*A - I|| = {defect:.3e}")


def make_normal_form(p: NormalFormParams, tol=CONSTRAINT_TOL) -> SpElement:
    """Assemble a stabilizer normal form and admit it into the group."""
    lam, mu = p.lam, p.mu
    pairing = (mu.conj() * lam - 1).modulus()
    if pairing > tol:
        raise ParameterError(f"conj(mu)*lam = 1 violated by {pairing:.3e}")

    if p.kind is StabilizerKind.STAB_BOTH:
        if p.A is None:
            raise ParameterError("StabBoth requires the unitary block A")
        _check_unitary(p.A, tol)
        m = p.A.rows
        z_col = QMatrix.zeros(m, 1)
        z_row = QMatrix.zeros(1, m)
        zero = QMatrix.zeros(1, 1)
        mat = QMatrix.from_blocks(
            [
                [p.A, z_col, z_col],
                [z_row, QMatrix.diag([lam]), zero],
                [z_row, zero, QMatrix.diag([mu])],
            ]
        )
        return is_member(mat)

    if p.A is None or p.a is None or p.s is None:
        raise ParameterError(f"{p.kind.value} requires A, a and s")
    _check_unitary(p.A, tol)
    m = p.A.rows
    if p.a.rows != m or p.a.cols != 1:
        raise ShapeMismatchError("a must be an (n-1)-component column")
    a_sq = sum(p.a[i, 0].modulus_sq() for i in range(m))
    re_ms = (mu.conj() * p.s).re()
    if abs(re_ms - 0.5 * a_sq) > tol * max(1.0, a_sq):
        raise ParameterError(
            f"Re(conj(mu)*s) = |a|^2/2 violated: {re_ms:.6e} vs {0.5 * a_sq:.6e}"
        )
    b_row = (p.a.star() @ p.A).scale_left(lam)
    z_col = QMatrix.zeros(m, 1)
    z_row = QMatrix.zeros(1, m)
    zero = QMatrix.zeros(1, 1)
    lam_m = QMatrix.diag([lam])
    mu_m = QMatrix.diag([mu])
    s_m = QMatrix.diag([p.s])
    if p.kind is StabilizerKind.STAB_INFINITY:
        mat = QMatrix.from_blocks(
            [
                [p.A, z_col, p.a],
                [b_row, lam_m, s_m],
                [z_row, zero, mu_m],
            ]
        )
    else:  # STAB_ZERO
        mat = QMatrix.from_blocks(
            [
                [p.A, p.a, z_col],
                [z_row, mu_m, zero],
                [b_row, s_m, lam_m],
            ]
        )
    return is_member(mat)


def make_loxodromic(unit_eigs, lam_n: Quaternion, tol=CONSTRAINT_TOL) -> SpElement:
    """Diagonal loxodromic element diag(unit_eigs, lam_n, conj(lam_n)^-1)."""
    unit_eigs = list(unit_eigs)
    for idx, q in enumerate(unit_eigs):
        if abs(q.modulus() - 1.0) > tol:
            raise ParameterError(f"unit eigenvalue {idx} has modulus {q.modulus():.12f}")
    if abs(lam_n.modulus() - 1.0) <= tol:
        raise ParameterError("not loxodromic: |lam_n| = 1 within tolerance")
    lam_last = lam_n.conj().inverse()
    return is_member(QMatrix.diag(unit_eigs + [lam_n, lam_last]))


# -- seeded random elements ---------------------------------------------------

#: Modulus range for loxodromic factors in the sampler; kept narrow so that
#: products of up to 32 factors stay well conditioned under the admission
#: tolerance.
LOXO_MODULUS_RANGE = (1.01, 1.3)
_TRANSLATION_SCALE = 0.35


def random_unitary(rng, m: int) -> QMatrix:
    """Haar-ish random element of U(m; H) via quaternionic Gram-Schmidt."""
    if m == 0:
        return QMatrix.zeros(0, 0)
    cols = [QMatrix.from_components(rng.standard_normal((m, 1, 4))) for _ in range(m)]

    def orthonormalize(vectors):
        out = []
        for v in vectors:
            for u in out:
                v = v - u.scale_right((u.star() @ v)[0, 0])
            norm = v.norm_fro()
            out.append(v.scale_right(1.0 / norm))
        return out

    # A second pass removes first-pass drift.
    cols = orthonormalize(orthonormalize(cols))
    return QMatrix.from_blocks([cols])


def _random_factor(rng, n: int) -> SpElement:
    kind = rng.choice(3, p=[0.3, 0.3, 0.4])
    A = random_unitary(rng, n - 1)
    if kind == 2:
        lam = random_unit(rng)
        if rng.random() < 0.6:
            lo, hi = LOXO_MODULUS_RANGE
            lam = lam * math.exp(rng.uniform(math.log(lo), math.log(hi)))
        mu = lam.conj().inverse()
        return make_normal_form(
            NormalFormParams(StabilizerKind.STAB_BOTH, lam=lam, mu=mu, A=A)
        )
    lam = random_unit(rng)
    mu = lam.conj().inverse()
    a = QMatrix.from_components(_TRANSLATION_SCALE * rng.standard_normal((n - 1, 1, 4)))
    a_sq = float((a.entry_moduli() ** 2).sum()) if n > 1 else 0.0
    imag = Quaternion(0.0, *(_TRANSLATION_SCALE * rng.standard_normal(3)))
    s = mu * (0.5 * a_sq) + mu * imag
    which = StabilizerKind.STAB_INFINITY if kind == 0 else StabilizerKind.STAB_ZERO
    return make_normal_form(NormalFormParams(which, lam=lam, mu=mu, A=A, a=a, s=s))


def sample_elements(n: int, seed: int, count: int, word_length: int = 8, tol=ADMISSION_TOL):
    """Yield ``count`` admitted random elements from one seeded PCG64 stream.

    Each element is a product of ``word_length`` random stabilizer normal
    forms.  In the rare event that rounding pushes a product past the
    admission tolerance the word is redrawn from the same stream, keeping the
    output deterministic for a fixed seed.
    """
    if n < 1 or count < 1 or word_length < 1:
        raise ValueError("n, count and word_length must be positive")
    rng = np.random.default_rng(seed)
    produced = 0
    attempts = 0
    while produced < count:
        attempts += 1
        if attempts > 20 * count:
            raise RuntimeError("sampler failed to produce admitted elements")
        word = QMatrix.identity(n + 1)
        for _ in range(word_length):
            word = word @ _random_factor(rng, n).m
        try:
            yield is_member(word, tol=tol)
        except MembershipError:
            continue
        produced += 1


def random_element(n: int, seed: int, word_length: int = 8) -> SpElement:
    """One admitted random element; deterministic for a fixed seed."""
    return next(sample_elements(n, seed, 1, word_length))
