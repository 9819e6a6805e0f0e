"""Dense matrices over the quaternions.

A matrix is stored in complex-split form ``M = ca + cb*j`` with two complex
arrays of equal shape.  Multiplication then reduces to four complex matrix
products, and the complex adjoint

    adj(M) = [[ca, cb], [-conj(cb), conj(ca)]]

is a ring homomorphism into 2m x 2n complex matrices.  The adjoint is the
workhorse for right eigenvalues: eigenvalues of ``adj(M)`` come in conjugate
pairs, and the representatives with non-negative imaginary part are exactly
the similarity classes of right eigenvalues of M.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericError, ShapeMismatchError
from .quaternion import Quaternion

#: Tolerance used when pairing conjugate eigenvalues of the complex adjoint.
PAIRING_TOL = 1e-8


class QMatrix:
    """A rows x cols matrix of quaternions in complex-split storage."""

    __slots__ = ("ca", "cb")

    def __init__(self, ca, cb):
        ca = np.array(ca, dtype=complex)
        cb = np.array(cb, dtype=complex)
        if ca.ndim != 2 or ca.shape != cb.shape:
            raise ShapeMismatchError("split parts must be equal-shape 2-d arrays")
        self.ca = ca
        self.cb = cb

    # -- construction ------------------------------------------------------

    @classmethod
    def zeros(cls, rows, cols):
        return cls(np.zeros((rows, cols), complex), np.zeros((rows, cols), complex))

    @classmethod
    def identity(cls, m):
        return cls(np.eye(m, dtype=complex), np.zeros((m, m), complex))

    @classmethod
    def diag(cls, quats):
        quats = list(quats)
        m = len(quats)
        out = cls.zeros(m, m)
        for idx, q in enumerate(quats):
            a, b = q.complex_pair()
            out.ca[idx, idx] = a
            out.cb[idx, idx] = b
        return out

    @classmethod
    def from_quaternions(cls, rows):
        """Build from a nested list of Quaternion values (row major)."""
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        out = cls.zeros(nr, nc)
        for i, row in enumerate(rows):
            if len(row) != nc:
                raise ShapeMismatchError("ragged rows")
            for j, q in enumerate(row):
                a, b = q.complex_pair()
                out.ca[i, j] = a
                out.cb[i, j] = b
        return out

    @classmethod
    def column(cls, quats):
        return cls.from_quaternions([[q] for q in quats])

    @classmethod
    def from_components(cls, comp):
        """Build from a float array of shape (rows, cols, 4)."""
        comp = np.asarray(comp, dtype=float)
        if comp.ndim != 3 or comp.shape[-1] != 4:
            raise ShapeMismatchError("component array must have shape (rows, cols, 4)")
        ca = comp[..., 0] + 1j * comp[..., 1]
        cb = comp[..., 2] + 1j * comp[..., 3]
        return cls(ca, cb)

    @classmethod
    def from_blocks(cls, blocks):
        """Assemble from a nested list of QMatrix blocks."""
        ca = np.block([[b.ca for b in row] for row in blocks])
        cb = np.block([[b.cb for b in row] for row in blocks])
        return cls(ca, cb)

    # -- shape and access ----------------------------------------------------

    @property
    def rows(self):
        return self.ca.shape[0]

    @property
    def cols(self):
        return self.ca.shape[1]

    @property
    def components(self):
        """Float view of shape (rows, cols, 4)."""
        return np.stack(
            [self.ca.real, self.ca.imag, self.cb.real, self.cb.imag], axis=-1
        )

    def __getitem__(self, key):
        i, j = key
        return Quaternion.from_complex_pair(self.ca[i, j], self.cb[i, j])

    def submatrix(self, rows, cols):
        """Extract a block; `rows` and `cols` are slices or ints."""
        if isinstance(rows, int):
            rows = slice(rows, rows + 1)
        if isinstance(cols, int):
            cols = slice(cols, cols + 1)
        return QMatrix(self.ca[rows, cols], self.cb[rows, cols])

    def copy(self):
        return QMatrix(self.ca.copy(), self.cb.copy())

    def freeze(self):
        """Make the underlying storage read-only."""
        self.ca.flags.writeable = False
        self.cb.flags.writeable = False
        return self

    # -- algebra -------------------------------------------------------------

    def __matmul__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        # (a1 + b1 j)(a2 + b2 j) = (a1 a2 - b1 conj(b2)) + (a1 b2 + b1 conj(a2)) j
        ca = self.ca @ other.ca - self.cb @ other.cb.conj()
        cb = self.ca @ other.cb + self.cb @ other.ca.conj()
        return QMatrix(ca, cb)

    def star(self):
        """Quaternionic Hermitian transpose (conjugate transpose)."""
        return QMatrix(self.ca.conj().T, -self.cb.T)

    def __add__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return QMatrix(self.ca + other.ca, self.cb + other.cb)

    def __sub__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return QMatrix(self.ca - other.ca, self.cb - other.cb)

    def __neg__(self):
        return QMatrix(-self.ca, -self.cb)

    def scale_left(self, q):
        """Entrywise left multiplication q * M."""
        qa, qb = _as_pair(q)
        return QMatrix(qa * self.ca - qb * self.cb.conj(), qa * self.cb + qb * self.ca.conj())

    def scale_right(self, q):
        """Entrywise right multiplication M * q."""
        qa, qb = _as_pair(q)
        return QMatrix(self.ca * qa - self.cb * np.conj(qb), self.ca * qb + self.cb * np.conj(qa))

    # -- norms ----------------------------------------------------------------

    def entry_moduli(self):
        return np.sqrt(np.abs(self.ca) ** 2 + np.abs(self.cb) ** 2)

    def norm_max(self):
        """Largest entry modulus (0 for empty matrices)."""
        if self.ca.size == 0:
            return 0.0
        return float(self.entry_moduli().max())

    def norm_fro(self):
        return float(np.sqrt((np.abs(self.ca) ** 2 + np.abs(self.cb) ** 2).sum()))

    def allclose(self, other, tol=1e-12):
        return (self - other).norm_max() <= tol

    # -- complex adjoint --------------------------------------------------------

    def adjoint(self):
        """The complex adjoint, a 2*rows x 2*cols complex matrix."""
        return np.block([[self.ca, self.cb], [-self.cb.conj(), self.ca.conj()]])

    @classmethod
    def from_adjoint(cls, arr):
        """Invert :meth:`adjoint`, symmetrizing away rounding asymmetry."""
        arr = np.asarray(arr, dtype=complex)
        r2, c2 = arr.shape
        r, c = r2 // 2, c2 // 2
        ca = 0.5 * (arr[:r, :c] + arr[r:, c:].conj())
        cb = 0.5 * (arr[:r, c:] - arr[r:, :c].conj())
        return cls(ca, cb)

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self):
        entries = [
            [float(v) for v in self.components[i, j]]
            for i in range(self.rows)
            for j in range(self.cols)
        ]
        return {"rows": self.rows, "cols": self.cols, "entries": entries}

    @classmethod
    def from_json_dict(cls, data):
        rows, cols = data["rows"], data["cols"]
        comp = np.asarray(data["entries"], dtype=float).reshape(rows, cols, 4)
        return cls.from_components(comp)

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols})"


def _as_pair(q):
    if isinstance(q, Quaternion):
        return q.complex_pair()
    return complex(q), 0j


def inverse_via_adjoint(m: QMatrix) -> QMatrix:
    """Generic inverse through the complex adjoint."""
    if m.rows != m.cols:
        raise ShapeMismatchError("inverse requires a square matrix")
    return QMatrix.from_adjoint(np.linalg.inv(m.adjoint()))


def vec_norm(v: QMatrix) -> float:
    """Euclidean norm of a column vector of quaternions."""
    return v.norm_fro()


def _pair_adjoint_eigenvalues(evals, tol, scale=None):
    """Collapse the conjugate-paired adjoint spectrum to class representatives.

    Greedy nearest matching: repeatedly take the remaining eigenvalue with the
    largest imaginary part and pair it with the closest candidate for its
    conjugate.  Representatives keep algebraic multiplicity.  The mismatch
    guard is scaled by the matrix norm: the exact adjoint spectrum is
    conjugate-symmetric, so any split is eigensolver rounding, which grows
    with norm and conditioning.
    """
    order = np.argsort(-evals.imag, kind="stable")
    pool = list(evals[order])
    if scale is None:
        scale = max(1.0, float(np.abs(evals).max())) if len(evals) else 1.0
    reps = []
    while pool:
        lam = pool.pop(0)
        target = np.conj(lam)
        dists = [abs(other - target) for other in pool]
        j = int(np.argmin(dists))
        if dists[j] > tol * scale:
            raise NumericError(
                "adjoint spectrum does not split into conjugate pairs",
                residual=dists[j],
            )
        partner = pool.pop(j)
        rep = 0.5 * (lam + np.conj(partner))
        reps.append(complex(rep.real, abs(rep.imag)))
    return reps


def right_eigenvalues(m: QMatrix, tol=PAIRING_TOL):
    """One complex representative per right-eigenvalue similarity class.

    The representative is the class member with non-negative imaginary part;
    multiplicities are preserved, so a square matrix of size k yields k
    values.  Results are sorted by (modulus, real part) for determinism.
    """
    if m.rows != m.cols:
        raise ShapeMismatchError("eigenvalues require a square matrix")
    adj = m.adjoint()
    evals = np.linalg.eigvals(adj)
    reps = _pair_adjoint_eigenvalues(evals, tol, scale=max(1.0, float(np.linalg.norm(adj))))
    reps.sort(key=lambda lam: (abs(lam), lam.real))
    return reps


def right_eigenpairs(m: QMatrix, tol=1e-8):
    """Eigenvalue representatives together with quaternionic eigenvectors.

    Returns a list of ``(lam, v, residual)`` with ``m @ v`` close to
    ``v * lam`` and residual measured relative to ``|v|``.  Raises
    :class:`NumericError` when a residual exceeds ``tol``.
    """
    if m.rows != m.cols:
        raise ShapeMismatchError("eigenpairs require a square matrix")
    evals, evecs = np.linalg.eig(m.adjoint())
    size = m.rows
    j_unit = Quaternion(0.0, 0.0, 1.0, 0.0)
    candidates = []
    for idx in range(2 * size):
        lam = evals[idx]
        vec = quaternion_vector_from_adjoint(evecs[:, idx])
        if lam.imag < 0:
            # Right-multiplying an eigenvector by j conjugates the eigenvalue,
            # moving the representative into the upper half plane.
            vec = vec.scale_right(j_unit)
        rep = complex(lam.real, abs(lam.imag))
        resid = (m @ vec - vec.scale_right(Quaternion.from_complex_pair(rep))).norm_max()
        scale = vec.norm_fro()
        if scale == 0.0 or resid > tol * max(scale, 1.0):
            raise NumericError("eigenpair residual too large", residual=resid)
        candidates.append((rep, vec, resid / scale))
    # Each similarity class appears twice per multiplicity; keep one candidate
    # per representative from the values-only path.
    reps = right_eigenvalues(m, tol=max(tol, PAIRING_TOL))
    pairs = []
    for rep in reps:
        j = int(np.argmin([abs(p[0] - rep) for p in candidates]))
        pairs.append(candidates.pop(j))
    pairs.sort(key=lambda p: (abs(p[0]), p[0].real))
    return pairs


def eigenspace_basis(m: QMatrix, lam, atol=1e-6):
    """Orthonormal basis (columns) of the adjoint eigenspace for ``lam``.

    Works on the complex adjoint via SVD, so it is robust for defective
    eigenvalues where the eigenvector matrix of ``eig`` degrades.
    """
    adj = m.adjoint()
    shifted = adj - complex(lam) * np.eye(adj.shape[0])
    _, svals, vh = np.linalg.svd(shifted)
    scale = max(1.0, float(svals.max())) if len(svals) else 1.0
    mask = svals <= atol * scale
    basis = vh[mask].conj().T
    return basis


def quaternion_vector_from_adjoint(zeta) -> QMatrix:
    """Convert an adjoint-space column of length 2m to a quaternionic m-vector."""
    zeta = np.asarray(zeta, dtype=complex).reshape(-1)
    size = zeta.shape[0] // 2
    return QMatrix(zeta[:size].reshape(-1, 1), -zeta[size:].conj().reshape(-1, 1))
