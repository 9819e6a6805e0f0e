"""Jørgensen-type discreteness test for pairs with a loxodromic generator.

For loxodromic g with invariant ``mg`` and fixed points u (attracting) and
v (repelling), the test evaluates

    mg * (1 + |[h(u), v, u, h(v)]|^(1/2)) < 1    or
    mg * (1 + |[h(u), u, v, h(v)]|^(1/2)) < 1.

If either holds, the group generated by g and h is elementary or not
discrete.  After conjugating the pair so that g is diagonal, the two
cross-ratio absolute values are exactly the corner products
``|a_nn1 * a_n1n|`` and ``|a_nn * a_n1n1]`` of the conjugated h, which is the
form in which the test is computed.

The supporting machinery is instrumented rather than asserted away: the
conjugation orbit ``h_{k+1} = h_k g h_k^-1`` records the corner products
``pi_k``, compares them against the geometric contraction bound per step,
and cross-checks the closed-form block recursion against direct matrix
conjugation.  The pullback sequence ``f_k = g^-k h_{2k} g^k`` then witnesses
non-discreteness: its off-diagonal blocks decay while the elements stay
pairwise distinct.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import ClassificationError, NumericError
from .geometry import apply, projectively_close
from .qmatrix import QMatrix
from .quaternion import Quaternion
from .spectral import ElementKind, LoxodromicData, classify, loxodromic_data
from .spn1 import ADMISSION_TOL, SpElement, group_inverse, is_member

#: Absolute threshold below which a conjugated corner entry counts as zero.
#: Conjugated elements are unit scale, so this sits at the admission noise
#: level; the product threshold is its square.
CORNER_ZERO_TOL = 1e-12

#: Unit-modulus margin used when certifying the second generator as
#: loxodromic inside the degenerate branches.  A defective (parabolic)
#: spectrum splits by roughly the square root of the working precision under
#: conjugation, so the sharper shared-fixed-point certificate only fires when
#: an eigenvalue modulus clears 1 by more than that; the elementary verdict
#: is valid in either case.
LOXODROMY_MARGIN = 1e-6

#: Default iteration cap; geometric decay makes longer orbits pointless.
DEFAULT_ORBIT_STEPS = 64

#: Relative slack and absolute floor for the per-step contraction bound.
BOUND_SLACK = 1e-6
BOUND_FLOOR = 1e-28


class Verdict(Enum):
    CONDITION_HOLDS = "ConditionHolds_ElementaryOrNonDiscrete"
    INCONCLUSIVE = "Inconclusive"
    DEGENERATE_ELEMENTARY = "Degenerate_Elementary"
    DEGENERATE_NON_DISCRETE = "Degenerate_NonDiscrete_SharedFixedPoint"


class Certificate(Enum):
    PRESERVES_PAIR = "PreservesPair"
    FIXES_ONE_SWAPS_NONE = "FixesOne_SwapsNone"
    SHARES_EXACTLY_ONE = "SharesExactlyOne"
    NEITHER = "Neither"


class DegenerateOrbitError(RuntimeError):
    """Raised when an orbit hits an exactly vanishing corner product."""

    def __init__(self, step, verdict):
        self.step = step
        self.verdict = verdict
        super().__init__(
            f"corner product vanished at step {step}; fixed-point analysis says {verdict.value}"
        )


@dataclass(frozen=True)
class TestOutcome:
    """Result of :func:`jorgensen_test`.

    ``cross_abs1``/``cross_abs2`` are the two bracket values of the test
    condition, computed as the corner products of the conjugated second
    generator.  The verdict never claims discreteness: it is a certificate
    of which branch fired, and Inconclusive is a first-class outcome.
    """

    verdict: Verdict
    mg: float
    cross_abs1: float
    cross_abs2: float
    witnesses: dict = field(default_factory=dict)

    def to_json_dict(self):
        return {
            "verdict": self.verdict.value,
            "mg": self.mg,
            "crossAbs1": self.cross_abs1,
            "crossAbs2": self.cross_abs2,
            "witnesses": self.witnesses,
        }


@dataclass(frozen=True)
class _DiagonalFrame:
    """The pair (g, h) conjugated so that g is exactly diagonal."""

    g_diag: SpElement
    unit_diag: tuple
    lam_n: Quaternion
    lam_n1: Quaternion
    h_conj: SpElement
    data: LoxodromicData


def _diagonal_frame(g: SpElement, h: SpElement, tol=1e-7) -> _DiagonalFrame:
    data = loxodromic_data(g)
    conj = data.conjugator
    if conj is None:
        raise NumericError("could not build a validated diagonalizing conjugator")
    conj_inv = group_inverse(conj)
    d_mat = conj_inv.m @ g.m @ conj.m
    entries = [d_mat[i, i] for i in range(d_mat.rows)]
    off = (d_mat - QMatrix.diag(entries)).norm_max()
    if off > 1e-8:
        raise NumericError("conjugated generator is not diagonal", residual=off)
    # Snap to an exactly admitted diagonal: unit classes get unit modulus and
    # the contracting entry is recomputed from the expanding one.
    unit_diag = tuple(q * (1.0 / q.modulus()) for q in entries[:-2])
    lam_n = entries[-2]
    lam_n1 = lam_n.conj().inverse()
    g_diag = is_member(QMatrix.diag(list(unit_diag) + [lam_n, lam_n1]))
    h_conj = is_member(conj_inv.m @ h.m @ conj.m, tol=max(tol, 100.0 * (g.residual + h.residual + 1e-12)))
    return _DiagonalFrame(g_diag, unit_diag, lam_n, lam_n1, h_conj, data)


def _corner_flags(h_conj: SpElement, tol=CORNER_ZERO_TOL):
    """Vanishing flags of the conjugated corner entries.

    In the diagonal frame the unitarity identities force the equivalences
    a_nn1 = 0 iff h fixes the repelling point, a_n1n = 0 iff h fixes the
    attracting point, a_nn = 0 iff h maps attracting to repelling, and
    a_n1n1 = 0 iff h maps repelling to attracting.
    """
    return {
        "fixes_repelling": h_conj.a_nn1.modulus() <= tol,
        "fixes_attracting": h_conj.a_n1n.modulus() <= tol,
        "attracting_to_repelling": h_conj.a_nn.modulus() <= tol,
        "repelling_to_attracting": h_conj.a_n1n1.modulus() <= tol,
    }


def elementary_certificate(g: SpElement, h: SpElement, tol=1e-9) -> Certificate:
    """Classify how h moves the fixed-point pair of a loxodromic g.

    The SharesExactlyOne value is the non-discreteness certificate for two
    loxodromic elements sharing a single fixed point (an external theorem is
    the authority for that conclusion; this routine only certifies the
    configuration, re-deriving h's own fixed points instead of trusting any
    assumption about swaps).
    """
    data = loxodromic_data(g)
    u, v = data.attracting, data.repelling
    hu, hv = apply(h, u), apply(h, v)
    fixes_u = projectively_close(hu, u, tol)
    fixes_v = projectively_close(hv, v, tol)
    swaps = projectively_close(hu, v, tol) and projectively_close(hv, u, tol)
    if (fixes_u and fixes_v) or swaps:
        return Certificate.PRESERVES_PAIR
    if fixes_u or fixes_v:
        if classify(h, tol=LOXODROMY_MARGIN).kind is ElementKind.LOXODROMIC:
            h_data = loxodromic_data(h)
            shared = sum(
                1
                for fp in (h_data.attracting, h_data.repelling)
                if projectively_close(fp, u, tol) or projectively_close(fp, v, tol)
            )
            if shared == 1:
                return Certificate.SHARES_EXACTLY_ONE
        return Certificate.FIXES_ONE_SWAPS_NONE
    return Certificate.NEITHER


def jorgensen_test(g: SpElement, h: SpElement, tol=1e-7) -> TestOutcome:
    """Evaluate the discreteness condition for the pair (g, h).

    Requires g loxodromic.  Degenerate corner configurations are routed to
    the fixed-point verdicts: a preserved pair or a shared fixed point with a
    non-loxodromic h certifies an elementary group, while a loxodromic pair
    sharing exactly one fixed point (directly, or through h g h^-1 when h
    exchanges one fixed point into the other) certifies non-discreteness.
    """
    if classify(g).kind is not ElementKind.LOXODROMIC:
        raise ClassificationError("the first generator must be loxodromic")
    frame = _diagonal_frame(g, h, tol=tol)
    hc = frame.h_conj
    mg = frame.data.mg
    p_off = hc.a_nn1.modulus() * hc.a_n1n.modulus()
    p_diag = hc.a_nn.modulus() * hc.a_n1n1.modulus()
    flags = _corner_flags(hc)
    witnesses = {
        "corner_moduli": list(hc.corner_moduli()),
        "flags": {k: bool(v) for k, v in flags.items()},
        "degenerate_case": None,
    }
    fixes_u = flags["fixes_attracting"]
    fixes_v = flags["fixes_repelling"]
    u_to_v = flags["attracting_to_repelling"]
    v_to_u = flags["repelling_to_attracting"]
    if (fixes_u and fixes_v) or (u_to_v and v_to_u):
        witnesses["degenerate_case"] = "pair preserved"
        return TestOutcome(Verdict.DEGENERATE_ELEMENTARY, mg, p_off, p_diag, witnesses)
    if fixes_u or fixes_v:
        witnesses["degenerate_case"] = "shared fixed point"
        if classify(h, tol=LOXODROMY_MARGIN).kind is ElementKind.LOXODROMIC:
            return TestOutcome(Verdict.DEGENERATE_NON_DISCRETE, mg, p_off, p_diag, witnesses)
        return TestOutcome(Verdict.DEGENERATE_ELEMENTARY, mg, p_off, p_diag, witnesses)
    if u_to_v or v_to_u:
        # h g h^-1 is loxodromic with fixed points {h(u), h(v)}, exactly one
        # of which lies in {u, v}.
        witnesses["degenerate_case"] = "fixed point mapped onto the other"
        return TestOutcome(Verdict.DEGENERATE_NON_DISCRETE, mg, p_off, p_diag, witnesses)
    holds = mg * (1.0 + math.sqrt(p_off)) < 1.0 or mg * (1.0 + math.sqrt(p_diag)) < 1.0
    verdict = Verdict.CONDITION_HOLDS if holds else Verdict.INCONCLUSIVE
    return TestOutcome(verdict, mg, p_off, p_diag, witnesses)


# -- conjugation orbit ---------------------------------------------------------


@dataclass(frozen=True)
class OrbitStep:
    """One recorded step of the conjugation orbit."""

    k: int
    element: SpElement
    pi: float
    sqrt_pi: float
    bound: float | None
    bound_ok: bool | None
    corner_moduli: tuple
    block_norms: tuple  # (|alpha|, |beta|, |gamma|, |theta|) Frobenius norms
    formula_vs_matmul: float | None


@dataclass(frozen=True)
class IterationTrace:
    """The recorded conjugation orbit with its contraction diagnostics."""

    steps: list
    mg: float
    T1: float
    T2: float
    R: float | None
    branch: str | None  # "T1", "T2" or None when neither bound applies
    bounds_applicable: bool
    bounds_hold: bool
    degenerate_at: int | None
    truncated_at: int | None

    def csv_rows(self):
        header = [
            "k", "pi", "sqrt_pi", "bound",
            "a_nn", "a_nn1", "a_n1n", "a_n1n1",
            "alpha_norm", "beta_norm", "gamma_norm", "theta_norm",
            "formula_vs_matmul",
        ]
        rows = []
        for s in self.steps:
            rows.append([
                s.k, s.pi, s.sqrt_pi,
                s.bound if s.bound is not None else math.nan,
                *s.corner_moduli, *s.block_norms,
                s.formula_vs_matmul if s.formula_vs_matmul is not None else math.nan,
            ])
        return header, rows


def _block_update(h: SpElement, unit_diag, lam_n: Quaternion, lam_n1: Quaternion) -> QMatrix:
    """One step of the closed-form recursion for h g h^-1 with diagonal g.

    Every block of the product is written out from the block partition and
    the structure inverse, keeping quaternion factors in display order; the
    orbit cross-checks this against plain matrix conjugation.
    """
    a_blk, al, be = h.A, h.alpha, h.beta
    ga, th = h.gamma, h.theta
    a, b = h.a_nn, h.a_nn1
    c, d = h.a_n1n, h.a_n1n1
    l_mat = QMatrix.diag(list(unit_diag))
    a_l = a_blk @ l_mat
    ga_l = ga @ l_mat
    th_l = th @ l_mat

    def one_by_one(q):
        return QMatrix.diag([q])

    row1 = [
        a_l @ a_blk.star() - al.scale_right(lam_n) @ be.star() - be.scale_right(lam_n1) @ al.star(),
        -(a_l @ th.star()) + al.scale_right(lam_n * d.conj()) + be.scale_right(lam_n1 * c.conj()),
        -(a_l @ ga.star()) + al.scale_right(lam_n * b.conj()) + be.scale_right(lam_n1 * a.conj()),
    ]
    row2 = [
        ga_l @ a_blk.star() - be.star().scale_left(a * lam_n) - al.star().scale_left(b * lam_n1),
        -(ga_l @ th.star()) + one_by_one(a * lam_n * d.conj() + b * lam_n1 * c.conj()),
        -(ga_l @ ga.star()) + one_by_one(a * lam_n * b.conj() + b * lam_n1 * a.conj()),
    ]
    row3 = [
        th_l @ a_blk.star() - be.star().scale_left(c * lam_n) - al.star().scale_left(d * lam_n1),
        -(th_l @ th.star()) + one_by_one(c * lam_n * d.conj() + d * lam_n1 * c.conj()),
        -(th_l @ ga.star()) + one_by_one(c * lam_n * b.conj() + d * lam_n1 * a.conj()),
    ]
    return QMatrix.from_blocks([row1, row2, row3])


def conjugation_orbit(g: SpElement, h: SpElement, steps=DEFAULT_ORBIT_STEPS, tol=1e-7) -> IterationTrace:
    """Iterate ``h_{k+1} = h_k g h_k^-1`` in the diagonal frame of g.

    Records the corner products ``pi_k = |a_nn1^(k) * a_n1n^(k)|`` with the
    applicable contraction bound per step: ``T1^k sqrt(pi_0)`` when
    ``T1 = mg (1 + sqrt(pi_0)) < 1``, else ``R^(k-1) sqrt(pi_1)`` with
    ``R = mg (1 + sqrt(pi_1))`` when ``T2 = mg (1 + sqrt(diag_0)) < 1``.
    Neither bound applying is not an error; the trace is produced with the
    bounds marked inapplicable.  Iteration stops early once pi underflows or
    vanishes exactly.
    """
    if steps < 1:
        raise ValueError("the orbit needs at least one step")
    frame = _diagonal_frame(g, h, tol=tol)
    mg = frame.data.mg
    current = frame.h_conj
    pi0 = current.a_nn1.modulus() * current.a_n1n.modulus()
    diag0 = current.a_nn.modulus() * current.a_n1n1.modulus()
    t1 = mg * (1.0 + math.sqrt(pi0))
    t2 = mg * (1.0 + math.sqrt(diag0))
    branch = "T1" if t1 < 1.0 else ("T2" if t2 < 1.0 else None)
    r_value = None
    sqrt_pi0 = math.sqrt(pi0)
    sqrt_pi1 = None

    records = []
    degenerate_at = None
    truncated_at = None
    discrepancy = None
    for k in range(steps + 1):
        pi = current.a_nn1.modulus() * current.a_n1n.modulus()
        sqrt_pi = math.sqrt(pi)
        if k == 1:
            sqrt_pi1 = sqrt_pi
            if branch == "T2":
                r_value = mg * (1.0 + sqrt_pi1)
        bound = None
        if branch == "T1":
            bound = (t1**k) * sqrt_pi0
        elif branch == "T2" and k >= 1:
            bound = (r_value ** (k - 1)) * sqrt_pi1
        bound_ok = None
        if bound is not None:
            bound_ok = sqrt_pi <= bound * (1.0 + BOUND_SLACK) + BOUND_FLOOR
        records.append(
            OrbitStep(
                k=k,
                element=current,
                pi=pi,
                sqrt_pi=sqrt_pi,
                bound=bound,
                bound_ok=bound_ok,
                corner_moduli=current.corner_moduli(),
                block_norms=(
                    current.alpha.norm_fro(),
                    current.beta.norm_fro(),
                    current.gamma.norm_fro(),
                    current.theta.norm_fro(),
                ),
                formula_vs_matmul=discrepancy,
            )
        )
        if pi == 0.0 and degenerate_at is None:
            degenerate_at = k
        if k == steps:
            break
        if 0.0 < pi < 1e-300:
            truncated_at = k
            break
        formula = _block_update(current, frame.unit_diag, frame.lam_n, frame.lam_n1)
        direct = current.m @ frame.g_diag.m @ group_inverse(current).m
        discrepancy = (formula - direct).norm_max()
        # Expanding orbits grow exponentially and the form residual scales
        # with the squared norm, so relax the admission tolerance accordingly.
        scale = max(1.0, formula.norm_max())
        current = is_member(formula, tol=max(100.0 * ADMISSION_TOL, 1e3 * current.residual) * scale**2)
    applicable = branch is not None
    checked = [s.bound_ok for s in records if s.bound_ok is not None]
    return IterationTrace(
        steps=records,
        mg=mg,
        T1=t1,
        T2=t2,
        R=r_value,
        branch=branch,
        bounds_applicable=applicable,
        bounds_hold=applicable and all(checked),
        degenerate_at=degenerate_at,
        truncated_at=truncated_at,
    )


# -- pullback sequence ----------------------------------------------------------


@dataclass(frozen=True)
class FkReport:
    """Per-step limit residuals of the pullback sequence f_k = g^-k h_{2k} g^k."""

    ks: list
    off_block_norms: list  # per k: six norms (1,2),(1,3),(2,1),(3,1),(2,3),(3,2)
    unitarity_defects: list
    corner_moduli: list  # per k: (|f_nn|, |f_n1n1|)
    expanding_modulus: float
    contracting_modulus: float
    log10_scale: list  # k * log10 |lam_n| per k, tracked for scale bookkeeping
    converged: bool
    distinct: bool
    threshold: float


def fk_sequence(g: SpElement, h: SpElement, K=8, threshold=1e-6, tol=1e-7):
    """Build f_k = g^-k h_{2k} g^k for k = 0..K and report its limits.

    Under the contraction regime the six off-diagonal blocks and the
    unitarity defect of the leading block go to zero while the two corner
    moduli approach ``|lam_n|`` and ``1/|lam_n|``; together with pairwise
    distinctness this is the non-discreteness witness.  The blocks are
    assembled from the stored orbit elements with eigenvalue powers applied
    per block, never by forming g^k as a matrix.
    """
    frame = _diagonal_frame(g, h, tol=tol)
    trace = conjugation_orbit(g, h, steps=2 * K, tol=tol)
    if trace.degenerate_at is not None:
        raise DegenerateOrbitError(trace.degenerate_at, jorgensen_test(g, h).verdict)
    if trace.truncated_at is not None and trace.truncated_at < 2 * K:
        raise NumericError(
            f"orbit underflowed at step {trace.truncated_at}; reduce K"
        )
    lam_n, lam_n1 = frame.lam_n, frame.lam_n1
    unit_diag = frame.unit_diag
    mod_n = lam_n.modulus()

    elements = []
    report_rows = {"off": [], "defect": [], "corners": [], "ks": [], "logs": []}
    for k in range(K + 1):
        hk = trace.steps[2 * k].element
        l_pow = QMatrix.diag([q**k for q in unit_diag])
        l_neg = QMatrix.diag([q ** (-k) for q in unit_diag])
        lam_n_k = lam_n**k
        lam_n_mk = lam_n ** (-k)
        lam_n1_k = lam_n1**k
        lam_n1_mk = lam_n1 ** (-k)
        top = l_neg @ hk.A @ l_pow
        f12 = (l_neg @ hk.alpha).scale_right(lam_n_k)
        f13 = (l_neg @ hk.beta).scale_right(lam_n1_k)
        f21 = (hk.gamma @ l_pow).scale_left(lam_n_mk)
        f31 = (hk.theta @ l_pow).scale_left(lam_n1_mk)
        f22 = lam_n_mk * hk.a_nn * lam_n_k
        f23 = lam_n_mk * hk.a_nn1 * lam_n1_k
        f32 = lam_n1_mk * hk.a_n1n * lam_n_k
        f33 = lam_n1_mk * hk.a_n1n1 * lam_n1_k

        def cell(q):
            return QMatrix.diag([q])

        f_mat = QMatrix.from_blocks(
            [
                [top, f12, f13],
                [f21, cell(f22), cell(f23)],
                [f31, cell(f32), cell(f33)],
            ]
        )
        elements.append(is_member(f_mat, tol=1e-6))
        off = (
            f12.norm_fro(),
            f13.norm_fro(),
            f21.norm_fro(),
            f31.norm_fro(),
            f23.modulus(),
            f32.modulus(),
        )
        defect = (top @ top.star() - QMatrix.identity(top.rows)).norm_max()
        report_rows["ks"].append(k)
        report_rows["off"].append(off)
        report_rows["defect"].append(defect)
        report_rows["corners"].append((f22.modulus(), f33.modulus()))
        report_rows["logs"].append(k * math.log10(mod_n))

    last_off = report_rows["off"][-1]
    last_corners = report_rows["corners"][-1]
    converged = (
        max(last_off) <= threshold
        and report_rows["defect"][-1] <= threshold
        and abs(last_corners[0] - mod_n) <= threshold
        and abs(last_corners[1] - 1.0 / mod_n) <= threshold
    )
    distinct = all(
        (elements[i].m - elements[j].m).norm_max() > 0.0
        for i in range(len(elements))
        for j in range(i + 1, len(elements))
    )
    report = FkReport(
        ks=report_rows["ks"],
        off_block_norms=report_rows["off"],
        unitarity_defects=report_rows["defect"],
        corner_moduli=report_rows["corners"],
        expanding_modulus=mod_n,
        contracting_modulus=1.0 / mod_n,
        log10_scale=report_rows["logs"],
        converged=converged,
        distinct=distinct,
        threshold=threshold,
    )
    return elements, report
