import math

import numpy as np
import pytest

from helpers import (
    parabolic_factor,
    random_unit_quaternion,
    small_perturbation,
    swap_element,
)

from qhspace.crossratio import cross_ratio
from qhspace.errors import ClassificationError
from qhspace.geometry import apply
from qhspace.jorgensen import (
    Certificate,
    DegenerateOrbitError,
    Verdict,
    conjugation_orbit,
    elementary_certificate,
    fk_sequence,
    jorgensen_test,
)
from qhspace.qmatrix import QMatrix
from qhspace.quaternion import Quaternion
from qhspace.spectral import loxodromic_data
from qhspace.spn1 import (
    NormalFormParams,
    StabilizerKind,
    compose,
    group_inverse,
    is_member,
    make_loxodromic,
    make_normal_form,
    random_element,
)


def slow_loxodromic():
    """diag(1, 1.05, 1/1.05): mg = 1/20 + 1/21 = 41/420."""
    return make_loxodromic([Quaternion(1)], Quaternion(1.05))


def both_stabilizer(rng):
    lam = random_unit_quaternion(rng)
    return make_normal_form(
        NormalFormParams(
            StabilizerKind.STAB_BOTH,
            lam=lam,
            mu=lam.conj().inverse(),
            A=QMatrix.identity(1),
        )
    )


def test_mg_of_slow_loxodromic():
    assert loxodromic_data(slow_loxodromic()).mg == pytest.approx(41.0 / 420.0)


def test_stabilizer_pair_is_degenerate_elementary():
    rng = np.random.default_rng(0)
    g = slow_loxodromic()
    h = both_stabilizer(rng)
    outcome = jorgensen_test(g, h)
    assert outcome.verdict is Verdict.DEGENERATE_ELEMENTARY
    assert outcome.cross_abs1 == 0.0
    assert elementary_certificate(g, h) is Certificate.PRESERVES_PAIR


def test_small_perturbation_condition_holds():
    rng = np.random.default_rng(1)
    g = slow_loxodromic()
    h = small_perturbation(2, rng, scale=0.3)
    outcome = jorgensen_test(g, h)
    assert outcome.verdict is Verdict.CONDITION_HOLDS
    assert 0.0 < outcome.cross_abs1 <= 0.05
    assert outcome.mg * (1.0 + math.sqrt(outcome.cross_abs1)) < 1.0


def test_large_mg_is_inconclusive():
    # mg = 1.5 can never satisfy the condition: both brackets exceed 1.
    g = make_loxodromic([Quaternion(1)], Quaternion(2))
    h = random_element(2, seed=5, word_length=6)
    outcome = jorgensen_test(g, h)
    assert outcome.verdict is Verdict.INCONCLUSIVE
    assert outcome.mg == pytest.approx(1.5)


def test_non_loxodromic_first_generator_rejected():
    rng = np.random.default_rng(2)
    with pytest.raises(ClassificationError):
        jorgensen_test(both_stabilizer(rng), slow_loxodromic())


def test_bracket_values_match_direct_cross_ratios():
    # The corner products of the conjugated h equal the two cross-ratio
    # absolute values on the original fixed points.
    for seed in range(5):
        g_seed = np.random.default_rng(seed)
        g = compose(
            compose(
                random_element(2, seed=100 + seed, word_length=4),
                make_loxodromic([random_unit_quaternion(g_seed)], Quaternion(1.2, 0.1)),
            ),
            group_inverse(random_element(2, seed=100 + seed, word_length=4)),
        )
        h = random_element(2, seed=200 + seed, word_length=6)
        outcome = jorgensen_test(g, h)
        data = loxodromic_data(g)
        u, v = data.attracting, data.repelling
        first = cross_ratio(apply(h, u), v, u, apply(h, v))
        second = cross_ratio(apply(h, u), u, v, apply(h, v))
        assert abs(first.abs_value - outcome.cross_abs1) <= 1e-9 * max(1.0, outcome.cross_abs1)
        assert abs(second.abs_value - outcome.cross_abs2) <= 1e-9 * max(1.0, outcome.cross_abs2)


def test_verdict_invariant_under_conjugation():
    rng = np.random.default_rng(3)
    g = slow_loxodromic()
    cases = [
        small_perturbation(2, rng, scale=0.3),
        both_stabilizer(rng),
        random_element(2, seed=55, word_length=6),
    ]
    for h in cases:
        base = jorgensen_test(g, h).verdict
        for seed in (7, 8):
            c = random_element(2, seed=seed, word_length=4)
            ci = group_inverse(c)
            moved = jorgensen_test(compose(compose(c, g), ci), compose(compose(c, h), ci))
            assert moved.verdict is base


def test_loxodromic_h_sharing_one_fixed_point():
    # h fixes the attracting point only and is itself loxodromic.
    rng = np.random.default_rng(4)
    g = slow_loxodromic()
    lam = Quaternion(1.3)
    mu = lam.conj().inverse()
    a = QMatrix.column([Quaternion(0.4, 0.1, 0.0, 0.2)])
    a_sq = float((a.entry_moduli() ** 2).sum())
    s = mu * (0.5 * a_sq / mu.modulus_sq()) + mu * Quaternion(0, 0.1, 0, 0)
    h = make_normal_form(
        NormalFormParams(StabilizerKind.STAB_INFINITY, lam=lam, mu=mu, A=QMatrix.identity(1), a=a, s=s)
    )
    assert elementary_certificate(g, h) is Certificate.SHARES_EXACTLY_ONE
    outcome = jorgensen_test(g, h)
    assert outcome.verdict is Verdict.DEGENERATE_NON_DISCRETE


def test_parabolic_h_fixing_one_point():
    rng = np.random.default_rng(5)
    g = slow_loxodromic()
    h = parabolic_factor(2, rng, StabilizerKind.STAB_INFINITY, scale=0.5)
    assert elementary_certificate(g, h) is Certificate.FIXES_ONE_SWAPS_NONE
    outcome = jorgensen_test(g, h)
    assert outcome.verdict is Verdict.DEGENERATE_ELEMENTARY


def test_swap_preserves_pair():
    g = slow_loxodromic()
    h = swap_element(2)
    assert elementary_certificate(g, h) is Certificate.PRESERVES_PAIR
    assert jorgensen_test(g, h).verdict is Verdict.DEGENERATE_ELEMENTARY


def test_mapping_one_fixed_point_onto_the_other():
    # h sends the repelling point onto the attracting one without fixing
    # either, so h g h^-1 shares exactly one fixed point with g.
    rng = np.random.default_rng(6)
    g = slow_loxodromic()
    h = compose(parabolic_factor(2, rng, StabilizerKind.STAB_INFINITY, scale=0.6), swap_element(2))
    assert elementary_certificate(g, h) is Certificate.NEITHER
    outcome = jorgensen_test(g, h)
    assert outcome.verdict is Verdict.DEGENERATE_NON_DISCRETE
    assert outcome.witnesses["degenerate_case"] == "fixed point mapped onto the other"


def test_random_h_moves_both_points():
    g = slow_loxodromic()
    h = random_element(2, seed=77, word_length=6)
    assert elementary_certificate(g, h) is Certificate.NEITHER


def test_orbit_on_stabilizer_stays_degenerate():
    rng = np.random.default_rng(7)
    g = slow_loxodromic()
    trace = conjugation_orbit(g, both_stabilizer(rng), steps=6)
    assert trace.degenerate_at == 0
    assert all(step.pi == 0.0 for step in trace.steps)
    assert len(trace.steps) == 7


def test_orbit_decay_and_bounds():
    rng = np.random.default_rng(8)
    g = slow_loxodromic()
    h = small_perturbation(2, rng, scale=0.25)
    trace = conjugation_orbit(g, h, steps=10)
    assert trace.branch == "T1"
    assert trace.T1 < 1.0
    assert trace.bounds_applicable and trace.bounds_hold
    pis = [s.pi for s in trace.steps]
    assert pis[10] < 1e-20
    # Strict decay and the per-step contraction inequality.
    for prev, cur in zip(trace.steps, trace.steps[1:]):
        assert cur.pi < prev.pi
        assert cur.sqrt_pi <= trace.T1 * prev.sqrt_pi * (1.0 + 1e-6) + 1e-28


def test_orbit_bounds_inapplicable_for_large_mg():
    g = make_loxodromic([Quaternion(1)], Quaternion(2))
    h = random_element(2, seed=21, word_length=6)
    trace = conjugation_orbit(g, h, steps=6)
    assert trace.branch is None
    assert not trace.bounds_applicable
    assert not trace.bounds_hold
    assert len(trace.steps) == 7


def test_orbit_second_branch():
    # A pair with T1 >= 1 but T2 < 1: corners (2.6, 2.5i, 2.48i, -2) give
    # |b c| = 6.2 and |a d| = 5.2, and the membership identity holds since
    # conj(d) a + conj(b) c = -5.2 + 6.2 = 1.
    g = make_loxodromic([], Quaternion(1.1612))
    mg = loxodromic_data(g).mg
    h = is_member(
        QMatrix.from_quaternions(
            [
                [Quaternion(2.6), Quaternion(0, 2.5)],
                [Quaternion(0, 2.48), Quaternion(-2.0)],
            ]
        )
    )
    assert mg * (1.0 + math.sqrt(6.2)) >= 1.0
    assert mg * (1.0 + math.sqrt(5.2)) < 1.0
    assert jorgensen_test(g, h).verdict is Verdict.CONDITION_HOLDS
    trace = conjugation_orbit(g, h, steps=12)
    assert trace.branch == "T2"
    assert trace.R is not None and trace.R < trace.T2 < 1.0
    assert trace.bounds_hold
    assert trace.steps[12].pi < trace.steps[1].pi * 1e-6


def test_recursion_matches_direct_conjugation():
    rng = np.random.default_rng(9)
    g = slow_loxodromic()
    h = small_perturbation(2, rng, scale=0.3)
    trace = conjugation_orbit(g, h, steps=8)
    for step in trace.steps[1:]:
        assert step.formula_vs_matmul is not None
        assert step.formula_vs_matmul <= 1e-9


def test_fk_sequence_converges():
    rng = np.random.default_rng(10)
    g = slow_loxodromic()
    h = small_perturbation(2, rng, scale=0.3)
    elements, report = fk_sequence(g, h, K=8)
    assert len(elements) == 9
    assert report.converged
    assert report.distinct
    assert max(report.off_block_norms[-1]) <= 1e-8
    assert report.unitarity_defects[-1] <= 1e-8
    assert abs(report.corner_moduli[-1][0] - 1.05) <= 1e-6
    assert abs(report.corner_moduli[-1][1] - 1.0 / 1.05) <= 1e-6
    # Off-diagonal decay is monotone until it reaches the rounding floor.
    tail = [max(row) for row in report.off_block_norms[2:]]
    assert all(b < a for a, b in zip(tail, tail[1:]) if a > 1e-11)


def test_fk_sequence_degenerate_route():
    rng = np.random.default_rng(11)
    g = slow_loxodromic()
    with pytest.raises(DegenerateOrbitError) as err:
        fk_sequence(g, both_stabilizer(rng), K=4)
    assert err.value.step == 0
    assert err.value.verdict is Verdict.DEGENERATE_ELEMENTARY


def test_outcome_json_shape():
    rng = np.random.default_rng(12)
    outcome = jorgensen_test(slow_loxodromic(), small_perturbation(2, rng))
    doc = outcome.to_json_dict()
    assert doc["verdict"] == "ConditionHolds_ElementaryOrNonDiscrete"
    assert set(doc) == {"verdict", "mg", "crossAbs1", "crossAbs2", "witnesses"}


def test_orbit_trace_csv_rows():
    rng = np.random.default_rng(13)
    trace = conjugation_orbit(slow_loxodromic(), small_perturbation(2, rng), steps=4)
    header, rows = trace.csv_rows()
    assert header[:4] == ["k", "pi", "sqrt_pi", "bound"]
    assert len(rows) == 5
    assert rows[0][0] == 0
