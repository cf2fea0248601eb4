import math

import pytest

from depbounds.bounds import (
    RangeSpec,
    bosq_bound,
    cascade_bound,
    fractional_soft_cover_bound,
    hoeffding_bound,
    janson_bound,
    lattice_bound,
    lipschitz_sup_bound,
    lower_bound_tail,
    lp_distance_bound,
    mixing_bound,
    optimize_lambda,
    soft_cover_bound,
    variance_bound,
)
from depbounds.errors import (
    BlockMismatch,
    DomainViolation,
    InvalidChi,
    InvalidP,
    LambdaOutOfRange,
    NonpositiveT,
)


def test_hoeffding_value_and_domain():
    assert hoeffding_bound(100, 0.1).value == pytest.approx(
        math.exp(-2.0), abs=1e-15
    )
    with pytest.raises(NonpositiveT):
        hoeffding_bound(100, 0.0)


def test_janson_reduces_to_hoeffding_at_chi_one():
    r = RangeSpec.unit(50)
    assert janson_bound(50, 0.1, 1.0, r).value == pytest.approx(
        hoeffding_bound(50, 0.1).value, abs=1e-15
    )
    with pytest.raises(InvalidChi):
        janson_bound(50, 0.1, 0.5, r)


def test_soft_cover_bound_spot_value():
    v = soft_cover_bound(100, 0.2, 0.1, 0.0, 2.0, RangeSpec.unit(100)).value
    assert v == pytest.approx(math.exp(-1.0), abs=1e-12)


def test_soft_cover_bound_terms_sum():
    b = soft_cover_bound(40, 0.3, 0.1, 0.002, 2.0, RangeSpec.unit(40))
    assert b.value == pytest.approx(sum(b.terms.values()), abs=1e-15)
    assert b.terms["dependence_term"] == pytest.approx(
        18 * 40 * 0.002 / math.sqrt(0.1), abs=1e-12
    )


def test_soft_cover_bound_headline_note_at_half_t():
    b = soft_cover_bound(40, 0.2, 0.1, 0.0, 2.0, RangeSpec.unit(40))
    assert b.note is not None
    assert b.params["headline_exp_term"] == pytest.approx(
        math.exp(-40 * 0.04 / 16.0), abs=1e-15
    )


def test_lambda_domain_checked():
    r = RangeSpec.unit(10)
    for lam in (0.0, 0.2, 0.3):
        with pytest.raises(LambdaOutOfRange):
            soft_cover_bound(10, 0.2, lam, 0.0, 1.0, r)


def test_fractional_tight_vs_loose():
    r = RangeSpec.unit(100)
    tight = fractional_soft_cover_bound(100, 0.2, 0.1, 0.0, 2.0, r, "tight")
    loose = fractional_soft_cover_bound(100, 0.2, 0.1, 0.0, 2.0, r, "loose")
    assert tight.value <= loose.value + 1e-15
    # loose spot value: 2 exp(-0.25) with chi*=2
    assert loose.value == pytest.approx(2 * math.exp(-0.25), abs=1e-12)
    assert loose.clipped == 1.0


def test_lower_bound_tail_spot_values():
    assert lower_bound_tail(8, 1, 0.0).value == pytest.approx(
        math.exp(-2.0) / 15.0, abs=1e-12
    )
    b = lower_bound_tail(8, 1, 1.0 / 32)
    assert b.terms["dependence_term"] == pytest.approx(
        4 * 8 * (1.0 / 32) * math.comb(7, 4) / 256.0, abs=1e-15
    )
    with pytest.raises(DomainViolation):
        lower_bound_tail(7, 0, 0.0)
    with pytest.raises(DomainViolation):
        lower_bound_tail(8, 2, 0.0)
    with pytest.raises(DomainViolation):
        lower_bound_tail(8, 1, 1.0)


def test_variance_bound_spot_value():
    b = variance_bound(100, 0.4, 0.2, 0.0, 1.0)
    assert b.value == pytest.approx(2 * math.exp(-0.5), abs=1e-12)


def test_lp_distance_spot_value():
    assert lp_distance_bound(1.0, 0.001, 1.0) == pytest.approx(0.036, abs=1e-15)
    # p -> infinity limit is gentle: value -> range * 1
    assert lp_distance_bound(2.0, 0.01, 1.0) == pytest.approx(
        math.sqrt(18 * 2 * 0.01 / 1.5), abs=1e-12
    )
    with pytest.raises(InvalidP):
        lp_distance_bound(0.5, 0.01, 1.0)


def test_lipschitz_bound_structure():
    b = lipschitz_sup_bound(50, 0.5, 0.001, 2.0, 1.0, 1.0, 1.0)
    assert b.terms["exp_term"] == pytest.approx(
        math.exp(-50 * 0.25 / 4.0), abs=1e-15
    )
    with pytest.raises(DomainViolation):
        lipschitz_sup_bound(50, 1.5, 0.001, 2.0, 1.0, 1.0, 1.0)


def test_mixing_bound_spot_and_block_check():
    b = mixing_bound(24, 6, 4, 0.4, 0.0)
    assert b.value == pytest.approx(math.exp(-6 * 0.16 / 2), abs=1e-12)
    with pytest.raises(BlockMismatch):
        mixing_bound(24, 5, 4, 0.4, 0.0)


def test_bosq_spot_value():
    b = bosq_bound(100, 50, 0.4, 0.0)
    assert b.value == pytest.approx(4 * math.exp(-1.0), abs=1e-12)
    assert b.clipped == 1.0


def test_lattice_and_cascade_terms():
    b = lattice_bound(25, 0.2, 5.0, 25.0, 1.0, 3)
    assert b.terms["dependence_term"] == pytest.approx(
        25 * math.exp(-3.0), abs=1e-12
    )
    c = cascade_bound(20, 0.3, 3.0, 4.0, 4.0, 0.05, 2)
    assert c.value == pytest.approx(math.exp(-1.2) + 4 * 20 * 0.04, abs=1e-9)
    assert c.note and "conjecture" in c.note


def test_optimize_lambda_beats_half_t():
    def ev(lam):
        return soft_cover_bound(60, 0.3, lam, 0.0005, 2.0, RangeSpec.unit(60))

    lam_star, best, half = optimize_lambda(ev, 0.3)
    assert 0 < lam_star < 0.3
    assert best.value <= half.value + 1e-12
    # local optimality: small perturbations cannot beat it
    for eps in (-1e-4, 1e-4):
        lam = lam_star + eps
        if 0 < lam < 0.3:
            assert ev(lam).value >= best.value - 1e-9


def test_optimize_lambda_gamma_zero_pushes_lambda_small():
    # with no dependence term the exponential alone decides; the optimum
    # drives lambda toward zero
    def ev(lam):
        return soft_cover_bound(60, 0.3, lam, 0.0, 2.0, RangeSpec.unit(60))

    lam_star, best, _ = optimize_lambda(ev, 0.3)
    assert best.value <= ev(0.15).value + 1e-12
    assert lam_star < 0.05
