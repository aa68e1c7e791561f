from fractions import Fraction

from hypothesis import given, strategies as st

from connaug import bounds


def test_harmonic():
    assert bounds.harmonic(5) == Fraction(137, 60)
    assert bounds.harmonic(Fraction(7, 2)) == Fraction(11, 6)
    assert bounds.harmonic(Fraction(1, 2)) == 0


def test_phase2_bound_cycle():
    # |T|=5, k=2: 3|T|/(|T|-k) = 5
    assert bounds.phase2_bound(5, 2) == 25 * Fraction(137, 60)


def test_recurrence_first_iteration():
    # |T|=10, k=2, nu=10: alpha=3/5, beta=1/2, so nu_next <= 6.5
    assert bounds.recurrence_holds(10, 2, 10, 6)
    assert not bounds.recurrence_holds(10, 2, 10, 7)


def test_closed_form_steps_example():
    assert bounds.closed_form_steps(10, 10, 2) == 1


def test_recurrence_steps_definition():
    j = bounds.recurrence_steps(10, 10, 2)
    assert j == 2
    a = bounds.alpha(10, 2)
    lhs = 10 - bounds.fixed_point(10, 2)
    assert a**j * lhs <= 2 / (1 - a) < a ** (j - 1) * lhs


def test_named_constants():
    assert bounds.fixed_point(10, 2) == Fraction(10, 8)
    assert bounds.nu_j_bound(10, 2) == Fraction(50, 8)
    assert bounds.outcover_min(5, 5, 2) == 2
    assert bounds.transversal_bound(5, 5, 2, 1) == 5 + Fraction(10, 3)


@given(t=st.integers(2, 40), k=st.integers(0, 39), nu=st.integers(0, 40))
def test_recurrence_consistency(t, k, nu):
    if k >= t:
        return
    j = bounds.recurrence_steps(nu, t, k)
    a = bounds.alpha(t, k)
    assert a**j * (nu - bounds.fixed_point(t, k)) <= 2 / (1 - a)
    # the closed floor never overshoots the least valid j
    assert bounds.closed_form_steps(nu, t, k, approx=False) <= j
    # nu_j from the unrolled recurrence stays under 5|T|/(|T|-k)
    assert a**j * (nu - bounds.fixed_point(t, k)) + bounds.fixed_point(t, k) <= bounds.nu_j_bound(t, k)
