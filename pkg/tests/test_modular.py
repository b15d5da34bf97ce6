import numpy as np
import pytest
from numpy.testing import assert_allclose

from topospin.category import FusionCategory, fibonacci, ising
from topospin.errors import ValidationError, ZeroPhi
from topospin.modular import (
    doubled,
    higher_central_charge,
    lens_partition,
    phi_closed_form_zn,
    phi_invariant,
    twisted_zn,
)

GOLDEN = (1 + np.sqrt(5)) / 2


def test_twisted_cyclic_spectrum():
    md = twisted_zn(3, 1)
    assert md.n == 9
    assert_allclose(md.dims, 1.0)
    assert_allclose(md.d_total, 3.0, rtol=1e-15)
    # the (s, m) twist is quadratic in the flux and linear in the charge
    for s in range(3):
        for m in range(3):
            want = np.exp(2j * np.pi * (s * s / 9 + m * s / 3))
            got = md.twists[s * 3 + m]
            assert abs(got - want) < 1e-15


def test_twist_spectrum_is_periodic_in_coupling():
    # round before sorting so near-tied real parts pair up stably
    for N in (2, 3, 5):
        a = np.sort_complex(np.round(twisted_zn(N, 1).twists, 12))
        b = np.sort_complex(np.round(twisted_zn(N, 1 + N).twists, 12))
        assert_allclose(a, b, atol=1e-11)


def test_reference_values():
    assert abs(phi_invariant(twisted_zn(3, 1), 3) - 1j * np.sqrt(3)) < 1e-14
    assert abs(phi_invariant(twisted_zn(2, 1), 2)) < 1e-14
    assert abs(phi_invariant(twisted_zn(2, 0), 2) - 2) < 1e-14
    for p in range(2):
        assert abs(phi_invariant(twisted_zn(2, p), 4) - 2) < 1e-14
    for p in range(4):
        want = 1 + (-1) ** p
        assert abs(phi_invariant(twisted_zn(4, p), 2) - want) < 1e-14


def test_closed_form_matches_twist_sum():
    for N in range(2, 13):
        for p in range(N):
            for r in range(2, 9):
                full = phi_invariant(twisted_zn(N, p), r)
                short = phi_closed_form_zn(N, p, r)
                assert abs(full - short) <= 1e-12 * max(1.0, abs(full))


def test_lens_value_is_phi_over_total_dimension():
    for md in (twisted_zn(3, 1), doubled(fibonacci())):
        for r in (2, 3, 5):
            got = lens_partition(md, r)
            assert abs(got * md.d_total - phi_invariant(md, r)) < 1e-12


def test_doubled_golden_model():
    dd = doubled(fibonacci())
    assert dd.n == 4
    assert_allclose(sorted(dd.dims), [1.0, GOLDEN, GOLDEN, GOLDEN**2], rtol=1e-15)
    # twists pair up with their conjugates, so the double is reflection-even
    assert abs(np.sum(dd.twists).imag) < 1e-14
    assert abs(phi_invariant(dd, 2) - GOLDEN**2) < 1e-13


def test_doubled_needs_twists():
    fib = fibonacci()
    bare = FusionCategory(fib.labels, fib.dual, fib.dims, fib.fusion, fib.f)
    with pytest.raises(ValidationError):
        doubled(bare)


def test_prime_magnitudes():
    # odd primes carry the full quadratic-sum magnitude; the even prime
    # cancels completely (1 + e^{i pi p} = 0 for odd p)
    for N in (3, 5, 7):
        for p in range(1, N):
            val = phi_invariant(twisted_zn(N, p), N)
            assert abs(abs(val) - np.sqrt(N)) < 1e-12
    assert abs(phi_invariant(twisted_zn(2, 1), 2)) < 1e-12


def test_central_charge_phase():
    z = higher_central_charge(twisted_zn(3, 1), 3)
    assert abs(abs(z) - 1.0) < 1e-14
    assert abs(z - 1j) < 1e-14
    with pytest.raises(ZeroPhi):
        higher_central_charge(twisted_zn(2, 1), 2)


def test_ising_double_reference_value():
    dd = doubled(ising())
    assert abs(phi_invariant(dd, 2) - (2 + np.sqrt(2))) < 1e-13
    assert abs(phi_invariant(dd, 3) - 1.0) < 1e-13
