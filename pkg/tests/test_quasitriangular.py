import cmath

import numpy as np
import pytest

from hopfknot import cyclic_group, cyclic_group_algebra, drinfeld_double, gauged, symmetric_group
from hopfknot.hopf_core import HopfError
from hopfknot.quasitriangular import (
    check_quasitriangular,
    check_tau,
    drinfeld_element,
    drinfeld_map,
    is_factorizable,
    make_rmatrix,
    ribbon_canonical,
)


@pytest.mark.parametrize("n", range(1, 9))
def test_factorizable_iff_odd(n):
    H, R = cyclic_group_algebra(n)
    assert is_factorizable(H, R) == (n % 2 == 1)


def test_doubles_factorizable():
    for G in (cyclic_group(2), cyclic_group(3), symmetric_group(3)):
        assert is_factorizable(*drinfeld_double(G))


def test_trivial_r_not_factorizable():
    H, _ = cyclic_group_algebra(3)
    one = np.zeros((3, 3))
    one[0, 0] = 1
    assert not is_factorizable(H, make_rmatrix(H, one))


def test_quasitriangular_axioms():
    for H, R in (cyclic_group_algebra(3), drinfeld_double(cyclic_group(2))):
        assert check_quasitriangular(H, R).ok


def test_trivial_r_fails_on_nonabelian_double():
    H, _ = drinfeld_double(symmetric_group(3))
    one = np.zeros((36, 36))
    unit = np.nonzero(H.unit)[0]
    one[np.ix_(unit, unit)] = 1
    rep = check_quasitriangular(H, make_rmatrix(H, one))
    assert "R Δ(x) = Δ^op(x) R" in rep.failed()


def test_drinfeld_element_cyclic3():
    H, R = cyclic_group_algebra(3)
    w = cmath.exp(2j * cmath.pi / 3)
    u = drinfeld_element(H, R)
    want = np.zeros(3, complex)
    for a in range(3):
        for b in range(3):
            want[(a - b) % 3] += w ** (-a * b) / 3
    assert np.allclose(u, want)
    assert u[0] == pytest.approx((1 + 2 * w**2) / 3)


def test_drinfeld_element_trivial_and_central():
    H, R = cyclic_group_algebra(1)
    assert np.allclose(drinfeld_element(H, R), [1])
    H, R = drinfeld_double(cyclic_group(2))
    u = drinfeld_element(H, R)
    for i in range(4):
        e = H.basis_vector(i)
        assert np.allclose(H.mul(u, e), H.mul(e, u))


def test_drinfeld_map_values():
    H, R = cyclic_group_algebra(3)
    assert np.allclose(drinfeld_map(H, R, H.counit), H.unit)
    assert np.allclose(drinfeld_map(H, R, np.eye(3)[0]), np.ones(3) / 3)
    G = gauged(H, R)
    assert np.allclose(drinfeld_map(H, R, G.lam), G.Lam)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_ribbon_cyclic(n, golden):
    H, R = cyclic_group_algebra(n)
    rib = ribbon_canonical(gauged(H, R), R)
    assert rib.lambda_theta * rib.lambda_theta_inv == pytest.approx(1, abs=1e-9)
    assert rib.lambda_theta == pytest.approx(complex(*golden["gauge"][f"cyclic:{n}"]["lambda_theta"]), abs=1e-9)


def test_ribbon_trivial():
    H, R = cyclic_group_algebra(1)
    rib = ribbon_canonical(gauged(H, R), R)
    assert np.allclose(rib.theta, [1]) and rib.lambda_theta == pytest.approx(1)


def test_ribbon_needs_gauge():
    with pytest.raises(HopfError):
        ribbon_canonical(*cyclic_group_algebra(3))


@pytest.mark.parametrize("n", [1, 3, 5])
def test_tau_conjugation(n):
    H, R = cyclic_group_algebra(n)
    assert check_tau(H, R, np.eye(n))


def test_tau_without_conjugation_fails():
    # a linear identity would leave R unchanged; R itself is not R21⁻¹ for n >= 3
    H, R = cyclic_group_algebra(3)
    assert not np.allclose(R.value, R.inverse.T)
