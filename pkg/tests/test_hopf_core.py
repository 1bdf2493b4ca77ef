import math
from dataclasses import replace

import numpy as np
import pytest

from hopfknot import cyclic_group_algebra, drinfeld_double, cyclic_group, gauged
from hopfknot.foundation import Atom, InputError, SweedlerExpr
from hopfknot.hopf_core import (
    HopfError,
    check_trace_properties,
    dump_json,
    evaluate_expr,
    fix_gauge,
    is_semisimple,
    iterated_coproduct,
    load_json,
    solve_cointegral,
    solve_integral,
    sweedler_algebra,
    verify_hopf_axioms,
)
from hopfknot.quasitriangular import drinfeld_map


def test_group_algebra_axioms_exact():
    H, _ = cyclic_group_algebra(3)
    assert verify_hopf_axioms(H, tol=1e-12).ok


def test_corrupted_antipode_detected():
    H, _ = cyclic_group_algebra(3)
    bad = replace(H, antipode=np.eye(3, dtype=complex), antipode_inv=np.eye(3, dtype=complex))
    rep = verify_hopf_axioms(bad)
    assert rep.failed() == ["antipode"]


def test_double_z2_axioms_against_direct_expansion():
    H, _ = drinfeld_double(cyclic_group(2))
    assert verify_hopf_axioms(H).ok
    # (δ_a⊗b)(δ_c⊗d) = δ_{a,c} δ_a⊗(b+d) for abelian G
    for a, b, c, d in np.ndindex(2, 2, 2, 2):
        want = np.zeros(4)
        if a == c:
            want[a * 2 + (b + d) % 2] = 1
        assert np.allclose(H.mult[a * 2 + b, c * 2 + d], want)


def test_iterated_coproduct():
    H, _ = cyclic_group_algebra(2)
    g = H.basis_vector(1)
    assert iterated_coproduct(H, g, 3).as_dict() == {(1, 1, 1): 1}
    c = 0.7
    Lam = c * (H.basis_vector(0) + g)
    got = iterated_coproduct(H, Lam, 3).as_dict()
    assert got.keys() == {(0, 0, 0), (1, 1, 1)} and all(math.isclose(abs(v), c) for v in got.values())
    assert iterated_coproduct(H, Lam, 0) == pytest.approx(2 * c)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_integrals_of_cyclic(n):
    H, _ = cyclic_group_algebra(n)
    lam = solve_integral(H)
    assert np.allclose(lam, np.eye(n)[0])
    Lam = solve_cointegral(H)
    assert np.allclose(Lam, np.ones(n))
    assert is_semisimple(H)


def test_double_cointegral_and_semisimple():
    H, _ = drinfeld_double(cyclic_group(2))
    Lam = solve_cointegral(H)
    for i in range(4):
        e = H.basis_vector(i)
        assert np.allclose(H.mul(e, Lam), H.counit[i] * Lam)
        assert np.allclose(H.mul(Lam, e), H.counit[i] * Lam)
    assert is_semisimple(H)


def test_sweedler_not_semisimple():
    H = sweedler_algebra()
    assert verify_hopf_axioms(H).ok
    assert not is_semisimple(H)


def test_corrupted_tables_rejected():
    H, _ = cyclic_group_algebra(3)
    with pytest.raises(HopfError):
        solve_integral(replace(H, comult=np.zeros_like(H.comult)))
    with pytest.raises(HopfError):
        solve_cointegral(replace(H, mult=np.zeros_like(H.mult)))


@pytest.mark.parametrize("n", [3, 5])
def test_gauge_cyclic(n, golden):
    H, R = cyclic_group_algebra(n)
    G = gauged(H, R)
    want = golden["gauge"][f"cyclic:{n}"]["lambda_one"]
    assert complex(G.lam @ G.unit) == pytest.approx(complex(*want), abs=1e-12)
    assert np.allclose(G.Lam, np.ones(n) / math.sqrt(n))
    assert check_trace_properties(G).ok


def test_gauge_refuses_even_cyclic():
    H, R = cyclic_group_algebra(2)
    with pytest.raises(HopfError):
        fix_gauge(H, lambda p: drinfeld_map(H, R, p))


def test_trace_properties_catch_scaled_antipode():
    H, R = cyclic_group_algebra(5)
    G = gauged(H, R)
    bad = replace(G, antipode=2 * G.antipode)
    assert "λ(S(x)) = λ(x)" in check_trace_properties(bad).failed()


def test_json_roundtrip():
    H, R = drinfeld_double(cyclic_group(2))
    H2, R2 = load_json(dump_json(H, R.value))
    assert np.allclose(H2.mult, H.mult) and np.allclose(H2.antipode, H.antipode) and np.allclose(R2, R.value)


@pytest.mark.parametrize("text", ["{", '{"dim": 2, "mult": [[0, 0, 5, 1, 0]]}', '{"mult": []}'])
def test_json_errors(text):
    with pytest.raises(InputError):
        load_json(text)


def test_evaluate_expr_basics(zoo):
    H, _ = zoo("cyclic:3")
    assert evaluate_expr(SweedlerExpr(((Atom(0, 1, 0),),)), H) == pytest.approx(1)
    # λ(Λ_(1) S(Λ_(2))) = ε(Λ) λ(1)
    e = SweedlerExpr(((Atom(0, 1, 0), Atom(0, 2, 1)),))
    assert evaluate_expr(e, H) == pytest.approx(complex(H.counit @ H.Lam) * complex(H.lam @ H.unit))
    assert evaluate_expr(SweedlerExpr(((),), idle=1), H) == pytest.approx(3)
