import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hopfknot.foundation import GuardExceeded, expr_canonicalize, parse_expr
from hopfknot.heegaard import lens_space_heegaard, poincare_heegaard
from hopfknot.hennings import chain_mail_fast_path, evaluate_TR, upward_sites, z_henn
from hopfknot.hopf_core import HopfError
from hopfknot.link_diagrams import chain_mail, framed_unknot, from_morse, hopf_link, lens_space_chain, with_kink_pair
from conftest import algebra
from helpers import FIXTURES
from oracles import gauss_hennings
from test_foundation import GOLDEN_POINCARE

SMALL = ["cyclic:3", "cyclic:5", "cyclic:7", "double-cyclic:2", "double-cyclic:3"]
EMPTY = from_morse([])


def mirror(L):
    flip = {"x+": "x-", "x-": "x+"}
    return from_morse([(flip.get(k, k), p) for k, p in L.slices])


@pytest.mark.parametrize("alg", SMALL)
def test_empty_link(alg):
    H, R = algebra(alg)
    assert evaluate_TR(EMPTY, H, R) == 1 and abs(z_henn(EMPTY, H, R) - 1) < 1e-12


def test_zero_framed_unknot():
    H, R = algebra("cyclic:3")
    assert abs(evaluate_TR(framed_unknot(0), H, R) - np.sqrt(3)) < 1e-12
    assert abs(z_henn(framed_unknot(0), H, R) - np.sqrt(3)) < 1e-12


@pytest.mark.parametrize("alg", SMALL)
@pytest.mark.parametrize("framing", [1, -1])
def test_unit_framed_unknot_is_s3(alg, framing):
    H, R = algebra(alg)
    assert abs(z_henn(framed_unknot(framing), H, R) - 1) < 1e-10


def test_hopf_link_against_double_sum():
    H, R = algebra("cyclic:3")
    # (λ⊗λ)(R₂₁R) summed directly over the 9 × 9 term pairs
    terms = [(i, j, R.value[i, j]) for i in range(3) for j in range(3) if abs(R.value[i, j]) > 1e-14]
    total, pairs = 0j, 0
    for i0, j0, c0 in terms:
        for i1, j1, c1 in terms:
            left = H.mul(H.basis_vector(j1), H.basis_vector(i0))
            right = H.mul(H.basis_vector(i1), H.basis_vector(j0))
            total += c0 * c1 * (H.lam @ left) * (H.lam @ right)
            pairs += 1
    assert pairs == 81
    assert abs(evaluate_TR(hopf_link(), H, R) - total) < 1e-12
    assert abs(z_henn(hopf_link(), H, R) - 1) < 1e-12  # the Hopf link presents S³


def test_base_site_independence():
    H, R = algebra("double-cyclic:2")
    L = chain_mail(lens_space_heegaard(3, 1)).link
    ref = evaluate_TR(L, H, R)
    for k in range(L.n_components):
        for b in range(len(upward_sites(L, k))):
            assert abs(evaluate_TR(L, H, R, base_sites={k: b}) - ref) < 1e-10


@settings(max_examples=12, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1), (5, 2)]), st.data())
def test_kink_pair_invariance(pq, data):
    H, R = algebra("cyclic:3")
    L = lens_space_chain(*pq)
    i = data.draw(st.integers(0, len(L.slices) - 2))
    width = sum(2 if k == "cup" else -2 if k == "cap" else 0 for k, _ in L.slices[: i + 1])
    pos = data.draw(st.integers(0, width - 1))
    assert abs(evaluate_TR(with_kink_pair(L, i, pos), H, R) - evaluate_TR(L, H, R)) < 1e-9


@pytest.mark.parametrize("c", [0.5, 2.0, 7.0])
def test_gauge_rescale(c):
    H, R = algebra("double-cyclic:3")
    L = lens_space_chain(5, 2)
    assert abs(z_henn(L, H.rescaled(c), R) - z_henn(L, H, R)) < 1e-10


@pytest.mark.parametrize("pq", [(2, 1), (3, 1), (5, 2), (7, 3)])
@pytest.mark.parametrize("n", [3, 5])
def test_surgery_golden(golden, pq, n):
    H, R = algebra(f"cyclic:{n}")
    want = complex(*golden["hennings_surgery"][f"lens:{pq[0]}:{pq[1]}|cyclic:{n}"])
    assert abs(z_henn(lens_space_chain(*pq), H, R) - want) < 1e-9


def test_known_surgery_values():
    H, R = algebra("cyclic:3")
    assert abs(z_henn(lens_space_chain(3, 1), H, R) - 1j * np.sqrt(3)) < 1e-10
    H, R = algebra("cyclic:5")
    assert abs(z_henn(lens_space_chain(5, 2), H, R) + np.sqrt(5)) < 1e-10


@pytest.mark.parametrize("pq", [(3, 1), (5, 2), (7, 2)])
def test_mirror_conjugates(pq):
    H, R = algebra("cyclic:3")
    L = lens_space_chain(*pq)
    assert abs(z_henn(mirror(L), H, R) - np.conj(z_henn(L, H, R))) < 1e-10
    assert abs(gauss_hennings([[-v for v in row] for row in [[3]]], 3) - np.conj(gauss_hennings([[3]], 3))) < 1e-12


@pytest.mark.parametrize("name", ["s3", "s1xs2", "lens:2:1", "lens:3:1", "lens:5:2"])
@pytest.mark.parametrize("alg", SMALL)
def test_fast_path_equals_generic(name, alg):
    H, R = algebra(alg)
    D = FIXTURES[name]()
    fast = chain_mail_fast_path(D, H, R).value
    # C[Z_7] on L(5,2) plans ~3e8 multiplications, above the default cap
    generic = z_henn(chain_mail(D).link, H, R, guard=10**9)
    assert abs(fast - generic) < 1e-9 * max(1, abs(fast))


def test_fast_path_genus_two():
    H, R = algebra("cyclic:3")
    D = FIXTURES["lens:2:1#lens:3:1"]()
    assert abs(chain_mail_fast_path(D, H, R).value - z_henn(chain_mail(D).link, H, R)) < 1e-9


def test_fast_path_poincare_expression():
    H, R = algebra("double-cyclic:2")
    fp = chain_mail_fast_path(poincare_heegaard(), H, R)
    assert fp.expr == expr_canonicalize(parse_expr(GOLDEN_POINCARE))


def test_requires_gauge():
    from hopfknot import cyclic_group_algebra

    H, R = cyclic_group_algebra(3)
    with pytest.raises(HopfError):
        evaluate_TR(hopf_link(), H, R)


def test_guard():
    H, R = algebra("double-cyclic:3")
    with pytest.raises(GuardExceeded):
        evaluate_TR(chain_mail(lens_space_heegaard(5, 2)).link, H, R, guard=10)
