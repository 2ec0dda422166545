import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heckezeta.errors import NotHyperbolicError, ParameterError
from heckezeta.group import (GroupWord, MoebiusMap, UnitaryRep, branch_map, character_rep,
                             enumerate_primitive_classes, evaluate_rep, geodesic_length,
                             hull_endpoint, induce_from_index2, sign_rep, trivial_rep)


def test_hull_endpoint_values():
    assert abs(hull_endpoint(3) - (3 - math.sqrt(5)) / 2) < 1e-15
    assert abs(hull_endpoint(4) - (2 - math.sqrt(3))) < 1e-15
    for w in (2.1, 3.0, 7.5, 100.0):
        a = hull_endpoint(w)
        assert abs(a * (w - a) - 1) < 1e-14


@pytest.mark.parametrize("w", [2.0, 1.0, float("nan"), float("inf")])
def test_width_must_exceed_two(w):
    with pytest.raises(ParameterError):
        hull_endpoint(w)


def test_moebius_normalization_and_det():
    m = MoebiusMap.from_matrix([[-1, 0], [0, -1]])
    assert m.is_close(MoebiusMap.identity())
    with pytest.raises(ParameterError):
        MoebiusMap.from_matrix([[2, 0], [0, 1]])


def test_branch_map_formula_and_derivative():
    g = branch_map(2, 3.0)
    z = 0.1 + 0.05j
    assert abs(g(z) + 1 / (z + 6)) < 1e-15
    assert abs(g.derivative(z) - 1 / (z + 6) ** 2) < 1e-15
    with pytest.raises(ParameterError):
        branch_map(0, 3.0)


def test_s_is_involution():
    S = MoebiusMap.S()
    assert (S @ S).is_close(MoebiusMap.identity())


def test_word_parse_roundtrip():
    w = GroupWord.parse("(1,-2,3)")
    assert w.exponents == (1, -2, 3)
    assert GroupWord.parse(str(w)) == w


def test_canonical_is_least_rotation():
    assert GroupWord((3, -1, 2)).canonical().exponents == (-1, 2, 3)


def test_primitivity():
    assert not GroupWord((1, 2, 1, 2)).is_primitive
    assert GroupWord((1, 2, 2)).is_primitive


def test_lengths_w3():
    assert abs(geodesic_length(GroupWord((1,)), 3.0) - 2 * math.acosh(1.5)) < 1e-12
    assert abs(geodesic_length(GroupWord((1, 1)), 3.0) - 2 * math.acosh(3.5)) < 1e-12
    assert abs(geodesic_length(GroupWord((2,)), 3.0) - 2 * math.acosh(3.0)) < 1e-12


def test_parabolic_words_rejected():
    with pytest.raises(NotHyperbolicError):
        geodesic_length(GroupWord((1,), kind="T"), 3.0)


def test_length_invariant_under_rotation_and_inverse():
    w = GroupWord((1, -2, 3, 1))
    ell = geodesic_length(w, 3.0)
    assert abs(geodesic_length(GroupWord((-2, 3, 1, 1)), 3.0) - ell) < 1e-11
    assert abs(geodesic_length(w.inverse_class(), 3.0) - ell) < 1e-11


def test_enumeration_counts_w3():
    counts = {ell: len(enumerate_primitive_classes(3.0, ell)) for ell in (1.0, 2.0, 4.0, 6.0, 8.0)}
    assert counts == {1.0: 0, 2.0: 2, 4.0: 4, 6.0: 17, 8.0: 64}


def test_enumeration_is_complete_against_brute_force():
    # every primitive least-rotation word of length <= 5 letters |n| <= 6 with l <= 6.5
    import itertools
    w, L = 3.0, 6.5
    found = {c.exponents for c, _ in enumerate_primitive_classes(w, L)}
    letters = [n for n in range(-6, 7) if n]
    brute = set()
    for k in range(1, 5):
        for seq in itertools.product(letters, repeat=k):
            g = GroupWord(seq)
            if g.canonical().exponents != seq or not g.is_primitive:
                continue
            try:
                if geodesic_length(g, w) <= L:
                    brute.add(seq)
            except NotHyperbolicError:
                pass
    assert brute <= found


def test_enumeration_closed_under_inversion():
    classes = {c.exponents for c, _ in enumerate_primitive_classes(3.0, 7.0)}
    for e in classes:
        assert GroupWord(e).inverse_class().canonical().exponents in classes


def test_unitary_rep_validation():
    with pytest.raises(ParameterError):
        UnitaryRep(np.array([[2.0]]), np.eye(1))
    with pytest.raises(ParameterError):
        UnitaryRep(np.array([[1j]]), np.eye(1))  # U_S^2 != 1


def test_character_lambdas():
    r = character_rep(0.3)
    assert abs(r.lambdas[0] - 0.3) < 1e-14
    assert trivial_rep().lambdas[0] == 0.0


def test_induced_rep_is_trivial_plus_sign():
    ind = induce_from_index2(3.0)
    word = GroupWord((1, -2, 2))
    tr = np.trace(evaluate_rep(ind, word))
    tr2 = np.trace(evaluate_rep(trivial_rep(), word)) + np.trace(evaluate_rep(sign_rep(), word))
    assert abs(tr - tr2) < 1e-14


def test_self_conjugacy():
    assert trivial_rep().is_self_conjugate
    assert not character_rep(0.3).is_self_conjugate
    assert character_rep(0.5).is_self_conjugate


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4).filter(bool), min_size=1, max_size=5),
       st.floats(0.0, 1.0, exclude_max=True))
def test_rep_is_homomorphism_on_words(exps, lam):
    # rho(word) equals the product of rho(S T^n) letters
    rep = character_rep(lam, -1).direct_sum(induce_from_index2(3.0))
    word = GroupWord(tuple(exps))
    prod = np.eye(rep.dim, dtype=complex)
    for n in exps:
        prod = prod @ rep.U_S @ np.linalg.matrix_power(rep.U_T, n) if n > 0 else \
            prod @ rep.U_S @ np.linalg.matrix_power(rep.U_T.conj().T, -n)
    assert np.allclose(evaluate_rep(rep, word), prod, atol=1e-12)
