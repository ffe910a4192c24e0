import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from rankdual.characters import (
    adjugate,
    bareiss_det,
    char_value,
    char_value_oracle,
    dominant_multiplicities,
    index_sets,
    label_from_integers,
    label_from_u0,
    perm_sign,
    phi_k,
    root_product,
    verify_center_trace,
    verify_char_duality,
    verify_minor_identity,
    verify_trace_lemma,
    verify_trig1,
    verify_trig2,
)
from rankdual.errors import DomainError, ResourceError
from rankdual.numeric import NumericConfig
from rankdual.weights import BWeight, YoungDiagram, diagrams_in_box, enumerate_level_set, sigma, u_label

from oracles import character_by_weights, leibniz_det, weight_system

TOL = 1e-9


def weyl_dimension(w: BWeight) -> Fraction:
    r = w.rank
    rho2 = [2 * (r - i) - 1 for i in range(r)]
    v = [x + p for x, p in zip(w.twice_l, rho2)]
    num = den = Fraction(1)
    for i in range(r):
        num *= v[i]
        den *= rho2[i]
        for j in range(i + 1, r):
            num *= (v[i] - v[j]) * (v[i] + v[j])
            den *= (rho2[i] - rho2[j]) * (rho2[i] + rho2[j])
    return num / den


def test_weight_system_dimension_matches_weyl():
    for fund in [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 0, 0), (1, 1, 0), (0, 0, 2), (1, 0, 1)]:
        w = BWeight(3, fund)
        assert sum(weight_system(w).values()) == weyl_dimension(w)
    assert sum(dominant_multiplicities(BWeight.omega(3, 1)).values()) == 2


def test_dominant_multiplicities_too_large():
    with pytest.raises(ResourceError):
        dominant_multiplicities(BWeight(3, (30, 0, 0)))


def test_trivial_character():
    for mu in enumerate_level_set(3, 7):
        assert abs(char_value(BWeight.zero(3), u_label(mu, 7)) - 1) < TOL


def test_vector_character_closed_form():
    u = u_label(BWeight.zero(3), 7)
    want = 1 + sum(2 * math.cos(math.pi * float(x) / 6) for x in u.entries)
    assert abs(char_value(YoungDiagram((1,)), u) - want) < TOL


def test_character_against_freudenthal_oracle():
    lams = [BWeight(3, f) for f in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 0, 0), (1, 1, 0), (0, 1, 1), (3, 0, 0)]]
    for mu in enumerate_level_set(3, 7)[::3]:
        u = u_label(mu, 7)
        for lam in lams:
            assert abs(char_value(lam, u) - char_value_oracle(lam, u)) < TOL


def test_character_against_float_weight_sum():
    u = u_label(BWeight(4, (1, 0, 1, 0)), 5)
    for lam in [BWeight(4, (0, 1, 0, 0)), BWeight(4, (0, 0, 0, 1)), BWeight(4, (1, 0, 0, 2))]:
        assert abs(complex(char_value(lam, u)) - character_by_weights(lam, u.twice, u.k)) < 1e-8


def test_character_value_is_real():
    for mu in enumerate_level_set(3, 5):
        assert abs(char_value(BWeight(3, (1, 1, 1)), u_label(mu, 5)).imag) < TOL


def test_phi_examples():
    assert abs(phi_k([], 6) - 1) < TOL
    for a in range(1, 6):
        assert abs(phi_k([a], 2 * a) - 4) < TOL


def test_phi_matches_root_product():
    for mu in enumerate_level_set(3, 5):
        u = u_label(mu, 5)
        assert abs(phi_k(u.entries, u.k) - root_product(u)) < TOL


def test_phi_sums_to_normalization():
    # sum over the level set of Phi / (4 k^r) is the genus-0 empty-insertion dimension 1
    for r, level in [(3, 1), (3, 4), (4, 2)]:
        labels = [u_label(w, level) for w in enumerate_level_set(r, level)]
        k = labels[0].k
        total = sum(phi_k(u.entries, k) for u in labels) / (4 * k**r)
        assert abs(total - 1) < TOL


def test_bareiss_matches_leibniz():
    rng = np.random.default_rng(11)
    for n in range(1, 6):
        for _ in range(10):
            m = rng.integers(-6, 7, size=(n, n)).tolist()
            assert bareiss_det(m) == leibniz_det(m)


def test_adjugate_product_is_scalar():
    rng = np.random.default_rng(3)
    m = rng.integers(-4, 5, size=(5, 5)).tolist()
    adj = adjugate(m)
    d = bareiss_det(m)
    for i in range(5):
        for j in range(5):
            assert sum(m[i][k] * adj[k][j] for k in range(5)) == (d if i == j else 0)


def test_perm_sign():
    assert perm_sign([1, 2, 3]) == 1
    assert perm_sign([2, 1, 3]) == -1
    assert perm_sign([3, 1, 2]) == 1


def test_minor_identity_identity_matrix():
    n = 6
    eye = [[int(i == j) for j in range(n)] for i in range(n)]
    for u in itertools.combinations(range(1, n + 1), 3):
        assert verify_minor_identity(eye, u, u)


def test_minor_identity_permutation_matrices():
    rng = np.random.default_rng(5)
    for _ in range(20):
        p = rng.permutation(6)
        a = [[int(p[i] == j) for j in range(6)] for i in range(6)]
        u = [int(x) + 1 for x in rng.permutation(6)[:3]]
        t = [int(x) + 1 for x in rng.permutation(6)[:3]]
        assert verify_minor_identity(a, u, t)


def test_minor_identity_rejects_bad_input():
    with pytest.raises(DomainError):
        verify_minor_identity([[1, 2, 3], [4, 5, 6]], [1], [1])
    with pytest.raises(DomainError):
        verify_minor_identity([[1, 0], [0, 1]], [1, 2], [1])
    with pytest.raises(DomainError):
        verify_minor_identity([[1, 0], [0, 1]], [1], [1], b=[[1, 1], [0, 1]])


def test_minor_identity_non_scalar_diagonal():
    # B = adj(A) D' makes AB diagonal with unequal entries
    a = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    adj = adjugate(a)
    scale = [1, 2, -3]
    b = [[adj[i][j] * scale[j] for j in range(3)] for i in range(3)]
    for u in itertools.permutations([1, 2, 3], 2):
        for t in itertools.permutations([1, 2, 3], 2):
            assert verify_minor_identity(a, u, t, b)


def test_index_sets_empty_diagram():
    ix = index_sets(YoungDiagram(()), 3, 3)
    assert ix.alpha == (3, 2, 1)
    assert ix.beta == (6, 5, 4)


def test_char_duality_examples():
    rep = verify_char_duality(YoungDiagram(()), 3, 3, u=(6, 2, 1))
    assert rep.passed and rep.sign == 1 and abs(rep.lhs - 1) < TOL
    rep = verify_char_duality(YoungDiagram((1,)), 3, 3, u=(6, 2, 1))
    assert rep.passed and rep.sign == -1


def test_char_duality_exhaustive_small():
    for r, s in [(3, 3), (3, 4)]:
        for lam in diagrams_in_box(r, s, 4):
            for sub in itertools.combinations(range(r + s, 0, -1), r):
                assert verify_char_duality(lam, r, s, u=sub).passed
                assert verify_char_duality(lam, r, s, u0=sub).passed


def test_char_duality_argument_errors():
    with pytest.raises(DomainError):
        verify_char_duality(YoungDiagram((1,)), 3, 3)
    with pytest.raises(DomainError):
        verify_char_duality(YoungDiagram((4,)), 3, 3, u=(6, 2, 1))


def test_center_trace_examples():
    zero = BWeight.zero(3)
    assert verify_center_trace([zero, zero], zero, 7)
    one = YoungDiagram((1,))
    assert verify_center_trace([one, one], zero, 7)
    for mu in enumerate_level_set(3, 7):
        assert verify_center_trace([YoungDiagram((2,)), YoungDiagram((1, 1))], mu, 7)


def test_center_acts_by_class():
    # tensor characters are invariant under mu -> sigma(mu), spin characters change sign
    for mu in enumerate_level_set(3, 7):
        a, b = u_label(mu, 7), u_label(sigma(mu, 7), 7)
        assert abs(char_value(BWeight(3, (1, 1, 0)), a) - char_value(BWeight(3, (1, 1, 0)), b)) < TOL
        assert abs(char_value(BWeight.omega(3, 3), a) + char_value(BWeight.omega(3, 3), b)) < TOL


def test_center_trace_rejects_odd_spin_count():
    with pytest.raises(DomainError):
        verify_center_trace([BWeight.omega(3, 3)], BWeight.zero(3), 7)


def test_trace_lemma():
    for r, s in [(3, 3), (3, 4)]:
        assert all(ok for _, ok in verify_trace_lemma(r, s))


def test_trace_lemma_labels_classes():
    assert label_from_integers((6, 2, 1), 7).is_integral
    assert not label_from_u0((3, 2, 1), 7).is_integral


def test_trig_lemmas():
    for a in range(2, 7):
        for n in range(a):
            for v in itertools.combinations(range(1, a), n):
                assert verify_trig1(v, a)
        halves = [Fraction(2 * i + 1, 2) for i in range(a)]
        for n in range(a + 1):
            for v in itertools.combinations(halves, n):
                assert verify_trig2(v, a)


def test_trig_rejects_out_of_range():
    with pytest.raises(DomainError):
        verify_trig1([5], 3)
    with pytest.raises(DomainError):
        verify_trig2([1], 3)


def test_precision_is_respected():
    low = NumericConfig(prec=60)
    u = u_label(BWeight(3, (2, 1, 0)), 7)
    lam = BWeight(3, (1, 1, 2))
    assert abs(char_value(lam, u, low) - char_value(lam, u)) < 1e-12
    with pytest.raises(ValueError):
        NumericConfig(prec=20)
