import itertools
import warnings

import pytest

from rankdual.errors import DomainError, SmallRankWarning
from rankdual.numeric import NumericConfig
from rankdual.verlinde import (
    duality_check,
    duality_insertions,
    factorization_check,
    fusion_coeff,
    lr_rule,
    propagation_check,
    verlinde_dim,
    verlinde_dim_orbit,
    verlinde_eval,
)
from rankdual.weights import BWeight, YoungDiagram, diagrams_in_box, enumerate_level_set, sigma, young_to_weight

from oracles import tensor_product

W1 = BWeight.omega(3, 1)
W3 = BWeight.omega(3, 3)
ZERO = BWeight.zero(3)


def Y(*rows):
    return young_to_weight(YoungDiagram(rows), 3)


def test_level_one_table():
    assert verlinde_dim(3, 1, 0, (W1, W1, ZERO)) == 1
    assert verlinde_dim(3, 1, 0, (W1, W1, W1)) == 0
    assert verlinde_dim(3, 1, 0, (W1, W1, W3)) == 0
    assert verlinde_dim(3, 1, 0, (W1, W3, W3)) == 1


def test_all_vector_parity():
    for n in range(1, 9):
        assert verlinde_dim(3, 1, 0, (W1,) * n) == (1 - n % 2)


def test_result_carries_residual():
    res = verlinde_eval(3, 7, 0, (Y(2, 1), Y(1), Y(2)))
    assert res.residual < 1e-6 and res.prec >= 160


def test_higher_genus():
    # genus 1 with no insertions counts the level set
    assert verlinde_dim(3, 7, 1, ()) == len(enumerate_level_set(3, 7))
    assert verlinde_dim(3, 1, 1, ()) == 3
    # genus 2 at level 1: sum of S_{0 mu}^{-2} over the three weights
    assert verlinde_dim(3, 1, 2, ()) == 10


def test_weight_above_level():
    with pytest.raises(DomainError):
        verlinde_dim(3, 1, 0, (Y(2),))
    with pytest.raises(DomainError):
        verlinde_dim(3, 1, -1, ())
    with pytest.raises(DomainError):
        verlinde_dim(3, 1, 0, (BWeight.zero(4),))


def test_two_point_delta():
    ws = enumerate_level_set(3, 3)
    for a in ws:
        for b in ws:
            assert verlinde_dim(3, 3, 0, (a, b)) == (1 if a == b else 0)


def test_orbit_sum_matches_full_sum():
    diagrams = [young_to_weight(y, 3) for y in diagrams_in_box(3, 3, 2)]
    for triple in itertools.combinations_with_replacement(diagrams, 3):
        assert verlinde_dim_orbit(3, 3, triple).dim == verlinde_dim(3, 7, 0, triple)


def test_orbit_examples():
    assert verlinde_dim_orbit(3, 3, (Y(1), Y(1))).dim == 1
    assert verlinde_dim_orbit(3, 3, (Y(1), Y(2), Y(1))).dim == 1
    with pytest.raises(DomainError):
        verlinde_dim_orbit(3, 3, (W3, W3))


def test_fusion_symmetric_and_normalized():
    ws = enumerate_level_set(3, 3)
    for lam in ws:
        assert fusion_coeff(3, 3, lam, lam, ZERO) == 1
    a, b, c = Y(1), Y(2, 1), Y(1, 1)
    vals = {fusion_coeff(3, 7, *p) for p in itertools.permutations((a, b, c))}
    assert len(vals) == 1


def test_lr_rule_examples():
    assert lr_rule(ZERO) == [W1]
    assert lr_rule(W1) == sorted([ZERO, Y(2), Y(1, 1)])
    assert Y(1, 1, 1) in lr_rule(Y(1, 1, 1))
    assert Y(2, 1) not in lr_rule(Y(2, 1))


def test_lr_rule_matches_brauer_klimyk():
    for y in diagrams_in_box(3, 4, 6):
        lam = young_to_weight(y, 3)
        classical = tensor_product(lam, W1)
        assert all(m == 1 for m in classical.values())
        assert sorted(classical) == lr_rule(lam)


def test_fusion_bounded_by_classical():
    level = 5
    ws = [w for w in enumerate_level_set(3, level) if w.level <= 3]
    for lam in ws[:12]:
        for mu in ws[:12]:
            classical = tensor_product(lam, mu)
            for nu in enumerate_level_set(3, level):
                f = fusion_coeff(3, level, lam, mu, nu)
                assert f <= classical.get(nu, 0)
                if lam.level + mu.level <= level:
                    assert f == classical.get(nu, 0)


def test_factorization_examples():
    assert factorization_check(3, 1, (W1,) * 4, 2).passed
    rep = factorization_check(3, 7, (Y(1), Y(1), Y(2), Y(2)), 2)
    assert rep.passed and rep.lhs == rep.rhs >= 1
    with pytest.raises(DomainError):
        factorization_check(3, 1, (W1,), 1)


def test_propagation():
    assert propagation_check(3, 7, (Y(1), Y(2), Y(1)))
    assert propagation_check(3, 1, (W3, W3))


def test_duality_insertions_cases():
    left, right = duality_insertions(3, 3, [YoungDiagram((1,))], "odd")
    assert left[-1] == ZERO and right[-1] == sigma(ZERO, 7)
    left, right = duality_insertions(3, 3, [YoungDiagram((1,))] * 2, "sigma0")
    assert left[-1] == sigma(ZERO, 7) and right[-1] == sigma(ZERO, 7)
    with pytest.raises(DomainError):
        duality_insertions(3, 3, [YoungDiagram((1,))], "even")
    with pytest.raises(DomainError):
        duality_insertions(3, 3, [YoungDiagram((1,)), YoungDiagram((1,))], "odd")
    with pytest.raises(DomainError):
        duality_insertions(3, 3, [YoungDiagram((4,))] * 2, "even")
    with pytest.raises(DomainError):
        duality_insertions(3, 3, [], "bogus")


def test_duality_small():
    one, two = YoungDiagram((1,)), YoungDiagram((2,))
    assert duality_check(3, 3, [one, one], "even").passed
    assert duality_check(3, 4, [one, two, two, YoungDiagram((1, 1, 1))], "even").passed
    assert duality_check(3, 4, [one, two, YoungDiagram((2, 1)), one], "odd").passed
    assert duality_check(3, 3, [YoungDiagram((2, 1)), YoungDiagram((2, 1))], "sigma0").passed


def test_duality_warns_for_small_rank():
    with pytest.warns(SmallRankWarning):
        duality_check(2, 3, [YoungDiagram((1,)), YoungDiagram((1,))], "even")


def test_parallel_matches_serial():
    ws = (Y(2, 1), Y(1), Y(2), Y(1, 1))
    assert verlinde_eval(3, 7, 0, ws, jobs=2) == verlinde_eval(3, 7, 0, ws, jobs=1)


def test_precision_independent():
    ws = (Y(2, 1), Y(2, 1), Y(1, 1))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert verlinde_dim(3, 7, 0, ws, NumericConfig(prec=80)) == verlinde_dim(3, 7, 0, ws)
