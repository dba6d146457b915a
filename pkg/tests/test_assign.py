"""Maximum assignment duals, critical matrices, and best cycle means."""

import itertools
import random
from fractions import Fraction

import pytest

from eltlab import ELTMatrix, ELTScalar, NEG_INF
from eltlab.assign import (
    column_critical_positions,
    critical_scaling_elt,
    format_tropical_matrix,
    hungarian_scaling,
    is_critical,
    karp_max_mean_cycle,
    parse_tropical_matrix,
    scale_rows,
    tangible_matrix,
    tropical_matrix,
)
from eltlab.core import BOTTOM
from eltlab.errors import InfeasibleAssignment
from eltlab.matrix import simple_cycles
from eltlab.rand import random_matrix

T = parse_tropical_matrix


def random_tropical(rng, n):
    return tropical_matrix(
        [
            [
                BOTTOM if rng.randrange(4) == 0 else Fraction(rng.randint(-9, 9))
                for _ in range(n)
            ]
            for _ in range(n)
        ]
    )


def brute_best_assignment(t):
    n = len(t)
    best = None
    for perm in itertools.permutations(range(n)):
        if any(t[i][perm[i]] is BOTTOM for i in range(n)):
            continue
        value = sum(t[i][perm[i]] for i in range(n))
        if best is None or value > best:
            best = value
    return best


def test_text_round_trip():
    t = T("0, 9\n1, 10")
    assert t == ((Fraction(0), Fraction(9)), (Fraction(1), Fraction(10)))
    assert format_tropical_matrix(t) == "0, 9\n1, 10"
    with_bottom = T("-inf, 1/2\n3, -inf")
    assert format_tropical_matrix(with_bottom) == "-inf, 1/2\n3, -inf"
    assert with_bottom[0][0] is BOTTOM


def test_tangible_projection_of_elt_matrix():
    t = tangible_matrix(ELTMatrix.from_text("1^[1], -inf\n2/3^[0], 5^[-2]"))
    assert t == ((Fraction(1), BOTTOM), (Fraction(2, 3), Fraction(5)))


def test_assignment_example():
    res = hungarian_scaling(T("0, 9\n1, 10"))
    assert res.value == 10
    assert res.sigma == (1, 0)
    assert res.alphas == tuple(-u for u in res.row_duals)
    for i in range(2):
        assert res.row_duals[i] + res.col_duals[res.sigma[i]] == (9, 1)[i]


def test_assignment_matches_brute_force():
    rng = random.Random(131)
    for _ in range(150):
        n = rng.randint(1, 4)
        t = random_tropical(rng, n)
        best = brute_best_assignment(t)
        if best is None:
            with pytest.raises(InfeasibleAssignment):
                hungarian_scaling(t)
            continue
        res = hungarian_scaling(t)
        assert res.value == best
        # the duals certify optimality: feasible everywhere, tight on sigma
        for i in range(n):
            for j in range(n):
                if t[i][j] is not BOTTOM:
                    assert res.row_duals[i] + res.col_duals[j] >= t[i][j]
            assert res.row_duals[i] + res.col_duals[res.sigma[i]] == t[i][res.sigma[i]]


def test_criticality_check():
    assert is_critical(T("0, -inf\n-inf, 0")) == (True, (0, 1))
    ok, sigma = is_critical(T("0, 0\n-1, -1"))
    assert not ok and sigma is None
    assert column_critical_positions(T("0, 0\n-1, -1")) == (
        (True, True),
        (False, False),
    )


def test_scaling_makes_matrices_critical():
    rng = random.Random(137)
    done = 0
    while done < 120:
        n = rng.randint(1, 4)
        a = random_matrix(rng, n)
        t = tangible_matrix(a)
        try:
            res = hungarian_scaling(t)
        except InfeasibleAssignment:
            continue
        done += 1
        ok, _ = is_critical(scale_rows(t, res.alphas))
        assert ok
        d = critical_scaling_elt(a)
        for i in range(n):
            assert d.entry(i, i) == ELTScalar(res.alphas[i], 1)
            for j in range(n):
                if i != j:
                    assert d.entry(i, j).is_neg_inf
        ok, _ = is_critical(tangible_matrix(d * a))
        assert ok


def test_infeasible_scaling_raises():
    blocked = ELTMatrix.from_text("-inf, -inf\n1^[1], 2^[1]")
    with pytest.raises(InfeasibleAssignment):
        critical_scaling_elt(blocked)
    with pytest.raises(InfeasibleAssignment):
        hungarian_scaling(T("-inf"))


def elt_lift(t):
    n = len(t)
    return ELTMatrix(
        [
            [
                ELTScalar(t[i][j], 1) if t[i][j] is not BOTTOM else NEG_INF
                for j in range(n)
            ]
            for i in range(n)
        ]
    )


def test_best_cycle_mean_example():
    assert karp_max_mean_cycle(T("-inf, 2\n3, -inf")) == Fraction(5, 2)
    assert karp_max_mean_cycle(T("-inf, 2\n-inf, -inf")) is None
    assert karp_max_mean_cycle(T("7")) == 7


def test_best_cycle_mean_matches_brute_force():
    rng = random.Random(139)
    for _ in range(150):
        n = rng.randint(1, 5)
        t = random_tropical(rng, n)
        cycles = simple_cycles(elt_lift(t))
        expected = max((c.mean for c in cycles), default=None)
        assert karp_max_mean_cycle(t) == expected
