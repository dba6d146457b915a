"""Matrix arithmetic, determinants, characteristic polynomials, and traces."""

import random
from fractions import Fraction

import pytest

from eltlab import ELTMatrix, ELTScalar, NEG_INF, ONE, Z_RING
from eltlab.core import parse_scalar
from eltlab.errors import (
    DimensionMismatch,
    NotSquare,
    ParseError,
    SingularDeterminant,
    ZeroVector,
)
from eltlab.matrix import (
    EigenStatus,
    MonomialStatus,
    adjoint,
    cayley_hamilton_check,
    charpoly,
    charpoly_symbolic,
    det,
    det_pair,
    eigen_candidates,
    eigen_verify,
    essential_trace,
    essential_trace_value,
    format_vector,
    is_nilpotent,
    parse_vector,
    poly_at_matrix,
    power_entry_paths,
    quasi_identity_check,
    quasi_inverse,
    simple_cycles,
    trace,
)
from eltlab.poly import parse_polynomial
from eltlab.rand import (
    random_matrix,
    random_monomial_matrix,
    random_nilpotent_matrix,
    random_vector,
)

S = parse_scalar
M = ELTMatrix.from_text
P = parse_polynomial

A_EXAMPLE = M("1^[1], 1^[1]\n2^[1], 3^[1]")
SYM = M("1^[1], 2^[1]\n2^[1], 3^[1]")
NILP = M("0^[1], 1^[0]\n0^[0], 0^[1]")
TRI = M("1^[1], 2^[1], -inf\n-inf, 3^[1], 0^[2]\n1^[0], -inf, 2^[1]")


def test_construction_validation():
    with pytest.raises(ParseError):
        M("1^[1], 2^[1]\n3^[1]")
    with pytest.raises(ParseError):
        M("")
    with pytest.raises(ValueError):
        ELTMatrix([])
    with pytest.raises(ValueError):
        ELTMatrix([[ONE], [ONE, ONE]])


def test_shape_errors():
    rect = M("1^[1], 2^[1], 3^[1]\n4^[1], 5^[1], 6^[1]")
    with pytest.raises(NotSquare):
        det(rect)
    with pytest.raises(DimensionMismatch):
        rect + A_EXAMPLE
    with pytest.raises(DimensionMismatch):
        rect * rect


def test_matrix_algebra_laws():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 3)
        a = random_matrix(rng, n)
        b = random_matrix(rng, n)
        c = random_matrix(rng, n)
        ident = ELTMatrix.identity(n)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * ident == a and ident * a == a
        assert (a * b).transpose() == b.transpose() * a.transpose()
        assert a.transpose().transpose() == a


def test_determinant_of_products():
    assert det(A_EXAMPLE * A_EXAMPLE.transpose()) == S("8^[1]")
    assert det(A_EXAMPLE.transpose() * A_EXAMPLE) == S("10^[0]")


def test_determinant_basics():
    assert det(M("3^[2]")) == S("3^[2]")
    upper = M("1^[1], 5^[1]\n-inf, 2^[1]")
    assert det(upper) == S("3^[1]")
    rng = random.Random(23)
    for _ in range(60):
        a = random_matrix(rng, rng.randint(1, 4))
        assert det(a.transpose()) == det(a)
        even, odd = det_pair(a)
        assert det(a) == even + (-odd)


def test_determinant_multiplicativity():
    rng = random.Random(37)
    for _ in range(100):
        n = rng.randint(1, 3)
        a = random_matrix(rng, n)
        b = random_matrix(rng, n)
        dab = det(a * b)
        assert dab.surpasses(det(a) * det(b))
        if dab is not NEG_INF and dab.layer != 0:
            assert dab == det(a) * det(b)
    for _ in range(60):
        n = rng.randint(1, 3)
        a = random_matrix(rng, n)
        q = random_monomial_matrix(rng, n)
        assert det(a * q) == det(a) * det(q)


def test_adjoint_examples():
    assert adjoint(A_EXAMPLE) == M("3^[1], 1^[-1]\n2^[-1], 1^[1]")
    assert adjoint(M("5^[2]")) == ELTMatrix([[ONE]])


def test_adjoint_identities():
    rng = random.Random(53)
    for _ in range(60):
        n = rng.randint(2, 3)
        a = random_matrix(rng, n)
        d = det(a)
        prod = a * adjoint(a)
        scaled_identity = ELTMatrix.identity(n).scale(d)
        for i in range(n):
            for j in range(n):
                assert prod.entry(i, j).surpasses(scaled_identity.entry(i, j))
        assert det(prod) == d ** n
        assert prod * prod == prod.scale(d)


def test_quasi_identity_report():
    good = quasi_identity_check(ELTMatrix.identity(3))
    assert good.ok and bool(good)
    bad = quasi_identity_check(M("0^[1], 5^[1]\n-inf, 0^[1]"))
    assert not bad.offdiagonal_ok
    assert not bad


def test_quasi_inverse_examples():
    res = quasi_inverse(M("0^[1], 2^[1]\n-inf, 0^[1]"))
    assert res.inverse == M("0^[1], 2^[-1]\n-inf, 0^[1]")
    assert res.left.ok and res.right.ok
    res = quasi_inverse(M("3^[2], -inf\n-inf, -1^[1]"))
    assert res.inverse == M("-3^[1/2], -inf\n-inf, 1^[1]")


def test_quasi_inverse_failures():
    with pytest.raises(SingularDeterminant):
        quasi_inverse(NILP)
    with pytest.raises(SingularDeterminant):
        quasi_inverse(M("-inf, -inf\n-inf, -inf"))
    with pytest.raises(SingularDeterminant):
        quasi_inverse(M("3^[2], -inf\n-inf, -1^[1]"), Z_RING)


def test_characteristic_polynomial_example():
    assert charpoly(SYM) == P("0^[1]*L^2 + 3^[-1]*L + 4^[0]")
    assert charpoly(M("3^[2]")) == P("0^[1]*L + 3^[-2]")


def test_characteristic_polynomial_routes_agree():
    rng = random.Random(61)
    for _ in range(60):
        a = random_matrix(rng, rng.randint(1, 5))
        assert charpoly(a) == charpoly_symbolic(a)


def test_matrix_satisfies_its_characteristic_polynomial():
    value = poly_at_matrix(charpoly(SYM), SYM)
    assert value == M("4^[0], 5^[0]\n5^[0], 6^[0]")
    assert cayley_hamilton_check(SYM)
    rng = random.Random(67)
    for _ in range(60):
        assert cayley_hamilton_check(random_matrix(rng, rng.randint(1, 4)))


def test_trace_laws():
    assert trace(NILP) == S("0^[2]")
    rng = random.Random(71)
    for _ in range(60):
        n = rng.randint(1, 4)
        a = random_matrix(rng, n)
        b = random_matrix(rng, n)
        assert trace(a + b) == trace(a) + trace(b)
        assert trace(a * b) == trace(b * a)


def test_eigen_verification():
    assert eigen_verify(SYM, S("3^[1]"), parse_vector("0^[1], 1^[1]")) is EigenStatus.STRICT
    assert eigen_verify(M("5^[0]"), S("3^[1]"), [S("0^[1]")]) is EigenStatus.ELT_ONLY
    assert eigen_verify(M("5^[1]"), S("3^[1]"), [S("0^[1]")]) is EigenStatus.NO
    with pytest.raises(ZeroVector):
        eigen_verify(SYM, S("3^[1]"), parse_vector("0^[0], 1^[0]"))
    with pytest.raises(DimensionMismatch):
        eigen_verify(SYM, S("3^[1]"), [S("0^[1]")])


def test_eigen_candidates_example():
    rd = eigen_candidates(SYM)
    assert [(c.tangible, c.layers.values) for c in rd.corners] == [
        (Fraction(1), (Fraction(0),)),
        (Fraction(3), (Fraction(0), Fraction(1))),
    ]
    first = rd.intervals[0]
    assert first.upper == Fraction(1) and first.layers.all_layers


def test_invertible_matrix_cannot_ghost_a_spread_vector():
    """If det(A) has a nonzero layer and v has no layer zero entry, A*v keeps
    at least one nonzero layer."""
    rng = random.Random(73)
    found = 0
    while found < 200:
        n = rng.randint(1, 4)
        a = random_matrix(rng, n)
        d = det(a)
        if d is NEG_INF or d.layer == 0:
            continue
        found += 1
        v = random_vector(rng, n)
        image = a.apply(v)
        assert any(e is not NEG_INF and e.layer != 0 for e in image)


def test_simple_cycles_canonical_listing():
    cycles = simple_cycles(TRI)
    assert [(c.vertices, c.weight, c.mean) for c in cycles] == [
        ((0,), S("1^[1]"), Fraction(1)),
        ((0, 1, 2), S("3^[0]"), Fraction(1)),
        ((1,), S("3^[1]"), Fraction(3)),
        ((2,), S("2^[1]"), Fraction(2)),
    ]
    assert all(c.length == len(c.vertices) for c in cycles)


def test_power_entries_match_best_paths():
    rng = random.Random(79)
    for _ in range(25):
        n = rng.randint(1, 3)
        a = random_matrix(rng, n)
        power = ELTMatrix.identity(n)
        for k in range(1, 4):
            power = power * a
            for i in range(n):
                for j in range(n):
                    assert power_entry_paths(a, k, i, j) == power.entry(i, j)


def test_essential_trace_of_nilpotent_example():
    rep = essential_trace(NILP)
    assert rep.trace == S("0^[2]")
    assert rep.status is MonomialStatus.INESSENTIAL
    assert rep.coefficients == {1: S("0^[-2]"), 2: S("1^[0]")}
    assert rep.mu == 2 and rep.l_set == frozenset({2})
    assert rep.dominant == S("1^[0]")
    assert rep.long_cycle_bound == Fraction(1, 2)
    assert rep.value == S("1/2^[0]")
    assert essential_trace_value(NILP) == S("1/2^[0]")


def test_essential_trace_of_triangular_sum():
    a = M("0^[1], 0^[1]\n-inf, 0^[1]")
    b = a.transpose()
    assert essential_trace_value(a) == S("0^[2]")
    assert essential_trace_value(b) == S("0^[2]")
    rep = essential_trace(a + b)
    assert charpoly(a + b) == P("0^[1]*L^2 + 0^[-4]*L + 0^[3]")
    assert rep.status is MonomialStatus.QUASI_ESSENTIAL
    assert rep.value == S("0^[0]")


def test_essential_trace_is_not_product_symmetric():
    """A layer tie can make etr(A*B) and etr(B*A) disagree even though their
    tangible parts always match; this pair is the smallest known witness."""
    a = M("0^[1], 0^[1]\n-inf, -inf")
    b = M("0^[1], -inf\n0^[1], -inf")
    assert essential_trace_value(a * b) == S("0^[2]")
    assert essential_trace_value(b * a) == S("0^[0]")


def test_layer_zero_trace_gives_layer_zero_essential_trace():
    rng = random.Random(83)
    found = 0
    while found < 150:
        a = random_matrix(rng, rng.randint(1, 3))
        tr = trace(a)
        if tr is not NEG_INF and tr.layer != 0:
            continue
        found += 1
        etr = essential_trace_value(a)
        assert etr is NEG_INF or etr.layer == 0


def test_essential_trace_additivity_when_unbalanced():
    rng = random.Random(89)
    found = 0
    for _ in range(2000):
        n = rng.randint(1, 3)
        a = random_matrix(rng, n)
        b = random_matrix(rng, n)
        combined = essential_trace_value(a + b)
        if combined is NEG_INF or combined.layer == 0:
            continue
        found += 1
        assert combined == essential_trace_value(a) + essential_trace_value(b)
    assert found > 100


def test_dominant_ratio_matches_best_cycle_mean():
    rng = random.Random(97)
    found = 0
    while found < 100:
        a = random_matrix(rng, rng.randint(1, 4))
        cycles = simple_cycles(a)
        if not cycles:
            continue
        found += 1
        rep = essential_trace(a)
        assert rep.dominant.tangible / rep.mu == max(c.mean for c in cycles)


def test_nilpotence_detection():
    assert is_nilpotent(NILP) == (True, 2)
    assert is_nilpotent(NILP, bound=1) == (False, None)
    assert is_nilpotent(M("0^[1]")) == (False, None)
    assert is_nilpotent(M("-inf")) == (True, 1)
    rng = random.Random(101)
    for _ in range(60):
        a = random_nilpotent_matrix(rng, rng.randint(2, 4))
        nilpotent, index = is_nilpotent(a)
        assert nilpotent and index >= 1
        etr = essential_trace_value(a)
        assert etr is NEG_INF or etr.layer == 0


def test_text_round_trips():
    rng = random.Random(103)
    for _ in range(30):
        a = random_matrix(rng, rng.randint(1, 3), rng.randint(1, 3))
        assert ELTMatrix.from_text(a.to_text()) == a
        assert ELTMatrix.from_text(a.to_text(structured=True)) == a
    assert TRI.to_text().splitlines()[0] == "1^[1], 2^[1], -inf"
    structured = TRI.to_text(structured=True)
    assert structured.splitlines()[0] == "rows: 3"
    assert structured.splitlines()[1] == "cols: 3"


def test_structured_header_validation():
    with pytest.raises(ParseError):
        M("rows: 2\ncols: 2\n1^[1], 2^[1]")
    with pytest.raises(ParseError):
        M("rows: 1\ncols: 3\n1^[1], 2^[1]")


def test_vector_round_trip():
    v = parse_vector("1^[1], -inf, 2/3^[-1/2]")
    assert format_vector(v) == "1^[1], -inf, 2/3^[-1/2]"
    assert TRI.apply(v) == (
        TRI.entry(0, 0) * v[0] + TRI.entry(0, 1) * v[1] + TRI.entry(0, 2) * v[2],
        TRI.entry(1, 0) * v[0] + TRI.entry(1, 1) * v[1] + TRI.entry(1, 2) * v[2],
        TRI.entry(2, 0) * v[0] + TRI.entry(2, 1) * v[1] + TRI.entry(2, 2) * v[2],
    )
