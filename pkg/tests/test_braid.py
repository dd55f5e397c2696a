import pytest

from uqplus.algebra import AlgElement
from uqplus.braid import (
    apply_T,
    apply_T_word,
    divided_power,
    ls_straighten,
    pbw_expand,
    pbw_monomial,
    pbw_monomials,
    root_vectors,
    verify_braid_relation,
)
from uqplus.expr import evaluate
from uqplus.qcoeff import q
from uqplus.rootdata import longest_words


def test_divided_power(a2):
    x = divided_power(a2, 1, 2)
    assert a2.multiply(a2.E(1), a2.E(1)) == (q + q.inv()) * x


def test_a2_root_vectors(a2):
    assert apply_T(a2, 1, a2.E(2)) == evaluate(a2, "-E1*E2 + q^-1*E2*E1")
    assert apply_T(a2, 2, a2.E(1)) == evaluate(a2, "-E2*E1 + q^-1*E1*E2")
    assert apply_T_word(a2, (1, 2), a2.E(1)) == a2.E(2)


def test_b2_root_vectors(b2):
    assert apply_T(b2, 1, b2.E(2)) == evaluate(
        b2, "1/(q+q^-1)*(E1^2*E2 - q^-1*(q+q^-1)*E1*E2*E1 + q^-2*E2*E1^2)")
    assert apply_T_word(b2, (1, 2), b2.E(1)) == evaluate(b2, "-E1*E2 + q^-2*E2*E1")
    assert apply_T_word(b2, (1, 2, 1), b2.E(2)) == b2.E(2)


def test_T_on_k_and_e_self(a2):
    assert apply_T(a2, 1, a2.K(2)) == a2.multiply(a2.K(1), a2.K(2))
    assert apply_T(a2, 1, a2.E(1)) == -a2.multiply(a2.F(1), a2.K(1))


def test_T_is_multiplicative(b2):
    x, y = b2.E(1), b2.multiply(b2.E(2), b2.F(1))
    lhs = apply_T(b2, 2, b2.multiply(x, y))
    rhs = b2.multiply(apply_T(b2, 2, x), apply_T(b2, 2, y))
    assert lhs == rhs


@pytest.mark.parametrize("fixture", ["a2", "b2"])
def test_braid_relations(fixture, request):
    rs = request.getfixturevalue(fixture)
    rep = verify_braid_relation(rs, 1, 2)
    assert rep.m == (3 if fixture == "a2" else 4)
    assert len(rep.comparisons) == 6
    assert rep.passed


@pytest.mark.parametrize("fixture", ["a2", "b2"])
def test_pbw_theorem_small(fixture, request):
    rs = request.getfixturevalue(fixture)
    for word in longest_words(rs.cartan):
        table = root_vectors(rs, word)
        for d in range(7):
            monos = pbw_monomials(table, d)
            assert len(monos) == len(rs.e_normal_words(d))
        for i in range(1, len(table) + 1):
            for j in range(i + 1, len(table) + 1):
                rel = ls_straighten(rs, table, i, j)
                assert all(len(e) == j - i - 1 for e in rel.coefficients)


def test_pbw_round_trip(b2):
    table = root_vectors(b2, (1, 2, 1, 2))
    for e in pbw_monomials(table, 5):
        x = pbw_monomial(b2, table, e)
        assert pbw_expand(b2, table, x) == {e: b2.field.one}
    x = evaluate(b2, "E2*E1*E1 + q*E1*E2")
    coords = pbw_expand(b2, table, x)
    back = AlgElement()
    for e, c in coords.items():
        back = back + c * pbw_monomial(b2, table, e)
    assert back == x


def test_a2_straightening(a2):
    table = root_vectors(a2, (1, 2, 1))
    rel = ls_straighten(a2, table, 1, 3)
    assert rel.scalar == q
    assert rel.coefficients == {(1,): q}
    assert ls_straighten(a2, table, 1, 2).coefficients == {}


def test_b2_straightening(b2):
    table = root_vectors(b2, (1, 2, 1, 2))
    rel = ls_straighten(b2, table, 2, 4)
    # E2 E4 = E4 E2 - (q^2-1)/(q+q^-1) E3^2, with E3 = -E_{a1+a2}; only k_3 sits between
    assert rel.scalar == 1
    assert rel.coefficients == {(2,): -(q ** 2 - 1) / (q + q.inv())}
    assert ls_straighten(b2, table, 1, 3).coefficients == {(1,): q + q.inv()}
    assert ls_straighten(b2, table, 1, 4).coefficients == {(0, 1): q ** 2}


def test_bad_inputs(a2):
    with pytest.raises(ValueError):
        root_vectors(a2, (1, 1, 2))
    table = root_vectors(a2, (1, 2, 1))
    with pytest.raises(ValueError):
        ls_straighten(a2, table, 2, 2)
    with pytest.raises(ValueError):
        apply_T(a2, 3, a2.E(1))
    with pytest.raises(ValueError):
        pbw_expand(a2, table, a2.K(1))


def test_export(a2):
    text = root_vectors(a2, (1, 2, 1)).export().splitlines()
    assert text[0] == "beta = (1,0) ; E_beta = E1"
    assert text[1].startswith("beta = (1,1) ; E_beta = ")
