import random

import pytest

from conftest import random_coefficient
from uqplus.algebra import AlgElement
from uqplus.autos import (
    DiagramAut,
    EndoSpec,
    TorusAut,
    apply_endo,
    as_endo,
    central_action,
    compose,
    degree_profile,
    identity,
    linear_part_report,
    lowest_degree_check,
    parse_endo_text,
    read_endo_file,
    torus_weight_scalar,
    verify_endo,
)
from uqplus.qcoeff import q
from uqplus.structure import check_normal, named_elements


def sample_tori(n=4):
    rng = random.Random(5)
    out = []
    while len(out) < n:
        a, b = random_coefficient(rng), random_coefficient(rng)
        if a and b:
            out.append(TorusAut((a, b)))
    return out


def test_torus_images(a2):
    t = TorusAut((q, q + 1))
    assert as_endo(a2, t).images == (q * a2.E(1), (q + 1) * a2.E(2))
    with pytest.raises(ValueError):
        TorusAut((q, 0))


def test_torus_and_swap_verify(a2, b2):
    for t in sample_tori():
        for rs in (a2, b2):
            assert verify_endo(rs, t).passed
            assert degree_profile(rs, t) == (1, 1)
    assert verify_endo(a2, DiagramAut((2, 1))).passed
    assert not verify_endo(b2, EndoSpec((b2.E(2), b2.E(1)))).passed
    with pytest.raises(ValueError):
        as_endo(b2, DiagramAut((2, 1)))


def test_composition_law(a2):
    w = DiagramAut((2, 1))
    for t in sample_tori():
        l1, l2 = t.scalars
        assert compose(a2, t, w) == compose(a2, w, TorusAut((l2, l1)))


def test_lowest_degree(a2, b2):
    for rs in (a2, b2):
        for t in sample_tori(2):
            for x in named_elements(rs).values():
                assert lowest_degree_check(rs, t, x).passed
    rep = lowest_degree_check(a2, identity(a2), named_elements(a2)["Omega"])
    assert rep.degree == 4 and set(rep.components) == {4}
    with pytest.raises(ValueError):
        lowest_degree_check(a2, identity(a2), a2.E(1) + a2.multiply(a2.E(1), a2.E(2)))


def test_central_action(a2, b2):
    l1, l2 = q + 2, q.inv()
    t = TorusAut((l1, l2))
    names = named_elements(b2)
    assert central_action(b2, t, names["z"]) == l1 ** 2 * l2
    assert central_action(b2, t, names["z'"]) == l1 ** 2 * l2 ** 2
    assert central_action(b2, t, names["E4"]) == torus_weight_scalar(b2, t, names["E4"])
    e3 = named_elements(a2)["E3"]
    assert central_action(a2, DiagramAut((2, 1)), e3) is None


def test_swap_permutes_certificates(a2):
    names = named_elements(a2)
    w = DiagramAut((2, 1))
    image = apply_endo(a2, w, names["E3"])
    assert image == names["E3'"]
    c = check_normal(a2, names["E3"]).scalars
    assert check_normal(a2, image).scalars == (c[1], c[0])


def test_profile_of_nonlinear_candidate(a2):
    s = EndoSpec((a2.E(1) + a2.multiply(a2.E(1), a2.E(2)), a2.E(2)))
    assert degree_profile(a2, s) == (2, 1)


def test_linear_part(a2):
    assert linear_part_report(a2, DiagramAut((2, 1))).determinant == -1
    s = EndoSpec((a2.E(1), a2.E(1)))
    assert not linear_part_report(a2, s).invertible


def test_endo_spec_validation(a2):
    with pytest.raises(ValueError):
        EndoSpec((a2.E(1), AlgElement()))
    with pytest.raises(ValueError):
        EndoSpec((a2.E(1), a2.K(1)))


def test_endo_file(a2, tmp_path):
    p = tmp_path / "swap.txt"
    p.write_text("# the diagram swap\nE1 -> E2\n\nE2 -> E1  # back\n")
    assert read_endo_file(a2, p) == as_endo(a2, DiagramAut((2, 1)))
    with pytest.raises(ValueError):
        parse_endo_text(a2, "E1 -> E2\n")
    with pytest.raises(ValueError):
        parse_endo_text(a2, "E1 -> E2\nE1 -> E1\nE2 -> E1\n")
    with pytest.raises(ValueError):
        parse_endo_text(a2, "E1 = E2\n")
    with pytest.raises(ValueError):
        parse_endo_text(a2, "E1 -> E2^^2\nE2 -> E1\n")
