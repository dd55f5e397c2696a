import pytest

from uqplus.rootdata import (
    CartanData,
    CartanError,
    braid_order,
    diagram_symmetries,
    longest_words,
    positive_roots,
    positive_roots_from_word,
    preset,
    read_cartan_file,
    reflect,
)


def test_presets():
    a2, b2 = preset("A2"), preset("B2")
    assert a2.d == (1, 1)
    # alpha_1 is the short root
    assert b2.d == (1, 2)
    assert b2.B == ((2, -2), (-2, 4))
    assert b2.inner((1, 0), (1, 0)) == 2
    assert b2.inner((2, 1), (1, 0)) == 2


@pytest.mark.parametrize("A", [((2, 1), (-1, 2)), ((2, -1), (0, 2)), ((1, 0), (0, 2)),
                               ((2, -4), (-1, 2)), ((2, 0), (0, 2))])
def test_bad_matrices(A):
    with pytest.raises(CartanError):
        CartanData(A)


def test_unknown_preset():
    with pytest.raises(CartanError):
        preset("G2x")


def test_read_cartan_file(tmp_path):
    p = tmp_path / "b2.txt"
    p.write_text("2\n2 -2\n-1 2\n")
    assert read_cartan_file(p).A == preset("B2").A
    p.write_text("3\n2 -1\n-1 2\n")
    with pytest.raises(CartanError):
        read_cartan_file(p)


def test_reflect():
    a2 = preset("A2")
    assert reflect(a2, 1, (0, 1)) == (1, 1)
    assert reflect(a2, 1, (1, 0)) == (-1, 0)


def test_roots_from_words():
    a2, b2 = preset("A2"), preset("B2")
    assert positive_roots_from_word(a2, (1, 2, 1)).roots == ((1, 0), (1, 1), (0, 1))
    assert positive_roots_from_word(b2, (1, 2, 1, 2)).roots == ((1, 0), (2, 1), (1, 1), (0, 1))
    v = positive_roots_from_word(a2, (1, 1))
    assert not v.reduced and v.bad_position == 2
    with pytest.raises(CartanError):
        positive_roots_from_word(a2, (3,))


def test_positive_roots_and_words():
    assert len(positive_roots(preset("A2"))) == 3
    assert len(positive_roots(preset("B2"))) == 4
    assert longest_words(preset("A2")) == [(1, 2, 1), (2, 1, 2)]
    assert longest_words(preset("B2")) == [(1, 2, 1, 2), (2, 1, 2, 1)]


def test_diagram_symmetries():
    assert diagram_symmetries(preset("A2")) == [(1, 2), (2, 1)]
    assert diagram_symmetries(preset("B2")) == [(1, 2)]


def test_braid_order():
    assert braid_order(preset("A2"), 1, 2) == 3
    assert braid_order(preset("B2"), 2, 1) == 4
    with pytest.raises(ValueError):
        braid_order(preset("A2"), 1, 1)
