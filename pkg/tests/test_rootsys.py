"""Root system construction, bilinear form, reflections, classification."""

import pytest

from flagloci.rootsys import (
    CartanType,
    add_roots,
    build_root_system,
    classify_component,
    dual_coxeter_number,
    highest_roots,
    is_positive_root,
    is_root,
    norm_sq,
    orthogonal,
    pairing,
    reflect,
    strongly_orthogonal,
    weyl_order,
)


def test_cartan_matrices():
    assert build_root_system("A2").cartan == ((2, -1), (-1, 2))
    assert build_root_system("B2").cartan == ((2, -1), (-2, 2))
    assert build_root_system("C3").cartan == ((2, -1, 0), (-1, 2, -2), (0, -1, 2))
    assert build_root_system("G2").cartan == ((2, -3), (-1, 2))
    assert build_root_system("F4").cartan == (
        (2, -1, 0, 0),
        (-1, 2, -1, 0),
        (0, -2, 2, -1),
        (0, 0, -1, 2),
    )


def test_symmetrizers():
    assert build_root_system("B3").symmetrizers == (2, 2, 1)
    assert build_root_system("C3").symmetrizers == (1, 1, 2)
    assert build_root_system("G2").symmetrizers == (1, 3)
    assert build_root_system("F4").symmetrizers == (2, 2, 1, 1)


def test_component_canonical_order():
    t = CartanType.parse("B2xA1")
    assert t.components == (("A", 1), ("B", 2))
    assert str(t) == "A1xB2"
    assert str(CartanType.parse("a3")) == "A3"


def test_bad_type_rejected():
    with pytest.raises(ValueError):
        CartanType.parse("Z9")
    with pytest.raises(ValueError):
        CartanType.parse("E9")
    with pytest.raises(ValueError):
        CartanType.parse("B1")


def test_positive_root_counts():
    expected = {
        "A1": 1,
        "A2": 3,
        "A3": 6,
        "B2": 4,
        "B3": 9,
        "C3": 9,
        "D4": 12,
        "G2": 6,
        "F4": 24,
        "E6": 36,
        "E7": 63,
        "E8": 120,
    }
    for t, n in expected.items():
        assert len(build_root_system(t).positive_roots) == n


def test_b2_positive_roots():
    rs = build_root_system("B2")
    assert rs.positive_roots == ((0, 1), (1, 0), (1, 1), (1, 2))


def test_form_symmetric_and_reflection_involutive():
    for t in ("A3", "B3", "C3", "G2", "F4"):
        rs = build_root_system(t)
        for b in rs.positive_roots:
            for g in rs.positive_roots:
                assert pairing(rs, b, g) == pairing(rs, g, b)
                assert reflect(rs, b, reflect(rs, b, g)) == g
                assert is_root(rs, reflect(rs, b, g))


def test_reflect_fixes_orthogonal():
    rs = build_root_system("B2")
    long_root = (1, 0)
    other = (1, 2)
    assert orthogonal(rs, long_root, other)
    assert reflect(rs, long_root, other) == other
    assert reflect(rs, long_root, long_root) == (-1, 0)


def test_strong_orthogonality_b2():
    rs = build_root_system("B2")
    import itertools

    so = [
        (x, y)
        for x, y in itertools.combinations(rs.positive_roots, 2)
        if strongly_orthogonal(rs, x, y)
    ]
    # the two short roots (0,1), (1,1) are orthogonal but their sum is a root
    assert so == [((1, 0), (1, 2))]
    assert orthogonal(rs, (0, 1), (1, 1))
    assert not strongly_orthogonal(rs, (0, 1), (1, 1))


def test_add_roots():
    rs = build_root_system("A2")
    assert add_roots(rs, (1, 0), (0, 1)) == (1, 1)
    assert add_roots(rs, (1, 1), (0, 1)) is None


def test_highest_roots():
    assert highest_roots(build_root_system("A3")) == [(1, 1, 1)]
    assert highest_roots(build_root_system("G2")) == [(3, 2)]
    assert highest_roots(build_root_system("B3")) == [(1, 2, 2)]
    two = highest_roots(build_root_system("A1xB2"))
    assert len(two) == 2


def test_is_positive_root():
    rs = build_root_system("A2")
    assert is_positive_root(rs, (1, 1))
    assert not is_positive_root(rs, (-1, 0))
    assert not is_positive_root(rs, (2, 1))


def test_classify_component_round_trip():
    for t in ("A3", "B3", "C3", "D4", "G2", "F4", "E6"):
        rs = build_root_system(t)
        idx = tuple(range(rs.rank))
        letter, rank, order = classify_component(rs.cartan, idx)
        assert (letter, rank) == (t[0], int(t[1:]))
        assert sorted(order) == list(idx)


def test_dual_coxeter_numbers():
    assert dual_coxeter_number("A", 3) == 4
    assert dual_coxeter_number("B", 3) == 5
    assert dual_coxeter_number("C", 3) == 4
    assert dual_coxeter_number("D", 4) == 6
    assert dual_coxeter_number("E", 8) == 30
    assert dual_coxeter_number("F", 4) == 9
    assert dual_coxeter_number("G", 2) == 4


def test_weyl_orders():
    assert weyl_order(CartanType.parse("A3")) == 24
    assert weyl_order(CartanType.parse("B3")) == 48
    assert weyl_order(CartanType.parse("G2")) == 12
    assert weyl_order(CartanType.parse("F4")) == 1152
    assert weyl_order(CartanType.parse("E8")) == 696729600
    assert weyl_order(CartanType.parse("A1xB2")) == 16


def test_heights_and_component_of():
    rs = build_root_system("G2")
    assert rs.height((3, 2)) == 5
    assert rs.height((1, 0)) == 1
    rs2 = build_root_system("A1xA2")
    assert rs2.component_of(0) == (0,)
    assert rs2.component_of(1) == rs2.component_of(2) == (1, 2)
