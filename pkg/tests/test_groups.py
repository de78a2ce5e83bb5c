import pytest
from hypothesis import given, strategies as st

from dwgns.errors import DimensionError, ParseError
from dwgns.groups import FiniteAbelianGroup, parse_group


@pytest.mark.parametrize("spec, orders", [
    ("Z2", (2,)),
    ("Z2xZ4", (2, 4)),
    ("z3XZ5", (3, 5)),
    ("Z1", (1,)),
])
def test_parse_group(spec, orders):
    assert parse_group(spec).cyclic_orders == orders


@pytest.mark.parametrize("spec, token", [
    ("Z0", "Z0"),
    ("Z2xQ3", "Q3"),
    ("Z-2", "Z-2"),
    ("Z2x", "''"),
])
def test_parse_group_errors_name_token(spec, token):
    with pytest.raises(ParseError, match=token):
        parse_group(spec)


def test_order_and_equality():
    G = parse_group("Z2xZ4")
    assert G.order == 8
    assert G == FiniteAbelianGroup((2, 4))
    assert parse_group("Z2xZ3") != parse_group("Z6")


def test_add():
    G = parse_group("Z2xZ4")
    assert G.add((1, 3), (1, 2)) == (0, 1)
    assert parse_group("Z3").add((2,), (0,)) == (2,)
    assert parse_group("Z2").add((1,), (1,)) == (0,)


def test_add_dimension_mismatch():
    with pytest.raises(DimensionError):
        parse_group("Z2xZ4").add((1,), (1, 2))


def test_scalar_mul():
    Z4 = parse_group("Z4")
    assert Z4.scalar_mul(3, (1,)) == (3,)
    assert Z4.scalar_mul(-1, (1,)) == (3,)
    assert parse_group("Z2xZ3").scalar_mul(6, (1, 1)) == (0, 0)


def test_enumerate():
    assert parse_group("Z2").elements() == [(0,), (1,)]
    assert parse_group("Z2xZ2").elements() == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert parse_group("Z1").elements() == [(0,)]


def test_element_normalizes():
    G = parse_group("Z2xZ4")
    assert G.element([-1, 9]) == (1, 1)
    assert parse_group("Z5").element(7) == (2,)


groups = st.lists(st.integers(1, 6), min_size=1, max_size=3).map(
    lambda ds: FiniteAbelianGroup(tuple(ds)))


@st.composite
def group_and_elements(draw, count):
    G = draw(groups)
    elems = [tuple(draw(st.integers(0, d - 1)) for d in G.cyclic_orders) for _ in range(count)]
    return G, elems


@given(group_and_elements(3))
def test_group_axioms(data):
    G, (x, y, z) = data
    assert G.add(G.add(x, y), z) == G.add(x, G.add(y, z))
    assert G.add(x, y) == G.add(y, x)
    assert G.add(x, G.zero) == x
    assert G.add(x, G.scalar_mul(-1, x)) == G.zero


@given(group_and_elements(1), st.integers(0, 12))
def test_scalar_mul_is_repeated_addition(data, k):
    G, (x,) = data
    acc = G.zero
    for _ in range(k):
        acc = G.add(acc, x)
    assert G.scalar_mul(k, x) == acc


@given(groups)
def test_enumerate_is_complete_and_distinct(G):
    elems = G.elements()
    assert len(elems) == G.order == len(set(elems))
    assert all(G.contains(x) for x in elems)
    assert elems == sorted(elems)
