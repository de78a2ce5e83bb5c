import json

import pytest
from hypothesis import given, strategies as st

from dwgns.errors import ContractError, ParseError
from dwgns.groups import parse_group
from dwgns.links import (EMPTY_MANIFOLD, FormalSum, LabeledLinkingData, LinkDiagram,
                         data_to_json, disjoint_union, linking_data, parse_diagram, parse_link,
                         serialize_diagram)
from dwgns.zmatrix import IntMatrix

Z2 = parse_group("Z2")
HOPF = '{"components":2,"crossings":[[0,1,1],[1,0,1]]}'


def test_parse_unknot():
    d = parse_diagram('{"components":1,"crossings":[]}')
    assert d.components == 1 and d.crossings == ()
    data = linking_data(d, None, [[[0], [0]]], Z2)
    assert data.matrix.tolist() == [[0]]


def test_hopf_linking_number():
    data = linking_data(parse_diagram(HOPF), None, [[[0], [0]], [[0], [0]]], Z2)
    assert data.matrix.tolist() == [[0, 1], [1, 0]]


def test_negative_hopf():
    d = parse_diagram('{"components":2,"crossings":[[0,1,-1],[1,0,-1]]}')
    assert linking_data(d, None, [[[0], [0]]] * 2, Z2).matrix.tolist() == [[0, -1], [-1, 0]]


def test_writhe_three():
    d = parse_diagram('{"components":1,"crossings":[[0,0,1],[0,0,1],[0,0,1]]}')
    assert linking_data(d, None, [[[1], [1]]], Z2).matrix.tolist() == [[3]]


def test_odd_crossing_total_rejected():
    d = parse_diagram('{"components":2,"crossings":[[0,1,1]]}')
    with pytest.raises(ParseError):
        linking_data(d, None, [[[0], [0]]] * 2, Z2)


@pytest.mark.parametrize("text, fragment", [
    ('{"components":2,"crossings":[[0,2,1]]}', "out of range"),
    ('{"components":1,"crossings":[[0,0,2]]}', "sign"),
    ('{"components":1,"crossings":[[0,0]]}', "crossings\\[0\\]"),
    ('{"components":1,', "line 1"),
    ('[1,2]', "object"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_diagram(text)


def test_role_label_mismatch():
    d = parse_diagram(HOPF)
    with pytest.raises(ContractError):
        linking_data(d, ["wilson", "surgery"], [[[0], [0]], [[1], [0]]], Z2)
    with pytest.raises(ContractError):
        linking_data(d, ["wilson", "wilson"], [[[0], [0]], None], Z2)


def test_direct_matrix_form():
    text = json.dumps({"linking_matrix": [[0, 1], [1, 0]], "roles": ["wilson", "surgery"],
                       "labels": [[[1], [0]], None]})
    data = parse_link(text, Z2)
    assert data.roles == ("wilson", "surgery")
    assert data.labels == (((1,), (0,)), None)
    with pytest.raises(ParseError):
        parse_link('{"linking_matrix": [[0, 1], [2, 0]]}', Z2)


def test_data_json_roundtrip():
    data = parse_link(HOPF[:-1] + ',"labels":[[[1],[0]],[[0],[1]]]}', Z2)
    assert parse_link(json.dumps(data_to_json(data)), Z2) == data


diagrams = st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.sampled_from([1, -1])),
             max_size=8)))


@given(diagrams)
def test_serialize_roundtrip(spec):
    n, crossings = spec
    d = LinkDiagram(n, tuple(crossings), ("wilson",) * n, tuple(((0,), (1,)) for _ in range(n)))
    assert parse_diagram(serialize_diagram(d)) == d


@given(diagrams)
def test_linking_data_symmetric(spec):
    n, crossings = spec
    # pair each crossing with its mirror so totals between components are even
    doubled = tuple(crossings) + tuple((u, o, s) for o, u, s in crossings if o != u)
    d = LinkDiagram(n, doubled)
    data = linking_data(d, None, [[[0], [0]]] * n, Z2)
    assert data.matrix.is_symmetric()


def unknot(a, b=(0,)):
    return LabeledLinkingData.wilson([[0]], [((a,) if isinstance(a, int) else a, b)])


def test_disjoint_union_blocks():
    x = disjoint_union(unknot(1), unknot(0))
    assert x.matrix.tolist() == [[0, 0], [0, 0]]
    assert x.manifold_components == 2
    hopf = LabeledLinkingData.wilson([[0, 1], [1, 0]], [((0,), (0,))] * 2)
    u = disjoint_union(hopf, hopf)
    assert u.matrix.tolist() == [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]


def test_disjoint_union_unit():
    x = unknot(1)
    assert disjoint_union(x, EMPTY_MANIFOLD) == x
    assert disjoint_union(EMPTY_MANIFOLD, x) == x


def test_disjoint_union_associative():
    a, b, c = unknot(1), unknot(0, (1,)), LabeledLinkingData.wilson([[2]], [((1,), (0,))])
    assert disjoint_union(disjoint_union(a, b), c) == disjoint_union(a, disjoint_union(b, c))


def test_formal_sum_merges_and_drops_zeros():
    x, y = unknot(0), unknot(1)
    s = FormalSum([(1, x), (2, y), (-1, x)])
    assert s.terms == [(2, y)]
    assert len(FormalSum([(1, x), (1, x)])) == 1
    assert (FormalSum.single(x) + FormalSum.single(x)).terms == [(2, x)]


def test_symmetry_enforced():
    with pytest.raises(ContractError):
        LabeledLinkingData(IntMatrix.from_rows([[0, 1], [0, 0]]), ("wilson",) * 2,
                           (((0,), (0,)),) * 2)
