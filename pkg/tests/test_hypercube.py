import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubeforcing import gf
from cubeforcing.certificate import build_B
from cubeforcing.hypercube import (
    EVEN,
    ODD,
    AssignmentError,
    SupportPattern,
    Vertex,
    assign,
    bipartition,
    is_assignment,
    lex_index,
    neighbors,
    parity,
    support_matrix,
    vertex_at,
)

V = Vertex.parse


def adjacency_oracle(n):
    """Support of W_n from sorted 0/1 strings and Hamming distance."""
    strings = sorted(format(v, f"0{n}b") for v in range(1 << n))
    ev = [s for s in strings if s.count("1") % 2 == 0]
    od = [s for s in strings if s.count("1") % 2 == 1]
    e = np.array([int(s, 2) for s in ev])
    o = np.array([int(s, 2) for s in od])
    return np.bitwise_count(e[:, None] ^ o[None, :]) == 1, ev, od


@pytest.mark.parametrize("s, expected", [("000", EVEN), ("101", EVEN), ("100", ODD), ("1", ODD)])
def test_parity(s, expected):
    assert parity(V(s)) == expected


@pytest.mark.parametrize(
    "s, expected",
    [("00", ["10", "01"]), ("000", ["100", "010", "001"]), ("0", ["1"])],
)
def test_neighbors_in_position_order(s, expected):
    assert [str(v) for v in neighbors(V(s))] == expected


@pytest.mark.parametrize(
    "s, expected",
    [("00", (EVEN, 0)), ("11", (EVEN, 1)), ("01", (ODD, 0)), ("10", (ODD, 1)), ("011", (EVEN, 1))],
)
def test_lex_index(s, expected):
    assert lex_index(V(s)) == expected


@given(st.integers(1, 16).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
def test_vertex_string_and_index_round_trip(nb):
    n, bits = nb
    v = Vertex(n, bits)
    assert V(str(v)) == v
    assert len(str(v)) == n
    assert vertex_at(n, *lex_index(v)) == v


def test_vertex_validation():
    with pytest.raises(ValueError):
        Vertex(2, 4)
    with pytest.raises(ValueError):
        V("012")
    with pytest.raises(ValueError):
        V("")


@pytest.mark.parametrize("n", range(1, 9))
def test_bipartition_matches_sorted_strings(n):
    bp = bipartition(n)
    _, ev, od = adjacency_oracle(n)
    assert [str(v) for v in bp.even_part] == ev
    assert [str(v) for v in bp.odd_part] == od
    assert len(ev) == len(od) == 1 << (n - 1)
    for i, v in enumerate(bp.even_part):
        assert lex_index(v) == (EVEN, i)
    for i, v in enumerate(bp.odd_part):
        assert lex_index(v) == (ODD, i)


def test_support_small_cases():
    assert support_matrix(1).present.tolist() == [[True]]
    assert support_matrix(2).present.astype(int).tolist() == [[1, 1], [1, 1]]
    s2 = support_matrix(2)
    eye = SupportPattern.identity(2)
    assert support_matrix(3) == SupportPattern.block2x2(s2, eye, eye, s2)


@pytest.mark.parametrize("n", range(1, 13))
def test_support_matches_adjacency(n):
    expected, _, _ = adjacency_oracle(n)
    assert np.array_equal(support_matrix(n).present, expected)


@pytest.mark.parametrize("n", range(1, 12))
def test_support_recursion_and_prefix_order(n):
    """W_{n+1} = [[W_n, I], [I, W_n]] under E_{n+1} = 0.E_n, 1.O_n and O_{n+1} = 0.O_n, 1.E_n."""
    _, ev, od = adjacency_oracle(n)
    _, ev1, od1 = adjacency_oracle(n + 1)
    assert ev1 == ["0" + x for x in ev] + ["1" + y for y in od]
    assert od1 == ["0" + y for y in od] + ["1" + x for x in ev]
    w = support_matrix(n)
    eye = SupportPattern.identity(w.rows)
    assert support_matrix(n + 1) == SupportPattern.block2x2(w, eye, eye, w)


@pytest.mark.parametrize("n", range(1, 15))
def test_support_symmetric_regular_with_edge_count(n):
    s = support_matrix(n).present
    assert np.array_equal(s, s.T)
    assert (s.sum(axis=0) == n).all() and (s.sum(axis=1) == n).all()
    assert int(s.sum()) == n << (n - 1)


def test_assign():
    s2 = support_matrix(2)
    ok = gf.GFMatrix.from_array([[1, 1], [1, 1]], 3)
    assert assign(s2, ok) is ok
    with pytest.raises(AssignmentError) as err:
        assign(s2, gf.GFMatrix.from_array([[1, 0], [1, 1]], 3))
    assert err.value.coord == (0, 1)
    assert is_assignment(support_matrix(3), build_B(3))


def test_assign_rejects_nonzero_off_support_and_shape():
    with pytest.raises(AssignmentError) as err:
        assign(support_matrix(3), gf.identity(4, 3))
    # W_3 row 0 (000) is adjacent to 001, 010, 100 = columns 0, 1, 2; (0, 3) is the zero
    assert err.value.coord == (0, 1)
    with pytest.raises(AssignmentError):
        assign(support_matrix(3), gf.identity(2, 3))
    assert not is_assignment(support_matrix(3), gf.identity(2, 3))


def test_support_serialisation():
    text = support_matrix(2).dumps()
    assert text == "gfp 2 2 2\n11\n11\n"
    assert SupportPattern.loads(support_matrix(5).dumps()) == support_matrix(5)
    with pytest.raises(ValueError):
        SupportPattern.loads("gfp 3 1 1\n1\n")
