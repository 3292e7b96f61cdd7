import json
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qschub.rootsys import (
    E7_BLOCK_ORDER,
    ChevalleyInconsistency,
    QuantumHasseDiagram,
    build_root_system,
    cached_diagram,
    chain_counts,
    charpoly,
    degree_block,
    e6_invariant,
    e6_special_point,
    exact_rank,
    fano_index,
    h_power,
    minuscule_coset_poset,
    phi_complement,
    point_class_op_e7,
    quantum_chevalley,
    quantum_hasse,
    shift_op_e6,
    validate_pins,
)
from qschub.spaces import HomSpace, SpaceParseError, UnsupportedSpace

SPACES = ["A:1,2", "A:2,4", "A:2,5", "A:3,6", "OG:2", "OG:3", "OG:4", "LG:2", "LG:3", "Q:4", "Q:6",
          "Q:8", "E6P1", "E7P7"]


@given(st.sampled_from(["A", "OG", "LG", "Q"]), st.integers(1, 9), st.integers(1, 9))
def test_descriptor_round_trip(tag, a, b):
    text = {"A": f"A:{a},{a + b}", "OG": f"OG:{a + 1}", "LG": f"LG:{min(a, 5)}", "Q": f"Q:{2 * a + 2}"}[tag]
    assert str(HomSpace.parse(text)) == text


@pytest.mark.parametrize("bad", ["", "A:2", "A:2,", "OG", "B:3", "Q:4:1", "E6", "a:2,4"])
def test_descriptor_parse_errors(bad):
    with pytest.raises(SpaceParseError):
        HomSpace.parse(bad)


@pytest.mark.parametrize("bad", ["A:4,4", "Q:5", "Q:2", "LG:6", "OG:1", "A:0,3"])
def test_descriptor_out_of_range(bad):
    with pytest.raises(UnsupportedSpace):
        HomSpace.parse(bad)


@pytest.mark.parametrize("family,rank,count", [
    ("A", 3, 6), ("A", 5, 15), ("B", 3, 9), ("C", 3, 9), ("C", 4, 16), ("D", 4, 12), ("D", 5, 20),
    ("E6", 6, 36), ("E7", 7, 63),
])
def test_positive_root_counts(family, rank, count):
    rs = build_root_system(family, rank)
    assert len(rs.positive_roots) == count
    # Gram matrix of simple roots is positive definite
    assert np.all(np.linalg.eigvalsh(np.array(rs.gram, dtype=float)) > 0)


def test_e_family_cartan_is_simply_laced():
    for fam, r in (("E6", 6), ("E7", 7)):
        c = np.array(build_root_system(fam, r).cartan)
        assert np.all(np.diag(c) == 2)
        assert set(c[~np.eye(r, dtype=bool)].tolist()) <= {0, -1}
        assert np.array_equal(c, c.T)


@pytest.mark.parametrize("tag", SPACES)
def test_poset_size_dimension_index(tag):
    space = HomSpace.parse(tag)
    diagram = minuscule_coset_poset(space)
    assert len(diagram.vertices) == space.rank_cohomology
    assert max(diagram.degrees) == space.dimension
    assert len(phi_complement(space)) == space.dimension
    assert fano_index(space) == space.index


@pytest.mark.parametrize("tag,degree", [
    ("A:2,4", 2), ("A:2,5", 5), ("A:3,6", 42), ("Q:6", 2), ("LG:3", 16), ("OG:4", 12),
    ("E6P1", 78), ("E7P7", 13110),
])
def test_degree_from_maximal_chains(tag, degree):
    # classical degrees: 42 = SYT(3,3,3), 78 and 13110 are the degrees of E6/P1 and E7/P7
    d = minuscule_coset_poset(HomSpace.parse(tag))
    assert chain_counts(len(d.vertices), d.classical_edges)[-1] == degree


def test_grassmannian_labels_are_box_partitions():
    d = minuscule_coset_poset(HomSpace("A", (2, 4)))
    assert sorted(d.labels) == sorted(["", "1", "2", "1,1", "2,1", "2,2"])
    assert len(minuscule_coset_poset(HomSpace("A", (3, 7))).vertices) == comb(7, 3)


def test_og_and_quadric_labels():
    og = minuscule_coset_poset(HomSpace("OG", (3,)))
    assert sorted(og.labels) == sorted(["", "1", "2", "3", "2,1", "3,1", "3,2", "3,2,1"])
    q = minuscule_coset_poset(HomSpace("Q", (6,)))
    assert sorted(q.labels) == sorted(["0", "1", "2", "+", "-", "4", "5", "6"])


def test_chevalley_on_projective_line():
    op = quantum_chevalley(HomSpace("A", (1, 2)))
    m = op.at(1)
    # H * 1 = H, H * H = q
    assert m[op.index_of("1"), op.index_of("")] == 1
    assert m[op.index_of(""), op.index_of("1")] == 1


def test_chevalley_grassmannian_quantum_edge():
    # sigma_1 * sigma_(2,1) = sigma_(2,2) + q in G(2,4)
    op = quantum_chevalley(HomSpace("A", (2, 4)))
    col = op.index_of("2,1")
    assert op.entries[(op.index_of("2,2"), col)] == {0: 1}
    assert op.entries[(op.index_of(""), col)] == {1: 1}


def test_lg_chevalley_coefficient_two():
    op = quantum_chevalley(HomSpace("LG", (2,)))
    # sigma_1^2 = 2 sigma_2 in LG(2,4)
    assert op.entries[(op.index_of("2"), op.index_of("1"))] == {0: 2}


def test_validate_pins_detects_corruption():
    space = HomSpace("E6P1")
    op = quantum_chevalley(space)
    validate_pins(space, op)
    (key, poly), *_ = sorted(op.entries.items())
    broken = dict(op.entries)
    broken[key] = {e: c + 1 for e, c in poly.items()}
    bad = type(op)(op.dimension, broken, op.degrees, op.labels)
    with pytest.raises(ChevalleyInconsistency):
        validate_pins(space, bad)


def test_e6_power_pins():
    space = HomSpace("E6P1")
    op = quantum_chevalley(space)
    v = h_power(space, 13, op=op)
    assert {op.labels[i]: int(x) for i, x in enumerate(v) if x} == {"s13": 78, "H": 57}


def test_e7_block_and_charpoly():
    labs, block, cp = degree_block(HomSpace("E7P7"), 18, 8, order=E7_BLOCK_ORDER)
    assert labs == list(E7_BLOCK_ORDER)
    assert block == [[598, 1710, 1938], [3420, 9832, 11172], [5814, 16758, 19066]]
    assert [int(c) for c in cp] == [-64, 401808, -29496, 1]


def test_charpoly_small():
    # det(T - [[2, 1], [1, 2]]) = T^2 - 4T + 3
    assert [int(c) for c in charpoly([[2, 1], [1, 2]])] == [3, -4, 1]
    assert exact_rank([[1, 2], [2, 4]]) == 1


def test_e6_shift_operator_is_translation():
    sh = shift_op_e6()
    op = quantum_chevalley(HomSpace("E6P1"))
    m, s = op.at(1), sh.at(1)
    assert np.all(s @ m == m @ s)
    assert all(len(p) == 1 for p in sh.entries.values())


def test_e7_point_class_square():
    pc = point_class_op_e7()
    sq = {}
    for (i, k), a in pc.entries.items():
        for (k2, j), b in pc.entries.items():
            if k == k2:
                sq[(i, j)] = {next(iter(a)) + next(iter(b)): 1}
    assert set(sq) == {(i, i) for i in range(56)}
    assert all(v == {3: 1} for v in sq.values())


def test_e6_invariants_at_special_point():
    pt = e6_special_point()
    for k in (2, 5, 6, 9):
        assert abs(e6_invariant(k, pt)) < 1e-10
    # I_8 = 140 p2^2 - 240 p4 in the squares (x1^2, x3^2, x5^2, y^2); p2 = 2 + 2i here
    assert abs(e6_invariant(8, pt) - 1120j) < 1e-9
    assert abs(e6_invariant(12, pt)) > 0.1
    with pytest.raises(ValueError):
        e6_invariant(2, (1, 1, 1, 1, 1, 1, 0))


def test_hasse_json_round_trip():
    d = quantum_hasse(HomSpace("OG", (3,)))
    again = QuantumHasseDiagram.from_json(json.loads(json.dumps(d.to_json())))
    assert again.to_json() == d.to_json()
    assert "digraph" in d.to_dot()


def test_cache_round_trip_and_tamper(tmp_path):
    space = HomSpace("A", (2, 5))
    first = cached_diagram(space, tmp_path)
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1
    assert cached_diagram(space, tmp_path).to_json() == first.to_json()
    data = json.loads(files[0].read_text())
    data["diagram"]["classical_edges"] = data["diagram"]["classical_edges"][1:]
    files[0].write_text(json.dumps(data))
    # a stale hash forces regeneration
    assert cached_diagram(space, tmp_path).to_json() == first.to_json()
