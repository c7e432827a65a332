from fractions import Fraction as F

import pytest

from e8voa.lattice import EvenLattice
from e8voa.rootsys import (EXTENDED_COEFFS, NODE_LABELS, NotRootGenerated,
                           UnsupportedType, build_root_system,
                           check_intermediate_chains,
                           classify_root_sublattice, e8_paper_data,
                           extended_e8_node, weyl_reflection)

PAPER_TYPES = {
    0: [("E", 8)],
    1: [("A", 1), ("E", 7)],
    2: [("A", 2), ("E", 6)],
    3: [("A", 3), ("D", 5)],
    4: [("A", 4), ("A", 4)],
    5: [("A", 1), ("A", 2), ("A", 5)],
    6: [("A", 1), ("A", 7)],
    7: [("D", 8)],
    8: [("A", 8)],
}


def test_root_counts():
    assert len(build_root_system("E", 8).roots) == 240
    assert len(build_root_system("D", 8).roots) == 112
    assert len(build_root_system("E", 7).roots) == 126
    assert len(build_root_system("E", 6).roots) == 72


def test_a1_roots_and_coxeter():
    rs = build_root_system("A", 1)
    assert sorted(rs.roots) == [(-1, 1), (1, -1)]
    assert rs.coxeter_number == 2


def test_all_roots_have_norm_two():
    for letter, rank in (("A", 5), ("D", 6), ("E", 8)):
        rs = build_root_system(letter, rank)
        assert all(sum(x * x for x in r) == 2 for r in rs.roots)
        assert rs.coxeter_number * rank == len(rs.roots)


def test_unsupported_type():
    with pytest.raises(UnsupportedType):
        build_root_system("E", 5)
    with pytest.raises(UnsupportedType):
        build_root_system("B", 3)


def test_simple_root_cartan_matches_declared_type():
    rs = build_root_system("D", 5)
    cart = [[sum(x * y for x, y in zip(u, v)) for v in rs.simple_roots]
            for u in rs.simple_roots]
    assert all(cart[i][i] == 2 for i in range(5))
    offdiag = sorted(cart[i][j] for i in range(5) for j in range(5) if i < j)
    assert offdiag.count(-1) == 4  # D5 tree has 4 edges


def test_weyl_reflection_basics():
    rs = build_root_system("A", 2)
    a, b = rs.simple_roots[0], rs.simple_roots[1]
    assert weyl_reflection(a, a) == tuple(-x for x in a)
    assert weyl_reflection(a, b) == tuple(x + y for x, y in zip(a, b))


def test_weyl_orbit_of_highest_root_stays_in_root_system():
    data = e8_paper_data()
    rs = build_root_system("E", 8)
    highest = data["lattice"].ambient(data["highest_coords"])
    for s in rs.simple_roots:
        img = weyl_reflection(s, highest)
        assert img in rs.root_set


def test_extended_relation_and_indices():
    for i in range(9):
        node = extended_e8_node(i)
        assert node.n == EXTENDED_COEFFS[i]
        assert node.label == NODE_LABELS[i]
        total = [F(0)] * 8
        for coeff, alpha in zip(EXTENDED_COEFFS, node.alphas):
            total = [t + coeff * a for t, a in zip(total, alpha)]
        assert all(x == 0 for x in total)


def test_node_classifications_match_display():
    for i, want in PAPER_TYPES.items():
        assert extended_e8_node(i).component_types == want


def test_glue_vector_pairings():
    for i in range(9):
        node = extended_e8_node(i)
        for j in range(9):
            t = sum(x * y for x, y in zip(node.glue_ambient, node.alphas[j]))
            if j == i:
                assert (t + F(1, node.n)).denominator == 1
            else:
                assert t.denominator == 1


def test_classify_examples():
    assert extended_e8_node(3).component_types == [("A", 3), ("D", 5)]
    assert extended_e8_node(6).component_types == [("A", 1), ("A", 7)]


def test_classify_rejects_rootless_lattice():
    lat = EvenLattice([(2, 0), (0, 2)])  # gram diag(4,4), no norm-2 vectors
    with pytest.raises(NotRootGenerated):
        classify_root_sublattice(lat)


def test_intermediate_chains():
    chains = check_intermediate_chains()
    seen = {(c["i"], c["middle_label"]) for c in chains}
    assert seen == {(3, "2B"), (5, "2A"), (5, "3A"), (6, "2A")}
    for c in chains:
        assert c["indices"][0] * c["indices"][1] == EXTENDED_COEFFS[c["i"]]
        assert c["power_map"] is not None


def test_chain_type_displays():
    chains = check_intermediate_chains()
    by_key = {(c["i"], c["middle_label"]): c for c in chains}
    assert by_key[(3, "2B")]["middle"] == [("D", 8)]
    assert by_key[(5, "3A")]["middle"] == [("A", 2), ("E", 6)]
    assert by_key[(5, "3A")]["indices"] == (2, 3)
    assert by_key[(6, "2A")]["indices"] == (2, 2)


def test_sum_of_coset_root_counts():
    for i in range(9):
        node = extended_e8_node(i)
        assert node.phi_count() + sum(node.h_counts()) == 240
        hs = node.h_counts()
        assert hs == hs[::-1]  # negation symmetry
