import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from e8voa.lattice import (Coset, EvenLattice, NotMinimal, NotPositiveDefinite,
                           coset_min_norm, count_X_eta, enumerate_short,
                           lattice_invariants, short_vectors)
from e8voa.rootsys import build_root_system, e8_paper_data, extended_e8_node


def e8_lattice():
    return e8_paper_data()["lattice"]


def sqrt2_e8():
    return EvenLattice(e8_lattice().basis, scale=2)


def test_e8_determinant():
    assert e8_lattice().det_gram() == 1


def test_sqrt2e8_invariants():
    inv = lattice_invariants(sqrt2_e8())
    assert inv["det"] == 256
    assert inv["is_even"]
    assert inv["is_doubly_even"]


def test_index_of_l5_from_determinant_ratio():
    node = extended_e8_node(5)
    ratio = node.lattice.det_gram() / e8_lattice().det_gram()
    assert ratio == 36


def test_not_positive_definite_detected():
    bad = EvenLattice.from_gram([[2, 3], [3, 2]])
    with pytest.raises(NotPositiveDefinite):
        lattice_invariants(bad)


def test_short_vectors_of_sqrt2e8():
    lat = sqrt2_e8()
    assert len(short_vectors(lat, 4)) == 240
    assert short_vectors(lat, 2) == []


def test_short_vectors_closed_under_negation_and_sorted():
    lat = sqrt2_e8()
    vecs = short_vectors(lat, 4)
    assert vecs == sorted(vecs)
    vset = set(vecs)
    assert all(tuple(-x for x in v) in vset for v in vecs)


def _box_oracle(gram, target):
    """Independent brute-force enumeration over an explicit coordinate box."""
    from e8voa.linalg import invert
    n = len(gram)
    ginv = invert(gram)
    bounds = []
    for i in range(n):
        b = 0
        while F(b * b) <= target * ginv[i][i]:
            b += 1
        bounds.append(b)
    hits = []
    for z in itertools.product(*[range(-b, b + 1) for b in bounds]):
        norm = sum(z[i] * gram[i][j] * z[j] for i in range(n) for j in range(n))
        if norm == target:
            hits.append(tuple(F(x) for x in z))
    return sorted(hits)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 3), st.integers(0, 400))
def test_enumeration_matches_box_oracle(rank, seed):
    import random
    rng = random.Random(seed)
    while True:
        a = [[rng.randint(-2, 2) for _ in range(rank)] for _ in range(rank)]
        gram = [[sum(a[i][k] * a[j][k] for k in range(rank)) + 2 * int(i == j)
                 for j in range(rank)] for i in range(rank)]
        from e8voa.linalg import det
        if det(gram) != 0:
            break
    target = F(rng.randint(1, 8))
    lat = EvenLattice.from_gram(gram)
    ours = sorted(tuple(z) for z, n in enumerate_short(lat, target)
                  if n == target)
    assert ours == _box_oracle(gram, target)


def test_coset_min_norm_a2():
    a2 = build_root_system("A", 2)
    mu = (F(1, 3), F(1, 3), F(-2, 3))
    info = coset_min_norm(Coset(a2.lattice, mu))
    assert info["k"] == F(2, 3)
    assert len(info["reps"]) == 3


def test_coset_min_norm_trivial():
    a2 = build_root_system("A", 2)
    info = coset_min_norm(Coset(a2.lattice, (0, 0, 0)))
    assert info["k"] == 0
    assert info["reps"] == [(0, 0, 0)]


def test_dual_coset_of_unit_vector_has_min_one():
    from e8voa.codes import construction_A, named_code
    lat = construction_A(named_code("Hamming8"))
    shift = (1, 0, 0, 0, 0, 0, 0, 0)
    info = coset_min_norm(Coset(lat, shift))
    assert info["k"] == 1


def test_count_x_eta_a2():
    a2 = build_root_system("A", 2)
    c = Coset(a2.lattice, (F(1, 3), F(1, 3), F(-2, 3)))
    info = coset_min_norm(c)
    for eta in info["reps"]:
        assert count_X_eta(a2, c, eta) == 2


def test_count_x_eta_trivial_coset():
    a2 = build_root_system("A", 2)
    c = Coset(a2.lattice, (0, 0, 0))
    assert count_X_eta(a2, c, (0, 0, 0)) == 0


def test_count_x_eta_d5_spinor():
    d5 = build_root_system("D", 5)
    c = Coset(d5.lattice, (F(1, 2),) * 5)
    info = coset_min_norm(c)
    assert info["k"] == F(5, 4)
    assert count_X_eta(d5, c, info["reps"][0]) == 10


def test_count_x_eta_rejects_nonminimal():
    a2 = build_root_system("A", 2)
    c = Coset(a2.lattice, (F(1, 3), F(1, 3), F(-2, 3)))
    bad = tuple(x + y for x, y in
                zip((F(1, 3), F(1, 3), F(-2, 3)), a2.roots[0]))
    info = coset_min_norm(c)
    if bad not in set(info["reps"]):
        with pytest.raises(NotMinimal):
            count_X_eta(a2, c, bad)


def test_coset_equality():
    a2 = build_root_system("A", 2)
    mu = (F(1, 3), F(1, 3), F(-2, 3))
    shifted = tuple(x + y for x, y in zip(mu, a2.roots[0]))
    assert Coset(a2.lattice, mu) == Coset(a2.lattice, shifted)
    assert Coset(a2.lattice, mu) != Coset(a2.lattice, (0, 0, 0))


def test_hamming_construction_norm4_coset_counts():
    # the sixteen norm-4 vectors congruent to 0 mod 2 are the +-2 e_j
    from e8voa.codes import construction_A, named_code
    lat = construction_A(named_code("Hamming8"))
    vecs = short_vectors(lat, 4)
    even = [v for v in vecs if all(int(x) % 2 == 0 for x in v)]
    assert len(even) == 16
    assert all(sorted(abs(int(x)) for x in v) == [0] * 7 + [2] for v in even)


def test_load_matrix(tmp_path):
    from e8voa.lattice import load_matrix
    p = tmp_path / "m.txt"
    p.write_text("# comment\n1/2 0\n0 3\n")
    assert load_matrix(p) == [[F(1, 2), F(0)], [F(0), F(3)]]
