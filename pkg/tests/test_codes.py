from fractions import Fraction as F

import pytest

from e8voa.codes import (BinaryCode, Z4Code, block_subcode, construction_A,
                         dual_code, euclidean_weight, find_column_permutation,
                         is_type_II, named_code, residue_code_B)
from e8voa.lattice import short_vectors


def test_hamming_weight_distribution():
    assert named_code("Hamming8").weight_distribution() == (1, 0, 0, 0, 14, 0, 0, 0, 1)


def test_hamming_self_dual():
    h8 = named_code("Hamming8")
    assert dual_code(h8) == h8


def test_rm42_dimension_and_duality():
    rm41 = named_code("RM41")
    rm42 = named_code("RM42")
    assert rm41.dimension == 5
    assert rm42.dimension == 11
    assert dual_code(rm42) == rm41


def test_double_dual_identity():
    for name in ("Hamming8", "RM41", "RM42"):
        c = named_code(name)
        assert dual_code(dual_code(c)) == c
    z4 = named_code("Z4Leech")
    assert dual_code(dual_code(z4)) == z4


def test_z4_cardinality():
    assert named_code("Z4Leech").cardinality() == 2 ** 24


def test_z4_type_counts():
    z4 = named_code("Z4Leech")
    assert z4.type_counts() == (7, 10)
    assert 4 ** 7 * 2 ** 10 == 2 ** 24


def test_z4_self_dual_and_type_II():
    z4 = named_code("Z4Leech")
    assert dual_code(z4) == z4
    assert is_type_II(z4)


def test_zero_code_not_type_II():
    zero = Z4Code(24, [])
    assert not is_type_II(zero)


def test_corrupted_code_not_type_II():
    z4 = named_code("Z4Leech")
    gens = [list(g) for g in z4.generators]
    gens[0][0] = (gens[0][0] + 1) % 4
    assert not is_type_II(Z4Code(24, gens))


def test_euclidean_weight_additivity_on_code():
    import random
    z4 = named_code("Z4Leech")
    rng = random.Random(7)
    gens = z4.generators
    for _ in range(200):
        x = [0] * 24
        y = [0] * 24
        for g in gens:
            if rng.random() < 0.5:
                x = [(a + b) % 4 for a, b in zip(x, g)]
            if rng.random() < 0.5:
                y = [(a + b) % 4 for a, b in zip(y, g)]
        s = [(a + b) % 4 for a, b in zip(x, y)]
        assert euclidean_weight(s) % 8 == 0
        assert (euclidean_weight(x) + euclidean_weight(y)) % 8 == euclidean_weight(s) % 8


def test_construction_a_hamming():
    lat = construction_A(named_code("Hamming8"))
    assert lat.det_gram() == 256
    assert lat.is_doubly_even()
    assert len(short_vectors(lat, 4)) == 240


def test_construction_a_zero_code():
    zero = BinaryCode(4, [])
    lat = construction_A(zero)
    assert lat.det_gram() == 2 ** 8
    assert sorted(tuple(int(x) for x in b) for b in lat.basis) == [
        (0, 0, 0, 2), (0, 0, 2, 0), (0, 2, 0, 0), (2, 0, 0, 0)]


def test_construction_a_even_iff_doubly_even_code():
    # a code with a weight-2 word gives an even but not doubly even lattice
    c = BinaryCode(4, [(1, 1, 0, 0)])
    lat = construction_A(c)
    assert lat.is_even()
    assert not lat.is_doubly_even()


def test_construction_a4_leech():
    lam = construction_A(named_code("Z4Leech"))
    assert lam.rank == 24
    assert lam.det_gram() == 1
    assert lam.is_even()


def test_residue_code_trivia():
    zero = Z4Code(6, [])
    assert residue_code_B(zero).dimension == 0
    full = Z4Code(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert residue_code_B(full).dimension == 3


def test_residue_code_contains_hamming_cubed():
    bc = residue_code_B(named_code("Z4Leech"))
    assert bc.dimension == 17
    h8 = named_code("Hamming8")
    for k in range(3):
        blk = block_subcode(bc, range(8 * k, 8 * k + 8))
        assert blk.dimension == 4
        perm = find_column_permutation(blk, h8)
        assert perm is not None
        permuted = BinaryCode(8, [tuple(g[perm[j]] for j in range(8))
                                  for g in blk.generators])
        assert permuted == h8


def test_sublattice_index_is_power_of_two():
    z4 = named_code("Z4Leech")
    lam = construction_A(z4)
    bc = residue_code_B(z4)
    lb = construction_A(bc)
    # L_B(C) sits inside the Leech lattice with 2-power index
    for row in lb.basis:
        assert lam.contains(row)
    index_sq = lb.det_gram() / lam.det_gram()
    assert index_sq == 2 ** 14


def test_code_loaders(tmp_path):
    from e8voa.codes import load_binary_code, load_z4_code
    p = tmp_path / "c.txt"
    p.write_text("# two generators\n1100\n0011\n")
    c = load_binary_code(p)
    assert c.dimension == 2 and c.length == 4
    q = tmp_path / "z.txt"
    q.write_text("1230\n")
    z = load_z4_code(q)
    assert z.length == 4 and z.cardinality() == 4


def test_data_dir_override(tmp_path, monkeypatch):
    import e8voa.codes as codes
    (tmp_path / "hamming8.txt").write_text("11110000\n00111100\n00001111\n01100110\n")
    monkeypatch.setenv("MCKAY_DATA_DIR", str(tmp_path))
    assert codes.data_dir() == str(tmp_path)
    rows = codes._load_digit_rows(
        str(tmp_path / "hamming8.txt"), {0, 1})
    assert len(rows) == 4
