"""The Leech lattice from the length-24 Z4 code, and its E8 structure.

Everything here is certified rather than assumed: the code is checked to
be type II self-dual, the lattice to be even and unimodular with minimum
norm 4 (by exhaustive budgeted enumeration), and the three orthogonal
copies of the rescaled E8 lattice are located inside it explicitly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

from .codes import (block_subcode, construction_A, find_column_permutation,
                    is_type_II, named_code, residue_code_B)
from .lattice import (Coset, EvenLattice, coset_min_norm, enumerate_short,
                      lattice_from_integer_rows, size_reduce_basis)
from .linalg import integer_coords_in_rowspan
from .rootsys import e8_paper_data


class CodeCheckFailed(RuntimeError):
    pass


class EmbeddingNotFound(RuntimeError):
    pass


class ShapeMismatch(RuntimeError):
    pass


class LeechContext:
    def __init__(self, code, lattice, reduced):
        self.code = code
        self.lattice = lattice
        self.reduced = reduced
        self.embedding = None
        self.block_frames = None


@lru_cache(maxsize=None)
def build_leech() -> LeechContext:
    code = named_code("Z4Leech")
    if not is_type_II(code):
        raise CodeCheckFailed("the Z4 code is not type II self-dual")
    lam = construction_A(code)
    if lam.rank != 24 or lam.det_gram() != 1 or not lam.is_even():
        raise CodeCheckFailed("Construction A did not produce an even unimodular lattice")
    return LeechContext(code, lam, size_reduce_basis(lam))


def certify_minimum(budget_seconds=600) -> bool:
    """No vectors of norm 2 (exhaustive search) and an explicit norm-4 one."""
    ctx = build_leech()
    hits = enumerate_short(ctx.reduced, 2, budget_seconds=budget_seconds)
    nonzero = [z for z, n in hits if n != 0]
    if nonzero:
        return False
    witness = tuple(Fraction(2 if j == 0 else 0) for j in range(24))
    if not ctx.lattice.contains(witness):
        return False
    return True


def kissing_vectors(budget_seconds=None):
    """All minimal vectors of the Leech lattice; slow, behind a flag."""
    ctx = build_leech()
    hits = enumerate_short(ctx.reduced, 4, budget_seconds=budget_seconds)
    return [z for z, n in hits if n == 4]


def _paper_frame_in(lat: EvenLattice):
    """Keys m_1..m_8 of a doubly even lattice with Gram 2 x (E8 Cartan).

    The norm-4 vectors of an isometric copy of the rescaled E8 lattice
    form a rescaled root system; a simple system matching the chain
    labelling of the diagram is extracted and reordered by backtracking.
    """
    hits = enumerate_short(lat, 4)
    keys = sorted(tuple(int(x) for x in z) for z, n in hits if n == 4)
    pos = [k for k in keys if _lex_pos(k)]
    posset = set(pos)
    simple = []
    for p in pos:
        if not any(tuple(a - b for a, b in zip(p, q)) in posset
                   for q in pos if q != p):
            simple.append(p)
    if len(simple) != lat.rank:
        raise EmbeddingNotFound("could not extract a simple system")
    cartan = [[_pair(lat, u, v) // 2 for v in simple] for u in simple]
    target = e8_paper_data()["lattice"].gram
    target = [[int(x) for x in row] for row in target]
    perm = _match_diagram(target, cartan)
    if perm is None:
        raise EmbeddingNotFound("simple system does not match the E8 diagram")
    return [simple[perm[i]] for i in range(8)]


def _pair(lat, u, v) -> int:
    g = lat.gram
    total = Fraction(0)
    for i, x in enumerate(u):
        if x:
            total += x * sum(g[i][j] * v[j] for j in range(len(v)) if v[j])
    assert total.denominator == 1
    return int(total)


def _lex_pos(v):
    for x in v:
        if x != 0:
            return x > 0
    return False


def _match_diagram(target, source):
    """Permutation p with source[p[i]][p[j]] == target[i][j]."""
    n = len(target)
    tdeg = [sum(1 for j in range(n) if i != j and target[i][j] != 0)
            for i in range(n)]
    sdeg = [sum(1 for j in range(n) if i != j and source[i][j] != 0)
            for i in range(n)]
    perm = [None] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for c in range(n):
            if used[c] or sdeg[c] != tdeg[i]:
                continue
            ok = True
            for j in range(i):
                if source[c][perm[j]] != target[i][j]:
                    ok = False
                    break
            if ok:
                perm[i] = c
                used[c] = True
                if extend(i + 1):
                    return True
                used[c] = False
        return False

    return perm if extend(0) else None


def embed_sqrt2E8_cubed(ctx: LeechContext):
    """Three orthogonal rescaled-E8 copies on the coordinate blocks.

    Block k of the residue code carries a Hamming-equivalent subcode; its
    mod-2 preimage lattice sits inside the Leech lattice and a diagram
    frame is located in each copy.
    """
    if ctx.embedding is not None:
        return ctx.embedding
    bc = residue_code_B(ctx.code)
    h8 = named_code("Hamming8")
    rows24 = []
    frames = []
    for k in range(3):
        cols = list(range(8 * k, 8 * k + 8))
        blk = block_subcode(bc, cols)
        if blk.dimension != 4 or find_column_permutation(blk, h8) is None:
            raise EmbeddingNotFound(f"block {k} does not carry a Hamming code")
        gens = [[2 * int(i == j) for j in range(8)] for i in range(8)]
        gens += [list(g) for g in blk.generators]
        block_lat = lattice_from_integer_rows(gens)
        if block_lat.det_gram() != 256 or not block_lat.is_doubly_even():
            raise EmbeddingNotFound(f"block {k} lattice is not a rescaled E8")
        frame_keys = _paper_frame_in(block_lat)
        frame_ambient8 = [block_lat.ambient(m) for m in frame_keys]
        frame24 = []
        for v in frame_ambient8:
            row = [Fraction(0)] * 24
            for t, x in enumerate(v):
                row[8 * k + t] = x
            frame24.append(tuple(row))
        frames.append(frame24)
        for row8 in block_lat.basis:
            row = [Fraction(0)] * 24
            for t, x in enumerate(row8):
                row[8 * k + t] = x
            rows24.append(row)
    # all 24 vectors lie in the Leech lattice
    for row in rows24:
        if not ctx.lattice.contains(row):
            raise EmbeddingNotFound("block lattice vector falls outside Leech")
    for fr in frames:
        for v in fr:
            if not ctx.lattice.contains(v):
                raise EmbeddingNotFound("frame vector falls outside Leech")
    emb = EvenLattice(rows24)
    # Gram is block diagonal with three rescaled E8 blocks; cross blocks
    # vanish because the supports are disjoint
    for a in range(24):
        for b in range(24):
            if (a // 8) != (b // 8) and emb.gram[a][b] != 0:
                raise EmbeddingNotFound("blocks are not orthogonal")
    ctx.embedding = emb
    ctx.block_frames = frames
    return emb


def block_norm4_count(ctx: LeechContext, k: int) -> int:
    emb = embed_sqrt2E8_cubed(ctx)
    block = EvenLattice(emb.basis[8 * k: 8 * k + 8])
    hits = enumerate_short(block, 4)
    vecs = [block.ambient(z) for z, n in hits if n == 4]
    for v in vecs:
        if not ctx.lattice.contains(v):
            raise EmbeddingNotFound("norm-4 block vector falls outside Leech")
    return len(vecs)


def sigma_tilde_order(i: int) -> int:
    """Order of the phase automorphism induced by the node-i glue vector.

    beta is the image of the rescaled glue vector under the first-block
    embedding; the order is the lcm of the denominators of its pairings
    with a basis of the Leech lattice.
    """
    from .rootsys import extended_e8_node
    node = extended_e8_node(i)
    ctx = build_leech()
    embed_sqrt2E8_cubed(ctx)
    frame = ctx.block_frames[0]
    beta = [Fraction(0)] * 24
    for c, m in zip(node.glue_coords, frame):
        if c:
            for t in range(24):
                beta[t] += c * m[t]
    order = 1
    for row in ctx.lattice.basis:
        t = sum(x * y for x, y in zip(beta, row))
        order = lcm(order, t.denominator)
    return order


MINIMAL_SHAPES = (
    (0, 0, 0, 0, 0, 0, 0, 0),
    (1, 0, 0, 0, 0, 0, 0, 0),
    (1, 1, 0, 0, 0, 0, 0, 0),
    (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), 0, 0, 0, 0),
    (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), 0, 0, 0, 0, Fraction(-1, 2)),
    (Fraction(1, 2), Fraction(1, 2), 0, 0, 0, 0, Fraction(-1, 2), Fraction(-1, 2)),
    (1, Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), 0, 0, 0),
    (1, Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), 0, 0, 0, Fraction(-1, 2)),
    (Fraction(1, 2),) * 8,
    (Fraction(1, 2),) * 7 + (Fraction(-1, 2),),
    (Fraction(1, 2),) * 6 + (Fraction(-1, 2), Fraction(-1, 2)),
)


def _canonical_shape(v):
    return tuple(sorted((Fraction(x) for x in v), reverse=True))


_SHAPE_SET = {_canonical_shape(s) for s in MINIMAL_SHAPES}


@lru_cache(maxsize=None)
def hamming_model_dual():
    """The dual of the Construction-A model of the rescaled E8 lattice."""
    lat = construction_A(named_code("Hamming8"))
    dual_rows = lat.dual_basis_rows()
    return lat, EvenLattice(dual_rows)


def minimal_coset_survey():
    """Classify all 256 cosets of the rescaled E8 lattice in its dual.

    Each coset gets its exact minimal norm (0, 1, or 2), a minimal
    representative matching one of the eleven coordinate shapes up to
    permutation and overall sign, and for norm 2 an orthogonal splitting
    into two norm-1 dual vectors.
    """
    lat, dual = hamming_model_dual()
    norm1 = None
    cosets = []
    for mask in range(256):
        shift = [Fraction(0)] * 8
        for b in range(8):
            if mask >> b & 1:
                for t in range(8):
                    shift[t] += dual.basis[b][t]
        coset = Coset(lat, shift)
        info = coset_min_norm(coset)
        k = info["k"]
        if k not in (0, 1, 2):
            raise ShapeMismatch(f"coset has minimal norm {k}")
        match = None
        for rep in info["reps"]:
            c = _canonical_shape(rep)
            cneg = _canonical_shape([-x for x in rep])
            if c in _SHAPE_SET or cneg in _SHAPE_SET:
                match = rep
                break
        if match is None:
            raise ShapeMismatch("no minimal representative matches the shape list")
        split = None
        if k == 2:
            if norm1 is None:
                norm1 = _dual_norm1_vectors(lat, dual)
            alpha = match
            for a in norm1:
                b = tuple(x - y for x, y in zip(alpha, a))
                nb = sum(x * x for x in b)
                ab = sum(x * y for x, y in zip(a, b))
                if nb == 1 and ab == 0:
                    split = (a, b)
                    break
            if split is None:
                raise ShapeMismatch("norm-2 representative admits no orthogonal split")
        cosets.append({"mask": mask, "min_norm": k, "rep": match,
                       "n_minimal": len(info["reps"]), "split": split})
    return cosets


def _dual_norm1_vectors(lat, dual):
    hits = enumerate_short(dual, 1)
    return [dual.ambient(z) for z, n in hits if n == 1]
