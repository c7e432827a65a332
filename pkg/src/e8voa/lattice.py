"""Even lattices: Gram data, duals, exact short-vector enumeration, cosets.

All enumeration is exact (rational LDL decomposition with integer square-root
bounds); nothing here ever touches floating point.  Vectors of a lattice are
kept in two parallel pictures: integer coefficient tuples with respect to the
basis, and the corresponding ambient rational tuples.
"""

from __future__ import annotations

import time
from fractions import Fraction

from . import linalg
from .linalg import coords_in_rowspan, det, hermite_normal_form, invert


class NotPositiveDefinite(ValueError):
    pass


class NotMinimal(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def _frac_vec(v):
    return tuple(Fraction(x) for x in v)


class EvenLattice:
    """A positive definite lattice given by basis rows and a Gram matrix.

    ``scale`` multiplies the ambient dot product, so a sqrt(2)-rescaled
    lattice is represented by the unscaled basis with scale 2 and never
    needs irrational coordinates.
    """

    def __init__(self, basis, gram=None, scale=1):
        self.basis = tuple(_frac_vec(row) for row in basis)
        self.rank = len(self.basis)
        self.scale = Fraction(scale)
        if gram is None:
            gram = [[self.scale * sum(x * y for x, y in zip(u, v))
                     for v in self.basis] for u in self.basis]
        self.gram = [[Fraction(x) for x in row] for row in gram]
        for i in range(self.rank):
            for j in range(self.rank):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        self._basis_inv = None
        self._ldl = None

    @staticmethod
    def from_gram(gram) -> "EvenLattice":
        n = len(gram)
        return EvenLattice(linalg.identity(n), gram=gram)

    def det_gram(self) -> Fraction:
        return det(self.gram)

    def _inv_basis(self):
        if self._basis_inv is None:
            self._basis_inv = invert([list(r) for r in self.basis])
        return self._basis_inv

    def coords(self, ambient_vec):
        """Rational coefficients of an ambient vector over the basis, or None."""
        if len(ambient_vec) == self.rank and self._square():
            inv = self._inv_basis()
            return linalg.vec_mat(_frac_vec(ambient_vec), inv)
        return coords_in_rowspan([list(r) for r in self.basis], _frac_vec(ambient_vec))

    def _square(self):
        return all(len(r) == self.rank for r in self.basis)

    def contains(self, ambient_vec) -> bool:
        c = self.coords(ambient_vec)
        if c is None:
            return False
        return all(Fraction(x).denominator == 1 for x in c)

    def ambient(self, coeffs):
        out = [Fraction(0)] * len(self.basis[0])
        for c, row in zip(coeffs, self.basis):
            if c:
                for j, x in enumerate(row):
                    out[j] += Fraction(c) * x
        return tuple(out)

    def norm_of_coeffs(self, z) -> Fraction:
        g = self.gram
        total = Fraction(0)
        zz = [Fraction(x) for x in z]
        for i, zi in enumerate(zz):
            if zi:
                row = g[i]
                total += zi * sum(row[j] * zj for j, zj in enumerate(zz) if zj)
        return total

    def is_even(self) -> bool:
        g = self.gram
        n = self.rank
        diag_even = all(g[i][i].denominator == 1 and g[i][i].numerator % 2 == 0
                        for i in range(n))
        off_int = all(g[i][j].denominator == 1
                      for i in range(n) for j in range(n))
        return diag_even and off_int

    def is_doubly_even(self) -> bool:
        # norms divisible by 4 on the basis and even cross terms close
        # under addition, so the basis check suffices
        g = self.gram
        n = self.rank
        diag = all(g[i][i].denominator == 1 and g[i][i].numerator % 4 == 0
                   for i in range(n))
        off = all(g[i][j].denominator == 1 and g[i][j].numerator % 2 == 0
                  for i in range(n) for j in range(n) if i != j)
        return diag and off

    def dual_basis_rows(self):
        ginv = invert(self.gram)
        rows = []
        for i in range(self.rank):
            rows.append(self.ambient(ginv[i]))
        return rows

    def ldl(self):
        """G = U^T diag(d) U with U unit upper triangular; cached."""
        if self._ldl is not None:
            return self._ldl
        n = self.rank
        q = [[Fraction(x) for x in row] for row in self.gram]
        d = [Fraction(0)] * n
        u = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            d[i] = q[i][i]
            if d[i] <= 0:
                raise NotPositiveDefinite("Gram matrix is not positive definite")
            u[i][i] = Fraction(1)
            for j in range(i + 1, n):
                u[i][j] = q[i][j] / d[i]
            for k in range(i + 1, n):
                for l in range(k, n):
                    q[k][l] -= d[i] * u[i][k] * u[i][l]
                    q[l][k] = q[k][l]
        self._ldl = (d, u)
        return self._ldl


def lattice_invariants(lat: EvenLattice) -> dict:
    lat.ldl()  # raises NotPositiveDefinite when it fails
    return {
        "det": lat.det_gram(),
        "dual_basis": lat.dual_basis_rows(),
        "is_even": lat.is_even(),
        "is_doubly_even": lat.is_doubly_even(),
    }


def _isqrt_bounds(center: Fraction, budget: Fraction):
    """Integer z range with (z + center)^2 <= budget, budget >= 0."""
    a, b = center.numerator, center.denominator
    p, q = budget.numerator, budget.denominator
    # largest m >= 0 with m^2 * q <= b^2 * p
    t = (b * b * p) // q
    from math import isqrt
    m = isqrt(t)
    while (m + 1) * (m + 1) * q <= b * b * p:
        m += 1
    while m * m * q > b * b * p:
        m -= 1
    hi = (m - a) // b
    lo = -((m + a) // b)
    return lo, hi


def enumerate_short(lat: EvenLattice, bound, shift=None,
                    budget_seconds=None):
    """All x = z + shift (z integer coefficients) with norm(x) <= bound.

    Returns a list of (coeff_tuple, norm) pairs, unsorted.  ``shift`` is a
    rational coefficient vector.  Exceeding ``budget_seconds`` raises
    BudgetExceeded.
    """
    n = lat.rank
    bound = Fraction(bound)
    if bound < 0:
        return []
    d, u = lat.ldl()
    s = [Fraction(0)] * n if shift is None else [Fraction(x) for x in shift]
    results = []
    x = [Fraction(0)] * n
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    counter = 0

    def descend(level, remaining):
        nonlocal counter
        counter += 1
        if deadline is not None and counter % 4096 == 0:
            if time.monotonic() > deadline:
                raise BudgetExceeded("short-vector enumeration ran out of time")
        if level < 0:
            z = tuple(x[i] - s[i] for i in range(n))
            assert all(zi.denominator == 1 for zi in z)
            results.append((tuple(x), bound - remaining))
            return
        center = s[level] + sum(u[level][j] * x[j] for j in range(level + 1, n))
        lo, hi = _isqrt_bounds(center, remaining / d[level])
        for z in range(lo, hi + 1):
            x[level] = z + s[level]
            term = d[level] * (x[level] + center - s[level]) ** 2
            # x[level] already includes the shift; the squared term uses
            # the full affine coordinate x[level] + (center - s[level])
            descend(level - 1, remaining - term)
        x[level] = Fraction(0)

    descend(n - 1, bound)
    return results


def short_vectors(lat: EvenLattice, norm, budget_seconds=None):
    """Ambient vectors of the lattice with exactly the given squared norm."""
    norm = Fraction(norm)
    hits = enumerate_short(lat, norm, budget_seconds=budget_seconds)
    out = [lat.ambient(z) for z, nn in hits if nn == norm]
    out.sort()
    return out


class Coset:
    """A coset shift + lattice, shift given as an ambient vector."""

    def __init__(self, lattice: EvenLattice, shift):
        self.lattice = lattice
        self.shift = _frac_vec(shift)
        c = lattice.coords(self.shift)
        if c is None:
            raise ValueError("coset shift lies outside the rational span")
        self.shift_coords = tuple(Fraction(x) for x in c)

    def __eq__(self, other):
        if not isinstance(other, Coset):
            return NotImplemented
        if self.lattice is not other.lattice:
            return False
        diff = [a - b for a, b in zip(self.shift_coords, other.shift_coords)]
        return all(x.denominator == 1 for x in diff)

    def __hash__(self):
        key = tuple(Fraction(x.numerator % x.denominator, x.denominator)
                    for x in self.shift_coords)
        return hash((id(self.lattice), key))


def coset_min_norm(c: Coset, budget_seconds=None) -> dict:
    """Exact minimum squared norm over the coset and all achieving vectors."""
    lat = c.lattice
    # reduce the shift by rounding to get a finite starting bound
    frac = [x - Fraction(round(x)) for x in c.shift_coords]
    start = lat.norm_of_coeffs(frac)
    hits = enumerate_short(lat, start, shift=frac, budget_seconds=budget_seconds)
    k = min(nn for _, nn in hits)
    offset = [Fraction(round(x)) for x in c.shift_coords]
    reps = []
    for z, nn in hits:
        if nn == k:
            full = [zi + oi - oi for zi, oi in zip(z, offset)]
            reps.append(lat.ambient(z))
    reps.sort()
    return {"k": k, "reps": reps}


def count_roots_in_coset(node, j: int) -> int:
    """Number of norm-2 vectors of E8 lying in the coset j*alpha_i + L(i)."""
    if not 1 <= j <= node.n - 1:
        raise ValueError("coset index out of range")
    target_shift = tuple(j * a for a in node.alpha_coords[node.i])
    count = 0
    for r in node.e8_root_coords:
        diff = [x - y for x, y in zip(r, target_shift)]
        c = linalg.vec_mat(diff, node.l_basis_inv)
        if all(Fraction(x).denominator == 1 for x in c):
            count += 1
    return count


def count_X_eta(root_system, gamma: Coset, eta) -> int:
    """|{(alpha, beta): alpha a root, beta coset-minimal, alpha + beta = eta}|."""
    info = coset_min_norm(gamma)
    minimal = set(tuple(v) for v in info["reps"])
    eta = _frac_vec(eta)
    if eta not in minimal:
        raise NotMinimal("eta is not of minimal norm in its coset")
    count = 0
    for alpha in root_system.roots:
        beta = tuple(e - a for e, a in zip(eta, alpha))
        if beta in minimal:
            count += 1
    return count


def size_reduce_basis(lat: EvenLattice) -> EvenLattice:
    """Greedy pairwise reduction; improves enumeration without LLL swaps."""
    basis = [list(r) for r in lat.basis]
    n = lat.rank

    def norm(v):
        return lat.scale * sum(x * x for x in v)

    def dot(u, v):
        return lat.scale * sum(x * y for x, y in zip(u, v))

    improved = True
    while improved:
        improved = False
        order = sorted(range(n), key=lambda i: (norm(basis[i]), basis[i]))
        for i in order:
            for j in order:
                if i == j or norm(basis[j]) == 0:
                    continue
                t = Fraction(dot(basis[i], basis[j]), 1) / norm(basis[j])
                ti = round(t)
                if ti == 0:
                    continue
                cand = [a - ti * b for a, b in zip(basis[i], basis[j])]
                if norm(cand) < norm(basis[i]):
                    basis[i] = cand
                    improved = True
    basis.sort(key=lambda r: (norm(r), r))
    return EvenLattice(basis, scale=lat.scale)


def lattice_from_integer_rows(rows, denominator=1) -> EvenLattice:
    """Lattice generated by integer rows / denominator, via Hermite form."""
    h = hermite_normal_form(rows)
    basis = [[Fraction(x, denominator) for x in row] for row in h]
    return EvenLattice(basis)


def load_matrix(path):
    """Whitespace-separated matrix of exact 'p/q' entries."""
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([Fraction(tok) for tok in line.split()])
    return rows
