"""Root systems of types A, D, E and the extended E8 diagram.

Simple roots use the standard coordinate models (A_n in the sum-zero
hyperplane of R^(n+1), D_n and E8 in R^n with the even / half-integer
model).  The nine rank-8 sublattices of E8 obtained by deleting one node
of the extended diagram are built here, together with their glue vectors.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .lattice import EvenLattice, hermite_normal_form
from .linalg import det, invert, vec_mat


class UnsupportedType(ValueError):
    pass


class NotRootGenerated(ValueError):
    pass


class ChainViolation(RuntimeError):
    pass


COXETER = {"A": lambda n: n + 1, "D": lambda n: 2 * n - 2,
           "E": {6: 12, 7: 18, 8: 30}.get}


def coxeter_number(letter: str, rank: int) -> int:
    h = COXETER[letter](rank)
    if h is None:
        raise UnsupportedType(f"{letter}{rank}")
    return h


def _simple_roots_model(letter: str, rank: int):
    F = Fraction
    if letter == "A" and rank >= 1:
        dim = rank + 1
        return [tuple(F(int(j == i)) - F(int(j == i + 1)) for j in range(dim))
                for i in range(rank)]
    if letter == "D" and rank >= 3:
        dim = rank
        rows = [tuple(F(int(j == i)) - F(int(j == i + 1)) for j in range(dim))
                for i in range(rank - 1)]
        rows.append(tuple(F(int(j == rank - 2)) + F(int(j == rank - 1))
                          for j in range(dim)))
        return rows
    if letter == "E" and rank in (6, 7, 8):
        half = F(1, 2)
        a1 = (half, -half, -half, -half, -half, -half, -half, half)
        a2 = tuple(F(x) for x in (1, 1, 0, 0, 0, 0, 0, 0))
        rest = []
        for k in range(3, 9):
            v = [F(0)] * 8
            v[k - 3] = F(-1)
            v[k - 2] = F(1)
            rest.append(tuple(v))
        all_eight = [a1, a2] + rest
        return all_eight[:rank]
    raise UnsupportedType(f"{letter}{rank}")


def _lex_positive(v) -> bool:
    for x in v:
        if x != 0:
            return x > 0
    return False


class RootSystem:
    """An ADE root system with explicit coordinates, roots of norm 2."""

    def __init__(self, simple_roots, components=None):
        self.simple_roots = [tuple(Fraction(x) for x in r) for r in simple_roots]
        self.ambient_dim = len(self.simple_roots[0])
        self.lattice = EvenLattice(self.simple_roots)
        coords = short_root_coords(self.lattice)
        self.root_coords = coords
        self.roots = sorted(self.lattice.ambient(c) for c in coords)
        self.root_set = set(self.roots)
        self.positive_roots = [r for r in self.roots if _lex_positive(r)]
        if components is None:
            components = classify_root_sublattice(self.lattice)
        self.components = components

    @property
    def coxeter_number(self) -> int:
        if len(self.components) != 1:
            raise ValueError("coxeter_number needs an indecomposable system")
        letter, rank = self.components[0]
        return coxeter_number(letter, rank)


def short_root_coords(lat: EvenLattice):
    """Integer coefficient tuples of the norm-2 vectors of an unscaled lattice."""
    from .lattice import enumerate_short
    hits = enumerate_short(lat, 2)
    out = []
    for z, nn in hits:
        if nn == 2:
            out.append(tuple(int(x) for x in z))
    out.sort()
    return out


@lru_cache(maxsize=None)
def build_root_system(letter: str, rank: int) -> RootSystem:
    rs = RootSystem(_simple_roots_model(letter, rank),
                    components=[(letter, rank)])
    expected = rank * coxeter_number(letter, rank)
    if len(rs.roots) != expected:
        raise AssertionError(f"{letter}{rank}: {len(rs.roots)} roots, "
                             f"expected {expected}")
    return rs


def weyl_reflection(root, v):
    """Reflection of v in the hyperplane of a norm-2 root."""
    root = tuple(Fraction(x) for x in root)
    v = tuple(Fraction(x) for x in v)
    n = sum(x * x for x in root)
    if n != 2:
        raise ValueError("reflection root must have norm 2")
    t = sum(x * y for x, y in zip(v, root))
    return tuple(x - t * y for x, y in zip(v, root))


def _component_graph(simple_coords, gram_pair):
    n = len(simple_coords)
    adj = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if gram_pair(simple_coords[i], simple_coords[j]) != 0:
                adj[i].append(j)
                adj[j].append(i)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return adj, comps


def _diagram_type(nodes, adj):
    rank = len(nodes)
    degs = {v: len([w for w in adj[v] if w in nodes]) for v in nodes}
    edge_count = sum(degs.values()) // 2
    if edge_count != rank - 1:
        raise NotRootGenerated("component diagram is not a tree")
    branch = [v for v in nodes if degs[v] >= 3]
    if not branch:
        return ("A", rank)
    if len(branch) > 1 or degs[branch[0]] > 3:
        raise NotRootGenerated("diagram is not of type A, D, or E")
    b = branch[0]
    arms = []
    for start in adj[b]:
        if start not in nodes:
            continue
        length = 1
        prev, cur = b, start
        while True:
            nxt = [w for w in adj[cur] if w in nodes and w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", rank)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return ("E", rank)
    raise NotRootGenerated("diagram is not of type A, D, or E")


class RootComponent:
    def __init__(self, letter, rank, simple_coords, root_coords):
        self.letter = letter
        self.rank = rank
        self.simple_coords = simple_coords
        self.root_coords = root_coords
        self.h = coxeter_number(letter, rank)


def decompose_root_lattice(lat: EvenLattice):
    """Split an unscaled root-generated lattice into ADE components.

    Returns a list of RootComponent with coefficient-space data.  The
    lattice must be generated by its norm-2 vectors.
    """
    coords = short_root_coords(lat)
    if not coords:
        raise NotRootGenerated("lattice has no roots")
    h = hermite_normal_form(coords)
    if len(h) < lat.rank or abs(det(h)) != 1:
        raise NotRootGenerated("norm-2 vectors do not generate the lattice")

    def pair(u, v):
        g = lat.gram
        return sum(u[i] * sum(g[i][j] * v[j] for j in range(len(v)) if v[j])
                   for i in range(len(u)) if u[i])

    pos = [c for c in coords if _lex_positive(c)]
    posset = set(pos)
    simple = []
    for p in pos:
        decomposable = False
        for q in pos:
            if q != p and tuple(a - b for a, b in zip(p, q)) in posset:
                decomposable = True
                break
        if not decomposable:
            simple.append(p)
    adj, comps = _component_graph(simple, pair)
    out = []
    for nodes in comps:
        letter, rank = _diagram_type(nodes, adj)
        comp_simple = [simple[v] for v in nodes]
        comp_roots = []
        for r in coords:
            hits = [v for v in nodes if pair(r, simple[v]) != 0]
            others = [v for v in range(len(simple))
                      if v not in nodes and pair(r, simple[v]) != 0]
            if hits and others:
                raise NotRootGenerated("root meets two components")
            if hits:
                comp_roots.append(r)
        comp = RootComponent(letter, rank, comp_simple, comp_roots)
        if len(comp_roots) != rank * comp.h:
            raise NotRootGenerated(
                f"component {letter}{rank} has {len(comp_roots)} roots")
        out.append(comp)
    out.sort(key=lambda c: (c.rank, c.letter, c.simple_coords))
    return out


def classify_root_sublattice(lat: EvenLattice):
    """Multiset of (letter, rank) for a root-generated unscaled lattice."""
    return sorted((c.letter, c.rank) for c in decompose_root_lattice(lat))


EXTENDED_COEFFS = (1, 2, 3, 4, 5, 6, 4, 2, 3)

NODE_LABELS = ("1A", "2A", "3A", "4A", "5A", "6A", "4B", "2B", "3C")


@lru_cache(maxsize=None)
def _e8_paper_basis():
    """Simple roots of E8 reordered to the extended-diagram labelling.

    The chain runs alpha_0 .. alpha_7 with alpha_8 hanging off alpha_5;
    the relabelling below maps the standard construction onto it.
    """
    std = _simple_roots_model("E", 8)
    # std indices (1-based): 8,7,6,5,4,3,1,2 become paper alpha_1..alpha_8
    order = [8, 7, 6, 5, 4, 3, 1, 2]
    return [std[k - 1] for k in order]


@lru_cache(maxsize=None)
def e8_paper_data():
    """Ambient E8 roots, paper-basis coordinates, and the highest root."""
    basis = _e8_paper_basis()
    lat = EvenLattice(basis)
    coords = short_root_coords(lat)
    ambient = [lat.ambient(c) for c in coords]
    heights = [sum(c) for c in coords]
    top = max(range(len(coords)), key=lambda k: heights[k])
    highest = coords[top]
    return {
        "basis": basis,
        "lattice": lat,
        "root_coords": coords,
        "roots_ambient": ambient,
        "highest_coords": highest,
    }


def _glue_coeffs(i: int):
    """Glue vector as coefficients over alpha_0 .. alpha_8."""
    F = Fraction
    c = [F(0)] * 9
    if i == 0:
        c[1] = F(1)
    elif 1 <= i <= 5:
        for m in range(i):
            c[m] = F(-(m + 1), i + 1)
    elif i == 6:
        for m in range(6):
            c[m] = F(-(m + 1), 8)
        c[8] = F(-7, 8)
    elif i == 7:
        c[6] = F(1, 2)
        c[8] = F(1, 2)
    elif i == 8:
        for m in range(8):
            c[m] = F(-(m + 1), 9)
    else:
        raise ValueError("node index must be 0..8")
    return c


class ExtendedE8Node:
    """Data attached to removing node i from the extended E8 diagram."""

    def __init__(self, i: int):
        if not 0 <= i <= 8:
            raise ValueError("node index must be 0..8")
        data = e8_paper_data()
        self.i = i
        self.label = NODE_LABELS[i]
        basis = data["basis"]
        highest = data["highest_coords"]
        # alpha_0 is minus the highest root; coordinates over alpha_1..alpha_8
        alpha0_coords = tuple(-x for x in highest)
        self.alpha_coords = [alpha0_coords] + [
            tuple(int(j == k) for j in range(8)) for k in range(8)]
        self.alphas = [tuple(sum(Fraction(c) * basis[m][t] for m, c in enumerate(cc))
                             for t in range(8)) for cc in self.alpha_coords]
        rel = [Fraction(0)] * 8
        for coeff, cc in zip(EXTENDED_COEFFS, self.alpha_coords):
            for t in range(8):
                rel[t] += coeff * cc[t]
        if any(x != 0 for x in rel):
            raise AssertionError("extended diagram relation fails")
        self.n = EXTENDED_COEFFS[i]

        keep = [j for j in range(9) if j != i]
        self.l_rows_coords = [list(self.alpha_coords[j]) for j in keep]
        self.l_basis_inv = invert(self.l_rows_coords)
        self.lattice = EvenLattice([self.alphas[j] for j in keep])
        index_sq = self.lattice.det_gram() / data["lattice"].det_gram()
        if index_sq != self.n * self.n:
            raise AssertionError("index of L(i) in E8 does not match the label")
        self.components = [
            RootComponent(c.letter, c.rank,
                          [_to_e8_coords(s, self.l_rows_coords) for s in c.simple_coords],
                          [_to_e8_coords(r, self.l_rows_coords) for r in c.root_coords])
        for c in decompose_root_lattice(self.lattice)]
        self.component_types = sorted((c.letter, c.rank) for c in self.components)

        self.e8_root_coords = data["root_coords"]
        self.e8_roots_ambient = data["roots_ambient"]

        glue = _glue_coeffs(i)
        gc = [Fraction(0)] * 8
        for m, c in enumerate(glue):
            if c:
                for t in range(8):
                    gc[t] += c * self.alpha_coords[m][t]
        self.glue_coords = tuple(gc)
        self.glue_ambient = tuple(
            sum(gc[t] * basis[t][s] for t in range(8)) for s in range(8))
        self._check_glue()
        self._classes = None

    def _check_glue(self):
        for j in range(9):
            t = _dot(self.glue_ambient, self.alphas[j])
            if j == self.i:
                if (t + Fraction(1, self.n)).denominator != 1:
                    raise AssertionError("glue pairing with removed node is wrong")
            else:
                if t.denominator != 1:
                    raise AssertionError("glue vector does not pair integrally")

    def coset_classes(self):
        """Map root coords -> j with root in j*alpha_i + L(i)."""
        if self._classes is not None:
            return self._classes
        ai = self.alpha_coords[self.i]
        classes = {}
        for r in self.e8_root_coords:
            for j in range(self.n):
                diff = [x - j * y for x, y in zip(r, ai)]
                c = vec_mat(diff, self.l_basis_inv)
                if all(Fraction(x).denominator == 1 for x in c):
                    classes[r] = j
                    break
            else:
                raise AssertionError("root falls outside every coset")
        self._classes = classes
        return classes

    def h_counts(self):
        classes = self.coset_classes()
        counts = [0] * self.n
        for j in classes.values():
            counts[j] += 1
        return counts[1:]

    def phi_count(self):
        classes = self.coset_classes()
        return sum(1 for j in classes.values() if j == 0)


def _dot(u, v):
    return sum(Fraction(x) * Fraction(y) for x, y in zip(u, v))


def _to_e8_coords(comp_coords, l_rows):
    out = [Fraction(0)] * 8
    for c, row in zip(comp_coords, l_rows):
        if c:
            for t in range(8):
                out[t] += c * row[t]
    return tuple(out)


@lru_cache(maxsize=None)
def extended_e8_node(i: int) -> ExtendedE8Node:
    return ExtendedE8Node(i)


POWER_MAP_LABELS = {
    (3, 2): "(4A)^2 = 2B",
    (5, 3): "(6A)^2 = 3A",
    (5, 2): "(6A)^3 = 2A",
    (6, 2): "(4B)^2 = 2A",
}


def check_intermediate_chains():
    """Verify the intermediate sublattices between L(i) and E8.

    For composite n_i the lattice L(i) + Z d alpha_i with d a proper
    divisor sits strictly between L(i) and E8; each is classified and the
    corresponding power-map label attached.
    """
    type_to_label = {}
    for i in range(9):
        node = extended_e8_node(i)
        type_to_label[tuple(node.component_types)] = node.label
    chains = []
    for i in range(9):
        node = extended_e8_node(i)
        n = node.n
        divisors = [d for d in range(2, n) if n % d == 0]
        for d in divisors:
            rows = [list(r) for r in node.l_rows_coords]
            rows.append([d * x for x in node.alpha_coords[node.i]])
            h = hermite_normal_form(rows)
            mid_coords = h
            mid = EvenLattice([_to_e8_coords_identity(r) for r in mid_coords],
                              gram=_gram_from_coords(mid_coords))
            mid_types = classify_root_sublattice(mid)
            idx_mid = _index_from_det(mid_coords)
            if idx_mid != d:
                raise ChainViolation(f"node {i}, divisor {d}: index {idx_mid}")
            for row in node.l_rows_coords:
                from .linalg import integer_coords_in_rowspan
                if integer_coords_in_rowspan(
                        [[Fraction(x) for x in rr] for rr in mid_coords],
                        [Fraction(x) for x in row]) is None:
                    raise ChainViolation(f"node {i}: L(i) not inside the middle lattice")
            label = type_to_label.get(tuple(mid_types))
            chains.append({
                "i": i,
                "node_label": node.label,
                "lower": node.component_types,
                "middle": mid_types,
                "middle_label": label,
                "indices": (n // d, d),
                "power_map": POWER_MAP_LABELS.get((i, d)),
            })
    return chains


def _gram_from_coords(coords_rows):
    data = e8_paper_data()
    g = data["lattice"].gram
    rows = [[Fraction(x) for x in r] for r in coords_rows]
    return [[sum(rows[a][s] * g[s][t] * rows[b][t]
                 for s in range(8) for t in range(8))
             for b in range(len(rows))] for a in range(len(rows))]


def _to_e8_coords_identity(row):
    data = e8_paper_data()
    basis = data["basis"]
    return tuple(sum(Fraction(row[t]) * basis[t][s] for t in range(8))
                 for s in range(8))


def _index_from_det(coords_rows) -> int:
    d = abs(det([[Fraction(x) for x in r] for r in coords_rows]))
    assert d.denominator == 1
    return d.numerator
