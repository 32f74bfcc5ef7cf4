"""The Bar-Natan complex over F2[H], the involution I_tau and its cone.

Generators are enhanced states: a vertex v of the cube plus a labelling of
its circles by ONE (bit 0) or X (bit 1).  Bit k of ``labels`` is the label
of circle k of ``resolve(pd, v)``.

Gradings: i = |v| - n_minus (+1 for the second cone copy) and
q = #ONE - #X + |v| + n_plus - 2 n_minus, with H in quantum degree -2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .diagram import (
    CircleDiagram,
    PDCode,
    TransvergentSymmetry,
    crossing_signs,
    resolve,
    tau_on_circles,
    tau_vertex,
)
from .sparse import SparseMatrix

DEFAULT_MAX_GENS = 1 << 24

FIRST, SECOND = 0, 1


class CapacityError(RuntimeError):
    pass


class ConsistencyError(RuntimeError):
    """A complex violated d^2 = 0 or homogeneity."""


class Generator(NamedTuple):
    v: int
    labels: int
    i: int
    q: int
    copy: int = FIRST


@dataclass
class GradedComplex:
    gens: list[Generator]
    # d[j] = {k: e}: the differential sends generator j to sum H^e * gen k
    d: list[dict[int, int]]
    n_plus: int = 0
    n_minus: int = 0
    pd: PDCode | None = None
    resolutions: dict[int, CircleDiagram] = field(default_factory=dict, repr=False)
    _index: dict[tuple[int, int, int], int] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.gens)

    @property
    def index(self) -> dict[tuple[int, int, int], int]:
        if self._index is None:
            self._index = {(g.v, g.labels, g.copy): k for k, g in enumerate(self.gens)}
        return self._index

    def differential(self) -> SparseMatrix:
        n = len(self.gens)
        return SparseMatrix(n, n, {j: {k: 1 << e for k, e in col.items()} for j, col in enumerate(self.d) if col})

    def degrees(self) -> list[int]:
        return sorted({g.i for g in self.gens})

    def check(self) -> None:
        """Assert homogeneity, degree +1 and d^2 = 0."""
        for j, col in enumerate(self.d):
            g = self.gens[j]
            for k, e in col.items():
                t = self.gens[k]
                if t.i != g.i + 1:
                    raise ConsistencyError(f"entry {j}->{k} changes i by {t.i - g.i}")
                if e < 0 or t.q - 2 * e != g.q:
                    raise ConsistencyError(f"entry {j}->{k} H^{e} is not homogeneous")
        dd = self.differential()
        if not (dd @ dd).is_zero():
            raise ConsistencyError("d^2 != 0")

    def dump(self) -> str:
        """One line per generator, then sparse triplets ``src tgt H^e``."""
        lines = [f"({g.v:0{max(self.pd.n if self.pd else 0, 1)}b}, {g.labels:b}, {g.i}, {g.q}, {g.copy})"
                 for g in self.gens]
        for j, col in enumerate(self.d):
            for k in sorted(col):
                lines.append(f"{j} {k} H^{col[k]}")
        return "\n".join(lines)


@dataclass
class ChainMap:
    source: GradedComplex
    target: GradedComplex
    matrix: SparseMatrix
    shift: int = 0

    def is_chain_map(self) -> bool:
        return self.target.differential() @ self.matrix == self.matrix @ self.source.differential()


# ---------------------------------------------------------------------------
# the Frobenius algebra V = F2[H]{ONE, X}, as label transforms


def merge_labels(la: int, lb: int) -> tuple[int, int] | None:
    """m(la, lb) as (label, exponent)."""
    if la and lb:
        return 1, 1
    return la | lb, 0


def split_labels(la: int) -> list[tuple[int, int, int]]:
    """Delta(la) as a list of (label1, label2, exponent)."""
    if la:
        return [(1, 1, 0)]
    return [(0, 1, 0), (1, 0, 0), (0, 0, 1)]


def vertex_order(n: int) -> list[int]:
    """Vertices in lexicographic order of (bit of crossing 0, bit of crossing 1, ...)."""
    return sorted(range(1 << n), key=lambda v: tuple((v >> i) & 1 for i in range(n)))


def edge_map(pd: PDCode, cd_v: CircleDiagram, cd_w: CircleDiagram, c: int):
    """Label transform for the cube edge that changes crossing c.

    Returns ``(kind, fn)`` where fn maps a label mask on cd_v to a list of
    (label mask on cd_w, exponent).  Works for saddles in either direction.
    """
    quad = pd.crossings[c]
    a_v, c_v = cd_v.local_circles(quad)
    a_w, c_w = cd_w.local_circles(quad)
    others = []
    for k, circle in enumerate(cd_v.circles):
        if k in (a_v, c_v):
            continue
        others.append((k, cd_w.edge_circle[next(iter(circle))]))

    def carry(labels: int) -> int:
        out = 0
        for k, t in others:
            if (labels >> k) & 1:
                out |= 1 << t
        return out

    if a_v != c_v:
        def fn(labels: int):
            lab, e = merge_labels((labels >> a_v) & 1, (labels >> c_v) & 1)
            return [(carry(labels) | (lab << a_w), e)]
        return "m", fn

    def fn(labels: int):
        base = carry(labels)
        return [(base | (l1 << a_w) | (l2 << c_w), e) for l1, l2, e in split_labels((labels >> a_v) & 1)]
    return "delta", fn


def build_cube(pd: PDCode, max_gens: int = DEFAULT_MAX_GENS) -> GradedComplex:
    n = pd.n
    signs = crossing_signs(pd)
    n_plus, n_minus = signs.n_plus, signs.n_minus
    resolutions = {v: resolve(pd, v) for v in range(1 << n)}
    total = sum(1 << cd.n_circles for cd in resolutions.values())
    if total > max_gens:
        raise CapacityError(f"{total} generators exceed the limit {max_gens}")

    gens: list[Generator] = []
    for v in vertex_order(n):
        nc = resolutions[v].n_circles
        h = bin(v).count("1")
        for labels in range(1 << nc):
            x = bin(labels).count("1")
            gens.append(Generator(v, labels, h - n_minus, nc - 2 * x + h + n_plus - 2 * n_minus))
    cx = GradedComplex(gens, [dict() for _ in gens], n_plus, n_minus, pd, resolutions)
    index = cx.index
    by_vertex: dict[int, list[int]] = {}
    for j, g in enumerate(gens):
        by_vertex.setdefault(g.v, []).append(j)
    for v, members in by_vertex.items():
        for c in range(n):
            if (v >> c) & 1:
                continue
            w = v | (1 << c)
            _, fn = edge_map(pd, resolutions[v], resolutions[w], c)
            for j in members:
                col = cx.d[j]
                for lab, e in fn(gens[j].labels):
                    col[index[(w, lab, FIRST)]] = e
    return cx


def build_itau(pd: PDCode, sym: TransvergentSymmetry, cube: GradedComplex) -> ChainMap:
    """Cylinder involution: (v, labels) -> (v o tau, labels moved along tau)."""
    n = len(cube.gens)
    m = SparseMatrix(n, n)
    index = cube.index
    perms: dict[int, tuple[int, tuple[int, ...]]] = {}
    for j, g in enumerate(cube.gens):
        if g.v not in perms:
            perms[g.v] = tau_on_circles(
                pd, sym, g.v, cube.resolutions.get(g.v),
                cube.resolutions.get(tau_vertex(sym, g.v)) if pd.n else None,
            )
        w, perm = perms[g.v]
        lab = 0
        for k, t in enumerate(perm):
            if (g.labels >> k) & 1:
                lab |= 1 << t
        m.cols[j] = {index[(w, lab, g.copy)]: 1}
    return ChainMap(cube, cube, m)


def build_cone(f: ChainMap) -> GradedComplex:
    """Cone(C --1+F--> C) with differential [[d, 0], [1 + F, d]]."""
    c = f.source
    if f.target is not c:
        raise ValueError("cone needs an endomorphism")
    sq = f.matrix @ f.matrix
    if sq != SparseMatrix.identity(len(c)):
        raise ValueError("F is not an involution")
    n = len(c.gens)
    gens = [g._replace(copy=FIRST) for g in c.gens] + [
        g._replace(i=g.i + 1, copy=SECOND) for g in c.gens
    ]
    d: list[dict[int, int]] = []
    for j in range(n):
        col = dict(c.d[j])
        off = {j + n: 0}
        for k, bits in f.matrix.cols.get(j, {}).items():
            if bits != 1:
                raise ConsistencyError("cone map must have unit monomial entries")
            if k + n in off:
                del off[k + n]
            else:
                off[k + n] = 0
        col.update(off)
        d.append(col)
    for j in range(n):
        d.append({k + n: e for k, e in c.d[j].items()})
    return GradedComplex(gens, d, c.n_plus, c.n_minus, c.pd, c.resolutions)


# ---------------------------------------------------------------------------
# algebra self-test on V


def _algebra():
    """Basis indices: V = {0: ONE, 1: X}; V(x)V index 2*a + b."""
    def mat(nrows, ncols, entries):
        return SparseMatrix.from_entries(nrows, ncols, entries)

    unit = mat(2, 1, [(0, 0, 1)])  # iota
    counit = mat(1, 2, [(0, 1, 1)])  # epsilon
    dot = mat(2, 2, [(1, 0, 1), (1, 1, 0b10)])  # X: ONE->X, X->H X
    m_entries = []
    for a in range(2):
        for b in range(2):
            lab, e = merge_labels(a, b)
            m_entries.append((lab, 2 * a + b, 1 << e))
    mult = mat(2, 4, m_entries)
    d_entries = []
    for a in range(2):
        for l1, l2, e in split_labels(a):
            d_entries.append((2 * l1 + l2, a, 1 << e))
    comult = mat(4, 2, d_entries)
    return unit, counit, dot, mult, comult


def kron(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    from .ring import clmul
    out = SparseMatrix(a.nrows * b.nrows, a.ncols * b.ncols)
    for i, j, x in a.entries():
        for k, l, y in b.entries():
            out.add_entry(i * b.nrows + k, j * b.ncols + l, clmul(x, y))
    return out


def algebra_identities_selftest() -> dict[str, bool]:
    """Check the Frobenius algebra and the local relations exactly."""
    unit, counit, dot, mult, comult = _algebra()
    I1, I2 = SparseMatrix.identity(1), SparseMatrix.identity(2)
    H1, H2 = SparseMatrix.identity(1, 0b10), SparseMatrix.identity(2, 0b10)
    swap = SparseMatrix.from_entries(4, 4, [(2 * b + a, 2 * a + b, 1) for a in range(2) for b in range(2)])
    r = {}
    r["S: eps iota = 0"] = (counit @ unit).is_zero()
    r["S_dot: eps X iota = 1"] = counit @ dot @ unit == I1
    r["NC: id = X iota eps + iota eps X + H iota eps"] = (
        dot @ unit @ counit + unit @ counit @ dot + (unit @ counit).scale(0b10) == I2
    )
    r["genus: m Delta = H id"] = mult @ comult == H2
    r["dot: X X = H X"] = dot @ dot == dot.scale(0b10)
    r["dot is m(- , X)"] = all(
        (dot @ SparseMatrix.from_entries(2, 1, [(a, 0, 1)]))
        == mult @ SparseMatrix.from_entries(4, 1, [(2 * a + 1, 0, 1)])
        for a in range(2)
    )
    frob_l = kron(mult, I2) @ kron(I2, comult)
    frob_r = kron(I2, mult) @ kron(comult, I2)
    r["Frobenius: (m x id)(id x Delta) = Delta m"] = frob_l == comult @ mult
    r["Frobenius: Delta m = (id x m)(Delta x id)"] = comult @ mult == frob_r
    r["commutative: m swap = m"] = mult @ swap == mult
    r["cocommutative: swap Delta = Delta"] = swap @ comult == comult
    r["associative"] = mult @ kron(mult, I2) == mult @ kron(I2, mult)
    r["coassociative"] = kron(comult, I2) @ comult == kron(I2, comult) @ comult
    r["unit: m (iota x id) = id"] = mult @ kron(unit, I2) == I2
    r["counit: (eps x id) Delta = id"] = kron(counit, I2) @ comult == I2
    r["two dots on a sphere = H"] = counit @ dot @ dot @ unit == H1
    return r
