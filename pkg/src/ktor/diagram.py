"""Planar-diagram codes, crossing signs, the transvergent symmetry and
resolutions of a knot diagram.

PD convention (KnotTheory style): a crossing ``(a, b, c, d)`` lists its four
edge labels counterclockwise starting from the incoming under-strand, so the
under-strand runs a -> c.  Edges are numbered 1..2n along the orientation.

Smoothings: the 0-resolution joins edge ends (a, b) and (c, d); the
1-resolution joins (a, d) and (b, c).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Quad = tuple[int, int, int, int]


class PDError(ValueError):
    """Base class for invalid diagram input."""


class MalformedSyntax(PDError):
    pass


class EdgeCountError(PDError):
    pass


class NonKnotError(PDError):
    pass


class NotSymmetric(PDError):
    pass


class InternalAsymmetry(RuntimeError):
    """The involution did not carry circles to circles.  Indicates a bug."""


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[Quad, ...]
    n_circles_extra: int = 0

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def n_edges(self) -> int:
        return 2 * len(self.crossings)

    def succ(self, e: int) -> int:
        return e % self.n_edges + 1

    def over_runs_b_to_d(self, idx: int) -> bool:
        a, b, c, d = self.crossings[idx]
        if self.n == 1:
            # both edges are loops; the over pass is the transition the
            # under pass a -> c does not use
            return b == c
        return d == self.succ(b)

    def text(self) -> str:
        return json.dumps([list(q) for q in self.crossings], separators=(",", ":"))

    def mirror(self) -> "PDCode":
        """Same projection with every crossing switched."""
        return PDCode(tuple(switch_crossing(self, i) for i in range(self.n)),
                      self.n_circles_extra)


def switch_crossing(pd: PDCode, idx: int) -> Quad:
    """Quadruple of crossing ``idx`` after exchanging over and under."""
    a, b, c, d = pd.crossings[idx]
    if pd.over_runs_b_to_d(idx):
        return (b, c, d, a)
    return (d, a, b, c)


def _check_structure(crossings: Sequence[Sequence[int]]) -> PDCode:
    quads = []
    for q in crossings:
        if not isinstance(q, (list, tuple)) or len(q) != 4:
            raise MalformedSyntax(f"crossing {q!r} is not a quadruple")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in q):
            raise MalformedSyntax(f"crossing {q!r} has non-integer labels")
        quads.append(tuple(q))
    n = len(quads)
    if n == 0:
        return PDCode((), n_circles_extra=1)
    counts: dict[int, int] = {}
    for q in quads:
        for e in q:
            counts[e] = counts.get(e, 0) + 1
    bad = sorted(e for e, k in counts.items() if k != 2)
    if bad:
        raise EdgeCountError(f"edge labels {bad} do not appear exactly twice")
    if set(counts) != set(range(1, 2 * n + 1)):
        raise EdgeCountError(f"edge labels must be exactly 1..{2 * n}")

    pd = PDCode(tuple(quads))
    m = 2 * n
    consistent = all(
        c == pd.succ(a) and (d == pd.succ(b) or b == pd.succ(d)) for a, b, c, d in quads
    )
    if consistent:
        # every edge must enter one crossing and leave one
        heads = [q[0] for q in quads] + [q[1] if pd.over_runs_b_to_d(i) else q[3] for i, q in enumerate(quads)]
        consistent = len(set(heads)) == n * 2
    if not consistent:
        comps = UnionFind(range(1, m + 1))
        for a, b, c, d in quads:
            comps.union(a, c)
            comps.union(b, d)
        if len({comps.find(e) for e in range(1, m + 1)}) > 1:
            raise NonKnotError("multi-component links are not supported")
        raise MalformedSyntax("edge labels are not consecutive along the knot")
    return pd


def parse_pd(text: str) -> PDCode:
    """Parse ``[[a,b,c,d], ...]`` (JSON-compatible) into a validated PDCode."""
    try:
        data = json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise MalformedSyntax(f"cannot parse PD code: {exc}") from None
    if not isinstance(data, list):
        raise MalformedSyntax("PD code must be a list of quadruples")
    return _check_structure(data)


def pd_from_crossings(crossings: Iterable[Sequence[int]]) -> PDCode:
    return _check_structure(list(crossings))


# ---------------------------------------------------------------------------
# signs


@dataclass(frozen=True)
class CrossingSigns:
    signs: tuple[int, ...]

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)


def crossing_signs(pd: PDCode) -> CrossingSigns:
    """+1 when the over-strand runs d -> b, -1 when it runs b -> d."""
    return CrossingSigns(tuple(-1 if pd.over_runs_b_to_d(i) else 1 for i in range(pd.n)))


# ---------------------------------------------------------------------------
# symmetry


@dataclass(frozen=True)
class TransvergentSymmetry:
    edge_involution: tuple[int, ...]  # edge_involution[e - 1] = tau(e)
    crossing_involution: tuple[int, ...]  # 0-based crossing indices
    fixed_edges: tuple[int, ...]

    @cached_property
    def on_axis_crossings(self) -> frozenset[int]:
        return frozenset(i for i, j in enumerate(self.crossing_involution) if i == j)

    @cached_property
    def off_axis_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, j in enumerate(self.crossing_involution) if i < j)

    def edge(self, e: int) -> int:
        return self.edge_involution[e - 1]


def _image_quad(pd: PDCode, idx: int, tau) -> Quad:
    a, b, c, d = pd.crossings[idx]
    # reflection reverses the cyclic order, the over-strand becomes the
    # under-strand and the orientation of the knot is reversed
    if pd.over_runs_b_to_d(idx):
        return (tau(d), tau(c), tau(b), tau(a))
    return (tau(b), tau(a), tau(d), tau(c))


def derive_symmetry(pd: PDCode, edge_involution: Sequence[int] | None = None) -> TransvergentSymmetry:
    """Symmetry of a transvergent diagram whose edge 1 crosses the axis.

    By default tau acts on edges by k -> 2 - k (mod 2n).  An explicit edge
    involution may be supplied for diagrams numbered differently.
    """
    n, m = pd.n, pd.n_edges
    if n == 0:
        return TransvergentSymmetry((), (), ())
    if edge_involution is None:
        inv = tuple((1 - k) % m + 1 for k in range(1, m + 1))
    else:
        inv = tuple(edge_involution)
        if sorted(inv) != list(range(1, m + 1)):
            raise NotSymmetric("edge involution is not a permutation of the edges")
        if any(inv[inv[k] - 1] != k + 1 for k in range(m)):
            raise NotSymmetric("edge involution does not square to the identity")
    tau = lambda e: inv[e - 1]  # noqa: E731
    index = {q: i for i, q in enumerate(pd.crossings)}
    cross = []
    for i in range(n):
        img = _image_quad(pd, i, tau)
        j = index.get(img)
        if j is None:
            raise NotSymmetric(
                f"image {list(img)} of crossing {i + 1} {list(pd.crossings[i])} is not a crossing"
            )
        cross.append(j)
    if any(cross[cross[i]] != i for i in range(n)):
        raise NotSymmetric("induced crossing map is not an involution")
    fixed = tuple(e for e in range(1, m + 1) if inv[e - 1] == e)
    if len(fixed) != 2:
        raise NotSymmetric(f"expected two fixed edges, found {len(fixed)}")
    return TransvergentSymmetry(inv, tuple(cross), fixed)


# ---------------------------------------------------------------------------
# resolutions


class UnionFind:
    def __init__(self, items: Iterable[int] = ()):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if rx < ry:
                self.parent[ry] = rx
            else:
                self.parent[rx] = ry


def smoothing_pairs(quad: Quad, bit: int) -> tuple[tuple[int, int], tuple[int, int]]:
    a, b, c, d = quad
    if bit == 0:
        return (a, b), (c, d)
    return (a, d), (b, c)


@dataclass(frozen=True)
class CircleDiagram:
    """Full resolution at vertex ``v`` (bit i = resolution of crossing i)."""

    v: int
    circles: tuple[frozenset[int], ...]  # sorted by smallest edge
    edge_circle: dict[int, int] = field(repr=False, compare=False)

    @property
    def n_circles(self) -> int:
        return len(self.circles)

    def circle_of(self, e: int) -> int:
        return self.edge_circle[e]

    def local_circles(self, quad: Quad) -> tuple[int, int]:
        """Circles through the two smoothing arcs at a crossing."""
        return self.edge_circle[quad[0]], self.edge_circle[quad[2]]


def resolve(pd: PDCode, v: int) -> CircleDiagram:
    if pd.n == 0:
        circles = tuple(frozenset() for _ in range(pd.n_circles_extra))
        return CircleDiagram(v, circles, {})
    uf = UnionFind(range(1, pd.n_edges + 1))
    for i, quad in enumerate(pd.crossings):
        for x, y in smoothing_pairs(quad, (v >> i) & 1):
            uf.union(x, y)
    groups: dict[int, set[int]] = {}
    for e in range(1, pd.n_edges + 1):
        groups.setdefault(uf.find(e), set()).add(e)
    circles = tuple(sorted((frozenset(g) for g in groups.values()), key=min))
    edge_circle = {e: k for k, c in enumerate(circles) for e in c}
    return CircleDiagram(v, circles, edge_circle)


def tau_vertex(sym: TransvergentSymmetry, v: int) -> int:
    """v o tau: bit j of the result is bit tau(j) of v."""
    out = 0
    for j, tj in enumerate(sym.crossing_involution):
        if (v >> tj) & 1:
            out |= 1 << j
    return out


def tau_on_circles(
    pd: PDCode, sym: TransvergentSymmetry, v: int, cd: CircleDiagram | None = None,
    cd_image: CircleDiagram | None = None,
) -> tuple[int, tuple[int, ...]]:
    """Image vertex and the circle bijection resolve(v) -> resolve(v o tau)."""
    if pd.n == 0:
        return v, tuple(range(pd.n_circles_extra))
    w = tau_vertex(sym, v)
    cd = cd or resolve(pd, v)
    cd_image = cd_image or resolve(pd, w)
    perm = []
    for circle in cd.circles:
        image = frozenset(sym.edge(e) for e in circle)
        k = cd_image.edge_circle[next(iter(image))]
        if cd_image.circles[k] != image:
            raise InternalAsymmetry(f"circle {sorted(circle)} at vertex {v} has no image circle")
        perm.append(k)
    return w, tuple(perm)


# ---------------------------------------------------------------------------
# relabelling helpers used by diagram moves and the catalog search


def relabel(quads: Sequence[Sequence], order: Sequence) -> PDCode:
    """Relabel hashable edge names by their position in ``order`` (1-based).

    ``order`` lists every edge once in the direction of the orientation.
    """
    pos = {e: k + 1 for k, e in enumerate(order)}
    return pd_from_crossings([tuple(pos[e] for e in q) for q in quads])


def rotate_basepoint(pd: PDCode, shift: int) -> PDCode:
    """Renumber edges so that edge ``1 + shift`` becomes edge 1."""
    m = pd.n_edges
    f = lambda e: (e - 1 - shift) % m + 1  # noqa: E731
    return pd_from_crossings([tuple(f(e) for e in q) for q in pd.crossings])


def load_diagram(text: str) -> tuple[PDCode, list[int] | None]:
    """Parse either a bare PD code or ``{"pd": ..., "symmetry": {...}}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedSyntax(f"cannot parse input: {exc}") from None
    if isinstance(data, dict):
        if "pd" not in data:
            raise MalformedSyntax("input object has no 'pd' field")
        pd_data = data["pd"]
        pd = parse_pd(pd_data if isinstance(pd_data, str) else json.dumps(pd_data))
        sym = data.get("symmetry")
        inv = None
        if sym is not None:
            inv = sym.get("edge_involution")
            fixed = sym.get("fixed_edges")
            if inv is None:
                raise MalformedSyntax("symmetry override needs 'edge_involution'")
            if fixed is not None and sorted(fixed) != sorted(
                e for e in range(1, len(inv) + 1) if inv[e - 1] == e
            ):
                raise NotSymmetric("fixed_edges disagree with edge_involution")
        return pd, inv
    if isinstance(data, list):
        return _check_structure(data), None
    raise MalformedSyntax("input must be a PD list or an object")
