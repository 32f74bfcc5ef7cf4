"""Equivariant crossing changes: chain maps, homotopies and their checks.

All maps are explicit sparse matrices between state spaces.  A state space
is a family of circle diagrams indexed by cube vertices, each circle being
a set of edge labels of the *original* diagram K.  Circles in two spaces
are matched by these edge sets (optionally ignoring a set of local edges),
which is how isotopies, births/deaths and abstract saddles are realised.

Block notation: K_ab is the part of the cube of K in which the two site
crossings (l, r) are resolved a and b.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .cube import GradedComplex, build_cone, build_cube, build_itau, merge_labels, split_labels
from .diagram import (
    PDCode,
    TransvergentSymmetry,
    derive_symmetry,
    pd_from_crossings,
    switch_crossing,
)
from .homology import homology, max_torsion_order
from .sparse import SparseMatrix, block


class SiteInvalid(ValueError):
    pass


class IdentityFailed(AssertionError):
    def __init__(self, name: str, witness):
        self.name = name
        self.witness = witness
        super().__init__(f"{name} fails, first differing entry (row, col, lhs, rhs) = {witness}")


class IsotopyMatchFailed(RuntimeError):
    pass


H_BITS = 0b10


@dataclass(frozen=True)
class ChangeSite:
    kind: str  # "A", "B" or "C"
    crossings: tuple[int, ...]  # 0-based; (c, tau c) for A, (c,) for B, (c_l, c_r) for C

    def describe(self) -> str:
        return f"{self.kind}{[c + 1 for c in self.crossings]}"


@dataclass
class ChangedDiagram:
    pd: PDCode
    sym: TransvergentSymmetry
    crossing_map: tuple[int | None, ...]  # K crossing -> K' crossing
    edge_preimage: dict[int, frozenset[int]]  # K' edge -> K edges
    local_edges: frozenset[int] = frozenset()


# ---------------------------------------------------------------------------
# the changed diagram


def validate_site(pd: PDCode, sym: TransvergentSymmetry, site: ChangeSite) -> None:
    cs = site.crossings
    if any(not 0 <= c < pd.n for c in cs):
        raise SiteInvalid(f"site {site.describe()} names a crossing outside 1..{pd.n}")
    tau = sym.crossing_involution
    if site.kind == "A":
        if len(cs) != 2 or tau[cs[0]] != cs[1] or cs[0] == cs[1]:
            raise SiteInvalid("a Type A site is an off-axis pair {c, tau c}")
    elif site.kind == "B":
        if len(cs) != 1 or tau[cs[0]] != cs[0]:
            raise SiteInvalid("a Type B site is a single on-axis crossing")
    elif site.kind == "C":
        if len(cs) != 2 or tau[cs[0]] != cs[1] or cs[0] == cs[1]:
            raise SiteInvalid("a Type C site is a pair of crossings swapped by tau")
        _clasp_edges(pd, sym, cs[0], cs[1])
    else:
        raise SiteInvalid(f"unknown site kind {site.kind!r}")


def _clasp_edges(pd: PDCode, sym: TransvergentSymmetry, l: int, r: int) -> tuple[int, int]:
    ql, qr = pd.crossings[l], pd.crossings[r]
    shared = set(ql) & set(qr)
    if shared != set(sym.fixed_edges):
        raise SiteInvalid("the clasp crossings must share exactly the two edges on the axis")
    m, t = sorted(shared)
    for q in (ql, qr):
        one = {frozenset(p) for p in _pairs(q, 1)}
        if frozenset((m, t)) not in one:
            raise SiteInvalid("the 1-resolution of a clasp crossing must close the bigon")
    return m, t


def _pairs(q, bit):
    a, b, c, d = q
    return ((a, b), (c, d)) if bit == 0 else ((a, d), (b, c))


def _retrace(pd: PDCode, removed: tuple[int, ...], start_edge: int):
    """K' from K: drop ``removed`` crossings, joining their 0-resolution arcs."""
    ends: dict[int, list[tuple[int, int]]] = {}
    for x, q in enumerate(pd.crossings):
        for s, e in enumerate(q):
            ends.setdefault(e, []).append((x, s))
    # a one-crossing loop edge meets the same crossing twice; that is fine
    gone = set(removed)

    def head(e):
        """The slot where edge e enters a crossing."""
        for x, s in ends[e]:
            if s == 0 or s == (1 if pd.over_runs_b_to_d(x) else 3):
                return x, s
        raise SiteInvalid(f"edge {e} has no head")

    # sequence of (edge, passage) events
    cur_edge = start_edge
    x, s = head(cur_edge)
    segments: list[list[int]] = [[cur_edge]]
    passages: list[tuple[int, int]] = []  # (crossing, entering slot); separates segments
    steps = 0
    while True:
        steps += 1
        if steps > 8 * pd.n_edges + 8:
            raise SiteInvalid("tracing the changed diagram did not close up")
        if x in gone:
            out = s ^ 1  # 0-resolution: slots (0,1) and (2,3)
        else:
            out = (s + 2) % 4
            passages.append((x, s))
        nxt = pd.crossings[x][out]
        # the other end of nxt
        others = [p for p in ends[nxt] if p != (x, out)]
        if not others:  # loop edge at the same slot pair
            others = [(x, out)]
        nx, ns = others[0]
        if x not in gone:
            segments.append([])
        if nxt == start_edge and (nx, ns) == head(start_edge):
            break
        segments[-1].append(nxt)
        x, s = nx, ns
    # the last segment wraps onto the first
    if len(segments) > 1:
        segments[0] = segments.pop() + segments[0]
    covered = [e for seg in segments for e in seg]
    if sorted(covered) != list(range(1, pd.n_edges + 1)):
        raise SiteInvalid("the resolved clasp does not leave a knot")
    return segments, passages


def _changed_c(pd: PDCode, sym: TransvergentSymmetry, l: int, r: int) -> ChangedDiagram:
    m, t = _clasp_edges(pd, sym, l, r)
    segments, passages = _retrace(pd, (l, r), m)
    kept = [x for x in range(pd.n) if x not in (l, r)]
    cmap = [None] * pd.n
    for k, x in enumerate(kept):
        cmap[x] = k
    nseg = len(segments)
    if not kept:
        # a crossingless diagram: one circle through every edge
        kpd = PDCode((), n_circles_extra=1)
        preimage = {0: frozenset(range(1, pd.n_edges + 1))}
        return ChangedDiagram(kpd, derive_symmetry(kpd), tuple(cmap), preimage, frozenset((m, t)))
    slots: dict[int, list[int]] = {x: [0, 0, 0, 0] for x in kept}
    entry: dict[int, int] = {}
    # passage j separates segment j (incoming) and segment j+1 (outgoing)
    for j, (x, s) in enumerate(passages):
        slots[x][s] = j % nseg + 1
        slots[x][(s + 2) % 4] = (j + 1) % nseg + 1
        if s in (0, 2):
            entry[x] = s
    quads = []
    for x in kept:
        sl = slots[x]
        quads.append(tuple(sl) if entry[x] == 0 else (sl[2], sl[3], sl[0], sl[1]))
    kpd = pd_from_crossings(quads)
    preimage = {k + 1: frozenset(seg) for k, seg in enumerate(segments)}
    ksym = derive_symmetry(kpd)
    return ChangedDiagram(kpd, ksym, tuple(cmap), preimage, frozenset((m, t)))


def apply_change(pd: PDCode, sym: TransvergentSymmetry, site: ChangeSite) -> ChangedDiagram:
    validate_site(pd, sym, site)
    if site.kind in ("A", "B"):
        quads = list(pd.crossings)
        for c in site.crossings:
            quads[c] = switch_crossing(pd, c)
        kpd = PDCode(tuple(quads))
        try:
            ksym = derive_symmetry(kpd, sym.edge_involution)
        except Exception as exc:  # noqa: BLE001
            raise SiteInvalid(f"changed diagram is not symmetric: {exc}") from None
        return ChangedDiagram(kpd, ksym, tuple(range(pd.n)),
                              {e: frozenset((e,)) for e in range(1, pd.n_edges + 1)})
    return _changed_c(pd, sym, *site.crossings)


# ---------------------------------------------------------------------------
# state spaces and local operators


class Space:
    """Generators (u, labels) over circle diagrams; circles are K-edge sets."""

    def __init__(self, vertices: Iterable[tuple[object, tuple[frozenset[int], ...]]]):
        self.circles: dict[object, tuple[frozenset[int], ...]] = {}
        self.offset: dict[object, int] = {}
        n = 0
        for u, circles in vertices:
            self.circles[u] = circles
            self.offset[u] = n
            n += 1 << len(circles)
        self.size = n

    @classmethod
    def from_complex(cls, cx: GradedComplex, preimage: dict[int, frozenset[int]] | None = None):
        seen = []
        for g in cx.gens:
            if not seen or seen[-1] != g.v:
                seen.append(g.v)
        out = []
        for v in seen:
            cd = cx.resolutions[v]
            if preimage is None:
                circles = cd.circles
            elif cx.pd.n == 0:
                circles = (preimage[0],)
            else:
                circles = tuple(frozenset().union(*(preimage[e] for e in c)) for c in cd.circles)
            out.append((v, circles))
        sp = cls(out)
        # the cube orders generators by vertex, then labels
        for j, g in enumerate(cx.gens):
            if sp.offset[g.v] + g.labels != j:
                raise RuntimeError("complex is not ordered by (vertex, labels)")
        return sp


LabelFn = Callable[[int], list[tuple[int, int]]]


def _keys(circles, strip):
    return [frozenset(c - strip) for c in circles]


def _match(src, dst, strip):
    ks, kd = _keys(src, strip), _keys(dst, strip)
    where: dict[frozenset, list[int]] = {}
    for j, k in enumerate(kd):
        where.setdefault(k, []).append(j)
    pairs, left_src = [], []
    used = set()
    for i, k in enumerate(ks):
        cand = [j for j in where.get(k, ()) if j not in used]
        if k and len(cand) == 1:
            pairs.append((i, cand[0]))
            used.add(cand[0])
        elif k and len(cand) > 1:
            raise IsotopyMatchFailed(f"ambiguous circle match for edges {sorted(k)}")
        else:
            left_src.append(i)
    left_dst = [j for j in range(len(dst)) if j not in used]
    return pairs, left_src, left_dst


def _mover(pairs):
    def move(labels):
        out = 0
        for i, j in pairs:
            if (labels >> i) & 1:
                out |= 1 << j
        return out
    return move


def local_fn(kind: str, src, dst, strip=frozenset(), edges=()) -> LabelFn:
    """Label transform for one vertex pair.  ``kind``:

    carry  - isotopy, every circle matched
    saddle - one merge or one split, the rest matched
    birth  - dst has one extra circle with no edges outside ``strip``
    death  - the reverse
    dot    - src == dst, sum of X on the circles through ``edges``
    """
    if kind == "dot":
        where = []
        for e in edges:
            where.append(next(k for k, c in enumerate(src) if e in c))

        def fn(labels):
            acc: dict[int, int] = {}
            for k in where:
                if (labels >> k) & 1:
                    acc[labels] = acc.get(labels, 0) ^ H_BITS
                else:
                    lab = labels | (1 << k)
                    acc[lab] = acc.get(lab, 0) ^ 1
            return [(lab, b) for lab, b in acc.items() if b]
        return fn

    pairs, ls, ld = _match(src, dst, strip)
    move = _mover(pairs)
    if kind == "carry":
        if ls or ld:
            raise IsotopyMatchFailed(f"circles {ls} / {ld} have no partner")
        return lambda labels: [(move(labels), 1)]
    if kind == "birth":
        if ls or len(ld) != 1:
            raise IsotopyMatchFailed("birth needs exactly one new circle")
        return lambda labels: [(move(labels), 1)]
    if kind == "death":
        if ld or len(ls) != 1:
            raise IsotopyMatchFailed("death needs exactly one removed circle")
        k = ls[0]
        return lambda labels: [(move(labels), 1)] if (labels >> k) & 1 else []
    if kind == "saddle":
        if len(ls) == 2 and len(ld) == 1:
            a, c = ls
            (w,) = ld

            def fn(labels):
                lab, e = merge_labels((labels >> a) & 1, (labels >> c) & 1)
                return [(move(labels) | (lab << w), 1 << e)]
            return fn
        if len(ls) == 1 and len(ld) == 2:
            (a,) = ls
            w1, w2 = ld

            def fn(labels):
                base = move(labels)
                return [(base | (x << w1) | (y << w2), 1 << e) for x, y, e in split_labels((labels >> a) & 1)]
            return fn
        raise IsotopyMatchFailed(f"not a saddle: {len(ls)} -> {len(ld)} unmatched circles")
    raise ValueError(kind)


def operator(src: Space, dst: Space, pairs: Iterable[tuple[object, object]], kind: str, **kw) -> SparseMatrix:
    """Matrix dst <- src of a per-vertex local operator on the given vertex pairs."""
    m = SparseMatrix(dst.size, src.size)
    for u, w in pairs:
        fn = local_fn(kind, src.circles[u], dst.circles[w], **kw)
        so, do = src.offset[u], dst.offset[w]
        for labels in range(1 << len(src.circles[u])):
            col = {}
            for lab, bits in fn(labels):
                if bits:
                    col[do + lab] = col.get(do + lab, 0) ^ bits
            col = {k: b for k, b in col.items() if b}
            if col:
                m.cols[so + labels] = col
    return m


def local_dot(space: Space, edges: tuple[int, ...], vertices=None) -> SparseMatrix:
    """D: X on the circle through each listed edge, summed."""
    vs = space.circles if vertices is None else vertices
    return operator(space, space, ((u, u) for u in vs), "dot", edges=edges)


def local_saddle(space: Space, crossing: int, from_bit: int, target: Space | None = None) -> SparseMatrix:
    """Saddle at one cube crossing, from vertices with that bit = from_bit."""
    target = target or space
    bit = 1 << crossing
    pairs = [(v, v ^ bit) for v in space.circles if ((v >> crossing) & 1) == from_bit]
    return operator(space, target, pairs, "saddle")


def birth_death(with_circle: Space, without: Space, pairs, strip) -> tuple[SparseMatrix, SparseMatrix]:
    """(iota, epsilon) for a circle that exists only in ``with_circle``.

    ``pairs`` lists (u_without, u_with) vertex pairs.
    """
    pairs = list(pairs)
    iota = operator(without, with_circle, pairs, "birth", strip=strip)
    eps = operator(with_circle, without, [(w, u) for u, w in pairs], "death", strip=strip)
    return iota, eps


def _projection(space: Space, keep: Callable[[object], bool]) -> SparseMatrix:
    m = SparseMatrix(space.size, space.size)
    for u, circles in space.circles.items():
        if keep(u):
            o = space.offset[u]
            for j in range(o, o + (1 << len(circles))):
                m.cols[j] = {j: 1}
    return m


# ---------------------------------------------------------------------------
# packages


@dataclass
class Frame:
    pd: PDCode
    sym: TransvergentSymmetry
    cx: GradedComplex
    space: Space
    d: SparseMatrix
    itau: SparseMatrix


def frame(pd: PDCode, sym: TransvergentSymmetry, preimage=None, max_gens: int | None = None) -> Frame:
    cx = build_cube(pd) if max_gens is None else build_cube(pd, max_gens)
    sp = Space.from_complex(cx, preimage)
    return Frame(pd, sym, cx, sp, cx.differential(), build_itau(pd, sym, cx).matrix)


@dataclass
class HomotopyPackage:
    site: ChangeSite
    K: Frame
    Kp: Frame
    f: SparseMatrix
    g: SparseMatrix
    h: SparseMatrix
    hp: SparseMatrix
    k: SparseMatrix
    kp: SparseMatrix
    t: int
    auxiliary: dict[str, tuple[SparseMatrix, SparseMatrix]] = field(default_factory=dict)


def _type_a_homotopies(fr: Frame, l: int, r: int):
    sp = fr.space
    ql, qr = fr.pd.crossings[l], fr.pd.crossings[r]
    D_l = local_dot(sp, (ql[0], ql[2]))
    Sl, Sr = local_saddle(sp, l, 1), local_saddle(sp, r, 1)
    h = Sl.scale(H_BITS) + Sr @ D_l
    k = Sl @ Sr @ fr.itau
    return h, k


def build_package(pd: PDCode, sym: TransvergentSymmetry, site: ChangeSite,
                  max_gens: int | None = None) -> HomotopyPackage:
    changed = apply_change(pd, sym, site)
    if site.kind in ("A", "B"):
        K = frame(pd, sym, max_gens=max_gens)
        Kp = frame(changed.pd, changed.sym, max_gens=max_gens)
        mask = sum(1 << c for c in site.crossings)
        P = operator(K.space, Kp.space, ((v, v ^ mask) for v in K.space.circles), "carry")
        Pinv = operator(Kp.space, K.space, ((v, v ^ mask) for v in Kp.space.circles), "carry")
        dots = {c: local_dot(K.space, (pd.crossings[c][0], pd.crossings[c][2])) for c in site.crossings}
        n = K.space.size
        fK = SparseMatrix(n, n)
        gK = SparseMatrix(n, n)
        for pattern in range(1 << len(site.crossings)):
            bits = {c: (pattern >> k) & 1 for k, c in enumerate(site.crossings)}
            pf = pg = _projection(K.space, lambda u, bits=bits: all(((u >> c) & 1) == b for c, b in bits.items()))
            for c, b in bits.items():
                if b:
                    pf = dots[c] @ pf
                else:
                    pg = dots[c] @ pg
            fK, gK = fK + pf, gK + pg
        f = P @ fK
        g = gK @ Pinv
        if site.kind == "B":
            (c,) = site.crossings
            h = local_saddle(K.space, c, 1)
            hp = local_saddle(Kp.space, c, 1)
            k = SparseMatrix(n, n)
            kp = SparseMatrix(Kp.space.size, Kp.space.size)
            t = 1
        else:
            l, r = site.crossings
            h, k = _type_a_homotopies(K, l, r)
            hp, kp = _type_a_homotopies(Kp, l, r)
            t = 2
        return HomotopyPackage(site, K, Kp, f, g, h, hp, k, kp, t)
    return _build_type_c(pd, sym, site, changed, max_gens)


def _build_type_c(pd, sym, site, changed: ChangedDiagram, max_gens) -> HomotopyPackage:
    l, r = site.crossings
    strip = changed.local_edges
    K = frame(pd, sym, max_gens=max_gens)
    Kp = frame(changed.pd, changed.sym, changed.edge_preimage, max_gens=max_gens)
    kept = [x for x in range(pd.n) if x not in (l, r)]
    lb, rb = 1 << l, 1 << r

    def compress(w):
        return sum(1 << changed.crossing_map[x] for x in kept if (w >> x) & 1)

    outer = [w for w in K.space.circles if not w & (lb | rb)]
    bubble = frozenset(strip)
    k11p = []
    for w in outer:
        circles = tuple(c for c in K.space.circles[w | lb | rb] if c != bubble)
        if len(circles) != len(K.space.circles[w | lb | rb]) - 1:
            raise SiteInvalid("the 11-resolution of the clasp has no bubble")
        k11p.append((w, circles))
    B = Space(k11p)  # K11' : K11 without the bubble
    sk, skp = K.space, Kp.space
    np_ = skp.size

    J0 = operator(sk, skp, ((w, compress(w)) for w in outer), "carry")
    J0inv = operator(skp, sk, ((compress(w), w) for w in outer), "carry")
    Jr = operator(sk, B, ((w | lb, w) for w in outer), "carry", strip=strip)
    Jrinv = operator(B, sk, ((w, w | lb) for w in outer), "carry", strip=strip)
    Jl = operator(sk, B, ((w | rb, w) for w in outer), "carry", strip=strip)
    iota, eps = birth_death(sk, B, ((w, w | lb | rb) for w in outer), strip)
    S_down = operator(B, sk, ((w, w) for w in outer), "saddle", strip=strip)  # K11' -> K00
    S_up = operator(sk, B, ((w, w) for w in outer), "saddle", strip=strip)  # K00 -> K11'
    ql = pd.crossings[l]
    D_l = local_dot(sk, (ql[0], ql[2]))
    m_edge, t_edge = sorted(strip)
    D_p = local_dot(skp, (m_edge, t_edge))
    Sl = local_saddle(sk, l, 1)

    alpha = J0 @ S_down @ eps @ D_l
    f = J0 + alpha
    g = J0inv @ D_p + iota @ S_up @ J0inv
    h = Sl + Jrinv @ eps @ D_l + iota @ Jl
    k = S_down @ eps @ K.itau + iota @ eps @ K.itau
    hp = SparseMatrix(np_, np_)
    kp = SparseMatrix(np_, np_)

    S_r_fwd = local_saddle(sk, r, 0)
    S_r_back = local_saddle(sk, r, 1)
    S_l_fwd = local_saddle(sk, l, 0)
    S_pp = S_up @ J0inv  # K' -> K11'
    aux = {
        "eps iota = 0": (eps @ iota, SparseMatrix(B.size, B.size)),
        "eps X iota = id": (eps @ local_dot(sk, (m_edge,)) @ iota, SparseMatrix.identity(B.size)),
        "iota S^2 eps + S_r J_r^-1 eps + id = iota J_l S_l": (
            iota @ S_up @ S_down @ eps + S_r_fwd @ Jrinv @ eps + _projection(sk, lambda u: u & lb and u & rb),
            iota @ Jl @ Sl,
        ),
        "S_r + J_r^-1 eps D_l = S_l S eps": (
            _restrict_cols(S_r_back, sk, lambda u: u & lb and u & rb) + Jrinv @ eps @ D_l,
            S_l_fwd @ S_down @ eps,
        ),
        "alpha iota S = S^2": (alpha @ iota @ S_pp, J0 @ S_down @ S_pp),
        "fg = H id": (f @ g, SparseMatrix.identity(np_, H_BITS)),
    }
    return HomotopyPackage(site, K, Kp, f, g, h, hp, k, kp, 1, aux)


def _restrict_cols(m: SparseMatrix, space: Space, keep) -> SparseMatrix:
    return m @ _projection(space, keep)


# ---------------------------------------------------------------------------
# verification


IDENTITY_NAMES = (
    "f chain map", "g chain map", "I f = f I", "I g = g I",
    "gf + H^t = dh + hd", "fg + H^t = dh' + h'd",
    "I h + h I = dk + kd", "I h' + h' I = dk' + k'd",
    "cone f chain map", "cone g chain map",
    "cone gf + H^t = d h~ + h~ d", "cone fg + H^t = d h~' + h~' d",
)


def _cone_d(fr: Frame) -> SparseMatrix:
    n = fr.space.size
    one_plus = SparseMatrix.identity(n) + fr.itau
    return block([[fr.d, None], [one_plus, fr.d]], [n, n], [n, n])


def _cone_hom(h: SparseMatrix, k: SparseMatrix, n_src: int, n_dst: int) -> SparseMatrix:
    return block([[h, None], [k, h]], [n_dst, n_dst], [n_src, n_src])


def identity_checks(p: HomotopyPackage) -> list[tuple[str, SparseMatrix, SparseMatrix]]:
    d, dp = p.K.d, p.Kp.d
    I, Ip = p.K.itau, p.Kp.itau
    n, np_ = p.K.space.size, p.Kp.space.size
    Ht, Htp = SparseMatrix.identity(n, 1 << p.t), SparseMatrix.identity(np_, 1 << p.t)
    cf = block([[p.f, None], [None, p.f]], [np_, np_], [n, n])
    cg = block([[p.g, None], [None, p.g]], [n, n], [np_, np_])
    cd, cdp = _cone_d(p.K), _cone_d(p.Kp)
    ch = _cone_hom(p.h, p.k, n, n)
    chp = _cone_hom(p.hp, p.kp, np_, np_)
    return [
        ("f chain map", dp @ p.f, p.f @ d),
        ("g chain map", d @ p.g, p.g @ dp),
        ("I f = f I", Ip @ p.f, p.f @ I),
        ("I g = g I", I @ p.g, p.g @ Ip),
        ("gf + H^t = dh + hd", p.g @ p.f + Ht, d @ p.h + p.h @ d),
        ("fg + H^t = dh' + h'd", p.f @ p.g + Htp, dp @ p.hp + p.hp @ dp),
        ("I h + h I = dk + kd", I @ p.h + p.h @ I, d @ p.k + p.k @ d),
        ("I h' + h' I = dk' + k'd", Ip @ p.hp + p.hp @ Ip, dp @ p.kp + p.kp @ dp),
        ("cone f chain map", cdp @ cf, cf @ cd),
        ("cone g chain map", cd @ cg, cg @ cdp),
        ("cone gf + H^t = d h~ + h~ d", cg @ cf + block([[Ht, None], [None, Ht]], [n, n], [n, n]),
         cd @ ch + ch @ cd),
        ("cone fg + H^t = d h~' + h~' d", cf @ cg + block([[Htp, None], [None, Htp]], [np_, np_], [np_, np_]),
         cdp @ chp + chp @ cdp),
    ]


@dataclass
class VerificationReport:
    kind: str
    t: int
    identities: list[tuple[str, bool]]
    auxiliary: list[tuple[str, bool]]
    eqord_K: int
    eqord_Kprime: int
    ord_K: int
    ord_Kprime: int
    witnesses: dict[str, tuple] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (all(ok for _, ok in self.identities) and all(ok for _, ok in self.auxiliary)
                and abs(self.eqord_K - self.eqord_Kprime) <= self.t
                and abs(self.ord_K - self.ord_Kprime) <= self.t)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "t": self.t,
            "identities": [{"name": n, "ok": ok} for n, ok in self.identities + self.auxiliary],
            "eqord_K": self.eqord_K,
            "eqord_Kprime": self.eqord_Kprime,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def invariants_of(fr: Frame) -> tuple[int, int]:
    """(ord, eqord) of a frame's complex."""
    plain, _ = homology(fr.cx)
    cone = build_cone(build_itau(fr.pd, fr.sym, fr.cx))
    inv, _ = homology(cone)
    return max_torsion_order(plain), max_torsion_order(inv)


def verify_package(p: HomotopyPackage, strict: bool = False) -> VerificationReport:
    ids, wit = [], {}
    for name, lhs, rhs in identity_checks(p):
        ok = lhs == rhs
        ids.append((name, ok))
        if not ok:
            wit[name] = lhs.first_difference(rhs)
            if strict:
                raise IdentityFailed(name, wit[name])
    aux = []
    for name, (lhs, rhs) in p.auxiliary.items():
        ok = lhs == rhs
        aux.append((name, ok))
        if not ok:
            wit[name] = lhs.first_difference(rhs)
            if strict:
                raise IdentityFailed(name, wit[name])
    o1, e1 = invariants_of(p.K)
    o2, e2 = invariants_of(p.Kp)
    return VerificationReport(p.site.kind, p.t, ids, aux, e1, e2, o1, o2, wit)

