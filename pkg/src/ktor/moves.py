"""Constructing diagrams: symmetric plat closures, Reidemeister I kinks,
clasp insertion between the two axis edges, and a planarity check.

Plats live on six strands with caps (1,2)(3,4)(5,6) at top and bottom and
the axis between strands 3 and 4.  A word is a sequence of letters

    ("A", e)  sigma_3^e            one crossing on the axis
    ("B", e)  sigma_2^e sigma_4^e  a swapped pair
    ("C", e)  sigma_1^e sigma_5^e  a swapped pair

e = +1 or -1.  The edge through the top (3,4) cap is edge 1, so the default
edge involution k -> 2 - k (mod 2n) is the rotation.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .diagram import NotSymmetric, PDCode, PDError, derive_symmetry, pd_from_crossings

LETTERS = {"A": ((3,),), "B": ((2, 4),), "C": ((1, 5),)}
CAPS = {1: 2, 2: 1, 3: 4, 4: 3, 5: 6, 6: 5}
# the other matching of six points with exactly one cap across the axis
NESTED_CAPS = {1: 6, 6: 1, 2: 3, 3: 2, 4: 5, 5: 4}


def letter_weight(letter: str) -> int:
    return 1 if letter == "A" else 2


def plat_pd(word: Sequence[tuple[str, int]], caps: dict[int, int] | None = None,
            bottom: dict[int, int] | None = None) -> PDCode:
    """PD code of the plat closure of ``word`` (raises NonKnotError for links).

    ``caps`` may restrict to the two middle strands, ``{3: 4, 4: 3}``;
    ``bottom`` defaults to ``caps``.  Numbering starts on the top cap that
    crosses the axis, so the result may still need a basepoint rotation.
    """
    caps = CAPS if caps is None else caps
    bottom = caps if bottom is None else bottom
    levels: list[dict[int, tuple[int, int]]] = []  # position i -> (crossing id, sign)
    n = 0
    for letter, e in word:
        row = {}
        for i in LETTERS[letter][0]:
            row[i] = (n, e)
            n += 1
        levels.append(row)
    L = len(levels)
    if n == 0:
        return PDCode((), 1)
    # ports: 0 NE, 1 NW, 2 SW, 3 SE  (counterclockwise from NE)
    passages: list[tuple[int, int, int]] = []  # (crossing, in port, out port)
    x = max(a for a, b in caps.items() if a + b == 7)
    gap, down = 0, True  # just right of the top cap midpoint
    start = (gap, x, down)
    steps = 0
    while True:
        steps += 1
        if steps > 100 * (n + L + 6):
            raise RuntimeError("plat traversal did not close")
        if down:
            if gap == L:
                x, down = bottom[x], False
            else:
                row = levels[gap]
                if x in row:
                    c, _ = row[x]
                    passages.append((c, 1, 3))
                    x += 1
                elif x - 1 in row:
                    c, _ = row[x - 1]
                    passages.append((c, 0, 2))
                    x -= 1
                gap += 1
        else:
            if gap == 0:
                x, down = caps[x], True
            else:
                row = levels[gap - 1]
                if x in row:
                    c, _ = row[x]
                    passages.append((c, 2, 0))
                    x += 1
                elif x - 1 in row:
                    c, _ = row[x - 1]
                    passages.append((c, 3, 1))
                    x -= 1
                gap -= 1
        if (gap, x, down) == start:
            break
    if len(passages) != 2 * n:
        from .diagram import NonKnotError
        raise NonKnotError("plat closure is a link")
    m = 2 * n
    ports: dict[int, list[int]] = {c: [0, 0, 0, 0] for c in range(n)}
    entered: dict[int, list[int]] = {c: [] for c in range(n)}
    for j, (c, pin, pout) in enumerate(passages):
        ports[c][pin] = j + 1
        ports[c][pout] = (j + 1) % m + 1
        entered[c].append(pin)
    sign = {}
    for row in levels:
        for _, (c, e) in row.items():
            sign[c] = e
    quads = []
    for c in range(n):
        # e = +1: the NW-SE strand is over, so NE-SW is under
        under = (0, 2) if sign[c] > 0 else (1, 3)
        pin = next(p for p in entered[c] if p in under)
        pr = ports[c]
        quads.append(tuple(pr[(pin + k) % 4] for k in range(4)))
    return pd_from_crossings(quads)


def words(max_weight: int, first_last: str = "B", last: str | None = None) -> Iterable[tuple[tuple[str, int], ...]]:
    """Reduced words of total crossing weight <= max_weight.

    The first letter is one of ``first_last`` and the last one of ``last``
    (default: the same set), which avoids kinks next to the caps.
    """
    alphabet = [(a, e) for a in "ABC" for e in (1, -1)]
    last = first_last if last is None else last

    def rec(prefix, weight):
        if prefix and prefix[-1][0] in last and weight >= 2:
            yield tuple(prefix)
        for a, e in alphabet:
            w = weight + letter_weight(a)
            if w > max_weight:
                continue
            if not prefix and a not in first_last:
                continue
            if prefix and prefix[-1] == (a, -e):
                continue
            prefix.append((a, e))
            yield from rec(prefix, w)
            prefix.pop()

    yield from rec([], 0)


# ---------------------------------------------------------------------------
# planarity


def count_faces(pd: PDCode) -> int:
    ends: dict[int, list[tuple[int, int]]] = {}
    for x, q in enumerate(pd.crossings):
        for s, e in enumerate(q):
            ends.setdefault(e, []).append((x, s))

    def other(x, s):
        e = pd.crossings[x][s]
        a, b = ends[e]
        return b if a == (x, s) else a

    seen = set()
    faces = 0
    for x in range(pd.n):
        for s in range(4):
            if (x, s) in seen:
                continue
            faces += 1
            cur = (x, s)
            while cur not in seen:
                seen.add(cur)
                y, t = other(*cur)
                cur = (y, (t + 1) % 4)
    return faces


def is_planar(pd: PDCode) -> bool:
    return pd.n == 0 or count_faces(pd) == pd.n + 2


# ---------------------------------------------------------------------------
# Reidemeister I


KINK_FORMS = ("A", "B", "C", "D")


def add_kink(pd: PDCode, e: int, form: str) -> PDCode:
    """Insert a one-crossing loop on edge e.  Four local forms (side x sign)."""
    if pd.n == 0:
        raise ValueError("kinks are added to diagrams with at least one crossing")
    m = pd.n_edges
    # e is split into e1 -> e2 (the loop) -> e3; labels e, e+1, e+2
    e1, e2, e3 = e, e + 1, e + 2

    def relab(x, at_head: bool):
        # the old edge e keeps its tail as e1 and its head becomes e3
        if x < e:
            return x
        if x > e:
            return x + 2
        return e3 if at_head else e1

    quads = []
    for q in pd.crossings:
        out = []
        for slot, x in enumerate(q):
            if x == e:
                # slot is the head of e iff e enters here
                head = _is_head(pd, q, slot)
                out.append(relab(x, head))
            else:
                out.append(relab(x, False))
        quads.append(tuple(out))
    new = {
        "A": (e1, e2, e2, e3),
        "B": (e1, e3, e2, e2),
        "C": (e2, e1, e3, e2),
        "D": (e2, e2, e3, e1),
    }[form]
    quads.append(new)
    if m + 2 and max(max(q) for q in quads) > m + 2:
        raise AssertionError("bad relabelling")
    return _wrap(quads, m + 2)


def _is_head(pd: PDCode, q, slot: int) -> bool:
    idx = pd.crossings.index(tuple(q))
    if slot == 0:
        return True
    if slot == 2:
        return False
    b_to_d = pd.over_runs_b_to_d(idx)
    return (slot == 1) == b_to_d


def _wrap(quads, m):
    return pd_from_crossings([tuple((x - 1) % m + 1 for x in q) for q in quads])


def kink_variants(pd: PDCode) -> Iterable[PDCode]:
    """All single-kink diagrams (planar ones only)."""
    for e in range(1, pd.n_edges + 1):
        for form in KINK_FORMS:
            try:
                k = add_kink(pd, e, form)
            except PDError:
                continue
            if is_planar(k):
                yield k


def symmetric_kink_pairs(pd: PDCode) -> Iterable[PDCode]:
    """Diagrams with a tau-symmetric pair of kinks, renumbered from edge 1.

    Candidates are filtered by planarity and by the default rotation.
    """
    sym = derive_symmetry(pd)
    seen = set()
    for e in range(2, pd.n_edges + 1):
        te = sym.edge(e)
        if te == e:
            continue
        for f1, f2 in itertools.product(KINK_FORMS, repeat=2):
            # first kink on e, then on the image of te (shifted by 2 if after e)
            k1 = add_kink(pd, e, f1)
            te2 = te if te < e else te + 2
            try:
                k2 = add_kink(k1, te2, f2)
            except PDError:
                continue
            if not is_planar(k2) or k2.crossings in seen:
                continue
            try:
                derive_symmetry(k2)
            except NotSymmetric:
                continue
            seen.add(k2.crossings)
            yield k2


# ---------------------------------------------------------------------------
# clasps on the axis


def clasp_candidates(pd: PDCode) -> Iterable[tuple[PDCode, int, int]]:
    """Diagrams K with a clasp (l, r) whose resolution recovers ``pd``.

    The two axis edges of ``pd`` are each cut into three edges, the middle
    ones forming the bigon.  Every local over/under and cyclic arrangement
    is tried; survivors are planar and symmetric under the default rotation
    with the bigon edges fixed.
    """
    sym = derive_symmetry(pd)
    p, q = sym.fixed_edges  # p = 1
    m = pd.n_edges
    out_seen = set()
    # old edges p, q -> (p, p+1, p+2), (q', q'+1, q'+2) after relabelling
    def relab(x, at_head):
        base = x
        shift = (2 if x > p else 0) + (2 if x > q else 0)
        if x == p:
            return p + 2 if at_head else p
        if x == q:
            return q + 2 + 2 if at_head else q + 2
        return base + shift

    rest = []
    for qd in pd.crossings:
        idx = pd.crossings.index(qd)
        rest.append(tuple(relab(x, (x in (p, q)) and _is_head(pd, qd, s)) for s, x in enumerate(qd)))
    P = (p, p + 1, p + 2)
    Q = (q + 2, q + 3, q + 4)
    # passages: P strand goes P0 -> P1 at one crossing and P1 -> P2 at the other;
    # likewise Q.  Pair the first P passage either with Q's first or second.
    for qfirst in (True, False):
        qa = (Q[0], Q[1]) if qfirst else (Q[1], Q[2])
        qb = (Q[1], Q[2]) if qfirst else (Q[0], Q[1])
        for o1, o2 in itertools.product(range(4), repeat=2):
            c1 = _local_quad((P[0], P[1]), qa, o1)
            c2 = _local_quad((P[1], P[2]), qb, o2)
            quads = rest + [c1, c2]
            try:
                k = _wrap(quads, m + 4)
            except PDError:
                continue
            if not is_planar(k):
                continue
            # renumber so that the P bigon edge is edge 1
            k = _rotate(k, P[1] - 1)
            try:
                ks = derive_symmetry(k)
            except NotSymmetric:
                continue
            if k.crossings in out_seen:
                continue
            l_idx, r_idx = k.n - 2, k.n - 1
            if ks.crossing_involution[l_idx] != r_idx:
                continue
            out_seen.add(k.crossings)
            yield k, l_idx, r_idx


def _local_quad(s1, s2, option):
    """A crossing of strand passages s1 = (in, out) and s2 = (in, out)."""
    under, over = (s1, s2) if option < 2 else (s2, s1)
    a, c = under
    if option % 2 == 0:
        return (a, over[0], c, over[1])  # over runs b -> d
    return (a, over[1], c, over[0])  # over runs d -> b


def _rotate(pd: PDCode, shift: int) -> PDCode:
    m = pd.n_edges
    return pd_from_crossings([tuple((x - 1 - shift) % m + 1 for x in q) for q in pd.crossings])


# ---------------------------------------------------------------------------
# exhaustive small diagrams


def _matchings(points):
    if not points:
        yield []
        return
    a = points[0]
    for k in range(1, len(points)):
        for rest in _matchings(points[1:k] + points[k + 1:]):
            yield [(a, points[k])] + rest


def canonical(pd: PDCode) -> tuple:
    """Smallest crossing list over all cyclic shifts of the edge labels."""
    m = pd.n_edges
    return min(tuple(sorted(tuple((x - 1 + s) % m + 1 for x in q) for q in pd.crossings)) for s in range(m))


def all_diagrams(n: int, up_to_shift: bool = True) -> Iterable[PDCode]:
    """Every planar knot diagram with n crossings.

    A Gauss code is a perfect matching of the 2n points where edge k meets
    edge k+1; each matched pair becomes a crossing with a choice of which
    passage is under and of the sign.
    """
    if n == 0:
        yield PDCode((), 1)
        return
    m = 2 * n

    def nxt(x):
        return x % m + 1

    seen = set()
    for match in _matchings(list(range(1, m + 1))):
        for choice in itertools.product(range(4), repeat=n):
            quads = []
            for (i, j), c in zip(match, choice):
                u, o = (i, j) if c < 2 else (j, i)
                quads.append((u, o, nxt(u), nxt(o)) if c % 2 == 0 else (u, nxt(o), nxt(u), o))
            try:
                pd = pd_from_crossings(quads)
            except PDError:
                continue
            if not is_planar(pd):
                continue
            key = canonical(pd) if up_to_shift else pd.crossings
            if key in seen:
                continue
            seen.add(key)
            yield pd
