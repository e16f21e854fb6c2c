"""Combinatorial model of the heptagrid, the {7,3} tessellation of the
hyperbolic plane.

Cells are identified by small integers handed out lazily.  The central tile
has id 0; every other cell belongs to one of 7 sectors and is reached from
the sector root by a path of son indices.  Son index 1 is the "blue" child
(a two-son cell), indices 2 and 3 are three-son cells; a two-son cell has no
third son.

The neighbour ring of a cell lists its 7 neighbours in counter-clockwise
order starting from the tree father (for the central tile: the sector roots
in sector order).  Ring composition:

    three-son cell X:  [F, P, X.1, X.2, X.3, S.1, S]
    two-son cell   X:  [F, PF, P, X.1, X.2, S.1, S]

where F is the tree father, S / P the successor / predecessor of X on its
circle around the centre, PF the circle-predecessor of F (the second father
of a two-son cell), and S.1 the first son of S (the "nephew" edge).  This
fixes the cross-level edge convention globally; the mirror convention would
give an isomorphic but reflected grid.
"""

from __future__ import annotations

from functools import lru_cache

CENTER = 0

TWO_SON = 2
THREE_SON = 3


@lru_cache(maxsize=None)
def sector_level_count(k: int) -> int:
    """Number of tiles of one sector at distance k from the centre.

    Equals f(2k-1) for the Fibonacci sequence with f(0) = f(1) = 1.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    a, b = 1, 1
    for _ in range(2 * k - 2):
        a, b = b, a + b
    return b


def parse_address(text: str) -> tuple[int, tuple[int, ...]] | None:
    """Parse the textual cell address syntax.

    `0` is the centre (returns None); otherwise `s` or `s.c1.c2...cn` with
    s in 1..7 and ci in 1..3.
    """
    text = text.strip()
    if text == "0":
        return None
    parts = text.split(".")
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"malformed address {text!r}")
    sector, path = nums[0], tuple(nums[1:])
    if not 1 <= sector <= 7 or any(not 1 <= c <= 3 for c in path):
        raise ValueError(f"malformed address {text!r}")
    return sector, path


def format_address(sector_path: tuple[int, tuple[int, ...]] | None) -> str:
    if sector_path is None:
        return "0"
    sector, path = sector_path
    return ".".join(str(n) for n in (sector,) + tuple(path))


class Heptagrid:
    """Lazily materialised heptagrid.

    All queries are pure; materialisation only appends cells, so references
    held across calls stay valid.
    """

    def __init__(self):
        self._parent = [CENTER]       # tree father (center: itself)
        self._sonidx = [0]            # index of this cell among its father's sons
        self._level = [0]
        self._kind = [THREE_SON]      # kind of center is irrelevant; roots are three-son
        self._sector = [0]
        self._sons = [[None] * 7]     # center "sons" = the 7 sector roots
        self._ring = {CENTER: None}
        self._by_path = {}            # (sector, path) -> id
        for i in range(1, 8):
            self._new_cell(CENTER, i, 1, THREE_SON, i)

    # -- construction ----------------------------------------------------

    def _new_cell(self, parent: int, sonidx: int, level: int, kind: int,
                  sector: int) -> int:
        cid = len(self._parent)
        self._parent.append(parent)
        self._sonidx.append(sonidx)
        self._level.append(level)
        self._kind.append(kind)
        self._sector.append(sector)
        self._sons.append([None] * (2 if kind == TWO_SON else 3))
        if parent == CENTER:
            self._sons[CENTER][sonidx - 1] = cid
        else:
            self._sons[parent][sonidx - 1] = cid
        return cid

    def son(self, c: int, j: int) -> int:
        """The j-th son of c (1-based).  The centre's sons are the roots."""
        if c == CENTER:
            if not 1 <= j <= 7:
                raise ValueError("centre has sons 1..7 (the sector roots)")
            return self._sons[CENTER][j - 1]
        nsons = 2 if self._kind[c] == TWO_SON else 3
        if not 1 <= j <= nsons:
            raise ValueError(f"cell {self.address(c)} has no son {j}")
        s = self._sons[c][j - 1]
        if s is None:
            kind = TWO_SON if j == 1 else THREE_SON
            s = self._new_cell(c, j, self._level[c] + 1, kind, self._sector[c])
        return s

    # -- basic accessors -------------------------------------------------

    def level(self, c: int) -> int:
        return self._level[c]

    def kind(self, c: int) -> int:
        return self._kind[c]

    def parent(self, c: int) -> int:
        return self._parent[c]

    def sector(self, c: int) -> int:
        return self._sector[c]

    def path(self, c: int) -> tuple[int, ...]:
        out = []
        while c != CENTER and self._parent[c] != CENTER:
            out.append(self._sonidx[c])
            c = self._parent[c]
        return tuple(reversed(out))

    def address(self, c: int) -> str:
        if c == CENTER:
            return "0"
        return format_address((self._sector[c], self.path(c)))

    def cell(self, address) -> int:
        """Cell id for a textual address or a (sector, path) pair."""
        if isinstance(address, str):
            parsed = parse_address(address)
        else:
            parsed = address
        if parsed is None:
            return CENTER
        sector, path = parsed
        c = self.son(CENTER, sector)
        for j in path:
            c = self.son(c, j)
        return c

    # -- circle order around the centre ----------------------------------

    def succ(self, c: int) -> int:
        """Counter-clockwise successor of c on its circle around the centre."""
        if c == CENTER:
            raise ValueError("centre is not on a circle")
        p = self._parent[c]
        if p == CENTER:
            return self.son(CENTER, self._sector[c] % 7 + 1)
        j = self._sonidx[c]
        nsons = 2 if self._kind[p] == TWO_SON else 3
        if j < nsons:
            return self.son(p, j + 1)
        return self.son(self.succ(p), 1)

    def pred(self, c: int) -> int:
        """Counter-clockwise predecessor of c on its circle."""
        if c == CENTER:
            raise ValueError("centre is not on a circle")
        p = self._parent[c]
        if p == CENTER:
            return self.son(CENTER, (self._sector[c] - 2) % 7 + 1)
        j = self._sonidx[c]
        if j > 1:
            return self.son(p, j - 1)
        q = self.pred(p)
        return self.son(q, 2 if self._kind[q] == TWO_SON else 3)

    # -- adjacency --------------------------------------------------------

    def ring(self, c: int) -> tuple[int, ...]:
        """The 7 neighbours of c, counter-clockwise, father first."""
        r = self._ring.get(c)
        if r is not None:
            return r
        if c == CENTER:
            r = tuple(self._sons[CENTER])
        else:
            f = self._parent[c]
            s = self.succ(c)
            p = self.pred(c)
            nephew = self.son(s, 1)
            if self._kind[c] == THREE_SON:
                r = (f, p, self.son(c, 1), self.son(c, 2), self.son(c, 3),
                     nephew, s)
            else:
                r = (f, self.pred(f), p, self.son(c, 1), self.son(c, 2),
                     nephew, s)
        self._ring[c] = r
        return r

    def neighbors(self, c: int) -> tuple[int, ...]:
        return self.ring(c)

    def rotate(self, c: int, k: int) -> int:
        """Rotate c by k sectors about the centre (a grid automorphism)."""
        if c == CENTER:
            return CENTER
        sector = (self._sector[c] + k - 1) % 7 + 1
        return self.cell((sector, self.path(c)))

    # -- metrics ----------------------------------------------------------

    def distance(self, a: int, b: int, limit: int = 64) -> int:
        """Graph distance between a and b (breadth-first search)."""
        if a == b:
            return 0
        seen = {a}
        frontier = [a]
        for d in range(1, limit + 1):
            nxt = []
            for c in frontier:
                for n in self.ring(c):
                    if n == b:
                        return d
                    if n not in seen:
                        seen.add(n)
                        nxt.append(n)
            frontier = nxt
        raise ValueError(f"cells farther apart than limit {limit}")

    def ball(self, center: int, radius: int) -> dict[int, int]:
        """Map cell -> distance for every cell within `radius` of `center`."""
        dist = {center: 0}
        frontier = [center]
        for d in range(1, radius + 1):
            nxt = []
            for c in frontier:
                for n in self.ring(c):
                    if n not in dist:
                        dist[n] = d
                        nxt.append(n)
            frontier = nxt
        return dist

    def circle(self, center: int, radius: int) -> list[int]:
        """All cells at exactly `radius` from `center`, as a counter-clockwise
        cycle (consecutive entries adjacent)."""
        if radius < 1:
            raise ValueError("radius must be >= 1")
        if center == CENTER:
            # fast path: walk successor pointers from the canonical start
            start = self.son(CENTER, 1)
            for _ in range(radius - 1):
                start = self.son(start, 1)
            out = [start]
            c = self.succ(start)
            while c != start:
                out.append(c)
                c = self.succ(c)
            return out
        dist = self.ball(center, radius)
        ring_cells = {c for c, d in dist.items() if d == radius}
        start = min(ring_cells)
        out = [start]
        c = start
        prev = None
        while True:
            n = self._circle_succ(c, dist, radius)
            if n == start:
                break
            if n == prev:
                raise AssertionError("circle walk is not a simple cycle")
            out.append(n)
            prev, c = c, n
            if len(out) > len(ring_cells):
                raise AssertionError("circle walk did not close")
        return out

    def _circle_succ(self, c: int, dist: dict[int, int], radius: int) -> int:
        """CCW successor of c on the circle described by `dist`.

        Enumerating c's ring counter-clockwise from just after an inward
        neighbour, the successor is the last same-circle neighbour met.
        """
        ring = self.ring(c)
        inward = next(i for i, n in enumerate(ring) if dist.get(n) == radius - 1)
        succ = None
        for k in range(1, 7):
            n = ring[(inward + k) % 7]
            if dist.get(n) == radius:
                succ = n
        if succ is None:
            raise AssertionError("isolated circle cell")
        return succ

    def arc(self, center: int, radius: int, start: int, length: int) -> list[int]:
        """`length` consecutive circle cells starting at `start`, CCW."""
        cells = self.circle(center, radius)
        try:
            i = cells.index(start)
        except ValueError:
            raise ValueError("start cell is not on the circle") from None
        return [cells[(i + k) % len(cells)] for k in range(length)]
