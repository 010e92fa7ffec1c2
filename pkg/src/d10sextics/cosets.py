"""Todd-Coxeter coset enumeration (HLT strategy with coincidence handling).

Tables act on the right: row c, column 2*i holds c.g_i and column 2*i+1
holds c.g_i^-1.  Coset 0 is the subgroup coset.  Completed tables are
compacted, renumbered in breadth-first order (standardized) and frozen.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .presentations import Presentation
from .words import Word

COMPLETE = "complete"
OVERFLOW = "overflow"

DEFAULT_MAX_COSETS = 10 ** 6


class EnumerationOverflow(RuntimeError):
    """Raised when an enumeration hits its coset limit.

    Means "raise the limit, or the group/index may be infinite"; never a
    wrong answer.
    """

    def __init__(self, max_cosets: int):
        super().__init__(f"coset limit {max_cosets} reached")
        self.max_cosets = max_cosets


@dataclass(frozen=True, slots=True)
class CosetTable:
    ngens: int
    rows: tuple[tuple[int, ...], ...]
    status: str  # COMPLETE or OVERFLOW (overflow tables carry no rows)

    @property
    def ncosets(self) -> int:
        return len(self.rows)

    def follow(self, coset: int, word: Word) -> int:
        for x in word.letters:
            coset = self.rows[coset][_col(x)]
        return coset


def _col(letter: int) -> int:
    return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1


def _word_cols(w: Word) -> tuple[int, ...]:
    return tuple(_col(x) for x in w.letters)


class _Pressure(Exception):
    """Internal: the live-coset limit was hit; try lookahead before giving up."""


class _Enumerator:
    def __init__(self, pres: Presentation, subgroup_gens, max_cosets: int):
        self.ncols = 2 * pres.ngens
        # short relators first: they close rows faster and curb HLT overshoot
        self.relators = sorted((_word_cols(r) for r in pres.relators if r), key=len)
        self.subgens = [_word_cols(w) for w in subgroup_gens if w]
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.p = [0]  # union-find: p[c] <= c, live iff p[c] == c
        self.live = 1
        self.dead_queue: deque[int] = deque()

    def rep(self, c: int) -> int:
        p = self.p
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def new_coset(self) -> int:
        if self.live >= self.max_cosets:
            raise _Pressure
        self.table.append([None] * self.ncols)
        self.p.append(len(self.table) - 1)
        self.live += 1
        return len(self.table) - 1

    def merge(self, a: int, b: int):
        a, b = self.rep(a), self.rep(b)
        if a != b:
            if a > b:
                a, b = b, a
            self.p[b] = a
            self.live -= 1
            self.dead_queue.append(b)

    def coincidence(self, a: int, b: int):
        self.merge(a, b)
        table = self.table
        while self.dead_queue:
            d = self.dead_queue.popleft()
            row = table[d]
            for x in range(self.ncols):
                e = row[x]
                if e is None:
                    continue
                row[x] = None
                self.table[e][x ^ 1] = None
                u, v = self.rep(d), self.rep(e)
                if table[u][x] is not None:
                    self.merge(v, table[u][x])
                elif table[v][x ^ 1] is not None:
                    self.merge(u, table[v][x ^ 1])
                else:
                    table[u][x] = v
                    table[v][x ^ 1] = u

    def scan_and_fill(self, c: int, cols: tuple[int, ...]):
        table = self.table
        f, b = c, c
        i, j = 0, len(cols) - 1
        while True:
            while i <= j:
                nxt = table[f][cols[i]]
                if nxt is None:
                    break
                f, i = nxt, i + 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                prev = table[b][cols[j] ^ 1]
                if prev is None:
                    break
                b, j = prev, j - 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                table[f][cols[i]] = b
                table[b][cols[i] ^ 1] = f
                return
            d = self.new_coset()
            table[f][cols[i]] = d
            table[d][cols[i] ^ 1] = f
            f, i = d, i + 1

    def _process(self, c: int):
        for cols in self.relators:
            self.scan_and_fill(c, cols)
            if self.p[c] != c:
                return
        row = self.table[c]
        for x in range(self.ncols):
            if row[x] is None:
                d = self.new_coset()
                row[x] = d
                self.table[d][x ^ 1] = c

    def run(self):
        for w in self.subgens:
            self.scan_and_fill(0, w)
        c = 0
        while c < len(self.table):
            if self.p[c] == c:
                self._process(c)
            c += 1
        # Coincidence processing can transiently undefine entries in rows
        # already passed by the main loop; sweep until no live row has a hole.
        while True:
            holes = [c for c in range(len(self.table))
                     if self.p[c] == c and None in self.table[c]]
            if not holes:
                return
            for c in holes:
                if self.p[c] == c:
                    self._process(c)

    def compacted(self) -> list[list[int]]:
        remap = {}
        for c in range(len(self.table)):
            if self.p[c] == c:
                remap[c] = len(remap)
        out = []
        for c, new in remap.items():
            out.append([remap[self.rep(e)] for e in self.table[c]])
        return out


def _standardize(rows: list[list[int]], ncols: int) -> tuple[tuple[int, ...], ...]:
    """Renumber cosets in breadth-first discovery order from coset 0."""
    order = {0: 0}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x in range(ncols):
            d = rows[c][x]
            if d not in order:
                order[d] = len(order)
                queue.append(d)
    out: list[tuple[int, ...] | None] = [None] * len(rows)
    for c, new in order.items():
        out[new] = tuple(order[e] for e in rows[c])
    return tuple(out)  # type: ignore[arg-type]


def enumerate_cosets(pres: Presentation, subgroup_gens=(),
                     max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate cosets of the subgroup generated by `subgroup_gens`.

    Returns a complete, verified table whose row count is the subgroup
    index, or a table with status OVERFLOW when the limit is hit.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    enum = _Enumerator(pres, subgroup_gens, max_cosets)
    try:
        enum.run()
    except EnumerationOverflow:
        return CosetTable(pres.ngens, (), OVERFLOW)
    rows = _standardize(enum.compacted(), enum.ncols)
    table = CosetTable(pres.ngens, rows, COMPLETE)
    errors = verify_table(pres, subgroup_gens, table)
    if errors:  # enumerator bug, not a property of the input
        raise AssertionError("coset table failed verification: " + errors[0])
    return table


def verify_table(pres: Presentation, subgroup_gens, table: CosetTable) -> list[str]:
    """Independent scanner for the completed-table invariants.

    Checks that every generator acts as a permutation (with consistent
    inverse columns), that every relator traces to the identity from every
    coset, and that subgroup generators fix coset 0.  Returns a list of
    human-readable violations (empty when sound).
    """
    errors = []
    n = table.ncosets
    ncols = 2 * pres.ngens
    for c, row in enumerate(table.rows):
        if len(row) != ncols:
            return [f"row {c} has {len(row)} columns, expected {ncols}"]
        for x, e in enumerate(row):
            if not (0 <= e < n):
                errors.append(f"entry ({c},{x}) out of range: {e}")
            elif table.rows[e][x ^ 1] != c:
                errors.append(f"inverse column inconsistent at ({c},{x})")
    for i in range(pres.ngens):
        seen = {row[2 * i] for row in table.rows}
        if len(seen) != n:
            errors.append(f"generator {i} does not act as a permutation")
    for r in pres.relators:
        for c in range(n):
            if table.follow(c, r) != c:
                errors.append(f"relator {r.letters} does not fix coset {c}")
                break
    for w in subgroup_gens:
        if table.follow(0, w) != 0:
            errors.append(f"subgroup generator {w.letters} moves coset 0")
    return errors


def group_order(pres: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> int:
    """Order of the presented group, by enumeration over the trivial subgroup."""
    t = enumerate_cosets(pres, (), max_cosets)
    if t.status != COMPLETE:
        raise EnumerationOverflow(max_cosets)
    return t.ncosets


def permutation_images(table: CosetTable) -> list[tuple[int, ...]]:
    """Right-action permutation of each generator on the cosets."""
    if table.status != COMPLETE:
        raise ValueError("table is not complete")
    return [tuple(row[2 * i] for row in table.rows) for i in range(table.ngens)]
