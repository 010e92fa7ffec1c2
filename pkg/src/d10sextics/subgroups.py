"""Subgroup presentations, abelian invariants, derived series, quotients.

The Reidemeister-Schreier rewriting works on any complete coset table; the
derived series obtains each commutator subgroup as the kernel of the map
onto the (finite) abelianization, whose coset table is written down
directly from the Smith normal form data.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import perms
from .cosets import (COMPLETE, CosetTable, DEFAULT_MAX_COSETS,
                     EnumerationOverflow, enumerate_cosets, group_order,
                     permutation_images)
from .presentations import Presentation, reduce_presentation, simplify_presentation
from .words import Word, commutator, gen


def schreier_transversal(table: CosetTable) -> list[Word]:
    """Prefix-closed coset representatives, BFS from coset 0.

    The search walks generator and inverse columns in order, so the
    representative of each coset is a shortest word in the scan order.
    """
    if table.status != COMPLETE:
        raise ValueError("table is not complete")
    reps: list[Word | None] = [None] * table.ncosets
    reps[0] = Word(())
    queue = [0]
    while queue:
        c = queue.pop(0)
        for x in range(2 * table.ngens):
            d = table.rows[c][x]
            if reps[d] is None:
                letter = x // 2 + 1 if x % 2 == 0 else -(x // 2 + 1)
                reps[d] = Word(reps[c].letters + (letter,))
                queue.append(d)
    return reps  # type: ignore[return-value]


def _tree_edges(table: CosetTable) -> set[tuple[int, int]]:
    """Edges (coset, positive generator) used by the BFS transversal tree."""
    edges = set()
    seen = [False] * table.ncosets
    seen[0] = True
    queue = [0]
    while queue:
        c = queue.pop(0)
        for x in range(2 * table.ngens):
            d = table.rows[c][x]
            if not seen[d]:
                seen[d] = True
                queue.append(d)
                i = x // 2
                # record with its positive orientation
                edges.add((c, i) if x % 2 == 0 else (d, i))
    return edges


def reidemeister_schreier(pres: Presentation, table: CosetTable,
                          simplify: bool = True) -> Presentation:
    """Presentation of the subgroup a complete coset table describes.

    Generators are the Schreier generators of non-tree edges; relators are
    the rewrites of every relator of `pres` traced from every coset.
    Generators appearing in no relator are retained (free factors).
    """
    if table.status != COMPLETE:
        raise ValueError("table is not complete")
    n = table.ncosets
    tree = _tree_edges(table)
    sgen_index: dict[tuple[int, int], int] = {}
    names = []
    for c in range(n):
        for i in range(pres.ngens):
            if (c, i) not in tree:
                sgen_index[(c, i)] = len(names)
                names.append(f"y{len(names)}")

    def rewrite(c: int, r: Word) -> Word:
        out = []
        cur = c
        for x in r.letters:
            i = abs(x) - 1
            if x > 0:
                k = sgen_index.get((cur, i))
                if k is not None:
                    out.append(k + 1)
                cur = table.rows[cur][2 * i]
            else:
                cur = table.rows[cur][2 * i + 1]
                k = sgen_index.get((cur, i))
                if k is not None:
                    out.append(-(k + 1))
        return Word(tuple(out))

    relators = [rewrite(c, r) for r in pres.relators for c in range(n)]
    sub = Presentation(tuple(names), tuple(relators))
    return reduce_presentation(sub) if simplify else sub


# ---------------------------------------------------------------------------
# Smith normal form and abelian invariants


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors d1 | d2 | ... (each >= 2) plus the free rank."""
    torsion: tuple[int, ...]
    free_rank: int

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and not self.free_rank

    def __str__(self) -> str:
        if self.is_trivial:
            return "1"
        parts = [f"C{d}" for d in self.torsion]
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}" if self.free_rank > 1 else "Z")
        return " x ".join(parts)


def smith_normal_form(rows: list[list[int]], ncols: int | None = None):
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (diagonal, V) where diagonal is the list of diagonal entries
    d1 | d2 | ... (nonnegative, divisibility enforced) and V is the ncols x
    ncols unimodular matrix of accumulated column operations, so that the
    class of row vector v in the cokernel has coordinates v @ V.

    Pivoting picks a minimal nonzero entry; arithmetic is exact on Python
    integers (intermediate growth is real and expected).
    """
    m = [list(r) for r in rows]
    if ncols is None:
        if not m:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(m[0])
    nrows = len(m)
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def col_op(dst, src, k):  # column dst += k * column src
        for r in m:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    def col_swap(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def col_negate(i):
        for r in m:
            r[i] = -r[i]
        for r in v:
            r[i] = -r[i]

    def diagonalize() -> list[int]:
        diag = []
        top, left = 0, 0
        while top < nrows and left < ncols:
            pivot = None
            best = None
            for i in range(top, nrows):
                for j in range(left, ncols):
                    e = abs(m[i][j])
                    if e and (best is None or e < best):
                        pivot, best = (i, j), e
            if pivot is None:
                break
            pi, pj = pivot
            m[top], m[pi] = m[pi], m[top]
            if pj != left:
                col_swap(left, pj)
            if m[top][left] < 0:
                col_negate(left)
            dirty = True
            while dirty:
                dirty = False
                a = m[top][left]
                for j in range(left + 1, ncols):
                    if m[top][j]:
                        col_op(j, left, -(m[top][j] // a))
                        if m[top][j]:  # remainder is a smaller pivot: swap in
                            col_swap(left, j)
                            dirty = True
                            break
                if dirty:
                    continue
                for i in range(top + 1, nrows):
                    if m[i][left]:
                        q = m[i][left] // a
                        for j in range(left, ncols):
                            m[i][j] -= q * m[top][j]
                        if m[i][left]:
                            m[top], m[i] = m[i], m[top]
                            dirty = True
                            break
            diag.append(m[top][left])
            top += 1
            left += 1
        return diag

    # iterate until the divisibility chain holds; re-coupling two diagonal
    # positions with a column operation keeps V in sync, then re-eliminate
    while True:
        diag = diagonalize()
        bad = next((k for k in range(len(diag) - 1)
                    if diag[k] and diag[k + 1] % diag[k]), None)
        if bad is None:
            return diag, v
        col_op(bad, bad + 1, 1)


def invariants_from_matrix(rows: list[list[int]], ncols: int) -> AbelianInvariants:
    diag, _ = smith_normal_form(rows, ncols)
    torsion = tuple(d for d in diag if d > 1)
    rank = sum(1 for d in diag if d != 0)
    return AbelianInvariants(torsion, ncols - rank)


def abelianization(pres: Presentation) -> AbelianInvariants:
    """Invariant factors of the abelianized group (SNF of exponent sums)."""
    return invariants_from_matrix(pres.relator_matrix(), pres.ngens)


def is_perfect(pres: Presentation) -> bool:
    return abelianization(pres).is_trivial


class InfiniteAbelianization(RuntimeError):
    pass


def abelianization_with_images(pres: Presentation):
    """Abelian invariants together with each generator's image.

    Images are coordinate tuples in the direct sum of the torsion factors;
    raises InfiniteAbelianization when the free rank is positive (the
    derived-series machinery needs a finite quotient to enumerate).
    """
    diag, v = smith_normal_form(pres.relator_matrix(), pres.ngens)
    torsion_pos = [k for k, d in enumerate(diag) if d > 1]
    rank = sum(1 for d in diag if d != 0)
    free = pres.ngens - rank
    inv = AbelianInvariants(tuple(diag[k] for k in torsion_pos), free)
    if free:
        raise InfiniteAbelianization(f"abelianization {inv} is infinite")
    images = []
    for i in range(pres.ngens):
        images.append(tuple(v[i][k] % diag[k] for k in torsion_pos))
    return inv, images


def abelianization_kernel_table(pres: Presentation) -> CosetTable:
    """Coset table of the commutator subgroup, built without enumeration.

    Cosets are the elements of the finite abelianization; generators act by
    adding their images.  Numbering follows breadth-first discovery from
    the zero class so the table matches a standardized enumeration.
    """
    inv, images = abelianization_with_images(pres)
    mods = inv.torsion
    zero = tuple(0 for _ in mods)
    index = {zero: 0}
    order = [zero]
    queue = [zero]
    neg = [tuple(-x % d for x, d in zip(img, mods)) for img in images]
    while queue:
        cur = queue.pop(0)
        for img in images:
            nxt = tuple((x + y) % d for x, y, d in zip(cur, img, mods))
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
        # inverse steps discover nothing new (images generate), but keep
        # the BFS order aligned with coset-table column order
        for img in neg:
            nxt = tuple((x + y) % d for x, y, d in zip(cur, img, mods))
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
    rows = []
    for cur in order:
        row = []
        for img, nimg in zip(images, neg):
            row.append(index[tuple((x + y) % d for x, y, d in zip(cur, img, mods))])
            row.append(index[tuple((x + y) % d for x, y, d in zip(cur, nimg, mods))])
        rows.append(tuple(row))
    return CosetTable(pres.ngens, tuple(rows), COMPLETE)


def derived_subgroup_presentation(pres: Presentation) -> Presentation:
    return reidemeister_schreier(pres, abelianization_kernel_table(pres))


def commutator_subgroup_generators(pres: Presentation) -> list[Word]:
    """Words generating the commutator subgroup: generator commutators plus
    torsion powers of the generators (powers taken from the order of each
    generator's image in the abelianization)."""
    inv, images = abelianization_with_images(pres)
    gens = [commutator(gen(i), gen(j))
            for i, j in combinations(range(pres.ngens), 2)]
    for i, img in enumerate(images):
        n = 1
        cur = img
        zero = tuple(0 for _ in inv.torsion)
        while cur != zero:
            cur = tuple((x + y) % d for x, y, d in zip(cur, img, inv.torsion))
            n += 1
        if n > 1:
            gens.append(gen(i) ** n)
    return gens


# ---------------------------------------------------------------------------
# Derived series


@dataclass(frozen=True)
class DerivedLevel:
    ngens: int
    nrelators: int
    invariants: AbelianInvariants
    order: int | None


@dataclass(frozen=True)
class DerivedSeriesReport:
    levels: tuple[DerivedLevel, ...]  # one per term with nontrivial abelianization
    final_order: int
    final_perfect: bool  # series stopped at a perfect term
    hit_depth_limit: bool

    @property
    def quotient_orders(self) -> tuple[int, ...]:
        return tuple(lvl.invariants.order for lvl in self.levels)

    @property
    def total_order(self) -> int:
        n = self.final_order
        for q in self.quotient_orders:
            n *= q
        return n


def derived_series(pres: Presentation, max_depth: int = 8,
                   max_cosets: int = DEFAULT_MAX_COSETS,
                   order: int | None = None) -> DerivedSeriesReport:
    """Walk G > G' > G'' > ... by repeated abelianize / rewrite steps.

    Stops at a perfect or trivial term or at `max_depth`.  `order`, when
    given, is trusted as the order of the whole group; otherwise it is
    enumerated.  Orders further down are quotients of it; the final term's
    order is re-enumerated and checked against the product identity.
    """
    if order is None:
        order = group_order(pres, max_cosets)
    levels = []
    cur = pres
    remaining = order
    for _ in range(max_depth):
        inv = abelianization(cur)
        if inv.free_rank:
            raise InfiniteAbelianization(f"term has infinite abelianization {inv}")
        if inv.is_trivial:
            final = group_order(cur, max_cosets)
            if final != remaining:
                raise AssertionError(
                    f"order bookkeeping broken: final term {final}, expected {remaining}")
            return DerivedSeriesReport(tuple(levels), final, True, False)
        levels.append(DerivedLevel(cur.ngens, len(cur.relators), inv, remaining))
        if remaining % inv.order:
            raise AssertionError(
                f"abelianization order {inv.order} does not divide {remaining}")
        remaining //= inv.order
        if remaining == 1:
            # the commutator subgroup is trivial; no need to rewrite further
            return DerivedSeriesReport(tuple(levels), 1, True, False)
        cur = derived_subgroup_presentation(cur)
    return DerivedSeriesReport(tuple(levels), remaining, False, True)


def quotient_strings(report: DerivedSeriesReport) -> tuple[str, ...]:
    """Render the abelian quotients like ('C6', 'C5', 'C2^4')."""
    out = []
    for lvl in report.levels:
        groups: dict[int, int] = {}
        for d in lvl.invariants.torsion:
            groups[d] = groups.get(d, 0) + 1
        out.append(" x ".join(f"C{d}" if k == 1 else f"C{d}^{k}"
                              for d, k in sorted(groups.items())))
    return tuple(out)


# ---------------------------------------------------------------------------
# Epimorphism search


@dataclass(frozen=True)
class TargetGroup:
    """Finite group given by its multiplication table (0 = identity)."""
    table: tuple[tuple[int, ...], ...]
    name: str = "target"

    def __post_init__(self):
        n = len(self.table)
        for i, row in enumerate(self.table):
            if len(row) != n or sorted(row) != list(range(n)):
                raise ValueError(f"row {i} is not a permutation of 0..{n - 1}")
            if self.table[i][0] != i or self.table[0][i] != i:
                raise ValueError("element 0 must be the identity")

    @property
    def order(self) -> int:
        return len(self.table)

    def inverse(self, x: int) -> int:
        return self.table[x].index(0)

    def element_order(self, x: int) -> int:
        n, cur = 1, x
        while cur != 0:
            cur = self.table[cur][x]
            n += 1
        return n


def dihedral_target(order: int) -> TargetGroup:
    return TargetGroup(tuple(tuple(r) for r in perms.dihedral_table(order)),
                       f"dihedral:{order}")


def _evaluate(word: Word, images, target: TargetGroup) -> int:
    acc = 0
    for x in word.letters:
        img = images[abs(x) - 1]
        acc = target.table[acc][img if x > 0 else target.inverse(img)]
    return acc


def _generates_all(images, target: TargetGroup) -> bool:
    seen = {0}
    frontier = [0]
    gens = set(images) | {target.inverse(i) for i in images}
    while frontier:
        g = frontier.pop()
        for h in gens:
            gh = target.table[g][h]
            if gh not in seen:
                seen.add(gh)
                frontier.append(gh)
    return len(seen) == target.order


def find_epimorphisms(pres: Presentation, target: TargetGroup,
                      guard: int = 10 ** 8) -> list[tuple[int, ...]]:
    """All surjections of the presented group onto the target.

    Backtracking over generator images; a relator is checked as soon as
    every generator it mentions has an image.  Pure power relators g^n
    additionally restrict the image order of g upfront.
    """
    k = pres.ngens
    if target.order ** k > guard:
        raise ValueError(f"search space {target.order}^{k} exceeds guard {guard}")
    by_level: list[list[Word]] = [[] for _ in range(k)]
    for r in pres.relators:
        if r:
            by_level[r.max_index()].append(r)
    allowed: list[list[int]] = []
    for i in range(k):
        choices = list(range(target.order))
        for r in pres.relators:
            support = {abs(x) - 1 for x in r.letters}
            if support == {i}:
                n = abs(sum(1 if x > 0 else -1 for x in r.letters))
                if n:
                    choices = [c for c in choices
                               if n % target.element_order(c) == 0]
        allowed.append(choices)

    found = []
    images = [0] * k

    def descend(level: int):
        if level == k:
            if _generates_all(images, target):
                found.append(tuple(images))
            return
        for c in allowed[level]:
            images[level] = c
            if all(_evaluate(r, images, target) == 0 for r in by_level[level]):
                descend(level + 1)

    descend(0)
    return found


# ---------------------------------------------------------------------------
# Normal subgroups and the infinite-group model


def normal_subgroups_small(generators, max_order: int = 2000):
    """All normal subgroups of the permutation group, with quotient orders."""
    subs = perms.normal_subgroups(generators, max_order)
    total = len(perms.closure(generators, max_order))
    return [(sub, total // len(sub)) for sub in subs]


@dataclass(frozen=True)
class MetacyclicReport:
    relators_die: bool
    kernel_order: int
    projective_order: int

    @property
    def ok(self) -> bool:
        return self.relators_die and self.kernel_order == 5 \
            and self.projective_order == 30


def _model_mul(x, y):
    """(n1,k1)*(n2,k2) in Z acting on Z5 with the Z generator inverting Z5."""
    n1, k1 = x
    n2, k2 = y
    return (n1 + n2, ((k1 if n2 % 2 == 0 else -k1) + k2) % 5)


def _model_inv(x):
    n, k = x
    return (-n, (-k if n % 2 == 0 else k) % 5)


def _model_eval(word: Word, images):
    acc = (0, 0)
    for x in word.letters:
        img = images[abs(x) - 1]
        acc = _model_mul(acc, img if x > 0 else _model_inv(img))
    return acc


def verify_metacyclic_model(max_cosets: int = DEFAULT_MAX_COSETS) -> MetacyclicReport:
    """Check the semidirect-product model of the affine complement group.

    Sends a -> (1, 0) and b -> (1, 1) in Z |x Z5 (conjugation by the Z
    generator inverting Z5) and confirms both relators die, that the
    subgroup generated by b a^-1 and its conjugates has order 5, and that
    adding the relator from the fiber at infinity cuts the group to 30.
    """
    from .catalog import g_affine, g_proj
    pres = g_affine()
    images = [(1, 0), (1, 1)]
    dies = all(_model_eval(r, images) == (0, 0) for r in pres.relators)
    # subgroup generated by b a^-1 together with its conjugates by powers of a
    seed = _model_eval(pres.word("b a^-1"), images)
    gens = {seed, _model_mul(_model_mul((1, 0), seed), (-1, 0))}
    kernel = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        el = frontier.pop()
        for g in gens:
            nxt = _model_mul(el, g)
            if nxt not in kernel:
                kernel.add(nxt)
                frontier.append(nxt)
    order = group_order(g_proj(), max_cosets)
    return MetacyclicReport(dies, len(kernel), order)
