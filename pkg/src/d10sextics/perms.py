"""Concrete finite-group machinery on permutations and multiplication tables.

Permutations are tuples p with p[i] = image of i; products apply the left
factor first, matching the right action of coset tables.
"""
from __future__ import annotations

from collections import deque


def perm_identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def perm_mul(p, q) -> tuple[int, ...]:
    """Apply p, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def perm_inverse(p) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_order(p) -> int:
    n, q, e = 1, p, perm_identity(len(p))
    while q != e:
        q = perm_mul(q, p)
        n += 1
    return n


def closure(generators, max_size: int | None = None) -> list[tuple[int, ...]]:
    """All elements of the group generated by the given permutations (BFS)."""
    if not generators:
        raise ValueError("need at least one generator (or pass the identity)")
    e = perm_identity(len(generators[0]))
    seen = {e: 0}
    elements = [e]
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for h in generators:
            gh = perm_mul(g, h)
            if gh not in seen:
                if max_size is not None and len(elements) >= max_size:
                    raise ValueError(f"group size exceeds guard {max_size}")
                seen[gh] = len(elements)
                elements.append(gh)
                queue.append(gh)
    return elements


def center_elements(generators, max_size: int = 10 ** 5) -> list[tuple[int, ...]]:
    """Elements commuting with every generator, by full enumeration."""
    elements = closure(generators, max_size)
    return [g for g in elements
            if all(perm_mul(g, h) == perm_mul(h, g) for h in generators)]


def is_abelian(generators) -> bool:
    return all(perm_mul(g, h) == perm_mul(h, g)
               for i, g in enumerate(generators) for h in generators[i + 1:])


def conjugacy_classes(elements) -> list[frozenset]:
    elem_set = set(elements)
    assigned: set = set()
    classes = []
    for g in elements:
        if g in assigned:
            continue
        cls = {perm_mul(perm_mul(perm_inverse(h), g), h) for h in elem_set}
        classes.append(frozenset(cls))
        assigned |= cls
    return classes


def _subgroup_closure(elements_subset, universe_size_guard=None) -> frozenset:
    """Closure of a subset (containing the identity's group) under products."""
    current = set(elements_subset)
    queue = deque(current)
    while queue:
        g = queue.popleft()
        for h in list(current):
            for prod in (perm_mul(g, h), perm_mul(h, g)):
                if prod not in current:
                    current.add(prod)
                    queue.append(prod)
    return frozenset(current)


def normal_subgroups(generators, max_order: int = 2000) -> list[frozenset]:
    """All normal subgroups, by closing unions of conjugacy classes.

    Every normal subgroup is generated by the classes it contains, so the
    iterative closure of (known normal subgroup) + (one more class) finds
    the whole lattice.  Returns frozensets of elements, sorted by size.
    """
    elements = closure(generators, max_order)
    e = perm_identity(len(generators[0]))
    classes = conjugacy_classes(elements)
    found = {frozenset([e])}
    frontier = [frozenset([e])]
    while frontier:
        new_frontier = []
        for n in frontier:
            for cls in classes:
                if cls <= n:
                    continue
                extended = _subgroup_closure(n | cls)
                if extended not in found:
                    found.add(extended)
                    new_frontier.append(extended)
        frontier = new_frontier
    return sorted(found, key=len)


def quotient_table(elements, normal: frozenset) -> list[list[int]]:
    """Multiplication table of G/N; element 0 is the identity coset."""
    index = {g: i for i, g in enumerate(elements)}
    coset_of = {}
    cosets = []
    for g in elements:
        if index[g] in coset_of:
            continue
        coset = frozenset(perm_mul(g, n) for n in normal)
        k = len(cosets)
        cosets.append(coset)
        for h in coset:
            coset_of[index[h]] = k
    # renumber so the identity coset comes first
    e = perm_identity(len(elements[0]))
    id_coset = coset_of[index[e]]
    relabel = {id_coset: 0}
    for k in range(len(cosets)):
        if k != id_coset:
            relabel[k] = len(relabel)
    reps = [None] * len(cosets)
    for g in elements:
        k = relabel[coset_of[index[g]]]
        if reps[k] is None:
            reps[k] = g
    table = [[relabel[coset_of[index[perm_mul(a, b)]]] for b in reps] for a in reps]
    return table


def table_is_abelian(table) -> bool:
    n = len(table)
    return all(table[i][j] == table[j][i] for i in range(n) for j in range(n))


def table_derived_subgroup(table) -> frozenset:
    """Elements of the derived subgroup of a group given by its table."""
    n = len(table)
    inv = [0] * n
    for i in range(n):
        for j in range(n):
            if table[i][j] == 0:
                inv[i] = j
    comms = {table[table[i][j]][table[inv[i]][inv[j]]]
             for i in range(n) for j in range(n)}
    current = set(comms) | {0}
    changed = True
    while changed:
        changed = False
        for a in list(current):
            for b in list(current):
                c = table[a][b]
                if c not in current:
                    current.add(c)
                    changed = True
    return frozenset(current)


def dihedral_table(n: int) -> list[list[int]]:
    """Multiplication table of the dihedral group of order n (n even, >= 2).

    Elements 0..n/2-1 are rotations r^k, elements n/2..n-1 are reflections
    s r^k.
    """
    if n < 2 or n % 2:
        raise ValueError("dihedral order must be even and >= 2")
    m = n // 2

    def mul(x, y):
        xr, xs = x % m, x >= m
        yr, ys = y % m, y >= m
        if not ys:
            return (xr + yr) % m + (m if xs else 0)
        if not xs:
            return (yr - xr) % m + m
        return (yr - xr) % m

    return [[mul(x, y) for y in range(n)] for x in range(n)]


def cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def direct_product_table(t1, t2) -> list[list[int]]:
    n1, n2 = len(t1), len(t2)

    def mul(x, y):
        a1, a2 = divmod(x, n2)
        b1, b2 = divmod(y, n2)
        return t1[a1][b1] * n2 + t2[a2][b2]

    return [[mul(x, y) for y in range(n1 * n2)] for x in range(n1 * n2)]
