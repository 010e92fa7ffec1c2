"""Finitely presented groups: generator names plus relator words.

Relators are stored cyclically reduced.  The text format understood by
`parse_presentation` is: first non-comment line `gens: a b g d`, then one
relator per line in `parse_word` syntax; `#` starts a comment.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .words import Word, format_word, free_reduce, gen, identity, parse_word


@dataclass(frozen=True, slots=True)
class Presentation:
    names: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        rels = []
        for r in self.relators:
            r = r.cyclically_reduced()
            if r.max_index() >= len(names):
                raise ValueError(f"relator uses generator index {r.max_index()} "
                                 f"but only {len(names)} generators declared")
            rels.append(r)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def ngens(self) -> int:
        return len(self.names)

    def relator_matrix(self) -> list[list[int]]:
        """Exponent-sum matrix, one row per relator."""
        return [r.exponent_sums(self.ngens) for r in self.relators]

    def with_relator(self, w: Word) -> "Presentation":
        return replace(self, relators=self.relators + (w,))

    def word(self, text: str) -> Word:
        return parse_word(text, self.names)

    def __str__(self) -> str:
        return serialize_presentation(self)


def presentation(names_text: str, *relator_texts: str) -> Presentation:
    names = tuple(names_text.split())
    return Presentation(names, tuple(parse_word(t, names) for t in relator_texts))


def parse_presentation(text: str) -> Presentation:
    names = None
    relators = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if names is None:
            if not line.startswith("gens:"):
                raise ValueError("first line must be 'gens: <name> <name> ...'")
            names = tuple(line[len("gens:"):].split())
            if not names:
                raise ValueError("no generators declared")
            continue
        relators.append(parse_word(line, names))
    if names is None:
        raise ValueError("empty presentation file")
    return Presentation(names, tuple(relators))


def serialize_presentation(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.names)]
    lines += [format_word(r, p.names) for r in p.relators]
    return "\n".join(lines) + "\n"


def _substitute(w: Word, images: dict[int, Word]) -> Word:
    """Replace each generator index in `images` by its image word."""
    out: list[int] = []
    for x in w.letters:
        i = abs(x) - 1
        if i in images:
            img = images[i] if x > 0 else images[i].inverse()
            out.extend(img.letters)
        else:
            out.append(x)
    return Word(tuple(out))


def _drop_generator(p: Presentation, i: int, new_relators) -> Presentation:
    """Renumber generators after deleting index i (words must not use i)."""
    names = p.names[:i] + p.names[i + 1:]
    abs_i = i + 1

    def shift(w: Word) -> Word:
        return Word(tuple(x - 1 if x > abs_i else (x + 1 if x < -abs_i else x)
                          for x in w.letters))

    return Presentation(names, tuple(shift(r) for r in new_relators))


def eliminate_generator(p: Presentation, gen_name: str,
                        relator_index: int | None = None) -> Presentation:
    """Tietze elimination of a generator occurring exactly once in some relator.

    The chosen relator is solved for the generator and the solution is
    substituted into all other relators; the relator and generator are
    removed.  Raises ValueError when no relator isolates the generator.
    """
    i = p.names.index(gen_name)
    target = abs(i + 1)
    candidates = [k for k, r in enumerate(p.relators)
                  if sum(1 for x in r.letters if abs(x) == target) == 1]
    if relator_index is None:
        if not candidates:
            raise ValueError(f"no relator contains {gen_name!r} exactly once")
        relator_index = min(candidates, key=lambda k: len(p.relators[k]))
    elif relator_index not in candidates:
        raise ValueError(f"relator {relator_index} does not isolate {gen_name!r}")
    r = p.relators[relator_index]
    pos = next(k for k, x in enumerate(r.letters) if abs(x) == target)
    # cyclic shift so the isolated letter comes first: r ~ x^s * w  =>  x^s = w^-1
    rot = Word(r.letters[pos:] + r.letters[:pos])
    head, tail = rot.letters[0], Word(rot.letters[1:])
    image = tail.inverse() if head > 0 else tail
    images = {i: image}
    new_relators = [_substitute(rel, images)
                    for k, rel in enumerate(p.relators) if k != relator_index]
    return _drop_generator(p, i, new_relators)


def _least_rotation(s: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically least rotation (Booth's algorithm, O(n))."""
    n = len(s)
    s2 = s + s
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s2[j]
        i = f[j - k - 1]
        while i != -1 and sj != s2[k + i + 1]:
            if sj < s2[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s2[k + i + 1]:
            if sj < s2[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return s2[k:k + n]


def _relator_key(w: Word) -> tuple[int, ...]:
    """Canonical form of a relator up to cyclic rotation and inversion."""
    ls = w.cyclically_reduced().letters
    if not ls:
        return ()
    return min(_least_rotation(ls),
               _least_rotation(tuple(-x for x in reversed(ls))))


def simplify_presentation(p: Presentation) -> Presentation:
    """Cheap growth-free simplification, iterated to a fixed point.

    Moves: cyclic/free reduction, duplicate relator removal (up to rotation
    and inversion), deletion of generators forced trivial by a length-1
    relator, merging of generators identified by a length-2 relator, and
    removal of a generator occurring exactly once in the whole relator set
    together with its defining relator.  Generators mentioned in no relator
    are retained (they are free factors).
    """
    while True:
        next_p = _simplify_pass(p)
        if next_p.names == p.names and next_p.relators == p.relators:
            return next_p
        p = next_p


def _simplify_pass(p: Presentation) -> Presentation:
    # dedupe relators up to rotation/inversion, drop empty ones
    seen = {}
    for r in p.relators:
        key = _relator_key(r)
        if key and key not in seen:
            seen[key] = Word(key)
    p = Presentation(p.names, tuple(seen.values()))

    # a length-1 relator forces its generator to be the identity
    for r in p.relators:
        if len(r) == 1:
            i = abs(r.letters[0]) - 1
            killed = [Word(tuple(x for x in rel.letters if abs(x) != i + 1))
                      for rel in p.relators if rel is not r]
            return _drop_generator(p, i, killed)

    # a length-2 relator on two distinct generators identifies them
    for r in p.relators:
        if len(r) == 2:
            x, y = r.letters
            if abs(x) == abs(y):
                continue  # g^2-type relators carry torsion, not a merge
            i = abs(y) - 1  # relator x*y = 1  =>  gen(|y|) = (part before)^-1
            img = gen(abs(x) - 1) if (x > 0) == (y < 0) else gen(abs(x) - 1).inverse()
            rest = [_substitute(rel, {i: img}) for rel in p.relators if rel is not r]
            return _drop_generator(p, i, rest)

    # a generator occurring exactly once in the whole relator set is defined
    # by its relator and occurs nowhere else: drop both
    counts = [0] * p.ngens
    for r in p.relators:
        for x in r.letters:
            counts[abs(x) - 1] += 1
    for i, c in enumerate(counts):
        if c == 1:
            k = next(k for k, r in enumerate(p.relators)
                     if any(abs(x) == i + 1 for x in r.letters))
            rest = [r for j, r in enumerate(p.relators) if j != k]
            return _drop_generator(p, i, rest)

    return p


def total_length(p: Presentation) -> int:
    return sum(len(r) for r in p.relators)


def _dedupe_exact(p: Presentation) -> Presentation:
    seen = dict.fromkeys(r.letters for r in p.relators if r)
    return Presentation(p.names, tuple(Word(k) for k in seen))


def reduce_presentation(p: Presentation, length_cap: int | None = None) -> Presentation:
    """Shrink a presentation by Tietze generator eliminations.

    Repeatedly eliminates a generator that occurs exactly once in some
    relator (substituting the solved word everywhere else), choosing the
    candidate with the smallest estimated length growth, as long as the
    total relator length stays under `length_cap` (default: a generous
    multiple of the input length).  Rewritten-subgroup presentations
    collapse by orders of magnitude under this; without it the derived
    series lower terms are untractably bloated.
    """
    if length_cap is None:
        length_cap = max(6 * total_length(p), total_length(p) + 4000)
    p = simplify_presentation(p)
    while True:
        best = None
        counts = [0] * p.ngens
        for r in p.relators:
            for x in r.letters:
                counts[abs(x) - 1] += 1
        for k, r in enumerate(p.relators):
            per: dict[int, int] = {}
            for x in r.letters:
                per[abs(x) - 1] = per.get(abs(x) - 1, 0) + 1
            for i, c in per.items():
                if c == 1:
                    cost = (counts[i] - 1) * (len(r) - 2) - len(r)
                    if best is None or cost < best[0]:
                        best = (cost, i, k)
        if best is None or total_length(p) + best[0] > length_cap:
            return simplify_presentation(p)
        _, i, k = best
        p = _dedupe_exact(eliminate_generator(p, p.names[i], k))
