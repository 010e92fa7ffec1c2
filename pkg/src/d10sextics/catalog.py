"""Built-in presentations for the eight dihedral-quotient sextic families.

Each entry records the presentation of the group of the complement of the
branch data upstairs (generators a, b, g, d for the four loops in a generic
fiber, d the loop around the section), the method by which the plane-sextic
group downstairs is obtained, and the expected outcome.

Generator order within each entry follows the fiber order in which the
loops were chosen (a b d g for 4A4+2A1, a b g d for the A9+2A4+A2 chain,
a d b g for 2A9); the relator coming from the fiber at infinity multiplies
the generators in exactly that order.

Commutator convention: [x, y] = x y x^-1 y^-1 (only ever asserted = 1, so
the choice is inessential; it is fixed here once).
"""
from __future__ import annotations

from dataclasses import dataclass

from .presentations import Presentation, presentation
from .words import Word, parse_word

DELTA = "d"

# conjugated generators appearing in the inflection-family relators
D1 = "((g d g) d (g d g)^-1)"
B2 = "((a g d^-1 g^-1) b (a g d^-1 g^-1)^-1)"


@dataclass(frozen=True)
class Expected:
    """Outcome to reproduce: group order and derived-series shape.

    `order` is None for groups expected infinite.  `quotients` lists the
    abelian factors of the derived series top-down; `final_order` is the
    order of the term the series stops at (1 when it reaches the trivial
    group, or the order of a nontrivial perfect term).
    """
    order: int | None
    quotients: tuple[str, ...] = ()
    final_order: int = 1
    final_perfect: bool = False
    d10_quotient: bool = True


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    method: str  # "direct" | "centrality" | "perturbation"
    expected: Expected
    presentation: Presentation | None = None
    partial: bool = False  # printed relator list known to be incomplete
    centrality_facts: tuple[str, ...] = ()  # commutator words making d central
    assumed_facts: tuple[str, ...] = ()  # subset of the above not derivable
    perturbation_source: str | None = None
    notes: tuple[str, ...] = ()


def quotient_order(q: str) -> int:
    """Order of an abelian factor written like 'C6' or 'C2^4'."""
    base, _, exp = q[1:].partition("^")
    return int(base) ** (int(exp) if exp else 1)


def _pres_4a4_2a1() -> Presentation:
    return presentation(
        "a b d g",
        "(a b)^2 a (b (a b)^2)^-1",            # from the cusp F5
        "[b, d]",                               # from F4
        "[g, d]",                               # from F6
        "(a d)^2 ((d a)^2)^-1",                 # from F3
        "(a^-1 d a b)^2 ((b a^-1 d a)^2)^-1",   # from F2
        "g^-1 (a^-1 d a)^-1 b (a^-1 d a)",      # from the tangent F1
        "g^-1 a b a^-1 g ((a b) a (a b)^-1)^-1",  # from the tangent F7
        "(a b d g)^2",                          # patching the fiber at infinity
    )


def _pres_a9_chain(third: str, fourth_fifth: tuple[str, ...]) -> Presentation:
    relators = (
        "b g^-1",                       # from the tangent F4
        "[a, g d g^-1]",                # from F3
        third,                          # from F5
        *fourth_fifth,                  # from the cusp F6
        f"({B2} g)^2 {B2} (g ({B2} g)^2)^-1",  # from the cusp F2
        "(a b g d)^2",                  # patching the fiber at infinity
    )
    return presentation("a b g d", *relators)


def _pres_a9_2a4_a2() -> Presentation:
    return _pres_a9_chain(
        "(g d)^3 ((d g)^3)^-1",
        (f"[a b, {D1}]", f"{D1} (a b)^2 a (b (a b)^2 {D1})^-1"),
    )


def _pres_a9_2a4_a1() -> Presentation:
    # simple tangency instead of inflection tangency: (gd)^3=(dg)^3 -> [g,d]=1
    return _pres_a9_chain(
        "[g, d]",
        (f"[a b, {D1}]", f"{D1} (a b)^2 a (b (a b)^2 {D1})^-1"),
    )


def _pres_4a4_a2() -> Presentation:
    # cusp pass split into two transversal points: the F6 relators decouple
    return _pres_a9_chain(
        "(g d)^3 ((d g)^3)^-1",
        (f"[a, {D1}]", f"[b, {D1}]", "(a b)^2 a (b (a b)^2)^-1"),
    )


def _pres_2a9_partial() -> Presentation:
    return presentation("a d b g", "[g, b]", "b g^-1", "[d, a]")


def g_affine() -> Presentation:
    """Group of the complement of the branch curve in the affine part.

    Two generators survive eliminating the fiber bases; the two relators
    come from the right cusp and the left vertical tangent.
    """
    return presentation(
        "a b",
        "(a b)^2 a (b (a b)^2)^-1",
        "a b a^-1 b a b (b a b a)^-1",
    )


def g_proj() -> Presentation:
    """g_affine plus the relator from patching the fiber at infinity.

    The three fiber generators multiply to a b^2 after the tangency
    identification, so the extra relator is (a b^2)^2.
    """
    return g_affine().with_relator(parse_word("(a b^2)^2", ("a", "b")))


FAMILY_ORDER = (
    "4A4", "4A4+A1", "4A4+2A1", "4A4+A2",
    "A9+2A4", "A9+2A4+A1", "A9+2A4+A2", "2A9",
)

AUXILIARY_ORDER = ("G_affine", "G_proj")

_D10xC3 = Expected(order=30, quotients=("C6", "C5"))


def catalog() -> list[CatalogEntry]:
    entries = [
        CatalogEntry(
            name="4A4",
            method="centrality",
            expected=_D10xC3,
            centrality_facts=("[d, a]", "[d, b]", "[d, g]"),
            assumed_facts=("[d, a]", "[d, b]", "[d, g]"),
            notes=("section transversal to the branch curve; the loop around "
                   "it commutes with everything, no relator list needed",),
        ),
        CatalogEntry(
            name="4A4+A1",
            method="perturbation",
            expected=_D10xC3,
            perturbation_source="A9+2A4+A1",
        ),
        CatalogEntry(
            name="4A4+2A1",
            method="direct",
            expected=Expected(order=960, quotients=("C6", "C5", "C2^4", "C2")),
            presentation=_pres_4a4_2a1(),
        ),
        CatalogEntry(
            name="4A4+A2",
            method="direct",
            expected=_D10xC3,
            presentation=_pres_4a4_a2(),
        ),
        CatalogEntry(
            name="A9+2A4",
            method="perturbation",
            expected=_D10xC3,
            perturbation_source="2A9",
        ),
        CatalogEntry(
            name="A9+2A4+A1",
            method="direct",
            expected=_D10xC3,
            presentation=_pres_a9_2a4_a1(),
        ),
        CatalogEntry(
            name="A9+2A4+A2",
            method="direct",
            expected=Expected(order=21600, quotients=("C6", "C5"),
                              final_order=720, final_perfect=True),
            presentation=_pres_a9_2a4_a2(),
        ),
        CatalogEntry(
            name="2A9",
            method="centrality",
            expected=_D10xC3,
            presentation=_pres_2a9_partial(),
            partial=True,
            centrality_facts=("[d, a]", "[d, b]", "[d, g]"),
            assumed_facts=("[d, b]", "[d, g]"),
            notes=("relator list incomplete (cusp-fiber relations never "
                   "printed); centrality of d recorded as an assumption",),
        ),
        CatalogEntry(
            name="G_affine",
            method="direct",
            expected=Expected(order=None, quotients=(), d10_quotient=True),
            presentation=g_affine(),
            notes=("infinite: semidirect product of Z acting on Z5 by "
                   "inversion; abelianization is free of rank 1",),
        ),
        CatalogEntry(
            name="G_proj",
            method="direct",
            expected=_D10xC3,
            presentation=g_proj(),
        ),
    ]
    if len({e.name for e in entries}) != len(entries):
        raise AssertionError("catalog names must be unique")
    return entries


def catalog_entry(name: str) -> CatalogEntry:
    for e in catalog():
        if e.name == name:
            return e
    raise KeyError(f"no catalog entry named {name!r}")


def centrality_fact_words(entry: CatalogEntry) -> list[Word]:
    if entry.presentation is not None:
        names = entry.presentation.names
    else:
        names = ("a", "b", "g", "d")
    return [parse_word(t, names) for t in entry.centrality_facts]
