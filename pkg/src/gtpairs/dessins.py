"""Combinatorial bipartite maps: monodromy analysis and structure classes.

A dessin is a finite dart set with two permutations acting on it.  Regular
dessins are recognized by their monodromy group acting freely and
transitively; extra structures on a regular dessin are homomorphism images
inside the monodromy group, classified up to the triple isomorphism that
fixes the distinguished pair and conjugates the images.
"""

from __future__ import annotations

from dataclasses import dataclass

from .autgroup import extend_pair_map
from .permcore import (
    DEFAULT_CAP,
    ConjugacyClassTable,
    ElementTable,
    Perm,
    generates,
    orbit,
    parse_cycles,
    transporter_tuple,
)


class DessinError(ValueError):
    pass


@dataclass
class DessinXY:
    """A dart set with its two permutations."""

    darts: int
    x: Perm
    y: Perm

    def __post_init__(self) -> None:
        if len(self.x) != self.darts or len(self.y) != self.darts:
            raise DessinError("permutations must act on exactly the dart set")


@dataclass
class DessinAnalysis:
    """Monodromy facts for one dessin."""

    monodromy_order: int
    transitive: bool
    regular: bool
    table: ElementTable
    pair: tuple[Perm, Perm] | None


@dataclass
class GammaStructure:
    """A generating pair with homomorphism images, all as element ids."""

    table: ElementTable
    g_id: int
    h_id: int
    image_ids: tuple[int, ...]


def load_dessin(path: str) -> DessinXY:
    """Read a dessin file: a darts line, then cycle lines for x and y.

    Blank lines and lines starting with # are ignored.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].lower().startswith("darts"):
        raise DessinError(f"{path}: first line must be 'darts N'")
    try:
        darts = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise DessinError(f"{path}: malformed darts line {lines[0]!r}") from None
    if darts < 1:
        raise DessinError(f"{path}: dart count must be positive")
    if len(lines) != 3:
        raise DessinError(f"{path}: expected exactly two permutation lines")
    return DessinXY(
        darts=darts,
        x=parse_cycles(lines[1], darts),
        y=parse_cycles(lines[2], darts),
    )


def analyze_dessin(d: DessinXY, cap: int = DEFAULT_CAP) -> DessinAnalysis:
    """Compute the monodromy group and the regularity verdict."""
    table = ElementTable([d.x, d.y], d.darts, cap=cap)
    transitive = len(orbit([d.x, d.y], 0)) == d.darts
    regular = transitive and table.order == d.darts
    return DessinAnalysis(
        monodromy_order=table.order,
        transitive=transitive,
        regular=regular,
        table=table,
        pair=(d.x, d.y) if regular else None,
    )


def triple_isomorphic(
    classes: ConjugacyClassTable, t1: GammaStructure, t2: GammaStructure
) -> bool:
    """Decide isomorphism of two structure triples over one group.

    The unique candidate map sends the first pair to the second; it must be
    an automorphism, and a single conjugator must carry the mapped images
    onto the images of the second structure simultaneously.
    """
    if t1.table is not t2.table or classes.table is not t1.table:
        raise DessinError("triples must live over one shared group table")
    if len(t1.image_ids) != len(t2.image_ids):
        raise DessinError("structures declare different generator counts")
    alpha = extend_pair_map(t1.table, (t1.g_id, t1.h_id), (t2.g_id, t2.h_id))
    if alpha is None:
        return False
    moved = tuple(alpha.images[i] for i in t1.image_ids)
    return transporter_tuple(classes, t2.image_ids, moved) is not None


def cyclic_structure(
    table: ElementTable, g_id: int, h_id: int, n: int, z_id: int
) -> GammaStructure:
    """Build a one-generator structure after checking the order relation."""
    if n < 1:
        raise DessinError("cyclic order must be positive")
    if n % table.element_order(z_id):
        raise DessinError("structure element order does not divide n")
    return GammaStructure(table=table, g_id=g_id, h_id=h_id, image_ids=(z_id,))


def cyclic_structures(
    classes: ConjugacyClassTable, pair: tuple[int, int], n: int
) -> list[GammaStructure]:
    """Class representatives of the order-dividing-n structures on a pair."""
    table = classes.table
    g_id, h_id = pair
    gens = [table.elements[g_id], table.elements[h_id]]
    if not generates(gens, table.degree, table.order):
        raise DessinError("the pair must generate the group")
    reps: list[GammaStructure] = []
    for z in range(table.order):
        if n % table.element_order(z):
            continue
        cand = cyclic_structure(table, g_id, h_id, n, z)
        if not any(triple_isomorphic(classes, cand, rep) for rep in reps):
            reps.append(cand)
    return reps
