"""Generating pairs of a finite group up to conjugation.

A pair class is the conjugation orbit of an ordered generating pair (g, h).
Classes are canonically numbered: sweep conjugacy classes of g in table
order; within one sweep, h runs over element ids ascending and a whole
C(g)-orbit of h is settled by a single generation test.  The canonical
representative of a class is (class rep of g, smallest h in its C(g)-orbit).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .permcore import (
    ConjugacyClassTable,
    ElementTable,
    Perm,
    compose,
    conjugate,
    generates,
    inverse,
    orbit,
)


class PairLookupError(KeyError):
    pass


@dataclass
class PcSet:
    """Classes of generating pairs under conjugation."""

    table: ElementTable
    classes: ConjugacyClassTable
    reps: list[tuple[int, int]]
    g_class: list[int]
    h_class: list[int]
    _lookup: list[list[int]]  # per g-conjugacy-class: h id -> pc index or -1

    @property
    def ell(self) -> int:
        return len(self.reps)

    def locate(self, g: int, h: int) -> int:
        """Pair-class index of a generating pair, by conjugating g to its rep."""
        cid = self.classes.class_of[g]
        t_inv = inverse(self.classes.transporters[g])
        h_moved = self.table.index[conjugate(self.table.elements[h], t_inv)]
        idx = self._lookup[cid][h_moved]
        if idx < 0:
            raise PairLookupError(f"pair ({g}, {h}) does not generate the group")
        return idx


_SWEEP_STATE: dict = {}


def _init_sweep(table: ElementTable, classes: ConjugacyClassTable, transitive: bool) -> None:
    _SWEEP_STATE["table"] = table
    _SWEEP_STATE["classes"] = classes
    _SWEEP_STATE["transitive"] = transitive


def _sweep_class(cid: int) -> tuple[list[int], list[int]]:
    """Settle all pairs (rep of class cid, h); returns (h reps, h -> local idx)."""
    table: ElementTable = _SWEEP_STATE["table"]
    classes: ConjugacyClassTable = _SWEEP_STATE["classes"]
    transitive: bool = _SWEEP_STATE["transitive"]
    n = table.order
    degree = table.degree
    g_id = classes.reps[cid]
    g_perm = table.elements[g_id]
    cent = [table.elements[c] for c in classes.centralizer_ids(g_id)]
    cent_invs = [inverse(c) for c in cent]
    assign = [-1] * n
    local_reps: list[int] = []
    for h in range(n):
        if assign[h] != -1:
            continue
        h_perm = table.elements[h]
        orbit_ids = set()
        for c, ci in zip(cent, cent_invs):
            orbit_ids.add(table.index[compose(ci, compose(h_perm, c))])
        if transitive and len(orbit([g_perm, h_perm], 0)) != degree:
            gen = False
        else:
            gen = generates([g_perm, h_perm], degree, n)
        if gen:
            mark = len(local_reps)
            local_reps.append(h)
        else:
            mark = -2
        for e in orbit_ids:
            assign[e] = mark
    return local_reps, assign


def build_pc(
    table: ElementTable,
    classes: ConjugacyClassTable,
    threads: int = 1,
) -> PcSet:
    """Enumerate pair classes; one generation test per C(g)-orbit of h."""
    transitive = (
        len(orbit(table.generators, 0)) == table.degree if table.generators else False
    )
    cids = list(range(classes.num_classes))
    if threads > 1:
        with ProcessPoolExecutor(
            max_workers=threads,
            initializer=_init_sweep,
            initargs=(table, classes, transitive),
        ) as pool:
            swept = list(pool.map(_sweep_class, cids))
    else:
        _init_sweep(table, classes, transitive)
        swept = [_sweep_class(c) for c in cids]
    reps: list[tuple[int, int]] = []
    g_class: list[int] = []
    h_class: list[int] = []
    lookup: list[list[int]] = []
    for cid, (local_reps, assign) in zip(cids, swept):
        offset = len(reps)
        g_id = classes.reps[cid]
        for h in local_reps:
            reps.append((g_id, h))
            g_class.append(cid)
            h_class.append(classes.class_of[h])
        lookup.append([a + offset if a >= 0 else a for a in assign])
    return PcSet(table, classes, reps, g_class, h_class, lookup)


@dataclass
class InducedPerms:
    """The involutions theta, delta and the outer maps as permutations of
    pair-class indices."""

    theta: Perm
    delta: Perm
    out_perms: list[Perm]


def induced_perms(pcset: PcSet, out_maps: list) -> InducedPerms:
    """Permutations induced on pair classes by swapping, inversion shift, and
    each outer representative."""
    table = pcset.table
    theta = []
    delta = []
    for (g, h) in pcset.reps:
        theta.append(pcset.locate(h, g))
        gh_inv = table.inverse_id(table.mul(g, h))
        delta.append(pcset.locate(gh_inv, h))
    outs = []
    for m in out_maps:
        outs.append(tuple(pcset.locate(m.images[g], m.images[h]) for (g, h) in pcset.reps))
    return InducedPerms(tuple(theta), tuple(delta), outs)


@dataclass
class BlockPartition:
    """Pair classes grouped by the conjugacy classes of their two members."""

    block_of: list[int]
    blocks: list[list[int]]
    keys: list[tuple[int, int]]


def block_partition(pcset: PcSet) -> BlockPartition:
    block_ids: dict[tuple[int, int], int] = {}
    block_of = []
    blocks: list[list[int]] = []
    keys: list[tuple[int, int]] = []
    for i in range(pcset.ell):
        key = (pcset.g_class[i], pcset.h_class[i])
        bid = block_ids.get(key)
        if bid is None:
            bid = len(blocks)
            block_ids[key] = bid
            blocks.append([])
            keys.append(key)
        block_of.append(bid)
        blocks[bid].append(i)
    return BlockPartition(block_of, blocks, keys)
