"""Symmetries of the pair-class set that commute with the induced actions.

The permutations of {0..ell-1} commuting with every induced permutation and
mapping each block of the (class(g), class(h)) partition onto itself form a
product of wreath factors E wr Sym(s), one per packet of equivalent orbits.
This module computes that decomposition exactly and provides a brute-force
oracle for tiny instances.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import factorial

from .pairs import InducedPerms
from .permcore import Perm, compose, identity_perm, inverse, is_identity
from .structure import (
    FactoredOrder,
    GroupFingerprint,
    PermListTable,
    composition_factors_small,
    product_fingerprint,
    simple_factor_order,
    simple_factors_of_symmetric,
    sort_factor_labels,
    wreath_fingerprint,
)

GENERATOR_EMIT_LIMIT = 2000
DEFAULT_BRUTE_BUDGET = 10**7


class SgBudgetError(RuntimeError):
    pass


@dataclass
class HAction:
    """Enumerated closure of the induced permutations on pair-class indices."""

    ell: int
    gens: list[tuple[str, Perm]]
    elements: list[Perm]
    index: dict[Perm, int]
    mul_idx: list[list[int]]
    inv_idx: list[int]

    @property
    def size(self) -> int:
        return len(self.elements)


def build_haction(induced: InducedPerms) -> HAction:
    gens = [(f"out:{i}", p) for i, p in enumerate(induced.out_perms)]
    gens.append(("theta", induced.theta))
    gens.append(("delta", induced.delta))
    ell = len(induced.theta)
    ident = identity_perm(ell)
    elements = [ident]
    index = {ident: 0}
    for e in elements:
        for _, g in gens:
            n = compose(e, g)
            if n not in index:
                index[n] = len(elements)
                elements.append(n)
    if len(elements) > 6 * len(induced.out_perms):
        raise RuntimeError("induced action closure exceeded six per outer class")
    mul_idx = [
        [index[compose(a, b)] for b in elements] for a in elements
    ]
    inv_idx = [index[inverse(e)] for e in elements]
    return HAction(ell, gens, elements, index, mul_idx, inv_idx)


@dataclass
class HOrbit:
    points: list[int]
    base: int
    stabilizer: frozenset[int]


def h_orbits(h: HAction) -> list[HOrbit]:
    """Orbits on {0..ell-1} in ascending base order, with exact stabilizers."""
    seen = [False] * h.ell
    out = []
    for p in range(h.ell):
        if seen[p]:
            continue
        pts = sorted({e[p] for e in h.elements})
        for q in pts:
            seen[q] = True
        stab = frozenset(i for i, e in enumerate(h.elements) if e[p] == p)
        if len(pts) * len(stab) != len(h.elements):
            raise RuntimeError("orbit size times stabilizer size is not the group size")
        out.append(HOrbit(pts, p, stab))
    return out


def _point_stabilizer(h: HAction, q: int) -> frozenset[int]:
    return frozenset(i for i, e in enumerate(h.elements) if e[q] == q)


def _equivariant_map(h: HAction, o1: HOrbit, q: int) -> dict[int, int]:
    """The map sending e(base of o1) to e(q) for every e in the closure."""
    bij: dict[int, int] = {}
    for e in h.elements:
        src, dst = e[o1.base], e[q]
        prior = bij.get(src)
        if prior is None:
            bij[src] = dst
        elif prior != dst:
            raise RuntimeError("equivariant map is not well defined")
    return bij


def orbit_equivalence(
    h: HAction, o1: HOrbit, o2: HOrbit, block_of: list[int]
) -> dict[int, int] | None:
    """Equivariant block-respecting bijection from o1 onto o2, if one exists."""
    if len(o1.points) != len(o2.points):
        return None
    for q in o2.points:
        if _point_stabilizer(h, q) != o1.stabilizer:
            continue
        bij = _equivariant_map(h, o1, q)
        if all(block_of[src] == block_of[dst] for src, dst in bij.items()):
            return bij
    return None


def _self_equivalences(h: HAction, orbit: HOrbit, block_of: list[int]) -> list[Perm]:
    """All equivariant block-respecting self-bijections of an orbit, as local perms."""
    pos = {p: i for i, p in enumerate(orbit.points)}
    out = []
    for q in orbit.points:
        if _point_stabilizer(h, q) != orbit.stabilizer:
            continue
        bij = _equivariant_map(h, orbit, q)
        if all(block_of[src] == block_of[dst] for src, dst in bij.items()):
            out.append(tuple(pos[bij[p]] for p in orbit.points))
    known = set(out)
    for a in out:
        for b in out:
            if compose(a, b) not in known:
                raise RuntimeError("self-equivalence set is not closed")
    return out


@dataclass
class WreathFactor:
    """One packet: s equivalent orbits sharing the self-equivalence group E."""

    points: list[int]
    e_elements: list[Perm]
    s: int
    member_orbits: list[int]
    bijections: list[dict[int, int]]

    @property
    def e_order(self) -> int:
        return len(self.e_elements)

    def factor_order(self) -> FactoredOrder:
        return (
            FactoredOrder.of(self.e_order)
            .power(self.s)
            .times(FactoredOrder.of_factorial(self.s))
        )


@dataclass
class PacketDecomposition:
    orbits: list[HOrbit]
    factors: list[WreathFactor]
    coarse_partition: list[list[int]]
    exact_partition: list[list[int]]


def _canonical_stabilizer_key(h: HAction, stab: frozenset[int]) -> tuple[int, ...]:
    best = None
    for g in range(len(h.elements)):
        ginv = h.inv_idx[g]
        conj = tuple(sorted(h.mul_idx[h.mul_idx[ginv][s]][g] for s in stab))
        if best is None or conj < best:
            best = conj
    return best


def packet_decomposition(h: HAction, block_of: list[int]) -> PacketDecomposition:
    """Group the orbits into packets of equivalent orbits and compute each E."""
    orbits = h_orbits(h)
    coarse_groups: dict[tuple, list[int]] = {}
    for idx, o in enumerate(orbits):
        profile = tuple(sorted(Counter(block_of[p] for p in o.points).values()))
        key = (_canonical_stabilizer_key(h, o.stabilizer), profile)
        coarse_groups.setdefault(key, []).append(idx)
    coarse_partition = list(coarse_groups.values())
    classes: list[tuple[list[int], list[dict[int, int]]]] = []
    for group in coarse_partition:
        local: list[tuple[list[int], list[dict[int, int]]]] = []
        for idx in group:
            for members, bijections in local:
                bij = orbit_equivalence(h, orbits[members[0]], orbits[idx], block_of)
                if bij is not None:
                    members.append(idx)
                    bijections.append(bij)
                    break
            else:
                ident = {p: p for p in orbits[idx].points}
                local.append(([idx], [ident]))
        classes.extend(local)
    classes.sort(key=lambda cls: orbits[cls[0][0]].base)
    factors = []
    for members, bijections in classes:
        rep = orbits[members[0]]
        e_elements = _self_equivalences(h, rep, block_of)
        factors.append(
            WreathFactor(
                points=rep.points,
                e_elements=e_elements,
                s=len(members),
                member_orbits=members,
                bijections=bijections,
            )
        )
    exact_partition = [f.member_orbits for f in factors]
    return PacketDecomposition(orbits, factors, coarse_partition, exact_partition)


def _lift_local(perm: Perm, points: list[int], ell: int) -> Perm:
    arr = list(range(ell))
    for i, p in enumerate(points):
        arr[p] = points[perm[i]]
    return tuple(arr)


def assemble_generators(
    decomp: PacketDecomposition, h: HAction, block_of: list[int]
) -> list[Perm]:
    """Explicit generators on {0..ell-1}: E on one orbit plus member swaps."""
    gens = []
    for f in decomp.factors:
        for loc in f.e_elements:
            if is_identity(loc):
                continue
            gens.append(_lift_local(loc, f.points, h.ell))
        for i in range(1, f.s):
            prev, cur = f.bijections[i - 1], f.bijections[i]
            arr = list(range(h.ell))
            for p in f.points:
                u, v = prev[p], cur[p]
                arr[u] = v
                arr[v] = u
            gens.append(tuple(arr))
    for g in gens:
        for _, hp in h.gens:
            if compose(g, hp) != compose(hp, g):
                raise RuntimeError("emitted generator fails to commute")
        if any(block_of[g[p]] != block_of[p] for p in range(h.ell)):
            raise RuntimeError("emitted generator moves a point across blocks")
    return gens


@dataclass
class SgReport:
    factored_order: FactoredOrder
    simple_factors: list[str]
    packets: list[dict]
    fingerprint: GroupFingerprint
    generators: list[Perm] | None
    coarse_partition: list[list[int]]
    exact_partition: list[list[int]]
    num_orbits: int

    @property
    def order(self) -> int:
        return self.factored_order.value()


def sg_report(
    decomp: PacketDecomposition, h: HAction, block_of: list[int]
) -> SgReport:
    factored = FactoredOrder()
    simple: list[str] = []
    packets = []
    for f in decomp.factors:
        factored = factored.times(f.factor_order())
        e_table = PermListTable(f.e_elements)
        simple += composition_factors_small(e_table) * f.s
        simple += simple_factors_of_symmetric(f.s)
        packets.append(
            {"e_order": f.e_order, "s": f.s, "orbit_size": len(f.points)}
        )
    simple = sort_factor_labels(simple)
    check = FactoredOrder()
    for label in simple:
        check = check.times(simple_factor_order(label))
    if check != factored:
        raise RuntimeError("simple factor orders do not multiply to the order")
    with_hist = set(factored.factors) <= {2}
    fingerprint = product_fingerprint(
        [
            wreath_fingerprint(PermListTable(f.e_elements), f.s, histogram=with_hist)
            for f in decomp.factors
        ],
        histogram=with_hist,
    )
    if fingerprint.order != factored.value():
        raise RuntimeError("fingerprint order disagrees with factored order")
    generators = None
    if h.ell <= GENERATOR_EMIT_LIMIT:
        generators = assemble_generators(decomp, h, block_of)
    return SgReport(
        factored_order=factored,
        simple_factors=simple,
        packets=packets,
        fingerprint=fingerprint,
        generators=generators,
        coarse_partition=decomp.coarse_partition,
        exact_partition=decomp.exact_partition,
        num_orbits=len(decomp.orbits),
    )


def brute_force_sg(
    h: HAction, block_of: list[int], budget: int = DEFAULT_BRUTE_BUDGET
) -> list[Perm]:
    """Filter the whole block-wise symmetric group by commutation, exhaustively."""
    blocks: dict[int, list[int]] = {}
    for p in range(h.ell):
        blocks.setdefault(block_of[p], []).append(p)
    block_lists = list(blocks.values())
    total = 1
    for pts in block_lists:
        total *= factorial(len(pts))
        if total > budget:
            raise SgBudgetError(
                f"brute-force search space exceeds budget {budget}"
            )
    out = []
    for combo in itertools.product(
        *(list(itertools.permutations(pts)) for pts in block_lists)
    ):
        arr = list(range(h.ell))
        for pts, images in zip(block_lists, combo):
            for src, dst in zip(pts, images):
                arr[src] = dst
        g = tuple(arr)
        if all(compose(g, hp) == compose(hp, g) for _, hp in h.gens):
            out.append(g)
    return out
