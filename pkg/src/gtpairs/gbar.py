"""Diagonal model group on pair-orbit representatives and double-coset counts.

The model group lives inside G^r, one coordinate per orbit of the outer
automorphisms on pair classes, generated by the tuple of first members and
the tuple of second members.  Elements carry discovery words over the
alphabet {x, y, x^-1, y^-1}, so images under an endomorphism given on the
two generators can be computed by word substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .atlas import ConstructedGroup
from .autgroup import out_representatives
from .pairs import build_pc
from .permcore import (
    DEFAULT_CAP,
    ConjugacyClassTable,
    ElementTable,
    Perm,
    compose,
    conjugate,
    generates,
    identity_perm,
    inverse,
    perm_order,
)


class GbarError(RuntimeError):
    pass


@dataclass
class GbarGroup:
    """The model group with its word table and canonical generators."""

    spec: str
    r: int
    base_degree: int
    degree: int
    x: Perm
    y: Perm
    table: ElementTable
    base_order: int

    @property
    def order(self) -> int:
        return self.table.order


@dataclass
class EndoImages:
    x_image: Perm
    y_image: Perm


@dataclass
class DoubleCosetRep:
    """One double coset with the survival flags of its representative."""

    element: Perm
    word: tuple[int, ...]
    coset_size: int
    generates_model: bool
    theta_ok: bool
    delta_ok: bool

    @property
    def survives(self) -> bool:
        return self.generates_model and self.theta_ok and self.delta_ok


def _embed(p: Perm, w: int, d: int, total: int) -> list[int]:
    out = list(range(w * d, w * d + d))
    for i, j in enumerate(p):
        out[i] = w * d + j
    return out


def build_gbar(group: ConstructedGroup, cap: int = DEFAULT_CAP) -> GbarGroup:
    """Enumerate the model group with words, one window per outer orbit."""
    table = ElementTable(group.generators, group.degree)
    classes = ConjugacyClassTable(table)
    pcset = build_pc(table, classes)
    outs = out_representatives(classes, pcset)
    if pcset.ell % outs.out_order:
        raise GbarError("pair classes do not split evenly into outer orbits")
    seen = [False] * pcset.ell
    reps = []
    for i in range(pcset.ell):
        if seen[i]:
            continue
        orbit = {i}
        queue = [i]
        for p in queue:
            for m in outs.maps:
                g_id, h_id = pcset.reps[p]
                q = pcset.locate(m.images[g_id], m.images[h_id])
                if q not in orbit:
                    orbit.add(q)
                    queue.append(q)
        for q in orbit:
            seen[q] = True
        reps.append(i)
    r = len(reps)
    if r != pcset.ell // outs.out_order:
        raise GbarError("outer orbit count disagrees with the free-action count")
    d = group.degree
    x_parts: list[int] = []
    y_parts: list[int] = []
    for w, i in enumerate(reps):
        g_id, h_id = pcset.reps[i]
        x_parts.extend(_embed(table.elements[g_id], w, d, r * d))
        y_parts.extend(_embed(table.elements[h_id], w, d, r * d))
    x, y = tuple(x_parts), tuple(y_parts)
    gens = [x, y, inverse(x), inverse(y)]
    model = ElementTable(gens, r * d, cap=cap, record_words=True)
    if group.order**r % model.order:
        raise GbarError("model order fails to divide the full power order")
    for w in range(r):
        xs = tuple(x[w * d + i] - w * d for i in range(d))
        ys = tuple(y[w * d + i] - w * d for i in range(d))
        if not generates([xs, ys], d, group.order):
            raise GbarError(f"window {w} projection fails to cover the base group")
    return GbarGroup(
        spec=group.spec,
        r=r,
        base_degree=d,
        degree=r * d,
        x=x,
        y=y,
        table=model,
        base_order=group.order,
    )


def theta_images(gbar: GbarGroup) -> EndoImages:
    return EndoImages(x_image=gbar.y, y_image=gbar.x)


def delta_images(gbar: GbarGroup) -> EndoImages:
    return EndoImages(
        x_image=compose(inverse(gbar.y), inverse(gbar.x)), y_image=gbar.y
    )


def evaluate_endo(gbar: GbarGroup, endo: EndoImages, element: Perm) -> Perm:
    """Substitute the endomorphism images into the element's stored word."""
    letters = [
        endo.x_image,
        endo.y_image,
        inverse(endo.x_image),
        inverse(endo.y_image),
    ]
    acc = identity_perm(gbar.degree)
    for letter in gbar.table.words[gbar.table.index[element]]:
        acc = compose(acc, letters[letter])
    return acc


def _power(p: Perm, k: int) -> Perm:
    acc = identity_perm(len(p))
    base = p
    while k:
        if k & 1:
            acc = compose(acc, base)
        base = compose(base, base)
        k >>= 1
    return acc


def _centralizer(gbar: GbarGroup, a: Perm) -> list[Perm]:
    return [e for e in gbar.table.elements if compose(e, a) == compose(a, e)]


def double_coset_survey(gbar: GbarGroup, k: int = 1) -> list[DoubleCosetRep]:
    """Flag every double coset of the centralizers of the k-th generator powers."""
    xk = _power(gbar.x, k)
    yk = _power(gbar.y, k)
    cx = _centralizer(gbar, xk)
    cy = _centralizer(gbar, yk)
    cy_set = set(cy)
    theta = theta_images(gbar)
    delta = delta_images(gbar)
    prod_inv_k = _power(compose(inverse(gbar.y), inverse(gbar.x)), k)
    yk_inv = inverse(yk)
    visited = [False] * gbar.order
    reps: list[DoubleCosetRep] = []
    covered = 0
    for fid, f in enumerate(gbar.table.elements):
        if visited[fid]:
            continue
        coset = set()
        for s in cx:
            sf = compose(s, f)
            for t in cy:
                coset.add(compose(sf, t))
        for e in coset:
            visited[gbar.table.index[e]] = True
        covered += len(coset)
        xkf = conjugate(xk, f)
        gen_ok = generates([xkf, yk], gbar.degree, gbar.order)
        theta_ok = False
        delta_ok = False
        if gen_ok:
            tf = evaluate_endo(gbar, theta, f)
            for s in cx:
                if compose(compose(tf, s), f) in cy_set:
                    theta_ok = True
                    break
        if gen_ok and theta_ok:
            df = evaluate_endo(gbar, delta, f)
            lhs = conjugate(prod_inv_k, df)
            rhs = compose(yk_inv, inverse(xkf))
            for c in cy:
                if conjugate(lhs, c) == rhs:
                    delta_ok = True
                    break
        reps.append(
            DoubleCosetRep(
                element=f,
                word=gbar.table.words[fid],
                coset_size=len(coset),
                generates_model=gen_ok,
                theta_ok=theta_ok,
                delta_ok=delta_ok,
            )
        )
    if covered != gbar.order:
        raise GbarError("double cosets fail to partition the model group")
    reps.sort(key=lambda rep: (len(rep.word), rep.word))
    return reps


def gt1_order(
    group: ConstructedGroup, cap: int = DEFAULT_CAP
) -> tuple[int, list[DoubleCosetRep]]:
    """Count surviving double cosets for the identity power."""
    gbar = build_gbar(group, cap)
    reps = double_coset_survey(gbar, 1)
    survivors = [rep for rep in reps if rep.survives]
    return len(survivors), survivors


def gt_full_order(group: ConstructedGroup, cap: int = DEFAULT_CAP) -> int:
    """Sum the surviving double cosets over all powers coprime to the order.

    Validated against cyclic targets only; experimental elsewhere.
    """
    gbar = build_gbar(group, cap)
    n = perm_order(gbar.x)
    if perm_order(gbar.y) != n:
        raise GbarError("generator tuples have different orders")
    total = 0
    for k in range(1, n + 1):
        if gcd(k, n) != 1:
            continue
        total += sum(1 for rep in double_coset_survey(gbar, k) if rep.survives)
    return total


def dihedral_closed_form(n: int) -> int:
    """Known count for dihedral groups: trivial exactly when 4 divides n."""
    if n < 3:
        raise ValueError("dihedral groups start at n = 3")
    return 1 if n % 4 == 0 else 2
