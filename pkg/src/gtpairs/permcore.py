"""Permutation arithmetic, Schreier-Sims chains, element and conjugacy tables.

Permutations are tuples of images on 0..degree-1.  The action is on the
right: i^(p*q) = (i^p)^q, so compose(p, q)[i] = q[p[i]].  All text I/O
(cycle notation) is 1-based.
"""

from __future__ import annotations

import re
from math import lcm

Perm = tuple[int, ...]

DEFAULT_CAP = 10**6


class CycleFormatError(ValueError):
    pass


class EnumerationCapError(RuntimeError):
    pass


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply p, then q."""
    return tuple(q[i] for i in p)


def compose_many(*perms: Perm) -> Perm:
    """Apply the given permutations left to right."""
    out = perms[0]
    for p in perms[1:]:
        out = tuple(p[i] for i in out)
    return out


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, img in enumerate(p):
        out[img] = i
    return tuple(out)


def conjugate(a: Perm, b: Perm) -> Perm:
    """Return a^b = b^-1 * a * b."""
    binv = inverse(b)
    return compose(binv, compose(a, b))


def is_identity(p: Perm) -> bool:
    return all(i == img for i, img in enumerate(p))


def perm_order(p: Perm) -> int:
    cycs = cycles(p)
    return lcm(*(len(c) for c in cycs)) if cycs else 1


def cycles(p: Perm) -> list[tuple[int, ...]]:
    """Nontrivial cycles of p, each starting at its smallest point, sorted."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = p[i]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Cycle lengths of p including fixed points, descending."""
    lens = [len(c) for c in cycles(p)]
    lens += [1] * (len(p) - sum(lens))
    return tuple(sorted(lens, reverse=True))


_CYCLE_BODY_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse 1-based cycle notation like "(1,2,3)(4,5)" or "()"."""
    s = text.strip()
    if not s:
        raise CycleFormatError("empty permutation string")
    if _CYCLE_BODY_RE.sub("", s).strip():
        raise CycleFormatError(f"stray characters outside cycles in {text!r}")
    images = list(range(degree))
    seen: set[int] = set()
    for body in _CYCLE_BODY_RE.findall(s):
        toks = [tok for tok in re.split(r"[\s,;]+", body) if tok]
        if not toks:
            continue
        try:
            points = [int(tok) - 1 for tok in toks]
        except ValueError:
            raise CycleFormatError(f"non-integer entry in cycle ({body})") from None
        for pt in points:
            if not 0 <= pt < degree:
                raise CycleFormatError(
                    f"point {pt + 1} outside 1..{degree} in {text!r}"
                )
            if pt in seen:
                raise CycleFormatError(f"point {pt + 1} repeated in {text!r}")
            seen.add(pt)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a] = b
    return tuple(images)


def format_cycles(p: Perm) -> str:
    cycs = cycles(p)
    if not cycs:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cycs)


def orbit(generators: list[Perm], point: int) -> list[int]:
    """Orbit of a point in BFS discovery order."""
    seen = {point}
    queue = [point]
    for pt in queue:
        for g in generators:
            img = g[pt]
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return queue


class PermGroupBSGS:
    """Deterministic Schreier-Sims chain giving exact order and membership.

    If stop_order is given, generator processing halts as soon as the chain
    order reaches it; callers use this for generation tests where every
    generator is known to lie in a group of that order.
    """

    def __init__(
        self,
        generators: list[Perm],
        degree: int,
        stop_order: int | None = None,
    ):
        self.degree = degree
        self.generators = [tuple(g) for g in generators]
        self._ident = identity_perm(degree)
        self.base: list[int] = []
        self._sgs: list[list[Perm]] = []  # _sgs[i] fixes base[:i]; nested
        self._transversals: list[dict[int, Perm]] = []
        for g in self.generators:
            if not is_identity(g):
                self._add_generator(g)
            if stop_order is not None and self.order == stop_order:
                break

    @property
    def order(self) -> int:
        n = 1
        for t in self._transversals:
            n *= len(t)
        return n

    def contains(self, p: Perm) -> bool:
        if len(p) != self.degree:
            return False
        residue, _ = self._strip(tuple(p), 0)
        return is_identity(residue)

    def _strip(self, p: Perm, level: int) -> tuple[Perm, int]:
        for i in range(level, len(self.base)):
            pt = p[self.base[i]]
            t = self._transversals[i]
            if pt not in t:
                return p, i
            p = compose(p, inverse(t[pt]))
        return p, len(self.base)

    def _add_generator(self, g: Perm) -> None:
        residue, lvl = self._strip(g, 0)
        if is_identity(residue):
            return
        self._insert(residue, lvl)
        # re-verify every level made dirty by the insert, deepest first
        i = lvl
        while i >= 0:
            j = self._verify_level(i)
            i = j if j is not None else i - 1

    def _insert(self, g: Perm, level: int) -> None:
        """Register g, which fixes base[:level], at levels 0..level."""
        if level == len(self.base):
            moved = next(i for i in range(self.degree) if g[i] != i)
            self.base.append(moved)
            self._sgs.append([])
            self._transversals.append({moved: self._ident})
        for i in range(level + 1):
            self._sgs[i].append(g)

    def _verify_level(self, level: int) -> int | None:
        """Sift the level's Schreier generators; on failure insert the residue
        and return its level, on success return None."""
        self._rebuild_transversal(level)
        t = self._transversals[level]
        for pt in list(t):
            u = t[pt]
            for s in self._sgs[level]:
                w = compose(compose(u, s), inverse(t[s[pt]]))
                if is_identity(w):
                    continue
                residue, j = self._strip(w, level + 1)
                if not is_identity(residue):
                    self._insert(residue, j)
                    return j
        return None

    def _rebuild_transversal(self, level: int) -> None:
        b = self.base[level]
        t = {b: self._ident}
        queue = [b]
        for pt in queue:
            u = t[pt]
            for s in self._sgs[level]:
                img = s[pt]
                if img not in t:
                    t[img] = compose(u, s)
                    queue.append(img)
        self._transversals[level] = t


def generates(generators: list[Perm], degree: int, target_order: int) -> bool:
    """Test whether generators known to lie in a group of target_order span it."""
    return PermGroupBSGS(generators, degree, stop_order=target_order).order == target_order


class ElementTable:
    """Full element list of a permutation group in BFS discovery order.

    Generators are explored in declared order, so element numbering is
    deterministic.  Optionally records, for each element, a shortest word in
    the generators (as a tuple of generator indices) found by the BFS.
    """

    def __init__(
        self,
        generators: list[Perm],
        degree: int,
        cap: int = DEFAULT_CAP,
        record_words: bool = False,
    ):
        self.degree = degree
        self.generators = [tuple(g) for g in generators]
        ident = identity_perm(degree)
        self.elements: list[Perm] = [ident]
        self.index: dict[Perm, int] = {ident: 0}
        self.words: list[tuple[int, ...]] | None = [()] if record_words else None
        for e in self.elements:
            base_word = self.words[self.index[e]] if record_words else None
            for gi, g in enumerate(self.generators):
                n = compose(e, g)
                if n not in self.index:
                    self.index[n] = len(self.elements)
                    self.elements.append(n)
                    if record_words:
                        self.words.append(base_word + (gi,))
                    if len(self.elements) > cap:
                        raise EnumerationCapError(
                            f"element enumeration passed {cap} elements "
                            f"(partial count {len(self.elements)}); "
                            "raise --cap to allow a larger group"
                        )
        self._inverse_ids: list[int] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.index[compose(self.elements[i], self.elements[j])]

    def inverse_id(self, i: int) -> int:
        if self._inverse_ids is None:
            self._inverse_ids = [self.index[inverse(e)] for e in self.elements]
        return self._inverse_ids[i]

    def element_order(self, i: int) -> int:
        return perm_order(self.elements[i])


class ConjugacyClassTable:
    """Conjugacy classes of an ElementTable with per-element transporters.

    transporters[e] is a permutation t with rep^t = element e, where rep is
    the class representative; every transporter is re-verified by
    recomposition during construction.
    """

    def __init__(self, table: ElementTable):
        self.table = table
        n = table.order
        self.class_of = [-1] * n
        self.reps: list[int] = []
        self.sizes: list[int] = []
        self.transporters: list[Perm] = [()] * n
        ident = identity_perm(table.degree)
        for start in range(n):
            if self.class_of[start] != -1:
                continue
            cid = len(self.reps)
            self.reps.append(start)
            self.class_of[start] = cid
            self.transporters[start] = ident
            queue = [start]
            for e in queue:
                t = self.transporters[e]
                pe = table.elements[e]
                for g in table.generators:
                    img = table.index[conjugate(pe, g)]
                    if self.class_of[img] == -1:
                        self.class_of[img] = cid
                        self.transporters[img] = compose(t, g)
                        queue.append(img)
            self.sizes.append(len(queue))
        for e in range(n):
            rep = table.elements[self.reps[self.class_of[e]]]
            if conjugate(rep, self.transporters[e]) != table.elements[e]:
                raise RuntimeError("conjugacy transporter failed recomposition")
        self.center_ids = sorted(
            self.reps[c] for c in range(len(self.reps)) if self.sizes[c] == 1
        )
        self.max_class_size = max(self.sizes)
        self._centralizers: dict[int, list[int]] = {}

    @property
    def num_classes(self) -> int:
        return len(self.reps)

    def centralizer_ids(self, e: int) -> list[int]:
        """Element ids commuting with element e, ascending."""
        cached = self._centralizers.get(e)
        if cached is not None:
            return cached
        pe = self.table.elements[e]
        out = [
            f
            for f, pf in enumerate(self.table.elements)
            if compose(pe, pf) == compose(pf, pe)
        ]
        self._centralizers[e] = out
        return out


def transporter_pair(
    classes: ConjugacyClassTable,
    pair_a: tuple[int, int],
    pair_b: tuple[int, int],
) -> Perm | None:
    """A permutation conjugating one element pair onto another, if one exists.

    Pairs are element ids of the underlying table.  Any solution of
    a^t = a' lies in the coset C(a) * t0, so those are scanned for one that
    also moves b to b'.
    """
    a, b = pair_a
    a2, b2 = pair_b
    if classes.class_of[a] != classes.class_of[a2]:
        return None
    table = classes.table
    t0 = compose(inverse(classes.transporters[a]), classes.transporters[a2])
    pb = table.elements[b]
    pb2 = table.elements[b2]
    for c in classes.centralizer_ids(a):
        t = compose(table.elements[c], t0)
        if conjugate(pb, t) == pb2:
            return t
    return None


def transporter_tuple(
    classes: ConjugacyClassTable,
    tup_a: tuple[int, ...],
    tup_b: tuple[int, ...],
) -> Perm | None:
    """Simultaneous conjugator for two equal-length element-id tuples."""
    if len(tup_a) != len(tup_b):
        raise ValueError("tuples must have equal length")
    if not tup_a:
        return identity_perm(classes.table.degree)
    a, a2 = tup_a[0], tup_b[0]
    if classes.class_of[a] != classes.class_of[a2]:
        return None
    table = classes.table
    t0 = compose(inverse(classes.transporters[a]), classes.transporters[a2])
    rest_a = [table.elements[e] for e in tup_a[1:]]
    rest_b = [table.elements[e] for e in tup_b[1:]]
    for c in classes.centralizer_ids(a):
        t = compose(table.elements[c], t0)
        if all(conjugate(pa, t) == pb for pa, pb in zip(rest_a, rest_b)):
            return t
    return None
