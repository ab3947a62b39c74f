"""Explicit finite matrix groups over cyclotomic integers.

Closure from generators, conjugacy classes, centralizers, the action of an
outer symmetry by conjugation, and counting of invariant classes.  Groups are
immutable after closure; every query is a pure function of the stored data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Callable, Optional, Sequence

from .exactmath import CycloInt, cyclo_div_exact

__all__ = [
    "GroupElement",
    "FiniteMatrixGroup",
    "ConjClassSet",
    "OuterAction",
    "close_group",
    "conjugacy_classes",
    "centralizer",
    "outer_action",
    "invariant_class_count",
    "compatible_class_filter",
    "CapExceeded",
    "ElementNotInGroup",
    "NotNormalizing",
    "StabilizerNotSubgroup",
]


class CapExceeded(RuntimeError):
    """Closure grew past the configured cap (group too large or not finite)."""


class ElementNotInGroup(ValueError):
    pass


class NotNormalizing(ValueError):
    """Conjugation by the proposed symmetry leaves the group."""


class StabilizerNotSubgroup(ValueError):
    pass


def _as_cyclo(x) -> CycloInt:
    return x if isinstance(x, CycloInt) else CycloInt.from_int(int(x))


@dataclass(frozen=True)
class GroupElement:
    """Square invertible matrix of cyclotomic integers.

    The canonical key is the conductor-lifted entry coefficient sequence; it
    drives equality, ordering, and the deterministic element order of a group.
    """

    n: int
    conductor: int
    entries: tuple[tuple[CycloInt, ...], ...]

    @staticmethod
    def from_matrix(rows: Sequence[Sequence], conductor: Optional[int] = None) -> GroupElement:
        ent = [[_as_cyclo(x) for x in row] for row in rows]
        n = len(ent)
        if any(len(r) != n for r in ent):
            raise ValueError("matrix must be square")
        m = conductor or 1
        for row in ent:
            for x in row:
                m = lcm(m, x.conductor)
        ent = tuple(tuple(x.lift(m) for x in row) for row in ent)
        return GroupElement(n, m, ent)

    @staticmethod
    def identity(n: int, conductor: int = 1) -> GroupElement:
        one = CycloInt.from_int(1, conductor)
        zero = CycloInt.from_int(0, conductor)
        return GroupElement(
            n, conductor, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        )

    def lift(self, conductor: int) -> GroupElement:
        if conductor == self.conductor:
            return self
        return GroupElement(
            self.n, conductor, tuple(tuple(x.lift(conductor) for x in row) for row in self.entries)
        )

    def try_to_conductor(self, conductor: int) -> Optional[GroupElement]:
        """Rewrite entries at another conductor; None if any entry is outside."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor == 0:
            return self.lift(conductor)
        rows = []
        for row in self.entries:
            out = []
            for x in row:
                r = x.try_reduce(conductor)
                if r is None:
                    return None
                out.append(r)
            rows.append(tuple(out))
        return GroupElement(self.n, conductor, tuple(rows))

    def key(self) -> tuple:
        return tuple(x.coeffs for row in self.entries for x in row)

    def is_diagonal(self) -> bool:
        return all(
            self.entries[i][j].is_zero() for i in range(self.n) for j in range(self.n) if i != j
        )

    def mul(self, other: GroupElement) -> GroupElement:
        assert self.conductor == other.conductor and self.n == other.n
        n = self.n
        if self.is_diagonal() and other.is_diagonal():
            zero = CycloInt.from_int(0, self.conductor)
            ent = tuple(
                tuple(
                    self.entries[i][i] * other.entries[i][i] if i == j else zero for j in range(n)
                )
                for i in range(n)
            )
            return GroupElement(n, self.conductor, ent)
        ent = tuple(
            tuple(
                sum(
                    (self.entries[i][k] * other.entries[k][j] for k in range(n)),
                    CycloInt.from_int(0, self.conductor),
                )
                for j in range(n)
            )
            for i in range(n)
        )
        return GroupElement(n, self.conductor, ent)

    def det(self) -> CycloInt:
        return _det(self.entries, self.conductor)

    def scale(self, c: CycloInt) -> GroupElement:
        c = c.lift(self.conductor)
        return GroupElement(
            self.n, self.conductor, tuple(tuple(c * x for x in row) for row in self.entries)
        )

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        m = lcm(self.conductor, other.conductor)
        return self.lift(m).key() == other.lift(m).key()

    __hash__ = None  # type: ignore[assignment]


def _det(entries, conductor: int) -> CycloInt:
    n = len(entries)
    if n == 0:
        return CycloInt.from_int(1, conductor)
    if n == 1:
        return entries[0][0]
    out = CycloInt.from_int(0, conductor)
    for j in range(n):
        if entries[0][j].is_zero():
            continue
        minor = tuple(row[:j] + row[j + 1 :] for row in entries[1:])
        term = entries[0][j] * _det(minor, conductor)
        out = out + (term if j % 2 == 0 else -term)
    return out


def _adjugate(g: GroupElement) -> GroupElement:
    n = g.n
    cof = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = tuple(r[:i] + r[i + 1 :] for k, r in enumerate(g.entries) if k != j)
            d = _det(minor, g.conductor)
            row.append(d if (i + j) % 2 == 0 else -d)
        cof.append(tuple(row))
    return GroupElement(n, g.conductor, tuple(cof))


Normalizer = Callable[[GroupElement], GroupElement]


def scalar_normalize(g: GroupElement) -> GroupElement:
    """Canonical representative of a projective class of a matrix of roots of unity.

    Multiplies by the unique scalar root of unity making the first nonzero
    diagonal entry equal to one.  Realizes faithfully-acting quotients of
    diagonal symmetry groups as honest matrix groups.
    """
    for i in range(g.n):
        d = g.entries[i][i]
        if not d.is_zero():
            order = d.root_of_unity_order()
            if order is None:
                raise ValueError("diagonal entry is not a root of unity")
            if order == 1:
                return g
            inv = d ** (order - 1)
            return g.scale(inv)
    raise ValueError("matrix has no nonzero diagonal entry")


@dataclass(frozen=True)
class FiniteMatrixGroup:
    """Closed matrix group with elements ordered by canonical key.

    The multiplication table maps index pairs to indices; inverses are read
    off the table.  An optional normalizer realizes a projective quotient by
    mapping every raw product to its canonical representative.
    """

    elements: tuple[GroupElement, ...]
    table: tuple[tuple[int, ...], ...]
    identity_index: int
    normalizer: Optional[Normalizer] = None
    _inverse: tuple[int, ...] = field(default=())

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self._inverse[i]

    def conj(self, i: int, by: int) -> int:
        return self.mul(self.mul(by, i), self.inv(by))

    def index_of(self, g: GroupElement) -> int:
        m = self.elements[0].conductor if self.elements else g.conductor
        cand = g.try_to_conductor(m)
        if cand is not None:
            idx = self._key_index().get(cand.key())
            if idx is not None:
                return idx
        raise ElementNotInGroup("element is not in the group")

    def contains(self, g: GroupElement) -> bool:
        try:
            self.index_of(g)
            return True
        except (ElementNotInGroup, ValueError):
            return False

    def _key_index(self) -> dict:
        cache = getattr(self, "_key_cache", None)
        if cache is None:
            cache = {e.key(): i for i, e in enumerate(self.elements)}
            object.__setattr__(self, "_key_cache", cache)
        return cache

    def is_abelian(self) -> bool:
        return all(
            self.table[i][j] == self.table[j][i]
            for i in range(self.order)
            for j in range(i + 1, self.order)
        )

    def subgroup(self, indices) -> FiniteMatrixGroup:
        """Subgroup on a closed subset of element indices, reindexed by key."""
        idx = sorted(set(indices), key=lambda i: self.elements[i].key())
        pos = {g: k for k, g in enumerate(idx)}
        for i in idx:
            for j in idx:
                if self.table[i][j] not in pos:
                    raise StabilizerNotSubgroup("subset is not closed under products")
        table = tuple(tuple(pos[self.table[i][j]] for j in idx) for i in idx)
        elements = tuple(self.elements[i] for i in idx)
        ident = pos[self.identity_index]
        inv = tuple(pos[self.inv(i)] for i in idx)
        return FiniteMatrixGroup(elements, table, ident, self.normalizer, inv)

    def element_orders(self) -> list[int]:
        out = []
        for i in range(self.order):
            k, x = 1, i
            while x != self.identity_index:
                x = self.mul(x, i)
                k += 1
            out.append(k)
        return out


def close_group(
    generators: Sequence[GroupElement],
    cap: int = 10_000,
    normalizer: Optional[Normalizer] = None,
) -> FiniteMatrixGroup:
    """Smallest matrix group containing the generators.

    Breadth-first closure under right multiplication; raises CapExceeded when
    the element count passes the cap.  Element order is by canonical key, so
    the result is independent of generator order.
    """
    if not generators:
        raise ValueError("at least one generator required")
    n = generators[0].n
    m = 1
    for g in generators:
        if g.n != n:
            raise ValueError("generators must share a dimension")
        m = lcm(m, g.conductor)
    gens = [g.lift(m) for g in generators]
    if normalizer is not None:
        gens = [normalizer(g) for g in gens]
    for g in gens:
        if g.det().is_zero():
            raise ValueError("generators must be invertible")

    ident = GroupElement.identity(n, m)
    if normalizer is not None:
        ident = normalizer(ident)
    seen = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                p = x.mul(g)
                if normalizer is not None:
                    p = normalizer(p)
                if p.key() not in seen:
                    if len(seen) >= cap:
                        raise CapExceeded(f"closure exceeded cap of {cap}")
                    seen[p.key()] = p
                    nxt.append(p)
        frontier = nxt

    elements = tuple(sorted(seen.values(), key=lambda e: e.key()))
    index = {e.key(): i for i, e in enumerate(elements)}
    table = []
    for a in elements:
        row = []
        for b in elements:
            p = a.mul(b)
            if normalizer is not None:
                p = normalizer(p)
            row.append(index[p.key()])
        table.append(tuple(row))
    table = tuple(table)
    identity_index = index[ident.key()]
    inverse = [0] * len(elements)
    for i in range(len(elements)):
        for j in range(len(elements)):
            if table[i][j] == identity_index:
                inverse[i] = j
                break
    return FiniteMatrixGroup(elements, table, identity_index, normalizer, tuple(inverse))


@dataclass(frozen=True)
class ConjClassSet:
    """Partition of a group's element indices into conjugacy classes."""

    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    def class_of(self, index: int) -> int:
        for k, cl in enumerate(self.classes):
            if index in cl:
                return k
        raise ValueError("index outside partition")


def conjugacy_classes(group: FiniteMatrixGroup) -> ConjClassSet:
    """Exact conjugacy classes; representatives are the minimal canonical keys."""
    n = group.order
    remaining = set(range(n))
    classes = []
    while remaining:
        a = min(remaining)
        orbit = {group.conj(a, b) for b in range(n)}
        remaining -= orbit
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=lambda cl: group.elements[cl[0]].key())
    reps = tuple(cl[0] for cl in classes)
    return ConjClassSet(tuple(classes), reps)


def centralizer(group: FiniteMatrixGroup, x) -> FiniteMatrixGroup:
    """Subgroup of elements commuting with x (an element or an index)."""
    i = x if isinstance(x, int) else group.index_of(x)
    members = [c for c in range(group.order) if group.mul(c, i) == group.mul(i, c)]
    return group.subgroup(members)


@dataclass(frozen=True)
class OuterAction:
    """Conjugation action of a normalizing element h on a group.

    h need not belong to the group; it must map the element set to itself by
    conjugation.  Stores the induced permutations of elements and of classes.
    """

    group: FiniteMatrixGroup
    h: GroupElement
    element_perm: tuple[int, ...]
    classes: ConjClassSet
    class_perm: tuple[int, ...]


def outer_action(group: FiniteMatrixGroup, h: GroupElement) -> OuterAction:
    """Build the conjugation action g -> h g h^-1, checking every element."""
    m = lcm(group.elements[0].conductor, h.conductor)
    hh = h.lift(m)
    det = hh.det()
    if det.is_zero():
        raise ValueError("symmetry must be invertible")
    adj = _adjugate(hh)
    perm = []
    for e in group.elements:
        num = hh.mul(e.lift(m)).mul(adj)
        ent = []
        for row in num.entries:
            out_row = []
            for x in row:
                q = cyclo_div_exact(x, det)
                if q is None:
                    raise NotNormalizing("conjugate has non-integral entries")
                out_row.append(q)
            ent.append(tuple(out_row))
        cand = GroupElement.from_matrix(ent)
        if group.normalizer is not None:
            cand = group.normalizer(cand)
        try:
            perm.append(group.index_of(cand))
        except ElementNotInGroup:
            raise NotNormalizing("conjugate falls outside the group") from None
    if sorted(perm) != list(range(group.order)):
        raise NotNormalizing("conjugation is not a bijection of the element set")

    classes = conjugacy_classes(group)
    class_perm = []
    for cl in classes.classes:
        image = {perm[i] for i in cl}
        class_perm.append(next(k for k, c in enumerate(classes.classes) if image == set(c)))
    return OuterAction(group, h, tuple(perm), classes, tuple(class_perm))


def invariant_class_count(action: OuterAction) -> int:
    """Number of conjugacy classes fixed setwise by the action."""
    return sum(1 for k, img in enumerate(action.class_perm) if k == img)


def class_in_subgroup_invariant(
    action: OuterAction, sub: FiniteMatrixGroup, element_index: int
) -> bool:
    """Is the conjugacy class of the element inside sub invariant under h?

    Both the element index and the subgroup refer back to the ambient group.
    """
    group = action.group
    g = group.elements[element_index]
    gi = sub.index_of(g)
    cls = {sub.conj(gi, s) for s in range(sub.order)}
    cls_ambient = {group.index_of(sub.elements[i]) for i in cls}
    image = {action.element_perm[i] for i in cls_ambient}
    return image == cls_ambient


def compatible_class_filter(
    group: FiniteMatrixGroup,
    action: OuterAction,
    stabilizers: Sequence[FiniteMatrixGroup] = (),
) -> set[int]:
    """Classes compatible with the outer symmetry across the supplied stabilizers.

    A class qualifies when it is h-invariant in the ambient group and, for
    every supplied h-invariant stabilizer containing its elements, the class
    inside that stabilizer is h-invariant as well.  For abelian groups this
    reduces to the elements fixed by conjugation.
    """
    amb_indices = []
    for s in stabilizers:
        try:
            idx = frozenset(group.index_of(e) for e in s.elements)
        except ElementNotInGroup:
            raise StabilizerNotSubgroup("stabilizer contains elements outside the group") from None
        amb_indices.append((s, idx))

    out = set()
    for k, cl in enumerate(action.classes.classes):
        if action.class_perm[k] != k:
            continue
        ok = True
        for g in cl:
            for s, idx in amb_indices:
                image = {action.element_perm[i] for i in idx}
                if image != idx:
                    continue  # only h-invariant stabilizers constrain membership
                if g in idx and not class_in_subgroup_invariant(action, s, g):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(k)
    return out
