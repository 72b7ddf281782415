"""Abstract separation systems: oriented separations, universes, subsystems.

A :class:`Universe` holds finitely many bipartition-style separations over a
ground set.  An oriented separation is a pair ``(A, B)`` of subsets of the
ground set, stored as bitmasks, with ``A | B`` covering the ground set.
``(A, B) <= (C, D)`` iff ``A`` is contained in ``C`` and ``B`` contains ``D``;
the involution swaps the two sides; join is ``(A u C, B n D)`` and meet its
DeMorgan dual ``(A n C, B u D)``.

Orientations are addressed by integer ids ("oids"), assigned in sorted order
of the side-mask pairs and therefore deterministic.  The unoriented
separation underlying an oid is addressed by the smaller id of its two
orientations (its "uid").  Thin value types :class:`OrientedSep` and
:class:`UnorientedSep` wrap a universe reference and an id and support the
usual operators (``<=``, ``~``, ``|``, ``&``).

Everything here is immutable after construction and all operations are pure
functions, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import SeparationError, UniverseClosureError

__all__ = [
    "Universe",
    "OrientedSep",
    "UnorientedSep",
    "SubSystem",
    "is_nested",
    "corners",
    "from_different_sides",
    "is_small",
    "is_trivial",
    "is_regular",
    "is_structurally_submodular",
]


def bits(mask: int):
    """Yield the set bit positions of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Universe:
    """Finite universe of bipartition-style separations over a ground set.

    ``pairs`` is an iterable of ``(a_mask, b_mask)`` tuples that must be
    closed under swapping sides.  ``order_fn``, if given, maps a mask pair to
    a non-negative number and must be symmetric under the swap.
    """

    def __init__(self, labels, pairs, order_fn: Callable | None = None, kind: str = "custom"):
        self.labels = tuple(labels)
        self.kind = kind
        if len(set(self.labels)) != len(self.labels):
            raise SeparationError("duplicate ground-set labels")
        self._label_bit = {v: i for i, v in enumerate(self.labels)}
        self.full_mask = (1 << len(self.labels)) - 1
        plist = sorted(set(pairs))
        index = {}
        for i, (a, b) in enumerate(plist):
            if a | b != self.full_mask:
                raise SeparationError(f"sides {a:b},{b:b} do not cover the ground set")
            index[(a, b)] = i
        self._pairs = plist
        self._index = index
        try:
            self._inv = tuple(index[(b, a)] for a, b in plist)
        except KeyError as exc:
            raise SeparationError("element set is not closed under inversion") from exc
        if order_fn is None:
            self._order = None
        else:
            vals = tuple(order_fn(a, b) for a, b in plist)
            for i, v in enumerate(vals):
                if v < 0:
                    raise SeparationError("order values must be non-negative")
                if vals[self._inv[i]] != v:
                    raise SeparationError("order function must be symmetric under inversion")
            self._order = vals
        self._uids = tuple(i for i in range(len(plist)) if i <= self._inv[i])
        self._corner_cache: dict[tuple[int, int], frozenset[int]] = {}

    # ------------------------------------------------------------------
    # handles and lookups

    def __len__(self) -> int:
        return len(self._uids)

    @property
    def n_oriented(self) -> int:
        return len(self._pairs)

    @property
    def has_order(self) -> bool:
        return self._order is not None

    def oriented_ids(self):
        return range(len(self._pairs))

    def unoriented_ids(self) -> tuple[int, ...]:
        return self._uids

    def inv(self, oid: int) -> int:
        return self._inv[oid]

    def sides(self, oid: int) -> tuple[int, int]:
        return self._pairs[oid]

    def uid(self, oid: int) -> int:
        j = self._inv[oid]
        return oid if oid <= j else j

    def orientations(self, uid: int) -> tuple[int, int]:
        return uid, self._inv[uid]

    def find(self, a_mask: int, b_mask: int):
        return self._index.get((a_mask, b_mask))

    def order(self, oid: int):
        if self._order is None:
            raise SeparationError("universe has no order function")
        return self._order[oid]

    # ------------------------------------------------------------------
    # order structure

    def leq(self, i: int, j: int) -> bool:
        a1, b1 = self._pairs[i]
        a2, b2 = self._pairs[j]
        return a1 & ~a2 == 0 and b2 & ~b1 == 0

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq(i, j)

    def join(self, i: int, j: int) -> int:
        a1, b1 = self._pairs[i]
        a2, b2 = self._pairs[j]
        key = (a1 | a2, b1 & b2)
        try:
            return self._index[key]
        except KeyError as exc:
            raise UniverseClosureError(f"join of {i} and {j} is not in the universe") from exc

    def meet(self, i: int, j: int) -> int:
        a1, b1 = self._pairs[i]
        a2, b2 = self._pairs[j]
        key = (a1 & a2, b1 | b2)
        try:
            return self._index[key]
        except KeyError as exc:
            raise UniverseClosureError(f"meet of {i} and {j} is not in the universe") from exc

    def is_small(self, oid: int) -> bool:
        return self.leq(oid, self._inv[oid])

    def nested(self, x: int, y: int) -> bool:
        """Whether the separations underlying ``x`` and ``y`` are nested."""
        xi = self._inv[x]
        yi = self._inv[y]
        return self.leq(x, y) or self.leq(x, yi) or self.leq(xi, y) or self.leq(xi, yi)

    def corner_items(self, u: int, v: int) -> list[tuple[tuple[int, int], int]]:
        """The four tagged corner separations of two unoriented separations.

        Tags are ``(dr, ds)`` with 0 for the canonical orientation of the
        argument and 1 for its inverse; the value is the uid underlying the
        join of the tagged orientations.  Duplicates are preserved.
        """
        u = self.uid(u)
        v = self.uid(v)
        out = []
        for dr, i in ((0, u), (1, self._inv[u])):
            for ds, j in ((0, v), (1, self._inv[v])):
                out.append(((dr, ds), self.uid(self.join(i, j))))
        return out

    def corner_uids(self, u: int, v: int) -> frozenset[int]:
        key = (self.uid(u), self.uid(v))
        if key[0] > key[1]:
            key = (key[1], key[0])
        got = self._corner_cache.get(key)
        if got is None:
            got = frozenset(c for _, c in self.corner_items(*key))
            self._corner_cache[key] = got
        return got

    # ------------------------------------------------------------------
    # labels

    def mask_of(self, labels: Iterable) -> int:
        m = 0
        for v in labels:
            try:
                m |= 1 << self._label_bit[v]
            except KeyError as exc:
                raise SeparationError(f"unknown ground-set label {v!r}") from exc
        return m

    def labels_of(self, mask: int) -> tuple:
        return tuple(self.labels[i] for i in bits(mask))

    def side_labels(self, oid: int) -> tuple[tuple, tuple]:
        a, b = self._pairs[oid]
        return self.labels_of(a), self.labels_of(b)

    def sep_from_sides(self, side_a: Iterable, side_b: Iterable) -> "OrientedSep":
        oid = self.find(self.mask_of(side_a), self.mask_of(side_b))
        if oid is None:
            raise SeparationError("no such separation in this universe")
        return OrientedSep(self, oid)

    def osep(self, oid: int) -> "OrientedSep":
        return OrientedSep(self, oid)

    def usep(self, uid: int) -> "UnorientedSep":
        return UnorientedSep(self, self.uid(uid))

    def __repr__(self):
        return f"Universe(kind={self.kind!r}, ground={len(self.labels)}, seps={len(self)})"


def _check_same_universe(*objs) -> Universe:
    u = objs[0].universe
    for o in objs[1:]:
        if o.universe is not u:
            raise SeparationError("separations belong to different universes")
    return u


@dataclass(frozen=True)
class OrientedSep:
    """Handle to one orientation of a separation in a universe."""

    universe: Universe
    oid: int

    def __post_init__(self):
        if not 0 <= self.oid < self.universe.n_oriented:
            raise SeparationError(f"oid {self.oid} out of range")

    @property
    def inverse(self) -> "OrientedSep":
        return OrientedSep(self.universe, self.universe.inv(self.oid))

    @property
    def underlying(self) -> "UnorientedSep":
        return UnorientedSep(self.universe, self.universe.uid(self.oid))

    @property
    def sides(self) -> tuple[tuple, tuple]:
        return self.universe.side_labels(self.oid)

    @property
    def order(self):
        return self.universe.order(self.oid)

    def __invert__(self) -> "OrientedSep":
        return self.inverse

    def __le__(self, other: "OrientedSep") -> bool:
        u = _check_same_universe(self, other)
        return u.leq(self.oid, other.oid)

    def __lt__(self, other: "OrientedSep") -> bool:
        u = _check_same_universe(self, other)
        return u.lt(self.oid, other.oid)

    def __ge__(self, other):
        return other.__le__(self)

    def __gt__(self, other):
        return other.__lt__(self)

    def __or__(self, other: "OrientedSep") -> "OrientedSep":
        u = _check_same_universe(self, other)
        return OrientedSep(u, u.join(self.oid, other.oid))

    def __and__(self, other: "OrientedSep") -> "OrientedSep":
        u = _check_same_universe(self, other)
        return OrientedSep(u, u.meet(self.oid, other.oid))

    def __repr__(self):
        a, b = self.sides
        return f"({set(a) or '{}'}|{set(b) or '{}'})"


@dataclass(frozen=True)
class UnorientedSep:
    """Handle to an unoriented separation (a pair of inverse orientations)."""

    universe: Universe
    uid: int

    def __post_init__(self):
        if not 0 <= self.uid < self.universe.n_oriented:
            raise SeparationError(f"uid {self.uid} out of range")
        if self.universe.uid(self.uid) != self.uid:
            raise SeparationError(f"{self.uid} is not a canonical orientation id")

    @property
    def orientations(self) -> tuple[OrientedSep, OrientedSep]:
        a, b = self.universe.orientations(self.uid)
        return OrientedSep(self.universe, a), OrientedSep(self.universe, b)

    @property
    def order(self):
        return self.universe.order(self.uid)

    def __repr__(self):
        a, b = self.universe.side_labels(self.uid)
        return f"{{{set(a) or '{}'},{set(b) or '{}'}}}"


@dataclass(frozen=True)
class SubSystem:
    """A subset of the unoriented separations of one universe."""

    universe: Universe
    members: frozenset

    def __post_init__(self):
        for m in self.members:
            if not 0 <= m < self.universe.n_oriented or self.universe.uid(m) != m:
                raise SeparationError(f"{m} is not a canonical separation id of this universe")

    @classmethod
    def from_seps(cls, universe: Universe, seps: Iterable) -> "SubSystem":
        ids = set()
        for s in seps:
            if isinstance(s, UnorientedSep):
                if s.universe is not universe:
                    raise SeparationError("separations belong to different universes")
                ids.add(s.uid)
            else:
                ids.add(universe.uid(int(s)))
        return cls(universe, frozenset(ids))

    def __len__(self):
        return len(self.members)

    def __contains__(self, item) -> bool:
        if isinstance(item, UnorientedSep):
            return item.universe is self.universe and item.uid in self.members
        return self.universe.uid(int(item)) in self.members

    def oriented_ids(self) -> list[int]:
        out = []
        for m in sorted(self.members):
            out.append(m)
            j = self.universe.inv(m)
            if j != m:
                out.append(j)
        return out

    def seps(self) -> list[UnorientedSep]:
        return [UnorientedSep(self.universe, m) for m in sorted(self.members)]


# ----------------------------------------------------------------------
# operations from the abstract layer


def is_nested(r: UnorientedSep, s: UnorientedSep) -> bool:
    """Whether some orientations of ``r`` and ``s`` are comparable."""
    u = _check_same_universe(r, s)
    return u.nested(r.uid, s.uid)


def corners(r: UnorientedSep, s: UnorientedSep) -> list[tuple[tuple[int, int], UnorientedSep]]:
    """The four corner separations of ``r`` and ``s``, tagged by orientation pair."""
    u = _check_same_universe(r, s)
    return [(tag, UnorientedSep(u, c)) for tag, c in u.corner_items(r.uid, s.uid)]


def _meet_side(u: Universe, rho: int, s_uid: int) -> set[int]:
    return {u.uid(u.meet(rho, sig)) for sig in u.orientations(s_uid)}


def from_different_sides(
    r: UnorientedSep, s: UnorientedSep, c1: UnorientedSep, c2: UnorientedSep
) -> bool:
    """Whether corners ``c1`` and ``c2`` of ``r`` and ``s`` lie on different sides of ``r``.

    ``c1`` lies on the side of an orientation of ``r`` if it underlies a meet
    of that orientation with an orientation of ``s``; the two corners lie on
    different sides if such witnessing orientations of ``r`` are inverse to
    each other.  ``c1 == c2`` is allowed.
    """
    u = _check_same_universe(r, s, c1, c2)
    cs = u.corner_uids(r.uid, s.uid)
    if c1.uid not in cs or c2.uid not in cs:
        raise SeparationError("c1 and c2 must be corner separations of r and s")
    r0, r1 = u.orientations(r.uid)
    side0 = _meet_side(u, r0, s.uid)
    side1 = _meet_side(u, r1, s.uid)
    return (c1.uid in side0 and c2.uid in side1) or (c1.uid in side1 and c2.uid in side0)


def is_small(s: OrientedSep) -> bool:
    """Whether ``s <= ~s``."""
    return s.universe.is_small(s.oid)


def is_trivial(s: OrientedSep, system: SubSystem) -> bool:
    """Whether ``s`` is strictly below both orientations of some member of ``system``."""
    u = _check_same_universe(s, system)
    for w in system.members:
        w1 = u.inv(w)
        if u.lt(s.oid, w) and u.lt(s.oid, w1):
            return True
    return False


def is_regular(seps: Iterable[UnorientedSep]) -> bool:
    """Whether no element has a small orientation."""
    for s in seps:
        a, b = s.universe.orientations(s.uid)
        if s.universe.is_small(a) or s.universe.is_small(b):
            return False
    return True


def is_structurally_submodular(system: SubSystem) -> bool:
    """Whether every oriented pair of members has its join or meet in the system."""
    u = system.universe
    members = system.members
    oriented = system.oriented_ids()
    for xi, x in enumerate(oriented):
        for y in oriented[xi:]:
            if u.uid(u.join(x, y)) not in members and u.uid(u.meet(x, y)) not in members:
                return False
    return True
