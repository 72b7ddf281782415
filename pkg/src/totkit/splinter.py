"""Splinter predicates and nested-transversal extraction.

An indexed family assigns a non-empty set of separations of one universe to
each key, optionally with a level value per key and a strict partial order
on keys.  The two extraction routines implement the inductive arguments
behind the two main lemmas directly:

* :func:`extract_transversal` picks one element per set, pairwise nested,
  whenever the family splinters; tie-breaking is fixed to canonical id
  order, so runs are reproducible but not isomorphism-invariant.
* :func:`extract_canonical` returns a nested set meeting every member set
  whenever the family splinters hierarchically; it makes no arbitrary
  choices at all, and commutes with every isomorphism of separation systems
  that preserves the family.

Every run re-verifies its own output (nested, meets every set) and raises
instead of returning an unverified result.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    HierarchicalConditionError,
    InternalContradictionError,
    SeparationError,
    SplinterConditionError,
)
from .sepsys import Universe

__all__ = [
    "IndexedFamily",
    "TransversalResult",
    "splinters",
    "extract_transversal",
    "extremal_elements",
    "splinters_hierarchically",
    "extract_canonical",
    "map_family",
]


class IndexedFamily:
    """Finite family of non-empty separation sets, indexed by hashable keys.

    ``levels`` optionally assigns a comparable value to each key; the strict
    partial order ``prec`` may be given explicitly as ordered key pairs or
    derived from the levels (smaller level strictly precedes larger).
    """

    def __init__(self, universe: Universe, sets, levels=None, prec=None, excluded=()):
        self.universe = universe
        if isinstance(sets, dict):
            items = list(sets.items())
        else:
            items = list(enumerate(sets))
        if not items and prec:
            raise SeparationError("order given for an empty family")
        self.keys = tuple(k for k, _ in items)
        if len(set(self.keys)) != len(self.keys):
            raise SeparationError("duplicate family keys")
        self.sets = {}
        for k, s in items:
            members = frozenset(universe.uid(x) for x in s)
            if not members:
                raise SeparationError(f"family set {k!r} is empty")
            self.sets[k] = members
        self.levels = dict(levels) if levels else None
        if prec is not None:
            self.prec = frozenset(prec)
        elif self.levels:
            self.prec = frozenset(
                (a, b)
                for a in self.keys
                for b in self.keys
                if a != b and self.levels[a] < self.levels[b]
            )
        else:
            self.prec = frozenset()
        self._check_strict_order()
        self.excluded = tuple(excluded)

    def _check_strict_order(self):
        keys = set(self.keys)
        for a, b in self.prec:
            if a not in keys or b not in keys:
                raise SeparationError(f"order references unknown key {(a, b)!r}")
            if a == b or (b, a) in self.prec:
                raise SeparationError("index order is not a strict partial order")
        for a, b in self.prec:
            for c in self.keys:
                if (b, c) in self.prec and (a, c) not in self.prec:
                    raise SeparationError("index order is not transitive")

    def __len__(self):
        return len(self.keys)

    def restrict(self, keys, sets) -> "IndexedFamily":
        sub = IndexedFamily.__new__(IndexedFamily)
        sub.universe = self.universe
        sub.keys = tuple(keys)
        sub.sets = {k: sets[k] for k in keys}
        keyset = set(keys)
        sub.levels = (
            {k: self.levels[k] for k in keys} if self.levels is not None else None
        )
        sub.prec = frozenset((a, b) for a, b in self.prec if a in keyset and b in keyset)
        sub.excluded = ()
        return sub

    def union_support(self) -> frozenset:
        out = set()
        for s in self.sets.values():
            out |= s
        return frozenset(out)

    def __repr__(self):
        return f"IndexedFamily({len(self.keys)} sets, universe={self.universe!r})"


def _as_family(fam, universe=None) -> IndexedFamily:
    if isinstance(fam, IndexedFamily):
        return fam
    if universe is None:
        raise SeparationError("raw families need an explicit universe")
    return IndexedFamily(universe, list(fam))


# ----------------------------------------------------------------------
# the splinter predicate


def splinters(fam: IndexedFamily, universe: Universe | None = None):
    """Whether every crossing cross-set pair has a corner in the sets' union.

    Returns ``(ok, witness)``; the witness is the first violating tuple
    ``(key_i, key_j, a_i, a_j)`` in canonical order, or None.
    """
    fam = _as_family(fam, universe)
    u = fam.universe
    keys = fam.keys
    for ii in range(len(keys)):
        A = fam.sets[keys[ii]]
        for jj in range(ii + 1, len(keys)):
            B = fam.sets[keys[jj]]
            union = A | B
            for a in sorted(A - B):
                for b in sorted(B - A):
                    if u.nested(a, b):
                        continue
                    if not (u.corner_uids(a, b) & union):
                        return False, (keys[ii], keys[jj], a, b)
    return True, None


# ----------------------------------------------------------------------
# non-canonical extraction


@dataclass
class TransversalResult:
    """One nested pick per family key, plus the decision trace."""

    picks: dict
    trace: list = field(default_factory=list)

    def nested_set(self) -> frozenset:
        return frozenset(self.picks.values())

    def trace_jsonl(self) -> str:
        import json

        return "\n".join(json.dumps(e, sort_keys=True) for e in self.trace)


def extract_transversal(fam: IndexedFamily, universe: Universe | None = None, debug: bool = False) -> TransversalResult:
    """Pick one element from each set so that the picks are pairwise nested.

    Follows the inductive argument: solve the first ``n - 1`` sets, fix the
    canonically first element of the last set, find a pivot that is nested
    with at least one element of every other set, restrict the other sets to
    the elements nested with the pivot, and recurse.  Requires the family to
    splinter; with ``debug`` the restricted families are re-checked at every
    level.
    """
    fam = _as_family(fam, universe)
    ok, witness = splinters(fam)
    if not ok:
        raise SplinterConditionError(witness)
    u = fam.universe
    trace: list[dict] = []

    def solve(items: list[tuple], depth: int) -> dict:
        if not items:
            return {}
        if len(items) == 1:
            k, A = items[0]
            pick = min(A)
            trace.append({"depth": depth, "event": "single", "key": repr(k), "pick": pick})
            return {k: pick}
        sub = solve(items[:-1], depth + 1)
        kn, An = items[-1]
        an = min(An)
        pivot_key = None
        pivot = None
        via = "last"
        for k, A in items[:-1]:
            ai = sub[k]
            if ai in An or (u.corner_uids(ai, an) & An):
                pivot_key, pivot, via = k, ai, "existing"
                break
        if pivot_key is None:
            pivot_key, pivot = kn, an
        rest = []
        for k, A in items:
            if k == pivot_key:
                continue
            Ar = frozenset(x for x in A if u.nested(x, pivot))
            if not Ar:
                raise SplinterConditionError(
                    (pivot_key, k, pivot, min(A)),
                    "pivot is nested with no element of a set; family cannot splinter",
                )
            rest.append((k, Ar))
        trace.append(
            {
                "depth": depth,
                "event": "pivot",
                "key": repr(pivot_key),
                "pick": pivot,
                "via": via,
                "restricted_sizes": [len(A) for _, A in rest],
            }
        )
        if debug:
            sub_fam = fam.restrict([k for k, _ in rest], dict(rest))
            ok2, wit2 = splinters(sub_fam)
            if not ok2:
                raise InternalContradictionError(
                    f"restricted family lost the splinter property: {wit2!r}"
                )
        out = solve(rest, depth + 1)
        out[pivot_key] = pivot
        return out

    picks = solve([(k, fam.sets[k]) for k in fam.keys], 0)
    _verify_picks(fam, picks)
    return TransversalResult(picks=picks, trace=trace)


def _verify_picks(fam: IndexedFamily, picks: dict):
    u = fam.universe
    for k in fam.keys:
        if picks.get(k) not in fam.sets[k]:
            raise InternalContradictionError(f"pick for {k!r} is not in its set")
    vals = sorted(set(picks.values()))
    for i, a in enumerate(vals):
        for b in vals[i + 1 :]:
            if not u.nested(a, b):
                raise InternalContradictionError(f"picks {a} and {b} cross")


# ----------------------------------------------------------------------
# canonical extraction


def extremal_elements(universe: Universe, seps) -> frozenset:
    """Members with an orientation that is maximal among all orientations of the set."""
    A = [universe.uid(x) for x in seps]
    oriented = sorted({o for uid in A for o in universe.orientations(uid)})
    out = set()
    for uid in A:
        for o in universe.orientations(uid):
            if not any(universe.lt(o, y) for y in oriented):
                out.add(uid)
                break
    return frozenset(out)


def _meet_side(u: Universe, rho: int, s_uid: int) -> frozenset:
    return frozenset(u.uid(u.meet(rho, sig)) for sig in u.orientations(s_uid))


def _different_sides(u: Universe, r: int, s: int, c1: int, c2: int) -> bool:
    r0, r1 = u.orientations(r)
    side0 = _meet_side(u, r0, s)
    side1 = _meet_side(u, r1, s)
    return (c1 in side0 and c2 in side1) or (c1 in side1 and c2 in side0)


def _cond_comparable(u: Universe, ai: int, aj: int, Ai: frozenset, Aj: frozenset) -> bool:
    """Condition for comparable indices i < j: a corner in A_j, or two corners
    from different sides of a_i in A_i."""
    corner_set = u.corner_uids(ai, aj)
    if corner_set & Aj:
        return True
    in_i = sorted(corner_set & Ai)
    for c1 in in_i:
        for c2 in in_i:
            if _different_sides(u, ai, aj, c1, c2):
                return True
    return False


def _cond_incomparable(u: Universe, ai: int, aj: int, Ai: frozenset, Aj: frozenset) -> bool:
    """Condition for incomparable (or equal) indices: for some anchor
    k in {i, j}, corners from different sides of a_k with c1 in A_k and
    c2 in the union."""
    corner_set = u.corner_uids(ai, aj)
    union = Ai | Aj
    for anchor, Ak in ((ai, Ai), (aj, Aj)):
        for c1 in sorted(corner_set & Ak):
            for c2 in sorted(corner_set & union):
                if _different_sides(u, anchor, aj if anchor == ai else ai, c1, c2):
                    return True
    return False


def splinters_hierarchically(fam: IndexedFamily, universe: Universe | None = None):
    """The two-condition variant of the splinter predicate.

    Condition (1) applies to strictly comparable index pairs, condition (2)
    to incomparable pairs including ``i == j``; the latter is what rules out
    a single set of two crossing separations with no corners inside.
    Returns ``(ok, witness)``.
    """
    fam = _as_family(fam, universe)
    u = fam.universe
    keys = fam.keys
    prec = fam.prec
    for ii in range(len(keys)):
        ki = keys[ii]
        Ai = fam.sets[ki]
        for jj in range(ii, len(keys)):
            kj = keys[jj]
            Aj = fam.sets[kj]
            if (ki, kj) in prec:
                rel = "ij"
            elif (kj, ki) in prec:
                rel = "ji"
            else:
                rel = "inc"
            for a in sorted(Ai):
                for b in sorted(Aj):
                    if rel == "ij":
                        ok = _cond_comparable(u, a, b, Ai, Aj)
                    elif rel == "ji":
                        ok = _cond_comparable(u, b, a, Aj, Ai)
                    else:
                        ok = _cond_incomparable(u, a, b, Ai, Aj)
                    if not ok:
                        return False, (ki, kj, a, b)
    return True, None


@dataclass
class CanonicalResult:
    """Canonical nested set meeting every family set, plus the recursion trace."""

    nested: frozenset
    trace: list = field(default_factory=list)

    def trace_jsonl(self) -> str:
        import json

        return "\n".join(json.dumps(e, sort_keys=True) for e in self.trace)


def extract_canonical(
    fam: IndexedFamily,
    universe: Universe | None = None,
    prune_redundant: bool = False,
    precheck: bool = True,
) -> CanonicalResult:
    """Canonical nested set meeting every set of a hierarchically splintering family.

    Repeatedly takes the extremal elements of the union of the sets with
    minimal index, drops the sets already met, restricts the remaining sets
    to the elements nested with what was taken, and recurses.  The result is
    a pure function of the family and commutes with isomorphisms of
    separation systems.

    ``prune_redundant`` removes output elements lying in no family set; for
    families produced by this construction that never happens, so the pass
    is normally a no-op and is off by default.  ``precheck=False`` skips the
    hierarchical-splinter precondition; callers may do so when the family is
    an isomorphic image of one already checked (the condition is invariant
    under isomorphisms of separation systems).  The internal nestedness and
    coverage checks still run either way.
    """
    fam = _as_family(fam, universe)
    if precheck:
        ok, witness = splinters_hierarchically(fam)
        if not ok:
            raise HierarchicalConditionError(witness)
    u = fam.universe
    trace: list[dict] = []

    def solve(keys: tuple, sets: dict, depth: int) -> frozenset:
        if not keys:
            return frozenset()
        keyset = set(keys)
        minimal = [
            k
            for k in keys
            if not any((k2, k) in fam.prec for k2 in keyset if k2 != k)
        ]
        union = set()
        for k in minimal:
            union |= sets[k]
        extremal = extremal_elements(u, union)
        vals = sorted(extremal)
        for i, a in enumerate(vals):
            for b in vals[i + 1 :]:
                if not u.nested(a, b):
                    raise InternalContradictionError(
                        f"extremal elements {a} and {b} cross; hierarchical condition was violated"
                    )
        remaining = [k for k in keys if not (sets[k] & extremal)]
        restricted = {}
        for k in remaining:
            Ar = frozenset(
                x for x in sets[k] if all(u.nested(x, e) for e in extremal)
            )
            if not Ar:
                raise InternalContradictionError(
                    f"set {k!r} has no element nested with the extremal set"
                )
            restricted[k] = Ar
        trace.append(
            {
                "depth": depth,
                "event": "extremal",
                "minimal_keys": sorted(repr(k) for k in minimal),
                "extremal": sorted(extremal),
                "remaining": len(remaining),
            }
        )
        return solve(tuple(remaining), restricted, depth + 1) | extremal

    nested = solve(fam.keys, dict(fam.sets), 0)
    vals = sorted(nested)
    for i, a in enumerate(vals):
        for b in vals[i + 1 :]:
            if not u.nested(a, b):
                raise InternalContradictionError(f"output {a} and {b} cross")
    for k in fam.keys:
        if not (fam.sets[k] & nested):
            raise InternalContradictionError(f"output misses set {k!r}")
    if prune_redundant:
        support = fam.union_support()
        nested = frozenset(x for x in nested if x in support)
    return CanonicalResult(nested=nested, trace=trace)


# ----------------------------------------------------------------------
# isomorphisms


def map_family(fam: IndexedFamily, mapping: dict, target: Universe | None = None) -> IndexedFamily:
    """Image of a family under an isomorphism of separation systems.

    ``mapping`` sends oriented ids to oriented ids (of ``target``, defaulting
    to the family's universe) and must be injective, commute with the
    involution, and preserve the order relation on the family's support.
    """
    u = fam.universe
    t = target if target is not None else u
    support = set()
    for s in fam.sets.values():
        for uid in s:
            support.update(u.orientations(uid))
    for o in support:
        if o not in mapping:
            raise SeparationError(f"mapping does not cover oriented separation {o}")
    imgs = [mapping[o] for o in support]
    if len(set(imgs)) != len(imgs):
        raise SeparationError("mapping is not injective on the family's support")
    sup = sorted(support)
    for x in sup:
        if t.inv(mapping[x]) != mapping[u.inv(x)]:
            raise SeparationError("mapping does not commute with the involution")
    for x in sup:
        for y in sup:
            if u.leq(x, y) != t.leq(mapping[x], mapping[y]):
                raise SeparationError("mapping does not preserve the partial order")
    new_sets = {
        k: frozenset(t.uid(mapping[uid]) for uid in s) for k, s in fam.sets.items()
    }
    return IndexedFamily(t, new_sets, levels=fam.levels, prec=fam.prec)
