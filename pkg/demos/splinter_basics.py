"""
The splinter predicate, hands on
================================

A family of separation sets "splinters" when every crossing cross-set pair
has a corner separation inside the two sets' union; that alone guarantees a
nested transversal.  The canonical variant needs the stronger hierarchical
condition, and this script shows the classic family that separates the two:
a single set of two crossing separations.
"""

from totkit.errors import HierarchicalConditionError
from totkit.splinter import (
    IndexedFamily,
    extract_canonical,
    extract_transversal,
    splinters,
    splinters_hierarchically,
)
from totkit.universes import bipartition_universe

u = bipartition_universe([1, 2, 3, 4])
s = u.uid(u.find(u.mask_of([1, 2]), u.mask_of([3, 4])))
t = u.uid(u.find(u.mask_of([2, 3]), u.mask_of([4, 1])))
print("s and t cross:", not u.nested(s, t))

# one set containing both: splinters (there is no cross-set pair) ...
family = IndexedFamily(u, [{s, t}])
print("splinters:", splinters(family)[0])

# ... and a transversal exists: pick either element
picks = extract_transversal(family).picks
print("transversal pick:", u.side_labels(picks[0]))

# but no canonical choice can exist: an automorphism may swap s and t,
# and the hierarchical condition correctly refuses the family
ok, witness = splinters_hierarchically(family)
print("splinters hierarchically:", ok, "witness:", witness)
try:
    extract_canonical(family)
except HierarchicalConditionError as exc:
    print("canonical extraction refused:", exc)

# two crossing singletons do not even splinter
ok, witness = splinters(IndexedFamily(u, [{s}, {t}]))
print("two crossing singletons splinter:", ok)
