"""Compatible sequences and chain-level efficiency semantics."""

import pytest

from totkit.errors import SeparationError
from totkit.pipelines import graph_pipeline, sequence_family
from totkit.profiles import efficient_distinguishers, sequence_efficient_distinguishers
from totkit.sepsys import SubSystem
from totkit.splinter import extract_transversal, splinters
from totkit.universes import SubsystemChain, is_compatible_sequence, restrict_Sk

from test_universes import literal_compatible


def test_compatible_matches_literal_on_adhoc_chains(bip4):
    """Hand-built non-slice chains agree with the literal definition."""
    uids = sorted(bip4.unoriented_ids())
    cases = [
        [uids[:1], uids[:3]],
        [uids[:2], uids[:2]],
        [[uids[0]], [uids[0], uids[3]], uids[:5]],
    ]
    for systems in cases:
        chain = SubsystemChain(
            bip4, tuple(SubSystem(bip4, frozenset(s)) for s in systems)
        )
        assert is_compatible_sequence(chain) == literal_compatible(chain)


def test_incompatible_chain_detected(bip4):
    r = bip4.uid(bip4.find(bip4.mask_of([1, 2]), bip4.mask_of([3, 4])))
    s = bip4.uid(bip4.find(bip4.mask_of([2, 3]), bip4.mask_of([4, 1])))
    chain = SubsystemChain(
        bip4,
        (SubSystem(bip4, frozenset({r})), SubSystem(bip4, frozenset({r, s}))),
    )
    assert is_compatible_sequence(chain) == literal_compatible(chain) == False


def test_containment_violation_is_an_error(p4_universe):
    s1 = restrict_Sk(p4_universe, 1)
    s2 = restrict_Sk(p4_universe, 2)
    with pytest.raises(SeparationError):
        SubsystemChain(p4_universe, (s2, s1))


def test_sequence_efficiency_equals_order_efficiency(small_corpus):
    """Order slices: minimal chain level picks exactly the minimal-order sets."""
    for g in small_corpus:
        result = graph_pipeline(g)
        if len(result.profiles) < 2:
            continue
        chain = result.chain
        for i, p in enumerate(result.profiles):
            for q in result.profiles[i + 1 :]:
                assert sorted(sequence_efficient_distinguishers(chain, p, q)) == sorted(
                    efficient_distinguishers(p, q)
                )


def test_sequence_family_matches_order_family(two_k4):
    base, seq_fam = sequence_family(two_k4)
    ord_fam = base.family
    assert seq_fam.keys == ord_fam.keys
    for k in ord_fam.keys:
        assert seq_fam.sets[k] == ord_fam.sets[k]


def test_sequence_family_extraction_covers_all_pairs(two_k4):
    base, seq_fam = sequence_family(two_k4)
    ok, _ = splinters(seq_fam)
    assert ok
    res = extract_transversal(seq_fam)
    for k in seq_fam.keys:
        assert res.picks[k] in seq_fam.sets[k]
