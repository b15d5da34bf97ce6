import numpy as np
import pytest

from topospin.replica import (
    EDGES,
    ReplicaPermutation,
    Triple,
    alpha,
    beta,
    canonical_triple,
    conjugate_triple,
    edge_orbits,
    gamma,
    glue_source,
    identity,
    identity_triple,
    reflection_permutation,
    reflection_triple,
)


@pytest.mark.parametrize("r", [2, 3, 4, 5, 6])
def test_generator_relations(r):
    a, b, g, e = alpha(r), beta(r), gamma(r), identity(r)
    assert b.compose(b) == e
    assert g.compose(g) == e
    assert b.compose(g) == a
    assert a**r == e
    assert a.compose(a.inverse()) == e
    assert (a**-1) == a.inverse()


def test_slot_actions_r4():
    r = 4
    a, b, g = alpha(r), beta(r), gamma(r)
    # first copy-row steps down, second steps up
    assert a(0) == 3 and a(1) == 0
    assert a(4) == 5 and a(7) == 4
    # row swap at fixed position
    assert b(2) == 6 and b(6) == 2
    # row swap combined with the step
    assert g(0) == 7 and g(4) == 1
    sigma = reflection_permutation(r)
    assert sigma(0) == 0 and sigma(1) == 3
    assert sigma(4) == 7 and sigma(6) == 5
    assert sigma.compose(sigma) == identity(r)


def test_cycle_structure():
    a = alpha(3)
    assert sorted(a.cycle_lengths()) == [3, 3]
    assert sorted(len(c) for c in gamma(3).cycles()) == [2, 2, 2]
    # row swap followed by the step is again an involution
    assert sorted(alpha(3).compose(beta(3)).cycle_lengths()) == [2, 2, 2]


def test_permutation_validation():
    with pytest.raises(ValueError):
        ReplicaPermutation(2, (0, 1, 2))
    with pytest.raises(ValueError):
        ReplicaPermutation(2, (0, 0, 1, 2))


def test_triple_regions_and_signature():
    t = canonical_triple(3)
    assert t.r == 3
    assert t.region("A") == alpha(3)
    assert t.region("B") == beta(3)
    assert t.region("C") == gamma(3)
    assert t.region("L").is_identity()
    assert t.signature() != identity_triple(3).signature()


def test_reflection_triple_swaps_b_and_c():
    t = canonical_triple(4)
    s = reflection_triple(t)
    assert s.a == t.a and s.b == t.c and s.c == t.b


def test_conjugation_preserves_cycle_type():
    rng = np.random.default_rng(11)
    t = canonical_triple(3)
    for _ in range(20):
        sigma = ReplicaPermutation(3, tuple(rng.permutation(6)))
        u = conjugate_triple(t, sigma)
        for name in "ABC":
            assert sorted(u.region(name).cycle_lengths()) == sorted(
                t.region(name).cycle_lengths()
            )


def test_edges_cover_region_pairs():
    assert set(EDGES) == {"a", "b", "c", "ab", "bc", "abc"}
    for i, j in EDGES.values():
        assert i in "ABCL" and j in "ABCL" and i != j


@pytest.mark.parametrize("r", [2, 3, 4])
def test_orbits_partition_slots(r):
    for triple in (canonical_triple(r), identity_triple(r)):
        for edge in EDGES:
            orbits = edge_orbits(triple, edge)
            seen = [s for orb in orbits for s in orb]
            assert sorted(seen) == list(range(2 * r))


def test_orbits_closed_under_relative_permutation():
    t = canonical_triple(4)
    for edge, (i, j) in EDGES.items():
        tau = t.region(j).inverse().compose(t.region(i))
        for orb in edge_orbits(t, edge):
            members = set(orb)
            assert {tau(s) for s in members} == members


def test_identity_triple_orbits_are_singletons():
    t = identity_triple(3)
    for edge in EDGES:
        assert all(len(orb) == 1 for orb in edge_orbits(t, edge))


def test_glue_source_inverts_first_region():
    t = canonical_triple(3)
    for edge, (i, _) in EDGES.items():
        inv = t.region(i).inverse()
        for slot in range(6):
            assert glue_source(t, edge, slot) == inv(slot)


def test_triple_rejects_mixed_sizes():
    with pytest.raises(Exception):
        Triple(alpha(2), beta(3), gamma(3))
