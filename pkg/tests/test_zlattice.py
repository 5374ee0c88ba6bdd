"""Lattice axioms, cyclic flat extraction, and configuration equality."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from freecone import (
    Configuration,
    ValidationError,
    configuration,
    configurations_equal,
    cyclic_flats,
    from_cyclic_flats,
    validate_axioms,
)
from freecone.catalog import example_pair, fixture_matroids, uniform

FIXTURES = fixture_matroids()


def test_validator_accepts_every_fixture_family():
    for name, M in FIXTURES:
        rep = validate_axioms(M.zf)
        assert rep.ok, (name, rep)


def test_least_member_must_have_rank_zero():
    rep = validate_axioms([(0, 1), ((1 << 3) - 1, 2)])
    assert not rep.ok and rep.axiom == "Z1"


def test_rank_gap_must_be_positive():
    # two nested members with the same rank
    rep = validate_axioms([(0, 0), (0b011, 1), (0b111, 1)])
    assert not rep.ok and rep.axiom == "Z2"
    assert rep.witness == (frozenset({0, 1}), frozenset({0, 1, 2}))


def test_rank_gap_must_stay_below_size_gap():
    rep = validate_axioms([(0, 0), (0b0011, 1), (0b0111, 2)])
    assert not rep.ok and rep.axiom == "Z2"


def test_submodularity_with_intersection_defect():
    # two 3-point lines meeting in two common elements cannot both be flats
    rep = validate_axioms([(0, 0), (0b01110, 2), (0b10110, 2), (0b11111, 3)])
    assert not rep.ok and rep.axiom == "Z3"


def test_family_must_be_closed_under_join_shape():
    # incomparable members with no common upper bound in the family
    rep = validate_axioms([(0, 0), (0b011, 1), (0b110, 1)])
    assert not rep.ok and rep.axiom == "Z0"


def test_incomparable_only_mode_agrees_with_full_mode():
    bad = [(0, 0), (0b01110, 2), (0b10110, 2), (0b11111, 3)]
    assert validate_axioms(bad, incomparable_only=True).axiom == "Z3"
    for name, M in FIXTURES:
        assert validate_axioms(M.zf, incomparable_only=True).ok, name


def test_cyclic_flats_of_uniform():
    # proper uniform matroids have only the trivial cyclic flats
    u24 = uniform(2, 4)
    assert cyclic_flats(u24) == [(set(), 0), ({0, 1, 2, 3}, 2)]
    u33 = uniform(3, 3)
    assert cyclic_flats(u33) == [(set(), 0)]


def test_cyclic_flats_reproduce_the_matroid():
    for name, M in FIXTURES:
        entries = [(sum(1 << e for e in s), r) for s, r in cyclic_flats(M)]
        back = from_cyclic_flats(entries, M.n, names=M.names)
        assert back.zf == M.zf, name


def test_configuration_of_the_example_pair_is_the_diamond():
    m1, m2 = example_pair()
    c1, c2 = configuration(m1), configuration(m2)
    assert len(c1) == 4
    assert sorted(c1.labels) == [(0, 0), (3, 2), (3, 2), (6, 3)]
    bottom, top = c1.bottom, c1.top
    assert c1.rho(bottom) == 0 and c1.rho(top) == 3
    assert len(c1.covers) == 4  # two middle nodes, each between bottom and top
    assert c1 == c2
    assert configurations_equal(c1, c2)


def test_configuration_certificate_separates_shapes():
    c_disjoint = configuration(example_pair()[0])
    c_uniform = configuration(uniform(2, 4))
    assert c_disjoint != c_uniform
    assert not configurations_equal(c_disjoint, c_uniform)


def test_configuration_join_and_between():
    cfg = configuration(example_pair()[0])
    mid = cfg.nodes_of_rho(2)
    assert len(mid) == 2
    assert cfg.join(*mid) == cfg.top
    assert cfg.strictly_between(cfg.bottom, cfg.top) == sorted(mid)


def test_coloop_count_rides_along_but_not_in_equality():
    line_plus_point = dict(FIXTURES)["line-plus-point"]
    bare_line = uniform(2, 3)
    ca, cb = configuration(line_plus_point), configuration(bare_line)
    assert ca.coloop_count == 1 and cb.coloop_count == 0
    assert ca == cb


def test_configuration_rejects_malformed_covers():
    with pytest.raises(ValidationError):
        Configuration([(0, 0), (2, 1)], [(0, 1), (1, 0)])  # cycle
    with pytest.raises(ValidationError):
        Configuration([(0, 0), (2, 1), (3, 1)], [(0, 1)])  # two maximal nodes
    with pytest.raises(ValidationError):
        Configuration([(0, 1), (2, 2)], [(0, 1)])  # bottom rank nonzero
    with pytest.raises(ValidationError):
        Configuration([(0, 0), (2, 3), (4, 2)], [(0, 1), (1, 2)])  # rank drop


def test_certificate_is_invariant_under_relabeling():
    for name, M in FIXTURES:
        if M.n < 2:
            continue
        perm = list(reversed(range(M.n)))
        assert configuration(M) == configuration(M.relabel(perm)), name


@given(st.sampled_from([M for _, M in FIXTURES if M.n >= 2]), st.permutations(range(6)))
def test_certificate_under_random_relabelings(M, perm6):
    perm = [p for p in perm6 if p < M.n]
    assert configuration(M.relabel(perm)) == configuration(M)
