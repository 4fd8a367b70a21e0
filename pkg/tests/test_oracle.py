import pytest

from homhom.census import enumerate_reflexive
from homhom.digraph import (
    complete_reflexive,
    disjoint_union,
    induced,
    is_homomorphism,
    make_digraph,
    oriented_cycle,
)
from homhom.errors import CapabilityError, InputError, PreconditionError
from homhom.generate import from_spec, vee_poset
from homhom.involution import make_alpha, make_zeta4
from homhom.oracle import (
    ConeDir,
    PartialHom,
    Verdict,
    arrow,
    cone_of_type,
    cone_type_of,
    extend_to_total,
    extension_images,
    find_unextendable,
    is_hh_bruteforce,
    is_hh_cone_criterion,
)
from homhom.structure import connected_components
from conftest import all_partial_homs, naive_unextendable, random_reflexive

C3 = oriented_cycle(3, reflexive=True)


def test_extension_images_empty_domain():
    c3_bare = oriented_cycle(3)
    mixed = make_digraph(2, [(0, 0)])
    f = PartialHom.from_map(C3, mixed, {})
    assert extension_images(f, 0) == {0}          # looped source vertex
    f = PartialHom.from_map(c3_bare, mixed, {})
    assert extension_images(f, 0) == {0, 1}       # loopless source vertex


def test_extension_images_on_cycle():
    f = PartialHom.from_map(C3, C3, {0: 0})
    assert extension_images(f, 1) == {0, 1}
    with pytest.raises(InputError):
        extension_images(f, 0)


def test_extension_images_forced_into_partner_pair():
    alpha2 = make_alpha(2)
    # collapsing a partner pair forces neighbours into the image pair
    t, tp, u, up = range(4)
    f = PartialHom.from_map(alpha2, alpha2, {u: t, up: t})
    assert extension_images(f, t) <= {t, tp}
    assert extension_images(f, tp) <= {t, tp}


def test_arrow_examples():
    assert arrow(make_alpha(1), make_alpha(2))
    assert not arrow(make_zeta4(), make_alpha(3))
    assert arrow(complete_reflexive(1), complete_reflexive(1))


def test_arrow_guard():
    with pytest.raises(CapabilityError):
        arrow(complete_reflexive(11), complete_reflexive(2))


def test_engine_matches_naive_enumeration(rng):
    for n in range(4):
        for d in enumerate_reflexive(n):
            assert (find_unextendable(d, d) is None) == (naive_unextendable(d, d) is None)
    for _ in range(12):
        d1 = random_reflexive(rng, 4)
        d2 = random_reflexive(rng, 3)
        assert (find_unextendable(d1, d2) is None) == (naive_unextendable(d1, d2) is None)


def test_is_hh_examples():
    assert is_hh_bruteforce(complete_reflexive(1)).decision is Verdict.HH
    both = disjoint_union([C3, complete_reflexive(1)])
    assert is_hh_bruteforce(both).decision is Verdict.HH
    assert is_hh_bruteforce(make_zeta4()).decision is Verdict.HH


def test_cross_component_obstruction():
    """A component holding a non-adjacent pair refutes homogeneity as soon
    as a second component exists, even though all four pairwise component
    arrow relations hold for this instance."""
    d = disjoint_union([vee_poset(), complete_reflexive(1)])
    verdict = is_hh_bruteforce(d)
    assert verdict.decision is Verdict.NOT_HH
    wit = verdict.witness
    assert wit.hom.is_valid()
    assert not extension_images(wit.hom, wit.vertex)
    # the component-pair arrows themselves all hold
    comps = connected_components(d).blocks
    for s in comps:
        for t in comps:
            sub_s, _ = induced(d, s)
            sub_t, _ = induced(d, t)
            assert arrow(sub_s, sub_t)


def test_witnesses_reverify_over_census():
    for n in range(1, 5):
        for d in enumerate_reflexive(n):
            verdict = is_hh_bruteforce(d)
            if verdict.decision is Verdict.NOT_HH:
                wit = verdict.witness
                assert wit is not None
                assert wit.hom.is_valid()
                assert wit.vertex not in wit.hom.domain
                assert not extension_images(wit.hom, wit.vertex)


def test_hh_iff_self_arrow(rng):
    for _ in range(25):
        d = random_reflexive(rng, rng.randint(1, 5))
        assert (is_hh_bruteforce(d).decision is Verdict.HH) == arrow(d, d)


def test_guard_applies_per_component():
    # 12 vertices in total, but components of size 8 and 4 stay in bounds
    mix = disjoint_union([make_zeta4(), make_alpha(2)])
    assert is_hh_bruteforce(mix).decision in (Verdict.HH, Verdict.NOT_HH)
    with pytest.raises(CapabilityError):
        is_hh_bruteforce(complete_reflexive(11))


def test_extend_to_total_on_homogeneous_instance(rng):
    alpha2 = make_alpha(2)
    for f in all_partial_homs(alpha2, alpha2):
        total = extend_to_total(PartialHom.from_map(alpha2, alpha2, f))
        assert total is not None
        assert is_homomorphism(alpha2, alpha2, total)


def test_endomorphism_images_respect_components(rng):
    """Any endomorphism of a homogeneous improper digraph maps each
    component into a single component."""
    d = disjoint_union([make_zeta4(), make_alpha(1)])
    comps = connected_components(d)
    for _ in range(10):
        seed = {rng.randrange(d.n): rng.randrange(d.n)}
        try:
            hom = PartialHom.from_map(d, d, seed)
        except InputError:
            continue
        total = extend_to_total(hom)
        if total is None:
            continue
        for block in comps.blocks:
            targets = {comps.block_of[total[v]] for v in block}
            assert len(targets) == 1


def test_cone_of_type():
    d = complete_reflexive(1)
    assert cone_of_type(d, [0], [ConeDir.OUT]) == {0}
    alpha2 = make_alpha(2)
    full = cone_of_type(alpha2, [0, 1], [ConeDir.BOTH, ConeDir.BOTH])
    assert full == {0, 1}
    with pytest.raises(InputError):
        cone_of_type(alpha2, [], [])
    with pytest.raises(InputError):
        cone_of_type(alpha2, [0, 1], [ConeDir.BOTH])


def test_cone_monotone(rng):
    for _ in range(15):
        d = random_reflexive(rng, 5)
        tup = [rng.randrange(5) for _ in range(3)]
        for c in range(5):
            strongest = cone_type_of(d, c, tup)
            if strongest is None:
                continue
            weaker = [
                ConeDir.OUT if t is ConeDir.BOTH and i % 2 == 0 else t
                for i, t in enumerate(strongest)
            ]
            assert c in cone_of_type(d, tup, strongest)
            assert cone_of_type(d, tup, strongest) <= cone_of_type(d, tup, weaker)


def test_cone_criterion_examples():
    assert is_hh_cone_criterion(make_alpha(2)).decision is Verdict.HH
    with pytest.raises(PreconditionError):
        is_hh_cone_criterion(C3)                     # proper
    with pytest.raises(PreconditionError):
        is_hh_cone_criterion(complete_reflexive(2))  # symmetric
    with pytest.raises(InputError):
        is_hh_cone_criterion(oriented_cycle(3))      # not reflexive


def test_cone_criterion_gadget_counterexample():
    from homhom.gadget import build_gk

    layout = build_gk(make_digraph(2, []), 2)
    verdict = is_hh_cone_criterion(layout.host)
    assert verdict.decision is Verdict.NOT_HH
    wit = verdict.witness
    assert wit.hom.is_valid()
    # the witness cone has no counterpart of at least its type on the image side
    tup = sorted(wit.hom.domain)
    types = cone_type_of(layout.host, wit.vertex, tup)
    mapping = wit.hom.mapping
    assert types is not None
    assert not cone_of_type(layout.host, [mapping[u] for u in tup], types)


def test_spec_workload_mixes():
    good = from_spec("zeta4 + alpha1 + alpha0")
    assert is_hh_bruteforce(good).decision is Verdict.HH
    bad = from_spec("zeta4 + alpha3")
    assert is_hh_bruteforce(bad).decision is Verdict.NOT_HH


def test_decomposition_matches_direct_search(rng):
    """The multi-component path must agree with the single search tree on
    every disconnected instance small enough to run both."""
    checked = 0
    while checked < 250:
        n = rng.randint(2, 7)
        p = rng.choice((0.1, 0.25, 0.45))
        edges = [(v, v) for v in range(n)]
        edges += [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
        d = make_digraph(n, edges)
        if len(connected_components(d)) < 2:
            continue
        checked += 1
        assert (is_hh_bruteforce(d).decision is Verdict.HH) == (
            find_unextendable(d, d) is None
        ), d.edges()


def test_family_boundary_arrows_at_eight_vertices():
    """Extension into the cyclic 8-vertex tournament always works; out of
    it, only targets with at most two partner pairs accept everything."""
    z = make_zeta4()
    for n in range(5):
        assert arrow(make_alpha(n), z)
    assert arrow(z, make_alpha(2))
    assert not arrow(z, make_alpha(3))
    assert not arrow(z, make_alpha(4))
