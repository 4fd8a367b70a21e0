import pytest

from homhom.census import enumerate_reflexive
from homhom.classifier import (
    C3OneCertificate,
    ClassVerdict,
    DwiCertificate,
    QuasiorderCertificate,
    Tag,
    check_c3_one_components,
    classify,
    verify_certificate,
)
from homhom.digraph import (
    Digraph,
    complete_reflexive,
    disjoint_union,
    inflate,
    make_digraph,
    oriented_cycle,
)
from homhom.errors import InputError
from homhom.generate import chain_poset, n_poset, from_spec
from homhom.involution import make_alpha
from homhom.oracle import Verdict, is_hh_bruteforce
from homhom.structure import Connectivity, connectivity_report, gamma_partition

C3 = oriented_cycle(3, reflexive=True)
ONE = complete_reflexive(1)


def test_classify_triangle():
    result = classify(C3)
    assert result.verdict is ClassVerdict.HH
    assert result.tag is Tag.C3_ONE_INFLATION
    cert = result.certificate
    assert isinstance(cert, C3OneCertificate)
    assert (cert.cycles, cert.points) == (1, 0)
    assert verify_certificate(C3, result)


def test_classify_involution_inflation():
    d, _ = inflate(make_alpha(2), [2, 1, 1, 2])
    result = classify(d)
    assert result.verdict is ClassVerdict.HH
    assert result.tag is Tag.DWI_INFLATION
    cert = result.certificate
    assert isinstance(cert, DwiCertificate)
    assert verify_certificate(d, result)
    assert is_hh_bruteforce(d).decision is Verdict.HH


def test_classify_quasiorder():
    d, _ = inflate(chain_poset(3), [2, 1, 2])
    result = classify(d)
    assert result.verdict is ClassVerdict.HH
    assert result.tag is Tag.QUASIORDER
    assert isinstance(result.certificate, QuasiorderCertificate)
    assert verify_certificate(d, result)


def test_classify_negative_and_connected():
    result = classify(n_poset())
    assert result.verdict is ClassVerdict.NOT_HH and result.tag is Tag.NONE
    assert not verify_certificate(n_poset(), result)
    # bidirectionally connected inputs are deferred to the oracle
    assert classify(complete_reflexive(2)).verdict is ClassVerdict.ORACLE_REQUIRED
    assert classify(disjoint_union([ONE, ONE])).verdict is ClassVerdict.ORACLE_REQUIRED
    with pytest.raises(InputError):
        classify(oriented_cycle(3))


def test_check_c3_one_components():
    assert check_c3_one_components(disjoint_union([C3, C3, ONE, ONE, ONE])) == (2, 3)
    assert check_c3_one_components(disjoint_union([C3, chain_poset(2)])) is None
    assert check_c3_one_components(Digraph(0, ())) == (0, 0)


def test_certificates_reverify_under_relabel_mismatch():
    # a certificate for one digraph must not verify against another
    result = classify(C3)
    other = disjoint_union([C3, ONE])
    assert not verify_certificate(other, result)


def test_first_matching_tag_order():
    # a quasiorder that is also an inflation of a looped point reports the
    # quasiorder tag, per the fixed case order
    d, _ = inflate(chain_poset(2), [2, 2])
    result = classify(d)
    assert result.tag is Tag.QUASIORDER


def test_uneven_side_classes_imply_not_hh():
    """Bidirectionally disconnected digraphs with cross double edges whose
    side classes do not come out as two blocks are never homogeneous."""
    for n in range(2, 5):
        for d in enumerate_reflexive(n):
            rep = connectivity_report(d)
            if rep.status is not Connectivity.BIDIR_DISCONNECTED:
                continue
            if d.is_symmetric or d.is_antisymmetric:
                continue
            blocks = rep.theta.blocks
            uneven = False
            for i, s in enumerate(blocks):
                for t in blocks[i + 1:]:
                    s_to_t = any(d.rows[x] >> y & 1 for x in s for y in t)
                    t_to_s = any(d.rows[y] >> x & 1 for x in s for y in t)
                    if s_to_t and t_to_s:
                        if len(gamma_partition(d, s, t)) != 2 or len(gamma_partition(d, t, s)) != 2:
                            uneven = True
            if uneven:
                assert is_hh_bruteforce(d).decision is Verdict.NOT_HH


def test_classifier_matches_oracle_on_random_medium_instances(rng):
    """Seeded sweep beyond census size: on bidirectionally disconnected
    digraphs with 6 to 8 vertices the polynomial verdict must equal the
    exhaustive one, and homogeneous verdicts must carry valid certificates."""
    checked = 0
    while checked < 400:
        n = rng.randint(6, 8)
        p = rng.choice((0.15, 0.3, 0.5, 0.7))
        edges = [(v, v) for v in range(n)]
        edges += [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
        d = make_digraph(n, edges)
        if connectivity_report(d).status is not Connectivity.BIDIR_DISCONNECTED:
            continue
        checked += 1
        result = classify(d)
        truth = is_hh_bruteforce(d).decision
        assert (result.verdict is ClassVerdict.HH) == (truth is Verdict.HH), d.edges()
        if result.verdict is ClassVerdict.HH:
            assert verify_certificate(d, result), d.edges()


def test_classifier_matches_oracle_on_spec_mixes():
    for spec in (
        "2*c3 + one",
        "inflate(c3; 2, 1, 1)",
        "inflate(alpha2 + alpha0; 2, 1, 1, 2, 3)",
        "zeta4 + alpha1",
        "chain3 + chain1",
        "nposet + one",
    ):
        d = from_spec(spec)
        result = classify(d)
        truth = is_hh_bruteforce(d).decision
        if result.verdict is ClassVerdict.ORACLE_REQUIRED:
            continue
        assert (result.verdict is ClassVerdict.HH) == (truth is Verdict.HH), spec
        if result.verdict is ClassVerdict.HH:
            assert verify_certificate(d, result), spec
