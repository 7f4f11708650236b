import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkcalc.corpus import CORPUS, corpus_load
from linkcalc.diagram import canonical_form, canonical_key, delete_component, linking_matrix
from linkcalc.search import Crossingless, SearchBudget, greedy_reduce, search_reduce
from linkcalc.surgery import (
    INFINITY,
    STAR,
    OneOverQ,
    SlopeFailure,
    StaleSite,
    apply_slopes,
    detect_bundle,
    format_slopes,
    full_twist_word,
    parse_slopes,
    predicted_linking_after_twist,
    twist,
)

SITES = [
    (name, k)
    for name, e in CORPUS.items()
    for k in range(e.expected["components"])
    if detect_bundle(e.load(), k) is not None
]


def test_hopf_components_are_bundled_with_one_strand():
    d = corpus_load("hopf")
    assert [detect_bundle(d, k).m for k in range(2)] == [1, 1]


def test_key_chain_ring_carries_two_strands():
    site = detect_bundle(corpus_load("key-chain"), 2)
    assert site.m == 2 and len(site.ports) == 2


def test_bundled_borromean_has_both_inside_orientations():
    d = corpus_load("borromean-bundled")
    assert detect_bundle(d, 0).inside == "R"
    assert detect_bundle(d, 2).inside == "L"
    assert detect_bundle(d, 1) is None
    assert all(detect_bundle(corpus_load("borromean"), k) is None for k in range(3))


def test_self_crossing_components_are_never_bundled():
    assert detect_bundle(corpus_load("trefoil"), 0) is None
    assert detect_bundle(corpus_load("kink"), 0) is None
    with pytest.raises(IndexError):
        detect_bundle(corpus_load("hopf"), 2)


def test_full_twist_word():
    assert full_twist_word(1, 3) == []
    assert full_twist_word(3, 0) == []
    assert full_twist_word(2, 1) == [1, 1]
    assert full_twist_word(3, 1) == [1, 2] * 3
    assert full_twist_word(3, -1) == [-2, -1] * 3


@pytest.mark.parametrize("name, k", SITES)
@pytest.mark.parametrize("q", range(-3, 4))
def test_linking_law_on_every_site(name, k, q):
    d = corpus_load(name)
    site = detect_bundle(d, k)
    out = twist(d, site, q, keep=False)
    expected = predicted_linking_after_twist(linking_matrix(d), k, q)
    assert np.array_equal(linking_matrix(out), expected)
    assert out.n_crossings == d.n_crossings - 2 * site.m + site.m * (site.m - 1) * abs(q) * (site.m > 1)


def test_key_chain_twist_is_right_handed():
    out = twist(corpus_load("key-chain"), detect_bundle(corpus_load("key-chain"), 2), 1)
    assert linking_matrix(out).tolist() == [[0, 1], [1, 0]]
    out = twist(corpus_load("key-chain"), detect_bundle(corpus_load("key-chain"), 2), -1)
    assert linking_matrix(out).tolist() == [[0, -1], [-1, 0]]


@pytest.mark.parametrize("name, k", [s for s in SITES if s[0] in ("key-chain", "borromean-bundled", "chain4")])
@pytest.mark.parametrize("q", [1, -1, 2])
def test_twist_and_untwist_cancel(name, k, q):
    d = corpus_load(name)
    once = twist(d, detect_bundle(d, k), q, keep=True)
    assert once.n_components == d.n_components
    back = twist(once, detect_bundle(once, k), -q, keep=True)
    reduced, _ = greedy_reduce(back)
    assert canonical_key(reduced) == canonical_key(d)


def test_stale_sites_are_refused():
    d = corpus_load("borromean-bundled")
    site = detect_bundle(d, 2)
    moved = twist(d, detect_bundle(d, 0), 1, keep=False)
    with pytest.raises((StaleSite, IndexError)):
        twist(moved, site, 1)


@pytest.mark.slow
def test_borromean_twist_is_zero_linking_and_not_easily_unlinked():
    d = corpus_load("borromean-bundled")
    out = twist(d, detect_bundle(d, 2), 1, keep=False)
    assert out.n_components == 2 and not linking_matrix(out).any()
    res = search_reduce(out, Crossingless(), SearchBudget())
    assert not res.found and res.report.frontier == 0


def test_slope_parsing():
    assert parse_slopes("1/2,*,inf") == [OneOverQ(2), STAR, INFINITY]
    assert parse_slopes("-1/3, 1/0, 1") == [OneOverQ(-3), INFINITY, OneOverQ(1)]
    assert parse_slopes("1/-2") == [OneOverQ(-2)]
    assert format_slopes(parse_slopes("1/2,*,inf")) == "1/2,*,inf"
    for bad in ("2/3", "5", "x", "1/y"):
        with pytest.raises(ValueError):
            parse_slopes(bad)


def test_deletion_slope_matches_delete_component():
    d = corpus_load("borromean")
    out, steps = apply_slopes(d, [INFINITY, STAR, STAR])
    assert canonical_key(out) == canonical_key(delete_component(d, 0))
    assert search_reduce(out, Crossingless()).found


def test_twist_slope_matches_direct_twist():
    d = corpus_load("borromean-bundled")
    out, steps = apply_slopes(d, [OneOverQ(1), STAR, STAR])
    direct = twist(d, detect_bundle(d, 0), 1)
    assert canonical_key(out) == canonical_key(direct)
    assert steps == [{"component": 0, "op": "twist", "q": 1, "certificate": []}]


def test_slopes_search_when_needed_and_report_failure():
    d = corpus_load("whitehead")
    out, steps = apply_slopes(d, [OneOverQ(1), STAR])
    assert out.n_components == 1 and steps[0]["certificate"]
    with pytest.raises(SlopeFailure):
        apply_slopes(corpus_load("borromean"), [OneOverQ(1), STAR, STAR])
    with pytest.raises(ValueError):
        apply_slopes(d, [STAR])


def test_mixed_slope_vector_keeps_original_indices():
    d = corpus_load("key-chain")
    out, steps = apply_slopes(d, [INFINITY, STAR, OneOverQ(1)])
    assert out.n_components == 1 and out.n_crossings == 0
    assert [s["component"] for s in steps] == [0, 2]


@settings(max_examples=20, deadline=None)
@given(q=st.integers(-3, 3), r=st.integers(-3, 3))
def test_linking_law_composes(q, r):
    lk = np.array([[0, 2, 1, -1], [2, 0, 3, 1], [1, 3, 0, 2], [-1, 1, 2, 0]])
    once = predicted_linking_after_twist(lk, 3, q)
    assert (once == once.T).all() and not np.diag(once).any()
    twice = predicted_linking_after_twist(once, 2, r)
    assert twice.shape == (2, 2)
