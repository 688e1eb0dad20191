from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from taufin.algebra import (
    BoundPresentation,
    build_nakayama,
    build_truncated_polynomial,
    compute_algebra,
    linear_path_algebra,
    path_algebra,
    radical_square_truncation,
    tensor_product,
)
from taufin.classify import (
    CONCLUSIONS,
    PROVENANCE,
    CrosscheckConfig,
    HypothesisError,
    Verdict,
    check_item,
    classify_silting_discreteness,
    classify_tn_tau_finiteness,
    experiment_2rad2,
    experiment_sd_shadow,
    load_corpus,
    reduce_2rad2,
)
from taufin.quiver import Arrow, Quiver

A = linear_path_algebra


def ce_algebra():
    q = Quiver(("1", "2", "3"), (Arrow("x", "1", "1"), Arrow("a", "1", "2"), Arrow("b", "1", "3")))
    return radical_square_truncation(BoundPresentation(q, (), 2))


def verdict(p, n):
    v = classify_tn_tau_finiteness(p, n)
    return v.conclusion, v.rule


@pytest.mark.parametrize(
    "pres, n, expected",
    [
        (build_truncated_polynomial(3), 7, ("TauFinite", "R1")),
        (A(2), 5, ("TauInfinite", "R2")),
        (build_nakayama(3, False, 2), 3, ("TauFinite", "R3")),
        (build_nakayama(3, True, 2), 3, ("TauFinite", "R3")),
        (A(3), 3, ("TauInfinite", "R3")),
        (build_nakayama(3, False, 2), 4, ("TauInfinite", "R3")),
        (A(2), 3, ("TauFinite", "R4")),
        (A(2), 4, ("TauFinite", "R4")),
        (build_nakayama(2, True, 3), 3, ("TauFinite", "R4")),
        (build_nakayama(2, True, 2), 4, ("TauInfinite", "R4")),
        (A(4), 2, ("TauFinite", "R5")),
        (A(5), 2, ("TauInfinite", "R5")),
        (path_algebra(Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2")))), 2, ("TauInfinite", "R6")),
        (tensor_product(A(2), A(2)), 2, ("TauInfinite", "R7")),
        (tensor_product(tensor_product(A(2), A(2)), A(2)), 1, ("TauInfinite", "R7")),
        (ce_algebra(), 2, ("Unknown", None)),
        (A(3), 1, ("Unknown", None)),
    ],
)
def test_rules(pres, n, expected):
    assert verdict(pres, n) == expected


def test_untagged_square_is_unknown():
    # the same algebra without its tag: tensor structure is not detected
    sq = tensor_product(A(2), A(2)).with_tag(None)
    assert verdict(sq, 2) == ("Unknown", None)


def test_hypotheses():
    q = Quiver(("1", "2"), ())
    with pytest.raises(HypothesisError):
        classify_tn_tau_finiteness(path_algebra(q), 2)
    with pytest.raises(HypothesisError):
        classify_tn_tau_finiteness(A(2), 0)


def test_verdict_invariants():
    with pytest.raises(ValueError):
        Verdict("Unknown", "R1")
    with pytest.raises(ValueError):
        Verdict("TauFinite")
    with pytest.raises(ValueError):
        Verdict("Maybe", "R1")
    v = classify_tn_tau_finiteness(A(2), 5)
    assert v.to_json() == {
        "conclusion": "TauInfinite",
        "rule": "R2",
        "result": PROVENANCE["R2"][0],
        "quote": PROVENANCE["R2"][1],
    }
    assert "rule" in Verdict("Unknown").to_json() and "quote" not in Verdict("Unknown").to_json()


def test_provenance_table_is_fixed():
    assert set(PROVENANCE) == {"R1", "R2", "R3", "R4", "R5", "R6", "R7", "S1", "S2", "S3", "2rad2"}
    assert PROVENANCE["R5"][1] == "commutative ladder of degree n"
    assert PROVENANCE["S2"][1] == "(iii) n=2 and 1<r≤4"


@pytest.mark.parametrize(
    "r, n, ok",
    [(3, 1, True), (1, 6, True), (4, 2, True), (2, 4, True), (2, 3, True),
     (5, 2, False), (3, 3, False), (2, 5, False), (3, 4, False)],
)
def test_lsd_table(r, n, ok):
    v = classify_silting_discreteness(build_nakayama(r, False, 2), n)
    if r == 1:
        assert v.rule == "S1"
    else:
        assert v.rule == "S2"
    assert v.conclusion == ("SiltingDiscrete" if ok else "NotSiltingDiscrete")


def test_silting_tensor_rule():
    v = classify_silting_discreteness(tensor_product(build_truncated_polynomial(2), A(2)), 1)
    assert (v.conclusion, v.rule) == ("SiltingDiscrete", "S3")
    assert classify_silting_discreteness(A(3), 2).conclusion == "Unknown"


def test_reduce_2rad2():
    red, note = reduce_2rad2(build_nakayama(2, True, 4), 2)
    assert compute_algebra(red).dim == 4 and note
    assert len(red.quiver.vertices) == 2
    for p in (A(2), build_nakayama(3, True, 3), build_nakayama(2, True, 2)):
        same, note = reduce_2rad2(p, 2)
        assert same is p and note is None


def test_reduction_recorded_in_verdict():
    v = classify_tn_tau_finiteness(build_nakayama(2, True, 3), 3)
    assert v.rule == "R4" and len(v.reductions) == 1


def test_check_item_and_experiments(corpus_dir):
    cfg = CrosscheckConfig(budget=2000, max_seconds=60)
    items = {it.item: it for it in load_corpus(corpus_dir / "corpus.txt")}
    row = check_item(items["a3@n=2"], cfg)
    assert row["consistent"] and row["explorer"] == {"status": "Finite", "count": 632}
    row = experiment_sd_shadow("ka2", A(2), cfg)
    assert row["consistent"] and row["counts"] == [5, 5]
    row = experiment_2rad2("cyc", build_nakayama(2, True, 3), 2, cfg)
    assert row["consistent"] and row["counts"][0] == row["counts"][1]


def test_inconsistency_is_flagged():
    from taufin.classify import CorpusItem

    cfg = CrosscheckConfig(budget=10, max_seconds=30)
    # a TauFinite verdict whose explorer run cannot close up within 10 pairs
    row = check_item(CorpusItem("tiny-budget", A(3), 2, "TauFinite"), cfg)
    assert not row["consistent"] and row["problems"]
    assert row["second_prime"]["field"] == "fp:10007"


def _random_presentation(draw):
    nv = draw(st.integers(1, 4))
    verts = tuple(str(i + 1) for i in range(nv))
    arrows = []
    for k in range(draw(st.integers(0, 5))):
        s = draw(st.sampled_from(verts))
        t = draw(st.sampled_from(verts))
        arrows.append(Arrow(f"a{k}", s, t))
    q = Quiver(verts, tuple(arrows))
    rels = []
    if draw(st.booleans()):
        for a in arrows:
            for b in arrows:
                if a.target == b.source and draw(st.booleans()):
                    rels.append((((a.name, b.name), Fraction(1)),))
    return BoundPresentation(q, tuple(rels), draw(st.integers(2, 3)))


@st.composite
def presentations(draw):
    return _random_presentation(draw)


@settings(max_examples=200, deadline=None)
@given(presentations(), st.integers(1, 6))
def test_rule_list_is_total(pres, n):
    if not pres.quiver.is_connected():
        with pytest.raises(HypothesisError):
            classify_tn_tau_finiteness(pres, n)
        return
    v = classify_tn_tau_finiteness(pres, n)
    assert v.conclusion in CONCLUSIONS
    assert (v.rule is None) == (v.conclusion == "Unknown")
    assert v.rule is None or v.rule in PROVENANCE
    s = classify_silting_discreteness(pres, n)
    assert (s.rule is None) == (s.conclusion == "Unknown")


@settings(max_examples=200, deadline=None)
@given(presentations())
def test_reduce_2rad2_shrinks(pres):
    red, note = reduce_2rad2(pres, 2)
    assert red.quiver.vertices == pres.quiver.vertices
    if note is not None:
        assert compute_algebra(red).dim < compute_algebra(pres).dim
