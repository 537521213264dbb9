from fractions import Fraction

import pytest

from drgcore.algebra import GREATER, compare
from drgcore.homtheory import (
    TAG_BIPARTITE,
    TAG_CORE_COMPLETE,
    TAG_INCONCLUSIVE,
    TAG_NO_SMALL_ENDO,
    TAG_SMALLER_DIAMETER,
    analyze_array,
    classify,
    complete_core_test,
    interval_triple_search,
    regrouped_identity_holds,
    search_triples,
)
from drgcore.params import classify_family, derive_parameters, spectral_data


def _prepare(text):
    ps = derive_parameters(text)
    sd = spectral_data(ps)
    return ps, sd


def triples(text, e=2):
    ps, sd = _prepare(text)
    return [w.as_tuple() for w in search_triples(ps, sd, e)]


class TestSearchTriples:
    # witness sets from the published diameter-3 survey
    CASES = {
        "{4,2,2;1,1,2}": [(0, 1, 1)],
        "{5,4,2;1,1,4}": [(0, 1, 1), (1, 0, 2)],
        "{6,4,2;1,2,3}": [(0, 1, 1), (1, 0, 2)],
        "{10,6,4;1,2,5}": [(0, 2, 2), (1, 1, 3), (2, 0, 4)],
        "{14,8,8;1,1,7}": [(0, 4, 4), (1, 3, 5), (2, 2, 6), (3, 1, 7), (4, 0, 8)],
        "{18,16,16;1,1,9}": [(0, 8, 8)],
        "{8,4,4;1,1,2}": [(0, 1, 3), (1, 0, 4)],
        "{6,5,2;1,1,3}": [],
        "{4,3,3;1,1,2}": [],
        "{8,6,1;1,3,8}": [],
    }

    @pytest.mark.parametrize("text,expected", sorted(CASES.items()))
    def test_published_witness_sets(self, text, expected):
        assert triples(text) == expected

    def test_lexicographic_order(self):
        got = triples("{15,12,6;1,2,10}")
        assert got == sorted(got)
        assert got == [(0, 3, 3), (1, 2, 4), (2, 1, 5), (3, 0, 6)]

    def test_e_out_of_range(self):
        ps, sd = _prepare("{4,2,2;1,1,2}")
        with pytest.raises(ValueError):
            search_triples(ps, sd, 1)
        with pytest.raises(ValueError):
            search_triples(ps, sd, 3)

    def test_strict_inequality_and_regrouped_form(self):
        for text in ("{10,6,4;1,2,5}", "{14,8,8;1,1,7}", "{8,4,4;1,1,2}"):
            ps, sd = _prepare(text)
            for w in search_triples(ps, sd, 2):
                # part (b) strictly, re-checked through the exact comparator
                assert compare(Fraction(w.gamma - w.alpha - ps.a[2]),
                               sd.theta[ps.d]) == GREATER
                # the regrouped single-equation form must agree exactly
                assert regrouped_identity_holds(ps, sd, w)

    def test_alpha_keeps_a_distance_e_neighbour(self):
        for text, expected in self.CASES.items():
            ps, _ = _prepare(text)
            for alpha, _, _ in expected:
                assert alpha < ps.a[2]

    def test_sign_structure_asserted(self):
        ps, sd = _prepare("{6,5,2;1,1,3}")
        row = sd.w[ps.d]
        assert row[1].sign() * row[2].sign() < 0


class TestIntervalRecheck:
    @pytest.mark.parametrize("text", sorted(TestSearchTriples.CASES))
    def test_agrees_with_exact_search(self, text):
        ps, sd = _prepare(text)
        exact = [w.as_tuple() for w in search_triples(ps, sd, 2)]
        assert interval_triple_search(ps, sd, 2) == exact


class TestCompleteCore:
    def test_pentagon_greater(self):
        ps, sd = _prepare("{2,1;1,1}")
        r = complete_core_test(ps, sd)
        assert r.theta_d_vs_minus2 == "Greater" and r.bound is None

    def test_equal_with_bound_twelve(self):
        ps, sd = _prepare("{12,6,5;1,1,4}")
        r = complete_core_test(ps, sd)
        assert r.theta_d_vs_minus2 == "Equal"
        assert r.bound == Fraction(12)

    def test_less(self):
        ps, sd = _prepare("{6,5,2;1,1,3}")
        assert complete_core_test(ps, sd).theta_d_vs_minus2 == "Less"


class TestClassify:
    def test_core_complete_row(self):
        ps, sd = _prepare("{6,5,2;1,1,3}")
        v = classify(ps, sd, classify_family(ps, sd))
        assert v.tag == TAG_CORE_COMPLETE
        assert not v.witnesses

    def test_smaller_diameter_candidate(self):
        ps, sd = _prepare("{4,2,2;1,1,2}")
        v = classify(ps, sd, classify_family(ps, sd))
        assert v.tag == TAG_SMALLER_DIAMETER
        assert [w.as_tuple() for w in v.witnesses] == [(0, 1, 1)]

    def test_odd_graph_inconclusive(self):
        # a_3 = 2 is not above theta_1 = 2, so connectivity is not established
        ps, sd = _prepare("{4,3,3;1,1,2}")
        v = classify(ps, sd, classify_family(ps, sd))
        assert v.tag == TAG_INCONCLUSIVE
        assert not v.witnesses
        assert any("far subgraph connectivity not established" in n for n in v.notes)

    def test_antipodal_no_small_endomorphism(self):
        for text in ("{8,6,1;1,3,8}", "{8,6,1;1,1,8}",
                     "{13,8,1;1,4,13}", "{11,8,1;1,2,11}"):
            ps, sd = _prepare(text)
            fc = classify_family(ps, sd)
            assert fc.antipodal and not fc.bipartite
            v = classify(ps, sd, fc)
            assert v.tag == TAG_NO_SMALL_ENDO, text
            assert not v.witnesses

    def test_bipartite_tag(self):
        ps, sd = _prepare("{3,2,1;1,2,3}")
        v = classify(ps, sd, classify_family(ps, sd))
        assert v.tag == TAG_BIPARTITE

    def test_witness_invariant(self):
        for text in ("{6,5,2;1,1,3}", "{4,2,2;1,1,2}", "{8,6,1;1,3,8}"):
            ps, sd = _prepare(text)
            v = classify(ps, sd, classify_family(ps, sd))
            assert bool(v.witnesses) == (v.tag == TAG_SMALLER_DIAMETER)


class TestAnalyze:
    def test_bundle_for_feasible_array(self):
        a = analyze_array("{6,5,2;1,1,3}")
        assert a.report.feasible
        assert a.family.primitive
        assert a.verdict.tag == TAG_CORE_COMPLETE
        assert a.complete_core.theta_d_vs_minus2 == "Less"

    def test_bundle_for_pentagon(self):
        # analyzable, but no family/verdict at valency 2
        a = analyze_array("{2,1;1,1}")
        assert a.report.feasible
        assert a.sd is not None
        assert a.family is None and a.verdict is None
        assert a.notes

    def test_bundle_for_infeasible(self):
        a = analyze_array("{4,1,1;1,1,4}")
        assert not a.report.feasible
        assert a.verdict is None

    def test_verdict_json(self):
        a = analyze_array("{4,2,2;1,1,2}")
        obj = a.verdict.to_json_dict()
        assert obj["tag"] == TAG_SMALLER_DIAMETER
        assert obj["witnesses"] == [[0, 1, 1]]
