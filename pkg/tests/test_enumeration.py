import pytest

from drgcore.enumeration import enumerate_arrays
from drgcore.homtheory import TAG_BIPARTITE


@pytest.fixture(scope="module")
def primitive_k6():
    return list(enumerate_arrays(3, 6, families={"primitive"}, jobs=1))


class TestEnumerate:
    def test_primitive_k6_contains_published_arrays(self, primitive_k6):
        got = {r.array for r in primitive_k6}
        expected = {"{4,2,2;1,1,2}", "{5,4,2;1,1,4}", "{5,4,3;1,1,2}",
                    "{6,3,3;1,1,2}", "{6,4,2;1,2,3}", "{6,4,4;1,1,3}",
                    "{6,5,2;1,1,3}"}
        assert expected <= got

    def test_primitive_k6_frozen_set(self, primitive_k6):
        # regression: the battery admits exactly these (the odd-graph array
        # {4,3,3;1,1,2} rightly joins the seven published ones)
        assert [r.array for r in primitive_k6] == [
            "{4,2,2;1,1,2}", "{4,3,3;1,1,2}", "{5,4,2;1,1,4}",
            "{5,4,3;1,1,2}", "{6,3,3;1,1,2}", "{6,4,2;1,2,3}",
            "{6,4,4;1,1,3}", "{6,5,2;1,1,3}"]

    def test_primitive_k3_empty(self):
        # frozen: no primitive diameter-3 array survives at b_0 = 3
        assert list(enumerate_arrays(3, 3, families={"primitive"}, jobs=1)) == []

    def test_k3_all_families_frozen(self):
        recs = list(enumerate_arrays(3, 3, jobs=1))
        assert [(r.array, r.verdict.tag) for r in recs] == [
            ("{3,2,1;1,2,3}", TAG_BIPARTITE),
            ("{3,2,2;1,1,3}", TAG_BIPARTITE)]

    def test_antipodal_k8_contains_published(self):
        got = {r.array for r in
               enumerate_arrays(3, 8, families={"antipodal"}, jobs=1)}
        assert {"{8,6,1;1,1,8}", "{8,6,1;1,3,8}"} <= got

    def test_lexicographic_order(self, primitive_k6):
        keys = [r.k_tuple_sort_key for r in primitive_k6]
        assert keys == sorted(keys)

    def test_records_only_feasible(self, primitive_k6):
        assert all(r.report.feasible for r in primitive_k6)

    def test_spectrum_summary_shape(self, primitive_k6):
        rec = next(r for r in primitive_k6 if r.array == "{4,2,2;1,1,2}")
        assert [s.value for s in rec.spectrum] == ["4", "2.414", "-0.414", "-2"]
        assert [s.multiplicity for s in rec.spectrum] == [1, 6, 6, 8]
        assert rec.spectrum[1].minpoly == (-1, -2, 1)  # x^2 - 2x - 1
        assert rec.n == 21 and rec.k == (1, 4, 8, 8)

    def test_monotone_prefix(self, primitive_k6):
        smaller = list(enumerate_arrays(3, 5, families={"primitive"}, jobs=1))
        assert [r.array for r in smaller] == \
            [r.array for r in primitive_k6 if r.k[1] <= 5]

    def test_determinism_and_worker_pool(self, primitive_k6):
        twice = list(enumerate_arrays(3, 6, families={"primitive"}, jobs=2))
        assert [r.array for r in twice] == [r.array for r in primitive_k6]
        assert twice == primitive_k6

    def test_family_filter_validation(self):
        with pytest.raises(ValueError):
            list(enumerate_arrays(3, 4, families={"imprimitive"}))
        with pytest.raises(ValueError):
            list(enumerate_arrays(3, 2))
        with pytest.raises(ValueError):
            list(enumerate_arrays(1, 5))

    def test_diameter_two_generic_path(self):
        recs = list(enumerate_arrays(2, 5, families={"primitive"}, jobs=1))
        got = {r.array for r in recs}
        # the pentagon parameters are valency 2, excluded; Petersen's survive
        assert "{3,2;1,1}" in got
        assert all(r.report.feasible for r in recs)
