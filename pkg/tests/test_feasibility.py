import json

import pytest

from drgcore.feasibility import CHECK_IDS, FeasibilityReport, run_battery


class TestBattery:
    def test_paper_row_passes_everything(self):
        r = run_battery("{6,5,2;1,1,3}")
        assert r.feasible
        assert [c.verdict for c in r.checks] == ["pass"] * 8

    def test_pentagon_array_passes(self):
        r = run_battery("{2,1;1,1}")
        assert r.feasible

    def test_irrational_multiplicity_fails_f6(self):
        # frozen regression: first failing check for {4,1,1;1,1,4} is F6
        r = run_battery("{4,1,1;1,1,4}")
        assert not r.feasible
        assert r.failed_check() == "F6"
        verdicts = {c.check_id: c.verdict for c in r.checks}
        assert verdicts["F5"] == "pass"
        assert verdicts["F7"] == verdicts["F8"] == "skipped"

    def test_shape_failure_is_f1(self):
        r = run_battery(((2, 3), (1, 1)))
        assert r.failed_check() == "F1"
        assert all(c.verdict == "skipped" for c in r.checks[1:])

    def test_valency_failure_is_f2(self):
        r = run_battery("{7,5,2;1,2,3}")  # k_2 = 35/2
        assert r.failed_check() == "F2"

    def test_malformed_text_is_f1(self):
        r = run_battery("{6,5;1}")
        assert r.failed_check() == "F1"

    def test_check_order_fixed(self):
        r = run_battery("{6,5,2;1,1,3}")
        assert tuple(c.check_id for c in r.checks) == CHECK_IDS

    def test_no_false_rejections_on_paper_arrays(self):
        # every array quoted from the published tables must clear the battery
        paper_arrays = [
            "{4,2,2;1,1,2}", "{5,4,2;1,1,4}", "{5,4,3;1,1,2}", "{6,3,3;1,1,2}",
            "{6,4,2;1,2,3}", "{6,4,4;1,1,3}", "{6,5,2;1,1,3}", "{8,4,4;1,1,2}",
            "{12,6,5;1,1,4}", "{18,15,9;1,1,10}", "{25,20,16;1,1,1}",
            "{8,6,1;1,1,8}", "{8,6,1;1,3,8}", "{13,8,1;1,4,13}", "{11,8,1;1,2,11}",
        ]
        for text in paper_arrays:
            assert run_battery(text).feasible, text


class TestDeterminismAndJson:
    def test_byte_identical_reports(self):
        a = run_battery("{10,6,4;1,2,5}").to_json()
        b = run_battery("{10,6,4;1,2,5}").to_json()
        assert a == b

    def test_json_schema(self):
        obj = json.loads(run_battery("{6,5,2;1,1,3}").to_json())
        assert obj["array"] == "{6,5,2;1,1,3}"
        assert obj["feasible"] is True
        assert [c["id"] for c in obj["checks"]] == list(CHECK_IDS)
        assert set(obj["checks"][0]) == {"id", "verdict", "detail"}

    def test_json_roundtrip(self):
        r = run_battery("{4,1,1;1,1,4}")
        back = FeasibilityReport.from_json_dict(json.loads(r.to_json()))
        assert back == r
