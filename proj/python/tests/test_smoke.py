#
# Copyright 2026 The sdcwork Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""Smoke tests for the Python bindings."""

import json
import pathlib

import pytest

import sdc

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="module")
def cohort():
    return sdc.generate(seed=42)


@pytest.fixture(scope="module")
def recipe():
    return json.loads((ROOT / "configs" / "recipe.json").read_text())


def test_generate_defaults(cohort):
    assert cohort.rows == 1716
    assert len(cohort) == 1716
    assert "Outcome" in cohort.columns
    assert cohort.column("Outcome").count("D") == 368
    assert sdc.validate_realism(cohort)["all_passed"]


def test_generate_is_deterministic(cohort):
    assert sdc.generate(seed=42).to_csv() == cohort.to_csv()
    assert sdc.generate(seed=7).to_csv() != cohort.to_csv()


def test_parse_csv_and_missing_cells():
    ds = sdc.parse_csv("Age,Gender\n67,M\nUnknown,F\n")
    assert ds.column("Age") == [67.0, None]
    assert ds.schema[0]["kind"] == "Numeric"


def test_k_anonymity_example():
    ds = sdc.parse_csv("Age,Gender\n30,M\n30,M\n40,F\n50,F\n50,F\n")
    ds = ds.classify({"Age": "QuasiIdentifier", "Gender": "QuasiIdentifier"})
    r = sdc.k_anonymity_risk(ds, ["Age", "Gender"])
    assert r["risk_percent"] == 20.0
    assert r["unique_count"] == 1
    assert r["min_k"] == 1


def test_initial_risk_ordering(cohort):
    coarse = sdc.k_anonymity_risk(cohort, ["Age", "Gender"])["risk_percent"]
    fine = sdc.k_anonymity_risk(
        cohort, ["Age", "DateOfFirstPositiveLabResult", "Gender"])["risk_percent"]
    assert coarse <= 10 < 95 <= fine


def test_subset_risk_and_filter(cohort):
    deaths = cohort.filter("Outcome:eq:D")
    assert deaths.rows == 368
    assert (sdc.subset_risk(cohort, "Outcome:eq:D", ["Age", "Gender"]) ==
            sdc.k_anonymity_risk(deaths, ["Age", "Gender"]))


def test_l_diversity(cohort):
    l = sdc.l_diversity(cohort, ["Age", "Gender"], "Cerebrovascular")
    k = sdc.k_anonymity_risk(cohort, ["Age", "Gender"])["min_k"]
    assert 1 <= l["min_l"] <= k


def test_apply_step_and_linkage(cohort):
    step = {"variant": "AddUniformIntegerNoise",
            "column": "DateOfFirstPositiveLabResult",
            "params": {"lo": -3, "hi": 3}, "seed": 1}
    noised, record = sdc.apply_step(cohort, step)
    assert record["perturbative"]
    assert noised.rows == cohort.rows
    link = sdc.record_linkage(cohort, noised, ["Age", "DateOfFirstPositiveLabResult"])
    assert 0 <= link["total_match_percent"] <= 100
    assert link["total_match_percent"] + link["ambiguous_percent"] <= 100 + 1e-9


def test_run_pipeline_recipe(cohort, recipe):
    out, report = sdc.run_pipeline(cohort, recipe)
    assert out.rows == 1685
    assert len(report["steps"]) == len(recipe["steps"])
    metrics = {tuple(row["scenario"]): row["assessment"]["metric"]
               for row in report["steps"][-1]["risk"]}
    for qis, metric in metrics.items():
        noised = "DateOfFirstPositiveLabResult" in qis
        assert metric == ("RecordLinkage" if noised else "KAnonymity")
    markdown = sdc.render_report(report, "markdown")
    assert markdown.count("#### Scenario:") == len(recipe["steps"]) * len(recipe["scenarios"])


def test_errors_carry_codes(cohort, recipe):
    with pytest.raises(sdc.SdcError) as err:
        sdc.k_anonymity_risk(cohort, ["Nope"])
    assert err.value.code == "not_found"
    with pytest.raises(sdc.SdcError) as err:
        sdc.subset_risk(cohort, "Outcome:eq:ZZ", ["Age"])
    assert err.value.code == "empty_subset"
    bad = dict(recipe)
    bad["steps"] = recipe["steps"][:2] + [
        {"variant": "BinQuantiles", "columns": ["Nope"], "params": {"q": 4}}]
    with pytest.raises(sdc.PipelineError) as err:
        sdc.run_pipeline(cohort, bad)
    assert len(err.value.partial_report["steps"]) == 2
