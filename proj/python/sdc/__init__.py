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
"""Disclosure risk assessment and de-identification of tabular data.

Risk results, transform steps, pipeline specs and reports are plain dicts in
the same shape as the JSON files used by the command-line tool.
"""

from sdc._sdc import (
    Dataset,
    PipelineError,
    SdcError,
    apply_step,
    default_config,
    generate,
    k_anonymity_risk,
    l_diversity,
    load_csv,
    parse_csv,
    record_linkage,
    render_report,
    run_pipeline,
    subset_risk,
    validate_realism,
)

__all__ = [
    "Dataset",
    "PipelineError",
    "SdcError",
    "apply_step",
    "default_config",
    "generate",
    "k_anonymity_risk",
    "l_diversity",
    "load_csv",
    "parse_csv",
    "record_linkage",
    "render_report",
    "run_pipeline",
    "subset_risk",
    "validate_realism",
]
