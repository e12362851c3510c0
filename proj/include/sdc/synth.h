//
// Copyright 2026 The sdcwork Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SDC_SYNTH_H_
#define SDC_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sdc/dataset.h"
#include "sdc/json_io.h"
#include "sdc/value.h"

namespace sdc {

inline constexpr const char* kPathologyFlags[] = {
    "CANC",  "Cerebrovascular", "Diabetes", "Kidney",  "Liver",
    "Lung",  "Heart",           "Smoking",  "Obesity"};

// Parameters of the synthetic hospital cohort. Subset sizes are given as
// fractions of n and realised as exact quotas (llround(fraction * n)).
struct SyntheticConfig {
  size_t n = 1716;
  Date window_start = MakeDate(2020, 3, 1);
  Date window_end = MakeDate(2021, 1, 31);

  // Adults follow a normal distribution truncated to [adult_age_min,
  // adult_age_max]; newborns have Age 0. target_mean_age is what
  // ValidateRealism checks the whole cohort against.
  double target_mean_age = 67;
  double adult_age_mu = 68.5;
  double adult_age_sd = 15;
  int adult_age_min = 18;
  int adult_age_max = 99;
  double male_share = 0.55;

  double death_fraction = 368.0 / 1716;
  double nursing_home_fraction = 41.0 / 1716;
  double other_fraction = 69.0 / 1716;
  double intensive_care_fraction = 529.0 / 1716;
  double newborn_fraction = 12.0 / 1716;
  double re_incident_fraction = 31.0 / 1716;

  std::map<std::string, double> flag_prevalence;
  // Exact share of missing ("Unknown") cells per column.
  std::map<std::string, double> unknown_rate;

  // Smallest allowed nonempty cell of (5-year age band, gender, recoded
  // outcome) among first admissions; 0 disables the adjustment.
  size_t min_cell_size = 3;
  uint64_t seed = 42;

  static SyntheticConfig Defaults();
  // Throws kInvalidArgument for fractions outside [0, 1] or quotas that do
  // not fit in n.
  void Validate() const;
};

SyntheticConfig SyntheticConfigFromJson(const Json& j);
Json SyntheticConfigToJson(const SyntheticConfig& c);

struct SyntheticCounts {
  size_t deaths = 0;
  size_t nursing_home = 0;
  size_t other = 0;
  size_t intensive_care = 0;
  size_t newborns = 0;
  size_t re_incidents = 0;
};
SyntheticCounts QuotaCounts(const SyntheticConfig& c);

// Schema of the generated table, with default privacy classes.
Schema SyntheticSchema();

// Deterministic in (config, config.seed).
Dataset Generate(const SyntheticConfig& config);

struct RealismCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RealismReport {
  std::vector<RealismCheck> checks;
  size_t missing_cells = 0;
  bool AllPassed() const;
};

// Quotas, mean age within 2 years, date ordering and window, unknown rates
// within 2 percentage points.
RealismReport ValidateRealism(const Dataset& ds, const SyntheticConfig& config);

}  // namespace sdc

#endif  // SDC_SYNTH_H_
