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

#include "sdc/synth.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "sdc/error.h"
#include "sdc/rng.h"

namespace sdc {

namespace {

constexpr const char* kUnknown = "Unknown";

// Columns ValidateRealism and Generate accept in unknown_rate.
bool MayBeUnknown(const std::string& column) {
  static const std::set<std::string> kColumns = [] {
    std::set<std::string> s = {"CloseContactRecordId", "DateOfOnset",
                               "PlaceOfInfection", "IntensiveCare", "Gender"};
    for (const char* f : kPathologyFlags) s.insert(f);
    return s;
  }();
  return kColumns.count(column) > 0;
}

size_t Quota(double fraction, size_t n) {
  return static_cast<size_t>(std::llround(fraction * static_cast<double>(n)));
}

void CheckFraction(const std::string& what, double v) {
  if (!(v >= 0 && v <= 1)) {
    Fail(ErrorCode::kInvalidArgument,
         what + " must be in [0, 1], got " + FormatNumber(v));
  }
}

// First k entries of a seeded permutation of `pool`.
std::vector<size_t> Sample(Rng& rng, std::vector<size_t> pool, size_t k) {
  rng.Shuffle(pool);
  pool.resize(std::min(k, pool.size()));
  return pool;
}

std::vector<size_t> Iota(size_t n) {
  std::vector<size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

struct Person {
  bool newborn = false;
  std::string gender;
  int age = 0;
  int64_t age_days = 0;
  char outcome = 'H';
  int64_t first_positive = 0;  // seconds
  int64_t onset = 0;           // days
  int64_t hospitalised = 0;
  int64_t discharged = 0;
  std::string record_id;
};

// Moves sparse (5-year band, gender) strata of adults towards the centre of
// the age distribution until every nonempty stratum holds at least `m`.
void MergeSparseAgeBands(std::vector<Person>& people, int centre, size_t m) {
  const int centre_band = centre / 5;
  for (const char* g : {"F", "M"}) {
    auto rows_in = [&](int band) {
      std::vector<size_t> rows;
      for (size_t i = 0; i < people.size(); ++i) {
        const Person& p = people[i];
        if (!p.newborn && p.gender == g && p.age / 5 == band) rows.push_back(i);
      }
      return rows;
    };
    int lo = centre_band, hi = centre_band;
    for (const Person& p : people) {
      if (p.newborn) continue;
      lo = std::min(lo, p.age / 5);
      hi = std::max(hi, p.age / 5);
    }
    for (int b = lo; b < centre_band; ++b) {
      auto rows = rows_in(b);
      if (!rows.empty() && rows.size() < m) {
        for (size_t i : rows) {
          people[i].age += 5;
          people[i].age_days += 5 * 365;
        }
      }
    }
    for (int b = hi; b > centre_band; --b) {
      auto rows = rows_in(b);
      if (!rows.empty() && rows.size() < m) {
        for (size_t i : rows) {
          people[i].age -= 5;
          people[i].age_days -= 5 * 365;
        }
      }
    }
  }
}

struct Stratum {
  int band = 0;
  std::vector<size_t> members;  // shuffled
  size_t next = 0;              // members before `next` have an outcome
  std::map<char, size_t> assigned;
  size_t unassigned() const { return members.size() - next; }
};

// Quota assignment of `label` to adults in chunks, so that every
// (stratum, outcome) cell and every stratum's remainder is either empty or
// holds at least `m` rows. Stratum choice is weighted by weight(band) times
// the unassigned count.
template <typename W>
void AllocateOutcome(Rng& rng, std::vector<Stratum>& strata,
                     std::vector<Person>& people, char label, size_t quota,
                     size_t m, W weight) {
  size_t remaining = quota;
  while (remaining > 0) {
    size_t chunk = 1;
    if (m > 0) chunk = remaining < 2 * m ? remaining : m;
    auto fits = [&](const Stratum& s, size_t c, bool strict) {
      const size_t u = s.unassigned();
      if (u < c) return false;
      if (!strict || m == 0) return true;
      const size_t left = u - c;
      const bool rest_ok = left == 0 || left >= m;
      const bool cell_ok = c >= m || s.assigned.count(label) > 0;
      return rest_ok && cell_ok;
    };
    std::vector<double> w(strata.size(), 0.0);
    double total = 0;
    for (bool strict : {true, false}) {
      for (size_t i = 0; i < strata.size(); ++i) {
        w[i] = fits(strata[i], chunk, strict)
                   ? weight(strata[i].band) * double(strata[i].unassigned())
                   : 0.0;
        total += w[i];
      }
      if (total > 0) break;
      // Zero weights everywhere: fall back to size alone.
      for (size_t i = 0; i < strata.size(); ++i) {
        w[i] = fits(strata[i], chunk, strict) ? double(strata[i].unassigned())
                                              : 0.0;
        total += w[i];
      }
      if (total > 0) break;
    }
    if (total <= 0) {
      if (chunk == 1) {
        Fail(ErrorCode::kInvalidArgument,
             "infeasible outcome quotas: not enough adults");
      }
      chunk = 1;
      continue;
    }
    double r = rng.UniformDouble() * total;
    size_t pick = 0;
    for (; pick + 1 < strata.size(); ++pick) {
      if (r < w[pick]) break;
      r -= w[pick];
    }
    while (w[pick] == 0) --pick;  // guards rounding at the top end
    Stratum& s = strata[pick];
    for (size_t k = 0; k < chunk; ++k) people[s.members[s.next++]].outcome = label;
    s.assigned[label] += chunk;
    remaining -= chunk;
  }
}

ColumnSpec Col(std::string name, ValueKind kind, AttributeClass cls) {
  ColumnSpec c;
  c.name = std::move(name);
  c.kind = kind;
  c.attribute_class = cls;
  return c;
}

std::string Flag(bool yes) { return yes ? "Y" : "N"; }

}  // namespace

SyntheticConfig SyntheticConfig::Defaults() {
  SyntheticConfig c;
  c.flag_prevalence = {{"CANC", 0.08},   {"Cerebrovascular", 0.07},
                       {"Diabetes", 0.25}, {"Kidney", 0.12},
                       {"Liver", 0.04},  {"Lung", 0.15},
                       {"Heart", 0.30},  {"Smoking", 0.10},
                       {"Obesity", 0.14}};
  c.unknown_rate = {{"CloseContactRecordId", 0.85},
                    {"DateOfOnset", 0.75},
                    {"PlaceOfInfection", 0.80},
                    {"IntensiveCare", 0.02}};
  for (const char* f : kPathologyFlags) c.unknown_rate[f] = 0.03;
  return c;
}

SyntheticCounts QuotaCounts(const SyntheticConfig& c) {
  return {Quota(c.death_fraction, c.n),
          Quota(c.nursing_home_fraction, c.n),
          Quota(c.other_fraction, c.n),
          Quota(c.intensive_care_fraction, c.n),
          Quota(c.newborn_fraction, c.n),
          Quota(c.re_incident_fraction, c.n)};
}

void SyntheticConfig::Validate() const {
  CheckFraction("death_fraction", death_fraction);
  CheckFraction("nursing_home_fraction", nursing_home_fraction);
  CheckFraction("other_fraction", other_fraction);
  CheckFraction("intensive_care_fraction", intensive_care_fraction);
  CheckFraction("newborn_fraction", newborn_fraction);
  CheckFraction("re_incident_fraction", re_incident_fraction);
  CheckFraction("male_share", male_share);
  for (const auto& [name, p] : flag_prevalence) {
    if (std::find_if(std::begin(kPathologyFlags), std::end(kPathologyFlags),
                     [&](const char* f) { return name == f; }) ==
        std::end(kPathologyFlags)) {
      Fail(ErrorCode::kInvalidArgument, "unknown pathology flag '" + name + "'");
    }
    CheckFraction("prevalence of " + name, p);
  }
  for (const auto& [name, p] : unknown_rate) {
    if (!MayBeUnknown(name)) {
      Fail(ErrorCode::kInvalidArgument,
           "column '" + name + "' has no unknown rate");
    }
    CheckFraction("unknown rate of " + name, p);
  }
  if (adult_age_min < 1 || adult_age_min > adult_age_max) {
    Fail(ErrorCode::kInvalidArgument, "adult age range is empty");
  }
  if (!(adult_age_sd > 0)) {
    Fail(ErrorCode::kInvalidArgument, "adult_age_sd must be positive");
  }
  if (window_end.days - window_start.days < 60) {
    Fail(ErrorCode::kInvalidArgument, "date window must span at least 60 days");
  }
  const SyntheticCounts q = QuotaCounts(*this);
  if (q.re_incidents > n) {
    Fail(ErrorCode::kInvalidArgument, "infeasible fractions: re-incidents exceed n");
  }
  const size_t persons = n - q.re_incidents;
  if (q.deaths + q.nursing_home + q.other + q.newborns > persons) {
    Fail(ErrorCode::kInvalidArgument,
         "infeasible fractions: death, nursing home, other and newborn "
         "quotas exceed the number of first admissions");
  }
  if (q.re_incidents > persons - q.deaths - q.newborns) {
    Fail(ErrorCode::kInvalidArgument,
         "infeasible fractions: too few surviving adults for re-incidents");
  }
  const double icu_unknown = unknown_rate.count("IntensiveCare")
                                 ? unknown_rate.at("IntensiveCare")
                                 : 0.0;
  if (q.intensive_care + Quota(icu_unknown, n) > n) {
    Fail(ErrorCode::kInvalidArgument,
         "infeasible fractions: intensive care plus unknown exceed n");
  }
}

SyntheticConfig SyntheticConfigFromJson(const Json& j) {
  SyntheticConfig c = WithJsonErrors("synthetic config", [&] {
    SyntheticConfig c = SyntheticConfig::Defaults();
    if (!j.is_object()) {
      Fail(ErrorCode::kInvalidArgument, "synthetic config must be an object");
    }
    auto date = [&](const char* key, Date& out) {
      if (!j.contains(key)) return;
      const std::string text = j.at(key).get<std::string>();
      auto d = ParseDate(text);
      if (!d) Fail(ErrorCode::kInvalidArgument, std::string(key) + ": bad date '" + text + "'");
      out = *d;
    };
    c.n = j.value("n", c.n);
    if (j.contains("date_window")) {
      const Json& w = j.at("date_window");
      auto a = ParseDate(w.at(0).get<std::string>());
      auto b = ParseDate(w.at(1).get<std::string>());
      if (!a || !b) Fail(ErrorCode::kInvalidArgument, "date_window: bad date");
      c.window_start = *a;
      c.window_end = *b;
    }
    date("window_start", c.window_start);
    date("window_end", c.window_end);
    if (j.contains("age")) {
      const Json& a = j.at("age");
      c.target_mean_age = a.value("target_mean", c.target_mean_age);
      c.adult_age_mu = a.value("adult_mu", c.adult_age_mu);
      c.adult_age_sd = a.value("adult_sd", c.adult_age_sd);
      c.adult_age_min = a.value("adult_min", c.adult_age_min);
      c.adult_age_max = a.value("adult_max", c.adult_age_max);
    }
    c.male_share = j.value("male_share", c.male_share);
    if (j.contains("fractions")) {
      const Json& f = j.at("fractions");
      c.death_fraction = f.value("death", c.death_fraction);
      c.nursing_home_fraction = f.value("nursing_home", c.nursing_home_fraction);
      c.other_fraction = f.value("other", c.other_fraction);
      c.intensive_care_fraction = f.value("intensive_care", c.intensive_care_fraction);
      c.newborn_fraction = f.value("newborn", c.newborn_fraction);
      c.re_incident_fraction = f.value("re_incident", c.re_incident_fraction);
    }
    if (j.contains("flag_prevalence")) {
      for (const auto& [k, v] : j.at("flag_prevalence").items()) {
        c.flag_prevalence[k] = v.get<double>();
      }
    }
    if (j.contains("unknown_rate")) {
      for (const auto& [k, v] : j.at("unknown_rate").items()) {
        c.unknown_rate[k] = v.get<double>();
      }
    }
    c.min_cell_size = j.value("min_cell_size", c.min_cell_size);
    c.seed = j.value("seed", c.seed);
    return c;
  });
  c.Validate();
  return c;
}

Json SyntheticConfigToJson(const SyntheticConfig& c) {
  Json j = Json::object();
  j["n"] = c.n;
  j["date_window"] = {FormatDate(c.window_start), FormatDate(c.window_end)};
  j["age"] = {{"target_mean", c.target_mean_age},
              {"adult_mu", c.adult_age_mu},
              {"adult_sd", c.adult_age_sd},
              {"adult_min", c.adult_age_min},
              {"adult_max", c.adult_age_max}};
  j["male_share"] = c.male_share;
  j["fractions"] = {{"death", c.death_fraction},
                    {"nursing_home", c.nursing_home_fraction},
                    {"other", c.other_fraction},
                    {"intensive_care", c.intensive_care_fraction},
                    {"newborn", c.newborn_fraction},
                    {"re_incident", c.re_incident_fraction}};
  Json flags = Json::object();
  for (const auto& [k, v] : c.flag_prevalence) flags[k] = v;
  j["flag_prevalence"] = std::move(flags);
  Json unknown = Json::object();
  for (const auto& [k, v] : c.unknown_rate) unknown[k] = v;
  j["unknown_rate"] = std::move(unknown);
  j["min_cell_size"] = c.min_cell_size;
  j["seed"] = c.seed;
  return j;
}

Schema SyntheticSchema() {
  using K = ValueKind;
  using A = AttributeClass;
  std::vector<ColumnSpec> cols = {
      Col("RecordId", K::kIdentifier, A::kDirectIdentifier),
      Col("Age", K::kNumeric, A::kQuasiIdentifier),
      Col("AgeDay", K::kNumeric, A::kQuasiIdentifier),
      Col("AgeMonth", K::kNumeric, A::kQuasiIdentifier),
      Col("CloseContactRecordId", K::kIdentifier, A::kInsensitive),
      Col("DateOfFirstPositiveLabResult", K::kDateTime, A::kQuasiIdentifier),
      Col("DateOfHospitalisation", K::kDate, A::kQuasiIdentifier),
      Col("DateOfDischarge", K::kDate, A::kQuasiIdentifier),
      Col("DateOfOnset", K::kDate, A::kInsensitive),
      Col("Gender", K::kCategorical, A::kQuasiIdentifier),
      Col("Hospitalisation", K::kCategorical, A::kInsensitive),
      Col("IntensiveCare", K::kCategorical, A::kSensitive),
      Col("Outcome", K::kCategorical, A::kQuasiIdentifier),
      Col("PlaceOfInfection", K::kCategorical, A::kInsensitive),
  };
  for (const char* f : kPathologyFlags) {
    cols.push_back(Col(f, K::kCategorical, A::kSensitive));
  }
  return Schema(std::move(cols));
}

Dataset Generate(const SyntheticConfig& config) {
  config.Validate();
  const Schema schema = SyntheticSchema();
  const size_t n = config.n;
  if (n == 0) return Dataset(schema, std::vector<Column>(schema.size()));

  Rng rng(config.seed);
  const SyntheticCounts q = QuotaCounts(config);
  const size_t persons = n - q.re_incidents;
  const int64_t ws = config.window_start.days;
  const int64_t we = config.window_end.days;

  // Demographics.
  std::vector<Person> people(persons);
  std::vector<size_t> newborns = Sample(rng, Iota(persons), q.newborns);
  std::sort(newborns.begin(), newborns.end());
  for (size_t k = 0; k < newborns.size(); ++k) {
    Person& p = people[newborns[k]];
    p.newborn = true;
    p.gender = k % 2 == 0 ? "F" : "M";
    p.age = 0;
    p.age_days = rng.UniformInt(0, 364);
  }
  for (Person& p : people) {
    if (p.newborn) continue;
    p.gender = rng.Bernoulli(config.male_share) ? "M" : "F";
    for (;;) {
      const double x = rng.Normal(config.adult_age_mu, config.adult_age_sd);
      const long a = std::lround(x);
      if (a >= config.adult_age_min && a <= config.adult_age_max) {
        p.age = static_cast<int>(a);
        break;
      }
    }
    p.age_days = int64_t{p.age} * 365 + rng.UniformInt(0, 364);
  }
  if (config.min_cell_size > 0) {
    const int centre = std::clamp(static_cast<int>(std::lround(config.adult_age_mu)),
                                  config.adult_age_min, config.adult_age_max);
    MergeSparseAgeBands(people, centre, config.min_cell_size);
  }

  // Outcomes by quota within (age band, gender) strata of adults.
  std::vector<Stratum> strata;
  {
    std::map<std::pair<int, std::string>, size_t> index;
    for (size_t i = 0; i < persons; ++i) {
      if (people[i].newborn) continue;
      auto key = std::make_pair(people[i].age / 5, people[i].gender);
      auto [it, inserted] = index.emplace(key, strata.size());
      if (inserted) strata.push_back({key.first, {}, 0, {}});
      strata[it->second].members.push_back(i);
    }
    for (Stratum& s : strata) rng.Shuffle(s.members);
  }
  const size_t m = config.min_cell_size;
  AllocateOutcome(rng, strata, people, 'D', q.deaths, m, [](int band) {
    return std::exp((band * 5 + 2.5 - 60) / 10.0);
  });
  AllocateOutcome(rng, strata, people, 'N', q.nursing_home, m, [](int band) {
    const double mid = band * 5 + 2.5;
    return mid >= 70 ? std::exp((mid - 75) / 8.0) : 0.0;
  });
  AllocateOutcome(rng, strata, people, 'O', q.other, m,
                  [](int) { return 1.0; });

  // Dates.
  for (Person& p : people) {
    const int64_t day = rng.UniformInt(ws, we - 45);
    p.first_positive = day * 86400 + rng.UniformInt(0, 86399);
    p.onset = day - rng.UniformInt(0, 10);
    p.hospitalised = std::max(ws, day + rng.UniformInt(-3, 7));
    const double stay = std::exp(rng.Normal(2.1, 0.6));
    const int64_t los = std::clamp<int64_t>(std::llround(stay), 1, 60);
    p.discharged = std::min(p.hospitalised + los, we);
  }
  {
    std::vector<size_t> ids = Iota(persons);
    rng.Shuffle(ids);
    for (size_t i = 0; i < persons; ++i) {
      people[i].record_id = std::to_string(1000001 + ids[i]);
    }
  }

  // Re-admissions of surviving adults, after the first discharge.
  std::vector<size_t> eligible;
  for (size_t i = 0; i < persons; ++i) {
    if (!people[i].newborn && people[i].outcome != 'D' &&
        people[i].discharged < we) {
      eligible.push_back(i);
    }
  }
  if (eligible.size() < q.re_incidents) {
    Fail(ErrorCode::kInvalidArgument,
         "infeasible fractions: too few candidates for re-incidents");
  }
  std::vector<size_t> bases = Sample(rng, eligible, q.re_incidents);
  std::vector<Person> rows = people;
  for (size_t b : bases) {
    Person r = people[b];
    r.outcome = 'H';
    r.hospitalised = std::min(r.discharged + rng.UniformInt(1, 30), we);
    const double stay = std::exp(rng.Normal(2.1, 0.6));
    r.discharged = std::min(
        r.hospitalised + std::clamp<int64_t>(std::llround(stay), 1, 60), we);
    rows.push_back(std::move(r));
  }
  rng.Shuffle(rows);

  // Per-row attributes and exact unknown quotas over all rows.
  auto unknown_mask = [&](const std::string& column) {
    std::vector<bool> mask(n, false);
    auto it = config.unknown_rate.find(column);
    if (it == config.unknown_rate.end()) return mask;
    for (size_t i : Sample(rng, Iota(n), Quota(it->second, n))) mask[i] = true;
    return mask;
  };
  std::vector<std::string> icu(n, "N");
  {
    std::vector<size_t> order = Iota(n);
    rng.Shuffle(order);
    const size_t unknown =
        Quota(config.unknown_rate.count("IntensiveCare")
                  ? config.unknown_rate.at("IntensiveCare")
                  : 0.0,
              n);
    for (size_t k = 0; k < q.intensive_care; ++k) icu[order[k]] = "Y";
    for (size_t k = 0; k < unknown; ++k) {
      icu[order[q.intensive_care + k]] = kUnknown;
    }
  }
  const std::vector<bool> no_contact = unknown_mask("CloseContactRecordId");
  const std::vector<bool> no_onset = unknown_mask("DateOfOnset");
  const std::vector<bool> no_place = unknown_mask("PlaceOfInfection");
  const std::vector<bool> no_gender = unknown_mask("Gender");

  std::vector<Column> cols(schema.size(), Column(n));
  auto set = [&](const char* name, size_t row, Value v) {
    cols[schema.IndexOf(name)][row] = std::move(v);
  };
  for (size_t i = 0; i < n; ++i) {
    const Person& p = rows[i];
    set("RecordId", i, p.record_id);
    set("Age", i, double(p.age));
    set("AgeDay", i, double(p.age_days));
    set("AgeMonth", i, double(p.age_days * 12 / 365));
    set("CloseContactRecordId", i,
        no_contact[i] ? Value(Missing{kUnknown})
                      : Value(std::to_string(rng.UniformInt(2000000, 2999999))));
    set("DateOfFirstPositiveLabResult", i, DateTime{p.first_positive});
    set("DateOfHospitalisation", i, Date{p.hospitalised});
    set("DateOfDischarge", i, Date{p.discharged});
    set("DateOfOnset", i,
        no_onset[i] ? Value(Missing{kUnknown}) : Value(Date{p.onset}));
    set("Gender", i, no_gender[i] ? Value(Missing{kUnknown}) : Value(p.gender));
    set("Hospitalisation", i, std::string("Y"));
    set("IntensiveCare", i,
        icu[i] == kUnknown ? Value(Missing{kUnknown}) : Value(icu[i]));
    set("Outcome", i, std::string(1, p.outcome));
    std::string place = "PT";
    const int64_t code = rng.UniformInt(1, 18);
    place += (code < 10 ? "0" : "") + std::to_string(code);
    set("PlaceOfInfection", i,
        no_place[i] ? Value(Missing{kUnknown}) : Value(place));
  }
  for (const char* f : kPathologyFlags) {
    const std::vector<bool> mask = unknown_mask(f);
    auto it = config.flag_prevalence.find(f);
    const double prevalence = it == config.flag_prevalence.end() ? 0.0 : it->second;
    for (size_t i = 0; i < n; ++i) {
      const bool yes = rng.Bernoulli(prevalence);
      set(f, i, mask[i] ? Value(Missing{kUnknown}) : Value(Flag(yes)));
    }
  }
  return Dataset(schema, std::move(cols));
}

bool RealismReport::AllPassed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const RealismCheck& c) { return c.passed; });
}

RealismReport ValidateRealism(const Dataset& ds, const SyntheticConfig& config) {
  RealismReport rep;
  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  for (size_t c = 0; c < ds.column_count(); ++c) {
    for (const Value& v : ds.column(c)) rep.missing_cells += IsMissing(v);
  }
  const size_t n = ds.row_count();
  add("row count", n == config.n,
      std::to_string(n) + " rows, expected " + std::to_string(config.n));

  const SyntheticCounts q = QuotaCounts(config);
  auto count_if = [&](const char* column, auto pred) -> std::optional<size_t> {
    if (!ds.schema().Find(column)) return std::nullopt;
    size_t k = 0;
    for (const Value& v : ds.column(column)) k += pred(v) ? 1 : 0;
    return k;
  };
  auto quota = [&](const std::string& name, const char* column, auto pred,
                   size_t expected) {
    auto got = count_if(column, pred);
    if (!got) {
      add(name + " quota", false, std::string("column '") + column + "' missing");
      return;
    }
    add(name + " quota", *got == expected,
        std::to_string(*got) + " rows, expected " + std::to_string(expected));
  };
  auto equals = [](const char* s) {
    return [s](const Value& v) {
      const auto* str = std::get_if<std::string>(&v);
      return str && *str == s;
    };
  };
  quota("death", "Outcome", equals("D"), q.deaths);
  quota("nursing home", "Outcome", equals("N"), q.nursing_home);
  quota("intensive care", "IntensiveCare", equals("Y"), q.intensive_care);
  quota("newborn", "Age", [](const Value& v) {
    const auto* d = std::get_if<double>(&v);
    return d && *d == 0;
  }, q.newborns);
  if (ds.schema().Find("RecordId")) {
    std::set<std::string> ids;
    for (const Value& v : ds.column("RecordId")) ids.insert(FormatValue(v));
    const size_t re = n - ids.size();
    add("re-incident quota", re == q.re_incidents,
        std::to_string(re) + " repeated records, expected " +
            std::to_string(q.re_incidents));
  } else {
    add("re-incident quota", false, "column 'RecordId' missing");
  }

  if (ds.schema().Find("Age") && n > 0) {
    double sum = 0;
    size_t k = 0;
    for (const Value& v : ds.column("Age")) {
      if (const auto* d = std::get_if<double>(&v)) {
        sum += *d;
        ++k;
      }
    }
    const double mean = k ? sum / double(k) : 0;
    add("mean age", k > 0 && std::abs(mean - config.target_mean_age) <= 2,
        "mean " + FormatNumber(std::round(mean * 100) / 100) + ", target " +
            FormatNumber(config.target_mean_age));
  } else {
    add("mean age", n == 0, n == 0 ? "empty" : "column 'Age' missing");
  }

  // Ordering: discharge >= hospitalisation >= first positive - 14 days, all
  // within the window.
  {
    const auto& s = ds.schema();
    auto day_of = [](const Value& v) -> std::optional<int64_t> {
      if (const auto* d = std::get_if<Date>(&v)) return d->days;
      if (const auto* t = std::get_if<DateTime>(&v)) return t->day().days;
      return std::nullopt;
    };
    if (s.Find("DateOfHospitalisation") && s.Find("DateOfDischarge")) {
      const bool has_fp = s.Find("DateOfFirstPositiveLabResult").has_value();
      size_t bad = 0, outside = 0;
      for (size_t r = 0; r < n; ++r) {
        auto h = day_of(ds.column("DateOfHospitalisation")[r]);
        auto d = day_of(ds.column("DateOfDischarge")[r]);
        if (h && d && *d < *h) ++bad;
        if (has_fp && h) {
          auto fp = day_of(ds.column("DateOfFirstPositiveLabResult")[r]);
          if (fp && *h < *fp - 14) ++bad;
        }
        for (const auto& x : {h, d}) {
          if (x && (*x < config.window_start.days || *x > config.window_end.days)) {
            ++outside;
          }
        }
      }
      add("date ordering", bad == 0, std::to_string(bad) + " rows out of order");
      add("date window", outside == 0,
          std::to_string(outside) + " dates outside the window");
    } else {
      add("date ordering", false, "date columns missing");
    }
  }

  for (const auto& [column, rate] : config.unknown_rate) {
    if (!ds.schema().Find(column)) {
      add("unknown rate " + column, false, "column missing");
      continue;
    }
    size_t missing = 0;
    for (const Value& v : ds.column(column)) missing += IsMissing(v);
    const double observed = n ? double(missing) / double(n) : 0;
    add("unknown rate " + column, std::abs(observed - rate) <= 0.02,
        FormatNumber(std::round(observed * 10000) / 100) + "%, target " +
            FormatNumber(rate * 100) + "%");
  }
  return rep;
}

}  // namespace sdc
