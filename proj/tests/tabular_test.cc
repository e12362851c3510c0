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

#include <gtest/gtest.h>

#include "sdc/csv.h"
#include "sdc/dataset.h"
#include "sdc/error.h"
#include "sdc/predicate.h"
#include "sdc/table_ops.h"
#include "sdc/value.h"
#include "test_util.h"

namespace sdc {
namespace {

using testing::Csv;
using testing::RandomDataset;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an sdc::Error";
  return ErrorCode::kInvalidArgument;
}

std::string MessageOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(ValueTest, ParsesBothDateSeparators) {
  EXPECT_EQ(ParseDate("2020/03/15"), ParseDate("2020-03-15"));
  EXPECT_EQ(FormatDate(*ParseDate("2020-03-15")), "2020/03/15");
  EXPECT_FALSE(ParseDate("2020/02/30"));
  EXPECT_FALSE(ParseDate("2020/3/15x"));
}

TEST(ValueTest, DateTimeKeepsSeconds) {
  auto t = ParseDateTime("2020/03/15 14:22:01");
  ASSERT_TRUE(t);
  EXPECT_EQ(t->second_of_day(), 14 * 3600 + 22 * 60 + 1);
  EXPECT_EQ(t->day(), *ParseDate("2020/03/15"));
  EXPECT_EQ(FormatDateTime(*t), "2020/03/15 14:22:01");
  EXPECT_EQ(ParseDateTime("2020-03-15T14:22:01"), t);
  EXPECT_FALSE(ParseDateTime("2020/03/15 24:00:00"));
}

TEST(ValueTest, DatesBeforeEpochFloorCorrectly) {
  auto t = ParseDateTime("1969/12/31 23:59:59");
  ASSERT_TRUE(t);
  EXPECT_EQ(t->day().days, -1);
  EXPECT_EQ(t->second_of_day(), 86399);
}

TEST(ValueTest, NumberFormatting) {
  EXPECT_EQ(FormatNumber(67), "67");
  EXPECT_EQ(FormatNumber(-0.0), "0");
  EXPECT_EQ(FormatNumber(0.1), "0.1");
  EXPECT_EQ(ParseNumber("+5"), 5.0);
  EXPECT_FALSE(ParseNumber("abc"));
  EXPECT_FALSE(ParseNumber("inf"));
  EXPECT_FALSE(ParseNumber(""));
}

TEST(CsvTest, LoadsWithSchema) {
  Schema s({testing::Spec("Age", ValueKind::kNumeric),
            testing::Spec("Gender", ValueKind::kCategorical)});
  Dataset ds = LoadCsv("Age,Gender\n67,M\n", s);
  EXPECT_EQ(ds.row_count(), 1u);
  EXPECT_EQ(ds.cell(0, 0), Value(67.0));
  EXPECT_EQ(ds.cell(0, 1), Value(std::string("M")));
}

TEST(CsvTest, MissingTokenBecomesMissing) {
  Schema s({testing::Spec("Age", ValueKind::kNumeric),
            testing::Spec("Gender", ValueKind::kCategorical)});
  Dataset ds = LoadCsv("Age,Gender\nUnknown,M\nNA,\n", s);
  EXPECT_TRUE(IsMissing(ds.cell(0, 0)));
  EXPECT_TRUE(IsMissing(ds.cell(1, 0)));
  EXPECT_TRUE(IsMissing(ds.cell(1, 1)));
}

TEST(CsvTest, UnparseableCellNamesColumnAndLine) {
  Schema s({testing::Spec("Age", ValueKind::kNumeric),
            testing::Spec("Gender", ValueKind::kCategorical)});
  const std::string msg = MessageOf([&] { LoadCsv("Age,Gender\nabc,M\n", s); });
  EXPECT_NE(msg.find("'Age'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  EXPECT_EQ(CodeOf([&] { LoadCsv("Age,Gender\nabc,M\n", s); }), ErrorCode::kParse);
}

TEST(CsvTest, MalformedRowReportsLine) {
  const std::string msg = MessageOf([] { LoadCsv("a,b\n1,2\n1,2,3\n"); });
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(MessageOf([] { LoadCsv("a,b\n\"1,2\n"); }).find("line 2"),
            std::string::npos);
}

TEST(CsvTest, HeaderMustMatchSchema) {
  Schema s({testing::Spec("Age", ValueKind::kNumeric)});
  EXPECT_EQ(CodeOf([&] { LoadCsv("Years\n1\n", s); }), ErrorCode::kSchemaMismatch);
}

TEST(CsvTest, QuotedFieldsAndCrlf) {
  Dataset ds = LoadCsv("name,note\r\n\"Smith, J\",\"said \"\"hi\"\"\"\r\n");
  EXPECT_EQ(ds.cell(0, 0), Value(std::string("Smith, J")));
  EXPECT_EQ(ds.cell(0, 1), Value(std::string("said \"hi\"")));
}

TEST(InferSchemaTest, KindPriority) {
  Dataset ds = LoadCsv(
      "ts,day,num,mixed\n"
      "2020/03/15 14:22:01,2020/03/15,12,12\n"
      "2020/03/16 00:00:00,2020/03/16,1.5,F\n"
      "Unknown,NA,,\n");
  EXPECT_EQ(ds.schema()[0].kind, ValueKind::kDateTime);
  EXPECT_EQ(ds.schema()[1].kind, ValueKind::kDate);
  EXPECT_EQ(ds.schema()[2].kind, ValueKind::kNumeric);
  EXPECT_EQ(ds.schema()[3].kind, ValueKind::kCategorical);
  for (const auto& c : ds.schema().columns()) {
    EXPECT_EQ(c.attribute_class, AttributeClass::kInsensitive);
  }
}

TEST(InferSchemaTest, EmptyTableIsAnError) {
  EXPECT_ANY_THROW(LoadCsv("a,b\n"));
  EXPECT_ANY_THROW(LoadCsv(""));
}

TEST(CsvTest, RoundTripIsIdentity) {
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    Dataset ds = RandomDataset(rng, 30, 4);
    Dataset back = LoadCsv(WriteCsv(ds), ds.schema());
    EXPECT_EQ(back, ds);
  }
  Dataset ts = LoadCsv("t,s\n2020/03/15 14:22:01,\"a,b\"\nUnknown,NA\n");
  EXPECT_EQ(LoadCsv(WriteCsv(ts), ts.schema()), ts);
  EXPECT_NE(WriteCsv(ts).find("Unknown"), std::string::npos);
}

TEST(CsvTest, SingleEmptyColumnRoundTrips) {
  Schema s({testing::Spec("x", ValueKind::kCategorical)});
  Dataset ds(s, {Column{Value(Missing{""}), Value(std::string("a"))}});
  EXPECT_EQ(LoadCsv(WriteCsv(ds), s), ds);
}

TEST(SchemaTest, DuplicateNamesRejected) {
  EXPECT_ANY_THROW(Schema({testing::Spec("a", ValueKind::kNumeric),
                           testing::Spec("a", ValueKind::kNumeric)}));
}

TEST(DatasetTest, ColumnLengthsMustAgree) {
  Schema s({testing::Spec("a", ValueKind::kNumeric),
            testing::Spec("b", ValueKind::kNumeric)});
  EXPECT_ANY_THROW(Dataset(s, {Column{Value(1.0)}, Column{}}));
  EXPECT_ANY_THROW(Dataset(s, {Column{Value(1.0)}, Column{Value(std::string("x"))}}));
}

TEST(ClassifyTest, UpdatesOnlyClasses) {
  Dataset ds = Csv("RecordId,Age\n1,30\n2,40\n");
  Dataset c = Classify(ds, {{"Age", AttributeClass::kQuasiIdentifier},
                            {"RecordId", AttributeClass::kDirectIdentifier}});
  EXPECT_EQ(c.schema().At("Age").attribute_class, AttributeClass::kQuasiIdentifier);
  EXPECT_EQ(DirectIdentifiers(c), std::vector<std::string>{"RecordId"});
  for (size_t r = 0; r < 2; ++r) {
    for (size_t k = 0; k < 2; ++k) EXPECT_EQ(c.cell(r, k), ds.cell(r, k));
  }
  EXPECT_EQ(ds.schema().At("Age").attribute_class, AttributeClass::kInsensitive);
  EXPECT_EQ(CodeOf([&] { Classify(ds, {{"Nonexistent", AttributeClass::kSensitive}}); }),
            ErrorCode::kNotFound);
}

TEST(DeriveDurationTest, DayDifference) {
  Dataset ds = Csv(
      "start,end\n2020/03/01,2020/03/11\n2020/03/05,2020/03/05\n"
      "2020/03/05,Unknown\n");
  Dataset d = DeriveDuration(ds, "start", "end", "days", false);
  const Column& days = d.column("days");
  EXPECT_EQ(days[0], Value(10.0));
  EXPECT_EQ(days[1], Value(0.0));
  EXPECT_TRUE(IsMissing(days[2]));
  EXPECT_EQ(d.schema().At("days").kind, ValueKind::kNumeric);
  EXPECT_EQ(d.column_count(), 3u);
  Dataset dropped = DeriveDuration(ds, "start", "end", "days", true);
  EXPECT_EQ(dropped.schema().Names(), std::vector<std::string>{"days"});
}

TEST(DeriveDurationTest, IgnoresTimeOfDay) {
  Dataset ds = Csv("a,b\n2020/03/01 23:59:59,2020/03/02 00:00:01\n");
  EXPECT_EQ(DeriveDuration(ds, "a", "b", "d", false).column("d")[0], Value(1.0));
}

TEST(DeriveDurationTest, Antisymmetric) {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    Dataset ds = RandomDataset(rng, 20, 6);  // q2 and q5 are dates
    Dataset f = DeriveDuration(ds, "q2", "q5", "f", false);
    Dataset b = DeriveDuration(ds, "q5", "q2", "b", false);
    for (size_t r = 0; r < ds.row_count(); ++r) {
      const Value& x = f.column("f")[r];
      const Value& y = b.column("b")[r];
      ASSERT_EQ(IsMissing(x), IsMissing(y));
      if (!IsMissing(x)) EXPECT_EQ(std::get<double>(x), -std::get<double>(y));
    }
  }
}

TEST(DeriveDurationTest, NonDateSourceFails) {
  Dataset ds = Csv("a,b\n1,2020/03/01\n");
  EXPECT_EQ(CodeOf([&] { DeriveDuration(ds, "a", "b", "d", false); }),
            ErrorCode::kFailedPrecondition);
}

TEST(DropColumnsTest, Examples) {
  Dataset ds = Csv(
      "CloseContactRecordId,DateOfOnset,PlaceOfInfection,Hospitalisation,Age\n"
      "1,2020/03/01,P1,Y,30\n");
  EXPECT_EQ(DropColumns(ds, {"CloseContactRecordId", "DateOfOnset",
                             "PlaceOfInfection"}).column_count(), 2u);
  EXPECT_FALSE(DropColumns(ds, {"Hospitalisation"}).schema().Find("Hospitalisation"));
  EXPECT_EQ(DropColumns(ds, {}), ds);
  EXPECT_EQ(CodeOf([&] { DropColumns(ds, {"Nope"}); }), ErrorCode::kNotFound);
}

TEST(PredicateTest, ParseAndFormat) {
  Predicate p = ParsePredicate("Outcome:eq:D,Age:>=:65,T:lt:2020/03/01 10:00:00");
  ASSERT_EQ(p.conditions.size(), 3u);
  EXPECT_EQ(p.conditions[1].op, Comparator::kGe);
  EXPECT_EQ(p.conditions[2].literal, "2020/03/01 10:00:00");
  EXPECT_EQ(ParsePredicate(FormatPredicate(p)), p);
  EXPECT_ANY_THROW(ParsePredicate("Outcome"));
  EXPECT_ANY_THROW(ParsePredicate("Outcome:~:D"));
  EXPECT_EQ(ParseComparator("≤"), Comparator::kLe);
  EXPECT_EQ(ParseComparator("!="), Comparator::kNe);
}

TEST(FilterSubsetTest, Examples) {
  Dataset ds = Csv("Age,Outcome,IntensiveCare\n30,D,Y\n40,H,N\n50,D,Unknown\n",
                   {"Age"});
  Dataset deaths = FilterSubset(ds, ParsePredicate("Outcome:eq:D"));
  EXPECT_EQ(deaths.row_count(), 2u);
  EXPECT_EQ(deaths.schema(), ds.schema());
  EXPECT_EQ(FilterSubset(ds, ParsePredicate("IntensiveCare:=:Y")).row_count(), 1u);
  EXPECT_EQ(FilterSubset(ds, ParsePredicate("Age:<:0")).row_count(), 0u);
  EXPECT_EQ(FilterSubset(ds, ParsePredicate("IntensiveCare:eq:Unknown")).row_count(), 1u);
  EXPECT_EQ(FilterSubset(ds, ParsePredicate("IntensiveCare:ne:Unknown")).row_count(), 2u);
}

TEST(FilterSubsetTest, TautologyReturnsInput) {
  Rng rng(11);
  for (int i = 0; i < 10; ++i) {
    Dataset ds = RandomDataset(rng, 25, 3, /*with_missing=*/false);
    EXPECT_EQ(FilterSubset(ds, Predicate{}), ds);
    EXPECT_EQ(FilterSubset(ds, ParsePredicate("q0:>=:0")), ds);
  }
}

TEST(FilterSubsetTest, TypeIncompatibleComparison) {
  Dataset ds = Csv("Age,Outcome\n30,D\n");
  EXPECT_EQ(CodeOf([&] { FilterSubset(ds, ParsePredicate("Outcome:<:D")); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { FilterSubset(ds, ParsePredicate("Age:eq:old")); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { FilterSubset(ds, ParsePredicate("Nope:eq:1")); }),
            ErrorCode::kNotFound);
}

TEST(FilterSubsetTest, DateTimeAcceptsDateLiteral) {
  Dataset ds = Csv("t\n2020/03/01 10:00:00\n2020/03/02 10:00:00\n");
  EXPECT_EQ(FilterSubset(ds, ParsePredicate("t:<:2020/03/02")).row_count(), 1u);
}

TEST(FrequenciesTest, CountsAndMissing) {
  Dataset ds = Csv("g\nF\nM\nF\nUnknown\n");
  FrequencyTable f = Frequencies(ds, "g");
  ASSERT_EQ(f.counts.size(), 2u);
  EXPECT_EQ(f.counts[0], (std::pair<std::string, size_t>{"F", 2}));
  EXPECT_EQ(f.missing, 1u);
}

TEST(HistogramTest, MassIsConserved) {
  Rng rng(5);
  Dataset ds = RandomDataset(rng, 100, 3);
  for (const char* col : {"q0", "q1", "q2"}) {
    Histogram h = ComputeHistogram(ds, col, 4);
    size_t total = h.missing;
    for (const auto& b : h.bins) total += b.count;
    EXPECT_EQ(total, ds.row_count()) << col;
  }
}

TEST(ImmutabilityTest, OperationsLeaveInputUntouched) {
  Rng rng(9);
  Dataset ds = RandomDataset(rng, 40, 6);
  const Dataset copy = ds;
  const std::string before = WriteCsv(ds);
  Classify(ds, {{"q0", AttributeClass::kSensitive}});
  DeriveDuration(ds, "q2", "q5", "d", true);
  DropColumns(ds, {"q1"});
  FilterSubset(ds, ParsePredicate("q0:ne:1"));
  EXPECT_EQ(ds, copy);
  EXPECT_EQ(WriteCsv(ds), before);
}

}  // namespace
}  // namespace sdc
