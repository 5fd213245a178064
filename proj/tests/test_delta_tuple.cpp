#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "chendelta/delta_tuple.hpp"

using namespace chendelta;

namespace {

std::vector<std::string> names(const std::vector<DeltaTuple>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(t.str());
  return out;
}

}  // namespace

TEST(EnumerateTuples, SmallDimensions) {
  EXPECT_EQ(names(enumerate_tuples(3)), (std::vector<std::string>{"(2)"}));
  EXPECT_EQ(names(enumerate_tuples(4)), (std::vector<std::string>{"(2)", "(3)", "(2,2)"}));
  EXPECT_EQ(names(enumerate_tuples(5)),
            (std::vector<std::string>{"(2)", "(3)", "(4)", "(2,2)", "(2,3)"}));
}

TEST(EnumerateTuples, AllSatisfyDefinition) {
  for (int n = 3; n <= 10; ++n)
    for (const auto& t : enumerate_tuples(n)) {
      EXPECT_LE(t.N(), n);
      for (std::size_t j = 0; j < t.parts().size(); ++j) {
        EXPECT_GE(t.parts()[j], 2);
        EXPECT_LT(t.parts()[j], n);
        if (j) EXPECT_LE(t.parts()[j - 1], t.parts()[j]);
      }
    }
}

TEST(EnumerateTuples, RejectsSmallN) { EXPECT_THROW(enumerate_tuples(2), InvalidArgument); }

TEST(DeltaTuple, DerivedQuantities) {
  const DeltaTuple t(7, {3, 2, 2});
  EXPECT_EQ(t.str(), "(2,2,3)");
  EXPECT_EQ(t.k(), 3);
  EXPECT_EQ(t.N(), 7);
  EXPECT_NEAR(t.A(), 0.25 + 0.25 + 0.2, 1e-15);
  EXPECT_EQ(t.b(), 0.5 * (42 - 2 - 2 - 6));
}

TEST(DeltaTuple, CompareAWithThirdIsExact) {
  // (4,4): 1/6 + 1/6 = 1/3 exactly.
  EXPECT_EQ(DeltaTuple(9, {4, 4}).compare_A_with_third(), 0);
  EXPECT_LT(DeltaTuple(9, {2}).compare_A_with_third(), 0);
  EXPECT_GT(DeltaTuple(7, {2, 2, 2}).compare_A_with_third(), 0);
}

TEST(DeltaTuple, InvalidPartsRejected) {
  EXPECT_THROW(DeltaTuple(4, {4}), InvalidArgument);
  EXPECT_THROW(DeltaTuple(4, {5}), InvalidArgument);
  EXPECT_THROW(DeltaTuple(4, {1}), InvalidArgument);
  EXPECT_THROW(DeltaTuple(5, {3, 3}), InvalidArgument);
  EXPECT_THROW(DeltaTuple(5, {}), InvalidArgument);
}

TEST(ParseTuple, AcceptsSpacesAndRejectsGarbage) {
  EXPECT_EQ(parse_tuple(6, "2, 3").str(), "(2,3)");
  EXPECT_THROW(parse_tuple(4, "5"), InvalidArgument);
  EXPECT_THROW(parse_tuple(4, "2,,2"), InvalidArgument);
  EXPECT_THROW(parse_tuple(4, "two"), InvalidArgument);
  EXPECT_THROW(parse_tuple(4, ""), InvalidArgument);
}
