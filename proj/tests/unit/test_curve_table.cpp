#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ruincap/curve_table.hpp"

using ruincap::CurveTable;

namespace {
CurveTable sample() {
    CurveTable t;
    t.header = {"c", "a", "b"};
    t.rows = {{0.0, 1.0 / 3.0, std::nullopt}, {0.05, 40.084293355485997, 1e-300}};
    t.add_meta("seed", "20240601");
    t.add_meta("warning", "c=0.05 b: something");
    return t;
}
}  // namespace

TEST(CurveTable, SeventeenDigits) {
    EXPECT_EQ(ruincap::format_double(1.0 / 3.0), "0.33333333333333331");
    EXPECT_EQ(ruincap::format_double(0.05), "0.050000000000000003");
    const double x = 40.084293355485997;
    EXPECT_EQ(std::stod(ruincap::format_double(x)), x);
}

TEST(CurveTable, LayoutAndLineEndings) {
    const std::string s = ruincap::to_csv(sample());
    EXPECT_EQ(s.find('\r'), std::string::npos);
    EXPECT_EQ(s.rfind("# seed: 20240601\n", 0), 0u);
    EXPECT_NE(s.find("\nc,a,b\n"), std::string::npos);
    EXPECT_NE(s.find(",NA\n"), std::string::npos);
    EXPECT_EQ(s.back(), '\n');
}

TEST(CurveTable, RoundTrip) {
    const CurveTable t = sample();
    std::istringstream in(ruincap::to_csv(t));
    const CurveTable r = ruincap::read_csv(in);
    EXPECT_EQ(r.header, t.header);
    EXPECT_EQ(r.metadata, t.metadata);
    ASSERT_EQ(r.rows.size(), t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) EXPECT_EQ(r.rows[i], t.rows[i]);
    EXPECT_EQ(ruincap::to_csv(r), ruincap::to_csv(t));
}

TEST(CurveTable, ColumnsAndAppend) {
    CurveTable t = sample();
    EXPECT_EQ(t.column("b"), 2u);
    EXPECT_THROW(t.column("zz"), std::out_of_range);
    CurveTable extra;
    extra.header = {"c", "d"};
    extra.rows = {{0.0, 7.0}, {0.05, std::nullopt}};
    t.append_columns(extra);
    EXPECT_EQ(t.header.back(), "d");
    EXPECT_EQ(t.rows[0].back(), 7.0);
    extra.rows.pop_back();
    EXPECT_ANY_THROW(t.append_columns(extra));
}

TEST(CurveTable, MalformedInput) {
    std::istringstream ragged("c,a\n1,2,3\n");
    EXPECT_THROW(ruincap::read_csv(ragged), std::invalid_argument);
    std::istringstream junk("c,a\n1,abc\n");
    EXPECT_THROW(ruincap::read_csv(junk), std::invalid_argument);
}
