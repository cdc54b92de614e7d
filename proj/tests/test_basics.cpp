#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "ctsbench/csv.hpp"
#include "ctsbench/errors.hpp"
#include "ctsbench/io.hpp"
#include "ctsbench/rng.hpp"
#include "support.hpp"

using namespace ctsbench;

TEST(Csv, ParsesQuotedFieldsAndLineEndings) {
  const auto recs = csv::parse("a,\"b,c\",\"d\"\"e\"\r\nx,,y\n\"multi\nline\",z\n");
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[0].fields, (std::vector<std::string>{"a", "b,c", "d\"e"}));
  EXPECT_EQ(recs[1].fields, (std::vector<std::string>{"x", "", "y"}));
  EXPECT_EQ(recs[1].line, 2u);
  EXPECT_EQ(recs[2].fields, (std::vector<std::string>{"multi\nline", "z"}));
  EXPECT_EQ(recs[2].line, 3u);
}

TEST(Csv, RejectsUnterminatedQuote) { EXPECT_THROW(csv::parse("a,\"b\n"), SyntaxError); }

TEST(Csv, EscapeOnlyWhenNeeded) {
  EXPECT_EQ(csv::escape("plain"), "plain");
  EXPECT_EQ(csv::escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv::escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv::join({"a", "b c", "d\ne"}), "a,b c,\"d\ne\"");
}

TEST(Csv, FormatDoubleIsShortestRoundTrip) {
  EXPECT_EQ(csv::format_double(0.1), "0.1");
  EXPECT_EQ(csv::format_double(1.0), "1");
  EXPECT_EQ(csv::format_double(1e-9), "1e-09");
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::ldexp(rng.uniform(-1.0, 1.0), static_cast<int>(rng.between(-60, 60)));
    EXPECT_EQ(std::stod(csv::format_double(v)), v);
  }
}

TEST(Csv, JoinThenParseIsIdentity) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> fields;
    for (std::size_t k = 0, n = 1 + rng.below(6); k < n; ++k) fields.push_back(testutil::random_id(rng, true));
    const auto recs = csv::parse(csv::join(fields) + "\n");
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].fields, fields);
  }
}

TEST(Rng, SplitMixReferenceValue) {
  std::uint64_t state = 0;
  EXPECT_EQ(splitmix64(state), 0xe220a8397b1dcdafULL);
}

// Straight transcription of the published xoshiro256** reference code.
static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

TEST(Rng, MatchesXoshiroReference) {
  const std::uint64_t seed = 42;
  std::uint64_t sm = seed;
  std::uint64_t s[4];
  for (auto& w : s) w = splitmix64(sm);
  Rng rng(seed);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t expected = rotl(s[1] * 5, 7) * 9;
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    ASSERT_EQ(rng.next(), expected) << "draw " << i;
  }
}

TEST(Rng, DerivedStreamsAreDistinctAndStable) {
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
  EXPECT_NE(derive_seed(7, 3), derive_seed(7, 4));
  EXPECT_NE(derive_seed(7, 3), derive_seed(8, 3));
}

TEST(Rng, DrawsStayInRange) {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    EXPECT_LT(rng.below(7), 7u);
    const auto b = rng.between(-3, 3);
    EXPECT_GE(b, -3);
    EXPECT_LE(b, 3);
    const double u = rng.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Rng, NormalMoments) {
  Rng rng(9);
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = rng.normal(2.0, 3.0);
    sum += v;
    sq += v * v;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  // Standard error of the mean is 3/sqrt(1e5) ~ 0.0095.
  EXPECT_NEAR(mean, 2.0, 0.05);
  EXPECT_NEAR(sd, 3.0, 0.05);
}

TEST(Rng, ShuffleIsAPermutation) {
  Rng rng(1);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  auto w = v;
  shuffle(w, rng);
  EXPECT_NE(w, v);
  std::sort(w.begin(), w.end());
  EXPECT_EQ(w, v);
}

TEST(Io, WriteCreatesDirectoriesAndReadsBack) {
  testutil::TempDir dir;
  const std::string path = dir / "a/b/c.bin";
  const std::string bytes("x\0y\xff", 4);
  write_file(path, bytes);
  EXPECT_EQ(read_file(path), bytes);
  EXPECT_THROW(read_file(dir / "missing"), IoError);
}
