#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "detf/gramio.hpp"
#include "detf/hadamard.hpp"
#include "detf/paley.hpp"

using namespace detf;

TEST(ComplexText, FormatAndParse) {
  EXPECT_EQ(format_complex({1, 0}), "1+0i");
  EXPECT_EQ(format_complex({-0.5, -2}), "-0.5-2i");
  EXPECT_EQ(parse_complex("1+0i"), Complex(1, 0));
  EXPECT_EQ(parse_complex("-0.5-2i"), Complex(-0.5, -2));
  EXPECT_EQ(parse_complex("1e-3+2.5e2i"), Complex(1e-3, 250));
  for (std::string bad : {"", "1", "1+2", "i", "1+2ix", "abc"}) EXPECT_THROW(parse_complex(bad), Error) << bad;
}

TEST(ComplexText, BitExactRoundTrip) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int t = 0; t < 1000; ++t) {
    Complex z(g(rng), g(rng) * 1e-12);
    EXPECT_EQ(parse_complex(format_complex(z)), z);
  }
}

TEST(GramFile, FloatRoundTrip) {
  GramMatrix g = paley_gram(FiniteField(7));
  std::stringstream s;
  write_gram(s, g);
  GramMatrix back = read_gram(s);
  EXPECT_EQ(back.matrix(), g.matrix());
}

TEST(GramFile, ExactRoundTrip) {
  GramMatrix g = gram_M(assemble(hex_decode("F7", 8), hex_decode("ED", 8)));
  std::stringstream s;
  write_exact_gram(s, g);
  EXPECT_EQ(s.str().substr(0, 8), "exact 16");
  GramMatrix back = read_gram(s);
  ASSERT_TRUE(back.exact().has_value());
  EXPECT_TRUE(*back.exact() == *g.exact());
  EXPECT_LT(max_abs_diff(back.matrix(), g.matrix()), 1e-15);
}

TEST(GramFile, Rejections) {
  for (std::string bad : {"", "matrix 2\n1+0i 0+0i\n0+0i 1+0i\n", "gram 2\n1+0i 0+0i\n0+0i\n", "exact 2\n0+0i 0.5+0i\n0.5+0i 0+0i\n",
                          "gram 0\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(read_gram(in), Error) << bad;
  }
}
