#include <sstream>

#include <gtest/gtest.h>

#include "kitaev/config.hpp"

using namespace kitaev;

namespace {

KeyValues parse(const std::string& text) {
  std::istringstream in(text);
  return parse_key_values(in);
}

std::string failing_key(const std::string& text) {
  try {
    chain_from_config(parse(text));
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<no error>";
}

}  // namespace

TEST(KeyValues, CommentsAndWhitespace) {
  const auto kv = parse("# header\n  L = 8  \n\nDelta=0.25 # trailing\n");
  EXPECT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv.at("L"), "8");
  EXPECT_EQ(kv.at("Delta"), "0.25");
}

TEST(KeyValues, Errors) {
  EXPECT_THROW(parse("L 8\n"), ConfigError);
  EXPECT_THROW(parse("L = 8\nL = 9\n"), ConfigError);
  EXPECT_THROW(parse(" = 8\n"), ConfigError);
}

TEST(ChainConfig, FullHarper) {
  const ChainSpec c = chain_from_config(parse(
      "L = 12\nJ = 1.5\nDelta = 0.25\nalpha = inf\nboundary = closed\n"
      "potential.kind = harper\npotential.mu = 0.3\npotential.V = 0.5\npotential.p = 3\n"
      "potential.q = 10\npotential.phi = 0.1\n"));
  EXPECT_EQ(c.L, 12);
  EXPECT_EQ(c.J, 1.5);
  EXPECT_TRUE(c.alpha.is_nearest_neighbor());
  EXPECT_EQ(c.boundary, Boundary::ClosedAntiperiodic);
  const auto& h = std::get<HarperPotential>(c.potential);
  EXPECT_EQ(h.p, 3);
  EXPECT_EQ(h.q, 10);
  EXPECT_EQ(h.V, 0.5);
}

TEST(ChainConfig, RoundTrip) {
  ChainSpec c;
  c.L = 37;
  c.J = 0.7;
  c.Delta = 1.0 / 3.0;
  c.alpha = PairingExponent(0.123456789012345678);
  c.boundary = Boundary::ClosedAntiperiodic;
  for (PotentialSpec p : {PotentialSpec{UniformPotential{0.1}}, PotentialSpec{HarperPotential{0.2, 0.3, 7, 9, 1.1}},
                          PotentialSpec{AubryAndrePotential{-0.4, 2.5, kInverseGoldenRatio, 0.9}},
                          PotentialSpec{AndersonPotential{0.0, 1.7, 18446744073709551615ull}}}) {
    c.potential = p;
    const ChainSpec back = chain_from_config(parse(chain_to_config(c)));
    EXPECT_EQ(chain_to_config(back), chain_to_config(c));
    EXPECT_EQ(back.Delta, c.Delta);
    EXPECT_EQ(back.alpha, c.alpha);
  }
}

TEST(ChainConfig, ErrorsNameTheKey) {
  EXPECT_EQ(failing_key("L = 1\n"), "L");
  EXPECT_EQ(failing_key("L = eight\n"), "L");
  EXPECT_EQ(failing_key("J = -1\n"), "J");
  EXPECT_EQ(failing_key("Delta = nan\n"), "Delta");
  EXPECT_EQ(failing_key("alpha = -2\n"), "alpha");
  EXPECT_EQ(failing_key("boundary = periodic\n"), "boundary");
  EXPECT_EQ(failing_key("potential.kind = hofstadter\n"), "potential.kind");
  EXPECT_EQ(failing_key("potential.kind = harper\npotential.p = 2\npotential.q = 4\n"), "potential.p");
  EXPECT_EQ(failing_key("potential.kind = anderson\npotential.seed = -3\n"), "potential.seed");
  // Parameters that the chosen potential does not have are rejected.
  EXPECT_EQ(failing_key("potential.V = 1\n"), "potential.V");
  EXPECT_EQ(failing_key("potential.kind = anderson\npotential.omega = 0.5\n"), "potential.omega");
}

TEST(ChainConfig, AlphaTokens) {
  EXPECT_TRUE(parse_alpha("alpha", "inf").is_nearest_neighbor());
  EXPECT_TRUE(parse_alpha("alpha", "nn").is_nearest_neighbor());
  EXPECT_EQ(parse_alpha("alpha", "0").value(), 0.0);
  EXPECT_THROW(parse_alpha("alpha", "fast"), ConfigError);
}
