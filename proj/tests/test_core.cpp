#include <gtest/gtest.h>

#include "sgdlp/sgdlp.hpp"

using namespace sgdlp;

namespace {

  ResidueMulPlatform const z12(12);

}  // namespace

TEST(Power, SmallResidue) {
  EXPECT_EQ(power(z12, z12.element(2), 1).value, 2u);
  EXPECT_EQ(power(z12, z12.element(2), 5).value, 8u);
  EXPECT_EQ(power(z12, z12.element(2), 6).value, 4u);
}

TEST(Power, RejectsNonPositiveExponent) {
  EXPECT_THROW(power(z12, z12.element(2), 0), InvalidArgument);
  EXPECT_THROW(power(z12, z12.element(2), -3), InvalidArgument);
}

TEST(Power, LargeExponentMatchesModularPower) {
  ResidueMulPlatform z(1000003);
  Exponent           k = Exponent(1) << 200;
  k += 12345;
  EXPECT_EQ(Exponent(power(z, z.element(7), k).value),
            boost::multiprecision::powm(Exponent(7), k, Exponent(1000003)));
}

TEST(Power, ProductCountIsLogarithmic) {
  Counting<ResidueMulPlatform> p(z12);
  (void) power(p, z12.element(2), Exponent(1) << 20);
  EXPECT_EQ(p.products(), 20u);
  Counting<ResidueMulPlatform> q(z12);
  (void) power(q, z12.element(2), (Exponent(1) << 20) - 1);
  EXPECT_EQ(q.products(), 19u + 19u);
}

TEST(PowerCache, AgreesWithPowerOnRandomExponents) {
  Rng                rng(1);
  ResidueMulPlatform z(65521);
  for (int i = 0; i < 1000; ++i) {
    auto     g = z.random_element(rng);
    Exponent k = uniform_exponent(rng, 1, Exponent(1) << 64);
    PowerCache<ResidueMulPlatform> cache(z, g, uniform_exponent(rng, 1, Exponent(1) << 70));
    ASSERT_EQ(cache.power(k), power(z, g, k)) << "k=" << k;
  }
}

TEST(PowerCache, ExtendsOnDemandAndStrictRefuses) {
  PowerCache<ResidueMulPlatform> cache(z12, z12.element(2), 4);
  EXPECT_EQ(cache.bound(), 7);
  EXPECT_EQ(cache.power(100).value, power(z12, z12.element(2), 100).value);
  EXPECT_GE(cache.bound(), 100);

  PowerCache<ResidueMulPlatform> strict(z12, z12.element(2), 4, CachePolicy::strict);
  EXPECT_EQ(strict.power(7).value, 8u);
  EXPECT_THROW(strict.power(8), InvalidArgument);
  EXPECT_THROW(strict.power(0), InvalidArgument);
}

TEST(PowerCache, CostsPopcountMinusOne) {
  Counting<ResidueMulPlatform>            p(z12);
  PowerCache<Counting<ResidueMulPlatform>> cache(p, z12.element(2), 1 << 10);
  auto const                              before = p.products();
  (void) cache.power(0b1011011);
  EXPECT_EQ(p.products() - before, 4u);
}

TEST(Helpers, ThresholdIsMinimalWithTnAboveL) {
  EXPECT_EQ(threshold_for(2, 2), 2);
  EXPECT_EQ(threshold_for(3, 2), 2);
  EXPECT_EQ(threshold_for(1, 6), 1);
  EXPECT_EQ(threshold_for(1, 1), 2);
  EXPECT_EQ(threshold_for(5, 2), 3);
  for (int l = 1; l < 40; ++l) {
    for (int n = 1; n < 40; ++n) {
      Exponent t = threshold_for(l, n);
      ASSERT_TRUE(t * n > l && (t - 1) * n <= l);
    }
  }
}

TEST(Helpers, HexRoundTripAndErrors) {
  EXPECT_EQ(to_hex(Bytes{0x02, 0x01, 0xab}), "0201ab");
  EXPECT_EQ(from_hex("0201AB"), (Bytes{0x02, 0x01, 0xab}));
  EXPECT_THROW(from_hex("021"), ParseError);
  try {
    from_hex("02x1");
    FAIL();
  } catch (ParseError const& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(Helpers, PrimeFactorsAndBitLength) {
  EXPECT_EQ(prime_factors(360), (std::vector<Exponent>{2, 3, 5}));
  EXPECT_EQ(prime_factors(1), std::vector<Exponent>{});
  EXPECT_EQ(prime_factors(65521), std::vector<Exponent>{65521});
  EXPECT_EQ(bit_length(0), 0u);
  EXPECT_EQ(bit_length(1), 1u);
  EXPECT_EQ(bit_length(Exponent(1) << 100), 101u);
}

TEST(Helpers, UniformExponentStaysInRange) {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    Exponent x = uniform_exponent(rng, 5, 9);
    ASSERT_TRUE(x >= 5 && x <= 9);
  }
  EXPECT_THROW(uniform_exponent(rng, 3, 2), InvalidArgument);
}

TEST(CycleStructure, IdentityAndGeneratorExponents) {
  CycleStructure cs{3, 2, 2};
  EXPECT_EQ(cs.identity_exp(), 4);
  EXPECT_EQ(cs.generator_exp(), 5);
}
