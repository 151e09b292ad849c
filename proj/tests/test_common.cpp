#include <gtest/gtest.h>

#include <map>

#include "evote/common/bytes.hpp"
#include "evote/common/errors.hpp"
#include "evote/common/hash.hpp"
#include "evote/common/random.hpp"

using namespace evote;

TEST(Encoding, LengthPrefixedMinimalIntegers) {
  Encoder enc;
  enc.put_uint(0).put_uint(258).put_string("ab");
  const Bytes expect{0, 0, 0, 0, 0, 0, 0, 2, 1, 2, 0, 0, 0, 2, 'a', 'b'};
  EXPECT_EQ(enc.bytes(), expect);
}

TEST(Encoding, RoundTrip) {
  Encoder enc;
  enc.put_uint(~std::uint64_t{0}).put_int(mpz_class("123456789012345678901234567890")).put_bool(true);
  enc.put_bytes(Bytes{0, 255, 7});
  Decoder dec(enc.bytes());
  EXPECT_EQ(dec.get_uint(), ~std::uint64_t{0});
  EXPECT_EQ(dec.get_int(), mpz_class("123456789012345678901234567890"));
  EXPECT_TRUE(dec.get_bool());
  EXPECT_EQ(dec.get_bytes(), (Bytes{0, 255, 7}));
  EXPECT_NO_THROW(dec.expect_done());
}

TEST(Encoding, RejectsNonMinimalTruncatedAndTrailing) {
  const Bytes non_minimal{0, 0, 0, 2, 0, 1};
  EXPECT_THROW(Decoder(non_minimal).get_uint(), FormatError);
  const Bytes truncated{0, 0, 0, 5, 1};
  EXPECT_THROW(Decoder(truncated).get_bytes(), FormatError);
  const Bytes trailing{0, 0, 0, 1, 9, 0xff};
  Decoder dec(trailing);
  EXPECT_EQ(dec.get_uint(), 9u);
  EXPECT_THROW(dec.expect_done(), FormatError);
  const Bytes bad_bool{0, 0, 0, 1, 2};
  EXPECT_THROW(Decoder(bad_bool).get_bool(), FormatError);
}

TEST(Encoding, HexRoundTrip) {
  const Bytes b{0x00, 0xab, 0x10};
  EXPECT_EQ(to_hex(b), "00ab10");
  EXPECT_EQ(from_hex("00ab10"), b);
  EXPECT_THROW(from_hex("0g"), FormatError);
  EXPECT_THROW(from_hex("abc"), FormatError);
}

TEST(Hash, Sha256KnownVector) {
  // FIPS 180-2 example "abc".
  EXPECT_EQ(to_hex(sha256(as_bytes("abc"))), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(to_hex(sha256(as_bytes(""))), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Drbg, DeterministicAndForkIndependent) {
  Drbg a(42, "x"), b(42, "x"), c(43, "x"), d(42, "y");
  const auto va = a.below_u64(1'000'000'007), vb = b.below_u64(1'000'000'007);
  EXPECT_EQ(va, vb);
  EXPECT_NE(va, c.below_u64(1'000'000'007));
  EXPECT_NE(va, d.below_u64(1'000'000'007));

  Drbg parent(5, "p");
  Drbg f1 = parent.fork("child", 1);
  parent.below_u64(10);  // parent position must not matter
  Drbg f2 = parent.fork("child", 1);
  EXPECT_EQ(f1.below_u64(1u << 30), f2.below_u64(1u << 30));
}

TEST(Drbg, BelowIsInRangeAndRoughlyUniform) {
  Drbg rng(1, "uniform");
  std::map<std::uint64_t, int> hist;
  const int n = 60000;
  for (int i = 0; i < n; ++i) {
    const auto v = rng.below_u64(6);
    ASSERT_LT(v, 6u);
    ++hist[v];
  }
  // Chi-square with 5 degrees of freedom; 20.5 is the 0.999 quantile.
  double chi = 0;
  for (auto& [k, c] : hist) chi += (c - n / 6.0) * (c - n / 6.0) / (n / 6.0);
  EXPECT_LT(chi, 20.5);

  const mpz_class big("1000000000000000000000000000000");
  for (int i = 0; i < 100; ++i) {
    const mpz_class v = rng.below(big);
    EXPECT_GE(v, 0);
    EXPECT_LT(v, big);
  }
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}
