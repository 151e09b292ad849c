#include <gtest/gtest.h>

#include <set>

#include "evote/common/errors.hpp"
#include "evote/group/elgamal.hpp"
#include "evote/group/group.hpp"

using namespace evote;

namespace {

const Group& tiny() { return Group::tiny(); }

// Independent modular exponentiation by repeated multiplication.
long naive_pow(long b, long e, long p) {
  long r = 1;
  for (long i = 0; i < e; ++i) r = r * b % p;
  return r;
}

}  // namespace

TEST(Group, ProfilesAreValid) {
  for (const char* name : {"tiny", "test256", "modp3072"}) {
    const Group& g = Group::by_name(name);
    EXPECT_EQ(g.p(), 2 * g.q() + 1) << name;
    EXPECT_TRUE(g.contains(g.generator())) << name;
    EXPECT_FALSE(g.generator() == g.identity()) << name;
  }
  EXPECT_EQ(mpz_sizeinbase(Group::modp3072().p().get_mpz_t(), 2), 3072u);
  EXPECT_EQ(mpz_sizeinbase(Group::test256().p().get_mpz_t(), 2), 256u);
  EXPECT_THROW(Group::by_name("nope"), InvalidArgument);
}

TEST(Group, RejectsBadParameters) {
  EXPECT_THROW(Group(23, 11, 1), InvalidArgument);   // g = 1
  EXPECT_THROW(Group(23, 11, 5), InvalidArgument);   // 5 has order 22
  EXPECT_THROW(Group(23, 7, 2), InvalidArgument);    // 7 does not divide 22
  EXPECT_THROW(Group(21, 10, 4), InvalidArgument);   // composite p
}

TEST(Group, TinySubgroupMembership) {
  // The order-11 subgroup of Z*_23 is the set of quadratic residues.
  std::set<long> qr;
  for (long x = 1; x < 23; ++x) qr.insert(x * x % 23);
  for (long x = 1; x < 23; ++x) EXPECT_EQ(tiny().contains({x}), qr.contains(x)) << x;
  EXPECT_FALSE(tiny().contains({0}));
  EXPECT_FALSE(tiny().contains({23}));
}

TEST(ElGamal, HandComputedKeygen) {
  EXPECT_EQ(keypair_from_secret(tiny(), tiny().scalar(3)).pk.value, 8);
  EXPECT_EQ(keypair_from_secret(tiny(), tiny().scalar(1)).pk, tiny().generator());
  EXPECT_THROW(keypair_from_secret(tiny(), tiny().scalar(0)), InvalidArgument);
}

TEST(ElGamal, KeygenNeverEmitsZero) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    Drbg rng(s, "keygen");
    const KeyPair kp = keygen(tiny(), rng);
    EXPECT_GT(kp.sk.value, 0);
    EXPECT_LT(kp.sk.value, tiny().q());
    EXPECT_EQ(kp.pk.value, naive_pow(2, kp.sk.value.get_si(), 23));
  }
}

TEST(ElGamal, HandComputedEncryptDecryptReencrypt) {
  const GroupElement pk{8};
  const Ciphertext ct = encrypt(tiny(), pk, 1, tiny().scalar(4));
  EXPECT_EQ(ct.c1.value, 16);
  EXPECT_EQ(ct.c2.value, 4);
  EXPECT_EQ(decrypt(tiny(), tiny().scalar(3), ct, 10), 1u);

  const Ciphertext re = reencrypt(tiny(), pk, ct, tiny().scalar(1));
  EXPECT_EQ(re.c1.value, 9);
  EXPECT_EQ(re.c2.value, 9);
  EXPECT_EQ(reencrypt(tiny(), pk, ct, tiny().scalar(0)), ct);

  const Ciphertext zero = encrypt(tiny(), pk, 0, tiny().scalar(5));
  EXPECT_EQ(zero.c2, tiny().pow(pk, tiny().scalar(5)));
  EXPECT_THROW(encrypt(tiny(), pk, 1, tiny().scalar(0)), InvalidArgument);
}

TEST(ElGamal, DecodeRange) {
  const Group& g = Group::test256();
  Drbg rng(9, "decode");
  const KeyPair kp = keygen(g, rng);
  const Ciphertext ct = encrypt(g, kp.pk, 6, rng);
  EXPECT_EQ(decrypt(g, kp.sk, ct, 6), 6u);
  EXPECT_THROW(decrypt(g, kp.sk, ct, 5), DecodeRangeError);
}

TEST(ElGamal, RoundTripAndHomomorphismProperty) {
  const Group& g = Group::test256();
  Drbg rng(11, "prop");
  const KeyPair kp = keygen(g, rng);
  for (int i = 0; i < 50; ++i) {
    const auto a = rng.below_u64(20), b = rng.below_u64(20);
    const Ciphertext ca = encrypt(g, kp.pk, a, rng), cb = encrypt(g, kp.pk, b, rng);
    EXPECT_EQ(decrypt(g, kp.sk, ca, 40), a);
    EXPECT_EQ(decrypt(g, kp.sk, combine(g, ca, cb), 40), a + b);
    const Ciphertext re = reencrypt(g, kp.pk, ca, g.random_nonzero_scalar(rng));
    EXPECT_FALSE(re == ca);
    EXPECT_EQ(decrypt(g, kp.sk, re, 40), a);
    EXPECT_TRUE(contains(g, re));
  }
}

TEST(ElGamal, WorkedSumExample) {
  const Group& g = Group::test256();
  Drbg rng(2, "sum");
  const KeyPair kp = keygen(g, rng);
  EXPECT_EQ(decrypt(g, kp.sk, combine(g, encrypt(g, kp.pk, 2, rng), encrypt(g, kp.pk, 3, rng)), 10), 5u);
  const Ciphertext ct = encrypt(g, kp.pk, 4, rng);
  EXPECT_EQ(decrypt(g, kp.sk, combine(g, ct, encrypt(g, kp.pk, 0, rng)), 10), 4u);
}

TEST(ElGamal, SlotwiseBallotSum021) {
  // Ballots 010, 001, 010 combine slotwise to 0, 2, 1.
  for (const Group* g : {&Group::tiny(), &Group::test256()}) {
    Drbg rng(3, "021");
    const KeyPair kp = keygen(*g, rng);
    const std::vector<std::vector<std::uint64_t>> ballots{{0, 1, 0}, {0, 0, 1}, {0, 1, 0}};
    std::vector<std::uint64_t> counts;
    for (std::size_t k = 0; k < 3; ++k) {
      std::vector<Ciphertext> column;
      for (const auto& b : ballots) column.push_back(encrypt(*g, kp.pk, b[k], rng));
      counts.push_back(decrypt(*g, kp.sk, combine_all(*g, column), 3));
    }
    EXPECT_EQ(counts, (std::vector<std::uint64_t>{0, 2, 1}));
  }
}

TEST(ElGamal, CombineAllOfNothingIsIdentity) {
  const Ciphertext id = combine_all(tiny(), {});
  EXPECT_EQ(id.c1, tiny().identity());
  EXPECT_EQ(id.c2, tiny().identity());
}

TEST(ElGamal, CiphertextEncodingRejectsNonMembers) {
  Encoder enc;
  put_ciphertext(enc, Ciphertext{{5}, {4}});  // 5 is not a square mod 23
  Decoder dec(enc.bytes());
  EXPECT_THROW(get_ciphertext(dec, tiny()), FormatError);
}
