#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "evote/common/bytes.hpp"
#include "evote/common/random.hpp"

namespace evote {

// Exponent modulo q. Always reduced into [0, q).
struct Scalar {
  mpz_class value;

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value == b.value; }
};

// Element of the order-q subgroup of Z*_p.
struct GroupElement {
  mpz_class value;

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.value == b.value; }
};

// Prime-order subgroup of Z*_p for a safe prime p = 2q + 1.
//
// Three profiles ship with the library:
//   tiny     p = 23, q = 11, g = 2     hand-checkable examples, soundness statistics
//   test256  256-bit safe prime, g = 4 fast end-to-end elections
//   modp3072 RFC 3526 group 15, g = 2  production key length
//
// Group values are immutable and safe to share across threads.
class Group {
 public:
  // Throws InvalidArgument unless p, q prime, q | p - 1, g != 1, g^q = 1.
  Group(mpz_class p, mpz_class q, mpz_class g);

  static const Group& tiny();
  static const Group& test256();
  static const Group& modp3072();
  // "tiny", "test256" or "modp3072".
  static const Group& by_name(std::string_view name);

  const mpz_class& p() const { return p_; }
  const mpz_class& q() const { return q_; }
  GroupElement generator() const { return {g_}; }
  GroupElement identity() const { return {1}; }

  // Membership in the order-q subgroup; costs one exponentiation.
  bool contains(const GroupElement& x) const;

  GroupElement mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement div(const GroupElement& a, const GroupElement& b) const;
  GroupElement inv(const GroupElement& a) const;
  GroupElement pow(const GroupElement& base, const Scalar& e) const;
  GroupElement pow(const GroupElement& base, const mpz_class& e) const;
  GroupElement g_pow(const Scalar& e) const { return pow(generator(), e); }
  GroupElement g_pow(const mpz_class& e) const { return pow(generator(), e); }

  Scalar scalar(const mpz_class& v) const;
  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;

  Scalar random_scalar(RandomSource& rng) const { return {rng.below(q_)}; }
  // Uniform in [1, q - 1], drawing again whenever zero comes up.
  Scalar random_nonzero_scalar(RandomSource& rng) const;

  // Canonical encoding (p, q, g); part of every Fiat-Shamir statement.
  void encode(Encoder& enc) const;

  friend bool operator==(const Group& a, const Group& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.g_ == b.g_;
  }

 private:
  mpz_class p_, q_, g_;
};

inline Encoder& put_element(Encoder& enc, const GroupElement& x) { return enc.put_int(x.value); }
inline Encoder& put_scalar(Encoder& enc, const Scalar& s) { return enc.put_int(s.value); }

// Decoding validates range and subgroup membership; FormatError otherwise.
GroupElement get_element(Decoder& dec, const Group& group);
Scalar get_scalar(Decoder& dec, const Group& group);

std::string element_hex(const GroupElement& x);
GroupElement element_from_hex(std::string_view hex, const Group& group);

}  // namespace evote
