#include "evote/group/group.hpp"

#include "evote/common/errors.hpp"

namespace evote {

namespace {

constexpr const char* kTest256P = "B24F720B16FFD1B2510EEE959EDFBC1294F8647BED90E1492F988C132100978B";

constexpr const char* kModp3072P =
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05"
    "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB"
    "9ED529077096966D670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9DE2BCBF695581718"
    "3995497CEA956AE515D2261898FA051015728E5A8AAAC42DAD33170D04507A33"
    "A85521ABDF1CBA64ECFB850458DBEF0A8AEA71575D060C7DB3970F85A6E1E4C7"
    "ABF5AE8CDB0933D71E8C94E04A25619DCEE3D2261AD2EE6BF12FFA06D98A0864"
    "D87602733EC86A64521F2B18177B200CBBE117577A615D6C770988C0BAD946E2"
    "08E24FA074E5AB3143DB5BFCE0FD108E4B82D120A93AD2CAFFFFFFFFFFFFFFFF";

Group safe_prime_group(const char* p_hex, unsigned long g) {
  mpz_class p(p_hex, 16);
  mpz_class q = (p - 1) / 2;
  return Group(p, q, g);
}

}  // namespace

Group::Group(mpz_class p, mpz_class q, mpz_class g) : p_(std::move(p)), q_(std::move(q)), g_(std::move(g)) {
  if (p_ < 5 || q_ < 2) throw InvalidArgument("group modulus too small");
  if (mpz_probab_prime_p(p_.get_mpz_t(), 25) == 0) throw InvalidArgument("p is not prime");
  if (mpz_probab_prime_p(q_.get_mpz_t(), 25) == 0) throw InvalidArgument("q is not prime");
  mpz_class rem = (p_ - 1) % q_;
  if (rem != 0) throw InvalidArgument("q does not divide p - 1");
  if (g_ <= 1 || g_ >= p_) throw InvalidArgument("generator out of range");
  if (!contains({g_})) throw InvalidArgument("generator is not in the order-q subgroup");
}

const Group& Group::tiny() {
  static const Group group(23, 11, 2);
  return group;
}

const Group& Group::test256() {
  static const Group group = safe_prime_group(kTest256P, 4);
  return group;
}

const Group& Group::modp3072() {
  static const Group group = safe_prime_group(kModp3072P, 2);
  return group;
}

const Group& Group::by_name(std::string_view name) {
  if (name == "tiny") return tiny();
  if (name == "test256") return test256();
  if (name == "modp3072") return modp3072();
  throw InvalidArgument("unknown group profile: " + std::string(name));
}

bool Group::contains(const GroupElement& x) const {
  if (x.value <= 0 || x.value >= p_) return false;
  mpz_class r;
  mpz_powm(r.get_mpz_t(), x.value.get_mpz_t(), q_.get_mpz_t(), p_.get_mpz_t());
  return r == 1;
}

GroupElement Group::mul(const GroupElement& a, const GroupElement& b) const {
  mpz_class r = a.value * b.value;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t());
  return {r};
}

GroupElement Group::inv(const GroupElement& a) const {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.value.get_mpz_t(), p_.get_mpz_t()) == 0) {
    throw InvalidArgument("element has no inverse");
  }
  return {r};
}

GroupElement Group::div(const GroupElement& a, const GroupElement& b) const { return mul(a, inv(b)); }

GroupElement Group::pow(const GroupElement& base, const Scalar& e) const { return pow(base, e.value); }

GroupElement Group::pow(const GroupElement& base, const mpz_class& e) const {
  mpz_class exp = e % q_;
  if (sgn(exp) < 0) exp += q_;
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.value.get_mpz_t(), exp.get_mpz_t(), p_.get_mpz_t());
  return {r};
}

Scalar Group::scalar(const mpz_class& v) const {
  mpz_class r = v % q_;
  if (sgn(r) < 0) r += q_;
  return {r};
}

Scalar Group::add(const Scalar& a, const Scalar& b) const { return scalar(a.value + b.value); }
Scalar Group::sub(const Scalar& a, const Scalar& b) const { return scalar(a.value - b.value); }
Scalar Group::mul(const Scalar& a, const Scalar& b) const { return scalar(a.value * b.value); }

Scalar Group::random_nonzero_scalar(RandomSource& rng) const {
  for (;;) {
    Scalar s = random_scalar(rng);
    if (sgn(s.value) != 0) return s;
  }
}

void Group::encode(Encoder& enc) const { enc.put_int(p_).put_int(q_).put_int(g_); }

GroupElement get_element(Decoder& dec, const Group& group) {
  GroupElement x{dec.get_int()};
  if (!group.contains(x)) throw FormatError("value is not a subgroup element");
  return x;
}

Scalar get_scalar(Decoder& dec, const Group& group) {
  mpz_class v = dec.get_int();
  if (v >= group.q()) throw FormatError("scalar out of range");
  return {v};
}

std::string element_hex(const GroupElement& x) { return to_hex(magnitude_bytes(x.value)); }

GroupElement element_from_hex(std::string_view hex, const Group& group) {
  GroupElement x{from_magnitude(from_hex(hex))};
  if (!group.contains(x)) throw FormatError("value is not a subgroup element");
  return x;
}

}  // namespace evote
