#include "qf2/gf2k.hpp"

#include "qf2/errors.hpp"

namespace qf2 {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::NegativeValuation: return "NegativeValuation";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::ZeroScalar: return "ZeroScalar";
    case ErrorKind::ArfNontrivial: return "ArfNontrivial";
    case ErrorKind::SingularInput: return "SingularInput";
    case ErrorKind::UndecidableInstance: return "UndecidableInstance";
    case ErrorKind::WildSymbol: return "WildSymbol";
    case ErrorKind::UndecidableClass: return "UndecidableClass";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::LinkageHypothesisFailed: return "LinkageHypothesisFailed";
    case ErrorKind::OracleFailure: return "OracleFailure";
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace gf2k {

namespace {
// Conway polynomials for GF(2^k), bit i = coefficient of z^i.
constexpr uint32_t kModuli[kMaxExponent + 1] = {
    0,
    0b11,         // z + 1 (GF(2): reduction sends z to 1, unused)
    0b111,        // z^2 + z + 1
    0b1011,       // z^3 + z + 1
    0b10011,      // z^4 + z + 1
    0b100101,     // z^5 + z^2 + 1
    0b1011011,    // z^6 + z^4 + z^3 + z + 1
    0b10000011,   // z^7 + z + 1
    0b100011101,  // z^8 + z^4 + z^3 + z^2 + 1
};
}  // namespace

bool supported(unsigned k) { return k >= 1 && k <= kMaxExponent; }

uint32_t modulus(unsigned k) {
  if (!supported(k)) throw Error(ErrorKind::UnsupportedField, "GF(2^k) with k=" + std::to_string(k));
  return kModuli[k];
}

uint32_t mul(unsigned k, uint32_t x, uint32_t y) {
  if (k == 1) return x & y;
  uint32_t acc = 0;
  for (unsigned i = 0; i < k; ++i)
    if ((y >> i) & 1u) acc ^= x << i;
  const uint32_t m = kModuli[k];
  for (int bit = 2 * static_cast<int>(k) - 2; bit >= static_cast<int>(k); --bit)
    if ((acc >> bit) & 1u) acc ^= m << (bit - static_cast<int>(k));
  return acc;
}

uint32_t square(unsigned k, uint32_t x) { return mul(k, x, x); }

uint32_t inv(unsigned k, uint32_t x) {
  if (x == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 in GF(2^k)");
  // x^(2^k - 2)
  uint32_t result = 1, base = x;
  uint32_t e = (1u << k) - 2;
  while (e) {
    if (e & 1u) result = mul(k, result, base);
    base = square(k, base);
    e >>= 1;
  }
  return result;
}

uint32_t sqrt(unsigned k, uint32_t x) {
  // Frobenius has order k, so x^(2^(k-1)) squares to x.
  for (unsigned i = 0; i + 1 < k; ++i) x = square(k, x);
  return x;
}

uint32_t trace(unsigned k, uint32_t x) {
  uint32_t acc = 0, p = x;
  for (unsigned i = 0; i < k; ++i) {
    acc ^= p;
    p = square(k, p);
  }
  return acc;
}

uint32_t trace_one_representative(unsigned k) {
  for (uint32_t x = 1; x < order(k); ++x)
    if (trace(k, x) == 1) return x;
  return 1;
}

uint32_t artin_schreier_root(unsigned k, uint32_t x) {
  for (uint32_t y = 0; y < order(k); ++y)
    if ((square(k, y) ^ y) == x) return y;
  throw Error(ErrorKind::InvalidArgument, "element has nonzero trace; no Artin-Schreier root");
}

}  // namespace gf2k
}  // namespace qf2
