#pragma once

#include <cstdint>

namespace qf2::gf2k {

// Elements of GF(2^k) are bit vectors over the polynomial basis 1, z, ..., z^{k-1}
// modulo a fixed irreducible (Conway) polynomial. Supported k: 1..8.
constexpr unsigned kMaxExponent = 8;

uint32_t modulus(unsigned k);
bool supported(unsigned k);

inline uint32_t add(uint32_t x, uint32_t y) { return x ^ y; }
uint32_t mul(unsigned k, uint32_t x, uint32_t y);
uint32_t square(unsigned k, uint32_t x);
uint32_t inv(unsigned k, uint32_t x);
uint32_t sqrt(unsigned k, uint32_t x);
/// Absolute trace to GF(2); x lies in the image of y -> y^2 + y iff trace is 0.
uint32_t trace(unsigned k, uint32_t x);
/// Smallest element (as bit pattern) of trace 1.
uint32_t trace_one_representative(unsigned k);
/// Some y with y^2 + y = x; requires trace(x) == 0.
uint32_t artin_schreier_root(unsigned k, uint32_t x);

inline uint32_t order(unsigned k) { return 1u << k; }

}  // namespace qf2::gf2k
