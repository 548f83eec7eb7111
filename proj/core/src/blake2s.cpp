#include "blake2s.hpp"

#include <array>
#include <bit>
#include <cstring>

namespace tvpd::detail {
namespace {

constexpr std::array<std::uint32_t, 8> kIv = {
    0x6A09E667u, 0xBB67AE85u, 0x3C6EF372u, 0xA54FF53Au,
    0x510E527Fu, 0x9B05688Cu, 0x1F83D9ABu, 0x5BE0CD19u,
};

constexpr std::uint8_t kSigma[10][16] = {
    {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15},
    {14, 10, 4, 8, 9, 15, 13, 6, 1, 12, 0, 2, 11, 7, 5, 3},
    {11, 8, 12, 0, 5, 2, 15, 13, 10, 14, 3, 6, 7, 1, 9, 4},
    {7, 9, 3, 1, 13, 12, 11, 14, 2, 6, 5, 10, 4, 0, 15, 8},
    {9, 0, 5, 7, 2, 4, 10, 15, 14, 1, 11, 12, 6, 8, 3, 13},
    {2, 12, 6, 10, 0, 11, 8, 3, 4, 13, 7, 5, 15, 14, 1, 9},
    {12, 5, 1, 15, 14, 13, 4, 10, 0, 7, 6, 3, 9, 2, 8, 11},
    {13, 11, 7, 14, 12, 1, 3, 9, 5, 0, 15, 4, 8, 6, 2, 10},
    {6, 15, 14, 9, 11, 3, 0, 8, 12, 2, 13, 7, 1, 4, 10, 5},
    {10, 2, 8, 4, 7, 6, 1, 5, 15, 11, 9, 14, 3, 12, 13, 0},
};

inline std::uint32_t load32le(const std::uint8_t* p) {
  return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
         (std::uint32_t{p[3]} << 24);
}

inline void mix(std::uint32_t* v, int a, int b, int c, int d, std::uint32_t x, std::uint32_t y) {
  v[a] = v[a] + v[b] + x;
  v[d] = std::rotr(v[d] ^ v[a], 16);
  v[c] = v[c] + v[d];
  v[b] = std::rotr(v[b] ^ v[c], 12);
  v[a] = v[a] + v[b] + y;
  v[d] = std::rotr(v[d] ^ v[a], 8);
  v[c] = v[c] + v[d];
  v[b] = std::rotr(v[b] ^ v[c], 7);
}

void compress(std::uint32_t* h, const std::uint8_t* block, std::uint64_t counter, bool last) {
  std::uint32_t m[16];
  for (int i = 0; i < 16; ++i) m[i] = load32le(block + 4 * i);

  std::uint32_t v[16];
  for (int i = 0; i < 8; ++i) {
    v[i] = h[i];
    v[i + 8] = kIv[i];
  }
  v[12] ^= static_cast<std::uint32_t>(counter);
  v[13] ^= static_cast<std::uint32_t>(counter >> 32);
  if (last) v[14] = ~v[14];

  for (const auto& s : kSigma) {
    mix(v, 0, 4, 8, 12, m[s[0]], m[s[1]]);
    mix(v, 1, 5, 9, 13, m[s[2]], m[s[3]]);
    mix(v, 2, 6, 10, 14, m[s[4]], m[s[5]]);
    mix(v, 3, 7, 11, 15, m[s[6]], m[s[7]]);
    mix(v, 0, 5, 10, 15, m[s[8]], m[s[9]]);
    mix(v, 1, 6, 11, 12, m[s[10]], m[s[11]]);
    mix(v, 2, 7, 8, 13, m[s[12]], m[s[13]]);
    mix(v, 3, 4, 9, 14, m[s[14]], m[s[15]]);
  }
  for (int i = 0; i < 8; ++i) h[i] ^= v[i] ^ v[i + 8];
}

}  // namespace

void blake2s(std::uint8_t* out, std::size_t out_len, const std::uint8_t* in, std::size_t in_len) {
  std::uint32_t h[8];
  for (int i = 0; i < 8; ++i) h[i] = kIv[i];
  // Parameter block: digest length, no key, fanout 1, depth 1.
  h[0] ^= 0x01010000u ^ static_cast<std::uint32_t>(out_len);

  std::uint64_t counter = 0;
  while (in_len > 64) {
    counter += 64;
    compress(h, in, counter, false);
    in += 64;
    in_len -= 64;
  }
  std::uint8_t block[64] = {};
  if (in_len > 0) std::memcpy(block, in, in_len);
  counter += in_len;
  compress(h, block, counter, true);

  std::uint8_t full[32];
  for (int i = 0; i < 8; ++i) {
    full[4 * i] = static_cast<std::uint8_t>(h[i]);
    full[4 * i + 1] = static_cast<std::uint8_t>(h[i] >> 8);
    full[4 * i + 2] = static_cast<std::uint8_t>(h[i] >> 16);
    full[4 * i + 3] = static_cast<std::uint8_t>(h[i] >> 24);
  }
  std::memcpy(out, full, out_len);
}

}  // namespace tvpd::detail
