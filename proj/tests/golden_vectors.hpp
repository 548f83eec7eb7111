#pragma once

// Frozen outputs of tests/oracles/reference.py (hashlib, xxhash, sympy).
// Seed vectors use seed = 00 01 02 ... 1f; "long300" is bytes 0..255
// followed by bytes 0..43.

#include <array>
#include <cstdint>
#include <string_view>

namespace golden {

inline constexpr std::string_view kSha256Empty = "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855";
inline constexpr std::string_view kSha512Abc =
    "ddaf35a193617abacc417349ae20413112e6fa4e89a97ea20a9eeee64b55d39a"
    "2192992a274fc1a836ba3c23a3feebbd454d4423643ce80e2a9ac94fa54ca49f";

struct HashVector {
  std::string_view algo;
  std::string_view abc;
  std::string_view long300;
};

inline constexpr std::array<HashVector, 5> kHashVectors = {{
    {"BLAKE2s-128", "aa4938119b1dc7b87cbad0ffd200d0ae", "da5b5643765571510bcc51e5f1f8c9e2"},
    {"BLAKE2s-160", "5ae3b99be29b01834c3b508521ede60438f8de17", "a10405a2523133e42cb0c07dfadb9d0eac691ca2"},
    {"BLAKE2b-256", "bddd813c634239723171ef3fee98579b94964e3bb1cb3e427262c8c068d52319",
     "3a486e3fe3ee414853000269ac020030aeef748cb05cd62ba85939ec298ef25c"},
    {"XXH3-64", "78af5f94892f3950", "d44052f5a3485425"},
    {"XXH3-128", "06b05ab6733a618578af5f94892f3950", "a699035354fc0bebd44052f5a3485425"},
}};

// CityHashCrc256 of bytes {0, 1, 2, 3, 4}, as four 64-bit words.
inline constexpr std::array<std::uint64_t, 4> kCity256Words = {
    0xA7FAC4B64C35C8B4ull, 0xDD83C2CDF35398F6ull, 0xEAF64F6BA6A2C9E8ull, 0x4E72CE1685CE9077ull};

// derive_indices("abc", ctr, SHA2-256, t = 64, k = 16)
inline constexpr std::array<std::uint32_t, 16> kIndicesAbcCtr0 = {51, 50, 54, 49, 43, 9,  33, 39,
                                                                  55, 43, 55, 56, 51, 41, 7,  57};
inline constexpr std::array<std::uint32_t, 16> kIndicesAbcCtr1 = {17, 44, 14, 6,  58, 60, 51, 47,
                                                                  32, 43, 40, 11, 44, 11, 2,  21};
inline constexpr std::uint32_t kCounterAbc = 7;
inline constexpr std::array<std::uint32_t, 16> kIndicesAbcCtr7 = {56, 21, 39, 4,  51, 3, 13, 17,
                                                                  57, 16, 0,  9,  60, 8, 14, 44};

// kappa = 32 preset, seed 00..1f
inline constexpr std::string_view kSk0 = "04a6950a";
inline constexpr std::string_view kSk63 = "ad97a8ab";
inline constexpr std::string_view kHorsPk0 = "00c5bd12511aff088a33a9633a84e554d7820b0f04916af12a625db99150a9a9";
inline constexpr std::size_t kTvpdPk32Bytes = 995;
inline constexpr std::uint64_t kTvpdPk32Popcount = 491;
inline constexpr std::string_view kTvpdPk32Sha256 = "e3957b537986fb9cacfe86b90695ac0feef5f3379fecc80a41b98dee0d006cd3";
inline constexpr std::string_view kSigAbcPayloadSha256 =
    "a5659706da1ef182456e273562da21e40dc736ed08b91b1f7bb9fc092bc18f3a";

// kappa = 64 variant 2 preset (XXH3-128), seed 00..1f
inline constexpr std::array<std::uint32_t, 28> kPlan64v2 = {479, 487, 491, 499, 503, 509, 521, 523, 541, 547,
                                                            557, 563, 569, 571, 577, 587, 593, 599, 601, 607,
                                                            613, 617, 619, 631, 641, 643, 647, 653};
inline constexpr std::size_t kTvpdPk64Bytes = 1999;
inline constexpr std::uint64_t kTvpdPk64Popcount = 3191;
inline constexpr std::string_view kTvpdPk64Sha256 = "10a57ba8c4df1f8a228bce3fd4fb86a3ae8d51ade5829c3f18b492cb83709d84";

// Probability that 16 uniform indices out of 64 are distinct, and the mean
// counter (1 - q) / q that follows from it.
inline constexpr double kDistinctProb64x16 = 0.12901152992540985;
inline constexpr double kMeanCounter64x16 = 6.751245183885243;

}  // namespace golden
