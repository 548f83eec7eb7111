#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "tvpd/hashes.hpp"

namespace tvpd {

using BigUint = boost::multiprecision::cpp_int;

/// Big-endian unsigned interpretation of the digest bytes.
inline BigUint digest_to_uint(const Digest& d) {
  BigUint value = 0;
  for (std::uint8_t b : d.bytes()) {
    value <<= 8;
    value += b;
  }
  return value;
}

}  // namespace tvpd
