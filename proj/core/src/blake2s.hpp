#pragma once

#include <cstddef>
#include <cstdint>

namespace tvpd::detail {

// Unkeyed BLAKE2s (RFC 7693) with a variable digest length of 1..32 bytes.
void blake2s(std::uint8_t* out, std::size_t out_len, const std::uint8_t* in, std::size_t in_len);

}  // namespace tvpd::detail
