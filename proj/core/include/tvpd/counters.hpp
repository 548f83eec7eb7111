#pragma once

#include <cstdint>

namespace tvpd {

/// Per-thread tallies of the primitive operations performed by the schemes,
/// broken down by role. Used to check the cost model, not for accounting.
struct OpCounters {
  std::uint64_t message_hash = 0;  // H calls
  std::uint64_t one_way = 0;       // f calls (HORS)
  std::uint64_t filter_hash = 0;   // h calls (OHBF)
  std::uint64_t mod_reductions = 0;

  friend bool operator==(const OpCounters&, const OpCounters&) = default;
};

namespace detail {
inline thread_local OpCounters tls_op_counters;
}

inline OpCounters& op_counters() noexcept { return detail::tls_op_counters; }

inline void reset_op_counters() noexcept { op_counters() = OpCounters{}; }

}  // namespace tvpd
