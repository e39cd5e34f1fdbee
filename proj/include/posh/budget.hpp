#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

#include "posh/error.hpp"

namespace posh {

/// Caps on the exhaustive enumerations. Exceeding one raises
/// ErrorKind::ResourceLimit; no enumeration is ever silently truncated.
struct Budget {
  std::size_t subsheaves = 5000;
  std::size_t lambda_assignments = 2'000'000;
  std::size_t section_search = 2'000'000;
  std::size_t iso_search = 2'000'000;

  /// Defaults, or every cap set to POSH_BUDGET when that holds a positive integer.
  static Budget from_env() {
    Budget b;
    if (const char* env = std::getenv("POSH_BUDGET")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) {
        const auto n = static_cast<std::size_t>(v);
        b.subsheaves = n;
        b.lambda_assignments = n;
        b.section_search = n;
        b.iso_search = n;
      }
    }
    return b;
  }
};

inline void charge(std::size_t& used, std::size_t cap, const char* what) {
  if (++used > cap) {
    throw Error(ErrorKind::ResourceLimit,
                std::string(what) + " exceeds budget of " + std::to_string(cap));
  }
}

}  // namespace posh
