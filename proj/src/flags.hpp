#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace nomafbl {

// Validity flags attached to evaluated operating points. Bit values are part
// of the C API (see nomafbl.h) and must not be renumbered.
enum class Flag : std::uint32_t {
  none = 0,
  short_blocklength = 1u << 0,   // effective blocklength below 100
  rate_clamped = 1u << 1,        // normal-approximation rate went negative
  quadrature_fallback = 1u << 2, // lower knee below zero, closed form replaced
  closed_form_mismatch = 1u << 3,
  domain_error = 1u << 4,        // point could not be evaluated
  zero_power = 1u << 5,
};

class Flags {
public:
  constexpr Flags() = default;
  constexpr Flags(Flag f) : bits_(static_cast<std::uint32_t>(f)) {}
  constexpr explicit Flags(std::uint32_t bits) : bits_(bits) {}

  constexpr Flags& operator|=(Flags o) {
    bits_ |= o.bits_;
    return *this;
  }
  friend constexpr Flags operator|(Flags a, Flags b) { return a |= b; }
  constexpr bool has(Flag f) const {
    return (bits_ & static_cast<std::uint32_t>(f)) != 0;
  }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint32_t bits() const { return bits_; }
  friend constexpr bool operator==(Flags, Flags) = default;

  /// Pipe-separated flag names, empty string when no flag is set.
  std::string to_string() const;
  /// Inverse of to_string(); throws ConfigError on unknown names.
  static Flags parse(std::string_view text);

private:
  std::uint32_t bits_ = 0;
};

} // namespace nomafbl
