#include "flags.hpp"

#include "errors.hpp"

#include <array>
#include <utility>

namespace nomafbl {

namespace {

constexpr std::array<std::pair<Flag, std::string_view>, 6> kNames{{
    {Flag::short_blocklength, "short_blocklength"},
    {Flag::rate_clamped, "rate_clamped"},
    {Flag::quadrature_fallback, "quadrature_fallback"},
    {Flag::closed_form_mismatch, "closed_form_mismatch"},
    {Flag::domain_error, "domain_error"},
    {Flag::zero_power, "zero_power"},
}};

} // namespace

std::string Flags::to_string() const {
  std::string out;
  for (const auto& [flag, name] : kNames) {
    if (!has(flag))
      continue;
    if (!out.empty())
      out += '|';
    out += name;
  }
  return out;
}

Flags Flags::parse(std::string_view text) {
  Flags out;
  while (!text.empty()) {
    const auto bar = text.find('|');
    const auto token = text.substr(0, bar);
    bool found = false;
    for (const auto& [flag, name] : kNames) {
      if (name == token) {
        out |= flag;
        found = true;
        break;
      }
    }
    if (!found)
      throw ConfigError("unknown flag name '" + std::string(token) + "'");
    if (bar == std::string_view::npos)
      break;
    text.remove_prefix(bar + 1);
  }
  return out;
}

} // namespace nomafbl
