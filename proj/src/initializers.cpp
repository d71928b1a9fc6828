#include "dnwr/initializers.hpp"

#include <array>
#include <cmath>

#include "dnwr/errors.hpp"

namespace dnwr {

namespace {

constexpr std::array<std::string_view, 5> kNames{"t2", "t", "sin", "piecewise", "zero"};

}  // namespace

std::span<const std::string_view> initializer_names() { return kNames; }

double piecewise_initializer(double t) {
  if (t <= 0.4) return t;
  if (t <= 0.8) return t * t;
  return std::sin(t);
}

TimeFunction named_initializer(std::string_view name) {
  if (name == "t2") return [](double t) { return t * t; };
  if (name == "t") return [](double t) { return t; };
  if (name == "sin") return [](double t) { return std::sin(t); };
  if (name == "piecewise") return piecewise_initializer;
  if (name == "zero") return [](double) { return 0.0; };
  throw InvalidArgument("unknown initializer '" + std::string(name) + "'");
}

}  // namespace dnwr
