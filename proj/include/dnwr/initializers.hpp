#pragma once

#include <span>
#include <string>
#include <string_view>

#include "dnwr/model.hpp"

namespace dnwr {

/// Registered initial interface guesses: "t2", "t", "sin", "piecewise", "zero".
std::span<const std::string_view> initializer_names();

/// Throws InvalidArgument for an unregistered name.
TimeFunction named_initializer(std::string_view name);

/// t on t <= 0.4, t^2 on (0.4, 0.8], sin(t) beyond 0.8 (the last branch extends past t = 1).
double piecewise_initializer(double t);

}  // namespace dnwr
