#pragma once

#include <stdexcept>
#include <string>

namespace dnwr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid model parameter (non-positive diffusivity, empty domain, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A length or time ratio that must be an integer is not.
class NonCommensurate : public Error {
 public:
  using Error::Error;
};

class MisalignedBreakpoint : public Error {
 public:
  using Error::Error;
};

class TooThinSubdomain : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class TooFewNodes : public Error {
 public:
  using Error::Error;
};

class EvenSubdomainCount : public Error {
 public:
  using Error::Error;
};

/// Adjacent subdomain fields disagree at a shared node by more than the allowed gap.
class InterfaceMismatch : public Error {
 public:
  InterfaceMismatch(int interface_index, double gap)
      : Error("interface " + std::to_string(interface_index) + " mismatch: max gap " +
              std::to_string(gap)),
        interface_index_(interface_index),
        gap_(gap) {}

  int interface_index() const noexcept { return interface_index_; }
  double gap() const noexcept { return gap_; }

 private:
  int interface_index_;
  double gap_;
};

/// Bad experiment configuration; `key()` names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error("config key '" + key + "': " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace dnwr
