#pragma once

#include <stdexcept>
#include <string>

namespace fcsim {

// Invalid model parameters or scenario files. Thrown during construction
// and config loading, never mid-simulation.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
  config_error(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what) {}
};

// File that cannot be read or written.
class io_error : public std::runtime_error {
public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fcsim
