#pragma once

#include <stdexcept>
#include <string>

namespace deltaion {

// Configuration / input validation problems. CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Failures of the numerics themselves (non-convergence, instability, range
// violations). CLI maps these to exit code 3. Carries enough context to
// attribute the failure to (module, operation, parameters).
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& module, const std::string& op,
                 const std::string& detail)
      : std::runtime_error(module + "." + op + ": " + detail),
        module_(module), op_(op) {}

  const std::string& module_name() const { return module_; }
  const std::string& operation() const { return op_; }

private:
  std::string module_;
  std::string op_;
};

}  // namespace deltaion
