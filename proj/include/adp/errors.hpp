#pragma once

#include <stdexcept>
#include <string>

namespace adp {

struct ConnectivityFailure : std::runtime_error {
  explicit ConnectivityFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonPositiveDt : std::invalid_argument {
  explicit NonPositiveDt(double dt)
      : std::invalid_argument("integration interval must be positive, got " + std::to_string(dt)) {}
};

struct InvalidParams : std::invalid_argument {
  explicit InvalidParams(const std::string& msg) : std::invalid_argument(msg) {}
};

struct NoFeasibleTrajectory : std::runtime_error {
  NoFeasibleTrajectory() : std::runtime_error("all candidate trajectories collide") {}
};

struct ShapeMismatch : std::invalid_argument {
  explicit ShapeMismatch(const std::string& msg) : std::invalid_argument(msg) {}
};

struct InsufficientData : std::runtime_error {
  explicit InsufficientData(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidInput : std::invalid_argument {
  explicit InvalidInput(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace adp
