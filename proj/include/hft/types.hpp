#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hft {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;
using VecRef = Eigen::Ref<const Vec>;

// Malformed or inconsistent market data (bad CSV row, crossed book, ...).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid configuration values or files.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Missing or stale upstream pipeline artifact.
struct ArtifactError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hft
