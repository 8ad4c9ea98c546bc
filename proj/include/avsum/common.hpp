#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace avsum {

// Frame-major layout everywhere: row = frame (time), column = feature channel.
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using MatF = Eigen::MatrixXf;

// Raised when a file or value violates a format contract (bad magic,
// truncated payload, non-finite entries, mismatched lengths, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a run configuration is malformed (unknown keys, bad ranges).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

inline bool all_finite(const Mat& m) { return m.allFinite(); }
inline bool all_finite(const MatF& m) { return m.allFinite(); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

}  // namespace avsum
