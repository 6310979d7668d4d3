#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace acat {

/// Largest number of conserved components any model carries (2D Euler).
inline constexpr int kMaxComponents = 4;

/// One m-component state, stack-allocated.
template <typename Scalar>
using StateVector =
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxComponents, 1>;

/// Column-per-node block of states (m rows).
template <typename Scalar>
using StateBlock = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using State = StateVector<double>;

enum class Axis { x = 0, y = 1 };

enum class Boundary { periodic, outflow };

// Error hierarchy. Everything the solvers raise derives from Error so the CLI
// can report one machine-readable line.

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("invalid_argument", what) {}
};

/// A state outside the model's admissible set (e.g. non-positive pressure).
class StateError : public Error {
 public:
  StateError(const std::string& what, long cell = -1, long cell_y = -1)
      : Error("state_error", what), cell_(cell), cell_y_(cell_y) {}
  long cell() const noexcept { return cell_; }
  long cell_y() const noexcept { return cell_y_; }

 private:
  long cell_;
  long cell_y_;
};

/// A high-order flux could not be completed (non-finite or inadmissible
/// Taylor-predicted state).
class StepFailure : public Error {
 public:
  StepFailure(const std::string& what, long interface, int level)
      : Error("step_failure", what), interface_(interface), level_(level) {}
  long interface_index() const noexcept { return interface_; }
  int level() const noexcept { return level_; }

 private:
  long interface_;
  int level_;
};

class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what) : Error("numerical_failure", what) {}
};

}  // namespace acat
