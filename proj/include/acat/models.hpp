#pragma once

// Conservation-law systems u_t + f(u)_x (+ g(u)_y) = 0.

#include "acat/types.hpp"

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace acat {

inline constexpr double kDefaultGamma = 1.4;

template <typename Scalar>
class FluxModel {
 public:
  using StateT = StateVector<Scalar>;

  virtual ~FluxModel() = default;

  virtual std::string name() const = 0;
  virtual int components() const = 0;
  /// Number of space dimensions the model defines fluxes for.
  virtual int dimensions() const = 0;
  virtual std::vector<std::string> component_names() const = 0;

  /// f(u) for Axis::x, g(u) for Axis::y. No admissibility check.
  virtual void flux(Axis axis, const StateT& u, StateT& out) const = 0;
  /// Upper bound on the spectral radius of the flux Jacobian along the axis.
  virtual Scalar max_wave_speed(Axis axis, const StateT& u) const = 0;
  /// Smallest and largest characteristic speed along the axis.
  virtual std::pair<Scalar, Scalar> wave_speed_range(Axis axis, const StateT& u) const = 0;

  virtual bool admissible(const StateT& u) const { return u.allFinite(); }

  StateT flux(Axis axis, const StateT& u) const {
    StateT f(components());
    flux(axis, u, f);
    return f;
  }
};

template <typename Scalar>
using ModelPtr = std::shared_ptr<const FluxModel<Scalar>>;

/// Throws StateError naming the cell when u is not admissible for the model.
template <typename Scalar>
void require_admissible(const FluxModel<Scalar>& model, const StateVector<Scalar>& u,
                        long cell = -1, long cell_y = -1) {
  if (!model.admissible(u)) {
    std::string where = cell >= 0 ? " at cell " + std::to_string(cell) : std::string();
    if (cell_y >= 0) where += "," + std::to_string(cell_y);
    throw StateError(model.name() + ": inadmissible state" + where, cell, cell_y);
  }
}

// u_t + a u_x + b u_y = 0
template <typename Scalar>
class LinearAdvection final : public FluxModel<Scalar> {
 public:
  using StateT = StateVector<Scalar>;

  explicit LinearAdvection(Scalar a, Scalar b = Scalar(0), int dims = 1)
      : a_(a), b_(b), dims_(dims) {}

  std::string name() const override { return "linear_advection"; }
  int components() const override { return 1; }
  int dimensions() const override { return dims_; }
  std::vector<std::string> component_names() const override { return {"u"}; }

  Scalar speed(Axis axis) const { return axis == Axis::x ? a_ : b_; }

  using FluxModel<Scalar>::flux;
  void flux(Axis axis, const StateT& u, StateT& out) const override {
    out.resize(1);
    out[0] = speed(axis) * u[0];
  }
  Scalar max_wave_speed(Axis axis, const StateT&) const override {
    using std::abs;
    return abs(speed(axis));
  }
  std::pair<Scalar, Scalar> wave_speed_range(Axis axis, const StateT&) const override {
    return {speed(axis), speed(axis)};
  }

 private:
  Scalar a_;
  Scalar b_;
  int dims_;
};

// u_t + (u^2/2)_x = 0
template <typename Scalar>
class Burgers final : public FluxModel<Scalar> {
 public:
  using StateT = StateVector<Scalar>;

  std::string name() const override { return "burgers"; }
  int components() const override { return 1; }
  int dimensions() const override { return 1; }
  std::vector<std::string> component_names() const override { return {"u"}; }

  using FluxModel<Scalar>::flux;
  void flux(Axis, const StateT& u, StateT& out) const override {
    out.resize(1);
    out[0] = Scalar(0.5) * u[0] * u[0];
  }
  Scalar max_wave_speed(Axis, const StateT& u) const override {
    using std::abs;
    return abs(u[0]);
  }
  std::pair<Scalar, Scalar> wave_speed_range(Axis, const StateT& u) const override {
    return {u[0], u[0]};
  }
};

/// Primitive Euler state. w is the y-velocity (ignored in 1D).
struct EulerState {
  double rho = 1.0;
  double v = 0.0;
  double w = 0.0;
  double p = 1.0;
  double gamma = kDefaultGamma;

  double energy() const { return p / (gamma - 1.0) + 0.5 * rho * (v * v + w * w); }
  double internal_energy() const { return p / ((gamma - 1.0) * rho); }
  double sound_speed() const { return std::sqrt(gamma * p / rho); }
  bool admissible() const {
    return std::isfinite(rho) && std::isfinite(p) && rho > 0.0 && p > 0.0;
  }
};

/// Ideal-gas Euler equations, conserved variables (rho, rho v, [rho w,] E).
template <typename Scalar>
class Euler final : public FluxModel<Scalar> {
 public:
  using StateT = StateVector<Scalar>;

  explicit Euler(int dims, Scalar gamma = Scalar(kDefaultGamma)) : dims_(dims), gamma_(gamma) {
    if (dims != 1 && dims != 2) throw InvalidArgument("Euler: dimension must be 1 or 2");
    if (!(gamma > Scalar(1))) throw InvalidArgument("Euler: gamma must exceed 1");
  }

  std::string name() const override { return dims_ == 1 ? "euler1d" : "euler2d"; }
  int components() const override { return dims_ + 2; }
  int dimensions() const override { return dims_; }
  std::vector<std::string> component_names() const override {
    if (dims_ == 1) return {"rho", "mom_x", "energy"};
    return {"rho", "mom_x", "mom_y", "energy"};
  }
  Scalar gamma() const { return gamma_; }
  int energy_index() const { return dims_ + 1; }

  Scalar velocity(Axis axis, const StateT& u) const {
    if (axis == Axis::y) return dims_ == 2 ? u[2] / u[0] : Scalar(0);
    return u[1] / u[0];
  }

  Scalar pressure(const StateT& u) const {
    const Scalar rho = u[0];
    const Scalar v = u[1] / rho;
    const Scalar w = dims_ == 2 ? u[2] / rho : Scalar(0);
    return (gamma_ - Scalar(1)) * (u[energy_index()] - Scalar(0.5) * rho * (v * v + w * w));
  }

  Scalar sound_speed(const StateT& u) const {
    using std::sqrt;
    return sqrt(gamma_ * pressure(u) / u[0]);
  }

  using FluxModel<Scalar>::flux;
  void flux(Axis axis, const StateT& u, StateT& out) const override {
    const Scalar rho = u[0];
    const Scalar v = u[1] / rho;
    const Scalar w = dims_ == 2 ? u[2] / rho : Scalar(0);
    const Scalar e = u[energy_index()];
    const Scalar p = (gamma_ - Scalar(1)) * (e - Scalar(0.5) * rho * (v * v + w * w));
    out.resize(components());
    if (dims_ == 1) {
      out[0] = u[1];
      out[1] = u[1] * v + p;
      out[2] = v * (e + p);
      return;
    }
    if (axis == Axis::x) {
      out[0] = u[1];
      out[1] = u[1] * v + p;
      out[2] = u[1] * w;
      out[3] = v * (e + p);
    } else {
      out[0] = u[2];
      out[1] = u[2] * v;
      out[2] = u[2] * w + p;
      out[3] = w * (e + p);
    }
  }

  Scalar max_wave_speed(Axis axis, const StateT& u) const override {
    using std::abs;
    return abs(velocity(axis, u)) + sound_speed(u);
  }

  std::pair<Scalar, Scalar> wave_speed_range(Axis axis, const StateT& u) const override {
    const Scalar vn = velocity(axis, u);
    const Scalar c = sound_speed(u);
    return {vn - c, vn + c};
  }

  bool admissible(const StateT& u) const override {
    if (!u.allFinite() || !(u[0] > Scalar(0))) return false;
    return pressure(u) > Scalar(0);
  }

  StateT conserved(const EulerState& s) const {
    StateT u(components());
    u[0] = Scalar(s.rho);
    u[1] = Scalar(s.rho * s.v);
    if (dims_ == 2) u[2] = Scalar(s.rho * s.w);
    const double w = dims_ == 2 ? s.w : 0.0;
    u[energy_index()] =
        Scalar(s.p / (double(gamma_) - 1.0) + 0.5 * s.rho * (s.v * s.v + w * w));
    return u;
  }

  EulerState primitive(const StateT& u) const {
    EulerState s;
    s.gamma = double(gamma_);
    s.rho = double(u[0]);
    s.v = double(u[1] / u[0]);
    s.w = dims_ == 2 ? double(u[2] / u[0]) : 0.0;
    s.p = double(pressure(u));
    return s;
  }

 private:
  int dims_;
  Scalar gamma_;
};

template <typename Scalar = double>
ModelPtr<Scalar> linear_advection(Scalar a, Scalar b = Scalar(0), int dims = 1) {
  return std::make_shared<LinearAdvection<Scalar>>(a, b, dims);
}

template <typename Scalar = double>
ModelPtr<Scalar> burgers() {
  return std::make_shared<Burgers<Scalar>>();
}

template <typename Scalar = double>
std::shared_ptr<const Euler<Scalar>> euler1d(Scalar gamma = Scalar(kDefaultGamma)) {
  return std::make_shared<Euler<Scalar>>(1, gamma);
}

template <typename Scalar = double>
std::shared_ptr<const Euler<Scalar>> euler2d(Scalar gamma = Scalar(kDefaultGamma)) {
  return std::make_shared<Euler<Scalar>>(2, gamma);
}

}  // namespace acat
