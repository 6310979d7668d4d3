#pragma once

// Exact solution of the Riemann problem for the ideal-gas Euler equations
// (two nonlinear waves plus a contact; Newton iteration on the pressure
// function, Toro ch. 4). The tangential velocity w is advected by the contact.

#include "acat/models.hpp"

namespace acat {

enum class WaveKind { shock, rarefaction };

struct RiemannStar {
  double p = 0.0;
  double v = 0.0;
  double rho_left = 0.0;   // density between left wave and contact
  double rho_right = 0.0;  // density between contact and right wave
  WaveKind left_wave = WaveKind::rarefaction;
  WaveKind right_wave = WaveKind::rarefaction;
  int iterations = 0;
  bool vacuum = false;
};

class ExactRiemannSolver {
 public:
  static constexpr double kPressureTolerance = 1e-12;
  static constexpr int kMaxIterations = 100;

  ExactRiemannSolver(const EulerState& left, const EulerState& right);

  const RiemannStar& star() const { return star_; }
  /// Self-similar solution at xi = x/t.
  EulerState sample(double xi) const;

  /// f_L(p) + f_R(p) + (v_R - v_L); zero at the star pressure.
  double pressure_function(double p) const;

  // Wave speeds bounding each region (meaningful when not vacuum).
  double left_shock_speed() const;
  double right_shock_speed() const;
  double left_head_speed() const;
  double left_tail_speed() const;
  double right_head_speed() const;
  double right_tail_speed() const;

  const EulerState& left() const { return left_; }
  const EulerState& right() const { return right_; }

 private:
  double side_function(double p, const EulerState& s, double& derivative) const;
  EulerState sample_vacuum(double xi) const;

  EulerState left_;
  EulerState right_;
  double gamma_;
  double c_left_;
  double c_right_;
  RiemannStar star_;
};

EulerState exact_riemann_euler(const EulerState& left, const EulerState& right, double x_over_t);

}  // namespace acat
