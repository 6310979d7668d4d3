#include "acat/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace acat {

ExactRiemannSolver::ExactRiemannSolver(const EulerState& left, const EulerState& right)
    : left_(left), right_(right), gamma_(left.gamma) {
  if (!left.admissible() || !right.admissible())
    throw StateError("exact_riemann_euler: data must have positive density and pressure");
  if (left.gamma != right.gamma)
    throw InvalidArgument("exact_riemann_euler: left and right gamma differ");
  c_left_ = left.sound_speed();
  c_right_ = right.sound_speed();

  const double g = gamma_;
  const double dv = right.v - left.v;
  if (2.0 * (c_left_ + c_right_) / (g - 1.0) <= dv) {
    star_.vacuum = true;
    return;
  }

  // Initial guess: two-rarefaction approximation, which is exact when both
  // waves are rarefactions and never undershoots into negative pressure.
  const double z = (g - 1.0) / (2.0 * g);
  double p = std::pow((c_left_ + c_right_ - 0.5 * (g - 1.0) * dv) /
                          (c_left_ / std::pow(left.p, z) + c_right_ / std::pow(right.p, z)),
                      1.0 / z);
  p = std::max(p, 1e-14 * std::min(left.p, right.p));

  int it = 0;
  for (;; ++it) {
    if (it >= kMaxIterations)
      throw NumericalFailure("exact_riemann_euler: Newton iteration did not converge");
    double dl = 0.0, dr = 0.0;
    const double f = side_function(p, left, dl) + side_function(p, right, dr) + dv;
    double next = p - f / (dl + dr);
    if (next <= 0.0) next = 0.5 * p;
    const double change = 2.0 * std::abs(next - p) / (next + p);
    p = next;
    if (change < kPressureTolerance) break;
  }

  star_.p = p;
  star_.iterations = it + 1;
  double dl = 0.0, dr = 0.0;
  star_.v = 0.5 * (left.v + right.v) +
            0.5 * (side_function(p, right, dr) - side_function(p, left, dl));
  const double gm = (g - 1.0) / (g + 1.0);
  auto star_density = [&](const EulerState& s, WaveKind& kind) {
    const double ratio = p / s.p;
    if (ratio > 1.0) {
      kind = WaveKind::shock;
      return s.rho * (ratio + gm) / (gm * ratio + 1.0);
    }
    kind = WaveKind::rarefaction;
    return s.rho * std::pow(ratio, 1.0 / g);
  };
  star_.rho_left = star_density(left, star_.left_wave);
  star_.rho_right = star_density(right, star_.right_wave);
}

double ExactRiemannSolver::side_function(double p, const EulerState& s, double& derivative) const {
  const double g = gamma_;
  const double c = std::sqrt(g * s.p / s.rho);
  if (p > s.p) {
    const double a = 2.0 / ((g + 1.0) * s.rho);
    const double b = (g - 1.0) / (g + 1.0) * s.p;
    const double root = std::sqrt(a / (p + b));
    derivative = root * (1.0 - 0.5 * (p - s.p) / (b + p));
    return (p - s.p) * root;
  }
  const double ratio = p / s.p;
  derivative = std::pow(ratio, -(g + 1.0) / (2.0 * g)) / (s.rho * c);
  return 2.0 * c / (g - 1.0) * (std::pow(ratio, (g - 1.0) / (2.0 * g)) - 1.0);
}

double ExactRiemannSolver::pressure_function(double p) const {
  double dl = 0.0, dr = 0.0;
  return side_function(p, left_, dl) + side_function(p, right_, dr) + (right_.v - left_.v);
}

double ExactRiemannSolver::left_shock_speed() const {
  const double g = gamma_;
  return left_.v - c_left_ * std::sqrt((g + 1.0) / (2.0 * g) * star_.p / left_.p +
                                       (g - 1.0) / (2.0 * g));
}

double ExactRiemannSolver::right_shock_speed() const {
  const double g = gamma_;
  return right_.v + c_right_ * std::sqrt((g + 1.0) / (2.0 * g) * star_.p / right_.p +
                                         (g - 1.0) / (2.0 * g));
}

double ExactRiemannSolver::left_head_speed() const { return left_.v - c_left_; }

double ExactRiemannSolver::left_tail_speed() const {
  return star_.v - c_left_ * std::pow(star_.p / left_.p, (gamma_ - 1.0) / (2.0 * gamma_));
}

double ExactRiemannSolver::right_head_speed() const { return right_.v + c_right_; }

double ExactRiemannSolver::right_tail_speed() const {
  return star_.v + c_right_ * std::pow(star_.p / right_.p, (gamma_ - 1.0) / (2.0 * gamma_));
}

EulerState ExactRiemannSolver::sample(double xi) const {
  if (star_.vacuum) return sample_vacuum(xi);
  const double g = gamma_;
  EulerState out;
  out.gamma = g;

  if (xi <= star_.v) {
    out.w = left_.w;
    if (star_.left_wave == WaveKind::shock) {
      if (xi <= left_shock_speed()) {
        out = left_;
      } else {
        out.rho = star_.rho_left;
        out.v = star_.v;
        out.p = star_.p;
      }
      return out;
    }
    if (xi <= left_head_speed()) return left_;
    if (xi > left_tail_speed()) {
      out.rho = star_.rho_left;
      out.v = star_.v;
      out.p = star_.p;
      return out;
    }
    const double base = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c_left_) * (left_.v - xi);
    out.rho = left_.rho * std::pow(base, 2.0 / (g - 1.0));
    out.v = 2.0 / (g + 1.0) * (c_left_ + 0.5 * (g - 1.0) * left_.v + xi);
    out.p = left_.p * std::pow(base, 2.0 * g / (g - 1.0));
    return out;
  }

  out.w = right_.w;
  if (star_.right_wave == WaveKind::shock) {
    if (xi >= right_shock_speed()) {
      out = right_;
    } else {
      out.rho = star_.rho_right;
      out.v = star_.v;
      out.p = star_.p;
    }
    return out;
  }
  if (xi >= right_head_speed()) return right_;
  if (xi < right_tail_speed()) {
    out.rho = star_.rho_right;
    out.v = star_.v;
    out.p = star_.p;
    return out;
  }
  const double base = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c_right_) * (right_.v - xi);
  out.rho = right_.rho * std::pow(base, 2.0 / (g - 1.0));
  out.v = 2.0 / (g + 1.0) * (-c_right_ + 0.5 * (g - 1.0) * right_.v + xi);
  out.p = right_.p * std::pow(base, 2.0 * g / (g - 1.0));
  return out;
}

EulerState ExactRiemannSolver::sample_vacuum(double xi) const {
  // Two rarefactions separated by vacuum.
  const double g = gamma_;
  EulerState out;
  out.gamma = g;
  const double left_front = left_.v + 2.0 * c_left_ / (g - 1.0);
  const double right_front = right_.v - 2.0 * c_right_ / (g - 1.0);
  if (xi <= left_head_speed()) return left_;
  if (xi >= right_head_speed()) return right_;
  if (xi < left_front) {
    const double base = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c_left_) * (left_.v - xi);
    out.rho = left_.rho * std::pow(base, 2.0 / (g - 1.0));
    out.v = 2.0 / (g + 1.0) * (c_left_ + 0.5 * (g - 1.0) * left_.v + xi);
    out.p = left_.p * std::pow(base, 2.0 * g / (g - 1.0));
    out.w = left_.w;
    return out;
  }
  if (xi > right_front) {
    const double base = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c_right_) * (right_.v - xi);
    out.rho = right_.rho * std::pow(base, 2.0 / (g - 1.0));
    out.v = 2.0 / (g + 1.0) * (-c_right_ + 0.5 * (g - 1.0) * right_.v + xi);
    out.p = right_.p * std::pow(base, 2.0 * g / (g - 1.0));
    out.w = right_.w;
    return out;
  }
  out.rho = 0.0;
  out.p = 0.0;
  out.v = xi;
  return out;
}

EulerState exact_riemann_euler(const EulerState& left, const EulerState& right,
                               double x_over_t) {
  return ExactRiemannSolver(left, right).sample(x_over_t);
}

}  // namespace acat
