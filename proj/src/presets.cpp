#include "acat/harness.hpp"

#include <cmath>
#include <numbers>

namespace acat {

namespace {

constexpr double kPi = std::numbers::pi;

double sine(double x, double) { return 0.5 * std::sin(kPi * x); }
double sine2(double x, double) { return 0.5 * std::sin(2.0 * kPi * x); }

double square_wave(double x, double) {
  if (x >= 0.5 && x <= 1.0) return 1.0;
  if (x > 1.0 && x <= 1.5) return -1.0;
  return 0.0;
}

double corner_step(double x, double y) { return x + y <= 0.25 ? 1.0 : 0.0; }

EulerState prim(double rho, double v, double w, double p) {
  EulerState s;
  s.rho = rho;
  s.v = v;
  s.w = w;
  s.p = p;
  return s;
}

RunConfig base(const std::string& name, int P, int cells, double cfl, double t) {
  RunConfig c;
  c.preset = name;
  c.max_p = P;
  c.cells = cells;
  c.cfl = cfl;
  c.t_final = t;
  return c;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"transport_sine", "transport_sine2", "transport_square", "burgers_sine",
          "sod",            "einfeldt123",     "blast_right",      "transport2d_step",
          "euler2d_cfg4",   "euler2d_cfg6",    "euler2d_cfg8"};
}

RunConfig preset(const std::string& name) {
  if (name == "transport_sine") return base(name, 3, 160, 0.9, 4.0);
  if (name == "transport_sine2") return base(name, 3, 160, 0.9, 4.0);
  if (name == "transport_square") return base(name, 3, 160, 0.9, 2.0);
  if (name == "burgers_sine") return base(name, 3, 160, 0.9, 1.0);
  if (name == "sod") return base(name, 3, 200, 0.8, 0.25);
  if (name == "einfeldt123") return base(name, 3, 200, 0.8, 0.15);
  if (name == "blast_right") return base(name, 3, 450, 0.8, 0.012);
  if (name == "transport2d_step") return base(name, 2, 100, 0.5, 1.0);
  if (name == "euler2d_cfg4") return base(name, 2, 100, 0.475, 0.25);
  if (name == "euler2d_cfg6") return base(name, 2, 100, 0.475, 0.3);
  if (name == "euler2d_cfg8") return base(name, 2, 100, 0.475, 0.25);
  throw InvalidArgument("unknown preset '" + name + "'");
}

Problem problem(const std::string& name) {
  Problem p;
  p.name = name;
  if (name == "transport_sine" || name == "transport_sine2" || name == "transport_square") {
    p.model_name = "linear_advection";
    p.x0 = 0.0;
    p.x1 = 2.0;
    p.bc = Boundary::periodic;
    p.node_offset = 0.0;
    p.speed_x = 1.0;
    p.profile = name == "transport_sine" ? sine : name == "transport_sine2" ? sine2 : square_wave;
    p.reference = ReferenceKind::exact_transport;
    return p;
  }
  if (name == "burgers_sine") {
    p.model_name = "burgers";
    p.x0 = 0.0;
    p.x1 = 2.0;
    p.bc = Boundary::periodic;
    p.node_offset = 0.0;
    p.profile = sine;
    p.reference = ReferenceKind::fine_mesh;
    p.reference_cells = 1400;
    p.reference_scheme = "lo:lax_friedrichs";
    return p;
  }
  if (name == "sod" || name == "einfeldt123" || name == "blast_right") {
    p.model_name = "euler1d";
    p.x0 = 0.0;
    p.x1 = 1.0;
    p.bc = Boundary::outflow;
    p.node_offset = 0.5;
    if (name == "sod") {
      p.left = prim(1.0, 0.0, 0.0, 1.0);
      p.right = prim(0.125, 0.0, 0.0, 0.1);
      p.reference = ReferenceKind::exact_riemann;
    } else if (name == "einfeldt123") {
      p.left = prim(1.0, -2.0, 0.0, 0.4);
      p.right = prim(1.0, 2.0, 0.0, 0.4);
      p.reference = ReferenceKind::exact_riemann;
    } else {
      p.left = prim(1.0, 0.0, 0.0, 1000.0);
      p.right = prim(1.0, 0.0, 0.0, 0.01);
      p.reference = ReferenceKind::fine_mesh;
      p.reference_cells = 4 * 450;
      p.reference_scheme = "lo:rusanov";
    }
    return p;
  }
  if (name == "transport2d_step") {
    p.model_name = "linear_advection";
    p.dims = 2;
    p.x0 = p.y0 = 0.0;
    p.x1 = p.y1 = 2.0;
    p.bc = Boundary::outflow;
    p.node_offset = 0.5;
    p.speed_x = p.speed_y = 1.0;
    p.profile = corner_step;
    p.reference = ReferenceKind::exact_transport;
    return p;
  }
  if (name == "euler2d_cfg4" || name == "euler2d_cfg6" || name == "euler2d_cfg8") {
    p.model_name = "euler2d";
    p.dims = 2;
    p.x0 = p.y0 = 0.0;
    p.x1 = p.y1 = 1.0;
    p.bc = Boundary::outflow;
    p.node_offset = 0.5;
    // Quadrants 1..4 counter-clockwise from x > 1/2, y > 1/2.
    if (name == "euler2d_cfg4") {
      p.quadrants = {prim(1.1, 0.0, 0.0, 1.1), prim(0.5065, 0.8939, 0.0, 0.35),
                     prim(1.1, 0.8939, 0.8939, 1.1), prim(0.5065, 0.0, 0.8939, 0.35)};
    } else if (name == "euler2d_cfg6") {
      p.quadrants = {prim(1.0, 0.75, -0.5, 1.0), prim(2.0, 0.75, 0.5, 1.0),
                     prim(1.0, -0.75, 0.5, 1.0), prim(3.0, -0.75, -0.5, 1.0)};
    } else {
      p.quadrants = {prim(0.5197, 0.1, 0.1, 0.4), prim(1.0, -0.6259, 0.1, 1.0),
                     prim(0.8, 0.1, 0.1, 1.0), prim(1.0, 0.1, -0.6259, 1.0)};
    }
    return p;
  }
  throw InvalidArgument("unknown preset '" + name + "'");
}

ModelPtr<double> Problem::model(double gamma) const {
  if (model_name == "linear_advection") return linear_advection<double>(speed_x, speed_y, dims);
  if (model_name == "burgers") return burgers<double>();
  if (model_name == "euler1d") return euler1d<double>(gamma);
  if (model_name == "euler2d") return euler2d<double>(gamma);
  throw InvalidArgument("unknown model '" + model_name + "'");
}

State Problem::initial(const FluxModel<double>& model, double x, double y) const {
  if (profile) {
    State u(1);
    u[0] = profile(x, y);
    return u;
  }
  const auto* euler = dynamic_cast<const Euler<double>*>(&model);
  if (!euler) throw InvalidArgument("preset '" + name + "' needs an Euler model");
  EulerState s;
  if (dims == 1) {
    s = x < 0.5 ? *left : *right;
  } else {
    const bool east = x > 0.5;
    const bool north = y > 0.5;
    s = north ? (east ? quadrants[0] : quadrants[1]) : (east ? quadrants[3] : quadrants[2]);
  }
  s.gamma = double(euler->gamma());
  return euler->conserved(s);
}

}  // namespace acat
