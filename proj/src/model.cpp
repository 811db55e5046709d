#include "fracvar/model.hpp"

#include <cmath>

namespace fracvar {

Lagrangian quadratic_lagrangian() {
  Lagrangian lag;
  lag.structure = Lagrangian::Structure::quadratic;
  lag.value = [](StateView x, StateView v, double) {
    double sx = 0.0, sv = 0.0;
    for (double c : x) sx += c * c;
    for (double c : v) sv += c * c;
    return 0.5 * (sx + sv);
  };
  lag.grad_x = [](StateView x, StateView, double, std::span<double> out) {
    for (size_t i = 0; i < out.size(); ++i) out[i] = x[i];
  };
  lag.grad_v = [](StateView, StateView v, double, std::span<double> out) {
    for (size_t i = 0; i < out.size(); ++i) out[i] = v[i];
  };
  return lag;
}

Lagrangian free_particle_lagrangian() {
  Lagrangian lag;
  lag.structure = Lagrangian::Structure::quadratic;
  lag.value = [](StateView, StateView v, double) {
    double sv = 0.0;
    for (double c : v) sv += c * c;
    return 0.5 * sv;
  };
  lag.grad_x = [](StateView, StateView, double, std::span<double> out) {
    for (double& c : out) c = 0.0;
  };
  lag.grad_v = [](StateView, StateView v, double, std::span<double> out) {
    for (size_t i = 0; i < out.size(); ++i) out[i] = v[i];
  };
  return lag;
}

Lagrangian bilinear_lagrangian() {
  Lagrangian lag;
  lag.structure = Lagrangian::Structure::quadratic;
  lag.value = [](StateView x, StateView v, double) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * v[i];
    return s;
  };
  lag.grad_x = [](StateView, StateView v, double, std::span<double> out) {
    for (size_t i = 0; i < out.size(); ++i) out[i] = v[i];
  };
  lag.grad_v = [](StateView x, StateView, double, std::span<double> out) {
    for (size_t i = 0; i < out.size(); ++i) out[i] = x[i];
  };
  return lag;
}

Lagrangian lagrangian_with_fd_gradients(std::function<double(StateView, StateView, double)> value,
                                        Lagrangian::Structure structure) {
  Lagrangian lag;
  lag.structure = structure;
  lag.value = value;
  lag.grad_x = [value](StateView x, StateView v, double t, std::span<double> out) {
    std::vector<double> probe(x.begin(), x.end());
    for (size_t i = 0; i < out.size(); ++i) {
      const double step = 1e-6 * std::max(1.0, std::fabs(x[i]));
      const double saved = probe[i];
      probe[i] = saved + step;
      const double hi = value(probe, v, t);
      probe[i] = saved - step;
      const double lo = value(probe, v, t);
      probe[i] = saved;
      out[i] = (hi - lo) / (2.0 * step);
    }
  };
  lag.grad_v = [value](StateView x, StateView v, double t, std::span<double> out) {
    std::vector<double> probe(v.begin(), v.end());
    for (size_t i = 0; i < out.size(); ++i) {
      const double step = 1e-6 * std::max(1.0, std::fabs(v[i]));
      const double saved = probe[i];
      probe[i] = saved + step;
      const double hi = value(x, probe, t);
      probe[i] = saved - step;
      const double lo = value(x, probe, t);
      probe[i] = saved;
      out[i] = (hi - lo) / (2.0 * step);
    }
  };
  return lag;
}

SymmetryGroup rotation_group_2d() {
  SymmetryGroup g;
  g.dim = 2;
  g.phi = [](double s, StateView x, std::span<double> out) {
    const double c = std::cos(s), sn = std::sin(s);
    const double x0 = x[0], x1 = x[1];
    out[0] = c * x0 - sn * x1;
    out[1] = sn * x0 + c * x1;
  };
  g.generator = [](StateView x, std::span<double> out) {
    out[0] = -x[1];
    out[1] = x[0];
  };
  return g;
}

SymmetryGroup translation_group(std::vector<double> direction) {
  if (direction.empty()) throw std::invalid_argument("translation_group: empty direction");
  SymmetryGroup g;
  g.dim = static_cast<int>(direction.size());
  g.phi = [direction](double s, StateView x, std::span<double> out) {
    for (size_t i = 0; i < out.size(); ++i) out[i] = x[i] + s * direction[i];
  };
  g.generator = [direction](StateView, std::span<double> out) {
    for (size_t i = 0; i < out.size(); ++i) out[i] = direction[i];
  };
  return g;
}

Trajectory map_nodes(const SymmetryGroup& group, double s, const Trajectory& q) {
  if (group.dim != q.dim)
    throw std::invalid_argument("map_nodes: group dimension does not match trajectory");
  Trajectory out(q.grid, q.dim);
  for (int k = 0; k <= q.grid.n_steps; ++k) group.phi(s, q.node(k), out.node(k));
  return out;
}

InvarianceReport invariance_check(const Lagrangian& lagrangian, const SymmetryGroup& group,
                                  const Trajectory& q, FracOrder alpha,
                                  std::span<const double> s_samples, double tol) {
  if (s_samples.empty()) throw std::invalid_argument("invariance_check: no s samples");
  if (group.dim != q.dim)
    throw std::invalid_argument("invariance_check: group dimension does not match trajectory");

  const int n = q.grid.n_steps;
  const SampledSignal base_rate = delta_minus(q, alpha);
  std::vector<double> base(n + 1);
  for (int k = 1; k <= n; ++k)
    base[k] = lagrangian.value(q.node(k), base_rate.node(k), q.grid.node(k));

  InvarianceReport report;
  for (double s : s_samples) {
    const Trajectory moved = map_nodes(group, s, q);
    const SampledSignal moved_rate = delta_minus(moved, alpha);
    for (int k = 1; k <= n; ++k) {
      const double dev =
          std::fabs(lagrangian.value(moved.node(k), moved_rate.node(k), q.grid.node(k)) - base[k]);
      if (dev > report.max_abs_dev) {
        report.max_abs_dev = dev;
        report.worst_s = s;
        report.worst_k = k;
      }
    }
  }
  report.pass = report.max_abs_dev <= tol;
  return report;
}

}  // namespace fracvar
