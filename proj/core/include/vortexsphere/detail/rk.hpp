#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "vortexsphere/errors.hpp"

namespace vortexsphere::detail {

using DerivFn = std::function<void(double t, const std::vector<double>& y,
                                   std::vector<double>& dydt)>;
using ProjectFn = std::function<void(std::vector<double>& y)>;

struct RkOptions {
  double tol = 1e-10;     // used as both absolute and relative tolerance
  double h_min = 1e-13;   // ToleranceError below this accepted-step size
  double h_init = 1e-4;
};

// Dormand-Prince 5(4) embedded pair with per-step projection.  Supports both
// time directions; step() never steps past t_limit.
class RkStepper {
 public:
  RkStepper(DerivFn deriv, ProjectFn project, RkOptions opt)
      : deriv_(std::move(deriv)), project_(std::move(project)), opt_(opt) {}

  void init(const std::vector<double>& y0, double t0, double direction) {
    y_ = y0;
    if (project_) project_(y_);
    t_ = t0;
    dir_ = direction >= 0.0 ? 1.0 : -1.0;
    h_ = opt_.h_init * dir_;
    const size_t n = y_.size();
    for (auto* k : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &ytmp_, &y5_, &y4_}) {
      k->assign(n, 0.0);
    }
  }

  double t() const { return t_; }
  const std::vector<double>& y() const { return y_; }

  // Advances by one accepted step, clamped so t never passes t_limit.
  // Returns false when t_limit has been reached.
  bool step(double t_limit) {
    if ((t_limit - t_) * dir_ <= 0.0) return false;
    for (;;) {
      double h = h_;
      if ((t_ + h - t_limit) * dir_ > 0.0) h = t_limit - t_;
      attempt(h);
      const double err = error_norm();
      if (!std::isfinite(err)) {
        h_ *= 0.25;
        if (std::abs(h_) < opt_.h_min) {
          throw ToleranceError("rk: step size underflow on non-finite error");
        }
        continue;
      }
      if (err <= 1.0) {
        t_ += h;
        y_ = y5_;
        if (project_) project_(y_);
        const double grow = 0.9 * std::pow(err > 1e-12 ? err : 1e-12, -0.2);
        h_ = h * std::fmin(5.0, std::fmax(0.2, grow));
        if (std::abs(h_) < opt_.h_min) h_ = opt_.h_min * dir_;
        return true;
      }
      h_ = h * std::fmax(0.2, 0.9 * std::pow(err, -0.2));
      if (std::abs(h_) < opt_.h_min) {
        throw ToleranceError("rk: step size underflow below 1e-13");
      }
    }
  }

 private:
  void attempt(double h) {
    const size_t n = y_.size();
    const auto axpy = [&](std::vector<double>& out, std::initializer_list<std::pair<double, const std::vector<double>*>> terms) {
      for (size_t i = 0; i < n; ++i) {
        double s = y_[i];
        for (const auto& [c, k] : terms) s += h * c * (*k)[i];
        out[i] = s;
      }
    };
    deriv_(t_, y_, k1_);
    axpy(ytmp_, {{1.0 / 5.0, &k1_}});
    deriv_(t_ + h / 5.0, ytmp_, k2_);
    axpy(ytmp_, {{3.0 / 40.0, &k1_}, {9.0 / 40.0, &k2_}});
    deriv_(t_ + 3.0 * h / 10.0, ytmp_, k3_);
    axpy(ytmp_, {{44.0 / 45.0, &k1_}, {-56.0 / 15.0, &k2_}, {32.0 / 9.0, &k3_}});
    deriv_(t_ + 4.0 * h / 5.0, ytmp_, k4_);
    axpy(ytmp_, {{19372.0 / 6561.0, &k1_}, {-25360.0 / 2187.0, &k2_},
                 {64448.0 / 6561.0, &k3_}, {-212.0 / 729.0, &k4_}});
    deriv_(t_ + 8.0 * h / 9.0, ytmp_, k5_);
    axpy(ytmp_, {{9017.0 / 3168.0, &k1_}, {-355.0 / 33.0, &k2_}, {46732.0 / 5247.0, &k3_},
                 {49.0 / 176.0, &k4_}, {-5103.0 / 18656.0, &k5_}});
    deriv_(t_ + h, ytmp_, k6_);
    axpy(y5_, {{35.0 / 384.0, &k1_}, {500.0 / 1113.0, &k3_}, {125.0 / 192.0, &k4_},
               {-2187.0 / 6784.0, &k5_}, {11.0 / 84.0, &k6_}});
    deriv_(t_ + h, y5_, k7_);
    for (size_t i = 0; i < n; ++i) {
      y4_[i] = y_[i] + h * (5179.0 / 57600.0 * k1_[i] + 7571.0 / 16695.0 * k3_[i] +
                            393.0 / 640.0 * k4_[i] - 92097.0 / 339200.0 * k5_[i] +
                            187.0 / 2100.0 * k6_[i] + 1.0 / 40.0 * k7_[i]);
    }
  }

  double error_norm() const {
    double sum = 0.0;
    const size_t n = y_.size();
    for (size_t i = 0; i < n; ++i) {
      const double scale = opt_.tol + opt_.tol * std::fmax(std::abs(y_[i]), std::abs(y5_[i]));
      const double e = (y5_[i] - y4_[i]) / scale;
      sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(n));
  }

  DerivFn deriv_;
  ProjectFn project_;
  RkOptions opt_;
  std::vector<double> y_, k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_, y5_, y4_;
  double t_ = 0.0;
  double h_ = 0.0;
  double dir_ = 1.0;
};

struct RkDense {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
};

// Integrates from t0 through every time in sample_times (monotone in the
// direction of travel), recording the state at each.
inline RkDense rk_integrate(const DerivFn& deriv, const ProjectFn& project,
                            const std::vector<double>& y0, double t0,
                            const std::vector<double>& sample_times, const RkOptions& opt) {
  RkDense out;
  RkStepper stepper(deriv, project, opt);
  const double dir = sample_times.empty() || sample_times.back() >= t0 ? 1.0 : -1.0;
  stepper.init(y0, t0, dir);
  for (double ts : sample_times) {
    while (stepper.step(ts)) {
    }
    out.times.push_back(stepper.t());
    out.states.push_back(stepper.y());
  }
  return out;
}

}  // namespace vortexsphere::detail
