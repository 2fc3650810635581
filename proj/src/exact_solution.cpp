#include "vemnsch/exact_solution.hpp"

#include <cmath>

namespace vemnsch {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Vec2 ManufacturedSolution::velocity(const Vec2& x, double t) const {
  const double E = std::exp(x.x()), S = std::sin(x.y()), C = std::cos(x.y());
  const double a = t + 1.0;
  return {a * E * (S + x.y() * C - x.x() * S),
          -a * E * (C + x.x() * C + x.y() * S)};
}

Eigen::Matrix2d ManufacturedSolution::velocity_grad(const Vec2& x, double t) const {
  const double E = std::exp(x.x()), S = std::sin(x.y()), C = std::cos(x.y());
  const double a = t + 1.0;
  Eigen::Matrix2d G;
  G(0, 0) = a * E * (x.y() * C - x.x() * S);
  G(0, 1) = a * E * (2.0 * C - x.y() * S - x.x() * C);
  G(1, 0) = -a * E * (2.0 * C + x.x() * C + x.y() * S);
  G(1, 1) = -G(0, 0);
  return G;
}

Vec2 ManufacturedSolution::velocity_dt(const Vec2& x, double t) const {
  return velocity(x, t) / (t + 1.0);
}

Vec2 ManufacturedSolution::velocity_lap(const Vec2& x, double t) const {
  const double E = std::exp(x.x()), S = std::sin(x.y()), C = std::cos(x.y());
  const double a = t + 1.0;
  return {-4.0 * a * E * S, -4.0 * a * E * C};
}

double ManufacturedSolution::pressure(const Vec2& x, double t) const {
  return (2.0 * t + 1.0) * std::sin(kPi * x.x()) * std::cos(4.0 * kPi * x.y());
}

Vec2 ManufacturedSolution::pressure_grad(const Vec2& x, double t) const {
  const double b = 2.0 * t + 1.0;
  return {b * kPi * std::cos(kPi * x.x()) * std::cos(4.0 * kPi * x.y()),
          -b * 4.0 * kPi * std::sin(kPi * x.x()) * std::sin(4.0 * kPi * x.y())};
}

double ManufacturedSolution::pressure_hat(const Vec2& x, double t) const {
  return pressure(x, t) + 0.5 * par_.lambda * phase_grad(x, t).squaredNorm();
}

double ManufacturedSolution::phase(const Vec2& x, double t) const {
  return (t + 1.0) * std::cos(2.0 * kPi * x.x()) * std::cos(2.0 * kPi * x.y());
}

Vec2 ManufacturedSolution::phase_grad(const Vec2& x, double t) const {
  const double a = t + 1.0, w = 2.0 * kPi;
  return {-a * w * std::sin(w * x.x()) * std::cos(w * x.y()),
          -a * w * std::cos(w * x.x()) * std::sin(w * x.y())};
}

Eigen::Matrix2d ManufacturedSolution::phase_hess(const Vec2& x, double t) const {
  const double a = t + 1.0, w = 2.0 * kPi;
  Eigen::Matrix2d H;
  H(0, 0) = -w * w * phase(x, t);
  H(1, 1) = H(0, 0);
  H(0, 1) = a * w * w * std::sin(w * x.x()) * std::sin(w * x.y());
  H(1, 0) = H(0, 1);
  return H;
}

double ManufacturedSolution::phase_lap(const Vec2& x, double t) const {
  return -8.0 * kPi * kPi * phase(x, t);
}

double ManufacturedSolution::phase_bilap(const Vec2& x, double t) const {
  return 64.0 * kPi * kPi * kPi * kPi * phase(x, t);
}

double ManufacturedSolution::phase_dt(const Vec2& x, double t) const {
  return phase(x, t) / (t + 1.0);
}

Vec2 ManufacturedSolution::forcing_flow(const Vec2& x, double t) const {
  const Vec2 ut = velocity_dt(x, t);
  const Vec2 lu = velocity_lap(x, t);
  const Vec2 u = velocity(x, t);
  const Eigen::Matrix2d gu = velocity_grad(x, t);
  const Vec2 gp = pressure_grad(x, t);
  const Vec2 gphi = phase_grad(x, t);
  const Eigen::Matrix2d hphi = phase_hess(x, t);
  const double lphi = phase_lap(x, t);
  // grad p_hat = grad p + lambda D^2(phi) grad(phi)
  const Vec2 gphat = gp + par_.lambda * (hphi * gphi);
  return ut - par_.nu * lu + gu * u + gphat + par_.lambda * lphi * gphi;
}

double ManufacturedSolution::forcing_phase(const Vec2& x, double t) const {
  const double pt = phase_dt(x, t);
  const Vec2 u = velocity(x, t);
  const Vec2 gphi = phase_grad(x, t);
  const double ph = phase(x, t);
  const double lphi = phase_lap(x, t);
  const double blphi = phase_bilap(x, t);
  // lap f(phi) = (3 phi^2 - 1) lap phi + 6 phi |grad phi|^2
  const double lapf =
      (3.0 * ph * ph - 1.0) * lphi + 6.0 * ph * gphi.squaredNorm();
  return pt + u.dot(gphi) +
         par_.gamma * (blphi - lapf / (par_.eps * par_.eps));
}

double bubble_phi0(const Vec2& x) {
  const double s = x.x() * x.x() / 0.01 + x.y() * x.y() / 0.0225 - 1.0;
  return std::tanh(s);
}

Vec2 bubble_grad_phi0(const Vec2& x) {
  const double s = x.x() * x.x() / 0.01 + x.y() * x.y() / 0.0225 - 1.0;
  const double th = std::tanh(s);
  const double sech2 = 1.0 - th * th;
  return {sech2 * 2.0 * x.x() / 0.01, sech2 * 2.0 * x.y() / 0.0225};
}

}  // namespace vemnsch
