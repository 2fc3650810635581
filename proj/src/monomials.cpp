#include "vemnsch/monomials.hpp"

#include <mutex>
#include <stdexcept>

namespace vemnsch {

const std::vector<MIndex>& mono_exponents(int n) {
  static std::mutex mtx;
  static std::vector<std::vector<MIndex>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  if (n < 0) throw std::invalid_argument("mono_exponents: negative degree");
  while (static_cast<int>(cache.size()) <= n) {
    const int s = static_cast<int>(cache.size());
    std::vector<MIndex> tab = s == 0 ? std::vector<MIndex>{} : cache[s - 1];
    for (int a2 = 0; a2 <= s; ++a2) tab.push_back({s - a2, a2});
    cache.push_back(std::move(tab));
  }
  return cache[n];
}

Eigen::MatrixXd mono_values(const MonomialFrame& f, int n,
                            const Eigen::Matrix<double, Eigen::Dynamic, 2>& pts) {
  const int nq = static_cast<int>(pts.rows());
  Eigen::MatrixXd V(nq, np(n));
  const Eigen::ArrayXd xi = (pts.col(0).array() - f.center.x()) / f.h;
  const Eigen::ArrayXd eta = (pts.col(1).array() - f.center.y()) / f.h;
  V.col(0).setOnes();
  // Degree block s is built from block s-1: multiply by xi, and the last
  // column of the block additionally by eta.
  for (int s = 1; s <= n; ++s) {
    const int prev = np(s - 2);  // first column of block s-1
    const int cur = np(s - 1);   // first column of block s
    for (int a2 = 0; a2 < s; ++a2)
      V.col(cur + a2) = V.col(prev + a2).array() * xi;
    V.col(cur + s) = V.col(prev + s - 1).array() * eta;
  }
  return V;
}

Eigen::MatrixXd mono_dx(const MonomialFrame& f, int n) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(np(n - 1), np(n));
  const auto& exps = mono_exponents(n);
  for (int j = 0; j < np(n); ++j) {
    const MIndex a = exps[j];
    if (a.a1 > 0) D(mono_position({a.a1 - 1, a.a2}), j) = a.a1 / f.h;
  }
  return D;
}

Eigen::MatrixXd mono_dy(const MonomialFrame& f, int n) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(np(n - 1), np(n));
  const auto& exps = mono_exponents(n);
  for (int j = 0; j < np(n); ++j) {
    const MIndex a = exps[j];
    if (a.a2 > 0) D(mono_position({a.a1, a.a2 - 1}), j) = a.a2 / f.h;
  }
  return D;
}

double mono_eval(const MonomialFrame& f, const MIndex& a, const Vec2& x) {
  const double xi = (x.x() - f.center.x()) / f.h;
  const double eta = (x.y() - f.center.y()) / f.h;
  double v = 1.0;
  for (int i = 0; i < a.a1; ++i) v *= xi;
  for (int i = 0; i < a.a2; ++i) v *= eta;
  return v;
}

Vec2 mono_grad(const MonomialFrame& f, const MIndex& a, const Vec2& x) {
  Vec2 g(0, 0);
  if (a.a1 > 0) g.x() = a.a1 / f.h * mono_eval(f, {a.a1 - 1, a.a2}, x);
  if (a.a2 > 0) g.y() = a.a2 / f.h * mono_eval(f, {a.a1, a.a2 - 1}, x);
  return g;
}

}  // namespace vemnsch
