#include "vemnsch/poly_decomp.hpp"

#include <stdexcept>

namespace vemnsch {

Eigen::VectorXd mono_integrals(const MonomialFrame& f, int n, const QuadRule& quad) {
  return mono_values(f, n, quad.pts).transpose() * quad.w;
}

Eigen::MatrixXd mass_matrix(const MonomialFrame& f, int n, const QuadRule& quad) {
  const Eigen::MatrixXd V = mono_values(f, n, quad.pts);
  Eigen::MatrixXd H = V.transpose() * quad.w.asDiagonal() * V;
  H = 0.5 * (H + H.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(H);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("mass_matrix: loss of positivity (degenerate cell?)");
  return H;
}

VectorPolyDecomposition vector_poly_decomposition(const MonomialFrame& f, int n) {
  if (n < 0) throw std::invalid_argument("vector_poly_decomposition: n >= 0");
  VectorPolyDecomposition d;
  d.n = n;
  d.n_grad = np(n + 1) - 1;
  d.n_rot = np(n - 1);
  const int nk = np(n);
  d.X = Eigen::MatrixXd::Zero(2 * nk, d.n_grad + d.n_rot);
  const auto& exps = mono_exponents(n + 1);
  for (int j = 1; j < np(n + 1); ++j) {  // gradients of non-constant monomials
    const MIndex b = exps[j];
    if (b.a1 > 0) d.X(mono_position({b.a1 - 1, b.a2}), j - 1) = b.a1 / f.h;
    if (b.a2 > 0) d.X(nk + mono_position({b.a1, b.a2 - 1}), j - 1) = b.a2 / f.h;
  }
  for (int a = 0; a < d.n_rot; ++a) {  // mperp m_a = (m_{a+(0,1)}, -m_{a+(1,0)})
    const MIndex al = mono_exponents(n - 1)[a];
    d.X(mono_position({al.a1, al.a2 + 1}), d.n_grad + a) = 1.0;
    d.X(nk + mono_position({al.a1 + 1, al.a2}), d.n_grad + a) = -1.0;
  }
  if (d.n_grad + d.n_rot != 2 * nk)
    throw std::logic_error("vector_poly_decomposition: dimension identity violated");
  return d;
}

}  // namespace vemnsch
