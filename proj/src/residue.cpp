#include "skron/residue.hpp"

#include <stdexcept>

namespace skron {
namespace {

template <class T, class F>
T contour_mean(ContourParams c, T zero, F&& f) {
  if (c.points < 4 || !(c.radius > 0.0))
    throw std::invalid_argument("contour: need radius > 0 and at least 4 points");
  T acc = zero;
  for (int k = 0; k < c.points; ++k) {
    const cplx w = c.radius * std::exp(kTwoPiI * (static_cast<double>(k) / c.points));
    acc += f(w);
  }
  return acc;
}

}  // namespace

cplx kronecker_residue(const EllipticContext& ctx, cplx h, ContourParams c) {
  const cplx sum = contour_mean(c, cplx{}, [&](cplx w) { return kronecker(ctx, h, w) * w; });
  return sum / static_cast<double>(c.points);
}

ScalarElement super_phi_residue(const EllipticContext& ctx, const AnsatzCoefficients& a,
                                cplx h, const ScalarElement& mu, cplx z2,
                                ContourParams c) {
  const auto p2 = SuperArgument::plain(z2, Generator::zeta2);
  ScalarElement sum = contour_mean(c, ScalarElement{}, [&](cplx w) {
    const auto p1 = SuperArgument::plain(z2 + w, Generator::zeta1);
    return gscale(w, super_phi(ctx, a, h, mu, p1, p2));
  });
  return gscale(cplx{1.0 / c.points}, sum);
}

MatrixElement super_R_residue(const EllipticContext& ctx, int n,
                              const AnsatzCoefficients& a, cplx h,
                              const ScalarElement& mu, cplx z2, ContourParams c) {
  const std::size_t dim = static_cast<std::size_t>(n * n);
  MatrixElement sum = contour_mean(c, MatrixElement(dim), [&](cplx w) {
    return gscale(w, super_R(ctx, n, a, h, mu, 1, 2, z2 + w, z2, 2));
  });
  return gscale(cplx{1.0 / c.points}, sum);
}

}  // namespace skron
