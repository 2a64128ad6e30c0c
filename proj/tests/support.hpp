#ifndef CTXUPB_TESTS_SUPPORT_HPP
#define CTXUPB_TESTS_SUPPORT_HPP

#include <random>
#include <vector>

#include "ctxupb.hpp"

namespace testing_support {

using namespace ctxupb;

inline ComplexVector random_vector(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexVector v(static_cast<Eigen::Index>(dim));
  for (auto& z : v) {
    const double re = g(rng);
    const double im = g(rng);
    z = Complex(re, im);
  }
  return v;
}

inline ComplexVector random_unit(std::size_t dim, std::mt19937_64& rng) { return random_vector(dim, rng).normalized(); }

inline ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
  ComplexMatrix g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index c = 0; c < g.cols(); ++c) g.col(c) = random_vector(dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  return qr.householderQ();
}

inline ComplexMatrix random_density(std::size_t dim, std::mt19937_64& rng) {
  ComplexMatrix a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index c = 0; c < a.cols(); ++c) a.col(c) = random_vector(dim, rng);
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline ComplexVector max_entangled(std::size_t d) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i * d + i)) = 1.0 / std::sqrt(double(d));
  return v;
}

inline ProductSet pyramid_upb() {
  const std::size_t m[] = {1, 2};
  return assemble_mapped(pyramid(), m);
}

inline ProductSet tiles_upb() {
  const std::size_t m[] = {1, 2};
  return assemble_mapped(one_param_family(tiles_theta()), m);
}

inline ProductSet genpyramid_upb(std::size_t m, std::size_t t) {
  return assemble_mapped(genpyramid_local(m, t), consecutive_multipliers(m));
}

}  // namespace testing_support

#endif  // CTXUPB_TESTS_SUPPORT_HPP
