#ifndef CTXUPB_FAMILIES_HPP
#define CTXUPB_FAMILIES_HPP

// Constructors for the vector families (one-parameter pentagon family,
// Pyramid, KCBS, GenPyramid, generalized KCBS, the cycle-complement LOOR and
// the quadratic-residue states) plus orthogonality-graph extraction.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ctxupb/contextuality.hpp"
#include "ctxupb/graphs.hpp"
#include "ctxupb/linalg.hpp"

namespace ctxupb {

using ParamValue = std::variant<std::int64_t, double>;

struct VectorFamily {
  std::string label;
  std::map<std::string, ParamValue> params;
  std::size_t dim = 0;
  std::vector<ComplexVector> vectors;
  /// Set by genpyramid_local when p is neither prime nor an odd perfect square.
  bool validity_warning = false;

  std::size_t size() const noexcept { return vectors.size(); }

  double max_norm_deviation() const {
    double dev = 0.0;
    for (const auto& v : vectors) dev = std::max(dev, std::abs(v.norm() - 1.0));
    return dev;
  }
};

namespace detail {

inline ComplexVector real_vector(std::initializer_list<double> entries) {
  ComplexVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double e : entries) v(i++) = e;
  return v;
}

inline void assert_unit(const VectorFamily& family) {
  if (family.max_norm_deviation() > 1e-9) {
    throw Error(ErrorKind::DegenerateParameter, family.label + " produced a non-unit vector");
  }
}

inline bool is_odd_square(std::size_t p) {
  const auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(p))));
  return p % 2 == 1 && r * r == p && r > 1;
}

}  // namespace detail

/// Five vectors in C^3 parameterised by theta, orthogonal on the pentagon
/// 0-2-4-1-3-0.
inline VectorFamily one_param_family(double theta, const Tolerances& tol = {}) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double norm = std::sqrt(c * c + s * s * c * c);
  if (std::abs(s) <= tol.rank_tol || norm <= tol.rank_tol) {
    throw Error(ErrorKind::DegenerateParameter, "one-parameter family collapses at theta = " + std::to_string(theta));
  }
  VectorFamily f;
  f.label = "one-param";
  f.params["theta"] = theta;
  f.dim = 3;
  f.vectors = {
      detail::real_vector({s * s, c, -s * c}),
      detail::real_vector({1.0, 0.0, 0.0}),
      detail::real_vector({c, 0.0, s}),
      detail::real_vector({0.0, s * c / norm, c / norm}),
      detail::real_vector({0.0, 1.0, 0.0}),
  };
  detail::assert_unit(f);
  return f;
}

/// theta at which the one-parameter family reproduces the Pyramid vectors.
inline double pyramid_theta() { return std::acos((std::sqrt(5.0) - 1.0) / 2.0); }
inline double tiles_theta() { return 3.0 * kPi / 4.0; }

inline VectorFamily pyramid() {
  const double scale = 2.0 / std::sqrt(5.0 + std::sqrt(5.0));
  const double height = 0.5 * std::sqrt(1.0 + std::sqrt(5.0));
  VectorFamily f;
  f.label = "pyramid";
  f.dim = 3;
  for (int j = 0; j < 5; ++j) {
    const double a = 2.0 * kPi * j / 5.0;
    f.vectors.push_back(scale * detail::real_vector({std::cos(a), std::sin(a), height}));
  }
  detail::assert_unit(f);
  return f;
}

inline VectorFamily kcbs() {
  const double c5 = std::cos(kPi / 5.0);
  const double inv = 1.0 / std::sqrt(1.0 + c5);
  const double z = std::sqrt(c5);
  const double a4 = 4.0 * kPi / 5.0;
  const double a2 = 2.0 * kPi / 5.0;
  VectorFamily f;
  f.label = "kcbs";
  f.dim = 3;
  f.vectors = {
      inv * detail::real_vector({1.0, 0.0, z}),
      inv * detail::real_vector({std::cos(a4), std::sin(a4), z}),
      inv * detail::real_vector({std::cos(a2), -std::sin(a2), z}),
      inv * detail::real_vector({std::cos(a2), std::sin(a2), z}),
      inv * detail::real_vector({std::cos(a4), -std::sin(a4), z}),
  };
  detail::assert_unit(f);
  return f;
}

/// GenPyramid local vectors: p = 2m+1 unit vectors on a cone in C^3,
/// v_j orthogonal to v_k exactly when j - k = +-t (mod p).
inline VectorFamily genpyramid_local(std::size_t m, std::size_t t) {
  if (m < 2) throw Error(ErrorKind::BadOrder, "genpyramid needs m >= 2");
  const std::size_t p = 2 * m + 1;
  // pi/2 <= 2 pi t / p <= pi
  if (4 * t < p || 2 * t > p) {
    throw Error(ErrorKind::BadT, "t = " + std::to_string(t) + " outside the window p/4 <= t <= p/2 for p = " +
                                     std::to_string(p));
  }
  const double ct = std::cos(2.0 * kPi * static_cast<double>(t) / static_cast<double>(p));
  const double norm = 1.0 / std::sqrt(1.0 + std::abs(ct));
  const double height = std::sqrt(std::max(0.0, -ct));
  VectorFamily f;
  f.label = "genpyramid";
  f.params["m"] = static_cast<std::int64_t>(m);
  f.params["t"] = static_cast<std::int64_t>(t);
  f.params["p"] = static_cast<std::int64_t>(p);
  f.dim = 3;
  f.validity_warning = !is_prime(p) && !detail::is_odd_square(p);
  for (std::size_t j = 0; j < p; ++j) {
    const double a = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(p);
    f.vectors.push_back(norm * detail::real_vector({std::cos(a), std::sin(a), height}));
  }
  detail::assert_unit(f);
  return f;
}

/// Generalized KCBS vectors: LOOR of the odd cycle C_n in C^3, u_j orthogonal to u_{j+-1}.
inline VectorFamily gen_kcbs(std::size_t n) {
  if (n < 5 || n % 2 == 0) throw Error(ErrorKind::BadOrder, "gen_kcbs needs odd n >= 5, got " + std::to_string(n));
  const double cos2phi = theta_cycle(n).value / static_cast<double>(n);
  const double cp = std::sqrt(cos2phi);
  const double sp = std::sqrt(1.0 - cos2phi);
  VectorFamily f;
  f.label = "genkcbs";
  f.params["n"] = static_cast<std::int64_t>(n);
  f.dim = 3;
  for (std::size_t j = 0; j < n; ++j) {
    const double angle = static_cast<double>(j) * kPi * static_cast<double>(n - 1) / static_cast<double>(n);
    f.vectors.push_back(detail::real_vector({cp, sp * std::cos(angle), sp * std::sin(angle)}));
  }
  detail::assert_unit(f);
  return f;
}

/// LOOR of the complement of C_n in C^(n-2). Coordinate 0 is the constant
/// sqrt(theta/n); coordinates 2m-1, 2m hold T cos R, T sin R for m = 1..(n-3)/2.
inline VectorFamily loor_cycle_complement(std::size_t n) {
  if (n < 5 || n % 2 == 0) {
    throw Error(ErrorKind::BadOrder, "loor_cycle_complement needs odd n >= 5, got " + std::to_string(n));
  }
  const double dn = static_cast<double>(n);
  const double c = std::cos(kPi / dn);
  const double first = std::sqrt(theta_cycle_complement(n).value / dn);
  VectorFamily f;
  f.label = "loor-complement";
  f.params["n"] = static_cast<std::int64_t>(n);
  f.dim = n - 2;
  for (std::size_t j = 0; j < n; ++j) {
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(n - 2));
    v(0) = first;
    for (std::size_t m = 1; m <= (n - 3) / 2; ++m) {
      const double sign = ((j * (m + 1)) % 2 == 0) ? 1.0 : -1.0;
      const double alt = ((m + 1) % 2 == 0) ? 1.0 : -1.0;
      const double t = sign * std::sqrt(2.0 * (c + alt * std::cos(static_cast<double>(m + 1) * kPi / dn)) / (dn * c));
      const double r = static_cast<double>(j * (m + 1)) * kPi / dn;
      v(static_cast<Eigen::Index>(2 * m - 1)) = t * std::cos(r);
      v(static_cast<Eigen::Index>(2 * m)) = t * std::sin(r);
    }
    f.vectors.push_back(v);
  }
  detail::assert_unit(f);
  return f;
}

/// Sorted basis labels {0} U {2q mod p : q in Q_p}; label k maps to coordinate index k.
inline std::vector<std::size_t> quadres_labels(std::size_t p) {
  std::vector<std::size_t> labels{0};
  for (std::size_t q : quadratic_residues(p)) labels.push_back((2 * q) % p);
  std::sort(labels.begin(), labels.end());
  return labels;
}

/// Quadratic-residue states |Q(a)>, a in Z_p, normalised. Q(a) and Q(b) are
/// orthogonal exactly when b - a is a non-residue.
inline VectorFamily quadres_local(std::size_t p) {
  if (!is_odd_prime(p) || p % 4 != 1) {
    throw Error(ErrorKind::BadPrime, "quadres needs a prime p = 1 mod 4, got " + std::to_string(p));
  }
  const auto residues = quadratic_residues(p);
  const auto labels = quadres_labels(p);
  const std::size_t d = (p + 1) / 2;
  const double dp = static_cast<double>(p);
  double gauss = 0.0;
  for (std::size_t q : residues) gauss += std::cos(2.0 * kPi * static_cast<double>(q) / dp);
  const double n_const = std::max(-gauss, 1.0 + gauss);
  auto coordinate = [&](std::size_t label) {
    return static_cast<Eigen::Index>(std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
  };
  VectorFamily f;
  f.label = "quadres";
  f.params["p"] = static_cast<std::int64_t>(p);
  f.dim = d;
  for (std::size_t a = 0; a < p; ++a) {
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d));
    v(coordinate(0)) = std::sqrt(n_const);
    for (std::size_t q : residues) {
      const double phase = 2.0 * kPi * static_cast<double>((q * a) % p) / dp;
      v(coordinate((2 * q) % p)) = std::polar(1.0, phase);
    }
    f.vectors.push_back(v / v.norm());
  }
  detail::assert_unit(f);
  return f;
}

inline Graph orthogonality_graph(std::span<const ComplexVector> vectors, const Tolerances& tol = {}) {
  (void)common_dimension(vectors);
  Graph g(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i + 1; j < vectors.size(); ++j)
      if (std::abs(vectors[i].dot(vectors[j])) <= tol.orth_tol) g.add_edge(i, j);
  return g;
}

inline Graph orthogonality_graph(const VectorFamily& family, const Tolerances& tol = {}) {
  return orthogonality_graph(family.vectors, tol);
}

inline Eigen::MatrixXd gram_moduli(std::span<const ComplexVector> vectors) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = std::abs(vectors[static_cast<std::size_t>(i)].dot(vectors[static_cast<std::size_t>(j)]));
  return g;
}

/// Simultaneous permutation perm with |<a_i|a_j>| = |<b_perm[i]|b_perm[j]>| within tol.
inline std::optional<std::vector<std::size_t>> gram_equivalence(std::span<const ComplexVector> a,
                                                                std::span<const ComplexVector> b,
                                                                double tol = 1e-9) {
  if (a.size() != b.size()) return std::nullopt;
  const std::size_t n = a.size();
  if (n > kEquivalenceBudget) throw Error(ErrorKind::TooLarge, "Gram equivalence supports at most 16 vectors");
  const Eigen::MatrixXd ga = gram_moduli(a);
  const Eigen::MatrixXd gb = gram_moduli(b);
  std::vector<std::size_t> perm(n, n);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      bool ok = true;
      for (std::size_t k = 0; k <= i && ok; ++k) {
        const std::size_t img = k == i ? c : perm[k];
        ok = std::abs(ga(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) -
                      gb(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(img))) <= tol;
      }
      if (!ok) continue;
      perm[i] = c;
      used[c] = 1;
      if (place(i + 1)) return true;
      used[c] = 0;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return perm;
}

struct LoorReport {
  bool graph_equal = false;      ///< labeled equality with the expected graph
  bool graph_match = false;      ///< equal or isomorphic
  double max_norm_deviation = 0.0;
  double strength = 0.0;
  double theta_gap = 0.0;        ///< |strength - expected theta|
  bool certificate = false;      ///< graph_match and theta_gap <= 1e-6
};

inline LoorReport verify_loor(const VectorFamily& family, const Graph& expected, double expected_theta,
                              const Tolerances& tol = {}) {
  LoorReport r;
  const Graph g = orthogonality_graph(family, tol);
  r.graph_equal = g == expected;
  r.graph_match = r.graph_equal;
  if (!r.graph_match && g.order() == expected.order() && g.order() <= kEquivalenceBudget) {
    r.graph_match = find_isomorphism(g, expected).has_value();
  }
  r.max_norm_deviation = family.max_norm_deviation();
  r.strength = strength(family.vectors, family.label).value;
  r.theta_gap = std::abs(r.strength - expected_theta);
  r.certificate = r.graph_match && r.theta_gap <= 1e-6;
  return r;
}

}  // namespace ctxupb

#endif  // CTXUPB_FAMILIES_HPP
