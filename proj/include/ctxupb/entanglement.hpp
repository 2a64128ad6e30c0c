#ifndef CTXUPB_ENTANGLEMENT_HPP
#define CTXUPB_ENTANGLEMENT_HPP

// Linear entropy of entanglement through a convex-roof upper bound.
//
// A size-L decomposition of rho is stored as L unnormalised vectors x_i with
// sum_i |x_i><x_i| = rho; every such decomposition is x = U * (scaled
// eigenvectors) for an L x r isometry U. The optimiser applies two-element
// unitary mixings (Jacobi sweeps) that keep rho fixed and only lower
//   F(x) = sum_i ( |x_i|^2 - Tr[rho_A(x_i)^2] / |x_i|^2 ),
// which is sum_i w_i S_l(Tr_B |chi_i><chi_i|) with w_i = |x_i|^2.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ctxupb/contextuality.hpp"
#include "ctxupb/families.hpp"
#include "ctxupb/linalg.hpp"
#include "ctxupb/upb.hpp"

namespace ctxupb {

inline double linear_entropy(const DensityMatrix& rho) {
  return 1.0 - (rho.matrix * rho.matrix).trace().real();
}

namespace detail {

inline void require_bipartite(const std::vector<std::size_t>& dims) {
  if (dims.size() != 2) throw Error(ErrorKind::DimensionMismatch, "bipartite dimensions required");
}

/// Row-major reshape of x into a dA x dB matrix (party A index most significant).
inline ComplexMatrix reshape_state(const ComplexVector& x, std::size_t da, std::size_t db) {
  ComplexMatrix m(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(db));
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b)
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = x(static_cast<Eigen::Index>(a * db + b));
  return m;
}

/// |x|^2 - Tr[(X X^dag)^2] / |x|^2 for an unnormalised x.
inline double weighted_term(const ComplexVector& x, std::size_t da, std::size_t db) {
  const double n = x.squaredNorm();
  if (n <= std::numeric_limits<double>::min()) return 0.0;
  const ComplexMatrix m = reshape_state(x, da, db);
  const ComplexMatrix reduced = m * m.adjoint();
  return n - (reduced * reduced).trace().real() / n;
}

}  // namespace detail

inline double pure_lee_term(const ComplexVector& psi, std::size_t dim_a, std::size_t dim_b) {
  if (static_cast<std::size_t>(psi.size()) != dim_a * dim_b) {
    throw Error(ErrorKind::DimensionMismatch, "state length differs from dA * dB");
  }
  const double n = psi.squaredNorm();
  return detail::weighted_term(psi, dim_a, dim_b) / n;
}

struct Decomposition {
  std::vector<double> weights;
  std::vector<ComplexVector> states;

  std::size_t size() const noexcept { return weights.size(); }

  ComplexMatrix reconstruct() const {
    const auto d = states.empty() ? Eigen::Index{0} : states.front().size();
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (std::size_t i = 0; i < weights.size(); ++i) out += weights[i] * projector(states[i]);
    return out;
  }

  /// Drops vanishing elements and normalises the rest.
  static Decomposition from_unnormalised(const std::vector<ComplexVector>& xs) {
    Decomposition d;
    for (const auto& x : xs) {
      const double w = x.squaredNorm();
      if (w <= 1e-300) continue;
      d.weights.push_back(w);
      d.states.push_back(x / std::sqrt(w));
    }
    return d;
  }
};

inline constexpr double kReconstructionTol = 1e-8;

inline double decomposition_value(const DensityMatrix& rho, const Decomposition& d) {
  detail::require_bipartite(rho.party_dims);
  const double residual = max_abs_entry(d.reconstruct() - rho.matrix);
  if (!(residual <= kReconstructionTol)) {
    throw Error(ErrorKind::BadDecomposition, "reconstruction residual " + std::to_string(residual) + " exceeds 1e-8");
  }
  double value = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    value += d.weights[i] * pure_lee_term(d.states[i], rho.party_dims[0], rho.party_dims[1]);
  }
  return value;
}

/// Eigen-decomposition of rho as a Decomposition (eigenvalues above psd_tol).
inline Decomposition spectral_decomposition(const DensityMatrix& rho, const Tolerances& tol = {}) {
  const EigenSystem eig = hermitian_eig(rho.matrix);
  Decomposition d;
  for (Eigen::Index k = eig.values.size(); k-- > 0;) {
    if (eig.values(k) > tol.psd_tol) {
      d.weights.push_back(eig.values(k));
      d.states.push_back(eig.vectors.col(k));
    }
  }
  return d;
}

struct LeeOptions {
  std::size_t size = 0;          ///< decomposition size L; 0 means r^2
  std::size_t restarts = 64;     ///< restart 0 starts from the eigendecomposition
  std::uint64_t seed = 1;
  double sweep_tol = 1e-10;
  std::size_t max_sweeps = 500;
  double angle_tol = 1e-8;       ///< golden-section resolution
  std::size_t threads = 1;
};

struct LeeResult {
  double value = 0.0;
  Decomposition best;
  std::size_t restarts_used = 0;
  std::size_t best_restart = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  std::size_t size = 0;
  std::vector<double> restart_values;
};

namespace detail {

/// Objective of one rotated pair as a closed form in (angle, phase).
class PairObjective {
 public:
  PairObjective(const ComplexVector& xi, const ComplexVector& xj, std::size_t da, std::size_t db) {
    const ComplexMatrix x = reshape_state(xi, da, db);
    const ComplexMatrix y = reshape_state(xj, da, db);
    const ComplexMatrix p = x * x.adjoint();
    const ComplexMatrix r = y * y.adjoint();
    const ComplexMatrix k = x * y.adjoint();
    na_ = xi.squaredNorm();
    nb_ = xj.squaredNorm();
    overlap_ = xi.dot(xj);
    t_pp_ = (p * p).trace().real();
    t_rr_ = (r * r).trace().real();
    t_pr_ = (p * r).trace().real();
    t_kkd_ = (k * k.adjoint()).trace().real();
    t_pk_ = (p * k).trace();
    t_kr_ = (k * r).trace();
    t_kk_ = (k * k).trace();
  }

  double operator()(double angle, double phase) const {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const Complex rot = std::polar(1.0, -phase);
    const double t_pq = 2.0 * (rot * t_pk_).real();
    const double t_qr = 2.0 * (rot * t_kr_).real();
    const double t_qq = 2.0 * (rot * rot * t_kk_).real() + 2.0 * t_kkd_;
    const double cross = 2.0 * c * s * (std::conj(rot) * overlap_).real();
    const double c2 = c * c, s2 = s * s, cs = c * s;
    const double mid = c2 * s2 * (t_qq + 2.0 * t_pr_);
    const double ni = c2 * na_ + s2 * nb_ + cross;
    const double nj = c2 * nb_ + s2 * na_ - cross;
    const double ti = c2 * c2 * t_pp_ + 2.0 * c2 * cs * t_pq + mid + 2.0 * cs * s2 * t_qr + s2 * s2 * t_rr_;
    const double tj = c2 * c2 * t_rr_ - 2.0 * c2 * cs * t_qr + mid - 2.0 * cs * s2 * t_pq + s2 * s2 * t_pp_;
    return term(ni, ti) + term(nj, tj);
  }

 private:
  static double term(double n, double t) { return n > 1e-300 ? n - t / n : 0.0; }

  double na_, nb_;
  Complex overlap_;
  double t_pp_, t_rr_, t_pr_, t_kkd_;
  Complex t_pk_, t_kr_, t_kk_;
};

template <class F>
double golden_minimise(F&& f, double lo, double hi, double resolution) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > resolution) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

struct RestartOutcome {
  double value = 0.0;
  std::vector<ComplexVector> xs;
  bool converged = false;
};

inline RestartOutcome jacobi_descent(std::vector<ComplexVector> xs, std::size_t da, std::size_t db,
                                     const LeeOptions& opts) {
  constexpr int kAngleGrid = 12;
  constexpr int kPhaseGrid = 12;
  constexpr int kRefineRounds = 2;
  const std::size_t size = xs.size();
  auto total = [&] {
    double v = 0.0;
    for (const auto& x : xs) v += weighted_term(x, da, db);
    return v;
  };
  RestartOutcome out;
  double current = total();
  for (std::size_t sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const double before = current;
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = i + 1; j < size; ++j) {
        if (xs[i].squaredNorm() + xs[j].squaredNorm() <= 1e-300) continue;
        const PairObjective g(xs[i], xs[j], da, db);
        const double base = g(0.0, 0.0);
        double best_angle = 0.0, best_phase = 0.0, best = base;
        for (int a = 0; a < kAngleGrid; ++a) {
          for (int p = 0; p < kPhaseGrid; ++p) {
            const double angle = kPi * a / kAngleGrid;
            const double phase = 2.0 * kPi * p / kPhaseGrid;
            const double v = g(angle, phase);
            if (v < best) {
              best = v;
              best_angle = angle;
              best_phase = phase;
            }
          }
        }
        double angle_width = kPi / kAngleGrid;
        double phase_width = 2.0 * kPi / kPhaseGrid;
        for (int round = 0; round < kRefineRounds; ++round) {
          best_angle = golden_minimise([&](double t) { return g(t, best_phase); }, best_angle - angle_width,
                                       best_angle + angle_width, opts.angle_tol);
          best_phase = golden_minimise([&](double ph) { return g(best_angle, ph); }, best_phase - phase_width,
                                       best_phase + phase_width, opts.angle_tol);
          angle_width *= 0.25;
          phase_width *= 0.25;
        }
        best = g(best_angle, best_phase);
        if (best < base) {
          const double c = std::cos(best_angle);
          const double s = std::sin(best_angle);
          const Complex e = std::polar(1.0, best_phase);
          const ComplexVector xi = xs[i];
          xs[i] = c * xi + s * e * xs[j];
          xs[j] = -s * std::conj(e) * xi + c * xs[j];
        }
      }
    }
    current = total();
    if (before - current < opts.sweep_tol) {
      out.converged = true;
      break;
    }
  }
  out.value = current;
  out.xs = std::move(xs);
  return out;
}

inline std::mt19937_64 restart_stream(std::uint64_t seed, std::size_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffU), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart), static_cast<std::uint32_t>(0x5eedU)};
  return std::mt19937_64(seq);
}

/// Random L x r isometry from a complex Gaussian matrix via Householder QR.
inline ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index c = 0; c < g.cols(); ++c)
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  return qr.householderQ() * ComplexMatrix::Identity(g.rows(), g.cols());
}

}  // namespace detail

/// Convex-roof upper bound on the linear entropy of entanglement.
inline LeeResult lee_upper_bound(const DensityMatrix& rho, const LeeOptions& opts = {},
                                 const Tolerances& tol = {}) {
  detail::require_bipartite(rho.party_dims);
  const std::size_t da = rho.party_dims[0];
  const std::size_t db = rho.party_dims[1];
  const Decomposition spectral = spectral_decomposition(rho, tol);
  const std::size_t rank = spectral.size();
  if (rank == 0) throw Error(ErrorKind::BadSize, "density matrix has rank 0");
  const std::size_t size = opts.size == 0 ? rank * rank : opts.size;
  if (size < rank) {
    throw Error(ErrorKind::BadSize, "decomposition size " + std::to_string(size) + " below rank " + std::to_string(rank));
  }
  const std::size_t restarts = std::max<std::size_t>(opts.restarts, 1);

  // Rows of `scaled` are sqrt(lambda_k) |v_k>.
  std::vector<ComplexVector> scaled;
  for (std::size_t k = 0; k < rank; ++k) scaled.push_back(std::sqrt(spectral.weights[k]) * spectral.states[k]);
  const auto dim = static_cast<Eigen::Index>(da * db);

  auto start_point = [&](std::size_t restart) {
    std::vector<ComplexVector> xs(size, ComplexVector::Zero(dim));
    if (restart == 0) {
      for (std::size_t k = 0; k < rank; ++k) xs[k] = scaled[k];
      return xs;
    }
    auto rng = detail::restart_stream(opts.seed, restart);
    const ComplexMatrix u = detail::random_isometry(size, rank, rng);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t k = 0; k < rank; ++k)
        xs[i] += u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * scaled[k];
    return xs;
  };

  std::vector<detail::RestartOutcome> outcomes(restarts);
  auto run_range = [&](std::size_t first, std::size_t stride) {
    for (std::size_t r = first; r < restarts; r += stride) {
      outcomes[r] = detail::jacobi_descent(start_point(r), da, db, opts);
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(opts.threads, 1, restarts);
  if (workers == 1) {
    run_range(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run_range, w, workers);
  }

  LeeResult result;
  result.seed = opts.seed;
  result.size = size;
  result.restarts_used = restarts;
  std::size_t best = 0;
  for (std::size_t r = 0; r < restarts; ++r) {
    result.restart_values.push_back(outcomes[r].value);
    if (outcomes[r].value < outcomes[best].value) best = r;
  }
  result.best_restart = best;
  result.converged = outcomes[best].converged;
  result.best = Decomposition::from_unnormalised(outcomes[best].xs);
  result.value = decomposition_value(rho, result.best);
  return result;
}

// ---------------------------------------------------------------------------
// Strength versus entanglement for the one-parameter family

struct Table1Row {
  std::string label;
  std::string theta_expr;
  double theta = 0.0;
  double strength = 0.0;
  double strength_ref = 0.0;
  double lee = 0.0;
  double lee_ref = 0.0;
  double lee_delta = 0.0;  ///< |lee - lee_ref|
  bool converged = false;
};

struct Table1Reference {
  std::string label;
  std::string theta_expr;
  double theta;
  double strength;
  double lee;
};

inline std::vector<Table1Reference> table1_reference() {
  return {
      {"Pyramid", "acos((sqrt(5)-1)/2)", pyramid_theta(), std::sqrt(5.0), 0.07295},
      {"Tiles", "3*pi/4", tiles_theta(), 2.2287, 0.06519},
      {"pi/3", "pi/3", kPi / 3.0, 2.2254, 0.06335},
      {"pi/6", "pi/6", kPi / 6.0, 2.1641, 0.01278},
      {"pi/12", "pi/12", kPi / 12.0, 2.0590, 0.00029},
  };
}

/// Bound entangled state of the one-parameter UPB |a_j> (x) |a_{2j mod 5}>.
inline DensityMatrix one_param_bound_state(double theta, const Tolerances& tol = {}) {
  const std::size_t mult[] = {1, 2};
  const ProductSet ps = assemble_mapped(one_param_family(theta, tol), mult);
  return bound_entangled_state(ps, verify_upb_exact(ps, tol));
}

inline Table1Row table1_row(const Table1Reference& ref, const LeeOptions& opts = {}, const Tolerances& tol = {}) {
  Table1Row row;
  row.label = ref.label;
  row.theta_expr = ref.theta_expr;
  row.theta = ref.theta;
  row.strength = strength(one_param_family(ref.theta, tol).vectors).value;
  row.strength_ref = ref.strength;
  const LeeResult lee = lee_upper_bound(one_param_bound_state(ref.theta, tol), opts, tol);
  row.lee = lee.value;
  row.lee_ref = ref.lee;
  row.lee_delta = std::abs(lee.value - ref.lee);
  row.converged = lee.converged;
  return row;
}

inline std::vector<Table1Row> table1(const LeeOptions& opts = {}, const Tolerances& tol = {}) {
  std::vector<Table1Row> rows;
  for (const auto& ref : table1_reference()) rows.push_back(table1_row(ref, opts, tol));
  return rows;
}

}  // namespace ctxupb

#endif  // CTXUPB_ENTANGLEMENT_HPP
