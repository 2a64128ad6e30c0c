#ifndef CTXUPB_CONTEXTUALITY_HPP
#define CTXUPB_CONTEXTUALITY_HPP

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctxupb/graphs.hpp"
#include "ctxupb/linalg.hpp"

namespace ctxupb {

struct StrengthReport {
  double value = 0.0;     ///< largest eigenvalue of the projector sum
  ComplexVector handle;   ///< unit eigenvector; largest-magnitude entry real positive
  std::string label;
};

/// Fix the global phase so the largest-magnitude entry (first on ties) is real positive.
inline ComplexVector canonical_phase(const ComplexVector& v) {
  if (v.size() == 0) return v;
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs + 1e-12) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs <= 0.0) return v;
  const Complex phase = std::conj(v(best)) / best_abs;
  ComplexVector out = v * phase;
  out(best) = Complex(std::abs(out(best)), 0.0);
  return out;
}

/// Contextual strength: max over unit handles of sum_i |<psi|v_i>|^2.
inline StrengthReport strength(std::span<const ComplexVector> vectors, std::string label = {}) {
  if (vectors.empty()) throw Error(ErrorKind::DimensionMismatch, "strength of an empty family");
  const auto dim = static_cast<Eigen::Index>(common_dimension(vectors));
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const auto& v : vectors) sum += projector(v);
  const EigenSystem eig = hermitian_eig(sum);
  StrengthReport report;
  report.value = eig.values(dim - 1);
  report.handle = canonical_phase(eig.vectors.col(dim - 1));
  report.label = std::move(label);
  return report;
}

// ---------------------------------------------------------------------------
// Closed-form Lovasz numbers

enum class ThetaFamily { Cycle, CycleComplement, Paley };

inline std::string to_string(ThetaFamily f) {
  switch (f) {
    case ThetaFamily::Cycle: return "cycle";
    case ThetaFamily::CycleComplement: return "cycle-complement";
    case ThetaFamily::Paley: return "paley";
  }
  return "unknown";
}

struct ThetaValue {
  ThetaFamily family;
  std::size_t parameter;
  double value;
};

inline ThetaValue theta_cycle(std::size_t n) {
  if (n < 3 || n % 2 == 0) throw Error(ErrorKind::BadOrder, "theta_cycle needs odd n >= 3, got " + std::to_string(n));
  const double c = std::cos(kPi / static_cast<double>(n));
  return {ThetaFamily::Cycle, n, static_cast<double>(n) * c / (1.0 + c)};
}

inline ThetaValue theta_cycle_complement(std::size_t n) {
  if (n < 5 || n % 2 == 0) {
    throw Error(ErrorKind::BadOrder, "theta_cycle_complement needs odd n >= 5, got " + std::to_string(n));
  }
  const double c = std::cos(kPi / static_cast<double>(n));
  return {ThetaFamily::CycleComplement, n, (1.0 + c) / c};
}

/// Paley graphs are self-complementary and vertex transitive, so
/// theta(P)^2 = theta(P) theta(complement P) = q.
inline ThetaValue theta_paley(std::size_t q) {
  if (!is_supported_paley_order(q)) {
    throw Error(ErrorKind::BadOrder, "unsupported Paley order " + std::to_string(q));
  }
  return {ThetaFamily::Paley, q, std::sqrt(static_cast<double>(q))};
}

/// Closed-form theta if g is an odd cycle, the complement of an odd cycle
/// (n >= 5), or a Paley graph (labeled match, or isomorphic within the search budget).
inline std::optional<ThetaValue> closed_form_theta(const Graph& g) {
  const std::size_t n = g.order();
  if (n % 2 == 1 && is_cycle(g)) return theta_cycle(n);
  if (n >= 5 && n % 2 == 1 && is_cycle(complement(g))) return theta_cycle_complement(n);
  if (is_supported_paley_order(n) && g.edge_count() == n * (n - 1) / 4) {
    const Graph p = paley(n);
    if (p == g) return theta_paley(n);
    if (n <= kEquivalenceBudget && find_isomorphism(p, g)) return theta_paley(n);
  }
  return std::nullopt;
}

enum class QcgStatus { QCG, NotQCG, Unknown };

inline std::string to_string(QcgStatus s) {
  switch (s) {
    case QcgStatus::QCG: return "QCG";
    case QcgStatus::NotQCG: return "NotQCG";
    case QcgStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

struct QcgVerdict {
  QcgStatus status = QcgStatus::Unknown;
  std::optional<ThetaValue> theta;       ///< closed form, when recognised
  std::optional<double> lower_bound;     ///< realised strength, when supplied
  std::size_t alpha = 0;
};

/// theta(G) > alpha(G)? Uses the closed form when g is recognised; otherwise
/// a realised strength above alpha still proves QCG.
inline QcgVerdict is_qcg(const Graph& g, std::optional<double> realized_strength = std::nullopt,
                         double tol = 1e-9) {
  QcgVerdict verdict;
  verdict.alpha = independence_number(g).size;
  verdict.theta = closed_form_theta(g);
  verdict.lower_bound = realized_strength;
  const double alpha = static_cast<double>(verdict.alpha);
  if (verdict.theta) {
    verdict.status = verdict.theta->value > alpha + tol ? QcgStatus::QCG : QcgStatus::NotQCG;
  } else if (realized_strength && *realized_strength > alpha + tol) {
    verdict.status = QcgStatus::QCG;
  } else {
    verdict.status = QcgStatus::Unknown;
  }
  return verdict;
}

struct Table2Row {
  std::size_t q;
  double theta;
  std::size_t alpha;
  double ratio;
};

inline const std::vector<std::size_t>& table2_orders() {
  static const std::vector<std::size_t> orders{5, 9, 13, 17, 25, 29};
  return orders;
}

/// Reference alpha(P_q) values for the table2 orders.
inline const std::vector<std::size_t>& table2_reference_alpha() {
  static const std::vector<std::size_t> alpha{2, 3, 3, 3, 5, 4};
  return alpha;
}

inline std::vector<Table2Row> table2() {
  std::vector<Table2Row> rows;
  for (std::size_t q : table2_orders()) {
    const double theta = theta_paley(q).value;
    const std::size_t alpha = independence_number(paley(q)).size;
    rows.push_back({q, theta, alpha, theta / static_cast<double>(alpha)});
  }
  return rows;
}

}  // namespace ctxupb

#endif  // CTXUPB_CONTEXTUALITY_HPP
