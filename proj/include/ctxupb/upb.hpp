#ifndef CTXUPB_UPB_HPP
#define CTXUPB_UPB_HPP

#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctxupb/families.hpp"
#include "ctxupb/graphs.hpp"
#include "ctxupb/linalg.hpp"

namespace ctxupb {

/// Ordered multipartite product states; states[j][m] is the party-m factor of state j.
struct ProductSet {
  std::vector<std::size_t> party_dims;
  std::vector<std::vector<ComplexVector>> states;

  std::size_t size() const noexcept { return states.size(); }
  std::size_t parties() const noexcept { return party_dims.size(); }
  std::size_t total_dim() const { return detail::product(party_dims); }

  /// Factors of all states for one party, in state order.
  std::vector<ComplexVector> factors(std::size_t party) const {
    std::vector<ComplexVector> out;
    out.reserve(states.size());
    for (const auto& s : states) out.push_back(s[party]);
    return out;
  }

  ComplexVector state_vector(std::size_t j) const { return kron_all(states[j]); }

  /// Shape checks plus unit-norm factors within 1e-9.
  void validate() const {
    if (party_dims.empty()) throw Error(ErrorKind::DimensionMismatch, "product set has no parties");
    for (std::size_t j = 0; j < states.size(); ++j) {
      if (states[j].size() != party_dims.size()) {
        throw Error(ErrorKind::DimensionMismatch, "state " + std::to_string(j) + " has the wrong party count");
      }
      for (std::size_t m = 0; m < party_dims.size(); ++m) {
        if (static_cast<std::size_t>(states[j][m].size()) != party_dims[m]) {
          throw Error(ErrorKind::DimensionMismatch,
                      "state " + std::to_string(j) + " party " + std::to_string(m) + " has the wrong dimension");
        }
        if (std::abs(states[j][m].norm() - 1.0) > 1e-9) {
          throw Error(ErrorKind::DimensionMismatch,
                      "state " + std::to_string(j) + " party " + std::to_string(m) + " is not unit norm");
        }
      }
    }
  }
};

/// State j takes factor v[(multipliers[l] * j) mod p] in party l.
inline ProductSet assemble_mapped(const VectorFamily& family, std::span<const std::size_t> multipliers) {
  if (family.vectors.empty() || multipliers.empty()) {
    throw Error(ErrorKind::EmptyFamily, "cannot assemble a product set from an empty family");
  }
  const std::size_t p = family.size();
  ProductSet ps;
  ps.party_dims.assign(multipliers.size(), family.dim);
  for (std::size_t j = 0; j < p; ++j) {
    std::vector<ComplexVector> state;
    for (std::size_t mult : multipliers) state.push_back(family.vectors[(mult * j) % p]);
    ps.states.push_back(std::move(state));
  }
  return ps;
}

/// Multipliers 1..parties.
inline std::vector<std::size_t> consecutive_multipliers(std::size_t parties) {
  std::vector<std::size_t> out(parties);
  std::iota(out.begin(), out.end(), std::size_t{1});
  return out;
}

inline ProductSet gencontextual_upb(std::size_t n) {
  const VectorFamily u = gen_kcbs(n);
  const VectorFamily v = loor_cycle_complement(n);
  ProductSet ps;
  ps.party_dims = {u.dim, v.dim};
  for (std::size_t j = 0; j < n; ++j) ps.states.push_back({u.vectors[j], v.vectors[j]});
  return ps;
}

/// |psi_i> = |Q(i)> (x) |Q(i x)> with x the smallest non-residue mod p.
inline ProductSet quadres_upb(std::size_t p) {
  const VectorFamily q = quadres_local(p);
  const std::size_t x = smallest_non_residue(p);
  ProductSet ps;
  ps.party_dims = {q.dim, q.dim};
  for (std::size_t i = 0; i < p; ++i) ps.states.push_back({q.vectors[i], q.vectors[(i * x) % p]});
  return ps;
}

struct PartyGraphs {
  std::vector<Graph> graphs;
  EdgeColoredGraph colored;
};

inline PartyGraphs party_graphs(const ProductSet& ps, const Tolerances& tol = {}) {
  PartyGraphs out;
  out.colored = EdgeColoredGraph(ps.size());
  for (std::size_t m = 0; m < ps.parties(); ++m) {
    const auto f = ps.factors(m);
    out.graphs.push_back(orthogonality_graph(f, tol));
    for (auto [u, v] : out.graphs.back().edges()) out.colored.add_party(u, v, m);
  }
  return out;
}

/// First pair (lexicographic) orthogonal in no party, if any.
inline std::optional<Edge> condition1_violation(const ProductSet& ps, const Tolerances& tol = {}) {
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      bool orthogonal = false;
      for (std::size_t m = 0; m < ps.parties() && !orthogonal; ++m) {
        orthogonal = std::abs(ps.states[i][m].dot(ps.states[j][m])) <= tol.orth_tol;
      }
      if (!orthogonal) return Edge{i, j};
    }
  }
  return std::nullopt;
}

inline void require_condition1(const ProductSet& ps, const Tolerances& tol) {
  if (auto bad = condition1_violation(ps, tol)) throw NotOrthogonalError(bad->first, bad->second);
}

enum class UpbStatus { CompleteBasis, UPB, Extendible, CertifiedUnextendible };

inline std::string to_string(UpbStatus s) {
  switch (s) {
    case UpbStatus::CompleteBasis: return "CompleteBasis";
    case UpbStatus::UPB: return "UPB";
    case UpbStatus::Extendible: return "Extendible";
    case UpbStatus::CertifiedUnextendible: return "CertifiedUnextendible";
  }
  return "Unknown";
}

struct UpbVerdict {
  UpbStatus status = UpbStatus::Extendible;
  std::optional<std::vector<ComplexVector>> witness;       ///< per-party factors, Extendible only
  std::optional<std::vector<std::size_t>> witness_assignment; ///< party chosen for each state
  std::optional<std::vector<std::size_t>> certificate;     ///< per-party max non-spanning sizes
  bool condition1 = false;
  EdgeColoredGraph colored;

  bool is_unextendible_basis() const {
    return status == UpbStatus::UPB || status == UpbStatus::CertifiedUnextendible;
  }
};

inline constexpr double kExactBudget = 1e7;

namespace detail {

/// Incremental orthonormal basis; tracks the rank of unit vectors pushed in order.
class SpanTracker {
 public:
  explicit SpanTracker(double rank_tol) : rank_tol_(rank_tol) {}

  std::size_t rank() const noexcept { return basis_.size(); }

  /// Returns true if the rank grew (and the direction was recorded).
  bool push(const ComplexVector& v) {
    ComplexVector w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis_) w -= b.dot(w) * b;
    const double n = w.norm();
    added_.push_back(n > rank_tol_ * std::max(v.norm(), 1e-300));
    if (added_.back()) basis_.push_back(w / n);
    return added_.back();
  }

  void pop() {
    if (added_.back()) basis_.pop_back();
    added_.pop_back();
  }

 private:
  double rank_tol_;
  std::vector<ComplexVector> basis_;
  std::vector<bool> added_;
};

}  // namespace detail

/// Condition-1 check followed by exhausting assignments of states to parties.
/// An assignment in which every party's assigned factors fail to span its
/// space yields a product witness; assignments are explored in
/// lexicographic order (state 0 most significant) with pruning on saturated
/// parties, so the first witness equals the first one full enumeration finds.
inline UpbVerdict verify_upb_exact(const ProductSet& ps, const Tolerances& tol = {},
                                   double budget = kExactBudget) {
  ps.validate();
  require_condition1(ps, tol);
  UpbVerdict verdict;
  verdict.condition1 = true;
  verdict.colored = party_graphs(ps, tol).colored;
  const std::size_t k = ps.size();
  const std::size_t parties = ps.parties();
  if (k == ps.total_dim()) {
    verdict.status = UpbStatus::CompleteBasis;
    return verdict;
  }
  const double assignments = std::pow(static_cast<double>(parties), static_cast<double>(k));
  if (assignments > budget) {
    throw Error(ErrorKind::BudgetExceeded, std::to_string(parties) + "^" + std::to_string(k) +
                                               " assignments exceed the exact budget; use the bound method");
  }

  std::vector<detail::SpanTracker> spans(parties, detail::SpanTracker(tol.rank_tol));
  std::vector<std::size_t> assignment(k, 0);
  std::vector<std::vector<ComplexVector>> assigned(parties);

  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (i == k) return true;
    for (std::size_t m = 0; m < parties; ++m) {
      spans[m].push(ps.states[i][m]);
      if (spans[m].rank() < ps.party_dims[m]) {
        assignment[i] = m;
        assigned[m].push_back(ps.states[i][m]);
        if (search(i + 1)) return true;
        assigned[m].pop_back();
      }
      spans[m].pop();
    }
    return false;
  };

  if (search(0)) {
    std::vector<ComplexVector> witness;
    for (std::size_t m = 0; m < parties; ++m) {
      const ComplexMatrix comp = orthogonal_complement(assigned[m], ps.party_dims[m], tol);
      witness.push_back(comp.col(0));
    }
    for (std::size_t j = 0; j < k; ++j) {
      Complex overlap = 1.0;
      for (std::size_t m = 0; m < parties; ++m) overlap *= witness[m].dot(ps.states[j][m]);
      if (std::abs(overlap) > tol.orth_tol) {
        throw std::logic_error("extension witness is not orthogonal to state " + std::to_string(j));
      }
    }
    verdict.status = UpbStatus::Extendible;
    verdict.witness = std::move(witness);
    verdict.witness_assignment = assignment;
  } else {
    verdict.status = UpbStatus::UPB;
  }
  return verdict;
}

/// Largest number of the given vectors lying in a common proper subspace of
/// C^dim. Any non-spanning subset lies in the span of at most dim-1 of its own
/// independent members, and (when the whole set spans) independent sets extend
/// to dim-1 members, so enumerating independent (dim-1)-subsets is exact.
inline std::size_t max_non_spanning(std::span<const ComplexVector> vectors, std::size_t dim,
                                    const Tolerances& tol = {}) {
  const std::size_t k = vectors.size();
  if (rank_of(vectors, tol) < dim) return k;
  const std::size_t r = dim - 1;
  std::size_t best = 0;
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto count_in_span = [&](const std::vector<std::size_t>& subset) -> std::optional<std::size_t> {
    detail::SpanTracker span(tol.rank_tol);
    for (std::size_t i : subset)
      if (!span.push(vectors[i])) return std::nullopt;
    std::size_t count = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (!span.push(vectors[j])) ++count;
      span.pop();
    }
    return count;
  };
  if (r == 0) {
    // span of the empty set is {0}
    for (const auto& v : vectors) best += v.norm() == 0.0 ? 1 : 0;
    return best;
  }
  while (true) {
    if (auto c = count_in_span(idx)) best = std::max(best, *c);
    std::size_t pos = r;
    while (pos > 0 && idx[pos - 1] == k - r + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t q = pos; q < r; ++q) idx[q] = idx[q - 1] + 1;
  }
  return best;
}

/// Pigeonhole certificate: if sum_m s_m < k, no assignment can leave every
/// party unsaturated.
inline UpbVerdict verify_upb_bound(const ProductSet& ps, const Tolerances& tol = {}) {
  ps.validate();
  require_condition1(ps, tol);
  UpbVerdict verdict;
  verdict.condition1 = true;
  verdict.colored = party_graphs(ps, tol).colored;
  std::vector<std::size_t> cert;
  std::size_t total = 0;
  for (std::size_t m = 0; m < ps.parties(); ++m) {
    const auto f = ps.factors(m);
    cert.push_back(max_non_spanning(f, ps.party_dims[m], tol));
    total += cert.back();
  }
  if (total >= ps.size()) {
    std::string list;
    for (std::size_t s : cert) list += (list.empty() ? "" : ",") + std::to_string(s);
    throw Error(ErrorKind::Inconclusive, "non-spanning sizes (" + list + ") sum to " + std::to_string(total) +
                                             " >= " + std::to_string(ps.size()));
  }
  verdict.certificate = std::move(cert);
  verdict.status = ps.size() == ps.total_dim() ? UpbStatus::CompleteBasis : UpbStatus::CertifiedUnextendible;
  return verdict;
}

enum class VerifyMethod { Exact, Bound, Auto };

/// Auto: try the cardinality bound, fall back to exact enumeration within budget.
inline UpbVerdict verify_upb(const ProductSet& ps, VerifyMethod method, const Tolerances& tol = {}) {
  switch (method) {
    case VerifyMethod::Exact: return verify_upb_exact(ps, tol);
    case VerifyMethod::Bound: return verify_upb_bound(ps, tol);
    case VerifyMethod::Auto: break;
  }
  try {
    return verify_upb_bound(ps, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Inconclusive) throw;
  }
  try {
    return verify_upb_exact(ps, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    throw Error(ErrorKind::Inconclusive, "bound fails and exact enumeration exceeds the budget");
  }
}

inline bool is_minimal(const ProductSet& ps) {
  std::size_t bound = 1;
  for (std::size_t d : ps.party_dims) bound += d - 1;
  return ps.size() == bound;
}

// ---------------------------------------------------------------------------
// Density matrices

struct DensityMatrix {
  ComplexMatrix matrix;
  std::vector<std::size_t> party_dims;

  /// Hermitian, unit trace within 1e-12, eigenvalues >= -psd_tol.
  void validate(const Tolerances& tol = {}) const {
    detail::check_square(matrix, detail::product(party_dims));
    if (!is_hermitian(matrix)) throw Error(ErrorKind::NonHermitian, "density matrix is not Hermitian");
    if (std::abs(matrix.trace().real() - 1.0) > 1e-12) {
      throw Error(ErrorKind::InvalidState, "density matrix trace differs from 1");
    }
    if (hermitian_eig(matrix).values(0) < -tol.psd_tol) {
      throw Error(ErrorKind::InvalidState, "density matrix has a negative eigenvalue");
    }
  }
};

inline DensityMatrix pure_density(const ComplexVector& psi, std::vector<std::size_t> dims) {
  return {projector(psi), std::move(dims)};
}

/// Normalised projector onto the orthogonal complement of the UPB.
inline DensityMatrix bound_entangled_state(const ProductSet& ps, const UpbVerdict& verdict) {
  if (!verdict.is_unextendible_basis()) {
    throw Error(ErrorKind::NotUpb, "verdict is " + to_string(verdict.status) + ", not a verified UPB");
  }
  const std::size_t total = ps.total_dim();
  const auto d = static_cast<Eigen::Index>(total);
  ComplexMatrix p = ComplexMatrix::Identity(d, d);
  for (std::size_t j = 0; j < ps.size(); ++j) p -= projector(ps.state_vector(j));
  p /= static_cast<double>(total - ps.size());
  p = 0.5 * (p + p.adjoint()).eval();
  return {p, ps.party_dims};
}

/// Verifies (auto method) first; throws NotUpb unless the set is a UPB.
inline DensityMatrix bound_entangled_state(const ProductSet& ps, const Tolerances& tol = {}) {
  return bound_entangled_state(ps, verify_upb(ps, VerifyMethod::Auto, tol));
}

inline double min_partial_transpose_eigenvalue(const DensityMatrix& rho, std::size_t party) {
  return hermitian_eig(partial_transpose(rho.matrix, rho.party_dims, party)).values(0);
}

inline bool is_ppt(const DensityMatrix& rho, std::size_t party, const Tolerances& tol = {}) {
  return min_partial_transpose_eigenvalue(rho, party) >= -tol.psd_tol;
}

inline std::optional<std::vector<std::size_t>> upb_graph_equivalent(const ProductSet& a, const ProductSet& b,
                                                                    const Tolerances& tol = {}) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::SizeMismatch,
                "state counts differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  return colored_equivalence(party_graphs(a, tol).colored, party_graphs(b, tol).colored);
}

}  // namespace ctxupb

#endif  // CTXUPB_UPB_HPP
