#ifndef CTXUPB_GRAPHS_HPP
#define CTXUPB_GRAPHS_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctxupb/error.hpp"

namespace ctxupb {

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected graph on vertices 0..n-1, stored as a dense adjacency matrix.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), adj_(n * n, 0) {}
  Graph(std::size_t n, std::span<const Edge> edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  std::size_t order() const noexcept { return n_; }

  void add_edge(std::size_t u, std::size_t v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw Error(ErrorKind::BadOrder, "self-loop at vertex " + std::to_string(u));
    adj_[u * n_ + v] = adj_[v * n_ + u] = 1;
  }

  void remove_edge(std::size_t u, std::size_t v) {
    check_vertex(u);
    check_vertex(v);
    adj_[u * n_ + v] = adj_[v * n_ + u] = 0;
  }

  bool has_edge(std::size_t u, std::size_t v) const { return adj_[u * n_ + v] != 0; }

  std::size_t degree(std::size_t u) const {
    std::size_t d = 0;
    for (std::size_t v = 0; v < n_; ++v) d += adj_[u * n_ + v];
    return d;
  }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v) m += adj_[u * n_ + v];
    return m;
  }

  /// Edges as (i, j) with i < j, sorted lexicographically.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v)
        if (adj_[u * n_ + v]) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(std::size_t u) const {
    if (u >= n_) throw Error(ErrorKind::BadOrder, "vertex " + std::to_string(u) + " out of range");
  }

  std::size_t n_ = 0;
  std::vector<std::uint8_t> adj_;
};

/// Bit set of party ids (party m is bit m).
using PartyMask = std::uint32_t;

/// Complete graph whose edges carry the set of parties realising each orthogonality.
/// An empty set means the pair is orthogonal in no party.
class EdgeColoredGraph {
 public:
  EdgeColoredGraph() = default;
  explicit EdgeColoredGraph(std::size_t n) : n_(n), color_(n * n, 0) {}

  std::size_t order() const noexcept { return n_; }

  void add_party(std::size_t u, std::size_t v, std::size_t party) {
    if (u >= n_ || v >= n_ || u == v) throw Error(ErrorKind::BadOrder, "invalid colored edge");
    if (party >= 32) throw Error(ErrorKind::TooLarge, "at most 32 parties are supported");
    color_[u * n_ + v] |= PartyMask{1} << party;
    color_[v * n_ + u] |= PartyMask{1} << party;
  }

  PartyMask color(std::size_t u, std::size_t v) const { return color_[u * n_ + v]; }

  std::vector<std::size_t> parties(std::size_t u, std::size_t v) const {
    std::vector<std::size_t> out;
    for (PartyMask m = color(u, v); m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    return out;
  }

  /// Uncoloured union over all parties.
  Graph support() const {
    Graph g(n_);
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v)
        if (color(u, v) != 0) g.add_edge(u, v);
    return g;
  }

  /// Edges orthogonal in the given party.
  Graph layer(std::size_t party) const {
    Graph g(n_);
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v)
        if (color(u, v) & (PartyMask{1} << party)) g.add_edge(u, v);
    return g;
  }

  static EdgeColoredGraph from_graph(const Graph& g, std::size_t party = 0) {
    EdgeColoredGraph c(g.order());
    for (auto [u, v] : g.edges()) c.add_party(u, v, party);
    return c;
  }

  friend bool operator==(const EdgeColoredGraph&, const EdgeColoredGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<PartyMask> color_;
};

inline Graph cycle(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::BadOrder, "cycle needs n >= 3, got " + std::to_string(n));
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph complete(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph complement(const Graph& g) {
  const std::size_t n = g.order();
  Graph out(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) out.add_edge(u, v);
  return out;
}

inline bool is_connected(const Graph& g) {
  const std::size_t n = g.order();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v = 0; v < n; ++v) {
      if (g.has_edge(u, v) && !seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

/// A 2-regular graph is a disjoint union of cycles, so 2-connectivity reduces
/// to connectivity.
inline bool is_cycle(const Graph& g) {
  if (g.order() < 3) return false;
  for (std::size_t u = 0; u < g.order(); ++u)
    if (g.degree(u) != 2) return false;
  return is_connected(g);
}

// ---------------------------------------------------------------------------
// Independence number

struct IndependentSet {
  std::size_t size = 0;
  std::vector<std::size_t> witness;  ///< lexicographically smallest maximum set
};

namespace detail {

using Mask = std::uint64_t;

/// Maximum clique in the graph given by `adj` restricted to `candidates`;
/// greedy colouring bound (Tomita-style).
class CliqueSearch {
 public:
  explicit CliqueSearch(std::vector<Mask> adj) : adj_(std::move(adj)) {}

  std::size_t max_clique(Mask candidates) {
    best_ = 0;
    expand(0, candidates);
    return best_;
  }

 private:
  void expand(std::size_t size, Mask p) {
    if (p == 0) {
      best_ = std::max(best_, size);
      return;
    }
    std::vector<std::size_t> order;
    std::vector<std::size_t> bound;
    colour(p, order, bound);
    for (std::size_t k = order.size(); k-- > 0;) {
      if (size + bound[k] <= best_) return;
      const std::size_t v = order[k];
      expand(size + 1, p & adj_[v]);
      p &= ~(Mask{1} << v);
    }
  }

  void colour(Mask p, std::vector<std::size_t>& order, std::vector<std::size_t>& bound) const {
    std::size_t colour_class = 0;
    while (p != 0) {
      ++colour_class;
      Mask q = p;
      while (q != 0) {
        const auto v = static_cast<std::size_t>(std::countr_zero(q));
        q &= ~(Mask{1} << v);
        q &= ~adj_[v];
        p &= ~(Mask{1} << v);
        order.push_back(v);
        bound.push_back(colour_class);
      }
    }
  }

  std::vector<Mask> adj_;
  std::size_t best_ = 0;
};

}  // namespace detail

inline constexpr std::size_t kIndependenceBudget = 64;

/// Exact independence number by branch and bound (maximum clique of the complement).
inline IndependentSet independence_number(const Graph& g) {
  const std::size_t n = g.order();
  if (n > kIndependenceBudget) {
    throw Error(ErrorKind::TooLarge, "independence search supports at most 64 vertices, got " + std::to_string(n));
  }
  std::vector<detail::Mask> comp(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && !g.has_edge(u, v)) comp[u] |= detail::Mask{1} << v;
  detail::CliqueSearch search(comp);
  const detail::Mask all = n == 64 ? ~detail::Mask{0} : (detail::Mask{1} << n) - 1;
  IndependentSet result;
  result.size = search.max_clique(all);

  // Lexicographically smallest witness: take each vertex in order if a
  // maximum set containing the current choice plus that vertex still exists.
  detail::Mask candidates = all;
  std::size_t needed = result.size;
  for (std::size_t v = 0; v < n && needed > 0; ++v) {
    const detail::Mask bit = detail::Mask{1} << v;
    if (!(candidates & bit)) continue;
    const detail::Mask later = candidates & comp[v] & ~((bit << 1) - 1);
    if (1 + search.max_clique(later) == needed) {
      result.witness.push_back(v);
      candidates = later;
      --needed;
    } else {
      candidates &= ~bit;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Number theory and finite fields

inline bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline bool is_odd_prime(std::size_t n) { return n > 2 && is_prime(n); }

inline std::vector<std::size_t> quadratic_residues(std::size_t p) {
  if (!is_odd_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not an odd prime");
  std::vector<char> hit(p, 0);
  for (std::size_t x = 1; x < p; ++x) hit[(x * x) % p] = 1;
  std::vector<std::size_t> out;
  for (std::size_t r = 1; r < p; ++r)
    if (hit[r]) out.push_back(r);
  return out;
}

inline std::size_t smallest_non_residue(std::size_t p) {
  const auto residues = quadratic_residues(p);
  for (std::size_t x = 2; x < p; ++x)
    if (!std::binary_search(residues.begin(), residues.end(), x)) return x;
  throw Error(ErrorKind::NotPrime, "no non-residue modulo " + std::to_string(p));
}

/// GF(p) or GF(p^2) = GF(p)[x]/(x^2 - s), s the smallest non-square mod p.
/// Element a + b*x has index a + b*p.
class GaloisField {
 public:
  using Element = std::size_t;

  static GaloisField of_order(std::size_t q) {
    for (std::size_t p = 3; p <= q; p += 2) {
      if (!is_prime(p)) continue;
      if (p == q) return GaloisField(p, 1);
      if (p * p == q) return GaloisField(p, 2);
      if (q % p == 0) break;
    }
    throw Error(ErrorKind::BadOrder, "field order " + std::to_string(q) + " is not p or p^2 for an odd prime p");
  }

  GaloisField(std::size_t p, std::size_t degree) : p_(p), degree_(degree) {
    if (!is_odd_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not an odd prime");
    if (degree != 1 && degree != 2) throw Error(ErrorKind::BadOrder, "only degree 1 or 2 extensions");
    if (degree == 2) s_ = smallest_non_residue(p);
  }

  std::size_t characteristic() const noexcept { return p_; }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return degree_ == 1 ? p_ : p_ * p_; }
  std::size_t non_square_constant() const noexcept { return s_; }

  Element zero() const noexcept { return 0; }
  Element one() const noexcept { return 1; }

  Element add(Element x, Element y) const {
    return make((lo(x) + lo(y)) % p_, (hi(x) + hi(y)) % p_);
  }
  Element neg(Element x) const { return make((p_ - lo(x)) % p_, (p_ - hi(x)) % p_); }
  Element sub(Element x, Element y) const { return add(x, neg(y)); }
  Element mul(Element x, Element y) const {
    const std::size_t a = lo(x), b = hi(x), c = lo(y), d = hi(y);
    return make((a * c + (b * d % p_) * s_) % p_, (a * d + b * c) % p_);
  }
  Element pow(Element x, std::size_t e) const {
    Element r = one();
    while (e > 0) {
      if (e & 1U) r = mul(r, x);
      x = mul(x, x);
      e >>= 1U;
    }
    return r;
  }
  /// Nonzero e is a square iff e^((q-1)/2) = 1.
  bool is_nonzero_square(Element x) const { return x != zero() && pow(x, (order() - 1) / 2) == one(); }

 private:
  std::size_t lo(Element x) const { return x % p_; }
  std::size_t hi(Element x) const { return x / p_; }
  Element make(std::size_t a, std::size_t b) const { return a + b * p_; }

  std::size_t p_;
  std::size_t degree_;
  std::size_t s_ = 0;
};

inline bool is_supported_paley_order(std::size_t q) {
  if (q % 4 != 1) return false;
  try {
    (void)GaloisField::of_order(q);
    return true;
  } catch (const Error&) {
    return false;
  }
}

inline Graph paley(std::size_t q) {
  if (q % 4 != 1) throw Error(ErrorKind::BadOrder, "Paley order must be 1 mod 4, got " + std::to_string(q));
  const GaloisField field = GaloisField::of_order(q);
  Graph g(q);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = a + 1; b < q; ++b)
      if (field.is_nonzero_square(field.sub(a, b))) g.add_edge(a, b);
  return g;
}

// ---------------------------------------------------------------------------
// Coloured-graph equivalence

inline constexpr std::size_t kEquivalenceBudget = 16;

/// Permutation `perm` (perm[u] = image of u) with a.color(u,v) == b.color(perm[u], perm[v])
/// for all pairs, or nullopt when none exists.
inline std::optional<std::vector<std::size_t>> colored_equivalence(const EdgeColoredGraph& a,
                                                                   const EdgeColoredGraph& b) {
  const std::size_t n = a.order();
  if (b.order() != n) {
    throw Error(ErrorKind::SizeMismatch,
                "vertex counts differ: " + std::to_string(n) + " vs " + std::to_string(b.order()));
  }
  if (n > kEquivalenceBudget) {
    throw Error(ErrorKind::TooLarge, "equivalence search supports at most 16 vertices, got " + std::to_string(n));
  }

  auto signature = [n](const EdgeColoredGraph& g, std::size_t u) {
    std::vector<PartyMask> s;
    for (std::size_t v = 0; v < n; ++v)
      if (v != u) s.push_back(g.color(u, v));
    std::sort(s.begin(), s.end());
    return s;
  };
  std::vector<std::vector<PartyMask>> sig_a(n), sig_b(n);
  for (std::size_t u = 0; u < n; ++u) {
    sig_a[u] = signature(a, u);
    sig_b[u] = signature(b, u);
  }
  {
    auto sa = sig_a, sb = sig_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }

  // Placement order: rarest signature first, then most coloured links to
  // already placed vertices.
  std::vector<std::size_t> order;
  std::vector<char> placed(n, 0);
  auto rarity = [&](std::size_t u) {
    return std::count(sig_a.begin(), sig_a.end(), sig_a[u]);
  };
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    std::pair<std::size_t, std::ptrdiff_t> best_key{0, 0};
    for (std::size_t u = 0; u < n; ++u) {
      if (placed[u]) continue;
      std::size_t links = 0;
      for (std::size_t w : order) links += a.color(u, w) != 0 ? 1 : 0;
      const std::pair<std::size_t, std::ptrdiff_t> key{links, -rarity(u)};
      if (best == n || key > best_key) {
        best = u;
        best_key = key;
      }
    }
    placed[best] = 1;
    order.push_back(best);
  }

  std::vector<std::size_t> perm(n, n);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> place = [&](std::size_t depth) -> bool {
    if (depth == n) return true;
    const std::size_t u = order[depth];
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || sig_b[c] != sig_a[u]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < depth && ok; ++k) {
        const std::size_t w = order[k];
        ok = a.color(u, w) == b.color(c, perm[w]);
      }
      if (!ok) continue;
      perm[u] = c;
      used[c] = 1;
      if (place(depth + 1)) return true;
      used[c] = 0;
      perm[u] = n;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return perm;
}

inline std::optional<std::vector<std::size_t>> find_isomorphism(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return std::nullopt;
  return colored_equivalence(EdgeColoredGraph::from_graph(a), EdgeColoredGraph::from_graph(b));
}

}  // namespace ctxupb

#endif  // CTXUPB_GRAPHS_HPP
