// Acceptance checks, one PASS/FAIL line per criterion.
//   ctxupb_acceptance [--criterion N]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "ctxupb.hpp"

using namespace ctxupb;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Report {
  bool ok = true;
  std::ostringstream notes;

  void check(bool cond, const std::string& what) {
    if (!cond) ok = false;
    notes << "  [" << (cond ? "ok" : "FAIL") << "] " << what << '\n';
  }
};

std::string fmt(double x, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, x);
  return buf;
}

ProductSet mapped(const VectorFamily& f, std::vector<std::size_t> m) { return assemble_mapped(f, m); }

ProductSet pyramid_set() { return mapped(pyramid(), {1, 2}); }
ProductSet tiles_set() { return mapped(one_param_family(tiles_theta()), {1, 2}); }
ProductSet genpyramid_set(std::size_t m, std::size_t t) {
  return mapped(genpyramid_local(m, t), consecutive_multipliers(m));
}

// ---------------------------------------------------------------------------

void criterion1(Report& r) {
  const auto t0 = Clock::now();
  const auto refs = table1_reference();
  const double reference[] = {2.23607, 2.2287, 2.2254, 2.1641, 2.0590};
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const double s = strength(one_param_family(refs[i].theta).vectors).value;
    const double again = strength(one_param_family(refs[i].theta).vectors).value;
    r.check(std::abs(s - reference[i]) <= 1e-3 && s == again,
            refs[i].label + ": strength " + fmt(s, 8) + " vs " + fmt(reference[i]));
  }
  const double dt = seconds_since(t0);
  r.check(dt < 1.0, "runtime " + fmt(dt, 3) + " s < 1 s");
}

void criterion2(Report& r) {
  const auto t0 = Clock::now();
  LeeOptions opts;
  opts.restarts = 64;
  opts.seed = 1;
  const auto rows = table1(opts);
  for (const auto& row : rows) {
    const bool one_sided = row.lee <= row.lee_ref + 1e-3;
    const bool close = row.lee_delta <= 5e-3;
    r.check(one_sided && close, row.label + ": lee " + fmt(row.lee, 7) + " vs " + fmt(row.lee_ref) +
                                    " (|delta| " + fmt(row.lee_delta, 3) + ", one-sided " +
                                    (one_sided ? "ok" : "exceeded") + ")");
  }
  bool ordered = true;
  for (std::size_t i = 1; i < rows.size(); ++i) ordered = ordered && rows[i - 1].lee > rows[i].lee;
  r.check(ordered, "strict ordering Pyramid > Tiles > pi/3 > pi/6 > pi/12");
  const double dt = seconds_since(t0);
  r.check(dt < 300.0, "runtime " + fmt(dt, 3) + " s < 300 s");
}

void criterion3(Report& r) {
  const auto t0 = Clock::now();
  const double theta[] = {std::sqrt(5.0), 3.0, std::sqrt(13.0), std::sqrt(17.0), 5.0, std::sqrt(29.0)};
  const std::size_t alpha[] = {2, 3, 3, 3, 5, 4};
  const auto rows = table2();
  r.check(rows.size() == 6, "six rows");
  for (std::size_t i = 0; i < rows.size() && i < 6; ++i) {
    r.check(std::abs(rows[i].theta - theta[i]) <= 1e-9 && rows[i].alpha == alpha[i],
            "P_" + std::to_string(rows[i].q) + ": theta " + fmt(rows[i].theta, 12) + ", alpha " +
                std::to_string(rows[i].alpha));
  }
  const double dt = seconds_since(t0);
  r.check(dt < 30.0, "runtime " + fmt(dt, 3) + " s < 30 s");
}

template <class F>
void timed(Report& r, const std::string& name, F&& body) {
  const auto t0 = Clock::now();
  std::string outcome;
  bool ok = false;
  try {
    std::tie(ok, outcome) = body();
  } catch (const Error& e) {
    outcome = std::string("threw ") + e.what();
  }
  const double dt = seconds_since(t0);
  r.check(ok && dt < 60.0, name + ": " + outcome + " (" + fmt(dt, 3) + " s)");
}

struct NamedSet {
  std::string name;
  std::function<ProductSet()> make;
};

std::vector<NamedSet> exact_suite() {
  return {
      {"Pyramid", pyramid_set},
      {"tiles-rep", tiles_set},
      {"quadres(5)", [] { return quadres_upb(5); }},
      {"quadres(13)", [] { return quadres_upb(13); }},
      {"gencontextual(5)", [] { return gencontextual_upb(5); }},
      {"gencontextual(7)", [] { return gencontextual_upb(7); }},
      {"gencontextual(9)", [] { return gencontextual_upb(9); }},
      {"genpyramid(m=2,t=2)", [] { return genpyramid_set(2, 2); }},
      {"genpyramid(m=4,t=3) p=9", [] { return genpyramid_set(4, 3); }},
  };
}

std::vector<NamedSet> bound_suite() {
  return {
      {"gencontextual(11)", [] { return gencontextual_upb(11); }},
      {"gencontextual(13)", [] { return gencontextual_upb(13); }},
      {"genpyramid(m=12,t=10) p=25", [] { return genpyramid_set(12, 10); }},
  };
}

std::string certificate_text(const UpbVerdict& v) {
  std::string s = "(";
  for (std::size_t i = 0; v.certificate && i < v.certificate->size(); ++i) {
    s += (i ? "," : "") + std::to_string((*v.certificate)[i]);
  }
  return s + ")";
}

void criterion4(Report& r) {
  for (const auto& s : exact_suite()) {
    timed(r, "exact " + s.name, [&] {
      const ProductSet ps = s.make();
      const UpbVerdict v = verify_upb_exact(ps);
      std::string msg = to_string(v.status);
      if (v.witness) {
        const ComplexVector w = kron_all(*v.witness);
        double worst = 0;
        for (std::size_t j = 0; j < ps.size(); ++j) worst = std::max(worst, std::abs(w.dot(ps.state_vector(j))));
        msg += ", product witness with max overlap " + fmt(worst, 3);
      }
      return std::pair{v.status == UpbStatus::UPB, msg};
    });
  }
  for (const auto& s : bound_suite()) {
    timed(r, "bound " + s.name, [&] {
      const UpbVerdict v = verify_upb_bound(s.make());
      return std::pair{v.status == UpbStatus::CertifiedUnextendible,
                       to_string(v.status) + " " + certificate_text(v)};
    });
  }
  timed(r, "genpyramid(m=7,t=5) p=15 rejected", [&] {
    try {
      verify_upb(genpyramid_set(7, 5), VerifyMethod::Auto);
      return std::pair{false, std::string("accepted")};
    } catch (const NotOrthogonalError& e) {
      return std::pair{true, std::string("NotOrthogonalSet, condition 1 fails for states ") +
                                 std::to_string(e.first()) + "," + std::to_string(e.second())};
    }
  });
}

void criterion5(Report& r) {
  std::vector<NamedSet> all = exact_suite();
  for (auto& s : bound_suite()) all.push_back(s);
  for (const auto& s : all) {
    const ProductSet ps = s.make();
    UpbVerdict v;
    try {
      v = verify_upb(ps, VerifyMethod::Auto);
    } catch (const Error& e) {
      r.notes << "  [skip] " << s.name << ": not a verified UPB (" << e.name() << ")\n";
      continue;
    }
    if (!v.is_unextendible_basis()) {
      r.notes << "  [skip] " << s.name << ": not a verified UPB (" << to_string(v.status) << ")\n";
      continue;
    }
    const DensityMatrix rho = bound_entangled_state(ps, v);
    const EigenSystem eig = hermitian_eig(rho.matrix);
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) rank += eig.values(i) > 1e-9;
    double min_pt = 0;
    for (std::size_t m = 0; m < ps.parties(); ++m) min_pt = std::min(min_pt, min_partial_transpose_eigenvalue(rho, m));
    double overlap = 0;
    for (std::size_t j = 0; j < ps.size(); ++j) {
      const ComplexVector psi = ps.state_vector(j);
      overlap = std::max(overlap, (rho.matrix * psi).norm());
    }
    const bool psd = eig.values(0) >= -1e-9;
    const bool trace1 = std::abs(rho.matrix.trace().real() - 1.0) <= 1e-12;
    r.check(psd && trace1 && rank == ps.total_dim() - ps.size() && min_pt >= -1e-9 && overlap <= 1e-12,
            s.name + ": rank " + std::to_string(rank) + "/" + std::to_string(ps.total_dim() - ps.size()) +
                ", min eig " + fmt(eig.values(0), 3) + ", min PT eig " + fmt(min_pt, 3) + ", overlap " +
                fmt(overlap, 3));
  }
}

void criterion6(Report& r) {
  const std::pair<std::string, std::function<ProductSet()>> partners[] = {
      {"tiles-rep", tiles_set},
      {"quadres(5)", [] { return quadres_upb(5); }},
      {"gencontextual(5)", [] { return gencontextual_upb(5); }},
  };
  const ProductSet base = pyramid_set();
  for (const auto& [name, make] : partners) {
    const ProductSet other = make();
    const auto perm = upb_graph_equivalent(base, other);
    bool valid = perm.has_value();
    if (perm) {
      const auto a = party_graphs(base).colored, b = party_graphs(other).colored;
      for (std::size_t u = 0; u < 5; ++u)
        for (std::size_t v = u + 1; v < 5; ++v) valid = valid && a.color(u, v) == b.color((*perm)[u], (*perm)[v]);
    }
    r.check(valid, "Pyramid ~ " + name);
  }
  std::vector<NamedSet> minimal{{"Pyramid", pyramid_set},
                                {"tiles-rep", tiles_set},
                                {"quadres(5)", [] { return quadres_upb(5); }}};
  for (std::size_t n : {5u, 7u, 9u, 11u, 13u}) {
    minimal.push_back({"gencontextual(" + std::to_string(n) + ")", [n] { return gencontextual_upb(n); }});
  }
  for (const auto& s : minimal) {
    const ProductSet ps = s.make();
    r.check(is_minimal(ps) && is_cycle(party_graphs(ps).graphs[0]), s.name + ": party-1 graph is a cycle");
  }
}

void criterion7(Report& r) {
  for (std::size_t n : {5u, 7u, 9u, 11u}) {
    const ThetaValue tc = theta_cycle(n), tcc = theta_cycle_complement(n);
    const LoorReport a = verify_loor(gen_kcbs(n), cycle(n), tc.value);
    const LoorReport b = verify_loor(loor_cycle_complement(n), complement(cycle(n)), tcc.value);
    r.check(a.certificate && std::abs(a.strength - tc.value) <= 1e-6,
            "gen_kcbs(" + std::to_string(n) + "): strength " + fmt(a.strength, 12) + " vs " + fmt(tc.value, 12));
    r.check(b.certificate && std::abs(b.strength - tcc.value) <= 1e-6,
            "loor_cycle_complement(" + std::to_string(n) + "): strength " + fmt(b.strength, 12) + " vs " +
                fmt(tcc.value, 12));
  }
  for (std::size_t p : {5u, 13u, 17u}) {
    const double s = strength(quadres_local(p).vectors).value;
    r.check(std::abs(s - std::sqrt(double(p))) <= 1e-9, "quadres_local(" + std::to_string(p) + "): " + fmt(s, 14));
  }
}

// ---------------------------------------------------------------------------
// Criterion 8: brute-force extendibility oracle, written without the library's
// span tracking or eigen-solvers.

using Vec = std::vector<Complex>;

Complex inner(const Vec& a, const Vec& b) {
  Complex s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(std::real(inner(a, a))); }

// modified Gram-Schmidt; returns an orthonormal basis of span(vs)
std::vector<Vec> orthonormalise(const std::vector<Vec>& vs, double tol = 1e-9) {
  std::vector<Vec> basis;
  for (Vec v : vs) {
    for (const auto& b : basis) {
      const Complex c = inner(b, v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
    }
    const double n = norm(v);
    if (n > tol) {
      for (auto& z : v) z /= n;
      basis.push_back(v);
    }
  }
  return basis;
}

// a unit vector orthogonal to all of vs, if the complement is nonempty
std::optional<Vec> complement_vector(const std::vector<Vec>& vs, std::size_t dim) {
  std::vector<Vec> all = orthonormalise(vs);
  const std::size_t r = all.size();
  for (std::size_t k = 0; k < dim; ++k) {
    Vec e(dim, 0.0);
    e[k] = 1.0;
    all.push_back(e);
  }
  const std::vector<Vec> full = orthonormalise(all);
  if (full.size() <= r) return std::nullopt;
  return full[r];
}

struct OracleSet {
  std::vector<std::size_t> dims;
  std::vector<std::vector<Vec>> states;  // states[j][party]
};

ProductSet to_product_set(const OracleSet& s) {
  ProductSet ps;
  ps.party_dims = s.dims;
  for (const auto& st : s.states) {
    std::vector<ComplexVector> fs;
    for (const auto& f : st) fs.push_back(Eigen::Map<const ComplexVector>(f.data(), static_cast<Eigen::Index>(f.size())));
    ps.states.push_back(fs);
  }
  return ps;
}

// all assignments of states to parties, no pruning
std::optional<std::vector<Vec>> brute_witness(const OracleSet& s) {
  const std::size_t k = s.states.size(), parties = s.dims.size();
  std::size_t total = 1;
  for (std::size_t j = 0; j < k; ++j) total *= parties;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<std::vector<Vec>> assigned(parties);
    std::size_t c = code;
    for (std::size_t j = 0; j < k; ++j, c /= parties) assigned[c % parties].push_back(s.states[j][c % parties]);
    std::vector<Vec> witness;
    for (std::size_t m = 0; m < parties; ++m) {
      auto w = complement_vector(assigned[m], s.dims[m]);
      if (!w) break;
      witness.push_back(*w);
    }
    if (witness.size() == parties) return witness;
  }
  return std::nullopt;
}

double product_overlap(const OracleSet& s, const std::vector<Vec>& w) {
  double total = 0;
  for (const auto& st : s.states) {
    Complex p = 1.0;
    for (std::size_t m = 0; m < w.size(); ++m) p *= inner(w[m], st[m]);
    total += std::norm(p);
  }
  return total;
}

// bipartite alternating minimisation of sum_j |<a b|psi_j>|^2 from random starts
double sampled_min_overlap(const OracleSet& s, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  auto random_unit = [&](std::size_t d) {
    Vec v(d);
    for (auto& z : v) {
      const double re = g(rng);
      const double im = g(rng);
      z = Complex(re, im);
    }
    const double n = norm(v);
    for (auto& z : v) z /= n;
    return v;
  };
  // smallest eigenvector of a small Hermitian matrix by shifted power iteration
  auto min_eigvec = [&](const std::vector<Vec>& rows, std::size_t d) {
    std::vector<Vec> m(d, Vec(d, 0.0));
    for (const auto& c : rows)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m[i][j] += c[i] * std::conj(c[j]);
    double shift = 0;
    for (std::size_t i = 0; i < d; ++i) shift += std::real(m[i][i]);
    Vec v = random_unit(d);
    for (int it = 0; it < 300; ++it) {
      Vec next(d, 0.0);
      for (std::size_t i = 0; i < d; ++i) {
        next[i] = shift * v[i];
        for (std::size_t j = 0; j < d; ++j) next[i] -= m[i][j] * v[j];
      }
      const double n = norm(next);
      if (n == 0) break;
      for (auto& z : next) z /= n;
      v = next;
    }
    return v;
  };
  double best = 1e300;
  for (int start = 0; start < 24; ++start) {
    std::vector<Vec> w{random_unit(s.dims[0]), random_unit(s.dims[1])};
    for (int sweep = 0; sweep < 40; ++sweep) {
      for (std::size_t m = 0; m < 2; ++m) {
        const std::size_t other = 1 - m;
        std::vector<Vec> rows;
        for (const auto& st : s.states) {
          const Complex c = inner(w[other], st[other]);
          Vec row(st[m].size());
          for (std::size_t i = 0; i < row.size(); ++i) row[i] = c * st[m][i];
          rows.push_back(row);
        }
        w[m] = min_eigvec(rows, s.dims[m]);
      }
    }
    best = std::min(best, product_overlap(s, w));
  }
  return best;
}

Vec as_vec(const ComplexVector& v) { return Vec(v.data(), v.data() + v.size()); }

// Greedy generator: each new state picks, per earlier state, the party on which
// it will be orthogonal, then draws each factor from the required complement.
// Some draws use real basis-aligned vectors so degenerate spans occur, and a
// share of 3x3 cases start from a rotated UPB (optionally with a state dropped).
std::optional<OracleSet> random_orthogonal_set(std::size_t d, std::size_t k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> die(0, 3);
  std::normal_distribution<double> g;
  OracleSet s;
  s.dims = {d, d};
  if (d == 3 && die(rng) == 0) {
    std::uniform_real_distribution<double> th(0.2, kPi - 0.2);
    double theta = th(rng);
    if (std::abs(theta - kPi / 2) < 0.1) theta += 0.3;
    const ProductSet ps = assemble_mapped(one_param_family(theta), std::vector<std::size_t>{1, 2});
    std::vector<ComplexMatrix> u;
    for (int m = 0; m < 2; ++m) {
      ComplexMatrix a(3, 3);
      for (auto& z : a.reshaped()) {
        const double re = g(rng);
        const double im = g(rng);
        z = Complex(re, im);
      }
      u.push_back(Eigen::HouseholderQR<ComplexMatrix>(a).householderQ());
    }
    const std::size_t keep = coin(rng) ? 5 : 4;
    for (std::size_t j = 0; j < keep; ++j) s.states.push_back({as_vec(u[0] * ps.states[j][0]), as_vec(u[1] * ps.states[j][1])});
    return s;
  }
  auto draw = [&](const std::vector<Vec>& avoid) -> std::optional<Vec> {
    const std::vector<Vec> basis = orthonormalise(avoid);
    if (basis.size() >= d) return std::nullopt;
    Vec v(d, 0.0);
    if (coin(rng)) {
      std::uniform_int_distribution<std::size_t> pick(0, d - 1);
      v[pick(rng)] = 1.0;
      if (coin(rng)) v[pick(rng)] += 1.0;
    } else {
      for (auto& z : v) {
        const double re = g(rng);
        const double im = g(rng);
        z = Complex(re, im);
      }
    }
    for (const auto& b : basis) {
      const Complex c = inner(b, v);
      for (std::size_t i = 0; i < d; ++i) v[i] -= c * b[i];
    }
    if (norm(v) < 1e-6) {
      auto fallback = complement_vector(avoid, d);
      if (!fallback) return std::nullopt;
      v = *fallback;
    }
    const double n = norm(v);
    for (auto& z : v) z /= n;
    return v;
  };
  for (std::size_t j = 0; j < k; ++j) {
    bool placed = false;
    for (int attempt = 0; attempt < 20 && !placed; ++attempt) {
      std::vector<std::vector<Vec>> avoid(2);
      for (const auto& st : s.states) {
        const int m = coin(rng);
        avoid[m].push_back(st[m]);
      }
      auto a = draw(avoid[0]);
      auto b = draw(avoid[1]);
      if (a && b) {
        s.states.push_back({*a, *b});
        placed = true;
      }
    }
    if (!placed) return std::nullopt;
  }
  return s;
}

void criterion8(Report& r) {
  std::mt19937_64 rng(20240601);
  std::size_t cases = 0, disagreements = 0, sampling_mismatch = 0, unextendible = 0, bad_witness = 0;
  while (cases < 200) {
    const std::size_t d = cases % 2 == 0 ? 2 : 3;
    std::uniform_int_distribution<std::size_t> ks(2, std::min<std::size_t>(6, d * d));
    const auto s = random_orthogonal_set(d, ks(rng), rng);
    if (!s) continue;
    const ProductSet ps = to_product_set(*s);
    if (condition1_violation(ps)) continue;
    ++cases;
    const UpbVerdict v = verify_upb_exact(ps);
    const bool lib_ext = v.status == UpbStatus::Extendible;
    const auto witness = brute_witness(*s);
    const bool oracle_ext = witness.has_value() && s->states.size() < d * d;
    if (lib_ext != oracle_ext) ++disagreements;
    if (lib_ext) {
      std::vector<Vec> w;
      for (const auto& f : *v.witness) w.push_back(as_vec(f));
      if (product_overlap(*s, w) > 1e-18) ++bad_witness;
    }
    if (!oracle_ext) ++unextendible;
    const double sampled = sampled_min_overlap(*s, rng);
    if (oracle_ext != (sampled < 1e-10)) ++sampling_mismatch;
  }
  r.check(disagreements == 0, "library vs assignment oracle: " + std::to_string(disagreements) +
                                  " disagreements over " + std::to_string(cases) + " sets (" +
                                  std::to_string(unextendible) + " unextendible)");
  r.check(bad_witness == 0, "library witnesses orthogonal to every state: " + std::to_string(bad_witness) + " bad");
  r.check(sampling_mismatch == 0,
          "dense sampling agrees with the oracle: " + std::to_string(sampling_mismatch) + " mismatches");
}

// ---------------------------------------------------------------------------

void criterion9(Report& r) {
  std::mt19937_64 rng(99);
  bool inv = true;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::bernoulli_distribution e(0.4);
    Graph g(4 + seed % 12);
    for (std::size_t u = 0; u < g.order(); ++u)
      for (std::size_t v = u + 1; v < g.order(); ++v)
        if (e(rng)) g.add_edge(u, v);
    inv = inv && complement(complement(g)) == g;
  }
  for (std::size_t q : table2_orders()) inv = inv && complement(complement(paley(q))) == paley(q);
  r.check(inv, "complement involution");

  r.check(gram_equivalence(kcbs().vectors, pyramid().vectors).has_value(), "Gram-moduli KCBS ~ Pyramid");

  double worst = 0;
  std::normal_distribution<double> g;
  for (const auto& f : {pyramid(), gen_kcbs(7), loor_cycle_complement(9), quadres_local(13)}) {
    ComplexMatrix a(f.dim, f.dim);
    for (auto& z : a.reshaped()) {
      const double re = g(rng);
      const double im = g(rng);
      z = Complex(re, im);
    }
    const ComplexMatrix u = Eigen::HouseholderQR<ComplexMatrix>(a).householderQ();
    std::vector<ComplexVector> rotated;
    for (const auto& v : f.vectors) rotated.push_back(u * v);
    worst = std::max(worst, std::abs(strength(rotated).value - strength(f.vectors).value));
  }
  r.check(worst <= 1e-9, "strength unitary invariance (max gap " + fmt(worst, 3) + ")");

  double pt = 0;
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix a(6, 6);
    for (auto& z : a.reshaped()) {
      const double re = g(rng);
      const double im = g(rng);
      z = Complex(re, im);
    }
    const ComplexMatrix rho = a * a.adjoint() / (a * a.adjoint()).trace();
    for (Party p : {Party::A, Party::B}) {
      pt = std::max(pt, max_abs_entry(partial_transpose(partial_transpose(rho, 2, 3, p), 2, 3, p) - rho));
    }
  }
  r.check(pt == 0.0, "partial-transpose involution");

  const DensityMatrix rho = bound_entangled_state(pyramid_set());
  double prev = 1e300;
  bool mono = true;
  std::string trail;
  for (std::size_t restarts : {1u, 2u, 4u, 8u}) {
    LeeOptions o;
    o.restarts = restarts;
    const double v = lee_upper_bound(rho, o).value;
    mono = mono && v <= prev;
    prev = v;
    trail += (trail.empty() ? "" : " >= ") + fmt(v, 8);
  }
  r.check(mono, "LEE non-increasing in restarts: " + trail);
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: ctxupb_acceptance [--criterion N]\n";
      return 2;
    }
  }
  const std::pair<const char*, void (*)(Report&)> criteria[] = {
      {"table 1 strength column", criterion1},
      {"table 1 LEE column", criterion2},
      {"table 2 Paley graphs", criterion3},
      {"UPB verdicts", criterion4},
      {"bound entangled states", criterion5},
      {"UPB graph equivalence", criterion6},
      {"LOOR certificates", criterion7},
      {"extendibility oracle", criterion8},
      {"property suites", criterion9},
  };
  if (only < 0 || only > 9) {
    std::cerr << "criterion must be 1..9\n";
    return 2;
  }
  bool all_ok = true;
  for (int i = 1; i <= 9; ++i) {
    if (only != 0 && i != only) continue;
    Report r;
    const auto t0 = Clock::now();
    try {
      criteria[i - 1].second(r);
    } catch (const std::exception& e) {
      r.check(false, std::string("unexpected exception: ") + e.what());
    }
    std::cout << "criterion " << i << ": " << (r.ok ? "PASS" : "FAIL") << "  " << criteria[i - 1].first << " ("
              << fmt(seconds_since(t0), 3) << " s)\n"
              << r.notes.str();
    all_ok = all_ok && r.ok;
  }
  return all_ok ? 0 : 1;
}
