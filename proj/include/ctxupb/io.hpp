#ifndef CTXUPB_IO_HPP
#define CTXUPB_IO_HPP

// JSON and CSV views of the domain types. Floats are rounded to 12
// significant digits before serialisation so output is byte-stable.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ctxupb/contextuality.hpp"
#include "ctxupb/entanglement.hpp"
#include "ctxupb/families.hpp"
#include "ctxupb/graphs.hpp"
#include "ctxupb/upb.hpp"

namespace ctxupb::io {

using Json = nlohmann::ordered_json;

inline double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

inline std::string format12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", round12(x));
  return buf;
}

inline Json to_json(const Complex& z) { return Json::array({round12(z.real()), round12(z.imag())}); }

inline Json to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

inline Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.order()}, {"edges", edges}};
}

inline Json to_json(const EdgeColoredGraph& g) {
  Json edges = Json::array();
  for (std::size_t u = 0; u < g.order(); ++u)
    for (std::size_t v = u + 1; v < g.order(); ++v)
      if (g.color(u, v) != 0) edges.push_back({{"u", u}, {"v", v}, {"parties", g.parties(u, v)}});
  return {{"n", g.order()}, {"edges", edges}};
}

inline Json to_json(const ParamValue& p) {
  return std::visit([](auto x) -> Json {
    if constexpr (std::is_same_v<decltype(x), double>) return round12(x);
    else return x;
  }, p);
}

inline Json to_json(const VectorFamily& f) {
  Json params = Json::object();
  for (const auto& [k, v] : f.params) params[k] = to_json(v);
  Json vectors = Json::array();
  for (const auto& v : f.vectors) vectors.push_back(to_json(v));
  return {{"label", f.label},
          {"params", params},
          {"dim", f.dim},
          {"validity_warning", f.validity_warning},
          {"vectors", vectors}};
}

inline Json to_json(const ProductSet& ps) {
  Json states = Json::array();
  for (const auto& s : ps.states) {
    Json factors = Json::array();
    for (const auto& f : s) factors.push_back(to_json(f));
    states.push_back(std::move(factors));
  }
  return {{"party_dims", ps.party_dims}, {"states", states}};
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline Json to_json(const UpbVerdict& v) {
  Json witness = nullptr;
  if (v.witness) {
    witness = Json::array();
    for (const auto& f : *v.witness) witness.push_back(to_json(f));
  }
  return {{"status", to_string(v.status)},
          {"unextendible", v.is_unextendible_basis()},
          {"condition1", v.condition1},
          {"certificate", optional_json(v.certificate)},
          {"witness", witness},
          {"witness_assignment", optional_json(v.witness_assignment)},
          {"colored_graph", to_json(v.colored)}};
}

inline Json to_json(const StrengthReport& s) {
  return {{"label", s.label}, {"strength", round12(s.value)}, {"handle", to_json(s.handle)}};
}

inline Json to_json(const ThetaValue& t) {
  return {{"family", to_string(t.family)}, {"parameter", t.parameter}, {"theta", round12(t.value)}};
}

inline Json to_json(const IndependentSet& s) { return {{"alpha", s.size}, {"witness", s.witness}}; }

inline Json to_json(const QcgVerdict& q) {
  return {{"status", to_string(q.status)},
          {"alpha", q.alpha},
          {"theta", q.theta ? to_json(*q.theta) : Json(nullptr)},
          {"lower_bound", q.lower_bound ? Json(round12(*q.lower_bound)) : Json(nullptr)}};
}

inline Json to_json(const LoorReport& r) {
  return {{"graph_equal", r.graph_equal},
          {"graph_match", r.graph_match},
          {"max_norm_deviation", round12(r.max_norm_deviation)},
          {"strength", round12(r.strength)},
          {"theta_gap", round12(r.theta_gap)},
          {"certificate", r.certificate}};
}

inline Json to_json(const DensityMatrix& rho) {
  return {{"party_dims", rho.party_dims}, {"matrix", to_json(rho.matrix)}};
}

inline Json to_json(const Decomposition& d) {
  Json weights = Json::array();
  for (double w : d.weights) weights.push_back(round12(w));
  Json states = Json::array();
  for (const auto& s : d.states) states.push_back(to_json(s));
  return {{"weights", weights}, {"states", states}};
}

inline Json to_json(const LeeResult& r, bool include_decomposition = false) {
  Json out = {{"lee_upper_bound", round12(r.value)},
              {"converged", r.converged},
              {"restarts", r.restarts_used},
              {"best_restart", r.best_restart},
              {"L", r.size},
              {"seed", r.seed}};
  if (include_decomposition) out["decomposition"] = to_json(r.best);
  return out;
}

inline Json to_json(const Table1Row& r) {
  return {{"label", r.label},
          {"theta_expr", r.theta_expr},
          {"theta", round12(r.theta)},
          {"strength", round12(r.strength)},
          {"strength_ref", round12(r.strength_ref)},
          {"lee", round12(r.lee)},
          {"lee_ref", round12(r.lee_ref)},
          {"lee_delta", round12(r.lee_delta)},
          {"converged", r.converged}};
}

inline Json to_json(const Table2Row& r) {
  return {{"q", r.q}, {"theta", round12(r.theta)}, {"alpha", r.alpha}, {"ratio", round12(r.ratio)}};
}

inline Json error_json(const Error& e) {
  Json err = {{"name", std::string(e.name())}, {"message", e.detail()}};
  if (const auto* no = dynamic_cast<const NotOrthogonalError*>(&e)) {
    err["condition"] = 1;
    err["pair"] = {no->first(), no->second()};
  }
  return {{"error", err}};
}

// ---------------------------------------------------------------------------
// Readers

namespace detail {

[[noreturn]] inline void bad_input(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

inline ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array()) bad_input("vector must be an array of [re, im] pairs");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& z = j[i];
    if (z.is_number()) {
      v(static_cast<Eigen::Index>(i)) = z.get<double>();
    } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
      v(static_cast<Eigen::Index>(i)) = Complex(z[0].get<double>(), z[1].get<double>());
    } else {
      bad_input("vector entry must be a number or a [re, im] pair");
    }
  }
  return v;
}

}  // namespace detail

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    detail::bad_input(std::string("invalid JSON: ") + e.what());
  }
}

inline VectorFamily family_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vectors")) detail::bad_input("VectorFamily needs a \"vectors\" array");
  VectorFamily f;
  f.label = j.value("label", std::string("file"));
  if (j.contains("params") && j["params"].is_object()) {
    for (const auto& [k, v] : j["params"].items()) {
      if (v.is_number_integer()) f.params[k] = v.get<std::int64_t>();
      else if (v.is_number()) f.params[k] = v.get<double>();
    }
  }
  for (const auto& v : j["vectors"]) f.vectors.push_back(detail::vector_from_json(v));
  if (f.vectors.empty()) throw Error(ErrorKind::EmptyFamily, "family file has no vectors");
  f.dim = common_dimension(f.vectors);
  if (j.contains("dim") && j["dim"].get<std::size_t>() != f.dim) {
    throw Error(ErrorKind::DimensionMismatch, "declared dim differs from vector length");
  }
  f.validity_warning = j.value("validity_warning", false);
  return f;
}

inline Graph graph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) detail::bad_input("Graph needs \"n\" and \"edges\"");
  Graph g(j["n"].get<std::size_t>());
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2) detail::bad_input("edge must be a [u, v] pair");
    const auto u = e[0].get<std::size_t>();
    const auto v = e[1].get<std::size_t>();
    if (u >= g.order() || v >= g.order()) detail::bad_input("edge endpoint out of range");
    g.add_edge(u, v);
  }
  return g;
}

inline ProductSet product_set_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("party_dims") || !j.contains("states")) {
    detail::bad_input("ProductSet needs \"party_dims\" and \"states\"");
  }
  ProductSet ps;
  ps.party_dims = j["party_dims"].get<std::vector<std::size_t>>();
  for (const auto& s : j["states"]) {
    std::vector<ComplexVector> factors;
    for (const auto& f : s) factors.push_back(detail::vector_from_json(f));
    ps.states.push_back(std::move(factors));
  }
  return ps;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string family_csv(const VectorFamily& f) {
  std::ostringstream os;
  os << "index";
  for (std::size_t c = 0; c < f.dim; ++c) os << ",re" << c << ",im" << c;
  os << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) {
    os << i;
    for (Eigen::Index c = 0; c < f.vectors[i].size(); ++c) {
      os << ',' << format12(f.vectors[i](c).real()) << ',' << format12(f.vectors[i](c).imag());
    }
    os << '\n';
  }
  return os.str();
}

inline std::string graph_csv(const Graph& g) {
  std::ostringstream os;
  os << "u,v\n";
  for (auto [u, v] : g.edges()) os << u << ',' << v << '\n';
  return os.str();
}

inline std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << "label,theta,strength,strength_ref,lee,lee_ref,abs_delta\n";
  for (const auto& r : rows) {
    os << r.label << ',' << format12(r.theta) << ',' << format12(r.strength) << ',' << format12(r.strength_ref) << ','
       << format12(r.lee) << ',' << format12(r.lee_ref) << ',' << format12(r.lee_delta) << '\n';
  }
  return os.str();
}

inline std::string table2_csv(const std::vector<Table2Row>& rows) {
  std::ostringstream os;
  os << "q,theta,alpha,ratio\n";
  for (const auto& r : rows) os << r.q << ',' << format12(r.theta) << ',' << r.alpha << ',' << format12(r.ratio) << '\n';
  return os.str();
}

}  // namespace ctxupb::io

#endif  // CTXUPB_IO_HPP
