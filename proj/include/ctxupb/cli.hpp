#ifndef CTXUPB_CLI_HPP
#define CTXUPB_CLI_HPP

// Command-line front end. `run` returns the process exit code:
// 0 success, 1 domain error (error object on stdout), 2 usage error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ctxupb.hpp"

namespace ctxupb::cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command;
  std::vector<std::string> sources;
  std::optional<std::string> theta;
  std::optional<std::size_t> n, m, t, p, q;
  std::vector<std::size_t> multipliers;
  double tol = 1e-9;
  std::uint64_t seed = LeeOptions{}.seed;
  std::size_t restarts = LeeOptions{}.restarts;
  std::size_t size = LeeOptions{}.size;
  std::size_t threads = LeeOptions{}.threads;
  std::string method = "auto";
  std::string format = "json";
  std::string out;
  bool decomposition = false;

  Tolerances tolerances() const {
    Tolerances t{tol, tol, tol};
    t.validate();
    return t;
  }

  LeeOptions lee_options() const {
    LeeOptions o;
    o.seed = seed;
    o.restarts = restarts;
    o.size = size;
    o.threads = threads;
    return o;
  }
};

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"one-param", "pyramid",  "kcbs",           "tiles-rep",
                                              "genpyramid", "genkcbs", "loor-complement", "quadres"};
  return names;
}

inline const std::vector<std::string>& product_set_names() {
  static const std::vector<std::string> names{"one-param", "pyramid",  "kcbs",           "tiles-rep",    "genpyramid",
                                              "genkcbs",   "quadres", "loor-complement", "gencontextual"};
  return names;
}

inline const std::vector<std::string>& graph_names() {
  static const std::vector<std::string> names{"cycle", "cycle-complement", "complete", "paley"};
  return names;
}

namespace detail {

inline std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

/// Builtin `name[:key=val[,key=val...]]` or a JSON file path.
struct Source {
  std::string text;
  std::string name;
  std::map<std::string, std::string> params;
  bool is_file = false;
};

inline Source parse_source(const std::string& text) {
  Source s;
  s.text = text;
  if (text.find('/') != std::string::npos || (text.size() > 5 && text.ends_with(".json"))) {
    s.is_file = true;
    return s;
  }
  const auto colon = text.find(':');
  s.name = text.substr(0, colon);
  if (colon == std::string::npos) return s;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("malformed source parameter '" + item + "' in '" + text + "'");
    s.params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return s;
}

inline io::Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  io::Json j = io::parse_json(buf.str());
  // accept our own output envelope
  if (j.is_object() && j.contains("meta") && j.contains("result")) return j["result"];
  return j;
}

inline std::size_t to_size(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty() || value[0] == '-') {
    throw UsageError("parameter " + key + " expects a non-negative integer, got '" + value + "'");
  }
  return static_cast<std::size_t>(v);
}

class Params {
 public:
  Params(const Source& src, const Config& cfg) : src_(src), cfg_(cfg) {}

  std::optional<std::size_t> size(const std::string& key) const {
    if (auto it = src_.params.find(key); it != src_.params.end()) return to_size(key, it->second);
    if (key == "n") return cfg_.n;
    if (key == "m") return cfg_.m;
    if (key == "t") return cfg_.t;
    if (key == "p") return cfg_.p;
    if (key == "q") return cfg_.q;
    return std::nullopt;
  }

  std::size_t require(const std::string& key) const {
    if (auto v = size(key)) return *v;
    throw UsageError(src_.name + " needs --" + key + " (or " + src_.name + ":" + key + "=...)");
  }

  std::optional<double> angle() const {
    if (auto it = src_.params.find("theta"); it != src_.params.end()) return parse_angle(it->second);
    if (cfg_.theta) return parse_angle(*cfg_.theta);
    return std::nullopt;
  }

  void reject_unknown(std::initializer_list<const char*> allowed) const {
    for (const auto& [k, v] : src_.params) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) throw UsageError("unknown parameter '" + k + "' for " + src_.name);
    }
  }

 private:
  const Source& src_;
  const Config& cfg_;
};

inline VectorFamily builtin_family(const Source& src, const Config& cfg) {
  const Params prm(src, cfg);
  const Tolerances tol = cfg.tolerances();
  const std::string& name = src.name;
  if (name == "one-param") {
    prm.reject_unknown({"theta"});
    const auto theta = prm.angle();
    if (!theta) throw UsageError("one-param needs --theta (an expression over pi)");
    return one_param_family(*theta, tol);
  }
  if (name == "tiles-rep") {
    prm.reject_unknown({});
    VectorFamily f = one_param_family(tiles_theta(), tol);
    f.label = "tiles-rep";
    return f;
  }
  if (name == "pyramid") {
    prm.reject_unknown({});
    return pyramid();
  }
  if (name == "kcbs") {
    prm.reject_unknown({});
    return kcbs();
  }
  if (name == "genpyramid") {
    prm.reject_unknown({"m", "t", "p"});
    std::optional<std::size_t> m = prm.size("m");
    if (!m) {
      if (auto p = prm.size("p"); p && *p % 2 == 1 && *p >= 5) m = (*p - 1) / 2;
    }
    if (!m) throw UsageError("genpyramid needs --m (or --p = 2m+1) and --t");
    return genpyramid_local(*m, prm.require("t"));
  }
  if (name == "genkcbs") {
    prm.reject_unknown({"n"});
    return gen_kcbs(prm.require("n"));
  }
  if (name == "loor-complement") {
    prm.reject_unknown({"n"});
    return loor_cycle_complement(prm.require("n"));
  }
  if (name == "quadres") {
    prm.reject_unknown({"p"});
    return quadres_local(prm.require("p"));
  }
  if (name == "gencontextual") {
    throw UsageError("gencontextual is a product set; use it with verify-upb, bes, lee or equiv");
  }
  throw UsageError("unknown family '" + name + "'; valid names: " + join(family_names()));
}

inline VectorFamily load_family(const std::string& text, const Config& cfg) {
  const Source src = parse_source(text);
  if (src.is_file) return io::family_from_json(read_json_file(text));
  return builtin_family(src, cfg);
}

inline ProductSet assemble(const VectorFamily& f, const Config& cfg, std::vector<std::size_t> fallback) {
  const auto& mult = cfg.multipliers.empty() ? fallback : cfg.multipliers;
  return assemble_mapped(f, mult);
}

inline ProductSet load_product_set(const std::string& text, const Config& cfg) {
  const Source src = parse_source(text);
  if (src.is_file) {
    const io::Json j = read_json_file(text);
    if (j.contains("party_dims")) return io::product_set_from_json(j);
    return assemble(io::family_from_json(j), cfg, {1, 2});
  }
  const Params prm(src, cfg);
  if (src.name == "gencontextual") {
    prm.reject_unknown({"n"});
    return gencontextual_upb(prm.require("n"));
  }
  if (src.name == "quadres" && cfg.multipliers.empty()) {
    prm.reject_unknown({"p"});
    return quadres_upb(prm.require("p"));
  }
  if (std::find(family_names().begin(), family_names().end(), src.name) == family_names().end()) {
    throw UsageError("unknown product set '" + src.name + "'; valid names: " + join(product_set_names()));
  }
  const VectorFamily f = builtin_family(src, cfg);
  if (src.name == "genpyramid") {
    const auto m = static_cast<std::size_t>(std::get<std::int64_t>(f.params.at("m")));
    return assemble(f, cfg, consecutive_multipliers(m));
  }
  return assemble(f, cfg, {1, 2});
}

struct GraphSource {
  Graph graph;
  std::optional<VectorFamily> family;
};

inline GraphSource load_graph(const std::string& text, const Config& cfg) {
  const Source src = parse_source(text);
  const Tolerances tol = cfg.tolerances();
  if (src.is_file) {
    const io::Json j = read_json_file(text);
    if (j.contains("edges")) return {io::graph_from_json(j), std::nullopt};
    VectorFamily f = io::family_from_json(j);
    Graph g = orthogonality_graph(f, tol);
    return {std::move(g), std::move(f)};
  }
  const Params prm(src, cfg);
  if (src.name == "cycle") {
    prm.reject_unknown({"n"});
    return {cycle(prm.require("n")), std::nullopt};
  }
  if (src.name == "cycle-complement") {
    prm.reject_unknown({"n"});
    return {complement(cycle(prm.require("n"))), std::nullopt};
  }
  if (src.name == "complete") {
    prm.reject_unknown({"n"});
    return {complete(prm.require("n")), std::nullopt};
  }
  if (src.name == "paley") {
    prm.reject_unknown({"q", "p"});
    auto q = prm.size("q");
    if (!q) q = prm.size("p");
    if (!q) throw UsageError("paley needs --q");
    return {paley(*q), std::nullopt};
  }
  if (std::find(family_names().begin(), family_names().end(), src.name) == family_names().end()) {
    throw UsageError("unknown graph source '" + src.name + "'; valid names: " + join(graph_names()) + ", " +
                     join(family_names()));
  }
  VectorFamily f = builtin_family(src, cfg);
  Graph g = orthogonality_graph(f, tol);
  return {std::move(g), std::move(f)};
}

inline VerifyMethod parse_method(const std::string& m) {
  if (m == "exact") return VerifyMethod::Exact;
  if (m == "bound") return VerifyMethod::Bound;
  return VerifyMethod::Auto;
}

inline io::Json meta_json(const Config& cfg) {
  io::Json params = io::Json::object();
  if (cfg.theta) params["theta"] = *cfg.theta;
  if (cfg.n) params["n"] = *cfg.n;
  if (cfg.m) params["m"] = *cfg.m;
  if (cfg.t) params["t"] = *cfg.t;
  if (cfg.p) params["p"] = *cfg.p;
  if (cfg.q) params["q"] = *cfg.q;
  if (!cfg.multipliers.empty()) params["multipliers"] = cfg.multipliers;
  return {{"command", cfg.command},
          {"sources", cfg.sources},
          {"params", params},
          {"tol", cfg.tol},
          {"method", cfg.method},
          {"seed", cfg.seed},
          {"restarts", cfg.restarts},
          {"L", cfg.size},
          {"threads", cfg.threads},
          {"format", cfg.format}};
}

inline std::string meta_comment(const Config& cfg) { return "# " + meta_json(cfg).dump() + "\n"; }

/// key,value rows for the top-level scalars of a result object.
inline std::string scalar_csv(const io::Json& result) {
  std::ostringstream os;
  os << "key,value\n";
  for (const auto& [k, v] : result.items()) {
    if (v.is_primitive()) {
      os << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const io::Json& e) { return e.is_primitive(); })) {
      os << k << ',';
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ";" : "") << v[i].dump();
      os << '\n';
    }
  }
  return os.str();
}

inline std::string pretty_table1(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(10) << "theta" << std::right << std::setw(12) << "strength" << std::setw(12)
     << "(ref)" << std::setw(14) << "LEE (upper)" << std::setw(12) << "(ref)" << std::setw(12) << "|delta|" << '\n';
  os << std::fixed;
  for (const auto& r : rows) {
    os << std::left << std::setw(10) << r.label << std::right << std::setprecision(7) << std::setw(12) << r.strength
       << std::setprecision(4) << std::setw(12) << r.strength_ref << std::setprecision(7) << std::setw(14) << r.lee
       << std::setprecision(5) << std::setw(12) << r.lee_ref << std::setprecision(7) << std::setw(12) << r.lee_delta
       << '\n';
  }
  return os.str();
}

inline std::string pretty_table2(const std::vector<Table2Row>& rows) {
  std::ostringstream os;
  os << std::setw(4) << "q" << std::setw(14) << "theta" << std::setw(7) << "alpha" << std::setw(12) << "ratio" << '\n';
  os << std::fixed << std::setprecision(6);
  for (const auto& r : rows) {
    os << std::setw(4) << r.q << std::setw(14) << r.theta << std::setw(7) << r.alpha << std::setw(12) << r.ratio
       << '\n';
  }
  return os.str();
}

struct Rendered {
  io::Json result;
  std::optional<std::string> csv;
  std::optional<std::string> pretty;
};

inline Rendered execute(const Config& cfg) {
  const Tolerances tol = cfg.tolerances();
  const auto& src = cfg.sources;
  auto need = [&](std::size_t count) {
    if (src.size() != count) {
      throw UsageError(cfg.command + " expects " + std::to_string(count) + " source argument(s)");
    }
  };
  Rendered r;
  if (cfg.command == "family") {
    need(1);
    const VectorFamily f = load_family(src[0], cfg);
    r.result = io::to_json(f);
    r.csv = io::family_csv(f);
  } else if (cfg.command == "graph") {
    need(1);
    const GraphSource g = load_graph(src[0], cfg);
    r.result = io::to_json(g.graph);
    r.csv = io::graph_csv(g.graph);
  } else if (cfg.command == "verify-upb") {
    need(1);
    const ProductSet ps = load_product_set(src[0], cfg);
    const UpbVerdict v = verify_upb(ps, parse_method(cfg.method), tol);
    r.result = io::to_json(v);
    r.result["size"] = ps.size();
    r.result["party_dims"] = ps.party_dims;
    r.result["minimal"] = is_minimal(ps);
  } else if (cfg.command == "strength") {
    need(1);
    const VectorFamily f = load_family(src[0], cfg);
    r.result = io::to_json(strength(f.vectors, f.label));
  } else if (cfg.command == "theta") {
    need(1);
    const GraphSource g = load_graph(src[0], cfg);
    std::optional<double> lower;
    if (g.family) lower = strength(g.family->vectors).value;
    const QcgVerdict v = is_qcg(g.graph, lower, tol.orth_tol);
    r.result = {{"theta", v.theta ? io::Json(io::round12(v.theta->value)) : io::Json(nullptr)},
                {"closed_form", v.theta ? io::to_json(*v.theta) : io::Json(nullptr)},
                {"qcg", io::to_json(v)}};
  } else if (cfg.command == "alpha") {
    need(1);
    r.result = io::to_json(independence_number(load_graph(src[0], cfg).graph));
  } else if (cfg.command == "bes" || cfg.command == "lee") {
    need(1);
    const ProductSet ps = load_product_set(src[0], cfg);
    const UpbVerdict v = verify_upb(ps, parse_method(cfg.method), tol);
    const DensityMatrix rho = bound_entangled_state(ps, v);
    if (cfg.command == "bes") {
      io::Json ppt = io::Json::array();
      for (std::size_t m = 0; m < ps.parties(); ++m) {
        const double e = min_partial_transpose_eigenvalue(rho, m);
        ppt.push_back({{"party", m}, {"min_eigenvalue", io::round12(e)}, {"ppt", e >= -tol.psd_tol}});
      }
      double overlap = 0.0;
      for (std::size_t j = 0; j < ps.size(); ++j) {
        overlap = std::max(overlap, (rho.matrix * ps.state_vector(j)).norm());
      }
      const EigenSystem eig = hermitian_eig(rho.matrix);
      std::size_t rank = 0;
      for (Eigen::Index i = 0; i < eig.values.size(); ++i) rank += eig.values(i) > tol.rank_tol ? 1 : 0;
      r.result = {{"verdict", to_string(v.status)},
                  {"rank", rank},
                  {"expected_rank", ps.total_dim() - ps.size()},
                  {"trace", io::round12(rho.matrix.trace().real())},
                  {"min_eigenvalue", io::round12(eig.values(0))},
                  {"max_upb_overlap", io::round12(overlap)},
                  {"partial_transpose", ppt},
                  {"state", io::to_json(rho)}};
    } else {
      const LeeResult lee = lee_upper_bound(rho, cfg.lee_options(), tol);
      r.result = io::to_json(lee, cfg.decomposition);
      r.result["verdict"] = to_string(v.status);
      r.result["note"] = "upper bound on the linear entropy of entanglement";
    }
  } else if (cfg.command == "equiv") {
    need(2);
    const auto perm = upb_graph_equivalent(load_product_set(src[0], cfg), load_product_set(src[1], cfg), tol);
    r.result = {{"equivalent", perm.has_value()}, {"permutation", perm ? io::Json(*perm) : io::Json(nullptr)}};
  } else if (cfg.command == "table1") {
    need(0);
    const auto rows = table1(cfg.lee_options(), tol);
    io::Json arr = io::Json::array();
    for (const auto& row : rows) arr.push_back(io::to_json(row));
    r.result = {{"rows", arr}, {"note", "lee is an upper bound from the convex-roof optimiser"}};
    r.csv = io::table1_csv(rows);
    r.pretty = pretty_table1(rows);
  } else if (cfg.command == "table2") {
    need(0);
    const auto rows = table2();
    io::Json arr = io::Json::array();
    for (const auto& row : rows) arr.push_back(io::to_json(row));
    r.result = {{"rows", arr}};
    r.csv = io::table2_csv(rows);
    r.pretty = pretty_table2(rows);
  } else {
    throw UsageError("no command given");
  }
  return r;
}

inline void emit(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw UsageError("cannot write output file '" + cfg.out + "'");
  file << text;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Config cfg;
  CLI::App app{"Contextuality and unextendible product bases toolkit", "ctxupb"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--tol", cfg.tol, "orthogonality / rank / PSD tolerance")->capture_default_str();
  app.add_option("--seed", cfg.seed, "master seed for LEE restarts")->capture_default_str();
  app.add_option("--restarts", cfg.restarts, "LEE restarts")->capture_default_str();
  app.add_option("--L", cfg.size, "LEE decomposition size (0 = rank^2)")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads for LEE restarts")->capture_default_str();
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--method", cfg.method, "UPB verification method")
      ->check(CLI::IsMember({"exact", "bound", "auto"}))
      ->capture_default_str();
  app.add_option("--theta", cfg.theta, "angle expression over pi, e.g. 3*pi/4");
  app.add_option("--n", cfg.n, "order n");
  app.add_option("--m", cfg.m, "genpyramid m (p = 2m+1)");
  app.add_option("--t", cfg.t, "genpyramid t");
  app.add_option("--p", cfg.p, "prime / order p");
  app.add_option("--q", cfg.q, "Paley order q");
  app.add_option("--multipliers", cfg.multipliers, "party index multipliers")->delimiter(',');
  app.add_flag("--decomposition", cfg.decomposition, "include the optimal decomposition in lee output");

  const std::string src_help = "builtin name[:key=val,...] or JSON file";
  struct Sub {
    const char* name;
    const char* help;
    int sources;
  };
  const Sub subs[] = {
      {"family", "emit a vector family", 1},
      {"graph", "orthogonality graph of a family (or a builtin graph)", 1},
      {"verify-upb", "UPB verification", 1},
      {"strength", "contextual strength of a family", 1},
      {"theta", "closed-form Lovasz number and QCG verdict", 1},
      {"alpha", "independence number with witness", 1},
      {"bes", "bound entangled state with PPT report", 1},
      {"lee", "convex-roof LEE upper bound of the bound entangled state", 1},
      {"equiv", "graph equivalence of two UPBs", 2},
      {"table1", "strength and LEE for the one-parameter family", 0},
      {"table2", "Lovasz number and independence number of Paley graphs", 0},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    if (s.sources == 1) sub->add_option("source", cfg.sources, src_help)->required()->expected(1);
    if (s.sources == 2) sub->add_option("sources", cfg.sources, src_help)->required()->expected(2);
    sub->final_callback([&cfg, name = std::string(s.name)] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const detail::Rendered r = detail::execute(cfg);
    std::string text;
    if (cfg.format == "csv") {
      text = detail::meta_comment(cfg) + (r.csv ? *r.csv : detail::scalar_csv(r.result));
    } else if (cfg.format == "pretty") {
      text = r.pretty ? *r.pretty : io::Json{{"meta", detail::meta_json(cfg)}, {"result", r.result}}.dump(2) + "\n";
    } else {
      text = io::Json{{"meta", detail::meta_json(cfg)}, {"result", r.result}}.dump(2) + "\n";
    }
    detail::emit(cfg, text, out);
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    out << io::Json{{"meta", detail::meta_json(cfg)}, {"error", io::error_json(e)["error"]}}.dump(2) << "\n";
    err << e.what() << "\n";
    return 1;
  }
}

}  // namespace ctxupb::cli

#endif  // CTXUPB_CLI_HPP
