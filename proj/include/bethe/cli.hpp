#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <future>
#include <json.hpp>

#include "bethe/combinat.hpp"

namespace bethe {

using ordered_json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  int line;
  ConfigError(int l, const std::string& msg)
      : std::runtime_error("config line " + std::to_string(l) + ": " + msg), line(l) {}
};

struct RunConfig {
  struct Factor {
    bool skew = false;
    Weight lambda, mu;
    GaussianRational z;
  };
  int n = 0;
  std::vector<Factor> factors;
  bool gram = false;
  std::string family = "bethe";  // bethe | gt | soa
  std::vector<GaussianRational> C, chi;
  std::vector<std::string> checks;
  unsigned long seed = 1;
  long max_order = 5;
  double epsilon = 1e-9;
  long dim_cap = 256;

  std::string recipe_kind;  // caterpillar | first | second | generic
  std::vector<GaussianRational> recipe_c0, recipe_c1;
  std::vector<std::pair<GaussianRational, int>> recipe_blocks;
  std::vector<std::vector<GaussianRational>> recipe_params;
  std::vector<GaussianRational> ts;

  std::optional<std::array<int, 3>> kr;
  std::optional<std::pair<Weight, Weight>> cactus_shape;

  std::vector<std::pair<std::string, std::string>> raw;  // config echo
};

namespace cfg_detail {

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else
      cur += c;
  }
  out.push_back(trim(cur));
  return out;
}

inline Weight parse_weight(const std::string& s, int line) {
  std::string t = trim(s);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw ConfigError(line, "expected weight like (2,1,0), got '" + s + "'");
  t = t.substr(1, t.size() - 2);
  Weight w;
  if (trim(t).empty()) return w;
  for (auto& p : split(t, ','))
    try {
      w.push_back(std::stol(p));
    } catch (...) {
      throw ConfigError(line, "bad weight entry '" + p + "'");
    }
  return w;
}

inline GaussianRational parse_scalar(const std::string& s, int line) {
  try {
    return GaussianRational::parse(trim(s));
  } catch (const std::exception& e) {
    throw ConfigError(line, std::string("bad scalar '") + s + "': " + e.what());
  }
}

inline std::vector<GaussianRational> parse_scalar_list(const std::string& s, int line) {
  std::vector<GaussianRational> out;
  for (auto& p : split(s, ',')) out.push_back(parse_scalar(p, line));
  return out;
}

// "eval (1,0) @ 0" or "skew (2,1,0)/(1) @ 1/3"
inline RunConfig::Factor parse_factor(const std::string& s, int line) {
  RunConfig::Factor f;
  std::string body = trim(s), zpart = "0";
  if (auto at = body.find('@'); at != std::string::npos) {
    zpart = body.substr(at + 1);
    body = trim(body.substr(0, at));
  }
  f.z = parse_scalar(zpart, line);
  if (body.rfind("eval", 0) == 0) {
    f.lambda = parse_weight(body.substr(4), line);
  } else if (body.rfind("skew", 0) == 0) {
    std::string rest = trim(body.substr(4));
    auto slash = rest.find('/');
    if (slash == std::string::npos) throw ConfigError(line, "skew factor needs lambda/mu");
    f.skew = true;
    f.lambda = parse_weight(rest.substr(0, slash), line);
    f.mu = parse_weight(rest.substr(slash + 1), line);
  } else {
    throw ConfigError(line, "factor must start with 'eval' or 'skew'");
  }
  if (!is_dominant(f.lambda)) throw ConfigError(line, "factor weight not dominant");
  return f;
}

}  // namespace cfg_detail

inline RunConfig parse_config(std::istream& in) {
  using namespace cfg_detail;
  RunConfig c;
  std::string lineStr;
  int lineno = 0;
  while (std::getline(in, lineStr)) {
    ++lineno;
    std::string s = lineStr;
    if (auto h = s.find('#'); h != std::string::npos) s = s.substr(0, h);
    s = trim(s);
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(lineno, "expected key = value");
    std::string key = trim(s.substr(0, eq)), val = trim(s.substr(eq + 1));
    c.raw.push_back({key, val});
    try {
      if (key == "n")
        c.n = std::stoi(val);
      else if (key == "factor")
        c.factors.push_back(parse_factor(val, lineno));
      else if (key == "gram")
        c.gram = (val == "true" || val == "1");
      else if (key == "family")
        c.family = val;
      else if (key == "C" || key == "chi") {
        auto list = parse_scalar_list(val, lineno);
        for (size_t a = 0; a < list.size(); ++a)
          for (size_t b = a + 1; b < list.size(); ++b)
            if (list[a] == list[b])
              throw ConfigError(lineno, key + " entries must be pairwise distinct");
        (key == "C" ? c.C : c.chi) = std::move(list);
      }
      else if (key == "checks")
        c.checks = split(val, ',');
      else if (key == "seed")
        c.seed = std::stoul(val);
      else if (key == "max_order")
        c.max_order = std::stol(val);
      else if (key == "epsilon")
        c.epsilon = std::stod(val);
      else if (key == "dim_cap")
        c.dim_cap = std::stol(val);
      else if (key == "recipe")
        c.recipe_kind = val;
      else if (key == "recipe_c0")
        c.recipe_c0 = parse_scalar_list(val, lineno);
      else if (key == "recipe_c1")
        c.recipe_c1 = parse_scalar_list(val, lineno);
      else if (key == "recipe_blocks") {  // "1 x2, 2 x1"
        for (auto& b : split(val, ',')) {
          auto x = b.find('x');
          if (x == std::string::npos) throw ConfigError(lineno, "block needs 'value xk'");
          c.recipe_blocks.push_back(
              {parse_scalar(b.substr(0, x), lineno), std::stoi(b.substr(x + 1))});
        }
      } else if (key == "recipe_params") {  // "(0,1); (0)"
        for (auto& p : split(val, ';')) {
          std::string t = trim(p);
          if (t.size() < 2 || t.front() != '(' || t.back() != ')')
            throw ConfigError(lineno, "recipe param must be parenthesized");
          c.recipe_params.push_back(parse_scalar_list(t.substr(1, t.size() - 2), lineno));
        }
      } else if (key == "ts")
        c.ts = parse_scalar_list(val, lineno);
      else if (key == "kr") {
        auto parts = split(val, ',');
        if (parts.size() != 3) throw ConfigError(lineno, "kr needs n,l,r");
        c.kr = {{std::stoi(parts[0]), std::stoi(parts[1]), std::stoi(parts[2])}};
      } else if (key == "cactus_shape") {
        auto slash = val.find('/');
        if (slash == std::string::npos) throw ConfigError(lineno, "cactus_shape needs lambda/mu");
        c.cactus_shape = {parse_weight(val.substr(0, slash), lineno),
                          parse_weight(val.substr(slash + 1), lineno)};
      } else
        throw ConfigError(lineno, "unknown key '" + key + "'");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(lineno, std::string("bad value for '") + key + "': " + e.what());
    }
  }
  if (c.n == 0 && !c.factors.empty()) c.n = static_cast<int>(c.factors[0].lambda.size());
  return c;
}

inline RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open '" + path + "'");
  return parse_config(in);
}

// ---- module cache ------------------------------------------------------------

inline std::string module_descriptor(const RunConfig& c) {
  std::string d = "v1|n=" + std::to_string(c.n) + "|gram=" + (c.gram ? "1" : "0");
  for (auto& f : c.factors) {
    d += f.skew ? "|skew(" : "|eval(";
    for (long l : f.lambda) d += std::to_string(l) + ",";
    d += "/";
    for (long l : f.mu) d += std::to_string(l) + ",";
    d += ")@" + f.z.str();
  }
  return d;
}

inline std::string cache_key(const std::string& descriptor) {
  // FNV-1a, stable across platforms
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char ch : descriptor) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream o;
  o << std::hex << h;
  return o.str();
}

inline ordered_json serialize_matrix(const ExactMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

inline ExactMatrix deserialize_matrix(const ordered_json& rows) {
  ExactMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      m(i, j) = GaussianRational::parse(rows[i][j].get<std::string>());
  return m;
}

inline ordered_json serialize_module(const YModule& m) {
  ordered_json j;
  j["n"] = m.n;
  j["dim"] = m.dim;
  j["provenance"] = m.provenance;
  ordered_json den = ordered_json::array();
  for (auto& c : m.T.den.c) den.push_back(c.str());
  j["den"] = den;
  ordered_json num = ordered_json::array();
  for (auto& c : m.T.num.c) num.push_back(serialize_matrix(c));
  j["num"] = num;
  j["gram"] = m.gram ? serialize_matrix(*m.gram) : ordered_json(nullptr);
  return j;
}

inline YModule deserialize_module(const ordered_json& j) {
  YModule m;
  m.n = j["n"].get<int>();
  m.dim = j["dim"].get<long>();
  m.provenance = j["provenance"].get<std::string>();
  std::vector<GaussianRational> den;
  for (auto& c : j["den"]) den.push_back(GaussianRational::parse(c.get<std::string>()));
  std::vector<ExactMatrix> num;
  for (auto& c : j["num"]) num.push_back(deserialize_matrix(c));
  m.T = RatOpMatrix{m.n, m.dim, MatPoly(num), Poly(den)};
  if (!j["gram"].is_null()) m.gram = deserialize_matrix(j["gram"]);
  return m;
}

struct RunOptions {
  int jobs = 1;
  bool no_cache = false;
  bool include_timings = false;
  std::string cache_dir = ".bethecert-cache";
};

inline YModule build_module(const RunConfig& c, const RunOptions& opt) {
  std::string desc = module_descriptor(c);
  std::filesystem::path cached =
      std::filesystem::path(opt.cache_dir) / (cache_key(desc) + ".json");
  if (!opt.no_cache && std::filesystem::exists(cached)) {
    std::ifstream in(cached);
    ordered_json j = ordered_json::parse(in);
    if (j["descriptor"] == desc) return deserialize_module(j["module"]);
  }
  if (c.factors.empty()) throw std::invalid_argument("no factors configured");
  long dim_estimate = 1;
  std::vector<YModule> parts;
  for (auto& f : c.factors) {
    YModule part = f.skew ? build_skew_module(f.lambda, f.mu, f.z, c.gram)
                          : evaluation_module(build_irrep(f.lambda), f.z, c.gram);
    dim_estimate *= part.dim;
    if (dim_estimate > c.dim_cap)
      throw std::invalid_argument("module dimension exceeds dim_cap = " +
                                  std::to_string(c.dim_cap));
    parts.push_back(std::move(part));
  }
  YModule m = parts.size() == 1 ? std::move(parts[0]) : tensor_module(parts);
  if (!opt.no_cache) {
    std::filesystem::create_directories(opt.cache_dir);
    ordered_json j;
    j["descriptor"] = desc;
    j["module"] = serialize_module(m);
    std::ofstream out(cached);
    out << j.dump(1) << "\n";
  }
  return m;
}

inline SubalgebraImage build_image(const RunConfig& c, const YModule& m) {
  if (c.family == "bethe") {
    if (c.C.empty()) throw std::invalid_argument("family bethe requires C");
    return bethe_image(m, DiagonalParam(c.C), c.max_order);
  }
  if (c.family == "gt") return gt_image(m, c.max_order);
  if (c.family == "soa") {
    if (c.factors.size() != 1 || c.factors[0].skew)
      throw std::invalid_argument("family soa requires a single eval factor");
    return soa_image(build_irrep(c.factors[0].lambda), DiagonalParam(c.chi), c.factors[0].z);
  }
  throw std::invalid_argument("unknown family '" + c.family + "'");
}

inline LimitRecipe build_recipe(const RunConfig& c) {
  if (c.recipe_kind == "caterpillar") return LimitRecipe::caterpillar(c.n);
  if (c.recipe_kind == "generic") return LimitRecipe::generic(DiagonalParam(c.C));
  if (c.recipe_kind == "first")
    return LimitRecipe::first_type(DiagonalParam(c.recipe_c0), DiagonalParam(c.recipe_c1));
  if (c.recipe_kind == "second") {
    std::vector<DiagonalParam> params;
    for (auto& p : c.recipe_params) params.push_back(DiagonalParam(p, false));
    return LimitRecipe::second_type(c.recipe_blocks, params);
  }
  throw std::invalid_argument("unknown recipe '" + c.recipe_kind + "'");
}

struct Report {
  ordered_json json;
  int exit_code = 0;
};

inline ordered_json report_entry(const CertificateReport& r) {
  ordered_json j;
  j["check"] = r.check;
  j["instance"] = r.instance;
  j["verdict"] = r.verdict;
  j["seed"] = r.seed;
  ordered_json w = ordered_json::array();
  for (auto& [k, v] : r.witness) {
    ordered_json e;
    e[k] = v;
    w.push_back(e);
  }
  j["witness"] = w;
  return j;
}

inline Report run_config(const RunConfig& c, const RunOptions& opt = {}) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.json["schema_version"] = 1;
  rep.json["tool"] = "bethecert";
  ordered_json echo = ordered_json::array();
  for (auto& [k, v] : c.raw) {
    ordered_json e;
    e[k] = v;
    echo.push_back(e);
  }
  rep.json["config"] = echo;

  std::optional<YModule> module;
  auto need_module = [&]() -> const YModule& {
    if (!module) module = build_module(c, opt);
    return *module;
  };
  std::optional<SubalgebraImage> image;
  auto need_image = [&]() -> const SubalgebraImage& {
    if (!image) image = build_image(c, need_module());
    return image.value();
  };

  std::vector<std::function<CertificateReport()>> tasks;
  for (const std::string& chk : c.checks) {
    if (chk == "commutative")
      tasks.push_back([&] { return check_commutative(need_image()); });
    else if (chk == "cyclic")
      tasks.push_back([&] { return check_cyclic(need_image(), 5, c.seed); });
    else if (chk == "simple_spectrum")
      tasks.push_back([&] { return check_simple_spectrum(need_image(), 5, c.seed); });
    else if (chk == "selfadjoint")
      tasks.push_back([&] {
        const YModule& m = need_module();
        if (!m.gram) throw std::invalid_argument("selfadjoint check requires gram = true");
        return check_selfadjoint_closure(need_image(), *m.gram);
      });
    else if (chk == "ev_identity")
      tasks.push_back([&] {
        if (c.factors.size() != 1 || c.factors[0].skew)
          throw std::invalid_argument("ev_identity requires a single eval factor");
        return check_ev_identity(c.factors[0].lambda, c.factors[0].z, DiagonalParam(c.C),
                                 c.max_order);
      });
    else if (chk == "kr_projector")
      tasks.push_back([&] {
        if (!c.kr) throw std::invalid_argument("kr_projector requires kr = n,l,r");
        return check_kr_projector((*c.kr)[0], (*c.kr)[1], (*c.kr)[2]);
      });
    else if (chk == "limit")
      tasks.push_back([&] {
        if (c.ts.empty()) throw std::invalid_argument("limit check requires ts");
        return check_limit_convergence(build_recipe(c), need_module(), c.ts, c.max_order,
                                       c.epsilon);
      });
    else if (chk == "cactus")
      tasks.push_back([&] {
        if (!c.cactus_shape) throw std::invalid_argument("cactus check requires cactus_shape");
        return check_cactus_relations(SkewDiagram(c.cactus_shape->first, c.cactus_shape->second),
                                      c.n);
      });
    else
      throw std::invalid_argument("unknown check '" + chk + "'");
  }

  // image/module construction is shared state: materialize before going parallel
  std::vector<CertificateReport> results;
  if (opt.jobs > 1 && tasks.size() > 1) {
    need_image();
    std::vector<std::future<CertificateReport>> futs;
    for (auto& t : tasks) futs.push_back(std::async(std::launch::async, t));
    for (auto& f : futs) results.push_back(f.get());
  } else {
    for (auto& t : tasks) results.push_back(t());
  }

  int npass = 0, nfail = 0, ninc = 0;
  ordered_json arr = ordered_json::array();
  for (auto& r : results) {
    arr.push_back(report_entry(r));
    if (r.verdict == "pass")
      ++npass;
    else if (r.verdict == "fail")
      ++nfail;
    else
      ++ninc;
  }
  rep.json["reports"] = arr;
  ordered_json sum;
  sum["pass"] = npass;
  sum["fail"] = nfail;
  sum["inconclusive"] = ninc;
  rep.json["summary"] = sum;
  if (opt.include_timings) {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.json["wall_clock_seconds"] = secs;
  }
  rep.exit_code = nfail ? 1 : (ninc ? 2 : 0);
  return rep;
}

// grid spec: "z<k>=v1,v2,..." overriding the z of factor k (1-based)
inline Report run_sweep(const RunConfig& base, const std::string& grid,
                        const RunOptions& opt = {}) {
  Report rep;
  rep.json["schema_version"] = 1;
  rep.json["tool"] = "bethecert sweep";
  std::vector<RunConfig> points;
  std::string g = cfg_detail::trim(grid);
  if (!g.empty()) {
    auto eq = g.find('=');
    if (eq == std::string::npos || g[0] != 'z')
      throw ConfigError(0, "grid spec must look like z<k>=v1,v2,...");
    size_t k = std::stoul(g.substr(1, eq - 1));
    if (k < 1 || k > base.factors.size()) throw ConfigError(0, "grid factor index out of range");
    for (auto& v : cfg_detail::split(g.substr(eq + 1), ',')) {
      RunConfig c = base;
      c.factors[k - 1].z = cfg_detail::parse_scalar(v, 0);
      c.raw.push_back({"sweep.z" + std::to_string(k), v});
      points.push_back(std::move(c));
    }
  }
  std::vector<Report> reports(points.size());
  auto work = [&](size_t i) { reports[i] = run_config(points[i], opt); };
  if (opt.jobs > 1) {
    std::vector<std::future<void>> futs;
    for (size_t i = 0; i < points.size(); ++i)
      futs.push_back(std::async(std::launch::async, work, i));
    for (auto& f : futs) f.get();
  } else {
    for (size_t i = 0; i < points.size(); ++i) work(i);
  }
  ordered_json arr = ordered_json::array();
  int pass_points = 0, fail_points = 0, inc_points = 0;
  int worst = 0;
  for (auto& r : reports) {
    arr.push_back(r.json);
    if (r.exit_code == 0)
      ++pass_points;
    else if (r.exit_code == 1)
      ++fail_points;
    else
      ++inc_points;
    worst = std::max(worst, r.exit_code);
  }
  rep.json["points"] = arr;
  ordered_json sum;
  sum["grid_points"] = points.size();
  sum["pass"] = pass_points;
  sum["fail"] = fail_points;
  sum["inconclusive"] = inc_points;
  rep.json["summary"] = sum;
  rep.exit_code = worst;
  return rep;
}

}  // namespace bethe
