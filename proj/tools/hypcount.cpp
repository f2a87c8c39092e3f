// hypcount: command-line front end for the moment engine and its oracles.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "hypcount/engine.hpp"
#include "hypcount/errors.hpp"
#include "hypcount/verify.hpp"

using namespace hypcount;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kUnsupported = 3, kBudget = 4 };

struct Config {
  std::string format = "plain";
  std::string parity = "odd";
  std::string genus;
  std::string q_list;
  std::string cache = ".hypcount-cache";
  unsigned jobs = 1;
  std::uint64_t budget_curves = std::uint64_t{1} << 30;
  bool allow_unsupported = false;
  bool schur = false;
};

TextFormat text_format(const Config& c) { return c.format == "latex" ? TextFormat::Latex : TextFormat::Plain; }

std::vector<Parity> parities(const std::string& p) {
  if (p == "both") return {Parity::Odd, Parity::Even};
  return {parse_parity(p)};
}

std::pair<int, int> genus_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos) throw ParseError("bad genus '" + text + "'");
    return std::stoi(s);
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int g = number(text);
    return {g, g};
  }
  const int a = number(text.substr(0, dots)), b = number(text.substr(dots + 2));
  if (a > b) throw ParseError("empty genus range '" + text + "'");
  return {a, b};
}

std::vector<std::uint64_t> q_values(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) throw ParseError("bad q list '" + text + "'");
    out.push_back(std::stoull(item));
    PrimePower::from_q(out.back());
  }
  return out;
}

json poly_json(const QPoly& p) {
  json terms = json::array();
  for (int k = p.degree(); k >= 0; --k) {
    const mpq_class c = p.coeff(static_cast<std::size_t>(k));
    if (c == 0) continue;
    terms.push_back(json::array({k, c.get_num().get_str(), c.get_den().get_str()}));
  }
  return terms;
}

json value_json(const QRat& v) { return v.is_poly() ? poly_json(v.as_poly()) : json(nullptr); }

json closed_form_json(const ClosedForm& cf) {
  json residues = json::array();
  for (const auto& r : cf.residue_polys) {
    json coeffs = json::array();
    for (const auto& c : r) coeffs.push_back(c.str());
    residues.push_back(coeffs);
  }
  return {{"geometric", cf.geometric.str()}, {"period", cf.period}, {"g_min", cf.g_min}, {"residues", residues}};
}

bool is_tuple(const std::string& expr) { return expr.find('(') != std::string::npos; }

unsigned weight_of(const std::string& expr) {
  if (is_tuple(expr)) return UTuple::parse(expr).weighted_degree();
  return AExpr::parse(expr).weight();
}

EngineOptions engine_options(const Config& c) {
  EngineOptions o;
  o.cache_dir = c.cache;
  o.genus1.jobs = c.jobs;
  return o;
}

// ---- subcommands -------------------------------------------------------------

int cmd_decompose(const Config& c, const std::string& expr) {
  ULinComb comb;
  std::string canon;
  if (expr.find_first_of("bc") != std::string::npos) {
    const BCExpr x = BCExpr::parse(expr);
    comb = decompose_bc(x);
    canon = x.str();
  } else {
    const AExpr x = AExpr::parse(expr);
    comb = decompose_a(x);
    canon = x.str();
  }
  if (c.format == "json") {
    json terms = json::array();
    for (auto it = comb.rbegin(); it != comb.rend(); ++it) terms.push_back(json::array({it->first.str(), it->second.get_str()}));
    std::cout << json{{"expr", canon}, {"terms", terms}}.dump() << "\n";
  } else {
    std::cout << canon << " = " << render(comb) << "\n";
  }
  return kOk;
}

int cmd_count(const Config& c, const std::string& expr) {
  if (!c.allow_unsupported && weight_of(expr) > 7) {
    std::cerr << "weight " << weight_of(expr) << " exceeds 7; pass --allow-unsupported to try anyway\n";
    return kUnsupported;
  }
  Engine engine(engine_options(c));
  const bool tuple = is_tuple(expr);
  const std::string canon = tuple ? UTuple::parse(expr).str() : AExpr::parse(expr).str();
  auto value = [&](int g, Parity p) {
    return tuple ? engine.u_value(UTuple::parse(expr), g, p) : engine.a_value(AExpr::parse(expr), g, p);
  };
  const auto ps = parities(c.parity);
  const auto qs = q_values(c.q_list);
  json out = json::array();
  if (c.genus.empty()) {
    for (Parity p : ps) {
      const ClosedForm cf = tuple ? engine.closed_form(UTuple::parse(expr), p) : engine.closed_form(AExpr::parse(expr), p);
      if (c.format == "json") {
        out.push_back({{"expr", canon}, {"parity", to_string(p)}, {"closed_form", closed_form_json(cf)}});
      } else {
        std::cout << canon << " [" << to_string(p) << "] = " << cf.str(text_format(c)) << "\n";
      }
    }
  } else {
    const auto [lo, hi] = genus_range(c.genus);
    if (lo < -1) throw ParseError("genus must be >= -1");
    for (int g = lo; g <= hi; ++g) {
      std::vector<QRat> vals;
      for (Parity p : ps) {
        const QRat v = value(g, p);
        vals.push_back(v);
        if (c.format == "json") {
          json rec{{"expr", canon}, {"parity", to_string(p)}, {"genus", g}, {"poly", value_json(v)}, {"value", v.str()}};
          if (!qs.empty()) {
            json at = json::object();
            for (auto q : qs) at[std::to_string(q)] = v.eval(mpq_class(static_cast<unsigned long>(q))).get_str();
            rec["at"] = at;
          }
          out.push_back(rec);
        } else {
          std::cout << canon << "|_" << g << " [" << to_string(p) << "] = " << v.str(text_format(c));
          for (auto q : qs) std::cout << "  (q=" << q << ": " << v.eval(mpq_class(static_cast<unsigned long>(q))).get_str() << ")";
          std::cout << "\n";
        }
      }
      if (vals.size() == 2 && c.format != "json") {
        std::cout << canon << "|_" << g << " even - odd = " << (vals[1] - vals[0]).str(text_format(c)) << "\n";
      }
    }
  }
  if (c.format == "json") std::cout << out.dump() << "\n";
  engine.save_cache();
  return kOk;
}

int cmd_fix(const Config& c, unsigned n) {
  if (n > 7) throw ParseError("fix supports n <= 7");
  if (c.genus.empty()) throw ParseError("fix needs --genus");
  const auto [lo, hi] = genus_range(c.genus);
  if (lo < 2) throw ParseError("fix needs genus >= 2");
  Engine engine(engine_options(c));
  json out = json::array();
  for (Parity p : parities(c.parity)) {
    for (int g = lo; g <= hi; ++g) {
      json fixed = json::array();
      for (const auto& mu : partitions(n)) {
        const QPoly f = engine.fixed_point_poly(g, mu, p);
        if (c.format == "json") {
          fixed.push_back({{"cycle_type", mu}, {"poly", poly_json(f)}});
        } else {
          std::string ct;
          for (unsigned x : mu) ct += (ct.empty() ? "" : ",") + std::to_string(x);
          std::cout << "g=" << g << " [" << to_string(p) << "] sigma=(" << ct << "): " << f.str(text_format(c)) << "\n";
        }
      }
      json schur = json::array();
      if (c.schur) {
        for (const auto& [lambda, poly] : engine.character_transform(g, n, p)) {
          const bool integral = poly.is_integral();
          if (c.format == "json") {
            schur.push_back({{"lambda", lambda}, {"poly", poly_json(poly)}, {"integral", integral}});
          } else {
            std::string l;
            for (unsigned x : lambda) l += (l.empty() ? "" : ",") + std::to_string(x);
            std::cout << "g=" << g << " [" << to_string(p) << "] P[" << l << "]: " << poly.str(text_format(c))
                      << (integral ? "" : "  (non-integral coefficients)") << "\n";
          }
        }
      }
      if (c.format == "json") {
        json rec{{"genus", g}, {"n", n}, {"parity", to_string(p)}, {"fixed", fixed}};
        if (c.schur) rec["schur"] = schur;
        out.push_back(rec);
      }
    }
  }
  if (c.format == "json") std::cout << out.dump() << "\n";
  engine.save_cache();
  return kOk;
}

int cmd_verify(const Config& c, const std::string& suite) {
  Engine engine(engine_options(c));
  VerifyOptions vo;
  vo.jobs = c.jobs;
  vo.max_curves = c.budget_curves;
  std::vector<std::string> suites;
  if (suite == "all") {
    suites = suite_names();
  } else {
    bool known = false;
    for (const auto& s : suite_names()) known = known || s == suite;
    if (!known) throw ParseError("unknown suite '" + suite + "'");
    suites = {suite};
  }
  bool ok = true;
  for (const auto& s : suites) {
    run_suite(s, engine, vo, [&](const CheckResult& r) {
      ok = ok && r.passed;
      if (c.format == "json") {
        std::cout << to_json(r) << std::endl;
      } else {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.suite << ": " << r.name << " -- " << r.detail << " ("
                  << static_cast<long>(r.ms) << " ms)" << std::endl;
      }
    });
  }
  engine.save_cache();
  return ok ? kOk : kMismatch;
}

int cmd_genus1_table(const Config& c, unsigned max_weight) {
  Genus1BuildOptions o;
  o.jobs = c.jobs;
  o.max_weight = max_weight;
  if (!c.q_list.empty()) o.q_values = q_values(c.q_list);
  o.progress = [](const std::string& msg) { std::cerr << msg << "\n"; };
  const GenusOneTable t = build_genus1_table(o);
  if (c.format == "json") {
    std::cout << t.to_json() << "\n";
  } else {
    for (const auto& [x, p] : t.entries) std::cout << x.str() << "|_1 = " << p.str(text_format(c)) << "\n";
  }
  if (!c.cache.empty() && max_weight >= 7 && c.q_list.empty()) {
    std::filesystem::create_directories(c.cache);
    std::ofstream(std::filesystem::path(c.cache) / "genus1_table.json") << t.to_json() << "\n";
  }
  return kOk;
}

int cmd_bc(const Config& c, const std::string& expr) {
  const BCExpr x = BCExpr::parse(expr);
  if (c.genus.empty()) throw ParseError("bc needs --genus");
  const auto [lo, hi] = genus_range(c.genus);
  if (lo < -1) throw ParseError("genus must be >= -1");
  Engine engine(engine_options(c));
  const ULinComb comb = decompose_bc(x);
  const auto qs = q_values(c.q_list);
  bool ok = true;
  json out = json::array();
  for (Parity p : parities(c.parity)) {
    for (int g = lo; g <= hi; ++g) {
      QRat v;
      for (const auto& [t, coeff] : comb) v += QRat(coeff) * engine.u_value(t, g, p);
      json checks = json::object();
      std::string plain_checks;
      for (auto q : qs) {
        CurveLab lab(q, LabBudget{c.budget_curves, std::uint64_t{1} << 22, c.jobs});
        if (lab.parity() != p) continue;
        const mpq_class got = v.eval(mpq_class(static_cast<unsigned long>(q)));
        const mpq_class want = lab.brute_bc(x, g);
        ok = ok && got == want;
        checks[std::to_string(q)] = {{"engine", got.get_str()}, {"oracle", want.get_str()}};
        plain_checks += "  (q=" + std::to_string(q) + ": " + got.get_str() + (got == want ? " = " : " != ") + "oracle " +
                        want.get_str() + ")";
      }
      if (c.format == "json") {
        json rec{{"expr", x.str()}, {"parity", to_string(p)}, {"genus", g}, {"poly", value_json(v)}, {"value", v.str()}};
        if (!qs.empty()) rec["oracle"] = checks;
        out.push_back(rec);
      } else {
        std::cout << x.str() << "|_" << g << " [" << to_string(p) << "] = " << v.str(text_format(c)) << plain_checks << "\n";
      }
    }
  }
  if (c.format == "json") std::cout << out.dump() << "\n";
  engine.save_cache();
  return ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point counts of hyperelliptic curves: moments, recursions and equivariant counts"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "latex", "plain"}));
  app.add_option("--cache", cfg.cache, "Cache directory");
  app.add_option("--jobs", cfg.jobs, "Worker threads for enumeration")->check(CLI::PositiveNumber);
  app.add_option("--budget-curves", cfg.budget_curves, "Maximum curves enumerated by an oracle")->check(CLI::PositiveNumber);
  app.add_flag("--allow-unsupported", cfg.allow_unsupported, "Attempt weights above 7");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--char", cfg.parity, "odd, even or both")->check(CLI::IsMember({"odd", "even", "both"}));
    sub->add_option("--genus", cfg.genus, "Genus G or range A..B");
    sub->add_option("--q", cfg.q_list, "Comma-separated field sizes");
  };

  std::string expr;
  auto* decompose = app.add_subcommand("decompose", "Decompose a moment expression into u-tuples");
  decompose->add_option("expr", expr, "Expression such as \"a1^4 a2\" or \"b1^2 c2\"")->required();

  auto* count = app.add_subcommand("count", "Moment or u-tuple values per genus, or the closed form");
  count->add_option("expr", expr, "Expression such as \"a2^2\" or tuple \"(1^2,1^2)\"")->required();
  add_common(count);

  unsigned n = 0;
  auto* fix = app.add_subcommand("fix", "Fixed-point counts per cycle type");
  fix->add_option("--n", n, "Number of marked points")->required();
  fix->add_flag("--schur", cfg.schur, "Also print the character transform");
  add_common(fix);

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "paper-formulas, oracle-odd, oracle-even, invariants, genus1-table, appendix or all")
      ->required();

  unsigned max_weight = 7;
  auto* g1 = app.add_subcommand("genus1-table", "Rebuild the genus-one moment table");
  g1->add_option("--max-weight", max_weight, "Largest weight")->check(CLI::Range(0u, 7u));
  g1->add_option("--q", cfg.q_list, "Comma-separated odd field sizes");

  auto* bc = app.add_subcommand("bc", "Fiber statistics b_i, c_i");
  bc->add_option("expr", expr, "Expression such as \"b1^2 c2\"")->required();
  add_common(bc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*decompose) return cmd_decompose(cfg, expr);
    if (*count) return cmd_count(cfg, expr);
    if (*fix) return cmd_fix(cfg, n);
    if (*verify) return cmd_verify(cfg, suite);
    if (*g1) return cmd_genus1_table(cfg, max_weight);
    if (*bc) return cmd_bc(cfg, expr);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedBaseCase& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kMismatch;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMismatch;
  }
  return kUsage;
}
