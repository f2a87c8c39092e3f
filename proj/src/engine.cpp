#include "hypcount/engine.hpp"

#include <fstream>
#include <sstream>

#include "hypcount/errors.hpp"
#include "series.hpp"

namespace hypcount {

Engine::Engine(EngineOptions opts) : opts_(std::move(opts)) { load_cache(); }

Engine::~Engine() = default;

Engine::Series& Engine::series(const UTuple& tuple, Parity parity) {
  auto& slot = series_[{tuple, parity}];
  if (!slot) {
    slot = std::make_unique<Series>();
    slot->tuple = tuple;
    slot->parity = parity;
  }
  if (slot->values.empty()) {
    slot->J = QRat(orbit_count_poly(tuple), QPoly::q_pow(3) - QPoly::q());
  }
  return *slot;
}

namespace {

unsigned ceil_half(int x) { return x <= 0 ? 0u : static_cast<unsigned>((x + 1) / 2); }

}  // namespace

void Engine::extend(Series& s, int genus) {
  while (static_cast<int>(s.values.size()) - 1 <= genus) {
    const int g = static_cast<int>(s.values.size()) - 1;
    QRat value;
    if (s.tuple.odd_weight()) {
      value = QRat();
    } else if (g == -1) {
      value = s.J;
    } else if (s.tuple.r_flag() == 1 && g == 0) {
      for (const auto& [t, c] : genus0_reduce(s.tuple)) value += QRat(c) * u_value(t, 0, s.parity);
    } else if (s.tuple.r_flag() == 1 && static_cast<unsigned>(g) < ceil_half(static_cast<int>(s.tuple.degree()) - 3)) {
      if (g != 1) throw UnsupportedBaseCase("u" + s.tuple.str() + " at genus " + std::to_string(g) + " needs a base case beyond genus one");
      value = QRat(genus1_u(s.tuple, s.parity));
    } else {
      // sum_{j=0}^{g+1} b̂_j u_{g-j} = rhs; polynomial and rational terms
      // are gathered apart so the fraction is reduced once.
      QPoly poly_part;
      QRat rat_part;
      if (s.tuple.r_flag() == 0) {
        const unsigned g1 = static_cast<unsigned>(g + 1);
        if (s.parity == Parity::Odd) {
          rat_part = s.J * QRat(s.bhat_at(2 * g1));
        } else {
          rat_part = s.J * QRat(s.bhat_at(g1).shifted(g1));
        }
      }
      for (int j = 1; j <= g + 1; ++j) {
        const QRat& prev = s.values[static_cast<std::size_t>(g - j + 1)];
        if (prev.is_zero()) continue;
        const QPoly& b = s.bhat_at(static_cast<std::size_t>(j));
        if (prev.is_poly()) {
          poly_part -= b * prev.as_poly();
        } else {
          rat_part -= QRat(b) * prev;
        }
      }
      value = rat_part + QRat(poly_part);
    }
    s.values.push_back(std::move(value));
    s.loaded.push_back(false);
    dirty_ = true;
  }
}

QRat Engine::u_value(const UTuple& tuple, int genus, Parity parity) {
  if (genus < -1) throw std::invalid_argument("u_value needs genus >= -1");
  std::lock_guard lock(mu_);
  Series& s = series(tuple, parity);
  extend(s, genus);
  return s.values[static_cast<std::size_t>(genus + 1)];
}

QRat Engine::a_value(const AExpr& expr, int genus, Parity parity) {
  if (genus < -1) throw std::invalid_argument("a_value needs genus >= -1");
  std::lock_guard lock(mu_);
  QRat total;
  if (expr.weight() % 2 == 1) return total;
  for (const auto& [t, c] : decompose_a(expr)) total += QRat(c) * u_value(t, genus, parity);
  if (genus >= 1 && expr.weight() <= 7 && !total.is_poly()) {
    throw VerificationFailure(expr.str() + " at genus " + std::to_string(genus) + " is not a polynomial: " + total.str());
  }
  return total;
}

QPoly Engine::genus1_u(const UTuple& tuple, Parity parity) {
  if (tuple.r_flag() != 1) throw std::invalid_argument("genus-one provider needs an r = 1 tuple");
  for (const auto& slot : tuple.slots()) {
    if (slot.r != 1) {
      throw UnsupportedBaseCase("no genus-one base case for " + tuple.str() + " (mixed exponents)");
    }
  }
  std::lock_guard lock(mu_);
  const AExpr expr = expr_of_general_case(tuple);
  const GenusOneTable& table = genus1_table();
  auto it = table.entries.find(expr);
  if (it == table.entries.end()) {
    throw UnsupportedBaseCase("genus-one table has no entry for " + expr.str());
  }
  QRat rest = QRat(it->second);
  mpq_class own = 0;
  for (const auto& [t, c] : decompose_a(expr)) {
    if (t == tuple) {
      own = c;
    } else {
      rest -= QRat(c) * u_value(t, 1, parity);
    }
  }
  if (own == 0) throw std::logic_error("general case missing from its own decomposition");
  return (rest / QRat(mpq_class(own))).as_poly();
}

const GenusOneTable& Engine::genus1_table() {
  std::lock_guard lock(mu_);
  if (table_) return *table_;
  if (!opts_.cache_dir.empty()) {
    const auto path = opts_.cache_dir / "genus1_table.json";
    std::ifstream in(path);
    if (in) {
      std::stringstream buf;
      buf << in.rdbuf();
      try {
        auto t = GenusOneTable::from_json(buf.str());
        if (t.max_weight >= opts_.genus1.max_weight) {
          table_ = std::make_unique<GenusOneTable>(std::move(t));
          return *table_;
        }
      } catch (const std::exception&) {
        // stale or foreign file; rebuild below
      }
    }
  }
  table_ = std::make_unique<GenusOneTable>(build_genus1_table(opts_.genus1));
  if (!opts_.cache_dir.empty()) {
    std::filesystem::create_directories(opts_.cache_dir);
    std::ofstream out(opts_.cache_dir / "genus1_table.json");
    out << table_->to_json() << "\n";
  }
  return *table_;
}

void Engine::set_genus1_table(GenusOneTable table) {
  std::lock_guard lock(mu_);
  table_ = std::make_unique<GenusOneTable>(std::move(table));
  // values derived from the previous table are no longer trustworthy
  series_.clear();
}

QPoly Engine::fixed_point_poly(int genus, std::span<const unsigned> cycle_type, Parity parity) {
  std::lock_guard lock(mu_);
  QRat total;
  for (const auto& [expr, coeff] : sigma_moment_poly(cycle_type)) {
    total += QRat(coeff) * a_value(expr, genus, parity);
  }
  if (!total.is_poly()) {
    throw VerificationFailure("fixed-point count at genus " + std::to_string(genus) + " is not a polynomial: " + total.str());
  }
  return total.as_poly();
}

}  // namespace hypcount
