#include <numeric>

#include "hypcount/engine.hpp"
#include "hypcount/errors.hpp"

namespace hypcount {

namespace {

// cp(q^2) as a polynomial in q.
QPoly at_q_squared(const LambdaPoly& cp) {
  QPoly out;
  for (std::size_t k = 0; k < cp.size(); ++k) {
    if (cp[k] != 0) out += QPoly::monomial(mpq_class(static_cast<long>(cp[k])), static_cast<unsigned>(2 * k));
  }
  return out;
}

QRat q_power(long e) {
  if (e >= 0) return QRat(QPoly::q_pow(static_cast<unsigned>(e)));
  return QRat(QPoly(1), QPoly::q_pow(static_cast<unsigned>(-e)));
}

unsigned period_of(const std::vector<unsigned>& parts) {
  unsigned p = 1;
  for (unsigned n : parts) p = std::lcm(p, n);
  return p;
}

}  // namespace

bool recursion_certificate(const std::function<QRat(int)>& value, const LambdaPoly& cp, int from, int count) {
  // e(lambda) = cp(lambda) (lambda - q^2)
  const std::size_t d = cp.size();  // degree of e
  std::vector<QPoly> e(d + 1);
  for (std::size_t k = 0; k <= d; ++k) {
    if (k >= 1) e[k] += QPoly(cp[k - 1]);
    if (k < d) e[k] -= QPoly::monomial(mpq_class(static_cast<long>(cp[k])), 2);
  }
  for (int g = from; g < from + count; ++g) {
    QRat acc;
    for (std::size_t i = 0; i <= d; ++i) {
      const QPoly& c = e[d - i];
      if (!c.is_zero()) acc += QRat(c) * value(g - static_cast<int>(i));
    }
    if (!acc.is_zero()) return false;
  }
  return true;
}

ClosedForm Engine::fit(const std::function<QRat(int)>& value, const LambdaPoly& cp, unsigned period, int g_fit,
                       const std::string& label) {
  const int d = static_cast<int>(cp.size()) - 1;
  const unsigned mult = max_root_multiplicity(cp);
  ClosedForm cf;
  cf.period = period;
  cf.g_min = g_fit;

  // the char-poly operator kills the periodic part and scales the geometric one
  const int g0 = g_fit + d;
  QRat window;
  for (int i = 0; i <= d; ++i) {
    const long c = static_cast<long>(cp[static_cast<std::size_t>(d - i)]);
    if (c != 0) window += QRat(c) * value(g0 - i);
  }
  cf.geometric = window / (q_power(2L * (g0 - d)) * QRat(at_q_squared(cp)));

  auto geometric_at = [&](long g) { return cf.geometric.is_zero() ? QRat() : cf.geometric * q_power(2 * g); };

  int g_last = g_fit;
  cf.residue_polys.assign(period, {});
  if (mult > 0) {
    for (unsigned r = 0; r < period; ++r) {
      int g = g_fit;
      while (((g % static_cast<int>(period)) + static_cast<int>(period)) % static_cast<int>(period) != static_cast<int>(r)) ++g;
      std::vector<std::vector<QRat>> matrix;
      std::vector<QRat> rhs;
      for (unsigned k = 0; k < mult; ++k, g += static_cast<int>(period)) {
        std::vector<QRat> row;
        mpq_class gk = 1;
        for (unsigned j = 0; j < mult; ++j, gk *= g) row.emplace_back(gk);
        matrix.push_back(std::move(row));
        rhs.push_back(value(g) - geometric_at(g));
        g_last = std::max(g_last, g);
      }
      cf.residue_polys[r] = solve_linear(std::move(matrix), std::move(rhs));
    }
  }

  for (int g = g_fit; g <= g_last + 30; ++g) {
    if (!(cf.eval(g) == value(g))) {
      throw VerificationFailure("closed form of " + label + " disagrees with the recursion at genus " + std::to_string(g));
    }
  }
  // the form often holds below the fitting threshold as well
  while (cf.g_min > -1) {
    const int g = cf.g_min - 1;
    try {
      ClosedForm probe = cf;
      probe.g_min = g;
      if (!(probe.eval(g) == value(g))) break;
    } catch (const UnsupportedBaseCase&) {
      break;
    }
    cf.g_min = g;
  }
  return cf;
}

ClosedForm Engine::closed_form(const AExpr& expr, Parity parity) {
  std::lock_guard lock(mu_);
  std::vector<unsigned> parts;
  for (const auto& [n, r] : expr.powers()) parts.push_back(n);
  return fit([&](int g) { return a_value(expr, g, parity); }, char_poly(expr), period_of(parts),
             static_cast<int>(expr.weight()) + 1, expr.str());
}

ClosedForm Engine::closed_form(const UTuple& tuple, Parity parity) {
  std::lock_guard lock(mu_);
  return fit([&](int g) { return u_value(tuple, g, parity); }, char_poly(tuple), period_of(tuple.degrees()),
             static_cast<int>(tuple.degree()) + 1, "u" + tuple.str());
}

}  // namespace hypcount
