#include <set>
#include <utility>

#include "hypcount/errors.hpp"
#include "hypcount/qpoly.hpp"

namespace hypcount {

std::vector<QRat> solve_linear(std::vector<std::vector<QRat>> m, std::vector<QRat> rhs) {
  const std::size_t n = m.size();
  if (rhs.size() != n) throw std::invalid_argument("right-hand side has the wrong length");
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("matrix is not square");
  }
  QRat prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) throw SingularSystem("singular linear system");
    if (piv != k) {
      std::swap(m[piv], m[k]);
      std::swap(rhs[piv], rhs[k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      }
      rhs[i] = (m[k][k] * rhs[i] - m[i][k] * rhs[k]) / prev;
      m[i][k] = QRat();
    }
    prev = m[k][k];
  }
  std::vector<QRat> x(n);
  for (std::size_t i = n; i-- > 0;) {
    QRat acc = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!m[i][j].is_zero()) acc -= m[i][j] * x[j];
    }
    x[i] = acc / m[i][i];
  }
  return x;
}

QPoly interpolate_poly(const std::vector<QSample>& samples, unsigned degree_bound,
                       unsigned validation_count) {
  const std::size_t fit = std::size_t{degree_bound} + 1;
  if (samples.size() < fit + validation_count) {
    throw InterpolationError("need at least " + std::to_string(fit + validation_count) + " samples, got " +
                             std::to_string(samples.size()));
  }
  std::set<mpq_class> seen;
  for (const auto& s : samples) {
    if (!seen.insert(s.x).second) throw InterpolationError("repeated sample abscissa " + s.x.get_str());
  }
  // Newton divided differences on the fitting samples.
  std::vector<mpq_class> dd(fit);
  for (std::size_t i = 0; i < fit; ++i) dd[i] = samples[i].y;
  for (std::size_t level = 1; level < fit; ++level) {
    for (std::size_t i = fit - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (samples[i].x - samples[i - level].x);
    }
  }
  QPoly result = QPoly(dd[fit - 1]);
  for (std::size_t i = fit - 1; i-- > 0;) {
    result = result * (QPoly::q() - QPoly(samples[i].x)) + QPoly(dd[i]);
  }
  for (std::size_t i = fit; i < samples.size(); ++i) {
    if (result.eval(samples[i].x) != samples[i].y) {
      throw InterpolationError("interpolant of degree <= " + std::to_string(degree_bound) + " misses held-out sample at q=" +
                               samples[i].x.get_str());
    }
  }
  return result;
}

}  // namespace hypcount
