#include "hypcount/curve_lab.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "hypcount/errors.hpp"

namespace hypcount {

using kpoly::Elem;
using kpoly::Poly;

std::string to_string(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

Parity parse_parity(const std::string& text) {
  if (text == "odd") return Parity::Odd;
  if (text == "even") return Parity::Even;
  throw ParseError("parity must be 'odd' or 'even', got '" + text + "'");
}

void run_sharded(std::uint64_t shards, unsigned jobs,
                 const std::function<void(unsigned worker, std::uint64_t shard)>& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(jobs, 1u), std::max<std::uint64_t>(shards, 1)));
  if (workers <= 1) {
    for (std::uint64_t s = 0; s < shards; ++s) fn(0, s);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t s = next++; s < shards; s = next++) fn(w, s);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = shards;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

Elem eval_embedded(const Extension& e, const Poly& p, Elem x) {
  const FiniteField& k = e.field;
  Elem v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = k.add(k.mul(v, x), e.embed(p[i]));
  return v;
}

int tau_from_table(const FiniteField& k, const std::vector<signed char>& tr, Elem a, Elem b) {
  if (a == 0) return 0;
  return tr[k.div(b, k.mul(a, a))] ? -1 : 1;
}

// Advances the low `len` coefficients of p as a base-q odometer; false on wrap.
bool odometer(Poly& p, std::size_t len, std::uint64_t q) {
  for (std::size_t i = 0; i < len; ++i) {
    if (++p[i] < q) return true;
    p[i] = 0;
  }
  return false;
}

}  // namespace

CurveLab::CurveLab(std::uint64_t q, LabBudget budget)
    : tower_(PrimePower::from_q(q), budget.max_points), budget_(budget) {}

mpq_class CurveLab::group_inverse(int genus) const {
  const mpz_class q = static_cast<unsigned long>(this->q());
  mpz_class order = (q * q * q - q) * (q - 1);
  if (parity() == Parity::Even) {
    mpz_class t;
    mpz_pow_ui(t.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(genus + 2));
    order *= t;
  }
  return mpq_class(1, order);
}

void CurveLab::check_curve_budget(std::uint64_t n) const {
  if (n > budget_.max_curves) {
    throw BudgetExceeded("enumeration of " + std::to_string(n) + " polynomials exceeds the curve budget of " +
                         std::to_string(budget_.max_curves));
  }
}

const std::vector<signed char>& CurveLab::symbol_table(unsigned m) const {
  const Extension& e = tower_.ext(m);
  std::lock_guard lock(mu_);
  auto it = symbols_.find(m);
  if (it != symbols_.end()) return *it->second;
  const FiniteField& k = e.field;
  auto table = std::make_unique<std::vector<signed char>>(k.size(), 0);
  if (parity() == Parity::Odd) {
    for (std::uint64_t y = 1; y < k.size(); ++y) {
      const Elem s = k.mul(static_cast<Elem>(y), static_cast<Elem>(y));
      (*table)[s] = 1;
    }
    for (std::uint64_t x = 1; x < k.size(); ++x) {
      if ((*table)[x] == 0) (*table)[x] = -1;
    }
  } else {
    for (std::uint64_t x = 0; x < k.size(); ++x) (*table)[x] = static_cast<signed char>(k.absolute_trace(static_cast<Elem>(x)));
  }
  const auto& ref = *table;
  symbols_.emplace(m, std::move(table));
  return ref;
}

bool CurveLab::in_Pg(const OddCurve& c) const {
  const std::size_t len = static_cast<std::size_t>(2 * c.genus + 3);
  if (c.genus < 0 || c.f.size() != len) return false;
  if (c.f[len - 1] == 0 && c.f[len - 2] == 0) return false;
  Poly f = c.f;
  kpoly::trim(f);
  return kpoly::square_free(base(), f);
}

bool CurveLab::in_Pg(const EvenCurve& c) const {
  const int g = c.genus;
  const FiniteField& k = base();
  if (g < -1 || c.h.size() != static_cast<std::size_t>(g + 2) || c.f.size() != static_cast<std::size_t>(2 * g + 3)) return false;
  Poly h = c.h, f = c.f;
  kpoly::trim(h);
  kpoly::trim(f);
  if (h.empty()) return false;
  if (kpoly::degree(h) != g + 1 && kpoly::degree(f) < 2 * g + 1) return false;
  auto singular_part = [&](const Poly& hh, const Poly& ff) {
    const Poly fd = kpoly::derivative(k, ff), hd = kpoly::derivative(k, hh);
    return kpoly::add(k, kpoly::mul(k, fd, fd), kpoly::mul(k, ff, kpoly::mul(k, hd, hd)));
  };
  if (kpoly::degree(kpoly::gcd(k, h, singular_part(h, f))) != 0) return false;
  Poly h_inf(c.h.rbegin(), c.h.rend()), f_inf(c.f.rbegin(), c.f.rend());
  const Elem h0 = kpoly::coeff(h_inf, 0);
  kpoly::trim(h_inf);
  kpoly::trim(f_inf);
  const Poly d = singular_part(h_inf, f_inf);
  return !(h0 == 0 && kpoly::coeff(d, 0) == 0);
}

void CurveLab::for_each_odd(int genus, const std::function<void(unsigned, const OddCurve&)>& fn) const {
  if (genus < 0) throw std::invalid_argument("odd enumeration needs genus >= 0");
  const std::uint64_t q = this->q();
  const std::size_t len = static_cast<std::size_t>(2 * genus + 3);
  const std::uint64_t inner = ipow(q, static_cast<unsigned>(len - 2));
  check_curve_budget((q * q - 1) * inner);
  run_sharded(q * q, budget_.jobs, [&](unsigned worker, std::uint64_t shard) {
    if (shard == 0) return;
    OddCurve c{genus, Poly(len, 0)};
    c.f[len - 1] = static_cast<Elem>(shard / q);
    c.f[len - 2] = static_cast<Elem>(shard % q);
    do {
      if (in_Pg(c)) fn(worker, c);
    } while (odometer(c.f, len - 2, q));
  });
}

void CurveLab::for_each_even(int genus, const std::function<void(unsigned, const EvenCurve&)>& fn) const {
  if (genus < -1) throw std::invalid_argument("even enumeration needs genus >= -1");
  const std::uint64_t q = this->q();
  const std::size_t hlen = static_cast<std::size_t>(genus + 2), flen = static_cast<std::size_t>(2 * genus + 3);
  const std::uint64_t hcount = ipow(q, static_cast<unsigned>(hlen));
  check_curve_budget((hcount - 1) * ipow(q, static_cast<unsigned>(flen)));
  run_sharded(hcount, budget_.jobs, [&](unsigned worker, std::uint64_t shard) {
    if (shard == 0) return;
    EvenCurve c{genus, Poly(hlen, 0), Poly(flen, 0)};
    std::uint64_t s = shard;
    for (std::size_t i = 0; i < hlen; ++i) {
      c.h[i] = static_cast<Elem>(s % q);
      s /= q;
    }
    do {
      if (in_Pg(c)) fn(worker, c);
    } while (odometer(c.f, flen, q));
  });
}

std::uint64_t CurveLab::count_Pg(int genus) const {
  std::vector<std::uint64_t> counts(std::max(budget_.jobs, 1u), 0);
  if (parity() == Parity::Odd) {
    for_each_odd(genus, [&](unsigned w, const OddCurve&) { ++counts[w]; });
  } else {
    for_each_even(genus, [&](unsigned w, const EvenCurve&) { ++counts[w]; });
  }
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

std::vector<OddCurve> CurveLab::enumerate_odd(int genus) const {
  if (parity() != Parity::Odd) throw std::domain_error("odd representatives need odd characteristic");
  std::vector<std::vector<OddCurve>> parts(std::max(budget_.jobs, 1u));
  for_each_odd(genus, [&](unsigned w, const OddCurve& c) { parts[w].push_back(c); });
  std::vector<OddCurve> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end(), [](const OddCurve& a, const OddCurve& b) { return a.f < b.f; });
  return out;
}

std::vector<EvenCurve> CurveLab::enumerate_even(int genus) const {
  if (parity() != Parity::Even) throw std::domain_error("even representatives need characteristic two");
  std::vector<std::vector<EvenCurve>> parts(std::max(budget_.jobs, 1u));
  for_each_even(genus, [&](unsigned w, const EvenCurve& c) { parts[w].push_back(c); });
  std::vector<EvenCurve> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end(), [](const EvenCurve& a, const EvenCurve& b) {
    return std::tie(a.h, a.f) < std::tie(b.h, b.f);
  });
  return out;
}

long long CurveLab::trace(const OddCurve& c, unsigned m) const {
  const Extension& e = tower_.ext(m);
  const auto& chi = symbol_table(m);
  long long s = chi[e.embed(c.f.back())];
  for (std::uint64_t x = 0; x < e.field.size(); ++x) s += chi[eval_embedded(e, c.f, static_cast<Elem>(x))];
  return -s;
}

long long CurveLab::trace(const EvenCurve& c, unsigned m) const {
  const Extension& e = tower_.ext(m);
  const auto& tr = symbol_table(m);
  long long s = tau_from_table(e.field, tr, e.embed(c.h.back()), e.embed(c.f.back()));
  for (std::uint64_t x = 0; x < e.field.size(); ++x) {
    const Elem xe = static_cast<Elem>(x);
    s += tau_from_table(e.field, tr, eval_embedded(e, c.h, xe), eval_embedded(e, c.f, xe));
  }
  return -s;
}

long long CurveLab::count_points(const OddCurve& c, unsigned m) const {
  const Extension& e = tower_.ext(m);
  const FiniteField& k = e.field;
  std::vector<long long> roots(k.size(), 0);  // #{y : y^2 = v}
  for (std::uint64_t y = 0; y < k.size(); ++y) ++roots[k.mul(static_cast<Elem>(y), static_cast<Elem>(y))];
  long long n = roots[e.embed(c.f.back())];
  for (std::uint64_t x = 0; x < k.size(); ++x) n += roots[eval_embedded(e, c.f, static_cast<Elem>(x))];
  return n;
}

long long CurveLab::count_points(const EvenCurve& c, unsigned m) const {
  const Extension& e = tower_.ext(m);
  const FiniteField& k = e.field;
  auto solutions = [&](Elem a, Elem b) {
    long long n = 0;
    for (std::uint64_t y = 0; y < k.size(); ++y) {
      const Elem ye = static_cast<Elem>(y);
      if (k.add(k.add(k.mul(ye, ye), k.mul(a, ye)), b) == 0) ++n;
    }
    return n;
  };
  long long n = solutions(e.embed(c.h.back()), e.embed(c.f.back()));
  for (std::uint64_t x = 0; x < k.size(); ++x) {
    const Elem xe = static_cast<Elem>(x);
    n += solutions(eval_embedded(e, c.h, xe), eval_embedded(e, c.f, xe));
  }
  return n;
}

mpq_class CurveLab::brute_u(const UTuple& tuple, int genus) const {
  const auto degrees = tuple.degrees();
  const auto tuples = enumerate_A(tower_, degrees, budget_.max_points);
  std::vector<unsigned> distinct = degrees;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  // alpha as point indices: 0 is infinity, x + 1 is the element x
  std::vector<std::vector<std::size_t>> alphas;
  alphas.reserve(tuples.size());
  for (const auto& t : tuples) {
    std::vector<std::size_t> idx;
    for (const auto& pt : t) idx.push_back(pt.at_infinity ? 0 : std::size_t{pt.value} + 1);
    alphas.push_back(std::move(idx));
  }
  std::vector<const Extension*> exts;
  std::vector<const std::vector<signed char>*> tables;
  for (unsigned n : distinct) {
    exts.push_back(&tower_.ext(n));
    tables.push_back(&symbol_table(n));
  }
  std::vector<std::size_t> slot_ext;
  for (unsigned n : degrees) slot_ext.push_back(static_cast<std::size_t>(std::find(distinct.begin(), distinct.end(), n) - distinct.begin()));

  const unsigned workers = std::max(budget_.jobs, 1u);
  std::vector<long long> sums(workers, 0);
  std::vector<std::uint64_t> visited(workers, 0);
  auto accumulate = [&](unsigned w, const std::vector<std::vector<signed char>>& vals) {
    long long s = 0;
    for (const auto& a : alphas) {
      long long prod = 1;
      for (std::size_t i = 0; i < a.size() && prod; ++i) {
        const int v = vals[slot_ext[i]][a[i]];
        prod *= tuple.slots()[i].r == 2 ? v * v : v;
      }
      s += prod;
    }
    sums[w] += s;
    ++visited[w];
  };
  if (parity() == Parity::Odd) {
    for_each_odd(genus, [&](unsigned w, const OddCurve& c) {
      std::vector<std::vector<signed char>> vals(exts.size());
      for (std::size_t j = 0; j < exts.size(); ++j) {
        const Extension& e = *exts[j];
        const auto& chi = *tables[j];
        vals[j].resize(e.field.size() + 1);
        vals[j][0] = chi[e.embed(c.f.back())];
        for (std::uint64_t x = 0; x < e.field.size(); ++x) vals[j][x + 1] = chi[eval_embedded(e, c.f, static_cast<Elem>(x))];
      }
      accumulate(w, vals);
    });
  } else {
    for_each_even(genus, [&](unsigned w, const EvenCurve& c) {
      std::vector<std::vector<signed char>> vals(exts.size());
      for (std::size_t j = 0; j < exts.size(); ++j) {
        const Extension& e = *exts[j];
        const auto& tr = *tables[j];
        vals[j].resize(e.field.size() + 1);
        vals[j][0] = static_cast<signed char>(tau_from_table(e.field, tr, e.embed(c.h.back()), e.embed(c.f.back())));
        for (std::uint64_t x = 0; x < e.field.size(); ++x) {
          const Elem xe = static_cast<Elem>(x);
          vals[j][x + 1] = static_cast<signed char>(tau_from_table(e.field, tr, eval_embedded(e, c.h, xe), eval_embedded(e, c.f, xe)));
        }
      }
      accumulate(w, vals);
    });
  }
  mpz_class total = 0;
  std::uint64_t n = 0;
  for (unsigned w = 0; w < workers; ++w) {
    total += mpz_class(std::to_string(sums[w]));
    n += visited[w];
  }
  last_enumerated_ = n;
  return group_inverse(genus) * total;
}

const std::map<std::vector<long long>, mpz_class>& CurveLab::bc_histogram(int genus, unsigned max_index) const {
  {
    std::lock_guard lock(mu_);
    auto it = bc_histograms_.find({genus, max_index});
    if (it != bc_histograms_.end()) return *it->second;
  }
  std::vector<const Extension*> exts;
  std::vector<const std::vector<signed char>*> tables;
  std::vector<std::vector<std::size_t>> exact;  // point indices of exact degree i
  for (unsigned i = 1; i <= max_index; ++i) {
    exts.push_back(&tower_.ext(i));
    tables.push_back(&symbol_table(i));
    std::vector<std::size_t> idx;
    const auto& pts = tower_.points(i);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (pts[j].exact_degree == i) idx.push_back(j);
    }
    exact.push_back(std::move(idx));
  }
  const unsigned workers = std::max(budget_.jobs, 1u);
  std::vector<std::map<std::vector<long long>, std::uint64_t>> parts(workers);
  std::uint64_t visited = 0;
  // key: b_1..b_M then c_1..c_M
  auto record = [&](unsigned w, const std::function<int(std::size_t, std::size_t)>& value) {
    std::vector<long long> key(2 * max_index, 0);
    for (std::size_t i = 0; i < max_index; ++i) {
      for (std::size_t j : exact[i]) {
        const int v = value(i, j);
        if (v == 1) ++key[i];
        if (v == -1) ++key[max_index + i];
      }
    }
    ++parts[w][key];
  };
  if (parity() == Parity::Odd) {
    for_each_odd(genus, [&](unsigned w, const OddCurve& c) {
      record(w, [&](std::size_t i, std::size_t j) -> int {
        const Extension& e = *exts[i];
        const Elem v = j == 0 ? e.embed(c.f.back()) : eval_embedded(e, c.f, static_cast<Elem>(j - 1));
        return (*tables[i])[v];
      });
    });
  } else {
    for_each_even(genus, [&](unsigned w, const EvenCurve& c) {
      record(w, [&](std::size_t i, std::size_t j) -> int {
        const Extension& e = *exts[i];
        if (j == 0) return tau_from_table(e.field, *tables[i], e.embed(c.h.back()), e.embed(c.f.back()));
        const Elem x = static_cast<Elem>(j - 1);
        return tau_from_table(e.field, *tables[i], eval_embedded(e, c.h, x), eval_embedded(e, c.f, x));
      });
    });
  }
  auto merged = std::make_unique<std::map<std::vector<long long>, mpz_class>>();
  for (const auto& p : parts) {
    for (const auto& [key, n] : p) {
      (*merged)[key] += static_cast<unsigned long>(n);
      visited += n;
    }
  }
  std::lock_guard lock(mu_);
  last_enumerated_ = visited;
  auto [it, inserted] = bc_histograms_.emplace(std::make_pair(genus, max_index), std::move(merged));
  return *it->second;
}

mpq_class CurveLab::brute_bc(const BCExpr& expr, int genus) const {
  unsigned max_index = 0;
  for (const auto& [n, r] : expr.b()) max_index = std::max(max_index, n);
  for (const auto& [n, r] : expr.c()) max_index = std::max(max_index, n);
  const auto& hist = bc_histogram(genus, max_index);
  mpz_class total = 0;
  for (const auto& [key, count] : hist) {
    mpz_class prod = count;
    for (const auto& [n, r] : expr.b()) {
      mpz_class t;
      mpz_pow_ui(t.get_mpz_t(), mpz_class(static_cast<long>(key[n - 1])).get_mpz_t(), r);
      prod *= t;
    }
    for (const auto& [n, r] : expr.c()) {
      mpz_class t;
      mpz_pow_ui(t.get_mpz_t(), mpz_class(static_cast<long>(key[max_index + n - 1])).get_mpz_t(), r);
      prod *= t;
    }
    total += prod;
  }
  return group_inverse(genus) * total;
}

}  // namespace hypcount
