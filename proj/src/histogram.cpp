#include <algorithm>
#include <chrono>

#include "hypcount/curve_lab.hpp"
#include "hypcount/errors.hpp"

namespace hypcount {

using kpoly::Elem;
using kpoly::Poly;

std::vector<mpz_class> extend_traces(std::span<const long long> first, int genus, std::uint64_t q, unsigned max_m) {
  if (genus < 0) throw std::invalid_argument("traces need genus >= 0");
  const unsigned g = static_cast<unsigned>(genus);
  if (first.size() < g) throw std::invalid_argument("need a_1..a_g");
  std::vector<mpz_class> s(std::max(max_m, g) + 1, 0);
  s[0] = 2 * g;
  for (unsigned m = 1; m <= g; ++m) s[m] = mpz_class(std::to_string(first[m - 1]));
  // elementary symmetric functions of the Frobenius eigenvalues
  std::vector<mpz_class> e(2 * g + 1, 0);
  e[0] = 1;
  for (unsigned k = 1; k <= g; ++k) {
    mpz_class acc = 0;
    for (unsigned i = 1; i <= k; ++i) acc += (i % 2 ? 1 : -1) * e[k - i] * s[i];
    e[k] = acc / k;
  }
  const mpz_class qz = static_cast<unsigned long>(q);
  for (unsigned k = 0; k < g; ++k) {
    mpz_class t;
    mpz_pow_ui(t.get_mpz_t(), qz.get_mpz_t(), g - k);
    e[2 * g - k] = t * e[k];
  }
  for (unsigned m = g + 1; m <= max_m; ++m) {
    mpz_class acc = 0;
    for (unsigned i = 1; i < m; ++i) {
      if (i <= 2 * g) acc += (i % 2 ? 1 : -1) * e[i] * s[m - i];
    }
    if (m <= 2 * g) acc += (m % 2 ? 1 : -1) * static_cast<long>(m) * e[m];
    s[m] = acc;
  }
  s.resize(max_m + 1);
  return s;
}

const TraceHistogram& CurveLab::trace_histogram(int genus) const {
  {
    std::lock_guard lock(mu_);
    auto it = histograms_.find(genus);
    if (it != histograms_.end()) return *it->second;
  }
  auto h = std::make_unique<TraceHistogram>(parity() == Parity::Odd ? build_odd_histogram(genus) : build_even_histogram(genus));
  std::lock_guard lock(mu_);
  auto [it, inserted] = histograms_.emplace(genus, std::move(h));
  return *it->second;
}

TraceHistogram CurveLab::build_odd_histogram(int genus) const {
  if (genus < 0) throw std::invalid_argument("odd histogram needs genus >= 0");
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t q = this->q();
  const unsigned g = static_cast<unsigned>(genus);
  const std::size_t len = 2 * g + 3;
  const FiniteField& k = base();
  std::vector<const Extension*> exts;
  std::vector<const std::vector<signed char>*> chis;
  for (unsigned m = 1; m <= g; ++m) {
    exts.push_back(&tower_.ext(m));
    chis.push_back(&symbol_table(m));
  }
  std::uint64_t monic_total = 0;
  {
    std::uint64_t a = 1;
    for (std::size_t i = 0; i + 1 < len; ++i) a *= q;
    monic_total = a + a / q;
  }
  check_curve_budget(monic_total);

  // Monic f of degree 2g+2 (family 0) and 2g+1 (family 1); every member of
  // P_g is a nonzero scalar times one of these.
  struct Family {
    std::size_t free;  // coefficients 0..free-1 vary
  };
  const Family families[2] = {{len - 1}, {len - 2}};
  const unsigned workers = std::max(budget_.jobs, 1u);
  std::vector<std::map<std::vector<long long>, std::uint64_t>> parts(workers);
  std::vector<std::uint64_t> visited(workers, 0);
  const std::uint64_t shards_per_family = q;
  run_sharded(2 * shards_per_family, budget_.jobs, [&](unsigned w, std::uint64_t shard) {
    const Family fam = families[shard / shards_per_family];
    const Elem top_value = static_cast<Elem>(shard % shards_per_family);
    Poly f(len, 0);
    f[fam.free] = 1;
    std::size_t odo_len = 0;  // odometer over coefficients 1..odo_len
    if (fam.free >= 2) {
      f[fam.free - 1] = top_value;
      odo_len = fam.free - 2;
    } else if (top_value != 0) {
      return;  // only c_0 varies; a single shard covers it
    }
    std::vector<std::vector<Elem>> partial(g);
    std::vector<long long> key(g);
    std::vector<int> inf(g);
    auto advance = [&]() {
      for (std::size_t i = 1; i <= odo_len; ++i) {
        if (++f[i] < q) return true;
        f[i] = 0;
      }
      return false;
    };
    do {
      for (unsigned m = 0; m < g; ++m) {
        const Extension& e = *exts[m];
        const FiniteField& km = e.field;
        partial[m].resize(km.size());
        inf[m] = (*chis[m])[e.embed(f[len - 1])];
        for (std::uint64_t x = 0; x < km.size(); ++x) {
          const Elem xe = static_cast<Elem>(x);
          Elem v = 0;
          for (std::size_t i = len; i-- > 1;) v = km.add(km.mul(v, xe), e.embed(f[i]));
          partial[m][x] = km.mul(v, xe);
        }
      }
      for (std::uint64_t c0 = 0; c0 < q; ++c0) {
        f[0] = static_cast<Elem>(c0);
        ++visited[w];
        Poly t = f;
        kpoly::trim(t);
        if (!kpoly::square_free(k, t)) continue;
        for (unsigned m = 0; m < g; ++m) {
          const Extension& e = *exts[m];
          const FiniteField& km = e.field;
          const auto& chi = *chis[m];
          const Elem c0e = e.embed(f[0]);
          long long s = inf[m];
          for (const Elem v : partial[m]) s += chi[km.add(v, c0e)];
          key[m] = -s;
        }
        ++parts[w][key];
      }
      f[0] = 0;
    } while (advance());
  });

  TraceHistogram hist;
  hist.genus = genus;
  const mpz_class half = static_cast<unsigned long>((q - 1) / 2);
  for (unsigned w = 0; w < workers; ++w) {
    hist.enumerated += visited[w];
    for (const auto& [key, n] : parts[w]) {
      // scaling by a nonsquare flips the sign of every odd-index trace
      std::vector<long long> flipped = key;
      for (unsigned m = 0; m < g; m += 2) flipped[m] = -flipped[m];
      const mpz_class c = half * static_cast<unsigned long>(n);
      hist.counts[key] += c;
      hist.counts[flipped] += c;
      hist.curves += 2 * c;
    }
  }
  hist.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return hist;
}

TraceHistogram CurveLab::build_even_histogram(int genus) const {
  if (genus < 0) throw std::invalid_argument("even histogram needs genus >= 0");
  const auto start = std::chrono::steady_clock::now();
  const unsigned g = static_cast<unsigned>(genus);
  std::vector<const Extension*> exts;
  std::vector<const std::vector<signed char>*> trs;
  for (unsigned m = 1; m <= g; ++m) {
    exts.push_back(&tower_.ext(m));
    trs.push_back(&symbol_table(m));
  }
  const unsigned workers = std::max(budget_.jobs, 1u);
  std::vector<std::map<std::vector<long long>, std::uint64_t>> parts(workers);
  for_each_even(genus, [&](unsigned w, const EvenCurve& c) {
    std::vector<long long> key(g);
    for (unsigned m = 0; m < g; ++m) {
      const Extension& e = *exts[m];
      const FiniteField& km = e.field;
      const auto& tr = *trs[m];
      auto tau = [&](Elem a, Elem b) -> int {
        if (a == 0) return 0;
        return tr[km.div(b, km.mul(a, a))] ? -1 : 1;
      };
      long long s = tau(e.embed(c.h.back()), e.embed(c.f.back()));
      for (std::uint64_t x = 0; x < km.size(); ++x) {
        const Elem xe = static_cast<Elem>(x);
        Elem hv = 0, fv = 0;
        for (std::size_t i = c.h.size(); i-- > 0;) hv = km.add(km.mul(hv, xe), e.embed(c.h[i]));
        for (std::size_t i = c.f.size(); i-- > 0;) fv = km.add(km.mul(fv, xe), e.embed(c.f[i]));
        s += tau(hv, fv);
      }
      key[m] = -s;
    }
    ++parts[w][key];
  });
  TraceHistogram hist;
  hist.genus = genus;
  const std::uint64_t q = this->q();
  std::uint64_t hcount = 1;
  for (unsigned i = 0; i < g + 2; ++i) hcount *= q;
  std::uint64_t fcount = 1;
  for (unsigned i = 0; i < 2 * g + 3; ++i) fcount *= q;
  hist.enumerated = (hcount - 1) * fcount;
  for (const auto& p : parts) {
    for (const auto& [key, n] : p) {
      hist.counts[key] += static_cast<unsigned long>(n);
      hist.curves += static_cast<unsigned long>(n);
    }
  }
  hist.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return hist;
}

mpq_class CurveLab::brute_a(const AExpr& expr, int genus) const {
  const auto& hist = trace_histogram(genus);
  unsigned max_n = 0;
  for (const auto& [n, r] : expr.powers()) max_n = std::max(max_n, n);
  mpz_class total = 0;
  for (const auto& [key, count] : hist.counts) {
    const auto a = extend_traces(key, genus, q(), max_n);
    mpz_class prod = count;
    for (const auto& [n, r] : expr.powers()) {
      mpz_class t;
      mpz_pow_ui(t.get_mpz_t(), a[n].get_mpz_t(), r);
      prod *= t;
    }
    total += prod;
  }
  return group_inverse(genus) * total;
}

mpq_class CurveLab::brute_fixed_points(int genus, std::span<const unsigned> cycle_type) const {
  const auto& hist = trace_histogram(genus);
  std::map<unsigned, unsigned> mult;
  unsigned max_n = 0;
  for (unsigned n : cycle_type) {
    ++mult[n];
    max_n = std::max(max_n, n);
  }
  const mpz_class qz = static_cast<unsigned long>(q());
  mpz_class total = 0;
  for (const auto& [key, count] : hist.counts) {
    const auto a = extend_traces(key, genus, q(), max_n);
    std::vector<mpz_class> points(max_n + 1);
    for (unsigned d = 1; d <= max_n; ++d) {
      mpz_class qd;
      mpz_pow_ui(qd.get_mpz_t(), qz.get_mpz_t(), d);
      points[d] = 1 + qd - a[d];
    }
    mpz_class prod = count;
    for (const auto& [n, r] : mult) {
      mpz_class exact = 0;  // points of exact degree n
      for (unsigned d : divisors(n)) exact += moebius(n / d) * points[d];
      for (unsigned j = 0; j < r; ++j) prod *= exact - static_cast<long>(j * n);
    }
    total += prod;
  }
  return group_inverse(genus) * total;
}

}  // namespace hypcount
