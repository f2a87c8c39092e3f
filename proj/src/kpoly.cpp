#include "hypcount/kpoly.hpp"

#include <algorithm>

namespace hypcount::kpoly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

Poly add(const FiniteField& k, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = k.add(coeff(a, i), coeff(b, i));
  trim(r);
  return r;
}

Poly mul(const FiniteField& k, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

Poly scale(const FiniteField& k, const Poly& a, Elem c) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.mul(a[i], c);
  trim(r);
  return r;
}

Poly derivative(const FiniteField& k, const Poly& a) {
  Poly r;
  for (std::size_t i = 1; i < a.size(); ++i) {
    r.push_back(k.mul(a[i], k.from_int(static_cast<std::int64_t>(i % k.characteristic()))));
  }
  trim(r);
  return r;
}

Poly mod(const FiniteField& k, Poly a, const Poly& b) {
  const int db = degree(b);
  trim(a);
  const Elem inv_lead = k.inv(b[db]);
  while (degree(a) >= db) {
    const int da = degree(a);
    const Elem f = k.mul(a[da], inv_lead);
    const std::size_t shift = static_cast<std::size_t>(da - db);
    for (int i = 0; i <= db; ++i) a[shift + i] = k.sub(a[shift + i], k.mul(f, b[i]));
    trim(a);
  }
  return a;
}

Poly gcd(const FiniteField& k, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(k, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) a = scale(k, a, k.inv(a.back()));
  return a;
}

bool divides(const FiniteField& k, const Poly& d, const Poly& a) { return mod(k, a, d).empty(); }

bool square_free(const FiniteField& k, const Poly& f) {
  if (degree(f) <= 0) return true;
  return degree(gcd(k, f, derivative(k, f))) == 0;
}

bool irreducible(const FiniteField& k, const Poly& f) {
  const int d = degree(f);
  if (d <= 0) return false;
  for (int e = 1; e <= d / 2; ++e) {
    for (const auto& m : monic_of_degree(k, static_cast<unsigned>(e))) {
      if (divides(k, m, f)) return false;
    }
  }
  return true;
}

std::vector<Poly> all_of_length(const FiniteField& k, unsigned len) {
  std::vector<Poly> out;
  std::uint64_t total = 1;
  for (unsigned i = 0; i < len; ++i) total *= k.size();
  out.reserve(total);
  for (std::uint64_t code = 0; code < total; ++code) {
    Poly p(len);
    std::uint64_t c = code;
    for (unsigned i = 0; i < len; ++i) {
      p[i] = static_cast<Elem>(c % k.size());
      c /= k.size();
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Poly> monic_of_degree(const FiniteField& k, unsigned d) {
  auto out = all_of_length(k, d);
  for (auto& p : out) p.push_back(1);
  return out;
}

}  // namespace hypcount::kpoly
