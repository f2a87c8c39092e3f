#include "hypcount/field.hpp"

#include <algorithm>
#include <string>

#include "hypcount/errors.hpp"

namespace hypcount {
namespace {

using Poly = std::vector<std::uint32_t>;  // over GF(p), low to high

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  // m is monic
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * m[i]) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(r), m, p);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic, then a mod b
    const std::uint32_t li = inv_mod(b.back(), p);
    for (auto& c : b) c = static_cast<std::uint32_t>(std::uint64_t{c} * li % p);
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// x^(p^i) mod m by repeated p-th powers.
Poly frobenius_power_of_x(const Poly& m, std::uint32_t p, unsigned i) {
  Poly x = poly_mod(Poly{0, 1}, m, p);
  for (unsigned step = 0; step < i; ++step) {
    Poly result{1};
    Poly base = x;
    std::uint32_t e = p;
    while (e) {
      if (e & 1) result = poly_mulmod(result, base, m, p);
      base = poly_mulmod(base, base, m, p);
      e >>= 1;
    }
    x = result;
  }
  return x;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const unsigned d = static_cast<unsigned>(f.size() - 1);
  if (d == 1) return true;
  if (f[0] == 0) return false;
  for (unsigned i = 1; i <= d / 2; ++i) {
    Poly t = frobenius_power_of_x(f, p, i);
    t.resize(std::max<std::size_t>(t.size(), 2), 0);
    t[1] = (t[1] + p - 1) % p;  // x^(p^i) - x
    trim(t);
    if (t.empty()) return false;
    if (poly_gcd(f, t, p).size() > 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

PrimePower PrimePower::from_q(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("field size must be a prime power >= 2");
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  std::uint64_t n = q;
  std::uint32_t k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1) throw std::invalid_argument("not a prime power: " + std::to_string(q));
  return PrimePower{static_cast<std::uint32_t>(p), k, q};
}

std::vector<std::uint32_t> lowest_irreducible(std::uint32_t p, std::uint32_t degree) {
  if (degree == 0) throw std::invalid_argument("irreducible of degree zero");
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < degree; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly f(degree + 1, 0);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < degree; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    f[degree] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t degree) : p_(p), degree_(degree) {
  if (p < 2 || degree == 0) throw std::invalid_argument("invalid field parameters");
  size_ = 1;
  for (std::uint32_t i = 0; i < degree; ++i) {
    size_ *= p;
    if (size_ > (std::uint64_t{1} << 31)) throw std::invalid_argument("field too large");
  }
  modulus_ = lowest_irreducible(p, degree);
  if (size_ <= kTableLimit) build_tables();
}

std::vector<std::uint32_t> FiniteField::digits(Elem a) const {
  std::vector<std::uint32_t> d(degree_, 0);
  for (std::uint32_t i = 0; i < degree_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

FiniteField::Elem FiniteField::from_digits(std::span<const std::uint32_t> digits) const {
  Elem a = 0;
  for (std::size_t i = digits.size(); i-- > 0;) a = a * p_ + digits[i] % p_;
  return a;
}

FiniteField::Elem FiniteField::from_int(std::int64_t n) const {
  const std::int64_t p = p_;
  return static_cast<Elem>(((n % p) + p) % p);
}

FiniteField::Elem FiniteField::add_direct(Elem a, Elem b) const {
  Elem r = 0, place = 1;
  while (a || b) {
    r += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::neg(Elem a) const {
  if (p_ == 2) return a;
  if (degree_ == 1) return a == 0 ? 0 : p_ - a;
  Elem r = 0, place = 1;
  while (a) {
    r += ((p_ - a % p_) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::mul_direct(Elem a, Elem b) const {
  if (degree_ == 1) return static_cast<Elem>(std::uint64_t{a} * b % p_);
  const Poly r = poly_mulmod(digits(a), digits(b), modulus_, p_);
  return from_digits(r);
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (has_tables()) {
    const std::uint64_t l = (std::uint64_t{log_[a]} * (e % order_)) % order_;
    return exp_[l];
  }
  Elem r = 1, b = a;
  while (e) {
    if (e & 1) r = mul_direct(r, b);
    b = mul_direct(b, b);
    e >>= 1;
  }
  return r;
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (has_tables()) return exp_[(order_ - log_[a]) % order_];
  return pow(a, size_ - 2);
}

std::uint32_t FiniteField::absolute_trace(Elem a) const {
  Elem t = 0, x = a;
  for (std::uint32_t i = 0; i < degree_; ++i) {
    t = add(t, x);
    x = pow(x, p_);
  }
  return t;  // lies in the prime subfield, encoded as its digit
}

void FiniteField::build_tables() {
  const std::uint64_t order = size_ - 1;
  order_ = static_cast<std::uint32_t>(order);
  const auto factors = prime_factors(order);
  auto pow_direct = [&](Elem a, std::uint64_t e) {
    Elem r = 1, b = a;
    while (e) {
      if (e & 1) r = mul_direct(r, b);
      b = mul_direct(b, b);
      e >>= 1;
    }
    return r;
  };
  generator_ = 0;
  for (Elem cand = 1; cand < size_; ++cand) {
    bool ok = true;
    if (order == 1) {
      ok = cand == 1;
    } else {
      for (auto l : factors) {
        if (pow_direct(cand, order / l) == 1) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      generator_ = cand;
      break;
    }
  }
  exp_.assign(order_, 0);
  log_.assign(size_, kNoLog);
  Elem x = 1;
  for (std::uint32_t i = 0; i < order_; ++i) {
    exp_[i] = x;
    log_[x] = i;
    x = mul_direct(x, generator_);
  }
  zech_.assign(order_, kNoLog);
  for (std::uint32_t i = 0; i < order_; ++i) {
    const Elem s = p_ == 2 ? (exp_[i] ^ 1u) : add_direct(exp_[i], 1);
    zech_[i] = s == 0 ? kNoLog : log_[s];
  }
}

FieldTower::FieldTower(PrimePower pp, std::uint64_t max_points) : pp_(pp), max_points_(max_points) {
  if (pp.q == 0) throw std::invalid_argument("uninitialised prime power");
}

const Extension& FieldTower::ext(unsigned m) const {
  if (m == 0) throw std::invalid_argument("extension degree must be positive");
  std::lock_guard lock(mu_);
  auto it = exts_.find(m);
  if (it != exts_.end()) return *it->second;
  std::uint64_t size = 1;
  for (unsigned i = 0; i < m; ++i) {
    size *= pp_.q;
    if (size > max_points_) {
      throw BudgetExceeded("k_" + std::to_string(m) + " over F_" + std::to_string(pp_.q) +
                           " exceeds the point budget");
    }
  }
  FiniteField field(pp_.p, pp_.k * m);
  std::vector<FiniteField::Elem> embedding(pp_.q);
  if (m == 1) {
    for (std::uint64_t i = 0; i < pp_.q; ++i) embedding[i] = static_cast<FiniteField::Elem>(i);
  } else {
    // theta: first root in k_m of the modulus defining k.
    const auto base_mod = lowest_irreducible(pp_.p, pp_.k);
    FiniteField::Elem theta = 0;
    bool found = false;
    for (std::uint64_t x = 0; x < field.size() && !found; ++x) {
      FiniteField::Elem v = 0;
      for (std::size_t i = base_mod.size(); i-- > 0;) {
        v = field.add(field.mul(v, static_cast<FiniteField::Elem>(x)), field.from_int(base_mod[i]));
      }
      if (v == 0) {
        theta = static_cast<FiniteField::Elem>(x);
        found = true;
      }
    }
    if (!found) throw std::logic_error("base field does not embed");
    FiniteField base(pp_.p, pp_.k);
    for (std::uint64_t c = 0; c < pp_.q; ++c) {
      const auto d = base.digits(static_cast<FiniteField::Elem>(c));
      FiniteField::Elem v = 0;
      for (std::size_t i = d.size(); i-- > 0;) v = field.add(field.mul(v, theta), field.from_int(d[i]));
      embedding[c] = v;
    }
  }
  auto e = std::make_unique<Extension>(Extension{m, std::move(field), std::move(embedding)});
  const Extension& ref = *e;
  exts_.emplace(m, std::move(e));
  return ref;
}

const std::vector<ProjPoint>& FieldTower::points(unsigned m) const {
  const Extension& e = ext(m);
  std::lock_guard lock(mu_);
  auto it = points_.find(m);
  if (it != points_.end()) return *it->second;
  const FiniteField& f = e.field;
  auto pts = std::make_unique<std::vector<ProjPoint>>();
  pts->reserve(f.size() + 1);
  pts->push_back(ProjPoint{true, 0, 1, f.size()});
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    const auto v = static_cast<FiniteField::Elem>(x);
    FiniteField::Elem y = v;
    std::uint64_t orbit = v;
    unsigned d = 0;
    do {
      y = f.pow(y, pp_.q);
      orbit = std::min<std::uint64_t>(orbit, y);
      ++d;
    } while (y != v);
    pts->push_back(ProjPoint{false, v, d, orbit});
  }
  const auto& ref = *pts;
  points_.emplace(m, std::move(pts));
  return ref;
}

int quadratic_character(const FieldTower& tower, unsigned m, FiniteField::Elem a) {
  if (tower.prime_power().even()) {
    throw std::domain_error("quadratic character needs odd characteristic");
  }
  const FiniteField& f = tower.ext(m).field;
  if (a == 0) return 0;
  return f.pow(a, (f.size() - 1) / 2) == 1 ? 1 : -1;
}

int artin_schreier_tau(const FieldTower& tower, unsigned m, FiniteField::Elem a,
                       FiniteField::Elem b) {
  if (!tower.prime_power().even()) {
    throw std::domain_error("Artin-Schreier indicator needs characteristic two");
  }
  if (a == 0) return 0;
  const FiniteField& f = tower.ext(m).field;
  const FiniteField::Elem t = f.div(b, f.mul(a, a));
  return f.absolute_trace(t) == 0 ? 1 : -1;
}

std::vector<ProjPoint> enumerate_proj_points(const FieldTower& tower, unsigned m) {
  return tower.points(m);
}

std::vector<std::vector<ProjPoint>> enumerate_A(const FieldTower& tower,
                                                std::span<const unsigned> degrees,
                                                std::uint64_t max_tuples) {
  std::vector<std::vector<const ProjPoint*>> candidates;
  std::uint64_t bound = 1;
  for (unsigned n : degrees) {
    std::vector<const ProjPoint*> c;
    for (const auto& pt : tower.points(n)) {
      if (pt.exact_degree == n) c.push_back(&pt);
    }
    bound *= std::max<std::uint64_t>(c.size(), 1);
    if (bound > max_tuples) throw BudgetExceeded("A-tuple enumeration exceeds budget");
    candidates.push_back(std::move(c));
  }
  std::vector<std::vector<ProjPoint>> out;
  std::vector<ProjPoint> current;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == degrees.size()) {
      out.push_back(current);
      return;
    }
    for (const ProjPoint* pt : candidates[i]) {
      bool clash = false;
      for (std::size_t j = 0; j < i; ++j) {
        if (degrees[j] == degrees[i] && current[j].orbit == pt->orbit) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      current.push_back(*pt);
      self(self, i + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace hypcount
