#include "hypcount/qpoly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "hypcount/errors.hpp"

namespace hypcount {

QPoly::QPoly(long c) {
  if (c != 0) num_.emplace_back(c);
}

QPoly::QPoly(const mpq_class& c) {
  if (c != 0) {
    num_.push_back(c.get_num());
    den_ = c.get_den();
  }
}

QPoly QPoly::from_coeffs(const std::vector<mpq_class>& coeffs) {
  QPoly p;
  mpz_class l = 1;
  for (const auto& c : coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  p.den_ = l;
  p.num_.reserve(coeffs.size());
  for (const auto& c : coeffs) p.num_.push_back(c.get_num() * (l / c.get_den()));
  p.canonicalize();
  return p;
}

QPoly QPoly::monomial(const mpq_class& c, unsigned power) {
  QPoly p;
  if (c == 0) return p;
  p.num_.assign(power + 1, 0);
  p.num_[power] = c.get_num();
  p.den_ = c.get_den();
  return p;
}

void QPoly::canonicalize() {
  while (!num_.empty() && num_.back() == 0) num_.pop_back();
  if (num_.empty()) {
    den_ = 1;
    return;
  }
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  if (den_ == 1) return;
  mpz_class g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (g != 1) {
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

mpq_class QPoly::coeff(std::size_t power) const {
  if (power >= num_.size()) return 0;
  mpq_class r(num_[power], den_);
  r.canonicalize();
  return r;
}

mpq_class QPoly::leading() const { return num_.empty() ? mpq_class(0) : coeff(num_.size() - 1); }

std::vector<mpq_class> QPoly::coeffs() const {
  std::vector<mpq_class> out;
  out.reserve(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coeff(i));
  return out;
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.num_.empty()) return *this;
  if (num_.empty()) return *this = o;
  if (den_ == o.den_) {
    if (num_.size() < o.num_.size()) num_.resize(o.num_.size(), 0);
    for (std::size_t i = 0; i < o.num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    const mpz_class a = o.den_, b = den_;
    for (auto& c : num_) c *= a;
    if (num_.size() < o.num_.size()) num_.resize(o.num_.size(), 0);
    for (std::size_t i = 0; i < o.num_.size(); ++i) num_[i] += o.num_[i] * b;
    den_ *= a;
  }
  canonicalize();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) { return *this += -o; }

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly r;
  if (a.num_.empty() || b.num_.empty()) return r;
  r.num_.assign(a.num_.size() + b.num_.size() - 1, 0);
  for (std::size_t i = 0; i < a.num_.size(); ++i) {
    if (a.num_[i] == 0) continue;
    for (std::size_t j = 0; j < b.num_.size(); ++j) {
      mpz_addmul(r.num_[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
    }
  }
  r.den_ = a.den_ * b.den_;
  r.canonicalize();
  return r;
}

QPoly& QPoly::operator*=(const QPoly& o) { return *this = *this * o; }

QPoly& QPoly::operator*=(const mpq_class& c) {
  if (c == 0) {
    num_.clear();
    den_ = 1;
    return *this;
  }
  for (auto& x : num_) x *= c.get_num();
  den_ *= c.get_den();
  canonicalize();
  return *this;
}

QPoly QPoly::pow(unsigned e) const {
  QPoly r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

QPoly QPoly::shifted(unsigned k) const {
  QPoly r = *this;
  if (!r.num_.empty()) r.num_.insert(r.num_.begin(), k, mpz_class(0));
  return r;
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<mpq_class> r = a.coeffs();
  const std::vector<mpq_class> d = b.coeffs();
  const std::size_t db = d.size() - 1;
  if (r.size() <= db) return {QPoly(), a};
  std::vector<mpq_class> quo(r.size() - db, 0);
  const mpq_class lead_inv = 1 / d.back();
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k] == 0) continue;
    const mpq_class f = r[k] * lead_inv;
    quo[k - db] = f;
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] -= f * d[i];
  }
  r.resize(db);
  return {from_coeffs(quo), from_coeffs(r)};
}

QPoly QPoly::exact_div(const QPoly& a, const QPoly& b) {
  auto [quo, rem] = divmod(a, b);
  if (!rem.is_zero()) throw std::domain_error("polynomial division is not exact");
  return quo;
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  QPoly r;
  r.num_ = num_;
  r.den_ = num_.back();
  r.canonicalize();
  return r;
}

QPoly QPoly::gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a.monic(), y = b.monic();
  while (!y.is_zero()) {
    QPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x;
}

mpq_class QPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (std::size_t i = num_.size(); i-- > 0;) acc = acc * x + num_[i];
  acc /= den_;
  return acc;
}

namespace {

std::string rational_text(const mpq_class& c, TextFormat fmt) {
  if (c.get_den() == 1) return c.get_num().get_str();
  if (fmt == TextFormat::Latex) return "\\frac{" + c.get_num().get_str() + "}{" + c.get_den().get_str() + "}";
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace

std::string QPoly::str(TextFormat fmt) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = num_.size(); k-- > 0;) {
    if (num_[k] == 0) continue;
    mpq_class c = coeff(k);
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (k == 0) {
      out += rational_text(c, fmt);
      continue;
    }
    if (c != 1) {
      out += rational_text(c, fmt);
      out += fmt == TextFormat::Latex ? " " : "*";
    }
    out += "q";
    if (k > 1) {
      out += fmt == TextFormat::Latex ? "^{" + std::to_string(k) + "}" : "^" + std::to_string(k);
    }
  }
  return out;
}

QPoly QPoly::parse(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw ParseError("empty polynomial");
  std::vector<mpq_class> coeffs;
  std::size_t i = 0;
  auto digits = [&](std::string& out) {
    const std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    out = s.substr(start, i - start);
    return i > start;
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw ParseError("expected sign in polynomial: " + text);
    }
    mpq_class c = 1;
    std::string num, den;
    bool have_number = digits(num);
    if (have_number) {
      c = mpq_class(mpz_class(num));
      if (i < s.size() && s[i] == '/') {
        ++i;
        if (!digits(den) || mpz_class(den) == 0) throw ParseError("bad rational in polynomial: " + text);
        c = mpq_class(mpz_class(num), mpz_class(den));
        c.canonicalize();
      }
    }
    unsigned power = 0;
    if (i < s.size() && s[i] == '*') {
      if (!have_number) throw ParseError("dangling '*' in polynomial: " + text);
      ++i;
      if (i >= s.size() || s[i] != 'q') throw ParseError("expected q after '*': " + text);
    }
    if (i < s.size() && s[i] == 'q') {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string e;
        if (!digits(e)) throw ParseError("bad exponent in polynomial: " + text);
        power = static_cast<unsigned>(std::stoul(e));
      }
    } else if (!have_number) {
      throw ParseError("unexpected character in polynomial: " + text);
    }
    if (coeffs.size() <= power) coeffs.resize(power + 1, 0);
    coeffs[power] += sign * c;
  }
  return from_coeffs(coeffs);
}

}  // namespace hypcount
