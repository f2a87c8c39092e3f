#include "hypcount/qpoly.hpp"

#include <stdexcept>

#include "hypcount/errors.hpp"

namespace hypcount {

QRat::QRat(const QPoly& num, const QPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  canonicalize();
}

void QRat::canonicalize() {
  if (num_.is_zero()) {
    den_ = QPoly(1);
    return;
  }
  if (den_.degree() > 0) {
    const QPoly g = QPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = QPoly::exact_div(num_, g);
      den_ = QPoly::exact_div(den_, g);
    }
  }
  const mpq_class lead = den_.leading();
  if (lead != 1) {
    const mpq_class inv = 1 / lead;
    num_ *= inv;
    den_ *= inv;
  }
}

QPoly QRat::as_poly() const {
  if (!is_poly()) throw std::domain_error("value is not a polynomial: " + str());
  return num_;
}

QRat QRat::operator-() const {
  QRat r = *this;
  r.num_ = -r.num_;
  return r;
}

QRat& QRat::operator+=(const QRat& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (is_poly() && o.is_poly()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  canonicalize();
  return *this;
}

QRat& QRat::operator-=(const QRat& o) { return *this += -o; }

QRat& QRat::operator*=(const QRat& o) {
  if (is_poly() && o.is_poly()) {
    num_ *= o.num_;
    return *this;
  }
  num_ *= o.num_;
  den_ *= o.den_;
  canonicalize();
  return *this;
}

QRat& QRat::operator/=(const QRat& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational function");
  num_ *= o.den_;
  den_ *= o.num_;
  canonicalize();
  return *this;
}

QRat QRat::pow(unsigned e) const {
  QRat r;
  r.num_ = num_.pow(e);
  r.den_ = den_.pow(e);
  return r;
}

mpq_class QRat::eval(const mpq_class& x) const {
  const mpq_class d = den_.eval(x);
  if (d == 0) throw std::domain_error("pole at " + x.get_str());
  mpq_class r = num_.eval(x) / d;
  return r;
}

std::string QRat::str(TextFormat fmt) const {
  if (is_poly()) return num_.str(fmt);
  if (fmt == TextFormat::Latex) return "\\frac{" + num_.str(fmt) + "}{" + den_.str(fmt) + "}";
  return "(" + num_.str(fmt) + ")/(" + den_.str(fmt) + ")";
}

QRat QRat::parse(const std::string& text) {
  std::size_t start = text.find_first_not_of(" \t");
  if (start == std::string::npos) throw ParseError("empty rational function");
  if (text[start] != '(') return QRat(QPoly::parse(text));
  int depth = 0;
  std::size_t close = std::string::npos;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')' && --depth == 0) {
      close = i;
      break;
    }
  }
  const std::size_t slash = close == std::string::npos ? close : text.find('/', close);
  if (slash == std::string::npos) throw ParseError("malformed rational function: " + text);
  const std::size_t open = text.find('(', slash);
  const std::size_t end = text.rfind(')');
  if (open == std::string::npos || end == std::string::npos || end < open) {
    throw ParseError("malformed rational function: " + text);
  }
  const QPoly num = QPoly::parse(text.substr(start + 1, close - start - 1));
  const QPoly den = QPoly::parse(text.substr(open + 1, end - open - 1));
  if (den.is_zero()) throw ParseError("zero denominator: " + text);
  return QRat(num, den);
}

QRat ClosedForm::eval(long g) const {
  if (g < g_min) throw std::out_of_range("closed form evaluated below its threshold");
  QRat value;
  if (!geometric.is_zero()) {
    if (g >= 0) {
      value = geometric * QRat(QPoly::q_pow(static_cast<unsigned>(2 * g)));
    } else {
      value = geometric / QRat(QPoly::q_pow(static_cast<unsigned>(-2 * g)));
    }
  }
  const auto& poly = residue_polys[static_cast<std::size_t>(((g % static_cast<long>(period)) + period) % period)];
  mpq_class gk = 1;
  for (const auto& c : poly) {
    if (!c.is_zero()) value += c * QRat(gk);
    gk *= g;
  }
  return value;
}

std::string ClosedForm::str(TextFormat fmt) const {
  const bool latex = fmt == TextFormat::Latex;
  std::string out;
  const std::string wrap_l = latex ? "\\left(" : "(";
  const std::string wrap_r = latex ? "\\right)" : ")";
  out += wrap_l + geometric.str(fmt) + wrap_r + (latex ? " q^{2g}" : "*q^(2g)");
  out += latex ? " + p_{g \\bmod " + std::to_string(period) + "}(g), \\quad g \\geq " + std::to_string(g_min)
               : " + p[g mod " + std::to_string(period) + "](g), valid for g >= " + std::to_string(g_min);
  for (unsigned r = 0; r < period; ++r) {
    out += latex ? " \\\\\n" : "\n";
    out += latex ? "g \\equiv " + std::to_string(r) + ": " : "  g = " + std::to_string(r) + " mod " + std::to_string(period) + ": ";
    bool any = false;
    const auto& poly = residue_polys[r];
    for (std::size_t k = poly.size(); k-- > 0;) {
      if (poly[k].is_zero()) continue;
      if (any) out += " + ";
      any = true;
      out += wrap_l + poly[k].str(fmt) + wrap_r;
      if (k == 1) out += latex ? " g" : "*g";
      if (k > 1) out += latex ? " g^{" + std::to_string(k) + "}" : "*g^" + std::to_string(k);
    }
    if (!any) out += "0";
  }
  return out;
}

}  // namespace hypcount
