#pragma once

// Exact univariate arithmetic in the symbol q over Q, and the quasi-polynomial
// closed forms in the genus variable g.

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hypcount {

enum class TextFormat { Plain, Latex };

/// Polynomial in q with rational coefficients, stored as an integer numerator
/// vector over one positive common denominator.
class QPoly {
 public:
  static constexpr int kZeroDegree = INT_MIN;

  QPoly() = default;
  QPoly(long c);  // NOLINT(google-explicit-constructor)
  explicit QPoly(const mpq_class& c);
  static QPoly from_coeffs(const std::vector<mpq_class>& coeffs);
  static QPoly monomial(const mpq_class& c, unsigned power);
  static QPoly q() { return monomial(1, 1); }
  /// q^power.
  static QPoly q_pow(unsigned power) { return monomial(1, power); }

  int degree() const noexcept { return num_.empty() ? kZeroDegree : static_cast<int>(num_.size()) - 1; }
  bool is_zero() const noexcept { return num_.empty(); }
  bool is_constant() const noexcept { return num_.size() <= 1; }
  bool is_integral() const { return den_ == 1; }
  mpq_class coeff(std::size_t power) const;
  mpq_class leading() const;
  std::vector<mpq_class> coeffs() const;
  const std::vector<mpz_class>& numerators() const noexcept { return num_; }
  const mpz_class& denominator() const noexcept { return den_; }

  QPoly operator-() const;
  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const QPoly& o);
  QPoly& operator*=(const mpq_class& c);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(QPoly a, const mpq_class& c) { return a *= c; }
  friend QPoly operator*(const mpq_class& c, QPoly a) { return a *= c; }
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.den_ == b.den_ && a.num_ == b.num_; }

  QPoly pow(unsigned e) const;
  /// Multiplication by q^k.
  QPoly shifted(unsigned k) const;
  /// Polynomial long division; throws std::domain_error on a zero divisor.
  static std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
  /// Throws std::domain_error unless b divides a.
  static QPoly exact_div(const QPoly& a, const QPoly& b);
  /// Monic gcd; gcd(0, 0) = 0.
  static QPoly gcd(const QPoly& a, const QPoly& b);
  QPoly monic() const;

  mpq_class eval(const mpq_class& x) const;

  std::string str(TextFormat fmt = TextFormat::Plain) const;
  /// Parses the plain rendering, e.g. "q^4 - 3*q^3 + 1/2*q - 7".
  static QPoly parse(const std::string& text);

 private:
  void canonicalize();

  std::vector<mpz_class> num_;
  mpz_class den_ = 1;
};

/// Rational function num/den with den monic and gcd(num, den) = 1.
class QRat {
 public:
  QRat() : den_(1) {}
  QRat(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  QRat(const QPoly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit QRat(const mpq_class& c) : num_(c), den_(1) {}
  QRat(const QPoly& num, const QPoly& den);

  const QPoly& num() const noexcept { return num_; }
  const QPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_poly() const { return den_.degree() == 0; }
  /// Throws std::domain_error unless the value is a polynomial.
  QPoly as_poly() const;

  QRat operator-() const;
  QRat& operator+=(const QRat& o);
  QRat& operator-=(const QRat& o);
  QRat& operator*=(const QRat& o);
  QRat& operator/=(const QRat& o);
  friend QRat operator+(QRat a, const QRat& b) { return a += b; }
  friend QRat operator-(QRat a, const QRat& b) { return a -= b; }
  friend QRat operator*(QRat a, const QRat& b) { return a *= b; }
  friend QRat operator/(QRat a, const QRat& b) { return a /= b; }
  friend bool operator==(const QRat& a, const QRat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  QRat pow(unsigned e) const;
  mpq_class eval(const mpq_class& x) const;

  std::string str(TextFormat fmt = TextFormat::Plain) const;
  static QRat parse(const std::string& text);

 private:
  void canonicalize();

  QPoly num_;
  QPoly den_;
};

/// Gaussian elimination with Bareiss fraction-free pivoting over Q(q).
/// Throws SingularSystem.
std::vector<QRat> solve_linear(std::vector<std::vector<QRat>> matrix, std::vector<QRat> rhs);

struct QSample {
  mpq_class x;
  mpq_class y;
};

/// Interpolates the first degree_bound + 1 samples and checks the next
/// validation_count samples. Throws InterpolationError.
QPoly interpolate_poly(const std::vector<QSample>& samples, unsigned degree_bound,
                       unsigned validation_count);

/// G(q) q^{2g} + p_{g mod P}(g) for g >= g_min, each p_r a polynomial in g
/// with coefficients in Q(q).
struct ClosedForm {
  QRat geometric;
  unsigned period = 1;
  std::vector<std::vector<QRat>> residue_polys;  // [r][k] coefficient of g^k
  int g_min = 0;

  QRat eval(long g) const;
  std::string str(TextFormat fmt = TextFormat::Plain) const;
};

}  // namespace hypcount
