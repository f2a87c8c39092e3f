#pragma once

// Arithmetic in small finite fields GF(p^K) and the tower k = k_1 ⊂ k_m used
// for point enumeration on the projective line.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

namespace hypcount {

struct PrimePower {
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::uint64_t q = 0;

  /// Factors q; throws std::invalid_argument unless q is a prime power >= 2.
  static PrimePower from_q(std::uint64_t q);

  bool even() const noexcept { return p == 2; }
  bool odd() const noexcept { return p != 2; }
};

/// GF(p^K) with elements encoded as base-p digit strings of their polynomial
/// representative modulo a fixed irreducible. Log/Zech tables are built when
/// the field has at most kTableLimit elements; larger fields fall back to
/// direct polynomial arithmetic.
class FiniteField {
 public:
  using Elem = std::uint32_t;
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 22;

  FiniteField(std::uint32_t p, std::uint32_t degree);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return degree_; }
  std::uint64_t size() const noexcept { return size_; }
  bool has_tables() const noexcept { return !exp_.empty(); }
  /// Monic modulus, coefficients low to high (length degree + 1).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  /// Generator of the multiplicative group used for the tables.
  Elem generator() const noexcept { return generator_; }

  static constexpr Elem zero() noexcept { return 0; }
  static constexpr Elem one() noexcept { return 1; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (degree_ == 1) {
      const Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!has_tables()) return add_direct(a, b);
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t la = log_[a];
    std::uint32_t d = log_[b] + order_ - la;
    if (d >= order_) d -= order_;
    const std::uint32_t z = zech_[d];
    if (z == kNoLog) return 0;
    std::uint32_t e = la + z;
    if (e >= order_) e -= order_;
    return exp_[e];
  }

  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (!has_tables()) return mul_direct(a, b);
    std::uint32_t e = log_[a] + log_[b];
    if (e >= order_) e -= order_;
    return exp_[e];
  }

  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// Image of the integer n in the prime subfield.
  Elem from_int(std::int64_t n) const;
  Elem from_digits(std::span<const std::uint32_t> digits) const;
  std::vector<std::uint32_t> digits(Elem a) const;

  /// Absolute trace down to GF(p), returned as an integer in [0, p).
  std::uint32_t absolute_trace(Elem a) const;

 private:
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  Elem add_direct(Elem a, Elem b) const;
  Elem mul_direct(Elem a, Elem b) const;
  void build_tables();

  std::uint32_t p_;
  std::uint32_t degree_;
  std::uint64_t size_;
  std::uint32_t order_ = 0;  // size - 1, when tables exist
  std::vector<std::uint32_t> modulus_;
  Elem generator_ = 0;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
};

/// Lowest monic irreducible of the given degree over GF(p), ordering
/// candidates by the integer whose base-p digits are c_0, ..., c_{d-1}.
std::vector<std::uint32_t> lowest_irreducible(std::uint32_t p, std::uint32_t degree);

/// A point of P^1(k_m): either infinity or an element of k_m.
struct ProjPoint {
  bool at_infinity = false;
  FiniteField::Elem value = 0;
  unsigned exact_degree = 1;
  /// Smallest encoding in the Frobenius orbit; infinity gets size(k_m).
  std::uint64_t orbit = 0;
};

/// The degree-m extension k_m together with a ring embedding k -> k_m.
struct Extension {
  unsigned m;
  FiniteField field;
  std::vector<FiniteField::Elem> embedding;

  FiniteField::Elem embed(FiniteField::Elem base_elem) const { return embedding[base_elem]; }
};

/// The ground field k = GF(q) and its extensions k_m, built on demand.
/// Extensions are immutable once built and safe to share between threads.
class FieldTower {
 public:
  static constexpr std::uint64_t kDefaultMaxPoints = std::uint64_t{1} << 24;

  explicit FieldTower(PrimePower pp, std::uint64_t max_points = kDefaultMaxPoints);

  const PrimePower& prime_power() const noexcept { return pp_; }
  std::uint64_t q() const noexcept { return pp_.q; }
  const FiniteField& base() const { return ext(1).field; }
  /// Throws BudgetExceeded if q^m exceeds the point budget.
  const Extension& ext(unsigned m) const;
  /// All q^m + 1 points of P^1(k_m), infinity first.
  const std::vector<ProjPoint>& points(unsigned m) const;

 private:
  PrimePower pp_;
  std::uint64_t max_points_;
  mutable std::mutex mu_;
  mutable std::map<unsigned, std::unique_ptr<Extension>> exts_;
  mutable std::map<unsigned, std::unique_ptr<std::vector<ProjPoint>>> points_;
};

/// chi_{2,m}: 1 on nonzero squares of k_m, -1 on nonsquares, 0 on zero.
/// Computed as a^((q^m-1)/2). Rejects characteristic two.
int quadratic_character(const FieldTower& tower, unsigned m, FiniteField::Elem a);

/// tau_m(a, b) = (#roots of y^2 + a y + b in k_m) - 1, via the absolute
/// trace of b/a^2. Rejects odd characteristic.
int artin_schreier_tau(const FieldTower& tower, unsigned m, FiniteField::Elem a,
                       FiniteField::Elem b);

std::vector<ProjPoint> enumerate_proj_points(const FieldTower& tower, unsigned m);

/// A(n_1, ..., n_m): tuples of points of exact degrees n_i lying in pairwise
/// distinct Frobenius orbits.
std::vector<std::vector<ProjPoint>> enumerate_A(const FieldTower& tower,
                                                std::span<const unsigned> degrees,
                                                std::uint64_t max_tuples = std::uint64_t{1} << 24);

}  // namespace hypcount
