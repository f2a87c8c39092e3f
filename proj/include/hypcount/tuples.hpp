#pragma once

// Formal u-tuples, moment expressions, and the combinatorics relating them:
// decompositions, sieve numbers, orbit counts, characteristic polynomials,
// the genus-zero reduction and sigma-moment expansions.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hypcount/qpoly.hpp"

namespace hypcount {

// ---- number theory helpers -------------------------------------------------

int moebius(unsigned n);
std::vector<unsigned> divisors(unsigned n);
/// Partitions of n as descending part lists.
std::vector<std::vector<unsigned>> partitions(unsigned n);

// ---- u-tuples --------------------------------------------------------------

struct USlot {
  unsigned n = 1;
  unsigned r = 1;  // 1 or 2
  auto operator<=>(const USlot&) const = default;
};

/// Multiset of (n_i, r_i) kept sorted by n descending, then r descending.
class UTuple {
 public:
  UTuple() = default;
  explicit UTuple(std::vector<USlot> slots);

  const std::vector<USlot>& slots() const noexcept { return slots_; }
  std::size_t size() const noexcept { return slots_.size(); }
  bool empty() const noexcept { return slots_.empty(); }
  /// n = sum n_i.
  unsigned degree() const;
  /// sum r_i n_i.
  unsigned weighted_degree() const;
  bool odd_weight() const { return weighted_degree() % 2 == 1; }
  /// 0 when every exponent is 2 (including the empty tuple), else 1.
  int r_flag() const;
  std::vector<unsigned> degrees() const;

  std::string str() const;
  static UTuple parse(const std::string& text);

  friend auto operator<=>(const UTuple& a, const UTuple& b) { return a.slots_ <=> b.slots_; }
  friend bool operator==(const UTuple& a, const UTuple& b) { return a.slots_ == b.slots_; }

 private:
  std::vector<USlot> slots_;
};

using ULinComb = std::map<UTuple, mpq_class>;

void add_term(ULinComb& comb, const UTuple& t, const mpq_class& c);
std::string render(const ULinComb& comb);

// ---- moment expressions ----------------------------------------------------

/// a_{N_1}^{R_1} ... a_{N_k}^{R_k}; the empty expression is a_0.
class AExpr {
 public:
  AExpr() = default;
  explicit AExpr(std::map<unsigned, unsigned> powers);

  const std::map<unsigned, unsigned>& powers() const noexcept { return powers_; }
  unsigned weight() const;
  unsigned slot_count() const;
  bool empty() const noexcept { return powers_.empty(); }
  AExpr operator*(const AExpr& o) const;

  std::string str() const;
  static AExpr parse(const std::string& text);

  friend auto operator<=>(const AExpr&, const AExpr&) = default;
  friend bool operator==(const AExpr&, const AExpr&) = default;

 private:
  std::map<unsigned, unsigned> powers_;
};

/// b_{N}^{R} ... c_{N'}^{R'} ... fiber statistics.
class BCExpr {
 public:
  BCExpr() = default;
  BCExpr(std::map<unsigned, unsigned> b, std::map<unsigned, unsigned> c);

  const std::map<unsigned, unsigned>& b() const noexcept { return b_; }
  const std::map<unsigned, unsigned>& c() const noexcept { return c_; }
  unsigned weight() const;

  std::string str() const;
  static BCExpr parse(const std::string& text);

  friend auto operator<=>(const BCExpr&, const BCExpr&) = default;
  friend bool operator==(const BCExpr&, const BCExpr&) = default;

 private:
  std::map<unsigned, unsigned> b_;
  std::map<unsigned, unsigned> c_;
};

/// Every a-expression of exactly this weight, in a fixed order.
std::vector<AExpr> a_expressions_of_weight(unsigned weight);
/// Every bc-expression of exactly this weight (weight >= 1).
std::vector<BCExpr> bc_expressions_of_weight(unsigned weight);

// ---- decompositions --------------------------------------------------------

ULinComb decompose_a(const AExpr& expr);
UTuple general_case(const AExpr& expr);
/// Rational combination; odd-weight tuples are dropped.
ULinComb decompose_bc(const BCExpr& expr);

/// The a-expression whose general case is the tuple; requires all r_i = 1.
AExpr expr_of_general_case(const UTuple& tuple);

// ---- sieve and orbit counts ------------------------------------------------

/// |A(n_1, ..., n_m)| as a polynomial in q.
QPoly orbit_count_poly(std::span<const unsigned> degrees);
QPoly orbit_count_poly(const UTuple& tuple);

/// Sieve number b_j; zero for j < 0.
QPoly bj_poly(const UTuple& tuple, int j);
/// b̂_j = b_0 + ... + b_j; zero for j < 0.
QPoly bhat_poly(const UTuple& tuple, int j);

/// Integer polynomial in lambda, coefficients low to high.
using LambdaPoly = std::vector<long long>;
LambdaPoly char_poly(const AExpr& expr);
LambdaPoly char_poly(const UTuple& tuple);
std::string render_lambda(const LambdaPoly& p);
/// Largest multiplicity of a root of unity among the roots.
unsigned max_root_multiplicity(const LambdaPoly& p);

// ---- genus zero ------------------------------------------------------------

/// One application of the genus-zero identity to the r = 1 slot of largest n.
/// Returns {tuple: 1} when the tuple already has r = 0.
ULinComb genus0_reduce_step(const UTuple& tuple);
/// Full reduction to r = 0 tuples.
ULinComb genus0_reduce(const UTuple& tuple);

// ---- sigma moments ---------------------------------------------------------

/// Polynomial in q and the formal symbols a_1, a_2, ...; keyed by monomial.
using MomentPoly = std::map<AExpr, QPoly>;

/// Cycle lengths of a permutation, any order.
MomentPoly sigma_moment_poly(std::span<const unsigned> cycle_type);
std::string render(const MomentPoly& p);

}  // namespace hypcount
