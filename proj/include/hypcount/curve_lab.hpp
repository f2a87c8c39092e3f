#pragma once

// Brute-force oracle: enumerate hyperelliptic representatives over a small
// field and evaluate u-sums, moments, fiber statistics and fixed-point counts.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "hypcount/field.hpp"
#include "hypcount/kpoly.hpp"
#include "hypcount/tuples.hpp"

namespace hypcount {

enum class Parity { Odd, Even };

std::string to_string(Parity p);
/// Accepts "odd" and "even".
Parity parse_parity(const std::string& text);

/// y^2 = f(x); f has 2g+3 coefficients, low to high, top one possibly zero.
struct OddCurve {
  int genus = 0;
  kpoly::Poly f;
};

/// y^2 + h(x) y + f(x) = 0; h has g+2 coefficients and f has 2g+3.
struct EvenCurve {
  int genus = 0;
  kpoly::Poly h;
  kpoly::Poly f;
};

struct LabBudget {
  std::uint64_t max_curves = std::uint64_t{1} << 30;
  std::uint64_t max_points = std::uint64_t{1} << 22;
  unsigned jobs = 1;
};

/// Counts of curves in P_g keyed by (a_1, ..., a_g).
struct TraceHistogram {
  int genus = 0;
  std::map<std::vector<long long>, mpz_class> counts;
  mpz_class curves;                // |P_g|
  std::uint64_t enumerated = 0;    // polynomials actually visited
  double elapsed_ms = 0;
};

/// a_0, ..., a_max_m of a genus-g curve with Frobenius eigenvalues of
/// absolute value sqrt(q), from a_1..a_g via the functional equation.
std::vector<mpz_class> extend_traces(std::span<const long long> first, int genus, std::uint64_t q,
                                     unsigned max_m);

class CurveLab {
 public:
  explicit CurveLab(std::uint64_t q, LabBudget budget = {});

  const FieldTower& tower() const noexcept { return tower_; }
  const FiniteField& base() const { return tower_.base(); }
  std::uint64_t q() const noexcept { return tower_.q(); }
  Parity parity() const noexcept { return tower_.prime_power().even() ? Parity::Even : Parity::Odd; }
  const LabBudget& budget() const noexcept { return budget_; }

  /// I for odd fields, I_g for even ones.
  mpq_class group_inverse(int genus) const;

  bool in_Pg(const OddCurve& c) const;
  bool in_Pg(const EvenCurve& c) const;
  /// |P_g| by enumeration.
  std::uint64_t count_Pg(int genus) const;
  std::vector<OddCurve> enumerate_odd(int genus) const;
  std::vector<EvenCurve> enumerate_even(int genus) const;

  /// a_m by the character-sum formula.
  long long trace(const OddCurve& c, unsigned m) const;
  long long trace(const EvenCurve& c, unsigned m) const;
  /// #C(k_m) by solving for y at every x, plus the points over infinity.
  long long count_points(const OddCurve& c, unsigned m) const;
  long long count_points(const EvenCurve& c, unsigned m) const;

  const TraceHistogram& trace_histogram(int genus) const;

  mpq_class brute_u(const UTuple& tuple, int genus) const;
  mpq_class brute_a(const AExpr& expr, int genus) const;
  mpq_class brute_bc(const BCExpr& expr, int genus) const;
  mpq_class brute_fixed_points(int genus, std::span<const unsigned> cycle_type) const;

  /// Curves visited by the most recent brute_u / brute_bc call.
  std::uint64_t last_enumerated() const noexcept { return last_enumerated_; }

 private:
  void check_curve_budget(std::uint64_t n) const;
  /// Odd fields: quadratic character of each element of k_m. Even fields:
  /// absolute trace (0 or 1) of each element.
  const std::vector<signed char>& symbol_table(unsigned m) const;
  const std::map<std::vector<long long>, mpz_class>& bc_histogram(int genus, unsigned max_index) const;
  TraceHistogram build_odd_histogram(int genus) const;
  TraceHistogram build_even_histogram(int genus) const;
  /// Calls fn for every member of P_g, split over budget_.jobs workers; fn
  /// receives the worker index.
  void for_each_odd(int genus, const std::function<void(unsigned, const OddCurve&)>& fn) const;
  void for_each_even(int genus, const std::function<void(unsigned, const EvenCurve&)>& fn) const;

  FieldTower tower_;
  LabBudget budget_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<TraceHistogram>> histograms_;
  mutable std::map<unsigned, std::unique_ptr<std::vector<signed char>>> symbols_;
  mutable std::map<std::pair<int, unsigned>, std::unique_ptr<std::map<std::vector<long long>, mpz_class>>> bc_histograms_;
  mutable std::uint64_t last_enumerated_ = 0;
};

/// Runs fn(shard) for shard in [0, shards) on up to jobs threads.
void run_sharded(std::uint64_t shards, unsigned jobs, const std::function<void(unsigned worker, std::uint64_t shard)>& fn);

// ---- even-characteristic structure probe ------------------------------------

struct ClassProbeReport {
  int genus = 0;
  std::uint64_t q_size = 0;          // |Q_g|
  std::uint64_t classes = 0;         // |Q_g / ~_g|
  bool class_sizes_ok = false;       // every class has q^{g+2}/2 elements
  std::uint64_t vz_sets = 0;         // number of z over all -1 <= i <= g
  std::uint64_t vz_total = 0;        // sum of |V_z|
  bool vz_disjoint = false;
  bool vz_cover = false;
  bool vz_well_defined = false;
  std::uint64_t reform_triples = 0;
  bool reform_ok = false;
  bool ok() const { return class_sizes_ok && vz_disjoint && vz_cover && vz_well_defined && reform_ok; }
};

/// Exhaustive check of the ~_g classes on Q_g. With full = false only class
/// sizes are checked.
ClassProbeReport equivalence_class_probe(const CurveLab& lab, int genus, bool full = true);

}  // namespace hypcount
