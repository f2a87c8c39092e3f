#pragma once

// Symbolic evaluation of u-tuples and moment expressions for every genus.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "hypcount/curve_lab.hpp"
#include "hypcount/qpoly.hpp"
#include "hypcount/tuples.hpp"

namespace hypcount {

inline constexpr const char* kEngineVersion = "hypcount-engine-1";

struct Genus1Provenance {
  std::vector<std::uint64_t> q_values;
  unsigned degree_bound = 0;
  unsigned validation = 0;
};

/// Genus-one moments a...|_1 of weight <= max_weight, one polynomial in q per
/// expression, re-derived from brute-force samples.
struct GenusOneTable {
  unsigned max_weight = 0;
  std::map<AExpr, QPoly> entries;
  std::map<AExpr, Genus1Provenance> provenance;

  std::string to_json() const;
  static GenusOneTable from_json(const std::string& text);
};

struct Genus1BuildOptions {
  unsigned max_weight = 7;
  std::vector<std::uint64_t> q_values = {3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37};
  unsigned degree_bound = 10;
  unsigned validation = 3;
  unsigned jobs = 1;
  std::function<void(const std::string&)> progress;
};

/// Throws InterpolationError if any entry fails its held-out samples.
GenusOneTable build_genus1_table(const Genus1BuildOptions& opts);

struct EngineOptions {
  /// Directory for the persistent memo and genus-one table; empty disables.
  std::filesystem::path cache_dir;
  Genus1BuildOptions genus1;
};

class Engine {
 public:
  explicit Engine(EngineOptions opts = {});
  ~Engine();
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  QRat u_value(const UTuple& tuple, int genus, Parity parity);
  QRat a_value(const AExpr& expr, int genus, Parity parity);
  /// u_1 of an r = 1 tuple of degree >= 6 from the genus-one table.
  QPoly genus1_u(const UTuple& tuple, Parity parity);

  ClosedForm closed_form(const AExpr& expr, Parity parity);
  ClosedForm closed_form(const UTuple& tuple, Parity parity);

  QPoly fixed_point_poly(int genus, std::span<const unsigned> cycle_type, Parity parity);
  /// P_lambda for every partition lambda of n, keyed by the partition.
  std::map<std::vector<unsigned>, QPoly> character_transform(int genus, unsigned n, Parity parity);

  const GenusOneTable& genus1_table();
  void set_genus1_table(GenusOneTable table);

  /// Writes the memo (and table, if built) to cache_dir.
  void save_cache();

 private:
  struct Series;
  Series& series(const UTuple& tuple, Parity parity);
  void extend(Series& s, int genus);
  ClosedForm fit(const std::function<QRat(int)>& value, const LambdaPoly& cp, unsigned period, int g_fit,
                 const std::string& label);
  void load_cache();

  EngineOptions opts_;
  std::recursive_mutex mu_;
  std::map<std::pair<UTuple, Parity>, std::unique_ptr<Series>> series_;
  std::unique_ptr<GenusOneTable> table_;
  bool dirty_ = false;
};

/// Character of the irreducible S_n representation lambda on cycle type mu.
long long sn_character(const std::vector<unsigned>& lambda, const std::vector<unsigned>& mu);
/// Size of the centralizer of a permutation of cycle type mu.
mpz_class centralizer_order(const std::vector<unsigned>& mu);

/// Applies the recursion with characteristic polynomial cp(lambda)(lambda - q^2)
/// to value at genera [from, from + count) and checks every result vanishes.
bool recursion_certificate(const std::function<QRat(int)>& value, const LambdaPoly& cp, int from, int count);

}  // namespace hypcount
