#include <algorithm>
#include <set>

#include "hypcount/engine.hpp"
#include "hypcount/errors.hpp"

namespace hypcount {

namespace {

// Murnaghan-Nakayama on beta-sets: removing a rim hook of length k moves one
// bead from b to b - k, with sign (-1)^(beads jumped over).
long long mn(std::set<unsigned>& beads, const std::vector<unsigned>& mu, std::size_t idx) {
  if (idx == mu.size()) return 1;
  const unsigned k = mu[idx];
  long long total = 0;
  const std::vector<unsigned> snapshot(beads.begin(), beads.end());
  for (unsigned b : snapshot) {
    if (b < k || beads.count(b - k)) continue;
    long long sign = 1;
    for (unsigned c : snapshot) {
      if (c > b - k && c < b) sign = -sign;
    }
    beads.erase(b);
    beads.insert(b - k);
    total += sign * mn(beads, mu, idx + 1);
    beads.erase(b - k);
    beads.insert(b);
  }
  return total;
}

}  // namespace

long long sn_character(const std::vector<unsigned>& lambda, const std::vector<unsigned>& mu) {
  unsigned n = 0, m = 0;
  for (unsigned p : lambda) n += p;
  for (unsigned p : mu) m += p;
  if (n != m) throw std::invalid_argument("character arguments have different sizes");
  std::vector<unsigned> lam = lambda;
  std::sort(lam.rbegin(), lam.rend());
  std::set<unsigned> beads;
  for (std::size_t i = 0; i < lam.size(); ++i) beads.insert(lam[i] + static_cast<unsigned>(lam.size() - 1 - i));
  std::vector<unsigned> parts = mu;
  std::sort(parts.rbegin(), parts.rend());
  return mn(beads, parts, 0);
}

mpz_class centralizer_order(const std::vector<unsigned>& mu) {
  std::map<unsigned, unsigned> mult;
  for (unsigned p : mu) ++mult[p];
  mpz_class z = 1;
  for (const auto& [i, m] : mult) {
    for (unsigned j = 1; j <= m; ++j) z *= static_cast<unsigned long>(i) * j;
  }
  return z;
}

std::map<std::vector<unsigned>, QPoly> Engine::character_transform(int genus, unsigned n, Parity parity) {
  if (n > 7) throw std::invalid_argument("character transform supports n <= 7");
  std::lock_guard lock(mu_);
  const auto parts = partitions(n);
  std::vector<QPoly> fixed;
  for (const auto& mu : parts) fixed.push_back(fixed_point_poly(genus, mu, parity));
  std::map<std::vector<unsigned>, QPoly> out;
  for (const auto& lambda : parts) {
    QPoly p;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const long long chi = sn_character(lambda, parts[i]);
      if (chi == 0) continue;
      mpq_class w(mpz_class(static_cast<long>(chi)), centralizer_order(parts[i]));
      w.canonicalize();
      p += fixed[i] * w;
    }
    out[lambda] = p;
  }
  return out;
}

}  // namespace hypcount
