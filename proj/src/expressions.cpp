#include <algorithm>
#include <functional>
#include <numeric>

#include "hypcount/tuples.hpp"

namespace hypcount {
namespace {

unsigned parity_exponent(unsigned quotient) { return quotient % 2 == 1 ? 1 : 2; }
unsigned merge_exponent(unsigned a, unsigned b) { return (a + b) % 2 == 1 ? 1 : 2; }

// One factor of a product of character sums over points of P^1: choosing
// exact degree d contributes chi^e with weight coef.
struct SlotOption {
  unsigned d;
  unsigned e;
  mpq_class coef;
};
using Slot = std::vector<SlotOption>;

struct GroupChoice {
  unsigned d;
  unsigned r;
  mpq_class coef;
};

// Slots landing on the same Frobenius orbit form a group; after the first
// slot picks a point of exact degree d the others pick one of its d conjugates.
std::vector<GroupChoice> group_choices(const std::vector<Slot>& slots, const std::vector<int>& group) {
  std::map<std::pair<unsigned, unsigned>, mpq_class> acc;
  std::vector<unsigned> ds;
  for (const auto& opt : slots[group[0]]) ds.push_back(opt.d);
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  for (unsigned d : ds) {
    std::function<void(std::size_t, unsigned, mpq_class)> rec = [&](std::size_t i, unsigned esum, mpq_class coef) {
      if (i == group.size()) {
        acc[{d, esum % 2 == 1 ? 1u : 2u}] += coef;
        return;
      }
      for (const auto& opt : slots[group[i]]) {
        if (opt.d == d) rec(i + 1, esum + opt.e, coef * opt.coef);
      }
    };
    mpq_class mult = 1;
    for (std::size_t k = 1; k < group.size(); ++k) mult *= d;
    rec(0, 0, mult);
  }
  std::vector<GroupChoice> out;
  for (const auto& [key, c] : acc) {
    if (c != 0) out.push_back({key.first, key.second, c});
  }
  return out;
}

ULinComb expand_slots(const std::vector<Slot>& slots) {
  ULinComb out;
  const std::size_t k = slots.size();
  if (k == 0) {
    add_term(out, UTuple(), 1);
    return out;
  }
  // set partitions via restricted growth strings
  std::vector<int> label(k, 0);
  std::function<void(std::size_t, int)> rec_partition = [&](std::size_t i, int used) {
    if (i < k) {
      for (int l = 0; l <= used; ++l) {
        label[i] = l;
        rec_partition(i + 1, std::max(used, l + 1));
      }
      return;
    }
    std::vector<std::vector<int>> groups(used);
    for (std::size_t s = 0; s < k; ++s) groups[label[s]].push_back(static_cast<int>(s));
    std::vector<std::vector<GroupChoice>> choices;
    for (const auto& g : groups) {
      choices.push_back(group_choices(slots, g));
      if (choices.back().empty()) return;
    }
    std::vector<USlot> tuple_slots(groups.size());
    std::function<void(std::size_t, mpq_class)> rec_choose = [&](std::size_t g, mpq_class coef) {
      if (g == groups.size()) {
        add_term(out, UTuple(tuple_slots), coef);
        return;
      }
      for (const auto& c : choices[g]) {
        tuple_slots[g] = {c.d, c.r};
        rec_choose(g + 1, coef * c.coef);
      }
    };
    rec_choose(0, 1);
  };
  rec_partition(1, 1);
  return out;
}

LambdaPoly lambda_mul(const LambdaPoly& a, const LambdaPoly& b) {
  LambdaPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// Exact division by a monic divisor; returns false if it does not divide.
bool lambda_divide(const LambdaPoly& a, const LambdaPoly& b, LambdaPoly& quo) {
  if (a.size() < b.size()) return false;
  LambdaPoly r = a;
  quo.assign(a.size() - b.size() + 1, 0);
  for (std::size_t top = r.size(); top >= b.size(); --top) {
    const long long f = r[top - 1];
    const std::size_t shift = top - b.size();
    quo[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= f * b[i];
  }
  return std::all_of(r.begin(), r.end(), [](long long c) { return c == 0; });
}

LambdaPoly lambda_pow_minus_one(unsigned n) {
  LambdaPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  return p;
}

LambdaPoly cyclotomic(unsigned n) {
  LambdaPoly p = lambda_pow_minus_one(n);
  for (unsigned d = 1; d < n; ++d) {
    if (n % d) continue;
    LambdaPoly q;
    lambda_divide(p, cyclotomic(d), q);
    p = q;
  }
  return p;
}

LambdaPoly product_over_lambda_minus_one(const std::vector<unsigned>& ns) {
  if (ns.empty()) return {1};
  LambdaPoly p{1};
  for (unsigned n : ns) p = lambda_mul(p, lambda_pow_minus_one(n));
  LambdaPoly q;
  lambda_divide(p, {-1, 1}, q);
  return q;
}

}  // namespace

ULinComb decompose_a(const AExpr& expr) {
  std::vector<Slot> slots;
  for (const auto& [n, r] : expr.powers()) {
    Slot s;
    for (unsigned d : divisors(n)) s.push_back({d, parity_exponent(n / d), -1});
    for (unsigned i = 0; i < r; ++i) slots.push_back(s);
  }
  return expand_slots(slots);
}

UTuple general_case(const AExpr& expr) {
  std::vector<USlot> slots;
  for (const auto& [n, r] : expr.powers()) {
    for (unsigned i = 0; i < r; ++i) slots.push_back({n, 1});
  }
  return UTuple(std::move(slots));
}

ULinComb decompose_bc(const BCExpr& expr) {
  const mpq_class half(1, 2);
  std::vector<Slot> slots;
  for (const auto& [n, r] : expr.b()) {
    for (unsigned i = 0; i < r; ++i) slots.push_back({{n, 2, half}, {n, 1, half}});
  }
  for (const auto& [n, r] : expr.c()) {
    for (unsigned i = 0; i < r; ++i) slots.push_back({{n, 2, half}, {n, 1, -half}});
  }
  ULinComb full = expand_slots(slots);
  ULinComb out;
  for (const auto& [t, c] : full) {
    if (!t.odd_weight()) out.emplace(t, c);
  }
  return out;
}

AExpr expr_of_general_case(const UTuple& tuple) {
  std::map<unsigned, unsigned> powers;
  for (const auto& s : tuple.slots()) {
    if (s.r != 1) throw std::invalid_argument("tuple " + tuple.str() + " is not a general case");
    ++powers[s.n];
  }
  return AExpr(std::move(powers));
}

QPoly orbit_count_poly(std::span<const unsigned> degrees) {
  QPoly result(1);
  std::map<unsigned, unsigned> seen;
  for (unsigned n : degrees) {
    QPoly pi;
    for (unsigned e : divisors(n)) {
      const int mu = moebius(n / e);
      if (mu) pi += QPoly(mu) * (QPoly::q_pow(e) + QPoly(1));
    }
    result *= pi - QPoly(static_cast<long>(n) * seen[n]);
    ++seen[n];
  }
  return result;
}

QPoly orbit_count_poly(const UTuple& tuple) {
  const auto ds = tuple.degrees();
  return orbit_count_poly(std::span<const unsigned>(ds));
}

QPoly bj_poly(const UTuple& tuple, int j) {
  if (j < 0) return QPoly();
  // signed subset-sum histogram
  std::map<unsigned, long> hist{{0u, 1L}};
  for (const auto& s : tuple.slots()) {
    auto next = hist;
    for (const auto& [sum, c] : hist) next[sum + s.n] -= c;
    hist = std::move(next);
  }
  QPoly r;
  for (const auto& [sum, c] : hist) {
    if (c != 0 && static_cast<int>(sum) <= j) r += QPoly::monomial(c, static_cast<unsigned>(j) - sum);
  }
  return r;
}

QPoly bhat_poly(const UTuple& tuple, int j) {
  QPoly r;
  for (int i = 0; i <= j; ++i) r += bj_poly(tuple, i);
  return r;
}

LambdaPoly char_poly(const AExpr& expr) {
  std::vector<unsigned> ns;
  for (const auto& [n, r] : expr.powers()) {
    for (unsigned i = 0; i < r; ++i) ns.push_back(n);
  }
  return product_over_lambda_minus_one(ns);
}

LambdaPoly char_poly(const UTuple& tuple) { return product_over_lambda_minus_one(tuple.degrees()); }

std::string render_lambda(const LambdaPoly& p) {
  std::string out;
  for (std::size_t k = p.size(); k-- > 0;) {
    long long c = p[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
    if (c != 1 || k == 0) out += std::to_string(c);
    if (k > 0) {
      if (c != 1) out += "*";
      out += "L";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

unsigned max_root_multiplicity(const LambdaPoly& p) {
  unsigned best = 0;
  const unsigned deg = p.empty() ? 0 : static_cast<unsigned>(p.size() - 1);
  // phi(d) <= deg forces d <= 2 deg^2
  for (unsigned d = 1; d <= 2 * deg * deg; ++d) {
    const LambdaPoly phi = cyclotomic(d);
    LambdaPoly cur = p, quo;
    unsigned m = 0;
    while (cur.size() >= phi.size() && lambda_divide(cur, phi, quo)) {
      cur = quo;
      ++m;
    }
    best = std::max(best, m);
  }
  return best;
}

ULinComb genus0_reduce_step(const UTuple& tuple) {
  ULinComb out;
  const auto& slots = tuple.slots();
  std::size_t s = slots.size();
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].r == 1) {
      s = i;
      break;
    }
  }
  if (s == slots.size()) {
    add_term(out, tuple, 1);
    return out;
  }
  const unsigned n = slots[s].n;
  std::vector<USlot> rest = slots;
  rest.erase(rest.begin() + static_cast<long>(s));
  auto merged = [&](std::size_t j, unsigned e) {
    std::vector<USlot> v = rest;
    v[j].r = merge_exponent(v[j].r, e);
    return UTuple(std::move(v));
  };
  for (unsigned d : divisors(n)) {
    if (d == n) continue;
    const unsigned e = parity_exponent(n / d);
    std::vector<USlot> extended = rest;
    extended.push_back({d, e});
    add_term(out, UTuple(std::move(extended)), -1);
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (rest[j].n == d) add_term(out, merged(j, e), -static_cast<long>(d));
    }
  }
  for (std::size_t j = 0; j < rest.size(); ++j) {
    if (rest[j].n == n) add_term(out, merged(j, 1), -static_cast<long>(n));
  }
  return out;
}

ULinComb genus0_reduce(const UTuple& tuple) {
  std::map<UTuple, ULinComb> memo;
  std::function<const ULinComb&(const UTuple&)> rec = [&](const UTuple& t) -> const ULinComb& {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    ULinComb result;
    if (t.r_flag() == 0) {
      add_term(result, t, 1);
    } else {
      for (const auto& [child, c] : genus0_reduce_step(t)) {
        for (const auto& [leaf, c2] : rec(child)) add_term(result, leaf, c * c2);
      }
    }
    return memo.emplace(t, std::move(result)).first->second;
  };
  return rec(tuple);
}

MomentPoly sigma_moment_poly(std::span<const unsigned> cycle_type) {
  std::map<unsigned, unsigned> mult;
  for (unsigned n : cycle_type) {
    if (n == 0) throw std::invalid_argument("cycle length zero");
    ++mult[n];
  }
  MomentPoly result{{AExpr(), QPoly(1)}};
  for (const auto& [n, r] : mult) {
    MomentPoly base;
    for (unsigned d : divisors(n)) {
      const int mu = moebius(n / d);
      if (!mu) continue;
      base[AExpr()] += QPoly(mu) * (QPoly::q_pow(d) + QPoly(1));
      base[AExpr({{d, 1}})] += QPoly(-mu);
    }
    for (unsigned j = 0; j < r; ++j) {
      MomentPoly factor = base;
      factor[AExpr()] -= QPoly(static_cast<long>(j) * n);
      MomentPoly next;
      for (const auto& [m1, c1] : result) {
        for (const auto& [m2, c2] : factor) next[m1 * m2] += c1 * c2;
      }
      result.clear();
      for (auto& [m, c] : next) {
        if (!c.is_zero()) result.emplace(m, std::move(c));
      }
    }
  }
  return result;
}

std::string render(const MomentPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += "(" + it->second.str() + ")";
    if (!it->first.empty()) out += "*" + it->first.str();
  }
  return out;
}

}  // namespace hypcount
