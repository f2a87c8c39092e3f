#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "hypcount/curve_lab.hpp"
#include "hypcount/errors.hpp"
#include "hypcount/kpoly.hpp"

using namespace hypcount;
using kpoly::Poly;

namespace {

mpq_class Q(long n, long d = 1) {
  mpq_class r(n, d);
  r.canonicalize();
  return r;
}

mpz_class ipow(unsigned long q, unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, e);
  return r;
}

Poly reversed(const Poly& p) { return Poly(p.rbegin(), p.rend()); }

// gcd(h, f'^2 + f h'^2) is a nonzero constant
bool coprime_condition(const FiniteField& k, const Poly& h, const Poly& f) {
  Poly hd = kpoly::derivative(k, h), fd = kpoly::derivative(k, f);
  Poly rhs = kpoly::add(k, kpoly::mul(k, fd, fd), kpoly::mul(k, f, kpoly::mul(k, hd, hd)));
  Poly hh = h;
  kpoly::trim(hh);
  kpoly::trim(rhs);
  return kpoly::degree(kpoly::gcd(k, hh, rhs)) == 0;
}

}  // namespace

TEST_CASE("group order") {
  CHECK(CurveLab(3).group_inverse(2) == Q(1, 24 * 2));
  CHECK(CurveLab(5).group_inverse(0) == Q(1, 120 * 4));
  // (q^3 - q)(q - 1) q^(g+2) in characteristic two
  CHECK(CurveLab(2).group_inverse(1) == Q(1, 6 * 1 * 8));
  CHECK(CurveLab(4).group_inverse(0) == Q(1, 60 * 3 * 16));
}

TEST_CASE("odd representative families") {
  for (std::uint64_t q : {3, 5}) {
    CurveLab lab(q);
    const mpz_class qz = static_cast<unsigned long>(q);
    for (int g = 0; g <= 1; ++g) {
      const auto curves = lab.enumerate_odd(g);
      // square-free f of degree 2g+1 or 2g+2
      const mpz_class expected = g == 0 ? mpz_class((qz - 1) * qz * qz) : mpz_class((qz - 1) * (qz - 1) * (qz + 1) * ipow(q, 2 * g));
      CHECK(mpz_class(static_cast<unsigned long>(curves.size())) == expected);
      CHECK(lab.count_Pg(g) == curves.size());
      for (const auto& c : curves) {
        Poly f = c.f;
        kpoly::trim(f);
        const int d = kpoly::degree(f);
        CHECK((d == 2 * g + 1 || d == 2 * g + 2));
        CHECK(kpoly::square_free(lab.base(), f));
      }
    }
  }
  CHECK(CurveLab(3).count_Pg(0) == 18);
  CHECK(CurveLab(3).count_Pg(1) == 144);
  CHECK_THROWS(CurveLab(2).enumerate_odd(1));
}

TEST_CASE("even representative families satisfy the defining conditions") {
  CurveLab lab(2);
  const FiniteField& k = lab.base();
  for (int g = 0; g <= 2; ++g) {
    const auto curves = lab.enumerate_even(g);
    // |P_g| = (q-1)(q^3-q) q^(3g+1) for g >= 1 and (q-1)(q^3-q) q for g = 0
    CHECK(mpz_class(static_cast<unsigned long>(curves.size())) == mpz_class(6) * ipow(2, g == 0 ? 1 : 3 * g + 1));
    for (const auto& c : curves) {
      Poly h = c.h, f = c.f;
      kpoly::trim(h);
      kpoly::trim(f);
      REQUIRE(kpoly::degree(h) >= 0);
      const int top = std::max(2 * kpoly::degree(h), kpoly::degree(f));
      CHECK(top >= 2 * g + 1);
      CHECK(top <= 2 * g + 2);
      CHECK(coprime_condition(k, h, f));
      CHECK(coprime_condition(k, reversed(c.h), reversed(c.f)));
    }
  }
  CHECK(CurveLab(4).count_Pg(1) == 3u * 60u * 256u);
}

TEST_CASE("traces agree with direct point counts") {
  for (std::uint64_t q : {3, 5, 9}) {
    CurveLab lab(q);
    const auto curves = lab.enumerate_odd(1);
    for (std::size_t i = 0; i < curves.size(); i += 1 + curves.size() / 150) {
      const auto& c = curves[i];
      std::vector<long long> a;
      for (unsigned m = 1; m <= 3; ++m) {
        a.push_back(lab.trace(c, m));
        CHECK(a.back() == static_cast<long long>(std::pow(q, m)) + 1 - lab.count_points(c, m));
      }
      CHECK(std::abs(a[0]) <= static_cast<long long>(2 * std::sqrt(static_cast<double>(q))));
      // Newton identity a_m = a_1 a_{m-1} - q a_{m-2} with a_0 = 2
      const auto ext = extend_traces(std::span<const long long>(a.data(), 1), 1, q, 3);
      CHECK(ext[0] == 2);
      CHECK(ext[2] == mpz_class(static_cast<long>(a[1])));
      CHECK(ext[3] == mpz_class(static_cast<long>(a[2])));
      if (q == 3) {
        CHECK(a[1] == a[0] * a[0] - 6);
        CHECK(a[2] == a[0] * a[0] * a[0] - 9 * a[0]);
      }
    }
  }
  for (std::uint64_t q : {2, 4}) {
    CurveLab lab(q);
    const auto curves = lab.enumerate_even(1);
    for (std::size_t i = 0; i < curves.size(); i += 1 + curves.size() / 150) {
      for (unsigned m = 1; m <= 3; ++m) {
        CHECK(lab.trace(curves[i], m) == static_cast<long long>(std::pow(q, m)) + 1 - lab.count_points(curves[i], m));
      }
    }
  }
  // genus-two traces satisfy the Weil bound
  CurveLab lab(3);
  for (const auto& c : lab.enumerate_odd(2)) CHECK(std::abs(lab.trace(c, 1)) <= 6);
}

TEST_CASE("genus-zero curves have vanishing traces") {
  CurveLab odd(5);
  for (const auto& c : odd.enumerate_odd(0)) {
    for (unsigned m = 1; m <= 3; ++m) CHECK(odd.trace(c, m) == 0);
  }
  CurveLab even(4);
  for (const auto& c : even.enumerate_even(0)) {
    for (unsigned m = 1; m <= 2; ++m) CHECK(even.trace(c, m) == 0);
  }
}

TEST_CASE("scaling involutions permute the families") {
  CurveLab lab(5);
  const FiniteField& k = lab.base();
  const auto curves = lab.enumerate_odd(1);
  std::set<Poly> all;
  for (const auto& c : curves) all.insert(c.f);
  FiniteField::Elem t = 2;  // nonsquare mod 5
  std::set<Poly> image;
  for (const auto& c : curves) {
    Poly f = c.f;
    for (auto& x : f) x = k.mul(x, t);
    image.insert(f);
  }
  CHECK(image == all);

  CurveLab lab2(4);
  const FiniteField& k4 = lab2.base();
  const auto even = lab2.enumerate_even(1);
  std::set<std::pair<Poly, Poly>> pairs;
  for (const auto& c : even) pairs.insert({c.h, c.f});
  // s with trace one is not of the form r^2 + r
  FiniteField::Elem s = 0;
  for (FiniteField::Elem x = 1; x < 4; ++x) {
    if (k4.absolute_trace(x) == 1) s = x;
  }
  REQUIRE(s != 0);
  std::set<std::pair<Poly, Poly>> moved;
  for (const auto& c : even) {
    Poly f = kpoly::add(k4, c.f, kpoly::scale(k4, kpoly::mul(k4, c.h, c.h), s));
    f.resize(c.f.size(), 0);
    moved.insert({c.h, f});
  }
  CHECK(moved == pairs);
}

TEST_CASE("oracle values") {
  CurveLab f3(3), f2(2);
  CHECK(f3.brute_u(UTuple::parse("(2^1)"), 0) == -1);
  CHECK(f3.brute_u(UTuple::parse("(1^2,1^2,1^2)"), 0) == 3);
  CHECK(f2.brute_u(UTuple::parse("(1^2,1^2,1^2)"), 0) == 0);
  CHECK(f3.brute_a(AExpr::parse("a2"), 2) == -80);
  CHECK(f3.brute_a(AExpr::parse("a0"), 2) == 27);
  CHECK(f3.brute_a(AExpr::parse("a6"), 1) == 2);
  CHECK(f3.brute_a(AExpr::parse("a0"), 1) == 3);
  CHECK(f2.brute_a(AExpr::parse("a0"), 1) == 2);
  CHECK(f3.brute_fixed_points(2, std::vector<unsigned>{}) == 27);
  CHECK(f3.brute_fixed_points(2, std::vector<unsigned>{1}) == 108);
  for (const auto& mu : partitions(3)) {
    const mpq_class v = f3.brute_fixed_points(2, mu);
    CHECK(v.get_den() == 1);
    CHECK(v >= 0);
  }
}

TEST_CASE("decomposition identity holds numerically") {
  for (std::uint64_t q : {2, 3, 4}) {
    CurveLab lab(q);
    for (int g = 0; g <= 1; ++g) {
      for (unsigned w = 0; w <= 4; ++w) {
        for (const auto& x : a_expressions_of_weight(w)) {
          mpq_class sum;
          for (const auto& [t, c] : decompose_a(x)) {
            const mpq_class u = lab.brute_u(t, g);
            if (t.odd_weight()) CHECK(u == 0);
            sum += c * u;
          }
          CHECK(sum == lab.brute_a(x, g));
        }
      }
    }
  }
}

TEST_CASE("fiber statistics") {
  CurveLab lab(3);
  const FiniteField& k = lab.base();
  std::map<std::vector<long long>, mpz_class> hist;
  for (const auto& c : lab.enumerate_odd(1)) {
    long long split = 0, inert = 0, ramified = 0;
    auto classify = [&](FiniteField::Elem v) {
      if (v == 0) {
        ++ramified;
        return;
      }
      bool square = false;
      for (FiniteField::Elem y = 1; y < 3; ++y) square = square || k.mul(y, y) == v;
      ++(square ? split : inert);
    };
    classify(c.f.back());
    for (FiniteField::Elem x = 0; x < 3; ++x) {
      FiniteField::Elem v = 0;
      for (std::size_t i = c.f.size(); i-- > 0;) v = k.add(k.mul(v, x), c.f[i]);
      classify(v);
    }
    CHECK(split + inert + ramified == 4);
    CHECK(lab.trace(c, 1) == inert - split);
    ++hist[{split, inert}];
  }
  // moments of the per-curve fiber counts match the oracle
  for (const auto& [text, i, j] : {std::tuple{"b1", 1, 0}, std::tuple{"c1", 0, 1}, std::tuple{"b1 c1", 1, 1},
                                   std::tuple{"b1^2 c1", 2, 1}, std::tuple{"c1^3", 0, 3}}) {
    mpq_class sum;
    for (const auto& [key, n] : hist) {
      mpz_class term = n;
      for (int r = 0; r < i; ++r) term *= static_cast<long>(key[0]);
      for (int r = 0; r < j; ++r) term *= static_cast<long>(key[1]);
      sum += term;
    }
    CHECK(lab.brute_bc(BCExpr::parse(text), 1) == sum * lab.group_inverse(1));
  }
  // b_1 = (u(1^2) + u(1^1)) / 2 in the same normalization
  for (int g = 1; g <= 2; ++g) {
    const mpq_class half = (lab.brute_u(UTuple::parse("(1^2)"), g) + lab.brute_u(UTuple::parse("(1^1)"), g)) / 2;
    CHECK(lab.brute_bc(BCExpr::parse("b1"), g) == half);
  }
}

TEST_CASE("trace histograms") {
  CurveLab lab(3);
  const auto& h = lab.trace_histogram(1);
  mpz_class total;
  for (const auto& [key, n] : h.counts) total += n;
  CHECK(total == h.curves);
  CHECK(h.curves == 144);
}

TEST_CASE("equivalence classes in characteristic two") {
  CurveLab lab(2);
  for (int g = 0; g <= 1; ++g) {
    const auto rep = equivalence_class_probe(lab, g);
    CHECK(rep.ok());
    CHECK(rep.vz_total == rep.classes);
  }
  CHECK(equivalence_class_probe(lab, 2, false).class_sizes_ok);
  CHECK_THROWS(equivalence_class_probe(CurveLab(3), 0));
}

TEST_CASE("budgets are enforced") {
  CurveLab lab(5, LabBudget{1000, std::uint64_t{1} << 22, 1});
  CHECK_THROWS_AS(lab.enumerate_odd(2), BudgetExceeded);
  CHECK_THROWS_AS(lab.brute_a(AExpr::parse("a2"), 2), BudgetExceeded);
}

TEST_CASE("parallel enumeration is deterministic") {
  CurveLab one(5, LabBudget{std::uint64_t{1} << 30, std::uint64_t{1} << 22, 1});
  CurveLab four(5, LabBudget{std::uint64_t{1} << 30, std::uint64_t{1} << 22, 4});
  CHECK(one.brute_a(AExpr::parse("a1^2 a2"), 1) == four.brute_a(AExpr::parse("a1^2 a2"), 1));
  CHECK(one.trace_histogram(1).counts == four.trace_histogram(1).counts);
}
