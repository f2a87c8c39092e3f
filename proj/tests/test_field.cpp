#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "hypcount/errors.hpp"
#include "hypcount/field.hpp"
#include "hypcount/tuples.hpp"

using namespace hypcount;

namespace {

FieldTower tower(std::uint64_t q) { return FieldTower(PrimePower::from_q(q)); }

std::set<FiniteField::Elem> squares(const FiniteField& k) {
  std::set<FiniteField::Elem> out;
  for (FiniteField::Elem x = 1; x < k.size(); ++x) out.insert(k.mul(x, x));
  return out;
}

int roots_of_quadratic(const FiniteField& k, FiniteField::Elem a, FiniteField::Elem b) {
  int n = 0;
  for (FiniteField::Elem y = 0; y < k.size(); ++y) {
    if (k.add(k.add(k.mul(y, y), k.mul(a, y)), b) == 0) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("prime powers") {
  const auto pp = PrimePower::from_q(27);
  CHECK(pp.p == 3);
  CHECK(pp.k == 3);
  CHECK(pp.odd());
  CHECK(PrimePower::from_q(16).even());
  CHECK_THROWS_AS(PrimePower::from_q(12), std::invalid_argument);
  CHECK_THROWS_AS(PrimePower::from_q(1), std::invalid_argument);
}

TEST_CASE("field axioms on small fields") {
  for (std::uint64_t q : {2, 3, 4, 5, 8, 9, 16, 25, 27}) {
    const FieldTower t = tower(q);
    const FiniteField& k = t.base();
    REQUIRE(k.size() == q);
    for (FiniteField::Elem a = 1; a < q; ++a) {
      CHECK(k.mul(a, k.inv(a)) == 1);
      CHECK(k.add(a, k.neg(a)) == 0);
    }
    // Frobenius is the identity on the base field and bijective on k_2
    for (FiniteField::Elem a = 0; a < q; ++a) CHECK(k.pow(a, q) == a);
    const FiniteField& k2 = t.ext(2).field;
    std::set<FiniteField::Elem> image;
    std::size_t fixed = 0;
    for (FiniteField::Elem a = 0; a < k2.size(); ++a) {
      const auto fa = k2.pow(a, q);
      image.insert(fa);
      if (fa == a) ++fixed;
    }
    CHECK(image.size() == k2.size());
    CHECK(fixed == q);
  }
}

TEST_CASE("ring laws hold exhaustively on F_9 and F_8") {
  for (auto [p, d] : {std::pair{3u, 2u}, std::pair{2u, 3u}}) {
    const FiniteField k(p, d);
    const auto n = static_cast<FiniteField::Elem>(k.size());
    for (FiniteField::Elem a = 0; a < n; ++a) {
      for (FiniteField::Elem b = 0; b < n; ++b) {
        CHECK(k.mul(a, b) == k.mul(b, a));
        for (FiniteField::Elem c = 0; c < n; ++c) {
          CHECK(k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c)));
          CHECK(k.mul(k.mul(a, b), c) == k.mul(a, k.mul(b, c)));
        }
      }
    }
  }
}

TEST_CASE("embedding is a ring homomorphism") {
  const FieldTower t = tower(4);
  const Extension& e = t.ext(3);
  const FiniteField& k = t.base();
  for (FiniteField::Elem a = 0; a < 4; ++a) {
    for (FiniteField::Elem b = 0; b < 4; ++b) {
      CHECK(e.embed(k.add(a, b)) == e.field.add(e.embed(a), e.embed(b)));
      CHECK(e.embed(k.mul(a, b)) == e.field.mul(e.embed(a), e.embed(b)));
    }
  }
}

TEST_CASE("quadratic character") {
  const FieldTower t3 = tower(3);
  CHECK(quadratic_character(t3, 1, 2) == -1);
  CHECK(quadratic_character(t3, 1, 1) == 1);
  CHECK(quadratic_character(t3, 1, 0) == 0);
  // 2 is a nonsquare in F_3 and becomes a square in F_9
  CHECK(quadratic_character(t3, 2, t3.ext(2).embed(2)) == 1);
  CHECK_THROWS(quadratic_character(tower(4), 1, 1));

  for (std::uint64_t q : {3, 5, 9, 25, 27}) {
    const FieldTower t = tower(q);
    for (unsigned m : {1u, 2u}) {
      const FiniteField& k = t.ext(m).field;
      const auto sq = squares(k);
      long sum = 0;
      for (FiniteField::Elem a = 1; a < k.size(); ++a) {
        const int c = quadratic_character(t, m, a);
        CHECK(c == (sq.count(a) ? 1 : -1));
        sum += c;
      }
      CHECK(sum == 0);
      for (FiniteField::Elem a = 1; a < std::min<std::uint64_t>(k.size(), 30); ++a) {
        for (FiniteField::Elem b = 1; b < std::min<std::uint64_t>(k.size(), 30); ++b) {
          CHECK(quadratic_character(t, m, k.mul(a, b)) == quadratic_character(t, m, a) * quadratic_character(t, m, b));
        }
      }
    }
  }
}

TEST_CASE("quadratic character under field extension") {
  for (std::uint64_t q : {3, 5, 7}) {
    const FieldTower t = tower(q);
    for (unsigned m : {2u, 3u, 4u}) {
      for (FiniteField::Elem a = 1; a < q; ++a) {
        const int base = quadratic_character(t, 1, a);
        const int lifted = quadratic_character(t, m, t.ext(m).embed(a));
        CHECK(lifted == (m % 2 == 0 ? base * base : base));
      }
    }
  }
}

TEST_CASE("Artin-Schreier indicator") {
  const FieldTower t2 = tower(2);
  CHECK(artin_schreier_tau(t2, 1, 1, 0) == 1);
  CHECK(artin_schreier_tau(t2, 1, 1, 1) == -1);
  CHECK_THROWS(artin_schreier_tau(tower(3), 1, 1, 1));
  for (std::uint64_t q : {2, 4, 8, 16}) {
    const FieldTower t = tower(q);
    const FiniteField& k = t.base();
    for (FiniteField::Elem a = 0; a < q; ++a) {
      for (FiniteField::Elem b = 0; b < q; ++b) {
        CHECK(artin_schreier_tau(t, 1, a, b) + 1 == roots_of_quadratic(k, a, b));
      }
    }
  }
  // k_2 over F_4 has 16 elements
  const FieldTower t4 = tower(4);
  const FiniteField& k2 = t4.ext(2).field;
  for (FiniteField::Elem a = 0; a < 16; ++a) {
    for (FiniteField::Elem b = 0; b < 16; ++b) CHECK(artin_schreier_tau(t4, 2, a, b) + 1 == roots_of_quadratic(k2, a, b));
  }
}

TEST_CASE("projective points by exact degree") {
  auto degree_counts = [](const std::vector<ProjPoint>& pts) {
    std::map<unsigned, int> out;
    for (const auto& p : pts) ++out[p.exact_degree];
    return out;
  };
  const auto p31 = enumerate_proj_points(tower(3), 1);
  CHECK(p31.size() == 4);
  CHECK(degree_counts(p31) == std::map<unsigned, int>{{1, 4}});
  CHECK(degree_counts(enumerate_proj_points(tower(3), 2)) == std::map<unsigned, int>{{1, 4}, {2, 6}});
  CHECK(degree_counts(enumerate_proj_points(tower(2), 2)) == std::map<unsigned, int>{{1, 3}, {2, 2}});

  // exact degree by testing x^(q^d) == x directly
  const FieldTower t = tower(2);
  const FiniteField& k6 = t.ext(6).field;
  for (const auto& p : enumerate_proj_points(t, 6)) {
    if (p.at_infinity) {
      CHECK(p.exact_degree == 1);
      continue;
    }
    unsigned d = 1;
    auto x = k6.pow(p.value, 2);
    while (x != p.value) {
      x = k6.pow(x, 2);
      ++d;
    }
    CHECK(p.exact_degree == d);
    CHECK(6 % p.exact_degree == 0);
  }
}

TEST_CASE("point tuples with distinct orbits") {
  const std::vector<unsigned> d11{1, 1}, d2{2}, d111{1, 1, 1};
  CHECK(enumerate_A(tower(3), d11).size() == 12);
  CHECK(enumerate_A(tower(3), d2).size() == 6);
  CHECK(enumerate_A(tower(2), d111).size() == 6);
  const std::vector<std::vector<unsigned>> shapes{{1}, {2}, {3}, {1, 1}, {2, 1}, {2, 2}, {1, 1, 1}, {3, 1}, {2, 1, 1}};
  for (std::uint64_t q : {2, 3, 4, 5}) {
    for (const auto& s : shapes) {
      const auto n = enumerate_A(tower(q), s).size();
      CHECK(mpq_class(static_cast<unsigned long>(n)) == orbit_count_poly(s).eval(mpq_class(static_cast<unsigned long>(q))));
    }
  }
}

TEST_CASE("point budget") {
  const FieldTower t(PrimePower::from_q(3), 100);
  CHECK_THROWS_AS(t.points(5), BudgetExceeded);
}
