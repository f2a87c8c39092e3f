#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypcount/errors.hpp"
#include "hypcount/tuples.hpp"

using namespace hypcount;

namespace {

UTuple T(const std::string& s) { return UTuple::parse(s); }
QPoly P(const std::string& s) { return QPoly::parse(s); }

ULinComb comb(std::initializer_list<std::pair<const char*, mpq_class>> terms) {
  ULinComb out;
  for (const auto& [t, c] : terms) add_term(out, T(t), c);
  return out;
}

unsigned weighted(const UTuple& t) { return t.weighted_degree(); }

}  // namespace

TEST_CASE("tuple and expression parsing") {
  const UTuple t = T("(1^1, 2^1,1^2)");
  CHECK(t.str() == "(2^1,1^2,1^1)");
  CHECK(T(t.str()) == t);
  CHECK(t.degree() == 4);
  CHECK(t.weighted_degree() == 5);
  CHECK(t.odd_weight());
  CHECK(t.r_flag() == 1);
  CHECK(T("(1^2,3^2)").r_flag() == 0);
  CHECK(T("()").empty());
  CHECK_THROWS_AS(T("(1^3)"), ParseError);
  CHECK_THROWS_AS(T("1^2"), ParseError);

  const AExpr a = AExpr::parse("a2 a1^4");
  CHECK(a.weight() == 6);
  CHECK(AExpr::parse(a.str()) == a);
  CHECK(AExpr::parse("a0").empty());
  CHECK_THROWS_AS(AExpr::parse("a1^"), ParseError);
  const BCExpr bc = BCExpr::parse("b1^2 c2");
  CHECK(bc.weight() == 4);
  CHECK(BCExpr::parse(bc.str()) == bc);
  CHECK_THROWS_AS(BCExpr::parse("b1 d2"), ParseError);
}

TEST_CASE("decomposition of a-expressions") {
  CHECK(decompose_a(AExpr::parse("a2^2")) ==
        comb({{"(2^1,2^1)", 1}, {"(2^1,1^2)", 2}, {"(2^2)", 2}, {"(1^2,1^2)", 1}, {"(1^2)", 1}}));
  CHECK(decompose_a(AExpr::parse("a1^4 a2")) == comb({{"(2^1,1^1,1^1,1^1,1^1)", -1},
                                                        {"(2^1,1^2,1^1,1^1)", -6},
                                                        {"(2^1,1^2,1^2)", -3},
                                                        {"(2^1,1^1,1^1)", -4},
                                                        {"(2^1,1^2)", -1},
                                                        {"(1^2,1^1,1^1,1^1,1^1)", -1},
                                                        {"(1^2,1^2,1^1,1^1)", -6},
                                                        {"(1^1,1^1,1^1,1^1)", -4},
                                                        {"(1^2,1^2,1^2)", -3},
                                                        {"(1^2,1^1,1^1)", -22},
                                                        {"(1^2,1^2)", -7},
                                                        {"(1^1,1^1)", -8},
                                                        {"(1^2)", -1}}));
  CHECK(decompose_a(AExpr::parse("a2")) == comb({{"(2^1)", -1}, {"(1^2)", -1}}));
  CHECK(decompose_a(AExpr::parse("a6")) == comb({{"(6^1)", -1}, {"(3^2)", -1}, {"(2^1)", -1}, {"(1^2)", -1}}));
  CHECK(decompose_a(AExpr::parse("a0")) == comb({{"()", 1}}));
}

TEST_CASE("general case") {
  CHECK(general_case(AExpr::parse("a6")) == T("(6^1)"));
  CHECK(general_case(AExpr::parse("a1^4 a2")) == T("(2^1,1^1,1^1,1^1,1^1)"));
  CHECK(general_case(AExpr::parse("a2^2")) == T("(2^1,2^1)"));
  for (unsigned w = 0; w <= 7; ++w) {
    for (const auto& x : a_expressions_of_weight(w)) {
      const ULinComb d = decompose_a(x);
      int top = 0;
      unsigned slots = 0;
      for (const auto& [n, r] : x.powers()) slots += r;
      for (const auto& [t, c] : d) {
        CHECK(c.get_den() == 1);
        CHECK(weighted(t) <= w);
        CHECK(weighted(t) % 2 == w % 2);
        if (t.degree() == w) {
          ++top;
          CHECK(t == general_case(x));
          CHECK(c == (slots % 2 ? -1 : 1));
        }
      }
      CHECK(top == 1);
      CHECK(expr_of_general_case(general_case(x)) == x);
    }
  }
}

TEST_CASE("decomposition of bc-expressions") {
  // odd-weight tuples vanish and are dropped
  CHECK(decompose_bc(BCExpr::parse("b1")) == comb({{"(1^2)", mpq_class(1, 2)}}));
  CHECK(decompose_bc(BCExpr::parse("b2")) == comb({{"(2^2)", mpq_class(1, 2)}, {"(2^1)", mpq_class(1, 2)}}));
  CHECK(decompose_bc(BCExpr::parse("c2")) == comb({{"(2^2)", mpq_class(1, 2)}, {"(2^1)", mpq_class(-1, 2)}}));
  CHECK(decompose_bc(BCExpr::parse("b1^2 c2")) == comb({{"(2^2,1^2,1^2)", mpq_class(1, 8)},
                                                         {"(2^2,1^1,1^1)", mpq_class(1, 8)},
                                                         {"(2^2,1^2)", mpq_class(1, 4)},
                                                         {"(2^1,1^2,1^2)", mpq_class(-1, 8)},
                                                         {"(2^1,1^1,1^1)", mpq_class(-1, 8)},
                                                         {"(2^1,1^2)", mpq_class(-1, 4)}}));
  for (unsigned w = 1; w <= 5; ++w) {
    for (const auto& x : bc_expressions_of_weight(w)) {
      for (const auto& [t, c] : decompose_bc(x)) {
        CHECK(t.degree() <= w);
        CHECK(!t.odd_weight());
      }
    }
  }
}

TEST_CASE("every even tuple of degree at most 4 arises from a bc product") {
  // prod (b_i - c_i)^{s_i} (b_i + c_i)^{t_i} has the tuple as its unique top-degree term
  for (unsigned n = 1; n <= 4; ++n) {
    for (const auto& parts : partitions(n)) {
      for (unsigned mask = 0; mask < (1u << parts.size()); ++mask) {
        std::vector<USlot> slots;
        for (std::size_t i = 0; i < parts.size(); ++i) slots.push_back({parts[i], (mask >> i) & 1u ? 2u : 1u});
        const UTuple target(slots);
        if (target.odd_weight()) continue;
        ULinComb total;
        const std::size_t k = slots.size();
        for (unsigned pick = 0; pick < (1u << k); ++pick) {
          std::map<unsigned, unsigned> b, c;
          mpq_class sign = 1;
          for (std::size_t i = 0; i < k; ++i) {
            if ((pick >> i) & 1u) {
              ++c[slots[i].n];
              if (slots[i].r == 1) sign = -sign;
            } else {
              ++b[slots[i].n];
            }
          }
          for (const auto& [t, coeff] : decompose_bc(BCExpr(b, c))) add_term(total, t, sign * coeff);
        }
        std::vector<UTuple> top;
        for (const auto& [t, coeff] : total) {
          if (t.degree() == n) top.push_back(t);
        }
        REQUIRE(top.size() == 1);
        CHECK(top[0] == target);
      }
    }
  }
}

TEST_CASE("orbit counts") {
  const std::vector<unsigned> d2{2}, d111{1, 1, 1}, d1{1}, d22{2, 2};
  CHECK(orbit_count_poly(d2) == P("q^2 - q"));
  CHECK(orbit_count_poly(d111) == P("q^3 - q"));
  CHECK(orbit_count_poly(d1) == P("q + 1"));
  CHECK(orbit_count_poly(d22) == P("q^4 - 2*q^3 - q^2 + 2*q"));
}

TEST_CASE("sieve coefficients") {
  const UTuple t = T("(1^2,1^2,1^2)");
  CHECK(bj_poly(t, 3) == P("q - 1").pow(3));
  CHECK(bj_poly(t, 1) == P("q - 3"));
  CHECK(bj_poly(t, 0) == QPoly(1));
  CHECK(bhat_poly(T("(2^1)"), 1) == P("q + 1"));
  CHECK(bhat_poly(T("(2^1)"), -1).is_zero());
  for (const char* s : {"(3^1,2^2,1^1)", "(2^1,2^1)", "(4^1,1^2)", "(5^1)"}) {
    const UTuple u = T(s);
    QPoly prod(1);
    for (unsigned n : u.degrees()) prod *= QPoly::q_pow(n) - QPoly(1);
    CHECK(bj_poly(u, static_cast<int>(u.degree())) == prod);
    // prepending a degree-one slot turns b into b-hat
    std::vector<USlot> slots = u.slots();
    slots.push_back({1, 1});
    const UTuple v(slots);
    for (int j = 0; j <= 8; ++j) CHECK(bhat_poly(v, j) == bj_poly(u, j));
  }
}

TEST_CASE("characteristic polynomials") {
  CHECK(char_poly(AExpr::parse("a1^4 a2")) == LambdaPoly{1, -3, 2, 2, -3, 1});
  CHECK(char_poly(T("(2^1,1^2,1^1,1^1)")) == LambdaPoly{-1, 2, 0, -2, 1});
  CHECK(char_poly(T("(1^2,1^2,1^2)")) == LambdaPoly{1, -2, 1});
  CHECK(char_poly(AExpr::parse("a6")) == LambdaPoly{1, 1, 1, 1, 1, 1});
  CHECK(max_root_multiplicity(LambdaPoly{1, -3, 2, 2, -3, 1}) == 4);
  CHECK(max_root_multiplicity(LambdaPoly{1, 1}) == 1);
  CHECK(max_root_multiplicity(LambdaPoly{1, 2, 3, 2, 1}) == 2);  // (L^2+L+1)^2
  CHECK(max_root_multiplicity(LambdaPoly{1}) == 0);
  CHECK(render_lambda(LambdaPoly{1, -2, 1}) == "L^2 - 2*L + 1");
}

TEST_CASE("genus-zero reduction") {
  CHECK(genus0_reduce(T("(4^1,1^2,1^1,1^1)")) ==
        comb({{"(2^2,1^2,1^2)", 1}, {"(1^2,1^2,1^2)", 1}, {"(1^2,1^2)", 1}, {"(2^2,1^2)", -1}, {"(1^2)", -1}}));
  CHECK(genus0_reduce_step(T("(6^1,6^1,3^2,1^2,1^2)")) == comb({{"(6^1,3^2,3^2,1^2,1^2)", -1},
                                                                {"(6^1,3^2,2^1,1^2,1^2)", -1},
                                                                {"(6^1,3^2,1^2,1^2,1^2)", -1},
                                                                {"(6^1,3^2,1^2,1^2)", -5},
                                                                {"(6^2,3^2,1^2,1^2)", -6}}));
  CHECK(genus0_reduce_step(T("(6^1)")) == comb({{"(3^2)", -1}, {"(2^1)", -1}, {"(1^2)", -1}}));
  CHECK(genus0_reduce(T("(2^2,1^2)")) == comb({{"(2^2,1^2)", 1}}));
  for (unsigned w = 0; w <= 6; ++w) {
    for (const auto& x : a_expressions_of_weight(w)) {
      for (const auto& [t, c] : decompose_a(x)) {
        for (const auto& [s, d] : genus0_reduce(t)) CHECK((s.r_flag() == 0 || s.empty()));
      }
    }
  }
}

TEST_CASE("sigma moment polynomials") {
  auto moments = [](std::initializer_list<unsigned> cycle) {
    const std::vector<unsigned> v(cycle);
    return sigma_moment_poly(v);
  };
  const AExpr a0, a1 = AExpr::parse("a1"), a2 = AExpr::parse("a2"), a11 = AExpr::parse("a1^2");
  CHECK(moments({1}) == MomentPoly{{a0, P("q + 1")}, {a1, QPoly(-1)}});
  CHECK(moments({2}) == MomentPoly{{a0, P("q^2 - q")}, {a1, QPoly(1)}, {a2, QPoly(-1)}});
  CHECK(moments({1, 1}) == MomentPoly{{a0, P("q^2 + q")}, {a1, P("-2*q - 1")}, {a11, QPoly(1)}});
  // the top monomial is the matching a-expression, with sign (-1)^(cycles)
  for (unsigned n = 1; n <= 6; ++n) {
    for (const auto& mu : partitions(n)) {
      const MomentPoly m = sigma_moment_poly(mu);
      std::map<unsigned, unsigned> powers;
      for (unsigned x : mu) ++powers[x];
      const QPoly top_coeff(mu.size() % 2 == 0 ? 1 : -1);
      unsigned best = 0;
      for (const auto& [x, c] : m) best = std::max(best, x.weight());
      CHECK(best == n);
      for (const auto& [x, c] : m) {
        if (x.weight() == n) {
          CHECK(x == AExpr(powers));
          CHECK(c == top_coeff);
        }
      }
    }
  }
}

TEST_CASE("number theory helpers") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(6) == 1);
  CHECK(moebius(4) == 0);
  CHECK(moebius(7) == -1);
  CHECK(divisors(12) == std::vector<unsigned>{1, 2, 3, 4, 6, 12});
  CHECK(partitions(5).size() == 7);
  CHECK(partitions(0).size() == 1);
}
