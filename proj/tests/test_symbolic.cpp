#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypcount/errors.hpp"
#include "hypcount/qpoly.hpp"

using namespace hypcount;

namespace {

QPoly P(const std::string& s) { return QPoly::parse(s); }
QRat R(const std::string& s) { return QRat::parse(s); }

}  // namespace

TEST_CASE("polynomial arithmetic") {
  CHECK(P("q^3 + q^2 - 1") * P("q + 1") == P("q^4 + 2*q^3 + q^2 - q - 1"));
  CHECK(QPoly::exact_div(P("q^4 + q^3 + q^2 - 1"), P("q + 1")) == P("q^3 + q - 1"));
  CHECK(QPoly::gcd(P("q^2 - 1"), P("q^3 - q")) == P("q^2 - 1"));
  CHECK(QPoly::exact_div(P("q^3 - q"), P("q - 1")) == P("q^2 + q"));
  CHECK_THROWS(QPoly::exact_div(P("q^2 + 1"), P("q - 1")));
  const auto [quo, rem] = QPoly::divmod(P("q^3 + 2"), P("q - 1"));
  CHECK(quo == P("q^2 + q + 1"));
  CHECK(rem == QPoly(3));
  CHECK(P("q - 1").pow(3) == P("q^3 - 3*q^2 + 3*q - 1"));
  CHECK(P("1/2*q").coeff(1) == mpq_class(1, 2));
  CHECK(!P("1/2*q").is_integral());
  CHECK(P("q^2 + q").eval(3) == 12);
  CHECK(QPoly().degree() < 0);
}

TEST_CASE("parse and render round trip") {
  for (const char* s : {"0", "1", "-q", "q^7 - 3/4*q^2 + 5", "-1/2*q^3 + q"}) {
    const QPoly p = P(s);
    CHECK(P(p.str()) == p);
  }
  CHECK(P("q^2 - 3*q + 2").str() == "q^2 - 3*q + 2");
  CHECK(P("q^2 - 1/2").str(TextFormat::Latex).find("\\frac{1}{2}") != std::string::npos);
  CHECK_THROWS_AS(P("q^^2"), ParseError);
  CHECK_THROWS_AS(P("x + 1"), ParseError);
}

TEST_CASE("rational functions") {
  const QRat a = R("(q^2 - 1)/(q - 1)");
  CHECK(a.is_poly());
  CHECK(a.as_poly() == P("q + 1"));
  const QRat b(QPoly(1), P("q + 1"));
  CHECK(!b.is_poly());
  CHECK(b * QRat(P("q + 1")) == QRat(1));
  CHECK(b + b == QRat(QPoly(2), P("q + 1")));
  CHECK((b - b).is_zero());
  CHECK(b.eval(3) == mpq_class(1, 4));
  CHECK(R(b.str()) == b);
  // denominators are normalized to be monic
  CHECK(QRat(P("2*q"), P("4*q + 4")) == QRat(P("1/2*q"), P("q + 1")));
  CHECK_THROWS(QRat(QPoly(1), QPoly()));
}

TEST_CASE("linear systems") {
  std::vector<std::vector<QRat>> id{{QRat(1), QRat(0)}, {QRat(0), QRat(1)}};
  const auto x = solve_linear(id, {R("q"), R("q^2")});
  CHECK(x[0] == R("q"));
  CHECK(x[1] == R("q^2"));
  const auto y = solve_linear({{R("q + 1")}}, {R("q^2 - 1")});
  CHECK(y[0] == R("q - 1"));
  CHECK_THROWS_AS(solve_linear({{QRat(1), QRat(2)}, {QRat(2), QRat(4)}}, {QRat(1), QRat(2)}), SingularSystem);

  // recover the residue coefficients of a known closed form from its values
  ClosedForm cf;
  cf.geometric = R("(-1)/(q + 1)");
  cf.period = 2;
  cf.residue_polys = {{R("q"), R("1/2*q - 1")}, {R("1 - q^2"), R("3")}};
  for (unsigned r = 0; r < 2; ++r) {
    std::vector<std::vector<QRat>> m;
    std::vector<QRat> rhs;
    for (int g = static_cast<int>(r); g < 6; g += 2) {
      m.push_back({QRat(1), QRat(g)});
      rhs.push_back(cf.eval(g) - cf.geometric * QRat(QPoly::q_pow(2 * static_cast<unsigned>(g))));
      if (m.size() == 2) break;
    }
    const auto c = solve_linear(m, rhs);
    CHECK(c[0] == cf.residue_polys[r][0]);
    CHECK(c[1] == cf.residue_polys[r][1]);
  }
}

TEST_CASE("interpolation with validation") {
  auto samples = [](const std::function<mpq_class(long)>& f, std::initializer_list<long> xs) {
    std::vector<QSample> out;
    for (long x : xs) out.push_back({mpq_class(x), f(x)});
    return out;
  };
  CHECK(interpolate_poly(samples([](long x) { return mpq_class(x - 1); }, {3, 5, 7, 9}), 2, 1) == P("q - 1"));
  CHECK(interpolate_poly(samples([](long) { return mpq_class(7); }, {3, 5, 7}), 1, 1) == QPoly(7));
  CHECK_THROWS_AS(interpolate_poly(samples([](long x) { return mpq_class(x * x); }, {3, 5, 7, 9}), 1, 1),
                  InterpolationError);
  CHECK_THROWS_AS(interpolate_poly(samples([](long x) { return mpq_class(x); }, {3, 5}), 2, 1), InterpolationError);
}

TEST_CASE("closed form rendering and evaluation") {
  ClosedForm cf;
  cf.geometric = R("1");
  cf.period = 2;
  cf.residue_polys = {{R("1")}, {R("-1")}};
  cf.g_min = 0;
  CHECK(cf.eval(0) == R("2"));
  CHECK(cf.eval(3) == R("q^6 - 1"));
  CHECK_THROWS(cf.eval(-1));
  CHECK(cf.str().find("g mod 2") != std::string::npos);
}
