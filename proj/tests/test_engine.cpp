#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <json.hpp>

#include "hypcount/engine.hpp"
#include "hypcount/errors.hpp"

using namespace hypcount;

namespace {

constexpr Parity kOdd = Parity::Odd;
constexpr Parity kEven = Parity::Even;

UTuple T(const std::string& s) { return UTuple::parse(s); }
AExpr A(const std::string& s) { return AExpr::parse(s); }
QRat R(const std::string& s) { return QRat::parse(s); }
QRat qpow(long e) { return QRat(QPoly::q_pow(static_cast<unsigned>(e))); }
QRat sgn(int g) { return QRat(g % 2 == 0 ? 1 : -1); }

// one engine per process; the genus-one table is built on first use
Engine& engine() {
  static Engine e;
  return e;
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("hypcount-test-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("values at genus -1 are the constant J") {
  Engine& e = engine();
  for (Parity p : {kOdd, kEven}) {
    CHECK(e.u_value(T("(1^2,1^2,1^2)"), -1, p) == QRat(1));
    CHECK(e.u_value(T("(2^1,1^1,1^1)"), -1, p) == R("q"));
    CHECK(e.u_value(T("(6^1)"), -1, p) == R("q^3 + q - 1"));
    CHECK(e.u_value(T("(2^1)"), -1, p) == R("(1)/(q + 1)"));
  }
}

TEST_CASE("u-values in odd characteristic") {
  Engine& e = engine();
  for (int g = 0; g <= 8; ++g) {
    CHECK(e.u_value(T("(2^1)"), g, kOdd) == -sgn(g));
    CHECK(e.u_value(T("(1^2,1^1,1^1)"), g, kOdd) == QRat(g) * R("1 - q") - R("q") + QRat(2));
    CHECK(e.u_value(T("(1^1)"), g, kOdd).is_zero());
  }
  const char* seeds[] = {"q^3 + q - 1", "-q^2", "-q^4 + 1", "-q^6 + q^2 - q", "q^6 + q^4 - q^3", "0"};
  for (int g = -1; g <= 4; ++g) CHECK(e.u_value(T("(6^1)"), g, kOdd) == R(seeds[g + 1]));
  for (int g = 5; g <= 20; ++g) CHECK(e.u_value(T("(6^1)"), g, kOdd) == e.u_value(T("(6^1)"), g - 6, kOdd));
  CHECK(e.u_value(T("(1^2,1^2,1^2)"), 0, kOdd) == R("q^2 - 3*q + 3"));
}

TEST_CASE("u-values in even characteristic") {
  Engine& e = engine();
  CHECK(e.u_value(T("(1^2,1^2,1^2)"), 0, kEven) == R("q^2 - 3*q + 2"));
  CHECK(e.u_value(T("(1^2,1^2,1^2)"), 1, kEven) == R("q^4 - 3*q^3 + 5*q^2 - 6*q + 3"));
  for (int g = 2; g <= 10; ++g) {
    const QRat lhs = e.u_value(T("(1^2,1^2,1^2)"), g, kEven);
    const QRat rhs = QRat(2) * e.u_value(T("(1^2,1^2,1^2)"), g - 1, kEven) -
                     e.u_value(T("(1^2,1^2,1^2)"), g - 2, kEven) + qpow(2 * g - 1) * R("q - 1").pow(3);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("genus-one provider") {
  Engine& e = engine();
  CHECK(e.genus1_u(T("(6^1)"), kOdd) == QPoly::parse("-q^4 + 1"));
  CHECK_THROWS_AS(e.genus1_u(T("(3^2,2^1,1^1)"), kOdd), UnsupportedBaseCase);
  CHECK_THROWS_AS(e.u_value(T("(3^2,2^1,1^1,1^1)"), 1, kOdd), UnsupportedBaseCase);
  const GenusOneTable& t = e.genus1_table();
  CHECK(t.entries.at(A("a6")) == QPoly::parse("q - 1"));
  CHECK(t.entries.at(A("a0")) == QPoly::parse("q"));
  CHECK(t.entries.at(A("a1 a2")).is_zero());
  for (const auto& [x, p] : t.entries) {
    if (x.weight() % 2 == 1) CHECK(p.is_zero());
    CHECK(e.a_value(x, 1, kOdd) == QRat(p));
  }
  const GenusOneTable back = GenusOneTable::from_json(t.to_json());
  CHECK(back.entries == t.entries);
  CHECK(back.max_weight == t.max_weight);
  CHECK(back.provenance.at(A("a6")).q_values == t.provenance.at(A("a6")).q_values);
}

TEST_CASE("moment expressions") {
  Engine& e = engine();
  for (int g = 0; g <= 10; ++g) {
    CHECK(e.a_value(A("a2"), g, kOdd) == sgn(g) - qpow(2 * g));
    CHECK(e.a_value(A("a1^2"), g, kOdd) == qpow(2 * g) - QRat(1));
    const QRat tail = g % 2 == 0 ? R("2*q") : R("q^3 - q - 2");
    const QRat a1sq_a2 = -(qpow(2 * g + 2) - QRat(1)) / R("q + 1") - qpow(2 * g) +
                         QRat(g) * QRat(mpq_class(1, 2)) * R("q^3 + q - 2") + QRat(mpq_class(1, 2)) * tail;
    CHECK(e.a_value(A("a1^2 a2"), g, kOdd) == a1sq_a2);
  }
  for (int g = 1; g <= 6; ++g) {
    for (Parity p : {kOdd, kEven}) CHECK(e.a_value(A("a0"), g, p) == qpow(2 * g - 1));
  }
  CHECK(e.a_value(A("a0"), 0, kOdd) == R("(q)/(q^2 - 1)"));
  for (unsigned w : {1u, 3u, 5u, 7u}) {
    for (const auto& x : a_expressions_of_weight(w)) {
      for (int g = 0; g <= 3; ++g) CHECK(e.a_value(x, g, kEven).is_zero());
    }
  }
  for (unsigned w = 0; w <= 4; ++w) {
    for (const auto& x : a_expressions_of_weight(w)) {
      for (int g = 1; g <= 6; ++g) CHECK(e.a_value(x, g, kOdd) == e.a_value(x, g, kEven));
    }
  }
}

TEST_CASE("closed forms") {
  Engine& e = engine();
  const ClosedForm odd = e.closed_form(T("(1^2,1^2,1^2)"), kOdd);
  const ClosedForm even = e.closed_form(T("(1^2,1^2,1^2)"), kEven);
  for (int g = std::max(odd.g_min, 0); g <= 25; ++g) {
    CHECK(odd.eval(g) == (qpow(2 * g + 3) * R("q - 1") - QRat(2 * g + 2) * R("q^2 - 1") + R("3*q + 1")) / R("q + 1").pow(2));
  }
  for (int g = std::max(even.g_min, 0); g <= 25; ++g) {
    CHECK(even.eval(g) == R("q - 1") * (qpow(2 * g + 3) + QRat(g) * R("q^2 - 1") - R("3*q + 2")) / R("q + 1").pow(2));
  }
  const ClosedForm a6 = e.closed_form(A("a6"), kOdd);
  CHECK(a6.geometric == QRat(-1) - R("q^4 - q^3") / R("q^2 - q + 1"));
  CHECK(a6.period == 6);
  for (int g = a6.g_min; g <= 40; ++g) CHECK(a6.eval(g) == e.a_value(A("a6"), g, kOdd));

  const auto cp = char_poly(T("(1^2,1^1,1^1)"));
  CHECK(recursion_certificate([&](int g) { return e.u_value(T("(1^2,1^1,1^1)"), g, kOdd); }, cp, 2, 30));
  CHECK(!recursion_certificate([&](int g) { return QRat(g * g * g); }, LambdaPoly{1}, 2, 5));
}

TEST_CASE("fixed points and characters") {
  Engine& e = engine();
  CHECK(e.fixed_point_poly(2, std::vector<unsigned>{}, kOdd) == QPoly::parse("q^3"));
  CHECK(e.fixed_point_poly(2, std::vector<unsigned>{1}, kOdd) == QPoly::parse("q^4 + q^3"));
  CurveLab lab(3);
  for (unsigned n = 0; n <= 4; ++n) {
    for (const auto& mu : partitions(n)) {
      CHECK(e.fixed_point_poly(2, mu, kOdd).eval(3) == lab.brute_fixed_points(2, mu));
    }
  }
  CHECK(e.character_transform(2, 1, kOdd).at({1}) == QPoly::parse("q^4 + q^3"));
  CHECK(e.character_transform(2, 0, kOdd).at({}) == QPoly::parse("q^3"));
  for (unsigned n = 1; n <= 5; ++n) {
    const QPoly burnside = e.character_transform(2, n, kOdd).at({n});
    for (long q : {3, 5, 7, 9}) CHECK(burnside.eval(q).get_den() == 1);
  }
  CHECK(sn_character({2, 1}, {1, 1, 1}) == 2);
  CHECK(sn_character({2, 1}, {3}) == -1);
  CHECK(sn_character({1, 1, 1}, {2, 1}) == -1);
  CHECK(sn_character({3, 2}, {1, 1, 1, 1, 1}) == 5);
  CHECK(centralizer_order({2, 1}) == 2);
  CHECK(centralizer_order({1, 1, 1}) == 6);
  CHECK(centralizer_order({2, 2}) == 8);
  // column orthogonality: sum over lambda of chi^2 = centralizer order
  for (const auto& mu : partitions(5)) {
    long long s = 0;
    for (const auto& lambda : partitions(5)) s += sn_character(lambda, mu) * sn_character(lambda, mu);
    CHECK(mpz_class(static_cast<long>(s)) == centralizer_order(mu));
  }
}

TEST_CASE("persistent memo") {
  const auto dir = fresh_dir("memo");
  QRat v;
  {
    EngineOptions o;
    o.cache_dir = dir;
    Engine e(o);
    v = e.u_value(T("(2^1,1^1,1^1)"), 7, kOdd);
    e.u_value(T("(1^2,1^2)"), 4, kEven);
    e.save_cache();
  }
  std::ifstream in(dir / "umemo.jsonl");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  REQUIRE(!lines.empty());
  CHECK(std::is_sorted(lines.begin(), lines.end()));
  const auto rec = nlohmann::json::parse(lines.front());
  CHECK(rec.at("engine_version") == kEngineVersion);
  CHECK(rec.at("key").contains("tuple"));
  CHECK(rec.at("key").contains("parity"));

  // a stored value is served verbatim, so tampering shows through
  {
    std::ofstream out(dir / "umemo.jsonl");
    for (auto line : lines) {
      auto j = nlohmann::json::parse(line);
      if (j["key"]["tuple"] == "(2^1,1^1,1^1)" && j["key"]["g"] == 7) j["value"] = "12345";
      out << j.dump() << "\n";
    }
  }
  {
    EngineOptions o;
    o.cache_dir = dir;
    Engine e(o);
    CHECK(e.u_value(T("(2^1,1^1,1^1)"), 7, kOdd) == QRat(12345));
  }
  // a different engine version invalidates the file
  {
    std::ofstream out(dir / "umemo.jsonl");
    for (auto line : lines) {
      auto j = nlohmann::json::parse(line);
      j["engine_version"] = "other";
      if (j["key"]["tuple"] == "(2^1,1^1,1^1)" && j["key"]["g"] == 7) j["value"] = "12345";
      out << j.dump() << "\n";
    }
  }
  {
    EngineOptions o;
    o.cache_dir = dir;
    Engine e(o);
    CHECK(e.u_value(T("(2^1,1^1,1^1)"), 7, kOdd) == v);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("parse round trips of engine outputs") {
  Engine& e = engine();
  for (const char* t : {"(2^1)", "(1^2,1^2,1^2)", "(6^1)", "(2^2,1^2)"}) {
    for (int g = -1; g <= 4; ++g) {
      const QRat v = e.u_value(T(t), g, kOdd);
      CHECK(QRat::parse(v.str()) == v);
    }
  }
  CHECK(e.closed_form(A("a1^2"), kOdd).str().find("q^(2g)") != std::string::npos);
}
