#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  static const auto cache = std::filesystem::temp_directory_path() / "hypcount-cli-test-cache";
  const std::string cmd = std::string(HYPCOUNT_BIN) + " --cache " + cache.string() + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("decompose") {
  const Run a = run("decompose 'a2^2'");
  CHECK(a.code == 0);
  CHECK(a.out.find("2*u(2^2)") != std::string::npos);
  const Run b = run("--format json decompose 'b1^2 c2'");
  CHECK(b.code == 0);
  const auto j = nlohmann::json::parse(b.out);
  CHECK(j.at("terms").size() == 6);
  CHECK(run("--format json decompose 'a1^4 a2'").out.find("\"-22\"") != std::string::npos);
}

TEST_CASE("count") {
  const Run a = run("--format json count a0 --genus 3");
  REQUIRE(a.code == 0);
  const auto j = nlohmann::json::parse(a.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0].at("poly") == nlohmann::json::parse(R"([[5,"1","1"]])"));
  CHECK(j[0].at("parity") == "odd");

  const Run b = run("--format json count a2 --genus 0..4 --q 3");
  REQUIRE(b.code == 0);
  const auto k = nlohmann::json::parse(b.out);
  CHECK(k.size() == 5);
  CHECK(k[2].at("at").at("3") == "-80");

  const Run c = run("count 'a1^6' --char both --genus 5");
  CHECK(c.code == 0);
  CHECK(c.out.find("even - odd") != std::string::npos);

  const Run d = run("--format json count a0 --genus 0");
  CHECK(nlohmann::json::parse(d.out)[0].at("poly").is_null());

  CHECK(run("count '(1^2,1^2,1^2)'").out.find("g mod 1") != std::string::npos);
  CHECK(run("--format latex count a2 --genus 2").out.find("q^{4}") != std::string::npos);
}

TEST_CASE("fix") {
  const Run a = run("--format json fix --genus 2 --n 1 --schur");
  REQUIRE(a.code == 0);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j[0].at("fixed")[0].at("poly") == nlohmann::json::parse(R"([[4,"1","1"],[3,"1","1"]])"));
  CHECK(j[0].at("schur")[0].at("integral") == true);
  CHECK(run("fix --genus 2 --n 0").out.find("q^3") != std::string::npos);
}

TEST_CASE("bc with oracle comparison") {
  const Run a = run("bc 'b1^2 c2' --genus 1..2 --q 3");
  CHECK(a.code == 0);
  CHECK(a.out.find("!=") == std::string::npos);
}

TEST_CASE("verify") {
  const Run a = run("--format json verify appendix");
  CHECK(a.code == 0);
  const auto first = nlohmann::json::parse(a.out.substr(0, a.out.find('\n')));
  CHECK(first.at("passed") == true);
}

TEST_CASE("exit codes") {
  CHECK(run("count 'a1^8'").code == 3);
  CHECK(run("--allow-unsupported count '(3^2,2^1,1^1,1^1)' --genus 1").code == 3);
  CHECK(run("count a2 --genus x").code == 2);
  CHECK(run("count 'a1^^2' --genus 1").code == 2);
  CHECK(run("count a2 --char odd --q 6 --genus 1").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("verify nonsense").code == 2);
  CHECK(run("--budget-curves 10 bc b1 --genus 2 --q 3").code == 4);
  CHECK(run("--help").code == 0);
}
