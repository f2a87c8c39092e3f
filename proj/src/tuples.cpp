#include "hypcount/tuples.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "hypcount/errors.hpp"

namespace hypcount {

int moebius(unsigned n) {
  if (n == 0) throw std::invalid_argument("moebius(0)");
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

std::vector<std::vector<unsigned>> partitions(unsigned n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned left, unsigned max_part) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (unsigned p = std::min(left, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

// ---- UTuple -----------------------------------------------------------------

UTuple::UTuple(std::vector<USlot> slots) : slots_(std::move(slots)) {
  for (const auto& s : slots_) {
    if (s.n == 0) throw std::invalid_argument("tuple entry with n = 0");
    if (s.r != 1 && s.r != 2) throw std::invalid_argument("tuple exponent must be 1 or 2");
  }
  std::sort(slots_.begin(), slots_.end(), std::greater<>());
}

unsigned UTuple::degree() const {
  unsigned d = 0;
  for (const auto& s : slots_) d += s.n;
  return d;
}

unsigned UTuple::weighted_degree() const {
  unsigned d = 0;
  for (const auto& s : slots_) d += s.n * s.r;
  return d;
}

int UTuple::r_flag() const {
  for (const auto& s : slots_) {
    if (s.r == 1) return 1;
  }
  return 0;
}

std::vector<unsigned> UTuple::degrees() const {
  std::vector<unsigned> out;
  for (const auto& s : slots_) out.push_back(s.n);
  return out;
}

std::string UTuple::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(slots_[i].n) + "^" + std::to_string(slots_[i].r);
  }
  return out + ")";
}

UTuple UTuple::parse(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw ParseError("tuple must be parenthesised: " + text);
  s = s.substr(1, s.size() - 2);
  std::vector<USlot> slots;
  if (s.empty()) return UTuple();
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto caret = item.find('^');
    const std::string n_text = item.substr(0, caret);
    const std::string r_text = caret == std::string::npos ? "1" : item.substr(caret + 1);
    auto all_digits = [](const std::string& t) {
      return !t.empty() && t.size() < 6 && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    if (!all_digits(n_text) || !all_digits(r_text)) throw ParseError("bad tuple entry '" + item + "'");
    const unsigned n = static_cast<unsigned>(std::stoul(n_text));
    const unsigned r = static_cast<unsigned>(std::stoul(r_text));
    if (n == 0 || (r != 1 && r != 2)) throw ParseError("bad tuple entry '" + item + "'");
    slots.push_back({n, r});
  }
  return UTuple(std::move(slots));
}

void add_term(ULinComb& comb, const UTuple& t, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = comb.emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) comb.erase(it);
  }
}

std::string render(const ULinComb& comb) {
  if (comb.empty()) return "0";
  // largest tuples first
  std::string out;
  bool first = true;
  for (auto it = comb.rbegin(); it != comb.rend(); ++it) {
    mpq_class c = it->second;
    const bool negative = c < 0;
    if (negative) c = -c;
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    first = false;
    if (c != 1) out += c.get_str() + "*";
    out += "u" + it->first.str();
  }
  return out;
}

// ---- expressions ------------------------------------------------------------

namespace {

void check_powers(const std::map<unsigned, unsigned>& powers) {
  for (const auto& [n, r] : powers) {
    if (n == 0 || r == 0) throw std::invalid_argument("expression factors need N >= 1 and R >= 1");
  }
}

std::string render_factors(char letter, const std::map<unsigned, unsigned>& powers) {
  std::string out;
  for (const auto& [n, r] : powers) {
    if (!out.empty()) out += " ";
    out += letter + std::to_string(n);
    if (r != 1) out += "^" + std::to_string(r);
  }
  return out;
}

struct Factor {
  char letter;
  unsigned n;
  unsigned r;
};

std::vector<Factor> parse_factors(const std::string& text, const std::string& letters) {
  std::vector<Factor> out;
  std::stringstream ss(text);
  std::string tok;
  bool any = false;
  while (ss >> tok) {
    any = true;
    std::size_t i = 0;
    const char letter = tok[i++];
    if (letters.find(letter) == std::string::npos) throw ParseError("unexpected factor '" + tok + "'");
    if (i < tok.size() && tok[i] == '_') ++i;
    std::size_t start = i;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
    if (i == start || i - start > 5) throw ParseError("missing index in factor '" + tok + "'");
    const unsigned n = static_cast<unsigned>(std::stoul(tok.substr(start, i - start)));
    unsigned r = 1;
    if (i < tok.size()) {
      if (tok[i] != '^') throw ParseError("bad factor '" + tok + "'");
      ++i;
      start = i;
      while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
      if (i == start || i != tok.size() || i - start > 5) throw ParseError("bad exponent in factor '" + tok + "'");
      r = static_cast<unsigned>(std::stoul(tok.substr(start, i - start)));
    }
    out.push_back({letter, n, r});
  }
  if (!any) throw ParseError("empty expression");
  return out;
}

}  // namespace

AExpr::AExpr(std::map<unsigned, unsigned> powers) : powers_(std::move(powers)) {
  for (auto it = powers_.begin(); it != powers_.end();) {
    it = it->second == 0 ? powers_.erase(it) : std::next(it);
  }
  check_powers(powers_);
}

unsigned AExpr::weight() const {
  unsigned w = 0;
  for (const auto& [n, r] : powers_) w += n * r;
  return w;
}

unsigned AExpr::slot_count() const {
  unsigned s = 0;
  for (const auto& [n, r] : powers_) s += r;
  return s;
}

AExpr AExpr::operator*(const AExpr& o) const {
  auto p = powers_;
  for (const auto& [n, r] : o.powers_) p[n] += r;
  return AExpr(std::move(p));
}

std::string AExpr::str() const { return powers_.empty() ? "a0" : render_factors('a', powers_); }

AExpr AExpr::parse(const std::string& text) {
  std::map<unsigned, unsigned> powers;
  for (const auto& f : parse_factors(text, "a")) {
    if (f.n == 0) continue;  // a0 is the unit
    powers[f.n] += f.r;
  }
  return AExpr(std::move(powers));
}

BCExpr::BCExpr(std::map<unsigned, unsigned> b, std::map<unsigned, unsigned> c) : b_(std::move(b)), c_(std::move(c)) {
  for (auto* m : {&b_, &c_}) {
    for (auto it = m->begin(); it != m->end();) {
      it = it->second == 0 ? m->erase(it) : std::next(it);
    }
    check_powers(*m);
  }
  if (weight() == 0) throw std::invalid_argument("bc-expression must have positive weight");
}

unsigned BCExpr::weight() const {
  unsigned w = 0;
  for (const auto& [n, r] : b_) w += n * r;
  for (const auto& [n, r] : c_) w += n * r;
  return w;
}

std::string BCExpr::str() const {
  std::string b = render_factors('b', b_), c = render_factors('c', c_);
  if (b.empty()) return c;
  if (c.empty()) return b;
  return b + " " + c;
}

BCExpr BCExpr::parse(const std::string& text) {
  std::map<unsigned, unsigned> b, c;
  for (const auto& f : parse_factors(text, "bc")) {
    if (f.n == 0) throw ParseError("b and c statistics start at index 1");
    (f.letter == 'b' ? b : c)[f.n] += f.r;
  }
  try {
    return BCExpr(std::move(b), std::move(c));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::vector<AExpr> a_expressions_of_weight(unsigned weight) {
  std::vector<AExpr> out;
  for (const auto& part : partitions(weight)) {
    std::map<unsigned, unsigned> powers;
    for (unsigned n : part) ++powers[n];
    out.emplace_back(std::move(powers));
  }
  return out;
}

std::vector<BCExpr> bc_expressions_of_weight(unsigned weight) {
  std::vector<BCExpr> out;
  if (weight == 0) return out;
  for (const auto& part : partitions(weight)) {
    std::map<unsigned, unsigned> mult;
    for (unsigned n : part) ++mult[n];
    std::vector<std::pair<unsigned, unsigned>> items(mult.begin(), mult.end());
    std::map<unsigned, unsigned> b, c;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == items.size()) {
        out.emplace_back(b, c);
        return;
      }
      const auto [n, r] = items[i];
      for (unsigned k = 0; k <= r; ++k) {
        if (k) b[n] = k; else b.erase(n);
        if (r - k) c[n] = r - k; else c.erase(n);
        rec(i + 1);
      }
      b.erase(n);
      c.erase(n);
    };
    rec(0);
  }
  return out;
}

}  // namespace hypcount
