#include "cavity/radical.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cavity/errors.hpp"

namespace cavity {

bool is_squarefree(long v) {
  if (v < 1) return false;
  for (long d = 2; d * d <= v; ++d) {
    if (v % (d * d) == 0) return false;
  }
  return true;
}

long squarefree(SquarefreeRank p) {
  if (p == 0) throw std::domain_error("squarefree: rank is 1-based, got 0");
  static std::mutex mu;
  static std::vector<long> cache{1};
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() < p) {
    long candidate = cache.back() + 1;
    while (!is_squarefree(candidate)) ++candidate;
    cache.push_back(candidate);
  }
  return cache[p - 1];
}

Radical Radical::term(SquarefreeRank p, BigInt coeff) {
  if (p == 0) throw std::domain_error("Radical::term: rank is 1-based, got 0");
  Radical r;
  r.add_term(p, coeff);
  return r;
}

Radical Radical::integer(BigInt n) { return term(1, std::move(n)); }

BigInt Radical::coefficient(SquarefreeRank p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void Radical::add_term(SquarefreeRank p, const BigInt& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(p, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Radical& Radical::operator+=(const Radical& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, c);
  return *this;
}

Radical& Radical::operator-=(const Radical& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, -c);
  return *this;
}

Radical Radical::operator+(const Radical& o) const {
  Radical r = *this;
  r += o;
  return r;
}

Radical Radical::operator-(const Radical& o) const {
  Radical r = *this;
  r -= o;
  return r;
}

Radical Radical::operator-() const {
  Radical r;
  for (const auto& [p, c] : terms_) r.terms_.emplace(p, -c);
  return r;
}

Radical Radical::operator*(const BigInt& c) const {
  Radical r;
  if (c == 0) return r;
  for (const auto& [p, coeff] : terms_) r.terms_.emplace(p, coeff * c);
  return r;
}

mpf_class Radical::eval(unsigned digits) const {
  if (digits < 15) throw std::domain_error("Radical::eval: precision must be >= 15 digits");
  // 3.33 bits per decimal digit plus guard bits for the summation.
  const mp_bitcnt_t prec = static_cast<mp_bitcnt_t>(digits * 10 / 3 + 64);
  mpf_class sum(0, prec);
  for (const auto& [p, c] : terms_) {
    mpf_class root(squarefree(p), prec);
    mpf_sqrt(root.get_mpf_t(), root.get_mpf_t());
    mpf_class coeff(c, prec);
    sum += coeff * root;
  }
  return sum;
}

double Radical::to_float(unsigned digits) const { return eval(digits).get_d(); }

std::string Radical::to_text() const {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (const auto& [p, c] : terms_) {
    if (!first) os << ',';
    first = false;
    os << '(' << p << ',' << c.get_str() << ')';
  }
  os << ']';
  return os.str();
}

Radical Radical::from_text(const std::string& text) {
  auto fail = [&](const std::string& why) {
    throw FormatError("Radical::from_text: " + why + " in '" + text + "'");
  };
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i >= text.size() || text[i] != '[') fail("expected '['");
  ++i;
  Radical r;
  skip_ws();
  if (i < text.size() && text[i] == ']') return r;
  while (true) {
    skip_ws();
    if (i >= text.size() || text[i] != '(') fail("expected '('");
    ++i;
    skip_ws();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) fail("expected rank");
    unsigned long p = std::stoul(text.substr(start, i - start));
    if (p == 0) fail("rank must be positive");
    skip_ws();
    if (i >= text.size() || text[i] != ',') fail("expected ','");
    ++i;
    skip_ws();
    start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) fail("expected coefficient");
    BigInt coeff(text.substr(start, i - start));
    skip_ws();
    if (i >= text.size() || text[i] != ')') fail("expected ')'");
    ++i;
    r.add_term(static_cast<SquarefreeRank>(p), coeff);
    skip_ws();
    if (i < text.size() && text[i] == ',') {
      ++i;
      continue;
    }
    break;
  }
  skip_ws();
  if (i >= text.size() || text[i] != ']') fail("expected ']'");
  ++i;
  skip_ws();
  if (i != text.size()) fail("trailing characters");
  return r;
}

} // namespace cavity
