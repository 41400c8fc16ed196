#include "milnorflow/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "milnorflow/errors.hpp"

namespace milnorflow {

std::uint64_t Monomial::degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
}

int Monomial::pure_power_variable() const {
  int var = -1;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (var >= 0) return -1;
    var = static_cast<int>(i);
  }
  return var;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a);
  for (std::size_t i = 0; i < a.nvars(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.nvars(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

std::string to_string(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'z' + std::to_string(i);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p(m.nvars());
  p.add_term(m, c);
  return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.nvars() != nvars_) throw InvalidInput("monomial has wrong number of variables");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial r(nvars_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial r(nvars_);
  if (c == 0) return r;
  for (const auto& [m, coeff] : terms_) r.terms_.emplace(m, coeff * c);
  return r;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c < 0;
    Rational abs_c = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit = abs_c == 1;
    if (!unit || m.is_one()) {
      out << abs_c.get_num().get_str();
      if (abs_c.get_den() != 1) out << '/' << abs_c.get_den().get_str();
      if (!m.is_one()) out << '*';
    }
    if (!m.is_one()) out << to_string(m);
  }
  return out.str();
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
  if (var >= p.nvars()) throw InvalidInput("variable index out of range");
  Polynomial d(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    Monomial dm(m);
    dm[var] -= 1;
    d.add_term(dm, c * m[var]);
  }
  return d;
}

}  // namespace milnorflow
