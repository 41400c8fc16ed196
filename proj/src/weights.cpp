#include <algorithm>
#include <set>
#include <sstream>

#include "milnorflow/errors.hpp"
#include "milnorflow/polynomial.hpp"

namespace milnorflow {

WeightSystem::WeightSystem(std::vector<Integer> beta_i, Integer beta)
    : beta_i_(std::move(beta_i)), beta_(std::move(beta)) {
  if (beta_i_.size() < 2) throw InvalidInput("a weight system needs at least two variables");
  if (beta_ <= 0) throw InvalidInput("weighted degree beta must be positive");
  Integer g = beta_;
  for (const Integer& b : beta_i_) {
    if (b <= 0) throw InvalidInput("variable weights beta_i must be positive");
    g = gcd(g, b);
  }
  if (g != 1) {
    for (Integer& b : beta_i_) b /= g;
    beta_ /= g;
  }
}

Rational WeightSystem::weight(std::size_t i) const { return make_rational(beta_i_.at(i), beta_); }

Rational WeightSystem::weight_sum() const {
  Integer s = 0;
  for (const Integer& b : beta_i_) s += b;
  return make_rational(s, beta_);
}

Integer WeightSystem::weighted_degree(const Monomial& m) const {
  Integer d = 0;
  for (std::size_t i = 0; i < beta_i_.size(); ++i) d += beta_i_[i] * m[i];
  return d;
}

WeightSystem parse_weights(std::string_view text) {
  std::vector<Integer> values;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    Integer v;
    if (item.empty() || v.set_str(item, 10) != 0)
      throw InvalidInput("weights must be comma-separated integers, got '" + std::string(text) + "'");
    values.push_back(v);
  }
  if (values.size() < 3) throw InvalidInput("weights need b0,b1,...,beta with at least two variables");
  Integer beta = values.back();
  values.pop_back();
  return WeightSystem(std::move(values), beta);
}

std::string to_string(const WeightSystem& ws) {
  std::string out = "(";
  for (std::size_t i = 0; i < ws.nvars(); ++i) {
    if (i) out += ',';
    out += ws.beta_i()[i].get_str();
  }
  return out + ";" + ws.beta().get_str() + ")";
}

namespace {

// Row-reduces in place; returns the pivot column of each nonzero row.
std::vector<std::size_t> row_reduce(std::vector<std::vector<Rational>>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][col] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[row], a[sel]);
    const Rational inv = 1 / a[row][col];
    for (Rational& v : a[row]) v *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < cols; ++c) a[r][c] -= f * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

WeightSystem infer_weights(const Polynomial& p) {
  if (p.is_zero()) throw NotQuasihomogeneous("the zero polynomial has no weight system");
  const std::size_t nv = p.nvars();
  const std::size_t cols = nv + 1;  // beta_0..beta_n, beta

  std::vector<std::vector<Rational>> rows;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Rational> row(cols);
    for (std::size_t i = 0; i < nv; ++i) row[i] = m[i];
    row[nv] = -1;
    rows.push_back(std::move(row));
  }
  const std::vector<std::size_t> pivots = row_reduce(rows, cols);
  const std::size_t nullity = cols - pivots.size();
  if (nullity == 0) throw NotQuasihomogeneous("only the trivial weight vector solves the system");
  if (nullity > 1)
    throw AmbiguousWeights("weights are not determined by the monomials (" + std::to_string(nullity) +
                           "-dimensional solution space); pass them explicitly");

  std::set<std::size_t> pivot_set(pivots.begin(), pivots.end());
  std::size_t free_col = 0;
  while (pivot_set.count(free_col)) ++free_col;

  std::vector<Rational> v(cols, Rational(0));
  v[free_col] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][free_col];

  Integer den_lcm = 1;
  for (const Rational& x : v) den_lcm = lcm(den_lcm, Integer(x.get_den()));
  std::vector<Integer> ints;
  for (const Rational& x : v) ints.push_back(Integer(x * den_lcm));
  if (ints.back() < 0)
    for (Integer& z : ints) z = -z;
  for (const Integer& z : ints)
    if (z <= 0) throw NotQuasihomogeneous("the weight ray has non-positive entries");

  Integer beta = ints.back();
  ints.pop_back();
  return WeightSystem(std::move(ints), beta);
}

bool is_weighted_homogeneous(const Polynomial& p, const WeightSystem& ws, const Integer& degree) {
  if (p.nvars() != ws.nvars()) return false;
  for (const auto& [m, c] : p.terms())
    if (ws.weighted_degree(m) != degree) return false;
  return true;
}

bool check_weights(const Polynomial& p, const WeightSystem& ws) {
  return is_weighted_homogeneous(p, ws, ws.beta());
}

}  // namespace milnorflow
