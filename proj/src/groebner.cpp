#include "milnorflow/groebner.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "milnorflow/errors.hpp"

namespace milnorflow {

TermOrder TermOrder::weighted_degrevlex(std::vector<std::uint64_t> weights) {
  for (auto w : weights)
    if (w == 0) throw InvalidInput("weighted term order needs positive weights");
  return TermOrder(Kind::weighted_degrevlex, std::move(weights));
}

TermOrder TermOrder::weighted_degrevlex(const WeightSystem& ws) {
  std::vector<std::uint64_t> w;
  for (const Integer& b : ws.beta_i()) {
    if (!b.fits_ulong_p()) throw InvalidInput("weight too large for a term order");
    w.push_back(b.get_ui());
  }
  return weighted_degrevlex(std::move(w));
}

namespace {

// Among monomials of equal (weighted) degree: the last differing variable
// decides, a smaller exponent is the larger monomial.
std::strong_ordering revlex_tiebreak(const Monomial& a, const Monomial& b) {
  for (std::size_t i = a.nvars(); i-- > 0;) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering TermOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::lex:
      for (std::size_t i = 0; i < a.nvars(); ++i)
        if (a[i] != b[i]) return a[i] <=> b[i];
      return std::strong_ordering::equal;
    case Kind::degrevlex: {
      auto c = a.degree() <=> b.degree();
      if (c != 0) return c;
      return revlex_tiebreak(a, b);
    }
    case Kind::weighted_degrevlex: {
      std::uint64_t wa = 0, wb = 0;
      for (std::size_t i = 0; i < a.nvars(); ++i) {
        wa += weights_[i] * a[i];
        wb += weights_[i] * b[i];
      }
      if (wa != wb) return wa <=> wb;
      return revlex_tiebreak(a, b);
    }
  }
  return std::strong_ordering::equal;
}

std::string TermOrder::name() const {
  switch (kind_) {
    case Kind::lex: return "lex";
    case Kind::degrevlex: return "degrevlex";
    case Kind::weighted_degrevlex: return "wdegrevlex";
  }
  return "?";
}

TermOrder parse_term_order(const std::string& name, const WeightSystem& ws) {
  if (name == "wdegrevlex") return TermOrder::weighted_degrevlex(ws);
  if (name == "degrevlex") return TermOrder::degrevlex();
  if (name == "lex") return TermOrder::lex();
  throw InvalidInput("unknown term order '" + name + "' (wdegrevlex|degrevlex|lex)");
}

OrderedPolynomial::OrderedPolynomial(const Polynomial& p, const TermOrder& order) {
  terms_.reserve(p.size());
  for (const auto& [m, c] : p.terms()) terms_.push_back({m, c});
  std::sort(terms_.begin(), terms_.end(),
            [&](const Term& a, const Term& b) { return order.greater(a.monomial, b.monomial); });
}

void OrderedPolynomial::make_monic() {
  if (terms_.empty() || terms_.front().coeff == 1) return;
  const Rational inv = 1 / terms_.front().coeff;
  for (Term& t : terms_) t.coeff *= inv;
}

void OrderedPolynomial::subtract_multiple(const Rational& c, const Monomial& m, const OrderedPolynomial& g,
                                          const TermOrder& order) {
  std::vector<Term> out;
  out.reserve(terms_.size() + g.terms_.size());
  auto a = terms_.begin();
  auto b = g.terms_.begin();
  while (a != terms_.end() || b != g.terms_.end()) {
    if (b == g.terms_.end()) {
      out.push_back(std::move(*a++));
      continue;
    }
    Monomial bm = b->monomial * m;
    if (a == terms_.end()) {
      out.push_back({std::move(bm), -c * b->coeff});
      ++b;
      continue;
    }
    auto cmp = order.compare(a->monomial, bm);
    if (cmp > 0) {
      out.push_back(std::move(*a++));
    } else if (cmp < 0) {
      out.push_back({std::move(bm), -c * b->coeff});
      ++b;
    } else {
      Rational v = a->coeff - c * b->coeff;
      if (v != 0) out.push_back({std::move(bm), std::move(v)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
}

Polynomial OrderedPolynomial::to_polynomial(std::size_t nvars) const {
  Polynomial p(nvars);
  for (const Term& t : terms_) p.add_term(t.monomial, t.coeff);
  return p;
}

OrderedPolynomial normal_form(OrderedPolynomial p, const std::vector<OrderedPolynomial>& gens,
                              const TermOrder& order) {
  // Terms before `pos` are final: subtracting c*m*g with LM(c*m*g) equal to
  // the term at pos never touches larger terms.
  std::size_t pos = 0;
  while (pos < p.terms_.size()) {
    const Term& t = p.terms_[pos];
    const OrderedPolynomial* divisor = nullptr;
    for (const OrderedPolynomial& g : gens) {
      if (!g.is_zero() && g.leading_monomial().divides(t.monomial)) {
        divisor = &g;
        break;
      }
    }
    if (!divisor) {
      ++pos;
      continue;
    }
    const Rational c = t.coeff / divisor->leading_coeff();
    const Monomial m = t.monomial / divisor->leading_monomial();
    p.subtract_multiple(c, m, *divisor, order);
  }
  return p;
}

OrderedPolynomial s_polynomial(const OrderedPolynomial& f, const OrderedPolynomial& g,
                               const TermOrder& order) {
  const Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  OrderedPolynomial s;
  s.subtract_multiple(-1 / f.leading_coeff(), l / f.leading_monomial(), f, order);
  s.subtract_multiple(1 / g.leading_coeff(), l / g.leading_monomial(), g, order);
  return s;
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  for (const auto& g : gens_) out.push_back(g.leading_monomial());
  return out;
}

std::vector<Polynomial> GroebnerBasis::polynomials() const {
  std::vector<Polynomial> out;
  for (const auto& g : gens_) out.push_back(g.to_polynomial(nvars_));
  return out;
}

bool GroebnerBasis::is_unit() const {
  return std::any_of(gens_.begin(), gens_.end(), [](const OrderedPolynomial& g) {
    return g.leading_monomial().is_one();
  });
}

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const TermOrder& order,
                         BuchbergerStats* stats) {
  if (gens.empty()) throw InvalidInput("buchberger needs at least one generator");
  const std::size_t nvars = gens.front().nvars();
  BuchbergerStats local;
  BuchbergerStats& st = stats ? *stats : local;

  std::vector<OrderedPolynomial> G;
  for (const Polynomial& p : gens) {
    if (p.nvars() != nvars) throw InvalidInput("generators live in different rings");
    if (p.is_zero()) throw InvalidInput("buchberger generators must be nonzero");
    OrderedPolynomial op(p, order);
    op.make_monic();
    G.push_back(std::move(op));
  }

  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 1; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace(i, j);

  auto pair_lcm = [&](const std::pair<std::size_t, std::size_t>& p) {
    return lcm(G[p.first].leading_monomial(), G[p.second].leading_monomial());
  };
  auto pending = [&](std::size_t a, std::size_t b) {
    return pairs.count({std::min(a, b), std::max(a, b)}) > 0;
  };

  while (!pairs.empty()) {
    // Normal strategy: smallest lcm first, index order breaks ties.
    auto best = pairs.begin();
    Monomial best_lcm = pair_lcm(*best);
    for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
      Monomial l = pair_lcm(*it);
      if (order.compare(l, best_lcm) < 0) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    const auto [i, j] = *best;
    pairs.erase(best);
    ++st.pairs_considered;

    if (coprime(G[i].leading_monomial(), G[j].leading_monomial())) {
      ++st.product_criterion;
      continue;
    }
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (G[k].leading_monomial().divides(best_lcm) && !pending(i, k) && !pending(j, k)) chain = true;
    }
    if (chain) {
      ++st.chain_criterion;
      continue;
    }

    OrderedPolynomial h = normal_form(s_polynomial(G[i], G[j], order), G, order);
    if (h.is_zero()) {
      ++st.reductions_to_zero;
      continue;
    }
    h.make_monic();
    G.push_back(std::move(h));
    const std::size_t n = G.size() - 1;
    for (std::size_t k = 0; k < n; ++k) pairs.emplace(k, n);
  }

  // Minimalize: drop generators whose leading monomial is divisible by
  // another one (the earlier index survives among equals).
  std::vector<OrderedPolynomial> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& li = G[i].leading_monomial();
      const Monomial& lj = G[j].leading_monomial();
      if (lj.divides(li) && (lj != li || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }

  // Interreduce tails. Leading monomials are fixed, so one pass suffices.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<OrderedPolynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    minimal[i] = normal_form(minimal[i], others, order);
    minimal[i].make_monic();
  }

  std::sort(minimal.begin(), minimal.end(), [&](const OrderedPolynomial& a, const OrderedPolynomial& b) {
    return order.compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  return GroebnerBasis(std::move(minimal), order, nvars);
}

bool satisfies_buchberger_criterion(const GroebnerBasis& gb) {
  const auto& G = gb.generators();
  for (std::size_t j = 1; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!normal_form(s_polynomial(G[i], G[j], gb.order()), G, gb.order()).is_zero()) return false;
  return true;
}

}  // namespace milnorflow
