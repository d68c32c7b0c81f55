#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opal/context.hpp"
#include "opal/order_fwd.hpp"
#include "opal/parse.hpp"
#include "opal/rational.hpp"
#include "opal/word.hpp"

namespace opal {

// Finite linear combination of bracketed words. Terms are kept sorted by the
// fixed structural order, largest first, with no zero coefficients, so poly
// equality is plain structural equality.
template <class S>
struct BasicPoly {
  std::vector<std::pair<WordPtr, S>> terms;

  bool is_zero() const { return terms.empty(); }
  std::size_t term_count() const { return terms.size(); }

  static BasicPoly zero() { return {}; }

  static BasicPoly monomial(WordPtr w, S c = S(1)) {
    BasicPoly p;
    if (!q_is_zero(c)) p.terms.emplace_back(std::move(w), std::move(c));
    return p;
  }

  const S* coeff(const WordPtr& w) const {
    for (const auto& [m, c] : terms)
      if (word_eq(m, w)) return &c;
    return nullptr;
  }

  friend bool operator==(const BasicPoly& a, const BasicPoly& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i)
      if (!(a.terms[i].second == b.terms[i].second) ||
          !word_eq(a.terms[i].first, b.terms[i].first))
        return false;
    return true;
  }
};

namespace detail {
inline bool term_before(const WordPtr& a, const WordPtr& b) {
  return structural_cmp(*a, *b) == std::strong_ordering::greater;  // largest first
}
}  // namespace detail

template <class S>
BasicPoly<S> poly_add(const BasicPoly<S>& f, const BasicPoly<S>& g) {
  BasicPoly<S> out;
  out.terms.reserve(f.terms.size() + g.terms.size());
  std::size_t i = 0, j = 0;
  while (i < f.terms.size() && j < g.terms.size()) {
    auto c = structural_cmp(*f.terms[i].first, *g.terms[j].first);
    if (c == std::strong_ordering::greater) {
      out.terms.push_back(f.terms[i++]);
    } else if (c == std::strong_ordering::less) {
      out.terms.push_back(g.terms[j++]);
    } else {
      S s = f.terms[i].second + g.terms[j].second;
      if (!q_is_zero(s)) out.terms.emplace_back(f.terms[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  for (; i < f.terms.size(); ++i) out.terms.push_back(f.terms[i]);
  for (; j < g.terms.size(); ++j) out.terms.push_back(g.terms[j]);
  return out;
}

template <class S>
BasicPoly<S> poly_scale(const S& c, const BasicPoly<S>& f) {
  BasicPoly<S> out;
  if (q_is_zero(c)) return out;
  out.terms.reserve(f.terms.size());
  for (const auto& [m, a] : f.terms) out.terms.emplace_back(m, c * a);
  return out;
}

template <class S>
BasicPoly<S> poly_neg(const BasicPoly<S>& f) {
  BasicPoly<S> out;
  out.terms.reserve(f.terms.size());
  for (const auto& [m, a] : f.terms) out.terms.emplace_back(m, -a);
  return out;
}

template <class S>
BasicPoly<S> poly_sub(const BasicPoly<S>& f, const BasicPoly<S>& g) {
  return poly_add(f, poly_neg(g));
}

// normalize an unsorted term list (used by constructors and products)
template <class S>
BasicPoly<S> poly_collect(std::vector<std::pair<WordPtr, S>> raw) {
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
    return detail::term_before(a.first, b.first);
  });
  BasicPoly<S> out;
  for (auto& [m, c] : raw) {
    if (!out.terms.empty() && word_eq(out.terms.back().first, m)) {
      out.terms.back().second += c;
      if (q_is_zero(out.terms.back().second)) out.terms.pop_back();
    } else if (!q_is_zero(c)) {
      out.terms.emplace_back(std::move(m), std::move(c));
    }
  }
  return out;
}

// bilinear extension of concat; unital with the identity word
template <class S>
BasicPoly<S> poly_mul(const BasicPoly<S>& f, const BasicPoly<S>& g) {
  std::vector<std::pair<WordPtr, S>> raw;
  raw.reserve(f.terms.size() * g.terms.size());
  for (const auto& [mf, cf] : f.terms)
    for (const auto& [mg, cg] : g.terms) raw.emplace_back(concat(mf, mg), cf * cg);
  return poly_collect(std::move(raw));
}

// the operator P: bracket every monomial, coefficients preserved
template <class S>
BasicPoly<S> apply_op(const BasicPoly<S>& f) {
  std::vector<std::pair<WordPtr, S>> raw;
  raw.reserve(f.terms.size());
  for (const auto& [m, c] : f.terms) raw.emplace_back(bracket(m), c);
  return poly_collect(std::move(raw));
}

// f = c*w (+) (-rest), rest = c*w - f, with w not in Supp(rest)
template <class S>
std::pair<S, BasicPoly<S>> remainder(const BasicPoly<S>& f, const WordPtr& w) {
  const S* c = f.coeff(w);
  if (!c) throw std::invalid_argument("remainder: word not in support");
  BasicPoly<S> rest = poly_sub(poly_scale(*c, BasicPoly<S>::monomial(w)), f);
  return {*c, std::move(rest)};
}

template <class S>
BasicPoly<S> plug_poly(const Context& q, const BasicPoly<S>& s) {
  std::vector<std::pair<WordPtr, S>> raw;
  raw.reserve(s.terms.size());
  for (const auto& [m, c] : s.terms) raw.emplace_back(plug(q, m), c);
  return poly_collect(std::move(raw));
}

template <class S>
bool is_direct_sum(const BasicPoly<S>& f, const BasicPoly<S>& g) {
  for (const auto& [m, c] : f.terms)
    if (g.coeff(m)) return false;
  return true;
}

// Leading term under a monomial order. Scalars (including 0) lead with the
// identity word and their own value as coefficient.
template <class S>
std::pair<WordPtr, S> leading(const BasicPoly<S>& f, const MonomialOrder& ord) {
  if (f.is_zero()) return {word_identity(), S(0)};
  if (f.terms.size() == 1 && f.terms[0].first->is_identity())
    return {word_identity(), f.terms[0].second};
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.terms.size(); ++i)
    if (ord.cmp(f.terms[best].first, f.terms[i].first) == std::strong_ordering::less) best = i;
  return f.terms[best];
}

template <class S>
BasicPoly<S> monicize(const BasicPoly<S>& f, const MonomialOrder& ord) {
  if (f.is_zero()) throw std::invalid_argument("monicize: zero polynomial");
  auto [w, c] = leading(f, ord);
  return poly_scale(S(S(1) / c), f);
}

using Poly = BasicPoly<Q>;

// ---- printing / parsing ----

// display order: size descending, then structurally ascending
template <class S>
std::string print_poly(const BasicPoly<S>& f, const Alphabet& alph) {
  if (f.is_zero()) return "0";
  auto terms = f.terms;
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (a.first->size != b.first->size) return a.first->size > b.first->size;
    return structural_cmp(*a.first, *b.first) == std::strong_ordering::less;
  });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    S a = c;
    bool neg = false;
    if constexpr (std::is_same_v<S, Q>) {
      if (sgn(a) < 0) {
        neg = true;
        a = -a;
      }
    }
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    std::string cs = q_str(a);
    if (cs != "1" || m->is_identity()) {
      out += cs;
      if (!m->is_identity()) out += "*";
    }
    if (!m->is_identity()) out += print_word(m, alph);
  }
  return out;
}

// poly := "0" | sterm (('+'|'-') sterm)* ; sterm := [coef ["*"]] monomial | coef
inline Poly parse_poly(std::string_view text, const Alphabet& alph) {
  detail::Cursor cur{text};
  std::vector<std::pair<WordPtr, Q>> raw;
  bool first = true;
  for (;;) {
    cur.skip_ws();
    Q sign(1);
    char c = cur.peek();
    if (c == '+' || c == '-') {
      while (c == '+' || c == '-') {
        if (c == '-') sign = -sign;
        ++cur.pos;
        c = cur.peek();
      }
    } else if (!first) {
      break;
    }
    cur.skip_ws();
    // optional coefficient
    Q coef(1);
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      std::size_t start = cur.pos;
      while (cur.pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[cur.pos])) || text[cur.pos] == '/'))
        ++cur.pos;
      coef = q_parse(std::string(text.substr(start, cur.pos - start)));
      have_coef = true;
      cur.skip_ws();
      if (cur.peek() == '*') ++cur.pos;
    }
    WordPtr m = word_identity();
    char n = cur.peek();
    if (n == '[' || detail::ident_start(n) || (n == '1' && !have_coef)) {
      m = detail::parse_word_body(cur, alph, true);
    } else if (!have_coef) {
      throw ParseError("expected monomial or coefficient", cur.pos);
    }
    raw.emplace_back(std::move(m), sign * coef);
    first = false;
    if (cur.eof()) break;
  }
  if (!cur.eof()) throw ParseError("trailing input", cur.pos);
  Poly p = poly_collect(std::move(raw));
  return p;
}

}  // namespace opal
