#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opal/context.hpp"
#include "opal/order.hpp"
#include "opal/poly.hpp"

namespace opal {

// Multi-linear operated polynomial identity with a chosen orientation.
// The pattern lives over its own variable alphabet x1..xk (every letter of a
// pattern word is a variable slot); parameters such as the weight are already
// substituted into the coefficients. The pattern is monic at `fix`.
struct OPI {
  std::string name;
  int arity = 0;
  Poly pattern;
  WordPtr fix;
  std::vector<bool> allow_identity;  // per variable
  std::map<std::string, Q> params;

  Alphabet var_alphabet() const { return Alphabet::variables(arity); }
};

using Substitution = std::vector<WordPtr>;

// replace variable letters by ground words, flattening at the splice point
inline WordPtr substitute_vars(const Word& pattern_word, std::span<const WordPtr> subst) {
  std::vector<Factor> fs;
  fs.reserve(pattern_word.fs.size());
  for (const Factor& f : pattern_word.fs) {
    if (f.is_letter()) {
      const WordPtr& u = subst[static_cast<std::size_t>(f.letter)];
      fs.insert(fs.end(), u->fs.begin(), u->fs.end());
    } else {
      fs.push_back(Factor{-1, substitute_vars(*f.inner, subst)});
    }
  }
  return make_word(std::move(fs));
}

inline void check_substitution(const OPI& phi, const Substitution& subst) {
  if (static_cast<int>(subst.size()) != phi.arity)
    throw std::invalid_argument(phi.name + ": substitution arity mismatch");
  for (int i = 0; i < phi.arity; ++i)
    if (!phi.allow_identity[static_cast<std::size_t>(i)] && subst[static_cast<std::size_t>(i)]->is_identity())
      throw std::invalid_argument(phi.name + ": identity not allowed for x" + std::to_string(i + 1));
}

// phi(u1,...,uk); like terms combine, so cancellation may occur
inline Poly instantiate(const OPI& phi, const Substitution& subst) {
  check_substitution(phi, subst);
  std::vector<std::pair<WordPtr, Q>> raw;
  raw.reserve(phi.pattern.terms.size());
  for (const auto& [m, c] : phi.pattern.terms) raw.emplace_back(substitute_vars(*m, subst), c);
  return poly_collect(std::move(raw));
}

// the orientation monomial instantiated; no cancellation considered
inline WordPtr leading_instance(const OPI& phi, const Substitution& subst) {
  check_substitution(phi, subst);
  return substitute_vars(*phi.fix, subst);
}

// R(phi) with fix - pattern, so that pattern = fix (+) (-R)
inline Poly r_side(const OPI& phi) {
  return poly_sub(Poly::monomial(phi.fix), phi.pattern);
}

inline bool is_multilinear(const OPI& phi) {
  std::vector<int> counts;
  auto count = [&](const Word& w, auto&& self) -> void {
    for (const Factor& f : w.fs) {
      if (f.is_letter())
        counts[static_cast<std::size_t>(f.letter)] += 1;
      else
        self(*f.inner, self);
    }
  };
  for (const auto& [m, c] : phi.pattern.terms) {
    counts.assign(static_cast<std::size_t>(phi.arity), 0);
    count(*m, count);
    for (int k : counts)
      if (k != 1) return false;
  }
  return true;
}

namespace detail {

// All ways the pattern word matches the target exactly, binding variables to
// whole words. Solutions are emitted with shorter bindings first.
inline void match_seq(const Word& pat, std::size_t pi, const Word& tgt, int tpos,
                      std::vector<WordPtr>& binds, const std::vector<bool>& allow_identity,
                      const std::function<void()>& emit) {
  if (pi == pat.fs.size()) {
    if (tpos == tgt.breadth()) emit();
    return;
  }
  const Factor& pf = pat.fs[pi];
  if (pf.is_bracket()) {
    if (tpos >= tgt.breadth()) return;
    const Factor& tf = tgt.fs[static_cast<std::size_t>(tpos)];
    if (!tf.is_bracket()) return;
    match_seq(*pf.inner, 0, *tf.inner, 0, binds, allow_identity, [&]() {
      match_seq(pat, pi + 1, tgt, tpos + 1, binds, allow_identity, emit);
    });
    return;
  }
  auto v = static_cast<std::size_t>(pf.letter);
  if (binds[v]) {
    const Word& bound = *binds[v];
    int len = bound.breadth();
    if (tpos + len > tgt.breadth()) return;
    for (int i = 0; i < len; ++i)
      if (!factor_eq(tgt.fs[static_cast<std::size_t>(tpos + i)], bound.fs[static_cast<std::size_t>(i)]))
        return;
    match_seq(pat, pi + 1, tgt, tpos + len, binds, allow_identity, emit);
    return;
  }
  int remaining = tgt.breadth() - tpos;
  int min_len = allow_identity[v] ? 0 : 1;
  for (int len = min_len; len <= remaining; ++len) {
    binds[v] = subrun(tgt, tpos, len);
    match_seq(pat, pi + 1, tgt, tpos + len, binds, allow_identity, emit);
    binds[v].reset();
  }
}

}  // namespace detail

// All substitutions with substitute_vars(pattern_word, s) == target.
inline std::vector<Substitution> match_pattern_word(const WordPtr& pattern_word,
                                                    const WordPtr& target, int arity,
                                                    const std::vector<bool>& allow_identity) {
  std::vector<Substitution> out;
  std::vector<WordPtr> binds(static_cast<std::size_t>(arity));
  detail::match_seq(*pattern_word, 0, *target, 0, binds, allow_identity, [&]() {
    for (const auto& b : binds)
      if (!b) return;  // a variable absent from this pattern word: reject
    out.emplace_back(binds.begin(), binds.end());
  });
  return out;
}

// All (q, sigma) with plug(q, leading_instance(phi, sigma)) == w, in placement
// order then binding order.
inline std::vector<std::pair<Context, Substitution>> match_leading(const OPI& phi,
                                                                   const WordPtr& w) {
  std::vector<std::pair<Context, Substitution>> out;
  for (const Placement& pl : all_subword_placements(w)) {
    for (Substitution& s : match_pattern_word(phi.fix, pl.sub, phi.arity, phi.allow_identity))
      out.emplace_back(pl.ctx, std::move(s));
  }
  return out;
}

// true iff no monomial of f contains an instance of fix(phi)
inline bool is_phi_normal(const Poly& f, const OPI& phi) {
  for (const auto& [m, c] : f.terms)
    if (!match_leading(phi, m).empty()) return false;
  return true;
}

struct OrientationReport {
  bool pass = true;
  std::string reason;
  Substitution counterexample;
  WordPtr offending_instance;     // ground monomial that beats / cancels the orientation
  WordPtr offending_pattern;      // the pattern monomial it instantiates

  explicit operator bool() const { return pass; }
};

// Checks, over all substitutions with words of size <= max_subst_size, that
// the orientation instance is the strict maximum of the instantiated support
// with uncancelled unit coefficient. A pattern-level pre-pass produces the
// shape witness (e.g. Reynolds' [[x1][x2]]).
inline OrientationReport validate_orientation(const OPI& phi, const MonomialOrder& ord,
                                              int nletters, int max_subst_size) {
  OrientationReport rep;
  // pattern level: variables as opaque letters
  for (const auto& [m, c] : phi.pattern.terms) {
    if (word_eq(m, phi.fix)) continue;
    if (ord.cmp(m, phi.fix) != std::strong_ordering::less) {
      rep.pass = false;
      rep.reason = "pattern monomial not below the orientation";
      rep.offending_pattern = m;
      rep.offending_instance = m;
      return rep;
    }
  }
  const Q* fix_coeff = phi.pattern.coeff(phi.fix);
  if (!fix_coeff || !(*fix_coeff == Q(1))) {
    rep.pass = false;
    rep.reason = "orientation monomial missing or not monic";
    return rep;
  }

  std::vector<WordPtr> words = enumerate_words(nletters, max_subst_size);
  Substitution subst(static_cast<std::size_t>(phi.arity));
  auto rec = [&](int slot, auto&& self) -> bool {
    if (slot == phi.arity) {
      Poly f = instantiate(phi, subst);
      WordPtr lead = leading_instance(phi, subst);
      const Q* c = f.coeff(lead);
      if (!c || !(*c == Q(1))) {
        rep.pass = false;
        rep.reason = "leading coefficient cancelled";
        rep.counterexample = subst;
        rep.offending_instance = lead;
        return false;
      }
      for (const auto& [m, a] : f.terms) {
        if (word_eq(m, lead)) continue;
        if (ord.cmp(m, lead) != std::strong_ordering::less) {
          rep.pass = false;
          rep.reason = "support monomial not below the orientation instance";
          rep.counterexample = subst;
          rep.offending_instance = m;
          for (const auto& [pm, pc] : phi.pattern.terms)
            if (word_eq(substitute_vars(*pm, subst), m)) {
              rep.offending_pattern = pm;
              break;
            }
          return false;
        }
      }
      return true;
    }
    for (const WordPtr& u : words) {
      if (u->is_identity() && !phi.allow_identity[static_cast<std::size_t>(slot)]) continue;
      subst[static_cast<std::size_t>(slot)] = u;
      if (!self(slot + 1, self)) return false;
    }
    return true;
  };
  rec(0, rec);
  return rep;
}

// Multi-linear instantiation at polynomial arguments (e.g. B(B(u,v),w)):
// expands by linearity in every slot.
inline Poly instantiate_multilinear(const OPI& phi, const std::vector<Poly>& args) {
  if (static_cast<int>(args.size()) != phi.arity)
    throw std::invalid_argument("instantiate_multilinear arity mismatch");
  std::vector<std::pair<WordPtr, Q>> raw;
  Substitution subst(static_cast<std::size_t>(phi.arity));
  Q coeff(1);
  auto rec = [&](int slot, Q acc, auto&& self) -> void {
    if (slot == phi.arity) {
      for (const auto& [m, c] : phi.pattern.terms)
        raw.emplace_back(substitute_vars(*m, subst), acc * c);
      return;
    }
    for (const auto& [m, c] : args[static_cast<std::size_t>(slot)].terms) {
      subst[static_cast<std::size_t>(slot)] = m;
      self(slot + 1, acc * c, self);
    }
  };
  rec(0, coeff, rec);
  return poly_collect(std::move(raw));
}

// ---- catalog ----------------------------------------------------------
// Pattern-building shorthand: variables are letters 0..k-1.

namespace pat {
inline WordPtr x(int i) { return make_letter(i - 1); }
inline WordPtr b(const WordPtr& w) { return bracket(w); }
inline WordPtr c(const WordPtr& a, const WordPtr& bb) { return concat(a, bb); }
inline WordPtr one() { return word_identity(); }
}  // namespace pat

namespace detail {
inline Poly pattern_of(std::vector<std::pair<WordPtr, Q>> terms) {
  return poly_collect(std::move(terms));
}
inline OPI make_opi(std::string name, int arity, Poly pattern, WordPtr fix,
                    std::vector<bool> allow_identity, std::map<std::string, Q> params = {}) {
  OPI o;
  o.name = std::move(name);
  o.arity = arity;
  const Q* c = pattern.coeff(fix);
  if (!c || q_is_zero(*c)) throw std::invalid_argument(o.name + ": orientation not in support");
  o.pattern = poly_scale(Q(Q(1) / *c), pattern);
  o.fix = std::move(fix);
  o.allow_identity = std::move(allow_identity);
  o.params = std::move(params);
  return o;
}
}  // namespace detail

// d(xy) = d(x)d(y), oriented at the product of brackets
inline OPI opi_endomorphism() {
  using namespace pat;
  return detail::make_opi(
      "endomorphism", 2,
      detail::pattern_of({{c(b(x(1)), b(x(2))), Q(1)}, {b(c(x(1), x(2))), Q(-1)}}),
      c(b(x(1)), b(x(2))), {true, true});
}

// d(xy) = d(x)y + x d(y) + lambda d(x)d(y); variables exclude the identity
inline OPI opi_differential(const Q& lambda) {
  using namespace pat;
  std::vector<std::pair<WordPtr, Q>> ts = {{b(c(x(1), x(2))), Q(1)},
                                           {c(b(x(1)), x(2)), Q(-1)},
                                           {c(x(1), b(x(2))), Q(-1)}};
  if (!q_is_zero(lambda)) ts.emplace_back(c(b(x(1)), b(x(2))), -lambda);
  return detail::make_opi("differential", 2, detail::pattern_of(std::move(ts)),
                          b(c(x(1), x(2))), {false, false}, {{"lambda", lambda}});
}

// P(x)P(y) = P(xP(y) + P(x)y + lambda xy)
inline OPI opi_rota_baxter(const Q& lambda) {
  using namespace pat;
  std::vector<std::pair<WordPtr, Q>> ts = {{c(b(x(1)), b(x(2))), Q(1)},
                                           {b(c(x(1), b(x(2)))), Q(-1)},
                                           {b(c(b(x(1)), x(2))), Q(-1)}};
  if (!q_is_zero(lambda)) ts.emplace_back(b(c(x(1), x(2))), -lambda);
  return detail::make_opi("rota-baxter", 2, detail::pattern_of(std::move(ts)),
                          c(b(x(1)), b(x(2))), {true, true}, {{"lambda", lambda}});
}

// P(x)P(y) = P(xP(y)) + P(P(x)y) + lambda xy  (the lambda xy term outside P)
inline OPI opi_modified_rota_baxter(const Q& lambda) {
  using namespace pat;
  std::vector<std::pair<WordPtr, Q>> ts = {{c(b(x(1)), b(x(2))), Q(1)},
                                           {b(c(x(1), b(x(2)))), Q(-1)},
                                           {b(c(b(x(1)), x(2))), Q(-1)}};
  if (!q_is_zero(lambda)) ts.emplace_back(c(x(1), x(2)), -lambda);
  return detail::make_opi("modified-rb", 2, detail::pattern_of(std::move(ts)),
                          c(b(x(1)), b(x(2))), {true, true}, {{"lambda", lambda}});
}

// P(x)P(y) = P(xP(y) + P(x)y - P(x)P(y)); rejected by every monomial order
inline OPI opi_reynolds() {
  using namespace pat;
  return detail::make_opi("reynolds", 2,
                          detail::pattern_of({{c(b(x(1)), b(x(2))), Q(1)},
                                              {b(c(x(1), b(x(2)))), Q(-1)},
                                              {b(c(b(x(1)), x(2))), Q(-1)},
                                              {b(c(b(x(1)), b(x(2)))), Q(1)}}),
                          c(b(x(1)), b(x(2))), {true, true});
}

// P(x)P(y) = P(xP(y) + P(x)y - P(xy))
inline OPI opi_nijenhuis() {
  using namespace pat;
  return detail::make_opi("nijenhuis", 2,
                          detail::pattern_of({{c(b(x(1)), b(x(2))), Q(1)},
                                              {b(c(x(1), b(x(2)))), Q(-1)},
                                              {b(c(b(x(1)), x(2))), Q(-1)},
                                              {b(b(c(x(1), x(2)))), Q(1)}}),
                          c(b(x(1)), b(x(2))), {true, true});
}

// Leroux TD: P(x)P(y) = P(xP(y) + P(x)y - xP(1)y)
inline OPI opi_td() {
  using namespace pat;
  return detail::make_opi("td", 2,
                          detail::pattern_of({{c(b(x(1)), b(x(2))), Q(1)},
                                              {b(c(x(1), b(x(2)))), Q(-1)},
                                              {b(c(b(x(1)), x(2))), Q(-1)},
                                              {b(c(x(1), c(b(one()), x(2)))), Q(1)}}),
                          c(b(x(1)), b(x(2))), {true, true});
}

// P(x)P(y) = P(xP(y)) as a single OPI
inline OPI opi_average() {
  using namespace pat;
  return detail::make_opi(
      "average", 2, detail::pattern_of({{c(b(x(1)), b(x(2))), Q(1)}, {b(c(x(1), b(x(2)))), Q(-1)}}),
      c(b(x(1)), b(x(2))), {true, true});
}

// P(x)P(y) = P(P(x)y) as a single OPI
inline OPI opi_inverse_average() {
  using namespace pat;
  return detail::make_opi(
      "inverse-average", 2,
      detail::pattern_of({{c(b(x(1)), b(x(2))), Q(1)}, {b(c(b(x(1)), x(2))), Q(-1)}}),
      c(b(x(1)), b(x(2))), {true, true});
}

// Two-sided averaging system phi1 = [x1][x2] - [[x1]x2],
// phi2 = [x1[x2]] - [[x1]x2], with the four orientation cases of the
// non-convergence analysis. Variables exclude the identity so the analysis
// normal forms are genuinely normal.
inline std::vector<OPI> averaging_system(int orientation_case) {
  using namespace pat;
  Poly phi1 =
      detail::pattern_of({{c(b(x(1)), b(x(2))), Q(1)}, {b(c(b(x(1)), x(2))), Q(-1)}});
  Poly phi2 =
      detail::pattern_of({{b(c(x(1), b(x(2)))), Q(1)}, {b(c(b(x(1)), x(2))), Q(-1)}});
  WordPtr prod = c(b(x(1)), b(x(2)));       // [x1][x2]
  WordPtr right = b(c(x(1), b(x(2))));      // [x1[x2]]
  WordPtr left = b(c(b(x(1)), x(2)));       // [[x1]x2]
  WordPtr fix1, fix2;
  switch (orientation_case) {
    case 1: fix1 = prod; fix2 = right; break;
    case 2: fix1 = prod; fix2 = left; break;
    case 3: fix1 = left; fix2 = right; break;
    case 4: fix1 = left; fix2 = left; break;
    default: throw std::invalid_argument("averaging orientation case must be 1..4");
  }
  return {detail::make_opi("averaging-phi1", 2, phi1, fix1, {false, false}),
          detail::make_opi("averaging-phi2", 2, phi2, fix2, {false, false})};
}

// generic differential type: [x1 x2] - N(x1, x2)
inline OPI opi_differential_type(const Poly& n, std::string name = "differential-type") {
  using namespace pat;
  Poly pattern = poly_sub(Poly::monomial(b(c(x(1), x(2)))), n);
  return detail::make_opi(std::move(name), 2, std::move(pattern), b(c(x(1), x(2))),
                          {false, false});
}

// generic Rota-Baxter type: [x1][x2] - [B(x1, x2)]
inline OPI opi_rb_type(const Poly& bxy, std::string name = "rb-type") {
  using namespace pat;
  Poly pattern = poly_sub(Poly::monomial(c(b(x(1)), b(x(2)))), apply_op(bxy));
  return detail::make_opi(std::move(name), 2, std::move(pattern), c(b(x(1)), b(x(2))),
                          {true, true});
}

// the catalog N of the weight-lambda differential operator
inline Poly catalog_differential_n(const Q& lambda) {
  using namespace pat;
  std::vector<std::pair<WordPtr, Q>> ts = {{c(b(x(1)), x(2)), Q(1)}, {c(x(1), b(x(2))), Q(1)}};
  if (!q_is_zero(lambda)) ts.emplace_back(c(b(x(1)), b(x(2))), lambda);
  return detail::pattern_of(std::move(ts));
}

// the catalog B of the weight-lambda Rota-Baxter operator
inline Poly catalog_rb_b(const Q& lambda) {
  using namespace pat;
  std::vector<std::pair<WordPtr, Q>> ts = {{c(x(1), b(x(2))), Q(1)}, {c(b(x(1)), x(2)), Q(1)}};
  if (!q_is_zero(lambda)) ts.emplace_back(c(x(1), x(2)), lambda);
  return detail::pattern_of(std::move(ts));
}

inline OPI catalog_opi(const std::string& name, const Q& lambda = Q(0)) {
  if (name == "endomorphism") return opi_endomorphism();
  if (name == "differential") return opi_differential(lambda);
  if (name == "rota-baxter") return opi_rota_baxter(lambda);
  if (name == "modified-rb") return opi_modified_rota_baxter(lambda);
  if (name == "reynolds") return opi_reynolds();
  if (name == "nijenhuis") return opi_nijenhuis();
  if (name == "td") return opi_td();
  if (name == "average") return opi_average();
  if (name == "inverse-average") return opi_inverse_average();
  if (name == "differential-type") return opi_differential_type(catalog_differential_n(lambda));
  if (name == "rb-type") return opi_rb_type(catalog_rb_b(lambda));
  throw std::invalid_argument("unknown OPI: " + name);
}

}  // namespace opal
