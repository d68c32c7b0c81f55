#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opal/context.hpp"
#include "opal/order_fwd.hpp"
#include "opal/word.hpp"

namespace opal {

namespace detail {

// (op_degree, size, breadth) lexicographically, ties broken factor-wise with
// letter < bracket, letters by alphabet order, brackets by inner word.
inline std::strong_ordering op_deg_lex_cmp(const Word& a, const Word& b) {
  if (a.opdeg != b.opdeg) return a.opdeg <=> b.opdeg;
  if (a.size != b.size) return a.size <=> b.size;
  if (a.fs.size() != b.fs.size()) return a.fs.size() <=> b.fs.size();
  for (std::size_t i = 0; i < a.fs.size(); ++i) {
    const Factor& fa = a.fs[i];
    const Factor& fb = b.fs[i];
    if (fa.is_letter() != fb.is_letter())
      return fa.is_letter() ? std::strong_ordering::less : std::strong_ordering::greater;
    if (fa.is_letter()) {
      if (fa.letter != fb.letter) return fa.letter <=> fb.letter;
    } else {
      auto c = op_deg_lex_cmp(*fa.inner, *fb.inner);
      if (c != std::strong_ordering::equal) return c;
    }
  }
  return std::strong_ordering::equal;
}

}  // namespace detail

inline MonomialOrder op_deg_lex() {
  MonomialOrder ord;
  ord.name = "opdeglex";
  ord.cmp = [](const WordPtr& a, const WordPtr& b) { return detail::op_deg_lex_cmp(*a, *b); };
  return ord;
}

struct OrderAxiomReport {
  bool pass = true;
  std::string failure;                 // which axiom broke
  std::vector<WordPtr> counterexample; // the witnessing words / context skeleton

  explicit operator bool() const { return pass; }
};

// Empirical check of the monomial-order axioms over all words up to max_size
// and ctx_budget sampled contexts: totality, antisymmetry, transitivity on
// sampled triples, 1 <= u, u < [u], and u < v => q|_u < q|_v.
inline OrderAxiomReport check_order_axioms(const MonomialOrder& ord, int nletters, int max_size,
                                           int ctx_budget) {
  OrderAxiomReport rep;
  auto fail = [&](std::string what, std::vector<WordPtr> ws) {
    rep.pass = false;
    rep.failure = std::move(what);
    rep.counterexample = std::move(ws);
    return rep;
  };

  std::vector<WordPtr> words = enumerate_words(nletters, max_size);
  const std::size_t n = words.size();

  for (std::size_t i = 0; i < n; ++i) {
    if (ord.cmp(words[i], words[i]) != std::strong_ordering::equal)
      return fail("reflexivity", {words[i]});
    if (!words[i]->is_identity() &&
        ord.cmp(word_identity(), words[i]) != std::strong_ordering::less)
      return fail("1 <= u", {words[i]});
    if (ord.cmp(words[i], bracket(words[i])) != std::strong_ordering::less)
      return fail("u < [u]", {words[i]});
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto ab = ord.cmp(words[i], words[j]);
      auto ba = ord.cmp(words[j], words[i]);
      if (ab == std::strong_ordering::equal || ba == std::strong_ordering::equal)
        return fail("antisymmetry: distinct words compare equal", {words[i], words[j]});
      if ((ab == std::strong_ordering::less) == (ba == std::strong_ordering::less))
        return fail("totality", {words[i], words[j]});
    }

  // deterministic LCG for triple / context sampling
  std::uint64_t state = 0x243f6a8885a308d3ull;
  auto next = [&state](std::uint64_t bound) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return (state >> 17) % bound;
  };

  if (n >= 3) {
    for (int t = 0; t < ctx_budget; ++t) {
      const WordPtr& a = words[next(n)];
      const WordPtr& b = words[next(n)];
      const WordPtr& c = words[next(n)];
      if (ord.less(a, b) && ord.less(b, c) && !ord.less(a, c))
        return fail("transitivity", {a, b, c});
    }
  }

  // Eq-compatibility: contexts sampled from placements of enumerated words
  int budget = ctx_budget;
  for (std::size_t wi = 0; wi < n && budget > 0; ++wi) {
    auto placements = all_subword_placements(words[wi]);
    for (const Placement& pl : placements) {
      if (budget-- <= 0) break;
      const WordPtr& u = words[next(n)];
      const WordPtr& v = words[next(n)];
      auto uv = ord.cmp(u, v);
      if (uv == std::strong_ordering::equal) continue;
      auto pu = plug(pl.ctx, u);
      auto pv = plug(pl.ctx, v);
      if (ord.cmp(pu, pv) != uv)
        return fail("context compatibility (u < v => q|_u < q|_v)", {u, v, pl.ctx.skel});
    }
  }

  return rep;
}

// spec string: "opdeglex:z1<z2<..." (letter chain optional; it must agree with
// the alphabet order when present)
inline MonomialOrder parse_order_spec(const std::string& spec, const Alphabet& alph) {
  std::string name = spec;
  std::string chain;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    name = spec.substr(0, colon);
    chain = spec.substr(colon + 1);
  }
  if (name != "opdeglex") throw std::invalid_argument("unknown order: " + name);
  if (!chain.empty()) {
    std::size_t pos = 0;
    LetterId expect = 0;
    while (pos < chain.size()) {
      std::size_t lt = chain.find('<', pos);
      if (lt == std::string::npos) lt = chain.size();
      std::string letter = chain.substr(pos, lt - pos);
      if (alph.id(letter) != expect)
        throw std::invalid_argument("order letter chain must list the alphabet in order: " + spec);
      ++expect;
      pos = lt + 1;
    }
    if (expect != alph.size())
      throw std::invalid_argument("order letter chain incomplete: " + spec);
  }
  return op_deg_lex();
}

}  // namespace opal
