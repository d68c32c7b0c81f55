#pragma once

#include <cstdint>
#include <cstdlib>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "opal/opi.hpp"
#include "opal/parallel.hpp"
#include "opal/poly.hpp"

namespace opal {

inline std::int64_t default_fuel() {
  if (const char* env = std::getenv("OPAL_DEFAULT_FUEL")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 10000;
}

inline constexpr std::int64_t kDefaultNodeBudget = 50000;

// Raised when a step under a monomial order produces a support word that is
// not strictly below the rewritten monomial (bad order/orientation pairing).
struct CompatibilityError : std::logic_error {
  using std::logic_error::logic_error;
};

// The term-rewriting system of a rule set with chosen orientations. When an
// order is attached, every rule must pass validate_orientation, which makes
// the system simple and each step strictly decreasing.
struct RewriteSystem {
  Alphabet alphabet;
  std::vector<OPI> rules;
  std::optional<MonomialOrder> order;
  std::int64_t fuel = 10000;
  std::int64_t node_budget = kDefaultNodeBudget;
  int validation_subst_size = 3;

  static RewriteSystem make(Alphabet alphabet, std::vector<OPI> rules,
                            std::optional<MonomialOrder> order = std::nullopt,
                            std::int64_t fuel = -1, std::int64_t node_budget = -1) {
    RewriteSystem sys;
    sys.alphabet = std::move(alphabet);
    sys.rules = std::move(rules);
    sys.order = std::move(order);
    sys.fuel = fuel > 0 ? fuel : default_fuel();
    sys.node_budget = node_budget > 0 ? node_budget : kDefaultNodeBudget;
    if (sys.order) {
      for (const OPI& r : sys.rules) {
        auto rep = validate_orientation(r, *sys.order, sys.alphabet.size(),
                                        sys.validation_subst_size);
        if (!rep.pass)
          throw std::invalid_argument("rule '" + r.name +
                                      "' fails orientation validation: " + rep.reason);
      }
    }
    return sys;
  }
};

struct Redex {
  int rule = 0;
  Context q;
  Substitution subst;
};

namespace detail {

// rule-major, then placement order; early exit when cb returns false
inline void for_each_redex(const RewriteSystem& sys, const WordPtr& w,
                           const std::function<bool(Redex&&)>& cb) {
  std::vector<Placement> sites = all_subword_placements(w);
  for (int ri = 0; ri < static_cast<int>(sys.rules.size()); ++ri) {
    const OPI& rule = sys.rules[static_cast<std::size_t>(ri)];
    for (const Placement& pl : sites) {
      for (Substitution& s :
           match_pattern_word(rule.fix, pl.sub, rule.arity, rule.allow_identity)) {
        if (!cb(Redex{ri, pl.ctx, std::move(s)})) return;
      }
    }
  }
}

}  // namespace detail

inline std::vector<Redex> find_redexes(const RewriteSystem& sys, const WordPtr& w) {
  std::vector<Redex> out;
  detail::for_each_redex(sys, w, [&](Redex&& r) {
    out.push_back(std::move(r));
    return true;
  });
  return out;
}

inline std::optional<Redex> find_first_redex(const RewriteSystem& sys, const WordPtr& w) {
  std::optional<Redex> out;
  detail::for_each_redex(sys, w, [&](Redex&& r) {
    out = std::move(r);
    return false;
  });
  return out;
}

inline bool is_reducible(const RewriteSystem& sys, const WordPtr& w) {
  return find_first_redex(sys, w).has_value();
}

struct Step {
  Poly before;
  WordPtr monomial;
  Redex redex;
  Poly after;
};

using Trace = std::vector<Step>;

// Replace c*q|_{fix-instance} by c*q|_{R-instance} inside f. The subtracted
// quantity is c*q|_{phi(sigma)}, one ideal generator.
inline Poly one_step(const RewriteSystem& sys, const Poly& f, const WordPtr& monomial,
                     const Redex& redex, Step* out_step = nullptr) {
  const Q* c = f.coeff(monomial);
  if (!c) throw std::invalid_argument("one_step: monomial not in support");
  const OPI& rule = sys.rules[static_cast<std::size_t>(redex.rule)];
  Poly generator = plug_poly(redex.q, instantiate(rule, redex.subst));
  if (!word_eq(plug(redex.q, leading_instance(rule, redex.subst)), monomial))
    throw std::invalid_argument("one_step: redex does not apply to monomial");
  if (sys.order) {
    for (const auto& [m, a] : generator.terms)
      if (!word_eq(m, monomial) &&
          sys.order->cmp(m, monomial) != std::strong_ordering::less)
        throw CompatibilityError("one_step: replacement word not below the rewritten monomial");
  }
  Poly after = poly_sub(f, poly_scale(*c, generator));
  if (out_step) *out_step = Step{f, monomial, redex, after};
  return after;
}

namespace detail {

// Deterministic strategy: rewrite the largest reducible support monomial
// (monomial order when present, structural order otherwise) at its first
// redex in placement order.
inline std::optional<std::pair<WordPtr, Redex>> pick_redex(const RewriteSystem& sys,
                                                           const Poly& f) {
  std::vector<WordPtr> monos;
  monos.reserve(f.terms.size());
  for (const auto& [m, c] : f.terms) monos.push_back(m);
  if (sys.order) {
    std::sort(monos.begin(), monos.end(), [&](const WordPtr& a, const WordPtr& b) {
      return sys.order->cmp(a, b) == std::strong_ordering::greater;
    });
  }  // terms are already sorted structurally, largest first
  for (const WordPtr& m : monos)
    if (auto r = find_first_redex(sys, m)) return std::make_pair(m, std::move(*r));
  return std::nullopt;
}

}  // namespace detail

struct NfResult {
  Poly nf;
  Trace trace;
  bool complete = true;  // false: fuel exhausted, nf is the last polynomial

  explicit operator bool() const { return complete; }
};

inline NfResult normal_form(const RewriteSystem& sys, Poly f, std::int64_t fuel = -1,
                            bool want_trace = false) {
  if (fuel < 0) fuel = sys.fuel;
  NfResult res;
  while (true) {
    auto choice = detail::pick_redex(sys, f);
    if (!choice) break;
    if (fuel-- <= 0) {
      res.nf = std::move(f);
      res.complete = false;
      return res;
    }
    Step step;
    f = one_step(sys, f, choice->first, choice->second, want_trace ? &step : nullptr);
    if (want_trace) res.trace.push_back(std::move(step));
  }
  res.nf = std::move(f);
  return res;
}

template <class S>
std::size_t poly_hash(const BasicPoly<S>& f) {
  std::size_t h = 0x2545f4914f6cdd1dull;
  for (const auto& [m, c] : f.terms) {
    h = (h ^ m->hash) * 0x100000001b3ull;
    if constexpr (std::is_same_v<S, Q>)
      h = (h ^ q_hash(c)) * 0x100000001b3ull;
  }
  return h;
}

enum class JoinStatus { joined, not_joined, unknown };

struct JoinResult {
  JoinStatus status = JoinStatus::unknown;
  Poly nf_left, nf_right;  // strategy normal forms (or last polys on fuel out)
  Poly witness;            // common reduct when joined

  bool joined() const { return status == JoinStatus::joined; }
};

namespace detail {

struct PolySet {
  std::unordered_map<std::size_t, std::vector<Poly>> buckets;

  bool insert(const Poly& f) {
    auto& v = buckets[poly_hash(f)];
    for (const Poly& g : v)
      if (g == f) return false;
    v.push_back(f);
    return true;
  }
  bool contains(const Poly& f) const {
    auto it = buckets.find(poly_hash(f));
    if (it == buckets.end()) return false;
    for (const Poly& g : it->second)
      if (g == f) return true;
    return false;
  }
};

// all one-step reducts of f (every support monomial, every redex)
inline std::vector<Poly> all_reducts(const RewriteSystem& sys, const Poly& f) {
  std::vector<Poly> out;
  for (const auto& [m, c] : f.terms) {
    for_each_redex(sys, m, [&](Redex&& r) {
      out.push_back(one_step(sys, f, m, r));
      return true;
    });
  }
  return out;
}

}  // namespace detail

// Joinability: compare strategy normal forms first; on mismatch, exhaustive
// bounded exploration of both reduct sets.
inline JoinResult joinable(const RewriteSystem& sys, const Poly& f, const Poly& g,
                           std::int64_t node_budget = -1) {
  if (node_budget < 0) node_budget = sys.node_budget;
  JoinResult res;
  NfResult nf = normal_form(sys, f);
  NfResult ng = normal_form(sys, g);
  res.nf_left = nf.nf;
  res.nf_right = ng.nf;
  if (nf.complete && ng.complete && nf.nf == ng.nf) {
    res.status = JoinStatus::joined;
    res.witness = nf.nf;
    return res;
  }
  if (!nf.complete || !ng.complete) return res;  // fuel out: no basis for a search

  detail::PolySet left, right;
  std::deque<std::pair<Poly, bool>> frontier;  // (poly, from_left)
  left.insert(f);
  right.insert(g);
  frontier.emplace_back(f, true);
  frontier.emplace_back(g, false);
  auto check_cross = [&](const Poly& p, bool from_left) {
    return from_left ? right.contains(p) : left.contains(p);
  };
  if (check_cross(f, true) || f == g) {
    res.status = JoinStatus::joined;
    res.witness = f;
    return res;
  }
  std::int64_t budget = node_budget;
  while (!frontier.empty()) {
    auto [p, from_left] = std::move(frontier.front());
    frontier.pop_front();
    for (Poly& r : detail::all_reducts(sys, p)) {
      if (budget-- <= 0) {
        res.status = JoinStatus::unknown;
        return res;
      }
      detail::PolySet& mine = from_left ? left : right;
      if (!mine.insert(r)) continue;
      if (check_cross(r, from_left)) {
        res.status = JoinStatus::joined;
        res.witness = r;
        return res;
      }
      frontier.emplace_back(std::move(r), from_left);
    }
  }
  res.status = JoinStatus::not_joined;
  return res;
}

struct ZeroResult {
  bool zero = false;
  bool known = true;  // false: budget/fuel exhausted
  Trace trace;
};

inline ZeroResult rewrites_to_zero(const RewriteSystem& sys, const Poly& f,
                                   std::int64_t fuel = -1, bool want_trace = false) {
  ZeroResult res;
  NfResult nf = normal_form(sys, f, fuel, want_trace);
  res.trace = std::move(nf.trace);
  if (nf.complete && nf.nf.is_zero()) {
    res.zero = true;
    return res;
  }
  if (!nf.complete) {
    res.known = false;
    return res;
  }
  // nonzero strategy NF: fall back to bounded joinability with 0
  JoinResult jr = joinable(sys, f, Poly::zero(), fuel < 0 ? sys.node_budget : fuel);
  if (jr.status == JoinStatus::unknown) {
    res.known = false;
    return res;
  }
  res.zero = jr.joined();
  return res;
}

// A local base-fork: one monomial, two distinct redexes.
struct Fork {
  WordPtr word;
  Redex left_redex, right_redex;
  Poly left, right;  // the two one-step results
};

inline std::vector<Fork> local_base_forks(const RewriteSystem& sys, int max_size) {
  std::vector<Fork> out;
  for (const WordPtr& w : enumerate_words(sys.alphabet.size(), max_size)) {
    std::vector<Redex> rs = find_redexes(sys, w);
    if (rs.size() < 2) continue;
    Poly base = Poly::monomial(w);
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = i + 1; j < rs.size(); ++j)
        out.push_back(Fork{w, rs[i], rs[j], one_step(sys, base, w, rs[i]),
                           one_step(sys, base, w, rs[j])});
  }
  return out;
}

struct ForkVerdict {
  Fork fork;
  JoinStatus status = JoinStatus::unknown;
  Poly nf_left, nf_right;
};

struct ConfluenceReport {
  enum class Verdict { confluent_up_to_bound, counterexample, unknown } verdict =
      Verdict::confluent_up_to_bound;
  std::vector<ForkVerdict> failures;   // non-joinable forks, enumeration order
  std::int64_t unknown_count = 0;
  std::int64_t forks_checked = 0;

  bool confluent() const { return verdict == Verdict::confluent_up_to_bound; }
};

inline ConfluenceReport check_confluence(const RewriteSystem& sys, int max_size,
                                         std::int64_t node_budget = -1, int threads = 0) {
  if (node_budget < 0) node_budget = sys.node_budget;
  std::vector<Fork> forks = local_base_forks(sys, max_size);
  std::vector<ForkVerdict> verdicts(forks.size());
  parallel_for(
      forks.size(),
      [&](std::size_t i) {
        JoinResult jr = joinable(sys, forks[i].left, forks[i].right, node_budget);
        verdicts[i] = ForkVerdict{forks[i], jr.status, jr.nf_left, jr.nf_right};
      },
      threads);
  ConfluenceReport rep;
  rep.forks_checked = static_cast<std::int64_t>(forks.size());
  for (ForkVerdict& v : verdicts) {
    if (v.status == JoinStatus::not_joined)
      rep.failures.push_back(std::move(v));
    else if (v.status == JoinStatus::unknown)
      rep.unknown_count += 1;
  }
  if (!rep.failures.empty())
    rep.verdict = ConfluenceReport::Verdict::counterexample;
  else if (rep.unknown_count > 0)
    rep.verdict = ConfluenceReport::Verdict::unknown;
  return rep;
}

}  // namespace opal
