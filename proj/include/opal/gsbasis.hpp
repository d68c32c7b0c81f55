#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "opal/linalg.hpp"
#include "opal/parallel.hpp"
#include "opal/rewrite.hpp"

namespace opal {

// one bounded generator instance phi(sigma), kept monic
struct RuleInstance {
  int rule = 0;
  Substitution subst;
  WordPtr lead;
  Poly poly;
};

// All instances with substitution words of size <= max_inst_size, rule-major,
// substitution slots in enumeration order.
inline std::vector<RuleInstance> rule_instances(const RewriteSystem& sys, int max_inst_size) {
  std::vector<RuleInstance> out;
  std::vector<WordPtr> words = enumerate_words(sys.alphabet.size(), max_inst_size);
  for (int ri = 0; ri < static_cast<int>(sys.rules.size()); ++ri) {
    const OPI& rule = sys.rules[static_cast<std::size_t>(ri)];
    Substitution subst(static_cast<std::size_t>(rule.arity));
    auto rec = [&](int slot, auto&& self) -> void {
      if (slot == rule.arity) {
        out.push_back(RuleInstance{ri, subst, leading_instance(rule, subst),
                                   instantiate(rule, subst)});
        return;
      }
      for (const WordPtr& u : words) {
        if (u->is_identity() && !rule.allow_identity[static_cast<std::size_t>(slot)]) continue;
        subst[static_cast<std::size_t>(slot)] = u;
        self(slot + 1, self);
      }
    };
    rec(0, rec);
  }
  return out;
}

struct Composition {
  enum class Kind { intersection, including } kind = Kind::intersection;
  WordPtr w;
  int rule_f = 0, rule_g = 0;
  Substitution subst_f, subst_g;
  WordPtr u, v;  // intersection: w = lead_f * u = v * lead_g
  Context q;     // including: w = lead_f = q|_{lead_g}
  Poly value;    // f*u - v*g, or f - q|_g
};

namespace detail {

struct WordKeyHash {
  std::size_t operator()(const WordPtr& w) const { return w->hash; }
};
struct WordKeyEq {
  bool operator()(const WordPtr& a, const WordPtr& b) const { return word_eq(a, b); }
};

template <class T>
using WordMap = std::unordered_map<WordPtr, T, WordKeyHash, WordKeyEq>;
using WordSet = std::unordered_set<WordPtr, WordKeyHash, WordKeyEq>;

}  // namespace detail

// Intersection compositions of Def-style overlaps: w = lead_f * u = v * lead_g
// with a nonempty middle segment and both ends sticking out.
inline std::vector<Composition> intersection_compositions(const RewriteSystem& sys,
                                                          int max_inst_size) {
  std::vector<RuleInstance> inst = rule_instances(sys, max_inst_size);
  // proper nonempty prefix of lead_g -> (instance index, trailing part c)
  detail::WordMap<std::vector<std::pair<std::size_t, WordPtr>>> by_prefix;
  for (std::size_t j = 0; j < inst.size(); ++j) {
    const WordPtr& lg = inst[j].lead;
    for (int len = 1; len < lg->breadth(); ++len)
      by_prefix[subrun(*lg, 0, len)].emplace_back(j, subrun(*lg, len, lg->breadth() - len));
  }
  std::vector<Composition> out;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const WordPtr& lf = inst[i].lead;
    for (int sa = 1; sa < lf->breadth(); ++sa) {
      WordPtr a = subrun(*lf, 0, sa);
      WordPtr b = subrun(*lf, sa, lf->breadth() - sa);
      auto it = by_prefix.find(b);
      if (it == by_prefix.end()) continue;
      for (const auto& [j, c] : it->second) {
        Composition comp;
        comp.kind = Composition::Kind::intersection;
        comp.rule_f = inst[i].rule;
        comp.rule_g = inst[j].rule;
        comp.subst_f = inst[i].subst;
        comp.subst_g = inst[j].subst;
        comp.u = c;
        comp.v = a;
        comp.w = concat(lf, c);
        comp.value = poly_sub(poly_mul(inst[i].poly, Poly::monomial(c)),
                              poly_mul(Poly::monomial(a), inst[j].poly));
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

// Including compositions: lead_g occurs inside lead_f. The self case (same
// rule, same substitution, q = *) is identically zero and skipped.
inline std::vector<Composition> including_compositions(const RewriteSystem& sys,
                                                       int max_inst_size) {
  std::vector<RuleInstance> inst = rule_instances(sys, max_inst_size);
  detail::WordMap<std::vector<std::size_t>> by_lead;
  for (std::size_t j = 0; j < inst.size(); ++j) by_lead[inst[j].lead].push_back(j);
  std::vector<Composition> out;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    for (const Placement& pl : all_subword_placements(inst[i].lead)) {
      auto it = by_lead.find(pl.sub);
      if (it == by_lead.end()) continue;
      for (std::size_t j : it->second) {
        bool self = inst[i].rule == inst[j].rule && is_hole_context(pl.ctx) &&
                    [&] {
                      for (std::size_t s = 0; s < inst[i].subst.size(); ++s)
                        if (!word_eq(inst[i].subst[s], inst[j].subst[s])) return false;
                      return true;
                    }();
        if (self) continue;
        Composition comp;
        comp.kind = Composition::Kind::including;
        comp.rule_f = inst[i].rule;
        comp.rule_g = inst[j].rule;
        comp.subst_f = inst[i].subst;
        comp.subst_g = inst[j].subst;
        comp.q = pl.ctx;
        comp.w = inst[i].lead;
        comp.value = poly_sub(inst[i].poly, plug_poly(pl.ctx, inst[j].poly));
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

enum class Trivial { yes, no, unknown };

// Operational triviality: the composition value rewrites to 0. Each step
// subtracts one c*q|_s with in-bound leading word, so the reduction trace is
// the triviality certificate.
inline Trivial is_trivial_mod(const Composition& comp, const RewriteSystem& sys,
                              std::int64_t fuel = -1) {
  ZeroResult zr = rewrites_to_zero(sys, comp.value, fuel);
  if (!zr.known) return Trivial::unknown;
  return zr.zero ? Trivial::yes : Trivial::no;
}

struct GsReport {
  enum class Verdict { gs_up_to_bound, counterexample, unknown } verdict =
      Verdict::gs_up_to_bound;
  std::optional<Composition> bad;  // first non-trivial composition
  std::int64_t unknown_count = 0;
  std::int64_t compositions_checked = 0;

  bool gs() const { return verdict == Verdict::gs_up_to_bound; }
};

inline GsReport check_gs(const RewriteSystem& sys, int max_inst_size, std::int64_t fuel = -1,
                         int threads = 0) {
  std::vector<Composition> comps = intersection_compositions(sys, max_inst_size);
  {
    std::vector<Composition> incl = including_compositions(sys, max_inst_size);
    comps.insert(comps.end(), std::make_move_iterator(incl.begin()),
                 std::make_move_iterator(incl.end()));
  }
  std::vector<Trivial> results(comps.size(), Trivial::unknown);
  parallel_for(
      comps.size(), [&](std::size_t i) { results[i] = is_trivial_mod(comps[i], sys, fuel); },
      threads);
  GsReport rep;
  rep.compositions_checked = static_cast<std::int64_t>(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (results[i] == Trivial::no) {
      rep.verdict = GsReport::Verdict::counterexample;
      rep.bad = std::move(comps[i]);
      return rep;
    }
    if (results[i] == Trivial::unknown) rep.unknown_count += 1;
  }
  if (rep.unknown_count > 0) rep.verdict = GsReport::Verdict::unknown;
  return rep;
}

// ---- Theorem-style sufficient condition for a single multi-linear OPI ----

struct Thm41Report {
  bool multilinear = false;
  bool phi_normal = false;
  JoinStatus cond1 = JoinStatus::joined;  // joined = holds on every bounded overlap
  bool cond2 = true;
  std::int64_t cond1_checked = 0, cond2_checked = 0;
  // witnesses on failure
  Substitution cond1_u, cond1_v;
  WordPtr cond1_a, cond1_b, cond1_c;
  Substitution cond2_u, cond2_v;
  Context cond2_q;

  bool all_pass() const {
    return multilinear && phi_normal && cond1 == JoinStatus::joined && cond2;
  }
};

namespace detail {

// canonical key of a substitution tuple list under letter relabeling by first
// occurrence; joinability verdicts are invariant under alphabet bijections
inline std::uint64_t canonical_job_key(std::initializer_list<const Substitution*> tuples,
                                       int extra) {
  std::unordered_map<LetterId, int> relabel;
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(extra);
  auto walk = [&](const Word& w, auto&& self) -> void {
    h = h * 0x100000001b3ull ^ 0x51ull;
    for (const Factor& f : w.fs) {
      if (f.is_letter()) {
        auto [it, fresh] = relabel.emplace(f.letter, static_cast<int>(relabel.size()));
        h = (h ^ static_cast<std::uint64_t>(it->second + 3)) * 0x100000001b3ull;
      } else {
        h = h * 0x100000001b3ull ^ 0x9dull;
        self(*f.inner, self);
        h = h * 0x100000001b3ull ^ 0xa7ull;
      }
    }
    h = h * 0x100000001b3ull ^ 0x53ull;
  };
  for (const Substitution* s : tuples)
    for (const WordPtr& u : *s) walk(*u, walk);
  return h;
}

}  // namespace detail

// Checks the two conditions of the sufficient GS criterion for a single OPI,
// plus its hypotheses (multi-linearity, R(phi) in phi-normal form), over
// substitution words of size <= max_inst_size.
inline Thm41Report check_thm41(const OPI& phi, const MonomialOrder& ord, Alphabet alphabet,
                               int max_inst_size, std::int64_t fuel = -1, int threads = 0) {
  Thm41Report rep;
  rep.multilinear = is_multilinear(phi);
  rep.phi_normal = is_phi_normal(r_side(phi), phi);  // pattern level: variables as letters

  RewriteSystem sys;  // orientation-based; attach the order only if it validates
  {
    auto vr = validate_orientation(phi, ord, alphabet.size(), 2);
    std::optional<MonomialOrder> use_ord;
    if (vr.pass) use_ord = ord;
    sys = RewriteSystem::make(std::move(alphabet), {phi}, std::move(use_ord));
    if (fuel > 0) sys.fuel = fuel;
  }

  std::vector<RuleInstance> inst = rule_instances(sys, max_inst_size);
  detail::WordMap<std::vector<std::size_t>> by_lead;
  for (std::size_t j = 0; j < inst.size(); ++j) by_lead[inst[j].lead].push_back(j);

  // cond (2): every inclusion lead_u = q|_{lead_v} with q != * must place
  // lead_v inside one of the substituted words u_i
  for (std::size_t i = 0; i < inst.size() && rep.cond2; ++i) {
    for (const Placement& pl : all_subword_placements(inst[i].lead)) {
      if (is_hole_context(pl.ctx)) continue;
      auto it = by_lead.find(pl.sub);
      if (it == by_lead.end()) continue;
      for (std::size_t j : it->second) {
        rep.cond2_checked += 1;
        bool inside_some_var = false;
        for (const WordPtr& ui : inst[i].subst) {
          if (ui->is_identity()) continue;
          if (!placements_of(inst[j].lead, ui).empty()) {
            inside_some_var = true;
            break;
          }
        }
        if (!inside_some_var) {
          rep.cond2 = false;
          rep.cond2_u = inst[i].subst;
          rep.cond2_v = inst[j].subst;
          rep.cond2_q = pl.ctx;
          break;
        }
      }
      if (!rep.cond2) break;
    }
  }

  // cond (1): for every touching overlap lead_u = ab, lead_v = bc with b != 1
  // (ends may be empty), R(phi(u))c and aR(phi(v)) must be joinable. The
  // joinability search presupposes the hypotheses; without them the theorem
  // cannot apply and the system may not even terminate, so skip the search.
  if (!rep.multilinear || !rep.phi_normal) {
    rep.cond1 = JoinStatus::unknown;
    return rep;
  }
  struct Job {
    std::size_t i, j;
    WordPtr a, b, c;
  };
  std::vector<Job> jobs;
  std::unordered_set<std::uint64_t> seen;
  detail::WordMap<std::vector<std::pair<std::size_t, WordPtr>>> by_prefix;
  for (std::size_t j = 0; j < inst.size(); ++j) {
    const WordPtr& lg = inst[j].lead;
    for (int len = 1; len < lg->breadth(); ++len)
      by_prefix[subrun(*lg, 0, len)].emplace_back(j, subrun(*lg, len, lg->breadth() - len));
  }
  auto add_job = [&](std::size_t i, std::size_t j, WordPtr a, WordPtr b, WordPtr c) {
    bool same = inst[i].rule == inst[j].rule && a->is_identity() && c->is_identity() && [&] {
      for (std::size_t s = 0; s < inst[i].subst.size(); ++s)
        if (!word_eq(inst[i].subst[s], inst[j].subst[s])) return false;
      return true;
    }();
    if (same) return;
    std::uint64_t key = detail::canonical_job_key({&inst[i].subst, &inst[j].subst},
                                                  static_cast<int>(a->breadth()));
    if (!seen.insert(key).second) return;
    jobs.push_back(Job{i, j, std::move(a), std::move(b), std::move(c)});
  };
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const WordPtr& lf = inst[i].lead;
    // aligned overlap: a = c = 1, b = lead_u = lead_v
    if (auto it = by_lead.find(lf); it != by_lead.end())
      for (std::size_t j : it->second)
        add_job(i, j, word_identity(), lf, word_identity());
    // proper overlaps
    for (int sa = 1; sa < lf->breadth(); ++sa) {
      WordPtr a = subrun(*lf, 0, sa);
      WordPtr b = subrun(*lf, sa, lf->breadth() - sa);
      auto it = by_prefix.find(b);
      if (it == by_prefix.end()) continue;
      for (const auto& [j, c] : it->second) add_job(i, j, a, b, c);
    }
  }
  rep.cond1_checked = static_cast<std::int64_t>(jobs.size());
  std::vector<JoinStatus> results(jobs.size(), JoinStatus::joined);
  parallel_for(
      jobs.size(),
      [&](std::size_t k) {
        const Job& job = jobs[k];
        Poly ru = poly_sub(Poly::monomial(inst[job.i].lead), inst[job.i].poly);
        Poly rv = poly_sub(Poly::monomial(inst[job.j].lead), inst[job.j].poly);
        Poly left = poly_mul(ru, Poly::monomial(job.c));
        Poly right = poly_mul(Poly::monomial(job.a), rv);
        results[k] = joinable(sys, left, right).status;
      },
      threads);
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    if (results[k] == JoinStatus::not_joined) {
      rep.cond1 = JoinStatus::not_joined;
      rep.cond1_u = inst[jobs[k].i].subst;
      rep.cond1_v = inst[jobs[k].j].subst;
      rep.cond1_a = jobs[k].a;
      rep.cond1_b = jobs[k].b;
      rep.cond1_c = jobs[k].c;
      break;
    }
    if (results[k] == JoinStatus::unknown && rep.cond1 == JoinStatus::joined)
      rep.cond1 = JoinStatus::unknown;
  }
  return rep;
}

// ---- irreducibles and the truncated direct-sum check ----

inline std::vector<WordPtr> irr_monomials(const RewriteSystem& sys, int max_size) {
  std::vector<WordPtr> out;
  for (const WordPtr& w : enumerate_words(sys.alphabet.size(), max_size))
    if (!is_reducible(sys, w)) out.push_back(w);
  return out;
}

struct TruncationReport {
  int n = 0;
  std::int64_t total = 0;      // basis words used
  std::int64_t irr_count = 0;  // irreducible among them
  std::int64_t rank = 0;       // exact rank of the generator rows
  bool pass = false;           // rank + irr == total
  bool known = true;           // false when some normal form ran out of fuel
};

// Desk-scale Composition-Diamond check at size bound n. The column basis is
// the size-<= n words extended by the supports of their normal forms (those
// extras are irreducible by construction), so systems whose rules grow word
// size transiently still get an exact verdict: rows are w - nf(w) for every
// reducible w plus every in-basis one-step generator c*q|_{phi(sigma)}.
inline TruncationReport ideal_truncation_rank(const RewriteSystem& sys, int n,
                                              std::int64_t fuel = -1, int threads = 0) {
  TruncationReport rep;
  rep.n = n;
  std::vector<WordPtr> words = enumerate_words(sys.alphabet.size(), n);

  std::vector<std::vector<Redex>> redexes(words.size());
  std::vector<Poly> nfs(words.size());
  std::vector<char> complete(words.size(), 1);
  parallel_for(
      words.size(),
      [&](std::size_t i) {
        redexes[i] = find_redexes(sys, words[i]);
        if (!redexes[i].empty()) {
          NfResult nf = normal_form(sys, Poly::monomial(words[i]), fuel);
          nfs[i] = std::move(nf.nf);
          complete[i] = nf.complete ? 1 : 0;
        }
      },
      threads);

  std::map<WordPtr, std::int32_t, WordStructuralLess> cols;
  for (const WordPtr& w : words) cols.emplace(w, 0);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (redexes[i].empty()) continue;
    if (!complete[i]) {
      rep.known = false;
      return rep;
    }
    for (const auto& [m, c] : nfs[i].terms) cols.emplace(m, 0);
  }
  {
    std::int32_t next = 0;
    for (auto& [w, idx] : cols) idx = next++;
  }
  auto to_row = [&](const Poly& p, SparseRow& row) {
    row.clear();
    for (const auto& [m, c] : p.terms) {
      auto it = cols.find(m);
      if (it == cols.end()) return false;  // support escapes the basis: drop
      row.emplace_back(it->second, c);
    }
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return true;
  };

  std::vector<SparseRow> rows;
  SparseRow row;
  std::int64_t reducible = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (redexes[i].empty()) continue;
    reducible += 1;
    Poly base = Poly::monomial(words[i]);
    if (to_row(poly_sub(base, nfs[i]), row)) rows.push_back(row);
    for (const Redex& r : redexes[i]) {
      const OPI& rule = sys.rules[static_cast<std::size_t>(r.rule)];
      Poly gen = plug_poly(r.q, instantiate(rule, r.subst));
      if (to_row(gen, row)) rows.push_back(row);
    }
  }

  rep.total = static_cast<std::int64_t>(cols.size());
  // basis words beyond size n come from normal-form supports, hence irreducible
  rep.irr_count = rep.total - reducible;
  rep.rank = rank_sparse(rows);
  rep.pass = rep.rank + rep.irr_count == rep.total;
  return rep;
}

struct PgsReport {
  bool ideal_reduction = true;   // superset instances rewrite to 0 under the union
  bool span_agree = true;        // rank(base rows) == rank(base+superset rows) at bound
  GsReport superset_gs;
  bool pass = false;
};

// Verifies that a user-supplied superset is a GS witness for the base system:
// ideal equality at truncation plus check_gs of the superset.
inline PgsReport check_pgs(const RewriteSystem& base, const RewriteSystem& superset, int n,
                           int max_inst_size, std::int64_t fuel = -1) {
  PgsReport rep;
  for (const RuleInstance& ri : rule_instances(superset, max_inst_size)) {
    ZeroResult zr = rewrites_to_zero(superset, ri.poly, fuel);
    if (!zr.zero) {
      rep.ideal_reduction = false;
      break;
    }
  }

  // span comparison over a common column basis
  auto collect_rows = [&](const RewriteSystem& sys, std::vector<Poly>& out) {
    for (const WordPtr& w : enumerate_words(sys.alphabet.size(), n))
      for (const Redex& r : find_redexes(sys, w)) {
        const OPI& rule = sys.rules[static_cast<std::size_t>(r.rule)];
        out.push_back(plug_poly(r.q, instantiate(rule, r.subst)));
      }
  };
  std::vector<Poly> base_rows, super_rows;
  collect_rows(base, base_rows);
  collect_rows(superset, super_rows);
  std::map<WordPtr, std::int32_t, WordStructuralLess> cols;
  for (const Poly& p : base_rows)
    for (const auto& [m, c] : p.terms) cols.emplace(m, 0);
  for (const Poly& p : super_rows)
    for (const auto& [m, c] : p.terms) cols.emplace(m, 0);
  {
    std::int32_t next = 0;
    for (auto& [w, idx] : cols) idx = next++;
  }
  auto to_rows = [&](const std::vector<Poly>& ps) {
    std::vector<SparseRow> rs;
    for (const Poly& p : ps) {
      SparseRow r;
      for (const auto& [m, c] : p.terms) r.emplace_back(cols.at(m), c);
      std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      rs.push_back(std::move(r));
    }
    return rs;
  };
  std::vector<SparseRow> rb = to_rows(base_rows);
  std::vector<SparseRow> rall = rb;
  for (auto& r : to_rows(super_rows)) rall.push_back(std::move(r));
  rep.span_agree = rank_sparse(rb) == rank_sparse(rall);

  rep.superset_gs = check_gs(superset, max_inst_size, fuel);
  rep.pass = rep.ideal_reduction && rep.span_agree && rep.superset_gs.gs();
  return rep;
}

}  // namespace opal
