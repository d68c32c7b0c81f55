#pragma once

#include <string>

#include <json.hpp>

#include "opal/gsbasis.hpp"
#include "opal/rewrite.hpp"

namespace opal {

using nlohmann::json;

inline json trace_to_json(const Trace& trace, const RewriteSystem& sys) {
  json steps = json::array();
  for (const Step& s : trace) {
    json sub = json::array();
    for (const WordPtr& u : s.redex.subst) sub.push_back(print_word(u, sys.alphabet));
    steps.push_back({{"monomial", print_word(s.monomial, sys.alphabet)},
                     {"rule", sys.rules[static_cast<std::size_t>(s.redex.rule)].name},
                     {"context", print_word(s.redex.q.skel, sys.alphabet)},
                     {"substitution", sub},
                     {"after", print_poly(s.after, sys.alphabet)}});
  }
  return json{{"steps", steps}};
}

inline json fork_verdict_to_json(const ForkVerdict& v, const RewriteSystem& sys) {
  return json{{"word", print_word(v.fork.word, sys.alphabet)},
              {"left", print_poly(v.fork.left, sys.alphabet)},
              {"right", print_poly(v.fork.right, sys.alphabet)},
              {"left_nf", print_poly(v.nf_left, sys.alphabet)},
              {"right_nf", print_poly(v.nf_right, sys.alphabet)},
              {"status", v.status == JoinStatus::joined      ? "joined"
                         : v.status == JoinStatus::not_joined ? "not-joined"
                                                              : "unknown"}};
}

inline json confluence_to_json(const ConfluenceReport& rep, const RewriteSystem& sys) {
  json fails = json::array();
  for (const ForkVerdict& v : rep.failures) fails.push_back(fork_verdict_to_json(v, sys));
  const char* verdict = rep.verdict == ConfluenceReport::Verdict::confluent_up_to_bound
                            ? "confluent-up-to-bound"
                        : rep.verdict == ConfluenceReport::Verdict::counterexample
                            ? "counterexample"
                            : "unknown";
  return json{{"verdict", verdict},
              {"forks_checked", rep.forks_checked},
              {"unknown", rep.unknown_count},
              {"failures", fails}};
}

inline json composition_to_json(const Composition& c, const RewriteSystem& sys) {
  json j{{"kind", c.kind == Composition::Kind::intersection ? "intersection" : "including"},
         {"w", print_word(c.w, sys.alphabet)},
         {"rule_f", sys.rules[static_cast<std::size_t>(c.rule_f)].name},
         {"rule_g", sys.rules[static_cast<std::size_t>(c.rule_g)].name},
         {"value", print_poly(c.value, sys.alphabet)}};
  json sf = json::array(), sg = json::array();
  for (const WordPtr& u : c.subst_f) sf.push_back(print_word(u, sys.alphabet));
  for (const WordPtr& u : c.subst_g) sg.push_back(print_word(u, sys.alphabet));
  j["subst_f"] = sf;
  j["subst_g"] = sg;
  if (c.kind == Composition::Kind::intersection) {
    j["u"] = print_word(c.u, sys.alphabet);
    j["v"] = print_word(c.v, sys.alphabet);
  } else {
    j["q"] = print_word(c.q.skel, sys.alphabet);
  }
  return j;
}

inline json gs_to_json(const GsReport& rep, const RewriteSystem& sys) {
  json j{{"verdict", rep.verdict == GsReport::Verdict::gs_up_to_bound ? "gs-up-to-bound"
                     : rep.verdict == GsReport::Verdict::counterexample ? "counterexample"
                                                                        : "unknown"},
         {"compositions_checked", rep.compositions_checked},
         {"unknown", rep.unknown_count}};
  if (rep.bad) j["counterexample"] = composition_to_json(*rep.bad, sys);
  return j;
}

inline json truncation_to_json(const TruncationReport& rep) {
  return json{{"n", rep.n},         {"total", rep.total}, {"irr", rep.irr_count},
              {"rank", rep.rank},   {"pass", rep.pass},   {"known", rep.known}};
}

inline json thm41_to_json(const Thm41Report& rep, const Alphabet& alph) {
  json j{{"multilinear", rep.multilinear},
         {"phi_normal", rep.phi_normal},
         {"cond1", rep.cond1 == JoinStatus::joined      ? "pass"
                   : rep.cond1 == JoinStatus::not_joined ? "fail"
                                                         : "unknown"},
         {"cond2", rep.cond2 ? "pass" : "fail"},
         {"cond1_checked", rep.cond1_checked},
         {"cond2_checked", rep.cond2_checked},
         {"all_pass", rep.all_pass()}};
  if (rep.cond1 == JoinStatus::not_joined) {
    json u = json::array(), v = json::array();
    for (const WordPtr& w : rep.cond1_u) u.push_back(print_word(w, alph));
    for (const WordPtr& w : rep.cond1_v) v.push_back(print_word(w, alph));
    j["cond1_witness"] = {{"u", u},
                          {"v", v},
                          {"a", print_word(rep.cond1_a, alph)},
                          {"b", print_word(rep.cond1_b, alph)},
                          {"c", print_word(rep.cond1_c, alph)}};
  }
  if (!rep.cond2) {
    json u = json::array(), v = json::array();
    for (const WordPtr& w : rep.cond2_u) u.push_back(print_word(w, alph));
    for (const WordPtr& w : rep.cond2_v) v.push_back(print_word(w, alph));
    j["cond2_witness"] = {{"u", u}, {"v", v}, {"q", print_word(rep.cond2_q.skel, alph)}};
  }
  return j;
}

// OPI spec file:
// {name, arity, pattern: "<poly over x1..xk>", orientation: "<monomial>",
//  params: {lambda: "p/q"}, var_domains: ["allow-identity"|"forbid-identity", ...]}
inline OPI opi_from_json(const json& j) {
  int arity = j.at("arity").get<int>();
  Alphabet vars = Alphabet::variables(arity);
  Poly pattern = parse_poly(j.at("pattern").get<std::string>(), vars);
  WordPtr fix = parse_word(j.at("orientation").get<std::string>(), vars);
  std::vector<bool> domains(static_cast<std::size_t>(arity), true);
  if (j.contains("var_domains")) {
    auto& vd = j.at("var_domains");
    for (int i = 0; i < arity && i < static_cast<int>(vd.size()); ++i) {
      std::string d = vd[static_cast<std::size_t>(i)].get<std::string>();
      if (d != "allow-identity" && d != "forbid-identity")
        throw std::invalid_argument("var_domains entries must be allow-identity/forbid-identity");
      domains[static_cast<std::size_t>(i)] = d == "allow-identity";
    }
  }
  std::map<std::string, Q> params;
  if (j.contains("params"))
    for (auto& [k, v] : j.at("params").items()) params[k] = q_parse(v.get<std::string>());
  return detail::make_opi(j.at("name").get<std::string>(), arity, std::move(pattern),
                          std::move(fix), std::move(domains), std::move(params));
}

}  // namespace opal
