#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "opal/word.hpp"

namespace opal {

// A *-bracketed word: exactly one hole.
struct Context {
  WordPtr skel;
};

// k ordered holes *1..*k, each exactly once.
struct MultiContext {
  WordPtr skel;
  int holes = 0;
};

inline Context hole_context() { return Context{make_letter(hole_id(0))}; }

inline bool is_hole_context(const Context& q) {
  return q.skel->fs.size() == 1 && q.skel->fs[0].is_letter() && is_hole_id(q.skel->fs[0].letter);
}

namespace detail {

// replace hole letters by the given words, flattening at the splice point
inline WordPtr splice(const Word& skel, std::span<const WordPtr> us) {
  std::vector<Factor> fs;
  fs.reserve(skel.fs.size());
  for (const Factor& f : skel.fs) {
    if (f.is_letter()) {
      if (is_hole_id(f.letter)) {
        const WordPtr& u = us[static_cast<std::size_t>(hole_index(f.letter))];
        fs.insert(fs.end(), u->fs.begin(), u->fs.end());
      } else {
        fs.push_back(f);
      }
    } else if (f.inner->holes > 0) {
      fs.push_back(Factor{-1, splice(*f.inner, us)});
    } else {
      fs.push_back(f);
    }
  }
  return make_word(std::move(fs));
}

}  // namespace detail

inline WordPtr plug(const Context& q, const WordPtr& u) {
  if (q.skel->holes != 1) throw std::invalid_argument("context must have exactly one hole");
  return detail::splice(*q.skel, std::span<const WordPtr>(&u, 1));
}

inline WordPtr plug_multi(const MultiContext& p, std::span<const WordPtr> us) {
  if (static_cast<int>(us.size()) != p.holes)
    throw std::invalid_argument("plug_multi arity mismatch");
  if (p.skel->holes != p.holes) throw std::invalid_argument("malformed multicontext");
  return detail::splice(*p.skel, us);
}

// compose: replace the hole of q1 by the skeleton of q2
inline Context compose(const Context& q1, const Context& q2) {
  return Context{plug(q1, q2.skel)};
}

// A specific occurrence (u, q) of a subword u in w, with plug(q, u) == w.
struct Placement {
  WordPtr sub;
  Context ctx;
};

namespace detail {

// Rebuilders map a word at some nesting position back into the ambient word.
using Rebuild = std::function<WordPtr(const WordPtr&)>;

struct Site {
  WordPtr node;      // the word whose factor runs are scanned
  Rebuild rebuild;   // embeds a replacement for `node` into the ambient word
  int depth;
};

// All contiguous factor runs of all nesting levels, outside-in (depth asc),
// then left-to-right by starting factor index, then by run length.
inline void visit_sites(const WordPtr& w, const std::function<void(const Site&)>& fn) {
  std::vector<Site> queue{Site{w, [](const WordPtr& x) { return x; }, 0}};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Site site = queue[qi];
    fn(site);
    const auto& fs = site.node->fs;
    for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
      if (!fs[i].is_bracket()) continue;
      WordPtr node = site.node;
      Rebuild up = site.rebuild;
      int idx = i;
      queue.push_back(Site{fs[i].inner,
                           [node, up, idx](const WordPtr& rep) {
                             std::vector<Factor> out = node->fs;
                             out[static_cast<std::size_t>(idx)] = Factor{-1, rep};
                             return up(make_word(std::move(out)));
                           },
                           site.depth + 1});
    }
  }
}

inline WordPtr replace_run_with_hole(const Word& node, int start, int len) {
  std::vector<Factor> out;
  out.reserve(node.fs.size() - len + 1);
  out.insert(out.end(), node.fs.begin(), node.fs.begin() + start);
  out.push_back(Factor{hole_id(0), nullptr});
  out.insert(out.end(), node.fs.begin() + start + len, node.fs.end());
  return make_word(std::move(out));
}

}  // namespace detail

// Every (u, q) with u a nonempty contiguous factor run at any nesting depth.
inline std::vector<Placement> all_subword_placements(const WordPtr& w) {
  std::vector<Placement> out;
  detail::visit_sites(w, [&](const detail::Site& site) {
    int b = site.node->breadth();
    for (int start = 0; start < b; ++start)
      for (int len = 1; start + len <= b; ++len) {
        WordPtr sub = subrun(*site.node, start, len);
        WordPtr skel = site.rebuild(detail::replace_run_with_hole(*site.node, start, len));
        out.push_back(Placement{std::move(sub), Context{std::move(skel)}});
      }
  });
  return out;
}

// All q with plug(q, u) == w. Requires u != 1.
inline std::vector<Context> placements_of(const WordPtr& u, const WordPtr& w) {
  if (u->is_identity()) throw std::invalid_argument("placements_of: u must not be the identity");
  std::vector<Context> out;
  int ub = u->breadth();
  detail::visit_sites(w, [&](const detail::Site& site) {
    int b = site.node->breadth();
    for (int start = 0; start + ub <= b; ++start) {
      bool match = true;
      for (int i = 0; i < ub && match; ++i)
        match = factor_eq(site.node->fs[static_cast<std::size_t>(start + i)],
                          u->fs[static_cast<std::size_t>(i)]);
      if (match)
        out.push_back(Context{site.rebuild(detail::replace_run_with_hole(*site.node, start, ub))});
    }
  });
  return out;
}

// Position of a placement's hole inside w: bracket-descent path, then the
// occupied factor interval [start, end) at that level (in w coordinates).
struct PlacementCoords {
  std::vector<int> path;
  int start = 0;
  int end = 0;
};

inline PlacementCoords placement_coords(const Placement& p) {
  PlacementCoords c;
  const Word* node = p.ctx.skel.get();
  for (;;) {
    bool descended = false;
    for (int i = 0; i < static_cast<int>(node->fs.size()); ++i) {
      const Factor& f = node->fs[static_cast<std::size_t>(i)];
      if (f.is_letter() && is_hole_id(f.letter)) {
        c.start = i;
        c.end = i + p.sub->breadth();
        return c;
      }
      if (f.is_bracket() && f.inner->holes > 0) {
        c.path.push_back(i);
        node = f.inner.get();
        descended = true;
        break;
      }
    }
    if (!descended) throw std::logic_error("placement context has no hole");
  }
}

enum class PlacementRelation { separated, nested, intersecting };

// Witnesses per the three-way classification: a two-hole context plus the two
// subwords (separated); the connecting one-hole context (nested); an outer
// context with the middle decomposition a,b,c (intersecting).
struct ClassifyResult {
  PlacementRelation relation;
  // separated
  MultiContext pair_ctx;
  // nested: inner_of_first == true means p2 sits inside p1's subword
  Context connect;
  bool inner_is_second = true;
  // intersecting
  Context outer;
  WordPtr a, b, c;
};

namespace detail {

// replace run by a chosen hole id (for building two-hole witnesses)
inline WordPtr replace_run_with(const Word& node, int start, int len, const Factor& rep) {
  std::vector<Factor> out;
  out.insert(out.end(), node.fs.begin(), node.fs.begin() + start);
  out.push_back(rep);
  out.insert(out.end(), node.fs.begin() + start + len, node.fs.end());
  return make_word(std::move(out));
}

// navigate to the node addressed by a bracket path
inline const Word* node_at(const Word& root, std::span<const int> path) {
  const Word* node = &root;
  for (int idx : path) node = node->fs[static_cast<std::size_t>(idx)].inner.get();
  return node;
}

// rebuild root with the node at `path` replaced
inline WordPtr rebuild_at(const Word& root, std::span<const int> path, const WordPtr& rep) {
  if (path.empty()) return rep;
  std::vector<Factor> out = root.fs;
  int idx = path.front();
  out[static_cast<std::size_t>(idx)] =
      Factor{-1, rebuild_at(*root.fs[static_cast<std::size_t>(idx)].inner, path.subspan(1), rep)};
  return make_word(std::move(out));
}

}  // namespace detail

inline ClassifyResult classify(const Placement& p1, const Placement& p2, const WordPtr& w) {
  if (!word_eq(plug(p1.ctx, p1.sub), w) || !word_eq(plug(p2.ctx, p2.sub), w))
    throw std::invalid_argument("classify: placements do not reconstruct w");

  PlacementCoords c1 = placement_coords(p1);
  PlacementCoords c2 = placement_coords(p2);

  auto make_nested = [&](const Placement& outer_p, const PlacementCoords& outer_c,
                         const PlacementCoords& inner_c, bool second_inside) {
    // connecting context: the outer subword with the inner occurrence holed out
    std::vector<int> rel_path(inner_c.path.begin() + outer_c.path.size(), inner_c.path.end());
    int rel_start = inner_c.start;
    WordPtr inside;
    if (rel_path.empty()) {
      inside = detail::replace_run_with_hole(*outer_p.sub, rel_start - outer_c.start,
                                             inner_c.end - inner_c.start);
    } else {
      rel_path[0] -= outer_c.start;
      const Word* inner_node = detail::node_at(*outer_p.sub, rel_path);
      WordPtr holed =
          detail::replace_run_with_hole(*inner_node, inner_c.start, inner_c.end - inner_c.start);
      inside = detail::rebuild_at(*outer_p.sub, rel_path, holed);
    }
    ClassifyResult r;
    r.relation = PlacementRelation::nested;
    r.connect = Context{inside};
    r.inner_is_second = second_inside;
    return r;
  };

  auto make_separated = [&]() {
    // hole out both runs; do the deeper/right one first so coordinates of the
    // other stay valid
    const PlacementCoords* first = &c1;
    const PlacementCoords* second = &c2;
    bool swapped = false;
    auto order_before = [](const PlacementCoords& x, const PlacementCoords& y) {
      if (x.path != y.path) return x.path < y.path;  // disjoint branches: any fixed order
      return x.start < y.start;
    };
    if (!order_before(c1, c2)) {
      std::swap(first, second);
      swapped = true;
    }
    // same level: replace right run first
    WordPtr skel;
    Factor h1{hole_id(swapped ? 1 : 0), nullptr};
    Factor h2{hole_id(swapped ? 0 : 1), nullptr};
    if (first->path == second->path) {
      const Word* node = detail::node_at(*w, first->path);
      WordPtr tmp = detail::replace_run_with(*node, second->start, second->end - second->start, h2);
      tmp = detail::replace_run_with(*tmp, first->start, first->end - first->start, h1);
      skel = detail::rebuild_at(*w, first->path, tmp);
    } else {
      const Word* n2 = detail::node_at(*w, second->path);
      WordPtr w2 = detail::rebuild_at(
          *w, second->path,
          detail::replace_run_with(*n2, second->start, second->end - second->start, h2));
      const Word* n1 = detail::node_at(*w2, first->path);
      skel = detail::rebuild_at(
          *w2, first->path,
          detail::replace_run_with(*n1, first->start, first->end - first->start, h1));
    }
    ClassifyResult r;
    r.relation = PlacementRelation::separated;
    r.pair_ctx = MultiContext{skel, 2};
    return r;
  };

  // same level?
  if (c1.path == c2.path) {
    if (c1.end <= c2.start || c2.end <= c1.start) return make_separated();
    if (c1.start <= c2.start && c2.end <= c1.end) return make_nested(p1, c1, c2, true);
    if (c2.start <= c1.start && c1.end <= c2.end) return make_nested(p2, c2, c1, false);
    // genuine overlap
    const PlacementCoords& L = (c1.start < c2.start) ? c1 : c2;
    const PlacementCoords& R = (c1.start < c2.start) ? c2 : c1;
    const Word* node = detail::node_at(*w, c1.path);
    ClassifyResult r;
    r.relation = PlacementRelation::intersecting;
    r.a = subrun(*node, L.start, R.start - L.start);
    r.b = subrun(*node, R.start, L.end - R.start);
    r.c = subrun(*node, L.end, R.end - L.end);
    r.outer = Context{detail::rebuild_at(
        *w, c1.path, detail::replace_run_with_hole(*node, L.start, R.end - L.start))};
    return r;
  }

  // one path a strict prefix of the other: nested iff the descent enters the
  // shallower placement's occupied interval, else separated
  auto prefix_of = [](const std::vector<int>& a, const std::vector<int>& b) {
    return a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin());
  };
  if (prefix_of(c1.path, c2.path)) {
    int j = c2.path[c1.path.size()];
    if (j >= c1.start && j < c1.end) return make_nested(p1, c1, c2, true);
    return make_separated();
  }
  if (prefix_of(c2.path, c1.path)) {
    int j = c1.path[c2.path.size()];
    if (j >= c2.start && j < c2.end) return make_nested(p2, c2, c1, false);
    return make_separated();
  }
  return make_separated();
}

// All words of size <= max_size over an alphabet of `nletters` letters, each
// exactly once, sizes ascending with a fixed order inside each size class.
inline std::vector<std::vector<WordPtr>> enumerate_words_by_size(int nletters, int max_size) {
  std::vector<std::vector<WordPtr>> by_size(static_cast<std::size_t>(max_size) + 1);
  if (max_size < 0) return by_size;
  by_size[0] = {word_identity()};
  for (int s = 1; s <= max_size; ++s) {
    std::vector<WordPtr>& out = by_size[static_cast<std::size_t>(s)];
    // first factor of size k, then any remaining word of size s-k
    for (int k = 1; k <= s; ++k) {
      std::vector<Factor> firsts;
      if (k == 1)
        for (LetterId l = 0; l < nletters; ++l) firsts.push_back(Factor{l, nullptr});
      for (const WordPtr& inner : by_size[static_cast<std::size_t>(k - 1)])
        firsts.push_back(Factor{-1, inner});
      for (const Factor& f : firsts)
        for (const WordPtr& rest : by_size[static_cast<std::size_t>(s - k)]) {
          std::vector<Factor> fs;
          fs.reserve(1 + rest->fs.size());
          fs.push_back(f);
          fs.insert(fs.end(), rest->fs.begin(), rest->fs.end());
          out.push_back(make_word(std::move(fs)));
        }
    }
  }
  return by_size;
}

inline std::vector<WordPtr> enumerate_words(int nletters, int max_size) {
  std::vector<WordPtr> out;
  for (auto& bucket : enumerate_words_by_size(nletters, max_size))
    for (auto& w : bucket) out.push_back(std::move(w));
  return out;
}

}  // namespace opal
