#include <catch2/catch_amalgamated.hpp>

#include "opal/context.hpp"
#include "opal/parse.hpp"
#include "opal/word.hpp"

using namespace opal;

namespace {

const Alphabet kZ12 = Alphabet::parse("z1,z2");
const Alphabet kZ = Alphabet::parse("z");

WordPtr pw(const std::string& s, const Alphabet& a = kZ12) { return parse_word(s, a); }

// Independent brute-force word generator: builds every word of size <= n by
// recursive splitting, dedupes structurally. Cross-checks enumerate_words.
void brute_words(int nletters, int max_size, std::vector<WordPtr>& out) {
  std::vector<std::vector<WordPtr>> by_size(static_cast<std::size_t>(max_size) + 1);
  by_size[0].push_back(word_identity());
  for (int s = 1; s <= max_size; ++s) {
    std::vector<WordPtr> found;
    // letter * rest
    for (LetterId l = 0; l < nletters; ++l)
      for (const WordPtr& rest : by_size[static_cast<std::size_t>(s - 1)])
        found.push_back(concat(make_letter(l), rest));
    // bracket(inner) * rest
    for (int k = 1; k <= s; ++k)
      for (const WordPtr& inner : by_size[static_cast<std::size_t>(k - 1)])
        for (const WordPtr& rest : by_size[static_cast<std::size_t>(s - k)])
          found.push_back(concat(bracket(inner), rest));
    // dedupe
    std::sort(found.begin(), found.end(), WordStructuralLess{});
    found.erase(std::unique(found.begin(), found.end(),
                            [](const WordPtr& a, const WordPtr& b) { return word_eq(a, b); }),
                found.end());
    by_size[static_cast<std::size_t>(s)] = std::move(found);
  }
  for (auto& bucket : by_size)
    for (auto& w : bucket) out.push_back(std::move(w));
}

}  // namespace

TEST_CASE("concat is a flattened monoid product") {
  WordPtr z1 = pw("z1"), z2 = pw("z2"), z3 = pw("z2");
  CHECK(word_eq(concat(z1, z2), pw("z1 z2")));
  CHECK(word_eq(concat(word_identity(), z1), z1));
  CHECK(word_eq(concat(z1, word_identity()), z1));
  // associativity on a few mixed words
  WordPtr a = pw("z1[z2]"), b = pw("[z1]"), c = pw("z2 z2");
  CHECK(word_eq(concat(concat(a, b), c), concat(a, concat(b, c))));
  WordPtr w = concat(pw("z1[z2]"), pw("z2"));
  CHECK(word_eq(w, pw("z1[z2]z2")));
  CHECK(w->breadth() == 3);
}

TEST_CASE("bracket always has breadth one") {
  CHECK(word_eq(bracket(pw("z1")), pw("[z1]")));
  WordPtr b1 = bracket(word_identity());
  CHECK(b1->breadth() == 1);
  CHECK(b1->size == 1);
  CHECK(!b1->is_identity());
  CHECK(word_eq(bracket(bracket(pw("z1"))), pw("[[z1]]")));
}

TEST_CASE("size and breadth") {
  CHECK(word_identity()->size == 0);
  CHECK(word_identity()->breadth() == 0);
  CHECK(pw("z1")->size == 1);
  CHECK(pw("[z1]")->size == 2);
  CHECK(pw("[[z1][z2]]")->size == 5);
  CHECK(pw("[[z1][z2]]")->opdeg == 3);
  CHECK(pw("z1[z2]z1")->breadth() == 3);
}

TEST_CASE("plug replaces the hole and flattens") {
  Alphabet x = Alphabet::parse("x");
  // (*[x], x) -> x[x]
  Context q1{concat(make_letter(hole_id(0)), bracket(make_letter(0)))};
  CHECK(word_eq(plug(q1, make_letter(0)), parse_word("x[x]", x)));
  // ([*], [z1] z2) -> [[z1]z2]
  Context q2{bracket(make_letter(hole_id(0)))};
  CHECK(word_eq(plug(q2, pw("[z1]z2")), pw("[[z1]z2]")));
  // (*, w) = w
  CHECK(word_eq(plug(hole_context(), pw("z1[z2]")), pw("z1[z2]")));
}

TEST_CASE("plug_multi replaces each hole simultaneously") {
  WordPtr h1 = make_letter(hole_id(0)), h2 = make_letter(hole_id(1));
  MultiContext p1{bracket(concat(h1, h2)), 2};
  std::vector<WordPtr> us = {pw("z1"), pw("z2")};
  CHECK(word_eq(plug_multi(p1, us), pw("[z1 z2]")));
  MultiContext p2{concat(bracket(h1), bracket(h2)), 2};
  CHECK(word_eq(plug_multi(p2, us), pw("[z1][z2]")));
  MultiContext p3{h1, 1};
  std::vector<WordPtr> one = {pw("[z1]z2")};
  CHECK(word_eq(plug_multi(p3, one), pw("[z1]z2")));
  CHECK_THROWS(plug_multi(p2, one));
}

TEST_CASE("placements_of finds every occurrence in order") {
  Alphabet x = Alphabet::parse("x");
  WordPtr w = parse_word("x[x]", x);
  auto qs = placements_of(parse_word("x", x), w);
  REQUIRE(qs.size() == 2);
  CHECK(word_eq(plug(qs[0], parse_word("x", x)), w));
  CHECK(word_eq(plug(qs[1], parse_word("x", x)), w));
  // outside-in: the top-level x first, then the one inside the bracket
  CHECK(word_eq(qs[0].skel, concat(make_letter(hole_id(0)), bracket(make_letter(0)))));
  CHECK(word_eq(qs[1].skel, concat(make_letter(0), bracket(make_letter(hole_id(0))))));

  auto self = placements_of(w, w);
  REQUIRE(self.size() == 1);
  CHECK(is_hole_context(self[0]));

  CHECK(placements_of(pw("z2"), pw("[z1]")).empty());
  CHECK_THROWS(placements_of(word_identity(), w));
}

TEST_CASE("all_subword_placements enumerates runs at every depth") {
  auto ps = all_subword_placements(pw("[z1]"));
  REQUIRE(ps.size() == 2);
  CHECK(word_eq(ps[0].sub, pw("[z1]")));
  CHECK(is_hole_context(ps[0].ctx));
  CHECK(word_eq(ps[1].sub, pw("z1")));
  CHECK(word_eq(ps[1].ctx.skel, bracket(make_letter(hole_id(0)))));

  auto single = all_subword_placements(pw("z1"));
  REQUIRE(single.size() == 1);
  CHECK(word_eq(single[0].sub, pw("z1")));

  CHECK(all_subword_placements(word_identity()).empty());

  // every placement reconstructs w
  WordPtr w = pw("z1[z2[z1]]z2");
  for (const Placement& p : all_subword_placements(w)) CHECK(word_eq(plug(p.ctx, p.sub), w));
}

TEST_CASE("classify separates, nests, and intersects with reconstructing witnesses") {
  Alphabet x = Alphabet::parse("x");
  WordPtr w = parse_word("x[x]", x);
  WordPtr sub = parse_word("x", x);
  auto qs = placements_of(sub, w);
  REQUIRE(qs.size() == 2);
  auto r = classify(Placement{sub, qs[0]}, Placement{sub, qs[1]}, w);
  CHECK(r.relation == PlacementRelation::separated);
  std::vector<WordPtr> us = {sub, sub};
  CHECK(word_eq(plug_multi(r.pair_ctx, us), w));

  // whole word vs any subword: nested with the connecting context
  WordPtr w2 = pw("[z1]z2");
  auto inner = placements_of(pw("z1"), w2);
  REQUIRE(inner.size() == 1);
  auto r2 = classify(Placement{w2, hole_context()}, Placement{pw("z1"), inner[0]}, w2);
  CHECK(r2.relation == PlacementRelation::nested);
  CHECK(r2.inner_is_second);
  CHECK(word_eq(r2.connect.skel, inner[0].skel));
  CHECK(word_eq(plug(r2.connect, pw("z1")), w2));

  // overlapping runs in a product
  Alphabet abc = Alphabet::parse("a,b,c");
  WordPtr w3 = parse_word("a b c", abc);
  WordPtr ab = parse_word("a b", abc), bc = parse_word("b c", abc);
  auto qab = placements_of(ab, w3), qbc = placements_of(bc, w3);
  REQUIRE(qab.size() == 1);
  REQUIRE(qbc.size() == 1);
  auto r3 = classify(Placement{ab, qab[0]}, Placement{bc, qbc[0]}, w3);
  CHECK(r3.relation == PlacementRelation::intersecting);
  CHECK(word_eq(r3.a, parse_word("a", abc)));
  CHECK(word_eq(r3.b, parse_word("b", abc)));
  CHECK(word_eq(r3.c, parse_word("c", abc)));
  CHECK(word_eq(plug(r3.outer, concat(r3.a, concat(r3.b, r3.c))), w3));

  CHECK_THROWS(classify(Placement{ab, qab[0]}, Placement{bc, qbc[0]}, pw("z1")));
}

TEST_CASE("classify totality: every placement pair gets exactly one class") {
  for (const WordPtr& w : enumerate_words(2, 4)) {
    auto ps = all_subword_placements(w);
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = 0; j < ps.size(); ++j) {
        auto r = classify(ps[i], ps[j], w);
        switch (r.relation) {
          case PlacementRelation::separated: {
            std::vector<WordPtr> us = {ps[i].sub, ps[j].sub};
            CHECK(word_eq(plug_multi(r.pair_ctx, us), w));
            break;
          }
          case PlacementRelation::nested: {
            const Placement& outer = r.inner_is_second ? ps[i] : ps[j];
            const Placement& inner = r.inner_is_second ? ps[j] : ps[i];
            CHECK(word_eq(plug(r.connect, inner.sub), outer.sub));
            CHECK(word_eq(plug(outer.ctx, plug(r.connect, inner.sub)), w));
            break;
          }
          case PlacementRelation::intersecting: {
            CHECK(!r.a->is_identity());
            CHECK(!r.b->is_identity());
            CHECK(!r.c->is_identity());
            CHECK(word_eq(plug(r.outer, concat(r.a, concat(r.b, r.c))), w));
            break;
          }
        }
      }
  }
}

TEST_CASE("parse accepts the word grammar with positions on errors") {
  CHECK(word_eq(pw("[[z1][z2]]"), bracket(concat(bracket(pw("z1")), bracket(pw("z2"))))));
  CHECK(word_eq(pw("1"), word_identity()));
  CHECK(word_eq(pw("z1 [z2 z2]"), concat(pw("z1"), bracket(pw("z2 z2")))));
  CHECK(word_eq(pw("[1]"), bracket(word_identity())));
  CHECK_THROWS_AS(pw("[z1"), ParseError);
  CHECK_THROWS_AS(pw("zz9"), ParseError);
  CHECK_THROWS_AS(pw(""), ParseError);
  CHECK_THROWS_AS(pw("z1]"), ParseError);
}

TEST_CASE("parse/print round trip on all small words") {
  for (const WordPtr& w : enumerate_words(2, 6)) {
    std::string text = print_word(w, kZ12);
    CHECK(word_eq(parse_word(text, kZ12), w));
  }
  // print normalizes whitespace only
  CHECK(print_word(pw("  z1   [ z2 ]  "), kZ12) == "z1[z2]");
}

TEST_CASE("enumerate_words matches a brute-force oracle") {
  for (int nletters : {0, 1, 2}) {
    for (int n : {0, 1, 2, 3, 4, 5}) {
      std::vector<WordPtr> got = enumerate_words(nletters, n);
      std::vector<WordPtr> want;
      brute_words(nletters, n, want);
      REQUIRE(got.size() == want.size());
      // no duplicates, same set
      auto sorted = got;
      std::sort(sorted.begin(), sorted.end(), WordStructuralLess{});
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        CHECK(!word_eq(sorted[i], sorted[i + 1]));
      for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(word_eq(sorted[i], want[i]));
      // sizes ascending
      for (std::size_t i = 0; i + 1 < got.size(); ++i) CHECK(got[i]->size <= got[i + 1]->size);
    }
  }
  // frozen counts, one letter, by exact size
  auto by_size = enumerate_words_by_size(1, 6);
  std::vector<std::size_t> counts;
  for (auto& b : by_size) counts.push_back(b.size());
  CHECK(counts == std::vector<std::size_t>{1, 2, 6, 22, 90, 394, 1806});
  // empty alphabet: pure bracket words over 1
  auto towers = enumerate_words(0, 5);
  CHECK(towers.size() > 1);
  for (const WordPtr& w : towers)
    CHECK(w->opdeg == w->size);  // no letters anywhere
}

TEST_CASE("substitution injectivity fuzz: plug(q,u) = plug(q,v) implies u = v") {
  // deterministic LCG over enumerated words and contexts
  std::vector<WordPtr> words = enumerate_words(2, 5);
  std::vector<Context> ctxs;
  for (const WordPtr& w : enumerate_words(2, 4))
    for (const Placement& p : all_subword_placements(w)) ctxs.push_back(p.ctx);
  std::uint64_t state = 12345;
  auto next = [&state](std::uint64_t bound) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return (state >> 17) % bound;
  };
  int violations = 0;
  for (int t = 0; t < 10000; ++t) {
    const Context& q = ctxs[next(ctxs.size())];
    const WordPtr& u = words[next(words.size())];
    const WordPtr& v = words[next(words.size())];
    if (!word_eq(u, v) && word_eq(plug(q, u), plug(q, v))) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("plug is monotone in subword size and breadth") {
  std::vector<Context> ctxs;
  for (const WordPtr& w : enumerate_words(1, 4))
    for (const Placement& p : all_subword_placements(w)) ctxs.push_back(p.ctx);
  std::vector<WordPtr> words = enumerate_words(1, 4);
  for (const Context& q : ctxs)
    for (const WordPtr& u : words)
      for (const WordPtr& v : words) {
        if (u->size < v->size) {
          CHECK(plug(q, u)->size < plug(q, v)->size);
          CHECK(plug(q, u)->size == q.skel->size + u->size);
        }
      }
}
