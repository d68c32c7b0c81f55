#include <catch2/catch_amalgamated.hpp>

#include "opal/order.hpp"
#include "opal/poly.hpp"

using namespace opal;

namespace {

const Alphabet kZ123 = Alphabet::parse("z1,z2,z3");

Poly pp(const std::string& s) { return parse_poly(s, kZ123); }
WordPtr pw(const std::string& s) { return parse_word(s, kZ123); }

// deterministic small random polys
struct Rng {
  std::uint64_t state = 98765;
  std::uint64_t next(std::uint64_t bound) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return (state >> 17) % bound;
  }
};

Poly random_poly(Rng& rng, const std::vector<WordPtr>& words) {
  std::vector<std::pair<WordPtr, Q>> raw;
  std::uint64_t nterms = rng.next(4);
  for (std::uint64_t i = 0; i < nterms; ++i)
    raw.emplace_back(words[rng.next(words.size())],
                     q_of(static_cast<long>(rng.next(7)) - 3, static_cast<long>(rng.next(3)) + 1));
  return poly_collect(std::move(raw));
}

// naive product oracle: expand term-by-term into a list, then merge by hand
Poly mul_oracle(const Poly& f, const Poly& g) {
  std::vector<std::pair<WordPtr, Q>> raw;
  for (const auto& [mf, cf] : f.terms)
    for (const auto& [mg, cg] : g.terms) raw.emplace_back(concat(mf, mg), cf * cg);
  // quadratic merge, independent of poly_collect's sort
  Poly out;
  for (auto& [m, c] : raw) {
    bool found = false;
    for (auto& [m2, c2] : out.terms)
      if (word_eq(m, m2)) {
        c2 += c;
        found = true;
        break;
      }
    if (!found) out.terms.emplace_back(m, c);
  }
  std::erase_if(out.terms, [](const auto& t) { return q_is_zero(t.second); });
  std::sort(out.terms.begin(), out.terms.end(), [](const auto& a, const auto& b) {
    return structural_cmp(*a.first, *b.first) == std::strong_ordering::greater;
  });
  return out;
}

}  // namespace

TEST_CASE("add and scale behave coefficient-wise") {
  CHECK(poly_add(pp("z1"), pp("-z1")).is_zero());
  CHECK(poly_scale(Q(0), pp("z1 + 2*z2")).is_zero());
  CHECK(poly_add(pp("2*z1"), pp("3*z1 + z2")) == pp("5*z1 + z2"));
  CHECK(poly_add(pp("1/2*z1"), pp("1/3*z1")) == pp("5/6*z1"));
}

TEST_CASE("mul distributes and is unital") {
  CHECK(poly_mul(pp("z1 + z2"), pp("z3")) == pp("z1 z3 + z2 z3"));
  Poly f = pp("2*z1[z2] - [z1]");
  CHECK(poly_mul(f, pp("1")) == f);
  CHECK(poly_mul(pp("1"), f) == f);
  // (z1 + [z1])^2 expands to four terms
  Poly s = pp("z1 + [z1]");
  CHECK(poly_mul(s, s) == pp("z1 z1 + z1[z1] + [z1]z1 + [z1][z1]"));
}

TEST_CASE("ring axioms on random polys against a brute-force oracle") {
  Rng rng;
  std::vector<WordPtr> words = enumerate_words(3, 3);
  for (int t = 0; t < 200; ++t) {
    Poly f = random_poly(rng, words), g = random_poly(rng, words), h = random_poly(rng, words);
    CHECK(poly_mul(f, g) == mul_oracle(f, g));
    CHECK(poly_mul(poly_mul(f, g), h) == poly_mul(f, poly_mul(g, h)));
    CHECK(poly_mul(f, poly_add(g, h)) == poly_add(poly_mul(f, g), poly_mul(f, h)));
    CHECK(poly_add(f, g) == poly_add(g, f));
  }
}

TEST_CASE("apply_op brackets every monomial linearly") {
  CHECK(apply_op(pp("z1 + 2*z2")) == pp("[z1] + 2*[z2]"));
  CHECK(apply_op(Poly::zero()).is_zero());
  CHECK(apply_op(pp("[z1]")) == pp("[[z1]]"));
  CHECK(apply_op(pp("1")) == pp("[1]"));
}

TEST_CASE("remainder splits off one monomial as a direct sum") {
  auto [c1, rest1] = remainder(pp("2*z1 + z2"), pw("z1"));
  CHECK(c1 == Q(2));
  CHECK(rest1 == pp("-z2"));
  auto [c2, rest2] = remainder(pp("[z1]"), pw("[z1]"));
  CHECK(c2 == Q(1));
  CHECK(rest2.is_zero());
  auto [c3, rest3] = remainder(pp("z1 - z2"), pw("z2"));
  CHECK(c3 == Q(-1));
  CHECK(rest3 == pp("-z1"));
  CHECK_THROWS(remainder(pp("z1"), pw("z2")));
  // decomposition identity f = c*w - rest, w not in Supp(rest)
  Rng rng;
  std::vector<WordPtr> words = enumerate_words(3, 3);
  for (int t = 0; t < 100; ++t) {
    Poly f = random_poly(rng, words);
    for (const auto& [w, cw] : f.terms) {
      auto [c, rest] = remainder(f, w);
      CHECK(c == cw);
      CHECK(f == poly_sub(poly_scale(c, Poly::monomial(w)), rest));
      CHECK(rest.coeff(w) == nullptr);
      CHECK(is_direct_sum(Poly::monomial(w, c), poly_neg(rest)));
    }
  }
}

TEST_CASE("plug_poly is the linear extension of plug") {
  Context br{bracket(make_letter(hole_id(0)))};
  CHECK(plug_poly(br, pp("z1 + z2")) == pp("[z1] + [z2]"));
  CHECK(plug_poly(hole_context(), pp("z1 - 3*[z2]")) == pp("z1 - 3*[z2]"));
  Context right{concat(make_letter(hole_id(0)), pw("z3"))};
  CHECK(plug_poly(right, pp("z1 - z2")) == pp("z1 z3 - z2 z3"));
  // linearity on random input
  Rng rng;
  std::vector<WordPtr> words = enumerate_words(3, 3);
  for (int t = 0; t < 100; ++t) {
    Poly f = random_poly(rng, words), g = random_poly(rng, words);
    Q a = q_of(static_cast<long>(rng.next(5)) - 2);
    CHECK(plug_poly(br, poly_add(poly_scale(a, f), g)) ==
          poly_add(poly_scale(a, plug_poly(br, f)), plug_poly(br, g)));
  }
}

TEST_CASE("is_direct_sum tests disjoint support") {
  CHECK(is_direct_sum(pp("z1"), pp("z2")));
  CHECK(!is_direct_sum(pp("z1"), pp("z1 + z2")));
  CHECK(is_direct_sum(Poly::zero(), pp("z1")));
  CHECK(is_direct_sum(Poly::zero(), Poly::zero()));
}

TEST_CASE("leading follows the order with the scalar convention") {
  MonomialOrder ord = op_deg_lex();
  auto [w1, c1] = leading(pp("[z1] + z1"), ord);
  CHECK(word_eq(w1, pw("[z1]")));
  CHECK(c1 == Q(1));
  auto [w0, c0] = leading(Poly::zero(), ord);
  CHECK(word_eq(w0, word_identity()));
  CHECK(c0 == Q(0));
  auto [wk, ck] = leading(pp("5"), ord);
  CHECK(word_eq(wk, word_identity()));
  CHECK(ck == Q(5));
  auto [w2, c2] = leading(pp("3*z1 z2 + z1"), ord);
  CHECK(word_eq(w2, pw("z1 z2")));
  CHECK(c2 == Q(3));
  // compatibility with plug: leading of plug_poly = plug of leading word
  Context q{bracket(concat(make_letter(hole_id(0)), pw("z2")))};
  Poly f = pp("[z1] + z1 z2 + 2*z2");
  auto [lw, lc] = leading(f, ord);
  auto [pw_, pc] = leading(plug_poly(q, f), ord);
  CHECK(word_eq(pw_, plug(q, lw)));
  CHECK(pc == lc);
}

TEST_CASE("monicize rescales the leading coefficient to one") {
  MonomialOrder ord = op_deg_lex();
  CHECK(monicize(pp("2*[z1] + 4*z1"), ord) == pp("[z1] + 2*z1"));
  Poly m = pp("[z1] + 2*z1");
  CHECK(monicize(m, ord) == m);
  CHECK(monicize(pp("-z1"), ord) == pp("z1"));
  CHECK_THROWS(monicize(Poly::zero(), ord));
}

TEST_CASE("poly print and parse round trip") {
  for (const char* s : {"0", "1", "2*z1", "z1 - z2", "-1/2*[z1 z2] + z3", "[1]", "3/4"}) {
    Poly f = pp(s);
    CHECK(parse_poly(print_poly(f, kZ123), kZ123) == f);
  }
  CHECK(print_poly(pp("z1 + -1*z2"), kZ123) == "z1 - z2");
  CHECK(print_poly(Poly::zero(), kZ123) == "0");
}

TEST_CASE("prime field scalars satisfy the same contract") {
  using F = Fp<1000003>;
  BasicPoly<F> f = BasicPoly<F>::monomial(pw("z1"), F(2));
  BasicPoly<F> g = BasicPoly<F>::monomial(pw("z1"), F(-2));
  CHECK(poly_add(f, g).is_zero());
  BasicPoly<F> h = poly_mul(f, BasicPoly<F>::monomial(pw("z2"), F(3)));
  REQUIRE(h.terms.size() == 1);
  CHECK(h.terms[0].second == F(6));
  CHECK(word_eq(h.terms[0].first, pw("z1 z2")));
  CHECK((F(5) / F(5)) == F(1));
}
