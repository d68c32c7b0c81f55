#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace opal {

// Letters are small non-negative ids into an Alphabet. Hole symbols used by
// contexts live in a reserved negative range so they can never collide with
// letters: hole i (0-based) has id kHole0 - i.
using LetterId = std::int32_t;
inline constexpr LetterId kHole0 = -1000;

inline constexpr LetterId hole_id(int i) { return kHole0 - i; }
inline constexpr bool is_hole_id(LetterId id) { return id <= kHole0; }
inline constexpr int hole_index(LetterId id) { return static_cast<int>(kHole0 - id); }

struct Alphabet {
  std::vector<std::string> names;  // index = LetterId; vector order = the fixed letter order

  int size() const { return static_cast<int>(names.size()); }

  LetterId id(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<LetterId>(i);
    return -1;
  }

  LetterId add(std::string name) {
    names.push_back(std::move(name));
    return static_cast<LetterId>(names.size() - 1);
  }

  const std::string& name(LetterId id) const { return names.at(static_cast<std::size_t>(id)); }

  // "z1,z2,z3" -> alphabet in that order
  static Alphabet parse(std::string_view csv) {
    Alphabet a;
    std::size_t pos = 0;
    while (pos < csv.size()) {
      std::size_t comma = csv.find(',', pos);
      if (comma == std::string_view::npos) comma = csv.size();
      std::string_view item = csv.substr(pos, comma - pos);
      while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
      while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
      if (!item.empty()) a.add(std::string(item));
      pos = comma + 1;
    }
    return a;
  }

  // x1..xk, used for OPI patterns
  static Alphabet variables(int k) {
    Alphabet a;
    for (int i = 1; i <= k; ++i) a.add("x" + std::to_string(i));
    return a;
  }
};

struct Word;
using WordPtr = std::shared_ptr<const Word>;

// A factor is a letter or a bracketed subword.
struct Factor {
  LetterId letter = -1;  // >= 0 or hole id  => letter slot; inner null
  WordPtr inner;         // non-null         => bracket

  bool is_letter() const { return inner == nullptr; }
  bool is_bracket() const { return inner != nullptr; }
};

// Bracketed word in canonical flat form: the factor sequence is never nested
// as a sequence; concatenation re-flattens by construction. Immutable, with
// size / operator-degree / hash cached at construction.
struct Word {
  std::vector<Factor> fs;
  std::int32_t size = 0;    // letter occurrences + bracket nodes (holes count as letters: 1 each)
  std::int32_t opdeg = 0;   // bracket nodes
  std::int32_t holes = 0;   // hole occurrences anywhere in the tree
  std::uint64_t hash = 0;

  int breadth() const { return static_cast<int>(fs.size()); }
  bool is_identity() const { return fs.empty(); }
};

inline WordPtr make_word(std::vector<Factor> fs) {
  auto w = std::make_shared<Word>();
  w->fs = std::move(fs);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const Factor& f : w->fs) {
    if (f.is_letter()) {
      // holes are placeholders, not content: they contribute no size
      if (is_hole_id(f.letter))
        w->holes += 1;
      else
        w->size += 1;
      h = (h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(f.letter))) * 0x100000001b3ull;
    } else {
      w->size += f.inner->size + 1;
      w->opdeg += f.inner->opdeg + 1;
      w->holes += f.inner->holes;
      h = (h ^ (f.inner->hash + 0x9e3779b97f4a7c15ull)) * 0x100000001b3ull;
    }
  }
  w->hash = h;
  return w;
}

inline const WordPtr& word_identity() {
  static const WordPtr one = make_word({});
  return one;
}

inline WordPtr make_letter(LetterId id) { return make_word({Factor{id, nullptr}}); }

inline WordPtr bracket(WordPtr w) { return make_word({Factor{-1, std::move(w)}}); }

inline bool word_eq(const Word& a, const Word& b);

inline bool factor_eq(const Factor& a, const Factor& b) {
  if (a.is_letter() != b.is_letter()) return false;
  if (a.is_letter()) return a.letter == b.letter;
  return word_eq(*a.inner, *b.inner);
}

inline bool word_eq(const Word& a, const Word& b) {
  if (&a == &b) return true;
  if (a.hash != b.hash || a.fs.size() != b.fs.size() || a.size != b.size) return false;
  for (std::size_t i = 0; i < a.fs.size(); ++i)
    if (!factor_eq(a.fs[i], b.fs[i])) return false;
  return true;
}

inline bool word_eq(const WordPtr& a, const WordPtr& b) { return word_eq(*a, *b); }

inline WordPtr concat(const WordPtr& a, const WordPtr& b) {
  if (a->is_identity()) return b;
  if (b->is_identity()) return a;
  std::vector<Factor> fs;
  fs.reserve(a->fs.size() + b->fs.size());
  fs.insert(fs.end(), a->fs.begin(), a->fs.end());
  fs.insert(fs.end(), b->fs.begin(), b->fs.end());
  return make_word(std::move(fs));
}

inline WordPtr concat(std::span<const WordPtr> ws) {
  std::vector<Factor> fs;
  for (const auto& w : ws) fs.insert(fs.end(), w->fs.begin(), w->fs.end());
  return make_word(std::move(fs));
}

// contiguous factor run [start, start+len)
inline WordPtr subrun(const Word& w, int start, int len) {
  std::vector<Factor> fs(w.fs.begin() + start, w.fs.begin() + start + len);
  return make_word(std::move(fs));
}

// Fixed structural total order on words, independent of any monomial order.
// Keys: size, breadth, then factor-wise (letter < bracket, letters by id,
// brackets recursively). Poly term storage sorts by this.
inline std::strong_ordering structural_cmp(const Word& a, const Word& b) {
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
      auto c = structural_cmp(*fa.inner, *fb.inner);
      if (c != std::strong_ordering::equal) return c;
    }
  }
  return std::strong_ordering::equal;
}

inline std::strong_ordering structural_cmp(const WordPtr& a, const WordPtr& b) {
  return structural_cmp(*a, *b);
}

struct WordStructuralLess {
  bool operator()(const WordPtr& a, const WordPtr& b) const {
    return structural_cmp(*a, *b) == std::strong_ordering::less;
  }
};

// Printer. Letters are space-separated from adjacent letters; no space around
// brackets. Identity prints as "1", holes as "*" (or "*i" with several).
inline void print_word_rec(const Word& w, const Alphabet& alph, std::string& out, int nholes) {
  bool prev_letter = false;
  for (const Factor& f : w.fs) {
    if (f.is_letter()) {
      if (prev_letter) out += ' ';
      if (is_hole_id(f.letter)) {
        out += '*';
        if (nholes > 1) out += std::to_string(hole_index(f.letter) + 1);
      } else {
        out += alph.name(f.letter);
      }
      prev_letter = true;
    } else {
      out += '[';
      if (f.inner->is_identity())
        out += '1';
      else
        print_word_rec(*f.inner, alph, out, nholes);
      out += ']';
      prev_letter = false;
    }
  }
}

inline std::string print_word(const Word& w, const Alphabet& alph) {
  if (w.is_identity()) return "1";
  std::string out;
  print_word_rec(w, alph, out, w.holes);
  return out;
}

inline std::string print_word(const WordPtr& w, const Alphabet& alph) { return print_word(*w, alph); }

}  // namespace opal
