#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "opal/rational.hpp"

namespace opal {

// sparse row over Q, entries sorted by column index
using SparseRow = std::vector<std::pair<std::int32_t, Q>>;

namespace detail {

// dst -= c * src
inline SparseRow row_axpy(const SparseRow& dst, const Q& c, const SparseRow& src) {
  SparseRow out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() && j < src.size()) {
    if (dst[i].first < src[j].first) {
      out.push_back(dst[i++]);
    } else if (dst[i].first > src[j].first) {
      out.emplace_back(src[j].first, -c * src[j].second);
      ++j;
    } else {
      Q v = dst[i].second - c * src[j].second;
      if (!q_is_zero(v)) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  for (; i < dst.size(); ++i) out.push_back(dst[i]);
  for (; j < src.size(); ++j) out.emplace_back(src[j].first, -c * src[j].second);
  return out;
}

}  // namespace detail

// Incremental exact row reduction: pivot rows are kept normalized and keyed by
// their first column.
class RowEchelon {
 public:
  // returns true if the row was independent (rank grew)
  bool insert(SparseRow row) {
    for (;;) {
      if (row.empty()) return false;
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) break;
      row = detail::row_axpy(row, row.front().second, it->second);
    }
    Q lead = row.front().second;
    for (auto& [col, v] : row) v /= lead;
    pivots_.emplace(row.front().first, std::move(row));
    return true;
  }

  bool in_span(SparseRow row) const {
    for (;;) {
      if (row.empty()) return true;
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) return false;
      row = detail::row_axpy(row, row.front().second, it->second);
    }
  }

  std::int64_t rank() const { return static_cast<std::int64_t>(pivots_.size()); }

 private:
  std::map<std::int32_t, SparseRow> pivots_;
};

inline std::int64_t rank_sparse(const std::vector<SparseRow>& rows) {
  RowEchelon e;
  for (const SparseRow& r : rows) e.insert(r);
  return e.rank();
}

// Independent oracle: fraction-free Bareiss elimination on a dense integer
// matrix (rows cleared of denominators). Quadratic in memory; test-scale only.
inline std::int64_t rank_bareiss(const std::vector<SparseRow>& rows, std::int32_t ncols) {
  std::vector<std::vector<mpz_class>> m;
  m.reserve(rows.size());
  for (const SparseRow& r : rows) {
    mpz_class lcm(1);
    for (const auto& [c, v] : r) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
    std::vector<mpz_class> dense(static_cast<std::size_t>(ncols), mpz_class(0));
    for (const auto& [c, v] : r) {
      Q scaled = v * Q(lcm);
      dense[static_cast<std::size_t>(c)] = scaled.get_num();
    }
    m.push_back(std::move(dense));
  }
  std::size_t nr = m.size();
  std::size_t nc = static_cast<std::size_t>(ncols);
  mpz_class prev(1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nc && rank < nr; ++col) {
    std::size_t piv = rank;
    while (piv < nr && m[piv][col] == 0) ++piv;
    if (piv == nr) continue;
    std::swap(m[rank], m[piv]);
    for (std::size_t i = rank + 1; i < nr; ++i) {
      for (std::size_t j = col + 1; j < nc; ++j) {
        mpz_class t = m[rank][col] * m[i][j] - m[i][col] * m[rank][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = std::move(t);
      }
      m[i][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return static_cast<std::int64_t>(rank);
}

}  // namespace opal
