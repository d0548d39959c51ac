#include "braidkh/snf.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace braidkh {

namespace {

struct Overflow {};

template <class T>
T checked_mul(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, std::int64_t>) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  } else {
    return a * b;
  }
}

template <class T>
T checked_sub(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, std::int64_t>) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  } else {
    return a - b;
  }
}

template <class T>
T checked_add(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, std::int64_t>) {
    T r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  } else {
    return a + b;
  }
}

template <class T>
T magnitude(const T& a) {
  if constexpr (std::is_same_v<T, std::int64_t>) {
    if (a == INT64_MIN) throw Overflow{};
  }
  return a < 0 ? T(-a) : a;
}

template <class T>
using Row = std::map<int, T>;

// Eliminates unit pivots sparsely. Returns the number of unit factors found
// and leaves the reduced rows/columns in place.
template <class T>
int eliminate_units(std::vector<Row<T>>& rows, std::vector<std::set<int>>& cols,
                    std::vector<char>& row_alive) {
  int units = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!row_alive[r] || rows[r].empty()) continue;
      int pivot_col = -1;
      std::size_t best = SIZE_MAX;
      for (const auto& [c, v] : rows[r]) {
        if ((v == 1 || v == -1) && cols[c].size() < best) {
          best = cols[c].size();
          pivot_col = c;
        }
      }
      if (pivot_col < 0) continue;
      const T pv = rows[r].at(pivot_col);
      const std::vector<int> others(cols[pivot_col].begin(), cols[pivot_col].end());
      for (int o : others) {
        if (o == static_cast<int>(r)) continue;
        Row<T>& target = rows[o];
        // target -= (target[pc] / pv) * row r; pv is a unit so the quotient is exact.
        const T factor = checked_mul(target.at(pivot_col), pv);
        for (const auto& [c, v] : rows[r]) {
          auto it = target.find(c);
          const T prod = checked_mul(factor, v);
          if (it == target.end()) {
            target.emplace(c, T(-prod));
            cols[c].insert(o);
          } else {
            it->second = checked_sub(it->second, prod);
            if (it->second == 0) {
              target.erase(it);
              cols[c].erase(o);
            }
          }
        }
      }
      for (const auto& [c, v] : rows[r]) cols[c].erase(static_cast<int>(r));
      rows[r].clear();
      row_alive[r] = 0;
      ++units;
      progress = true;
    }
  }
  return units;
}

template <class T>
std::vector<T> dense_snf(std::vector<std::vector<T>> a) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  std::vector<T> diag;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool done = false;
    while (!done) {
      // Smallest nonzero magnitude in the trailing block.
      std::size_t pr = m, pc = n;
      T best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (pr == m || magnitude(a[i][j]) < best)) {
            best = magnitude(a[i][j]);
            pr = i;
            pc = j;
          }
      if (pr == m) return diag;
      std::swap(a[t], a[pr]);
      for (std::size_t i = 0; i < m; ++i) std::swap(a[i][t], a[i][pc]);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        const T q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] = checked_sub(a[i][j], checked_mul(q, a[t][j]));
        clean = clean && a[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        const T q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i) a[i][j] = checked_sub(a[i][j], checked_mul(q, a[i][t]));
        clean = clean && a[t][j] == 0;
      }
      if (!clean) continue;
      // Divisibility: fold in any row whose entries the pivot does not divide.
      done = true;
      for (std::size_t i = t + 1; i < m && done; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < n; ++k) a[t][k] = checked_add(a[t][k], a[i][k]);
            done = false;
            break;
          }
    }
    diag.push_back(magnitude(a[t][t]));
  }
  return diag;
}

template <class T>
std::vector<BigInt> sparse_snf(const SparseMatrix& m) {
  std::vector<Row<T>> rows(m.rows);
  std::vector<std::set<int>> cols(m.cols);
  for (const Triplet& e : m.entries) {
    T& slot = rows.at(e.row)[e.col];
    slot = checked_add(slot, T(e.value));
  }
  for (int r = 0; r < m.rows; ++r) {
    for (auto it = rows[r].begin(); it != rows[r].end();) {
      if (it->second == 0) {
        it = rows[r].erase(it);
      } else {
        cols[it->first].insert(r);
        ++it;
      }
    }
  }
  std::vector<char> alive(m.rows, 1);
  const int units = eliminate_units(rows, cols, alive);

  std::vector<int> live_rows, live_cols;
  for (int r = 0; r < m.rows; ++r)
    if (alive[r] && !rows[r].empty()) live_rows.push_back(r);
  std::vector<int> col_index(m.cols, -1);
  for (int c = 0; c < m.cols; ++c)
    if (!cols[c].empty()) {
      col_index[c] = static_cast<int>(live_cols.size());
      live_cols.push_back(c);
    }
  std::vector<std::vector<T>> dense(live_rows.size(), std::vector<T>(live_cols.size(), T(0)));
  for (std::size_t i = 0; i < live_rows.size(); ++i)
    for (const auto& [c, v] : rows[live_rows[i]]) dense[i][col_index[c]] = v;

  std::vector<BigInt> out(units, BigInt(1));
  for (const T& d : dense_snf(std::move(dense))) out.emplace_back(d);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<BigInt> smith_normal_form(const SparseMatrix& m) {
  try {
    return sparse_snf<std::int64_t>(m);
  } catch (const Overflow&) {
    return sparse_snf<BigInt>(m);
  }
}

std::vector<BigInt> smith_normal_form(const DenseMatrix& m) {
  std::vector<std::vector<BigInt>> copy = m;
  std::vector<BigInt> out = dense_snf(std::move(copy));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace braidkh
