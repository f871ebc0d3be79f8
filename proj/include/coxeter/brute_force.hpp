#pragma once

#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "coxeter/matrix.hpp"
#include "coxeter/word.hpp"

namespace coxeter {

/// Exact test oracle for finite Coxeter groups, independent of any matrix
/// arithmetic. Equality is decided by Tits' solution of the word problem:
/// reduced words for the same element are connected by braid moves, and a
/// non-reduced word can be braided into one containing "s s".
namespace brute_force {

/// All words reachable from `w` by braid moves (st... <-> ts..., m(s,t) letters).
inline std::set<Word> braid_class(const Word& w, const CoxeterMatrix& m) {
  std::set<Word> seen{w};
  std::vector<Word> queue{w};
  while (!queue.empty()) {
    Word cur = std::move(queue.back());
    queue.pop_back();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const Generator s = cur[i], t = cur[i + 1];
      if (s == t) continue;
      const Order mst = m(s, t);
      if (is_infinite(mst) || i + mst > cur.size()) continue;
      bool alternating = true;
      for (int k = 0; k < mst && alternating; ++k)
        alternating = cur[i + k] == (k % 2 == 0 ? s : t);
      if (!alternating) continue;
      Word next = cur;
      for (int k = 0; k < mst; ++k) next[i + k] = (k % 2 == 0 ? t : s);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return seen;
}

/// ShortLex-least reduced word equal to `w`.
inline Word canonical(Word w, const CoxeterMatrix& m) {
  for (;;) {
    const auto cls = braid_class(w, m);
    bool shortened = false;
    for (const Word& v : cls) {
      for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i] == v[i + 1]) {
          w = v;
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
          shortened = true;
          break;
        }
      }
      if (shortened) break;
    }
    if (!shortened) return *cls.begin();  // std::set<Word> of equal-length words: lexicographic min
  }
}

struct GroupTable {
  std::vector<Word> elements;              // canonical words, BFS (ShortLex) order
  std::vector<std::vector<int>> right;     // right[i][s] = index of elements[i] * s
  std::vector<std::vector<int>> product;   // product[i][j] = index of elements[i] * elements[j]

  std::size_t size() const noexcept { return elements.size(); }
};

/// Closes the generators under right multiplication. Throws TooLarge once
/// more than `cap` elements have been found.
inline GroupTable oracle(const CoxeterMatrix& m, std::size_t cap) {
  const int n = m.rank();
  GroupTable table;
  std::map<Word, int> index;
  table.elements.push_back({});
  index[{}] = 0;
  for (std::size_t i = 0; i < table.elements.size(); ++i) {
    std::vector<int> row(n);
    for (Generator s = 0; s < n; ++s) {
      Word cand = table.elements[i];
      cand.push_back(s);
      cand = canonical(std::move(cand), m);
      auto [it, inserted] = index.emplace(cand, static_cast<int>(table.elements.size()));
      if (inserted) {
        if (table.elements.size() >= cap)
          throw Error(ErrorKind::TooLarge, "more than " + std::to_string(cap) + " elements");
        table.elements.push_back(cand);
      }
      row[s] = it->second;
    }
    table.right.push_back(std::move(row));
  }
  // Renumber into ShortLex order.
  std::vector<int> order(table.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return shortlex_less(table.elements[a], table.elements[b]); });
  std::vector<int> renumber(table.size());
  for (std::size_t k = 0; k < order.size(); ++k) renumber[order[k]] = static_cast<int>(k);
  GroupTable sorted;
  for (int old : order) {
    sorted.elements.push_back(table.elements[old]);
    std::vector<int> row(n);
    for (Generator s = 0; s < n; ++s) row[s] = renumber[table.right[old][s]];
    sorted.right.push_back(std::move(row));
  }
  table = std::move(sorted);

  table.product.assign(table.size(), std::vector<int>(table.size()));
  for (std::size_t i = 0; i < table.size(); ++i)
    for (std::size_t j = 0; j < table.size(); ++j) {
      int cur = static_cast<int>(i);
      for (Generator s : table.elements[j]) cur = table.right[cur][s];
      table.product[i][j] = cur;
    }
  return table;
}

/// Number of elements of each length 0..radius, by the same rewriting. Works
/// for infinite groups.
inline std::vector<std::size_t> sphere_sizes(const CoxeterMatrix& m, int radius) {
  std::vector<std::size_t> sizes{1};
  std::set<Word> previous{Word{}}, current;
  for (int len = 1; len <= radius; ++len) {
    current.clear();
    for (const Word& u : previous)
      for (Generator s = 0; s < m.rank(); ++s) {
        Word cand = u;
        cand.push_back(s);
        cand = canonical(std::move(cand), m);
        if (static_cast<int>(cand.size()) == len) current.insert(std::move(cand));
      }
    sizes.push_back(current.size());
    previous = current;
  }
  return sizes;
}

}  // namespace brute_force
}  // namespace coxeter
