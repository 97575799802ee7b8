#pragma once

// Permutations as one-line words over {1..n}.

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sitlab {

using Permutation = std::vector<int>;

class InvalidPermutation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool is_permutation_word(const Permutation& p) {
  std::vector<char> seen(p.size() + 1, 0);
  for (int v : p) {
    if (v < 1 || static_cast<std::size_t>(v) > p.size() || seen[static_cast<std::size_t>(v)]) {
      return false;
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

inline void require_permutation(const Permutation& p) {
  if (p.empty()) {
    throw InvalidPermutation("empty permutation");
  }
  if (!is_permutation_word(p)) {
    throw InvalidPermutation("not a permutation of 1.." + std::to_string(p.size()));
  }
}

inline Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 1);
  return p;
}

/// Parses "2 4 1 3", "2,4,1,3" or "[2, 4, 1, 3]".
inline Permutation parse_permutation(const std::string& text) {
  std::string cleaned = text;
  for (char& c : cleaned) {
    if (c == ',' || c == '[' || c == ']') {
      c = ' ';
    }
  }
  std::istringstream in(cleaned);
  Permutation p;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw InvalidPermutation("not an integer: '" + tok + "'");
    }
    if (used != tok.size()) {
      throw InvalidPermutation("not an integer: '" + tok + "'");
    }
    p.push_back(v);
  }
  require_permutation(p);
  return p;
}

inline std::string format_permutation(const Permutation& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) {
      out += ' ';
    }
    out += std::to_string(p[i]);
  }
  return out;
}

/// Relative order of a sequence of distinct integers, as a permutation.
inline Permutation standardize(const std::vector<int>& values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  Permutation p(values.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    p[idx[r]] = static_cast<int>(r + 1);
  }
  return p;
}

inline bool is_increasing(const Permutation& p) { return std::is_sorted(p.begin(), p.end()); }

inline bool is_decreasing(const Permutation& p) {
  return std::is_sorted(p.begin(), p.end(), std::greater<>());
}

/// Size >= 4 and no factor of length 2..n-1 whose values form an integer interval.
inline bool is_simple(const Permutation& p) {
  const std::size_t n = p.size();
  if (n < 4) {
    return false;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    int lo = p[i];
    int hi = p[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      lo = std::min(lo, p[j]);
      hi = std::max(hi, p[j]);
      if (static_cast<std::size_t>(hi - lo) == j - i && !(i == 0 && j == n - 1)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace sitlab
