#pragma once

// Permutations, Koszul signs and unshuffles.
//
// Convention used throughout the library: a permutation p acts on a word w
// by (p . w)_i = w_{p(i)}, i.e. slot i of the result receives the letter that
// sat in slot p(i). Images are stored 1-based.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace shd {

/// Plus or minus one.
using Sign = int;

inline Sign parity_sign(long long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

class Permutation {
public:
  Permutation() = default;
  /// Throws std::invalid_argument unless `images` is a bijection of {1..n}.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(std::size_t n);

  std::size_t size() const { return images_.size(); }
  /// 1-based image of the 1-based slot i.
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;

  /// Rearranges a word: result[i] = word[p(i)].
  template <typename T>
  std::vector<T> act(std::span<const T> word) const {
    if (word.size() != images_.size()) throw std::invalid_argument("permutation/word length mismatch");
    std::vector<T> out;
    out.reserve(word.size());
    for (int img : images_) out.push_back(word[static_cast<std::size_t>(img - 1)]);
    return out;
  }
  template <typename T>
  std::vector<T> act(const std::vector<T>& word) const {
    return act(std::span<const T>(word));
  }

  auto operator<=>(const Permutation&) const = default;

private:
  std::vector<int> images_;
};

/// The permutation whose word action equals acting by q first, then by p:
/// compose(p, q) . w == p . (q . w).
Permutation compose(const Permutation& p, const Permutation& q);

/// Parity of p.
Sign sgn(const Permutation& p);

/// Sign picked up when homogeneous x_1..x_n of the given degrees are rearranged
/// into x_{p(1)}..x_{p(n)}: the product of (-1)^{d_a d_b} over inverted pairs.
Sign koszul_sign(const Permutation& p, std::span<const int> degrees);

/// All sigma in S_{a+b} with sigma(1)<..<sigma(a) and sigma(a+1)<..<sigma(a+b),
/// ordered lexicographically by the first block.
std::vector<Permutation> unshuffles(int a, int b);

/// All permutations of {1..n} in lexicographic order.
std::vector<Permutation> all_permutations(int n);

/// Stable sorting permutation: p with keys[p(1)] <= keys[p(2)] <= ...
template <typename Key>
Permutation sorting_permutation(std::span<const Key> keys);

}  // namespace shd

#include <algorithm>
#include <numeric>

namespace shd {

template <typename Key>
Permutation sorting_permutation(std::span<const Key> keys) {
  std::vector<int> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 1);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return keys[static_cast<std::size_t>(a - 1)] < keys[static_cast<std::size_t>(b - 1)];
  });
  return Permutation(std::move(idx));
}

}  // namespace shd
