#include "shd/signs.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace shd {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = static_cast<int>(images_.size());
  std::vector<bool> seen(images_.size(), false);
  for (int img : images_) {
    if (img < 1 || img > n || seen[static_cast<std::size_t>(img - 1)])
      throw std::invalid_argument("not a permutation of {1.." + std::to_string(n) + "}");
    seen[static_cast<std::size_t>(img - 1)] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    inv[static_cast<std::size_t>(images_[i] - 1)] = static_cast<int>(i + 1);
  return Permutation(std::move(inv));
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw std::invalid_argument("compose: size mismatch");
  // (p . (q . w))_i = (q . w)_{p(i)} = w_{q(p(i))}
  std::vector<int> img(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) img[i] = q(p(static_cast<int>(i + 1)));
  return Permutation(std::move(img));
}

Sign sgn(const Permutation& p) {
  const auto& img = p.images();
  long long inversions = 0;
  for (std::size_t i = 0; i < img.size(); ++i)
    for (std::size_t j = i + 1; j < img.size(); ++j)
      if (img[i] > img[j]) ++inversions;
  return parity_sign(inversions);
}

Sign koszul_sign(const Permutation& p, std::span<const int> degrees) {
  if (degrees.size() != p.size()) throw std::invalid_argument("koszul_sign: degree vector length mismatch");
  const auto& img = p.images();
  long long exponent = 0;
  for (std::size_t i = 0; i < img.size(); ++i) {
    for (std::size_t j = i + 1; j < img.size(); ++j) {
      if (img[i] > img[j]) {
        const long long da = degrees[static_cast<std::size_t>(img[i] - 1)];
        const long long db = degrees[static_cast<std::size_t>(img[j] - 1)];
        exponent += (da & 1) * (db & 1);
      }
    }
  }
  return parity_sign(exponent);
}

std::vector<Permutation> unshuffles(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("unshuffles: negative block size");
  const int n = a + b;
  std::vector<Permutation> out;
  // Enumerate the first block as an increasing a-subset of {1..n}, lexicographically.
  std::vector<int> first(static_cast<std::size_t>(a));
  std::iota(first.begin(), first.end(), 1);
  while (true) {
    std::vector<int> img = first;
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    for (int v : first) used[static_cast<std::size_t>(v)] = true;
    for (int v = 1; v <= n; ++v)
      if (!used[static_cast<std::size_t>(v)]) img.push_back(v);
    out.emplace_back(std::move(img));

    int i = a - 1;
    while (i >= 0 && first[static_cast<std::size_t>(i)] == n - a + i + 1) --i;
    if (i < 0) break;
    ++first[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < a; ++j) first[static_cast<std::size_t>(j)] = first[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace shd
