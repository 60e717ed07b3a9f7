#include "linkoid/involution.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "linkoid/errors.hpp"

namespace linkoid {

Involution::Involution(std::vector<int> image_1_indexed) : img_(std::move(image_1_indexed)) {
  if (img_.size() % 2) throw Error("involution domain must have even size");
  int m = (int)img_.size();
  for (int i = 1; i <= m; ++i) {
    int j = img_[i - 1];
    if (j < 1 || j > m) throw Error("involution image out of range");
    if (j == i) throw Error("involution has a fixed point");
    if (img_[j - 1] != i) throw Error("image array is not an involution");
  }
}

Involution Involution::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> img(2 * n, 0);
  for (auto [a, b] : pairs) {
    if (a < 1 || a > 2 * n || b < 1 || b > 2 * n) throw Error("pair element out of range");
    img[a - 1] = b;
    img[b - 1] = a;
  }
  for (int v : img)
    if (v == 0) throw Error("pairs do not cover the domain");
  return Involution(img);
}

Involution Involution::parse(const std::string& text) {
  std::vector<std::pair<int, int>> pairs;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (std::isspace((unsigned char)text[i]) || text[i] == ',')) ++i;
  };
  skip_ws();
  if (i == text.size()) throw ParseError("empty involution text", "offset 0");
  while (i < text.size()) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(') throw ParseError("expected '('", "offset " + std::to_string(i));
    ++i;
    std::vector<int> cycle;
    while (true) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i == text.size() || !std::isdigit((unsigned char)text[i]))
        throw ParseError("expected number or ')'", "offset " + std::to_string(i));
      int v = 0;
      while (i < text.size() && std::isdigit((unsigned char)text[i]))
        v = v * 10 + (text[i++] - '0');
      cycle.push_back(v);
    }
    if (cycle.empty()) continue;  // "()" denotes the empty involution
    if (cycle.size() != 2)
      throw ParseError("cycles of a fixed-point-free involution must be transpositions",
                       "offset " + std::to_string(i));
    pairs.emplace_back(cycle[0], cycle[1]);
  }
  skip_ws();
  if (i != text.size()) throw ParseError("trailing input", "offset " + std::to_string(i));
  int maxv = 0;
  for (auto [a, b] : pairs) maxv = std::max({maxv, a, b});
  if (maxv % 2) throw ParseError("labels must cover {1..2n}", "offset " + std::to_string(i));
  return from_pairs(maxv / 2, pairs);
}

std::string Involution::str() const {
  if (img_.empty()) return "()";
  std::string out;
  for (int i = 1; i <= size(); ++i) {
    int j = img_[i - 1];
    if (j > i) out += "(" + std::to_string(i) + " " + std::to_string(j) + ")";
  }
  return out;
}

std::uint64_t double_factorial_odd(int n) {
  std::uint64_t r = 1;
  for (int k = 3; k <= 2 * n - 1; k += 2) r *= (std::uint64_t)k;
  return r;
}

namespace {

void enumerate_rec(std::vector<int>& img, std::vector<Involution>& out) {
  int m = (int)img.size();
  int i = 0;
  while (i < m && img[i] != 0) ++i;
  if (i == m) {
    out.emplace_back(img);
    return;
  }
  for (int j = i + 1; j < m; ++j) {
    if (img[j]) continue;
    img[i] = j + 1;
    img[j] = i + 1;
    enumerate_rec(img, out);
    img[i] = img[j] = 0;
  }
}

}  // namespace

std::vector<Involution> enumerate_Hn(int n) {
  if (n < 0) throw Error("negative n");
  if (n > 10) throw TooLarge("H_n enumeration limited to n <= 10");
  std::vector<int> img(2 * n, 0);
  std::vector<Involution> out;
  out.reserve((size_t)double_factorial_odd(n));
  enumerate_rec(img, out);
  return out;
}

SegmentCyclePartition segment_cycles(const Involution& tau, const Involution& sigma) {
  if (tau.size() != sigma.size()) throw SizeMismatch("tau and sigma act on different sets");
  int m = tau.size();
  std::vector<bool> seen(m + 1, false);
  SegmentCyclePartition part;
  for (int s = 1; s <= m; ++s) {
    if (seen[s]) continue;
    // Each orbit is a cycle alternating tau and sigma edges.
    std::vector<int> cyc;
    int cur = s;
    bool use_tau = true;
    do {
      cyc.push_back(cur);
      seen[cur] = true;
      cur = use_tau ? tau(cur) : sigma(cur);
      use_tau = !use_tau;
    } while (cur != s);
    part.cycles.push_back(std::move(cyc));
  }
  return part;
}

int burnside_count(const Involution& tau, const Involution& sigma) {
  if (tau.size() != sigma.size()) throw SizeMismatch("tau and sigma act on different sets");
  int m2 = tau.size();
  if (m2 == 0) return 0;
  // rho = tau o sigma; its order is the lcm of its cycle lengths.
  std::vector<int> rho(m2 + 1);
  for (int i = 1; i <= m2; ++i) rho[i] = tau(sigma(i));
  std::vector<bool> seen(m2 + 1, false);
  std::int64_t order = 1;
  for (int i = 1; i <= m2; ++i) {
    if (seen[i]) continue;
    int len = 0, cur = i;
    do {
      seen[cur] = true;
      cur = rho[cur];
      ++len;
    } while (cur != i);
    order = std::lcm(order, (std::int64_t)len);
  }
  // Average fixed-point counts over the 2*order dihedral elements.
  std::vector<int> pow(m2 + 1);
  for (int i = 1; i <= m2; ++i) pow[i] = i;  // rho^0
  std::int64_t total = 0;
  for (std::int64_t k = 0; k < order; ++k) {
    for (int i = 1; i <= m2; ++i) {
      if (pow[i] == i) ++total;             // fixed points of rho^k
      if (sigma(pow[i]) == i) ++total;      // fixed points of sigma rho^k
    }
    for (int i = 1; i <= m2; ++i) pow[i] = rho[pow[i]];
  }
  std::int64_t denom = 2 * order;
  if (total % denom) throw Error("Burnside sum not divisible by group order");
  return (int)(total / denom);
}

}  // namespace linkoid
