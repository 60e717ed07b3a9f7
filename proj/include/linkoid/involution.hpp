#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace linkoid {

// Fixed-point-free involution on {1, ..., 2n}, stored as a 1-indexed image
// array.  n = 0 (empty domain) is allowed.
class Involution {
 public:
  Involution() = default;
  explicit Involution(std::vector<int> image_1_indexed);

  // Build from transpositions, e.g. {{1,4},{2,3}}.
  static Involution from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);

  // Parse cycle notation "(1 4)(2 3)"; whitespace-insensitive.
  static Involution parse(const std::string& text);

  int n() const { return (int)img_.size() / 2; }
  int size() const { return (int)img_.size(); }          // 2n
  int operator()(int i) const { return img_[i - 1]; }    // 1-indexed

  // Transpositions sorted by smaller element: "(1 4)(2 3)".  "()" when empty.
  std::string str() const;

  friend bool operator==(const Involution& a, const Involution& b) {
    return a.img_ == b.img_;
  }
  friend bool operator!=(const Involution& a, const Involution& b) { return !(a == b); }
  friend bool operator<(const Involution& a, const Involution& b) {
    return a.img_ < b.img_;
  }

 private:
  std::vector<int> img_;
};

// All fixed-point-free involutions on {1..2n} in lexicographic order of their
// image arrays; |H_n| = (2n-1)!!.  Guarded for n <= 10.
std::vector<Involution> enumerate_Hn(int n);

// (2n-1)!! as a 64-bit count.
std::uint64_t double_factorial_odd(int n);

// Orbits of {1..2n} under the group generated by tau and sigma, each orbit
// listed with its smallest element first, orbits sorted by smallest element.
struct SegmentCyclePartition {
  std::vector<std::vector<int>> cycles;
  int count() const { return (int)cycles.size(); }
};
SegmentCyclePartition segment_cycles(const Involution& tau, const Involution& sigma);

// Orbit count via the Burnside formula: the group generated by tau and sigma
// is dihedral of order 2m, m = order of tau*sigma, and the orbit count equals
// the average number of fixed points over its elements.
int burnside_count(const Involution& tau, const Involution& sigma);

}  // namespace linkoid
