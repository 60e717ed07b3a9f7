#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "linkoid/diagram.hpp"
#include "linkoid/invariants.hpp"
#include "linkoid/involution.hpp"
#include "linkoid/spectrum.hpp"

namespace linkoid {

using Vec3 = std::array<double, 3>;

// Open polygonal curves in 3-space.  Curve i carries endpoint labels
// (start, end), by default (2i+1, 2i+2); tau pairs each curve's labels.
struct PolyCurveSet {
  std::vector<std::vector<Vec3>> curves;
  std::vector<std::pair<int, int>> labels;
  Involution tau() const;
  double diameter() const;
};
PolyCurveSet parse_curves(const std::string& text);  // JSON or CSV
PolyCurveSet load_curves_file(const std::string& path);

struct ProjectionOptions {
  double eps_scale = 1e-9;   // eps = eps_scale * diameter
  double eps_angle = 1e-6;   // radians
};

// Orthogonal projection along xi (|xi| = 1) onto a deterministic frame of
// xi-perp.  Every non-adjacent segment intersection becomes a classical
// crossing with over/under from depth along xi; the rotation system and the
// placement of disconnected pieces come from the planar coordinates.
// Endpoint pairs that coincide in 3-space are allowed; any other
// near-degeneracy throws IrregularProjection naming the feature.
PlanarDiagram project(const PolyCurveSet& c, const Vec3& xi,
                      const ProjectionOptions& opts = {});

// Deterministic i.i.d. uniform directions on the sphere; entry k depends
// only on (seed, k).
std::vector<Vec3> sample_directions(int n, std::uint64_t seed);

struct SampleOptions {
  int samples = 1000;
  std::uint64_t seed = 1;
  int threads = 1;
  int budget_factor = 50;  // give up after budget_factor * samples draws
  bool dump_samples = false;
  ProjectionOptions projection;
  StateSumOptions statesum;
};

struct MeasureEstimate {
  std::map<std::string, double> mean;    // monomial key -> sample mean
  std::map<std::string, double> sem;     // sample stdev / sqrt(N)
  bool scalar = false;                   // single key "value"
  int samples = 0;
  int rejected = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> dump;         // per-direction values if requested
};

// Monte Carlo estimate of the direction-averaged invariant of the
// sigma-closure.  Irregular directions are rejected and resampled, up to the
// budget (SamplingFailure beyond it).  Affine and odd writhe require a
// 1-component closure (MultiComponent otherwise).
MeasureEstimate measure(const PolyCurveSet& c, const Involution& sigma,
                        Selector f, const SampleOptions& opts);

// One measure per sigma in H_n (n <= 4), all sharing one direction set.
// w_sigma averages the 3-space distances between paired endpoints.
struct WeightedEntry {
  Involution sigma;
  double weight = 0.0;
  MeasureEstimate estimate;
};
struct WeightedSpectrum {
  std::vector<WeightedEntry> entries;  // sigma rank order
  double w_min = 0.0;
};
WeightedSpectrum weighted_spectrum(const PolyCurveSet& c, Selector f,
                                   const SampleOptions& opts);

// Sum of (w_min / w_sigma)-weighted closure invariants, evaluated per
// direction and then averaged.  When w_min = 0 only the w_sigma = 0 terms
// survive, with weight 1.
MeasureEstimate spectral_measure(const PolyCurveSet& c, Selector f,
                                 const SampleOptions& opts);

}  // namespace linkoid
