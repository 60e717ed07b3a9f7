#pragma once

#include <string>
#include <vector>

#include "linkoid/closure.hpp"
#include "linkoid/diagram.hpp"
#include "linkoid/invariants.hpp"
#include "linkoid/involution.hpp"
#include "linkoid/polynomial.hpp"
#include "linkoid/rational.hpp"

namespace linkoid {

enum class SpectrumMode { Deduped, Multiset };

// Selector for spectrum post-processing and the 3-space measures.  Bracket
// is deliberately absent (it is not an invariant of the closure).  Affine is
// accepted by the measures, which fix one sigma, but rejected by the
// spectrum reductions, where it is undefined for most sigma.
enum class Selector {
  Jones,
  Arrow,
  Affine,
  HeightBound,
  GenusBound,
  ComponentCount,
  OddWrithe,
};
Selector parse_selector(const std::string& name);  // UnsupportedSelector
std::string selector_name(Selector f);

struct SpectrumEntry {
  Involution sigma;               // representative, smallest rank in class
  std::vector<Involution> klass;  // all sigma with this fingerprint
  std::string fingerprint;        // component_count | jones | arrow
  ClosedVirtualDiagram closure;
  InvariantReport rep;
};

struct Spectrum {
  SpectrumMode mode = SpectrumMode::Deduped;
  int n = 0;  // strands
  std::vector<SpectrumEntry> entries;  // ordered by representative rank
};

// Closure + full report for every sigma in H_n, n <= 6.  Deduped mode merges
// sigma whose fingerprints agree; the fingerprint is a proxy for closure
// equivalence, so deduped counts are upper bounds on the true spectrum size.
Spectrum virtual_spectrum(const PlanarDiagram& d, SpectrumMode mode,
                          const StateSumOptions& opts = default_state_sum_options());

// One value per entry, entry order.  Values render via str(); numeric
// selectors may be undefined for an entry (odd writhe of a multi-component
// closure), in which case defined is false.
struct SpectralValue {
  std::string text;
  bool defined = true;
  bool numeric = false;
  long long number = 0;
};
std::vector<SpectralValue> spectral_values(const Spectrum& s, Selector f);

// Exact mean of the selector over the entries (deduped spectra only).
// Undefined entries are skipped; EmptyList if nothing is defined.
struct SpectralMean {
  Selector selector = Selector::ComponentCount;
  bool numeric = false;
  Rational value;        // numeric selectors
  LaurentPoly poly;      // jones
  ArrowPoly arrow;       // arrow
  std::string str() const;
};
SpectralMean avg_spectral(const Spectrum& s, Selector f);

// Minimum over deduped entries; real-valued selectors only.
long long min_spectral(const Spectrum& s, Selector f);

}  // namespace linkoid
