#pragma once

#include <map>
#include <optional>
#include <vector>

#include "linkoid/closure.hpp"
#include "linkoid/diagram.hpp"
#include "linkoid/involution.hpp"
#include "linkoid/polynomial.hpp"

namespace linkoid {

// State sums are exponential in the crossing count; refuse past this limit
// unless the caller raises it (or LINKOID_MAX_CROSSINGS is set).
struct StateSumOptions {
  int max_crossings = 28;
  int threads = 1;
};
StateSumOptions default_state_sum_options();

int writhe(const GaussCode& g);

// Generalized bracket: sum over smoothing states S of
//   A^(a(S) - b(S)) d^(loops(S) + cycles(S) - 1),   d = -A^2 - A^-2,
// where loops counts the closed state loops and cycles the orbits of the
// endpoint labels under the state pairing and sigma.
LaurentPoly bracket(const GaussCode& g, const Involution& sigma,
                    const StateSumOptions& opts = default_state_sum_options());

// Writhe-normalized bracket, an invariant of the closure.
LaurentPoly jones(const GaussCode& g, const Involution& sigma,
                  const StateSumOptions& opts = default_state_sum_options());

// Arrow polynomial of the closure: the bracket refined by K_i variables, one
// K_i per state loop that keeps 2i cusps after cyclic cancellation.  Cusps
// live on the smoothing arcs that join equally-oriented strand ends, with
// orientations taken from the closure traversal.
ArrowPoly arrow(const GaussCode& g, const Involution& sigma,
                const StateSumOptions& opts = default_state_sum_options());

// Affine index polynomial of a 1-component closure.  Arcs of the traversal
// get integer labels that step by +1/-1 at each passage; each crossing c
// contributes sgn(c) (t^{W(c)} - 1).  Throws MultiComponent otherwise.
struct AffineResult {
  AffinePoly poly;
  std::map<int, int> weights;  // crossing id -> W(c)
};
AffineResult affine_index(const GaussCode& g, const Involution& sigma);

// Odd writhe of a 1-component closure: the signed count of crossings whose
// two passages interleave an odd number of symbols.
struct OddWritheResult {
  int value = 0;
  std::vector<int> odd_crossings;  // ascending ids
};
OddWritheResult odd_writhe(const GaussCode& g, const Involution& sigma);

// Virtual crossings left after rerouting and reducing the closure; an upper
// bound for the height of the linkoid.
int height_bound(const PlanarDiagram& d, const Involution& sigma);

// Genus of the ribbon surface of the closed diagram (virtual crossings pass
// through), an upper bound for the genus of the closure.
int genus_bound(const ClosedVirtualDiagram& c);

struct InvariantReport {
  Involution sigma;
  int component_count = 0;
  int writhe = 0;
  LaurentPoly bracket;
  LaurentPoly jones;
  ArrowPoly arrow;
  std::optional<AffineResult> affine;        // 1-component closures only
  std::optional<OddWritheResult> odd_writhe; // 1-component closures only
  int height_bound = 0;
  int genus_bound = 0;
};
InvariantReport report(const PlanarDiagram& d, const Involution& sigma,
                       const StateSumOptions& opts = default_state_sum_options());

}  // namespace linkoid
