#pragma once

#include <utility>
#include <vector>

#include "linkoid/diagram.hpp"
#include "linkoid/involution.hpp"

namespace linkoid {

// A virtual closure: the closed diagram plus where it came from.  The source
// and sigma are kept so the closure arcs can be rerouted later.
struct ClosedVirtualDiagram {
  PlanarDiagram diagram;
  PlanarDiagram source;
  Involution sigma;
  int virtual_count = 0;
  int component_count = 0;
};

// Close d by joining endpoint i to endpoint sigma(i) with arcs whose
// crossings are all virtual.  Arcs are routed along dual-graph shortest
// paths; for n <= 4 all arc insertion orders are tried and the routing with
// the fewest virtual crossings kept.  Closed components are traversed
// starting from their smallest endpoint label, entering that strand
// forwards from a foot and backwards from a head.  Strands that are already
// closed pass through unchanged (sigma never pairs them).
ClosedVirtualDiagram virtual_closure(const PlanarDiagram& d, const Involution& sigma);

// The closure with sigma = tau (each strand closed onto itself).
ClosedVirtualDiagram strand_closure(const PlanarDiagram& d);

// Combinatorial closure of a Gauss code: cyclic passage sequences per closed
// component, with signs adjusted to the orientation induced by the
// traversal.  Closed input strands pass through unchanged.
struct ClosedTraversal {
  struct Component {
    std::vector<GaussPassage> passages;          // cyclic, traversal order
    std::vector<std::pair<int, bool>> strands;   // (strand index, reversed)
  };
  std::vector<Component> components;
  int free_loops = 0;
  // Which open strands end up reversed, indexed like GaussCode::strands.
  std::vector<bool> reversed;
};
ClosedTraversal gauss_closure(const GaussCode& g, const Involution& sigma);

// Reroute the closure arcs from the source and simplify with the virtual
// Reidemeister moves V1/V2.  The classical Gauss code is unchanged.
ClosedVirtualDiagram reduce_virtual(const ClosedVirtualDiagram& c);

// One-sided certificate: true when the reduced closure has no virtual
// crossings left, i.e. the closure is visibly a classical link diagram.
bool is_link_type(const PlanarDiagram& d, const Involution& sigma);

// Remove one covering arc per virtual crossing of a closed diagram, creating
// endpoint pairs (2i-1, 2i); re-closing with the returned involution
// restores the original classical code.  Throws NoExcisableArc if some
// virtual crossing has no classical-free covering arc.
std::pair<PlanarDiagram, Involution> excise_virtual(const PlanarDiagram& closed);

// Classical code of a closed diagram, canonicalized over component order,
// traversal direction and cyclic rotation, with crossings relabelled by
// first occurrence.  Two closures get the same canonical code exactly when
// they agree as abstract classical diagrams.
std::string canonical_closed_code(const PlanarDiagram& closed);

}  // namespace linkoid
