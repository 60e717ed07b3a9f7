#pragma once

// Shared helpers for the test binaries: fixture access, a CLI runner, and
// independent oracles that recompute library results by a different route.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "linkoid/closure.hpp"
#include "linkoid/curves3d.hpp"
#include "linkoid/diagram.hpp"
#include "linkoid/involution.hpp"
#include "linkoid/polynomial.hpp"

namespace support {

std::string fixture_path(const std::string& name);
std::string read_file(const std::string& path);
linkoid::PlanarDiagram load_fixture(const std::string& name);
linkoid::PolyCurveSet load_curve_fixture(const std::string& name);

// The worked-example linkoid fixtures (open diagrams, no trivial family).
const std::vector<std::string>& example_fixture_names();

// Runs the CLI binary through the shell, captures stdout, returns the exit
// code.  stderr is discarded.  `env_prefix` may hold "VAR=value " overrides.
int run_cli(const std::string& args, std::string* out,
            const std::string& env_prefix = "");

// Orbit count of <tau, sigma> acting on {1..2n} by explicit flood fill.
int orbit_count(const linkoid::Involution& tau, const linkoid::Involution& sigma);

// Brute-force bracket of a routed closed diagram: smooth every classical
// crossing both ways, pass straight through virtual crossings, count loops by
// port chasing.  Never consults the Gauss-code state sum.
linkoid::LaurentPoly routed_bracket(const linkoid::PlanarDiagram& closed);

// Writhe of a closed routed diagram, recomputed from entry slots.
int routed_writhe(const linkoid::PlanarDiagram& closed);

// (-A^3)^(-routed_writhe) * routed_bracket.
linkoid::LaurentPoly routed_jones(const linkoid::PlanarDiagram& closed);

// Face census from scratch: adjacency rebuilt from the strand walks, faces
// traced as orbits of p -> rotate_ccw(adjacent(p)), Euler checked per piece.
struct FaceCheck {
  int vertices = 0, edges = 0, faces = 0, pieces = 0;
  bool euler_ok = false;
};
FaceCheck face_census(const linkoid::PlanarDiagram& d);

linkoid::Involution random_fpf_involution(int n, std::mt19937_64& rng);

// Random open Gauss code: `crossings` classical crossings with random signs,
// passages shuffled across `strands` open strands labeled (2i+1, 2i+2).
linkoid::GaussCode random_gauss_linkoid(int strands, int crossings,
                                        std::mt19937_64& rng);

// Reidemeister surgeries.  Each returns a validated diagram (or throws
// std::runtime_error when no legal site exists, which would be a test bug).
//
// r1_kink adds a curl of the requested sign on the edge with the given
// catalog index (0 = the first edge of the first strand).
linkoid::PlanarDiagram r1_kink(const linkoid::PlanarDiagram& d, int edge_index,
                               int sign);
int edge_count(const linkoid::PlanarDiagram& d);

// r2_poke pushes one edge across another edge of a shared face, adding a
// cancelling pair of crossings with one strand over at both.
linkoid::PlanarDiagram r2_poke(const linkoid::PlanarDiagram& d);

// r3_variant pokes a strand across a face corner, creating an R3-eligible
// triangle (dense enough diagrams only; an R2 poke is applied first when
// needed), then slides the middle strand across.  `poked` and `slid` differ
// by exactly one R3 move.
struct R3Result {
  linkoid::PlanarDiagram poked, slid;
};
R3Result r3_variant(const linkoid::PlanarDiagram& d);

}  // namespace support
