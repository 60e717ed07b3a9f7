#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linkoid/involution.hpp"

namespace linkoid {

// One of the four edge-ends at a crossing (slots 0..3, counterclockwise) or
// the single edge-end of an endpoint (slot 0).  At a classical crossing the
// over-strand occupies slots 0 and 2, the under-strand slots 1 and 3; a
// strand entering at slot s leaves at slot s+2 mod 4.
struct Port {
  int v = 0;
  int slot = 0;
  auto operator<=>(const Port&) const = default;
};

enum class VertexKind { Classical, Virtual, Endpoint, Joint };

struct Vertex {
  VertexKind kind = VertexKind::Classical;
  int sign = 0;                      // classical only; derived from rotation
  std::optional<int> declared_sign;  // from file, checked against derived
  int label = 0;                     // endpoint only
};

// A passage of a strand through a 4-valent vertex, identified by entry slot.
struct Passage {
  int v = 0;
  int slot = 0;
  auto operator<=>(const Passage&) const = default;
};

struct Strand {
  bool closed = false;
  int foot = 0, head = 0;  // endpoint vertex ids (open strands only)
  std::vector<Passage> passages;
};

struct GaussPassage {
  int crossing = 0;
  bool over = false;
  int sign = 0;
  auto operator<=>(const GaussPassage&) const = default;
};

// Virtual crossings never appear here.
struct GaussStrand {
  bool closed = false;
  int foot_label = 0, head_label = 0;
  std::vector<GaussPassage> passages;
};

struct GaussCode {
  std::vector<GaussStrand> strands;

  Involution strand_permutation() const;
  int classical_count() const;
  // Total writhe: each classical crossing counted once with its sign.
  int writhe() const;
};

// Per-component placement hints for disconnected diagrams.  "outer" marks
// which face of the component faces the shared region; "host" is a corner of
// the already-placed arrangement identifying the face this component sits in.
// Both default sensibly (see resolve_faces in closure.cpp).
struct ComponentPlacement {
  std::optional<Port> outer;
  std::optional<Port> host;
};

// A linkoid or closed virtual link diagram: an abstract 4-valent graph with a
// rotation system, strand decomposition, and over/under data via the slot
// convention.  Planarity of each connected component is a validation
// invariant, not a structural one.
class PlanarDiagram {
 public:
  std::map<int, Vertex> vertices;
  std::vector<Strand> strands;
  int free_loops = 0;  // closed crossingless components
  std::map<int, ComponentPlacement> placement;  // key: smallest vertex id

  // Port pairing derived from the strand walks.  Throws InvalidDiagram if a
  // port is used twice or left unused.
  std::map<Port, Port> adjacency() const;

  // Fill Vertex::sign for classical vertices from slot data; requires every
  // classical vertex to be passed once over and once under.
  void derive_signs();

  // Structural checks; returns human-readable violations, empty when valid.
  // Checks port usage, endpoint labels {1..2n}, sign declarations, and
  // V - E + F = 2 for every connected component.
  std::vector<std::string> validate() const;

  GaussCode to_gauss() const;
  Involution strand_permutation() const;

  int classical_count() const;
  int virtual_count() const;
  int endpoint_count() const;
  bool is_closed() const;  // no open strands

  int fresh_vertex_id() const;
};

// Faces of a rotation system: orbits of p -> rotate_ccw(adjacent(p)).  The
// dart identified with port p runs from p to adjacent(p) and has its face on
// the right of the travel direction.
struct FaceSet {
  std::vector<std::vector<Port>> faces;  // each face: its darts (from-ports)
  std::map<Port, int> face_of;
};
FaceSet compute_faces(const std::map<Port, Port>& adj,
                      const std::function<int(int)>& degree_of);

// JSON round-trip.  parse throws ParseError with a locus; validation issues
// beyond well-formedness are left to validate().
PlanarDiagram parse_diagram(const std::string& json_text);
std::string serialize_diagram(const PlanarDiagram& d);

PlanarDiagram load_diagram_file(const std::string& path);

}  // namespace linkoid
