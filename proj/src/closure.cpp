#include "linkoid/closure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "linkoid/errors.hpp"

namespace linkoid {

namespace {

struct LabelEnd {
  int strand = -1;
  bool head = false;
};

// Labels of the open strands -> (strand index, entering at the head?).
std::map<int, LabelEnd> open_label_ends(const GaussCode& g) {
  std::map<int, LabelEnd> m;
  for (int i = 0; i < (int)g.strands.size(); ++i) {
    const GaussStrand& s = g.strands[i];
    if (s.closed) continue;
    m[s.foot_label] = {i, false};
    m[s.head_label] = {i, true};
  }
  return m;
}

}  // namespace

ClosedTraversal gauss_closure(const GaussCode& g, const Involution& sigma) {
  std::map<int, LabelEnd> ends = open_label_ends(g);
  if ((int)ends.size() != sigma.size())
    throw SizeMismatch("gauss_closure: " + std::to_string(ends.size()) +
                       " endpoint labels, sigma is on " +
                       std::to_string(sigma.size()));
  for (const auto& [lab, e] : ends)
    if (lab < 1 || lab > sigma.size())
      throw SizeMismatch("gauss_closure: endpoint label " + std::to_string(lab) +
                         " outside 1.." + std::to_string(sigma.size()));

  ClosedTraversal out;
  out.reversed.assign(g.strands.size(), false);
  std::vector<bool> used(g.strands.size(), false);

  // Open components: enter at the smallest unvisited label, alternate
  // strand traversals with sigma jumps.  Entering at a head runs the strand
  // backwards.
  for (const auto& [start, e0] : ends) {
    if (used[e0.strand]) continue;
    ClosedTraversal::Component comp;
    int label = start;
    do {
      LabelEnd e = ends.at(label);
      const GaussStrand& s = g.strands[e.strand];
      used[e.strand] = true;
      out.reversed[e.strand] = e.head;
      comp.strands.push_back({e.strand, e.head});
      if (e.head)
        comp.passages.insert(comp.passages.end(), s.passages.rbegin(),
                             s.passages.rend());
      else
        comp.passages.insert(comp.passages.end(), s.passages.begin(),
                             s.passages.end());
      label = sigma(e.head ? s.foot_label : s.head_label);
    } while (label != start);
    out.components.push_back(std::move(comp));
  }

  // Closed input strands pass through with their stored orientation.
  for (int i = 0; i < (int)g.strands.size(); ++i) {
    const GaussStrand& s = g.strands[i];
    if (!s.closed) continue;
    if (s.passages.empty()) {
      ++out.free_loops;
      continue;
    }
    ClosedTraversal::Component comp;
    comp.passages = s.passages;
    comp.strands.push_back({i, false});
    out.components.push_back(std::move(comp));
  }

  // A crossing's sign flips exactly when one of its two passages now runs
  // against the strand's stored direction.
  std::map<int, int> reversed_passages;
  for (int i = 0; i < (int)g.strands.size(); ++i) {
    if (!out.reversed[i]) continue;
    for (const GaussPassage& p : g.strands[i].passages)
      reversed_passages[p.crossing]++;
  }
  for (ClosedTraversal::Component& comp : out.components)
    for (GaussPassage& p : comp.passages) {
      auto it = reversed_passages.find(p.crossing);
      if (it != reversed_passages.end() && it->second == 1) p.sign = -p.sign;
    }
  return out;
}

namespace {

// Mutable arrangement during arc insertion.  Endpoints become 2-valent
// joints once their closure arc lands; joints are smoothed away when the
// closed strands are rebuilt.
struct Working {
  std::map<Port, Port> adj;
  std::map<int, VertexKind> kind;
  int next_id = 1;

  int degree(int v) const {
    switch (kind.at(v)) {
      case VertexKind::Endpoint: return 1;
      case VertexKind::Joint: return 2;
      default: return 4;
    }
  }
};

// Union-find whose class representative is always the smallest index.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

// Faces of the arrangement plus the identification of faces across
// disconnected pieces: each piece's designated outer face is merged with the
// face hosting the piece (default: the ambient face of the first piece).
struct Composite {
  FaceSet fs;
  UnionFind uf{0};

  int of(Port p) { return uf.find(fs.face_of.at(p)); }
};

Composite resolve_faces(const Working& w,
                        const std::map<int, ComponentPlacement>& placement) {
  Composite c;
  c.fs = compute_faces(w.adj, [&w](int v) { return w.degree(v); });
  c.uf = UnionFind((int)c.fs.faces.size());

  // Connected pieces, represented by their smallest vertex id.
  std::vector<int> verts;
  for (const auto& [id, k] : w.kind) verts.push_back(id);
  std::map<int, int> dense;
  for (int i = 0; i < (int)verts.size(); ++i) dense[verts[i]] = i;
  UnionFind vu((int)verts.size());
  for (const auto& [p, q] : w.adj) vu.unite(dense.at(p.v), dense.at(q.v));

  std::map<int, std::vector<int>> pieces;  // rep vertex id -> members
  for (int i = 0; i < (int)verts.size(); ++i)
    pieces[verts[vu.find(i)]].push_back(verts[i]);
  if (pieces.size() <= 1) return c;

  auto outer_face = [&](const std::vector<int>& members) {
    // Placement override wins; default corner is port 0 of the smallest
    // endpoint (falling back to the smallest vertex).
    for (int v : members) {
      auto it = placement.find(v);
      if (it != placement.end() && it->second.outer &&
          c.fs.face_of.count(*it->second.outer))
        return c.fs.face_of.at(*it->second.outer);
    }
    for (int v : members)
      if (w.kind.at(v) == VertexKind::Endpoint)
        return c.fs.face_of.at(Port{v, 0});
    return c.fs.face_of.at(Port{members.front(), 0});
  };

  int ambient = outer_face(pieces.begin()->second);
  bool first = true;
  for (const auto& [rep, members] : pieces) {
    if (first) {
      first = false;
      continue;
    }
    int host = ambient;
    for (int v : members) {
      auto it = placement.find(v);
      if (it != placement.end() && it->second.host &&
          c.fs.face_of.count(*it->second.host)) {
        Port h = *it->second.host;
        bool own = std::binary_search(members.begin(), members.end(), h.v);
        if (!own) {
          host = c.fs.face_of.at(h);
          break;
        }
      }
    }
    c.uf.unite(outer_face(members), host);
  }
  return c;
}

// One step of a routed arc: the crossed edge, seen from the side the arc
// comes from (the face right of from -> to).
struct RouteStep {
  Port from, to;
};

struct Route {
  std::vector<RouteStep> steps;
  std::vector<int> face_seq;
};

Route route_arc(Working& w, const std::map<int, ComponentPlacement>& placement,
                int ev_a, int ev_b) {
  Composite comp = resolve_faces(w, placement);
  int start = comp.of(Port{ev_a, 0});
  int goal = comp.of(Port{ev_b, 0});

  struct DualEdge {
    Port a, b;
    int fa, fb;
  };
  std::vector<DualEdge> duals;
  std::map<int, std::vector<int>> incident;  // face root -> dual indices
  for (const auto& [p, q] : w.adj) {
    if (q < p) continue;
    int fp = comp.of(p), fq = comp.of(q);
    if (fp == fq) continue;
    duals.push_back({p, q, fp, fq});
    incident[fp].push_back((int)duals.size() - 1);
    incident[fq].push_back((int)duals.size() - 1);
  }

  auto bfs = [&](int src) {
    std::map<int, int> dist;
    dist[src] = 0;
    std::vector<int> frontier{src};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int f : frontier) {
        auto it = incident.find(f);
        if (it == incident.end()) continue;
        for (int di : it->second) {
          int other = duals[di].fa == f ? duals[di].fb : duals[di].fa;
          if (dist.emplace(other, dist[f] + 1).second) next.push_back(other);
        }
      }
      frontier = std::move(next);
    }
    return dist;
  };
  std::map<int, int> dist_s = bfs(start), dist_g = bfs(goal);
  if (!dist_s.count(goal))
    throw InvalidDiagram("closure arc routing found no path between faces");
  int total = dist_s.at(goal);

  Route r;
  r.face_seq.push_back(start);
  int cur = start;
  while (cur != goal) {
    // Smallest next face on a shortest path, then the smallest edge to it.
    int best_face = -1;
    for (int di : incident[cur]) {
      const DualEdge& d = duals[di];
      int other = d.fa == cur ? d.fb : d.fa;
      auto is = dist_s.find(other);
      auto ig = dist_g.find(other);
      if (is == dist_s.end() || ig == dist_g.end()) continue;
      if (is->second != dist_s.at(cur) + 1 || is->second + ig->second != total)
        continue;
      if (best_face < 0 || other < best_face) best_face = other;
    }
    if (best_face < 0)
      throw InvalidDiagram("closure arc routing lost its path");
    const DualEdge* pick = nullptr;
    for (int di : incident[cur]) {
      const DualEdge& d = duals[di];
      int other = d.fa == cur ? d.fb : d.fa;
      if (other != best_face) continue;
      if (!pick || std::min(d.a, d.b) < std::min(pick->a, pick->b)) pick = &d;
    }
    Port from = pick->fa == cur ? pick->a : pick->b;
    r.steps.push_back({from, w.adj.at(from)});
    r.face_seq.push_back(best_face);
    cur = best_face;
  }
  return r;
}

// Splice the routed arc in, one fresh virtual crossing per crossed edge.
// Seen from the arc, the crossed strand runs left to right underneath it:
// slot 0 takes the incoming arc, slot 1 continues to the dart head, slot 2
// leaves, slot 3 attaches the dart tail.
int apply_route(Working& w, int ev_a, int ev_b, const Route& r) {
  w.kind[ev_a] = VertexKind::Joint;
  w.kind[ev_b] = VertexKind::Joint;
  Port cur{ev_a, 1};
  for (const RouteStep& st : r.steps) {
    int wid = w.next_id++;
    w.kind[wid] = VertexKind::Virtual;
    w.adj[cur] = Port{wid, 0};
    w.adj[Port{wid, 0}] = cur;
    w.adj[Port{wid, 3}] = st.from;
    w.adj[st.from] = Port{wid, 3};
    w.adj[Port{wid, 1}] = st.to;
    w.adj[st.to] = Port{wid, 1};
    cur = Port{wid, 2};
  }
  w.adj[cur] = Port{ev_b, 1};
  w.adj[Port{ev_b, 1}] = cur;
  return (int)r.steps.size();
}

struct RunResult {
  Working w;
  int virtuals = 0;
  std::string signature;
};

RunResult run_arcs(const Working& init,
                   const std::map<int, ComponentPlacement>& placement,
                   const std::map<int, int>& label_vertex,
                   const std::vector<std::pair<int, int>>& arcs) {
  RunResult r;
  r.w = init;
  std::ostringstream sig;
  for (const auto& [i, j] : arcs) {
    Route rt = route_arc(r.w, placement, label_vertex.at(i), label_vertex.at(j));
    r.virtuals += apply_route(r.w, label_vertex.at(i), label_vertex.at(j), rt);
    sig << i << ':';
    for (int f : rt.face_seq) sig << f << '.';
    sig << ';';
  }
  r.signature = sig.str();
  return r;
}

}  // namespace

ClosedVirtualDiagram virtual_closure(const PlanarDiagram& d, const Involution& sigma) {
  {
    std::vector<std::string> errs = d.validate();
    if (!errs.empty()) throw InvalidDiagram("virtual_closure: " + errs.front());
  }
  if (d.endpoint_count() != sigma.size())
    throw SizeMismatch("virtual_closure: " + std::to_string(d.endpoint_count()) +
                       " endpoints, sigma is on " + std::to_string(sigma.size()));

  std::map<int, int> label_vertex;
  for (const auto& [id, v] : d.vertices)
    if (v.kind == VertexKind::Endpoint) label_vertex[v.label] = id;

  Working init;
  init.adj = d.adjacency();
  for (const auto& [id, v] : d.vertices) init.kind[id] = v.kind;
  init.next_id = d.fresh_vertex_id();

  std::vector<std::pair<int, int>> arcs;
  for (int i = 1; i <= sigma.size(); ++i)
    if (i < sigma(i)) arcs.push_back({i, sigma(i)});

  std::optional<RunResult> best;
  if ((int)arcs.size() <= 4) {
    std::vector<std::pair<int, int>> perm = arcs;
    do {
      RunResult r = run_arcs(init, d.placement, label_vertex, perm);
      if (!best || r.virtuals < best->virtuals ||
          (r.virtuals == best->virtuals && r.signature < best->signature))
        best.emplace(std::move(r));
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    best.emplace(run_arcs(init, d.placement, label_vertex, arcs));
  }

  const Working& w = best->w;
  PlanarDiagram out;
  for (const auto& [id, k] : w.kind) {
    if (k == VertexKind::Joint) continue;
    Vertex v;
    auto src = d.vertices.find(id);
    if (src != d.vertices.end()) v = src->second;
    v.kind = k;
    v.declared_sign.reset();  // traversal may reorient; signs re-derived
    out.vertices[id] = v;
  }

  // Closed strands: walk the arrangement from each joint, smallest endpoint
  // label first, heading into the original strand.  Joints pass through and
  // disappear.
  std::set<int> seen_joints;
  out.free_loops = d.free_loops;
  for (const auto& [lab, ev] : label_vertex) {
    if (seen_joints.count(ev)) continue;
    seen_joints.insert(ev);
    Strand s;
    s.closed = true;
    Port cur = w.adj.at(Port{ev, 0});
    while (cur.v != ev) {
      if (w.kind.at(cur.v) == VertexKind::Joint) {
        seen_joints.insert(cur.v);
        cur = w.adj.at(Port{cur.v, 1 - cur.slot});
      } else {
        s.passages.push_back({cur.v, cur.slot});
        cur = w.adj.at(Port{cur.v, (cur.slot + 2) % 4});
      }
    }
    if (s.passages.empty())
      ++out.free_loops;
    else
      out.strands.push_back(std::move(s));
  }

  // Strands that were already closed pass through unchanged, except that
  // closure arcs may have crossed them: rewalk their circulations so any
  // fresh virtual crossings are picked up.
  for (const Strand& s0 : d.strands) {
    if (!s0.closed) continue;
    Strand s;
    s.closed = true;
    Port start{s0.passages.front().v, s0.passages.front().slot};
    Port cur = start;
    do {
      s.passages.push_back({cur.v, cur.slot});
      cur = w.adj.at(Port{cur.v, (cur.slot + 2) % 4});
    } while (cur != start);
    out.strands.push_back(std::move(s));
  }

  out.derive_signs();
  {
    std::vector<std::string> errs = out.validate();
    if (!errs.empty())
      throw InvalidDiagram("virtual_closure built an invalid diagram: " +
                           errs.front());
  }

  ClosedVirtualDiagram res;
  res.diagram = std::move(out);
  res.source = d;
  res.sigma = sigma;
  res.virtual_count = res.diagram.virtual_count();
  res.component_count =
      (int)res.diagram.strands.size() + res.diagram.free_loops;
  return res;
}

ClosedVirtualDiagram strand_closure(const PlanarDiagram& d) {
  return virtual_closure(d, d.strand_permutation());
}

namespace {

// Remove the given vertices and every passage through them.
PlanarDiagram drop_vertices(const PlanarDiagram& d, const std::set<int>& kill) {
  PlanarDiagram out;
  for (const auto& [id, v] : d.vertices)
    if (!kill.count(id)) out.vertices[id] = v;
  out.free_loops = d.free_loops;
  for (const Strand& s : d.strands) {
    Strand t;
    t.closed = s.closed;
    t.foot = s.foot;
    t.head = s.head;
    for (const Passage& p : s.passages)
      if (!kill.count(p.v)) t.passages.push_back(p);
    if (t.closed && t.passages.empty())
      ++out.free_loops;
    else
      out.strands.push_back(std::move(t));
  }
  for (const auto& [rep, pl] : d.placement) {
    if (kill.count(rep)) continue;
    ComponentPlacement kept = pl;
    if (kept.outer && kill.count(kept.outer->v)) kept.outer.reset();
    if (kept.host && kill.count(kept.host->v)) kept.host.reset();
    out.placement[rep] = kept;
  }
  out.derive_signs();
  return out;
}

// V1 (virtual kink) and V2 (virtual bigon) simplification to a fixpoint.
// Both patterns are recognized as small faces, which keeps the removals
// planar by construction.
PlanarDiagram simplify_virtual(PlanarDiagram diag) {
  for (;;) {
    std::map<Port, Port> adj = diag.adjacency();
    FaceSet fs = compute_faces(adj, [&diag](int v) {
      return diag.vertices.at(v).kind == VertexKind::Endpoint ? 1 : 4;
    });
    std::set<int> kill;
    for (const std::vector<Port>& face : fs.faces) {
      if (face.size() == 1) {
        Port p = face[0];
        if (diag.vertices.at(p.v).kind == VertexKind::Virtual) {
          kill = {p.v};
          break;
        }
      } else if (face.size() == 2) {
        Port p = face[0], q = face[1];
        if (p.v == q.v) continue;
        if (diag.vertices.at(p.v).kind != VertexKind::Virtual) continue;
        if (diag.vertices.at(q.v).kind != VertexKind::Virtual) continue;
        Port ap = adj.at(p), aq = adj.at(q);
        if (ap.v != q.v || aq.v != p.v) continue;
        if (ap == q && aq == p) continue;  // one edge seen from both sides
        kill = {p.v, q.v};
        break;
      }
    }
    if (kill.empty()) return diag;
    diag = drop_vertices(diag, kill);
  }
}

}  // namespace

ClosedVirtualDiagram reduce_virtual(const ClosedVirtualDiagram& c) {
  ClosedVirtualDiagram base = c;
  if (!c.source.strands.empty()) {
    ClosedVirtualDiagram rerouted = virtual_closure(c.source, c.sigma);
    if (rerouted.virtual_count <= c.virtual_count) base = std::move(rerouted);
  }
  ClosedVirtualDiagram out;
  out.diagram = simplify_virtual(base.diagram);
  {
    std::vector<std::string> errs = out.diagram.validate();
    if (!errs.empty())
      throw InvalidDiagram("reduce_virtual broke the diagram: " + errs.front());
  }
  out.source = c.source;
  out.sigma = c.sigma;
  out.virtual_count = out.diagram.virtual_count();
  out.component_count =
      (int)out.diagram.strands.size() + out.diagram.free_loops;
  return out;
}

bool is_link_type(const PlanarDiagram& d, const Involution& sigma) {
  return reduce_virtual(virtual_closure(d, sigma)).virtual_count == 0;
}

std::pair<PlanarDiagram, Involution> excise_virtual(const PlanarDiagram& closed) {
  if (!closed.is_closed())
    throw InvalidDiagram("excise_virtual: diagram already has endpoints");

  PlanarDiagram work = closed;
  std::vector<int> virtuals;
  for (const auto& [id, v] : work.vertices)
    if (v.kind == VertexKind::Virtual) virtuals.push_back(id);

  int next_vertex = work.fresh_vertex_id();
  std::vector<std::pair<int, int>> pairs;
  int idx = 0;
  for (int vid : virtuals) {
    ++idx;
    // Cut the covering strand (the one through slots 1 and 3) right at the
    // crossing; the removed sliver passes nothing else, so it is always
    // classical-free.
    int si = -1, pi = -1;
    for (int s = 0; s < (int)work.strands.size() && si < 0; ++s)
      for (int p = 0; p < (int)work.strands[s].passages.size(); ++p)
        if (work.strands[s].passages[p].v == vid &&
            work.strands[s].passages[p].slot % 2 == 1) {
          si = s;
          pi = p;
          break;
        }
    if (si < 0)
      throw NoExcisableArc("virtual crossing " + std::to_string(vid) +
                           " has no covering arc");

    int head_label = 2 * idx - 1, foot_label = 2 * idx;
    int head_v = next_vertex++, foot_v = next_vertex++;
    Vertex he;
    he.kind = VertexKind::Endpoint;
    he.label = head_label;
    Vertex fe;
    fe.kind = VertexKind::Endpoint;
    fe.label = foot_label;
    work.vertices[head_v] = he;
    work.vertices[foot_v] = fe;

    Strand s = work.strands[si];
    if (s.closed) {
      Strand open;
      open.foot = foot_v;
      open.head = head_v;
      for (int k = pi + 1; k < (int)s.passages.size(); ++k)
        open.passages.push_back(s.passages[k]);
      for (int k = 0; k < pi; ++k) open.passages.push_back(s.passages[k]);
      work.strands[si] = std::move(open);
    } else {
      Strand before, after;
      before.foot = s.foot;
      before.head = head_v;
      for (int k = 0; k < pi; ++k) before.passages.push_back(s.passages[k]);
      after.foot = foot_v;
      after.head = s.head;
      for (int k = pi + 1; k < (int)s.passages.size(); ++k)
        after.passages.push_back(s.passages[k]);
      work.strands[si] = std::move(before);
      work.strands.push_back(std::move(after));
    }

    // The other strand now runs straight through where vid used to be.
    for (Strand& t : work.strands) {
      std::vector<Passage>& ps = t.passages;
      ps.erase(std::remove_if(ps.begin(), ps.end(),
                              [vid](const Passage& p) { return p.v == vid; }),
               ps.end());
    }
    work.vertices.erase(vid);

    std::vector<Strand> keep;
    for (Strand& t : work.strands) {
      if (t.closed && t.passages.empty())
        ++work.free_loops;
      else
        keep.push_back(std::move(t));
    }
    work.strands = std::move(keep);

    pairs.push_back({head_label, foot_label});
  }

  work.placement.clear();
  work.derive_signs();
  {
    std::vector<std::string> errs = work.validate();
    if (!errs.empty())
      throw InvalidDiagram("excise_virtual broke the diagram: " + errs.front());
  }
  return {std::move(work), Involution::from_pairs((int)virtuals.size(), pairs)};
}

std::string canonical_closed_code(const PlanarDiagram& closed) {
  if (!closed.is_closed())
    throw InvalidDiagram("canonical_closed_code: diagram has endpoints");
  GaussCode g = closed.to_gauss();
  std::vector<std::vector<GaussPassage>> comps;
  for (const GaussStrand& s : g.strands)
    if (!s.passages.empty()) comps.push_back(s.passages);
  int k = (int)comps.size();
  if (k == 0) return "";

  long long combos = 1;
  for (int i = 1; i <= k; ++i) combos *= i;
  combos <<= k;
  for (const auto& c : comps) combos *= (long long)c.size();
  if (combos > 2000000)
    throw TooLarge("canonical_closed_code: too many components/crossings");

  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::string best;
  do {
    for (int mask = 0; mask < (1 << k); ++mask) {
      // Signs relative to the chosen directions.
      std::map<int, int> reversed_passages;
      for (int c = 0; c < k; ++c) {
        if (!(mask >> c & 1)) continue;
        for (const GaussPassage& p : comps[c]) reversed_passages[p.crossing]++;
      }
      std::vector<std::vector<GaussPassage>> seq(k);
      for (int c = 0; c < k; ++c) {
        seq[c] = comps[c];
        if (mask >> c & 1) std::reverse(seq[c].begin(), seq[c].end());
        for (GaussPassage& p : seq[c]) {
          auto it = reversed_passages.find(p.crossing);
          if (it != reversed_passages.end() && it->second == 1)
            p.sign = -p.sign;
        }
      }
      // Odometer over the cyclic rotations of each component.
      std::vector<int> rot(k, 0);
      for (;;) {
        std::map<int, int> alias;
        std::string text;
        for (int oi = 0; oi < k; ++oi) {
          int c = order[oi];
          int len = (int)seq[c].size();
          for (int t = 0; t < len; ++t) {
            const GaussPassage& p = seq[c][(rot[c] + t) % len];
            auto [it, fresh] = alias.emplace(p.crossing, (int)alias.size() + 1);
            (void)fresh;
            text += p.over ? 'O' : 'U';
            text += std::to_string(it->second);
            text += p.sign > 0 ? '+' : '-';
          }
          text += '|';
        }
        if (best.empty() || text < best) best = text;
        int c = 0;
        while (c < k) {
          rot[c]++;
          if (rot[c] < (int)seq[c].size()) break;
          rot[c] = 0;
          ++c;
        }
        if (c == k) break;
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace linkoid
