#include "support.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "linkoid/errors.hpp"

namespace support {

using namespace linkoid;

std::string fixture_path(const std::string& name) {
  std::string file = name.find('.') == std::string::npos ? name + ".json" : name;
  return std::string(LINKOID_FIXTURE_DIR) + "/" + file;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PlanarDiagram load_fixture(const std::string& name) {
  return load_diagram_file(fixture_path(name));
}

PolyCurveSet load_curve_fixture(const std::string& name) {
  return load_curves_file(fixture_path(name));
}

const std::vector<std::string>& example_fixture_names() {
  static const std::vector<std::string> names = {
      "fix1.json", "fix2.json", "fix3.json",
      "fix4.json", "fix5.json", "fix6.json"};
  return names;
}

int run_cli(const std::string& args, std::string* out,
            const std::string& env_prefix) {
  std::string cmd = env_prefix + LINKOID_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  std::string buf;
  char chunk[4096];
  size_t got;
  while ((got = fread(chunk, 1, sizeof chunk, p)) > 0) buf.append(chunk, got);
  int rc = pclose(p);
  if (out) *out = buf;
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

int orbit_count(const Involution& tau, const Involution& sigma) {
  int m = tau.size();
  if (sigma.size() != m) throw std::runtime_error("orbit_count size mismatch");
  std::vector<bool> seen(m + 1, false);
  int orbits = 0;
  for (int start = 1; start <= m; ++start) {
    if (seen[start]) continue;
    ++orbits;
    std::vector<int> stack = {start};
    seen[start] = true;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : {tau(x), sigma(x)})
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
    }
  }
  return orbits;
}

namespace {

// Adjacency rebuilt directly from the strand walks; the library's
// PlanarDiagram::adjacency is deliberately not used here.
std::map<Port, Port> walk_adjacency(const PlanarDiagram& d) {
  std::map<Port, Port> adj;
  auto connect = [&](Port a, Port b) {
    adj[a] = b;
    adj[b] = a;
  };
  auto entry = [](const Passage& p) { return Port{p.v, p.slot}; };
  auto exit = [](const Passage& p) { return Port{p.v, (p.slot + 2) % 4}; };
  for (const Strand& s : d.strands) {
    if (s.closed) {
      int k = (int)s.passages.size();
      for (int j = 0; j < k; ++j)
        connect(exit(s.passages[(j + k - 1) % k]), entry(s.passages[j]));
    } else {
      Port prev{s.foot, 0};
      for (const Passage& p : s.passages) {
        connect(prev, entry(p));
        prev = exit(p);
      }
      connect(prev, Port{s.head, 0});
    }
  }
  return adj;
}

int vertex_degree(const PlanarDiagram& d, int v) {
  switch (d.vertices.at(v).kind) {
    case VertexKind::Endpoint: return 1;
    case VertexKind::Joint: return 2;
    default: return 4;
  }
}

}  // namespace

LaurentPoly routed_bracket(const PlanarDiagram& closed) {
  std::vector<int> cls;
  std::vector<int> virt;
  for (const auto& [id, v] : closed.vertices) {
    if (v.kind == VertexKind::Classical) cls.push_back(id);
    if (v.kind == VertexKind::Virtual) virt.push_back(id);
    if (v.kind == VertexKind::Endpoint)
      throw std::runtime_error("routed_bracket needs a closed diagram");
  }
  if (cls.size() > 20) throw std::runtime_error("routed_bracket: too many crossings");
  std::map<Port, Port> adj = walk_adjacency(closed);
  LaurentPoly d = bracket_loop_value();
  LaurentPoly out;
  for (unsigned long mask = 0; mask < (1ul << cls.size()); ++mask) {
    std::map<Port, Port> sm;
    auto pair = [&](int v, int a, int b) {
      sm[Port{v, a}] = Port{v, b};
      sm[Port{v, b}] = Port{v, a};
    };
    int alpha = 0;
    for (size_t i = 0; i < cls.size(); ++i) {
      if (mask >> i & 1) {
        pair(cls[i], 0, 1), pair(cls[i], 2, 3);  // B
        --alpha;
      } else {
        pair(cls[i], 0, 3), pair(cls[i], 1, 2);  // A
        ++alpha;
      }
    }
    for (int v : virt) pair(v, 0, 2), pair(v, 1, 3);
    std::set<Port> seen;
    int loops = closed.free_loops;
    for (const auto& [p, q0] : adj) {
      if (seen.count(p)) continue;
      ++loops;
      Port cur = p;
      do {
        seen.insert(cur);
        Port q = adj.at(cur);
        seen.insert(q);
        cur = sm.at(q);
      } while (cur != p);
    }
    out += LaurentPoly::monomial(alpha) * d.pow(loops - 1);
  }
  return out;
}

int routed_writhe(const PlanarDiagram& closed) {
  std::map<int, std::pair<int, int>> ent;  // id -> (even entry, odd entry)
  for (const Strand& s : closed.strands)
    for (const Passage& p : s.passages) {
      if (closed.vertices.at(p.v).kind != VertexKind::Classical) continue;
      auto& e = ent.try_emplace(p.v, -1, -1).first->second;
      (p.slot % 2 == 0 ? e.first : e.second) = p.slot;
    }
  int w = 0;
  for (const auto& [id, e] : ent) {
    if (e.first < 0 || e.second < 0)
      throw std::runtime_error("routed_writhe: crossing not passed over+under");
    w += (e.second == (e.first + 1) % 4) ? 1 : -1;
  }
  return w;
}

LaurentPoly routed_jones(const PlanarDiagram& closed) {
  return writhe_normalization(routed_writhe(closed)) * routed_bracket(closed);
}

FaceCheck face_census(const PlanarDiagram& d) {
  FaceCheck fc;
  std::map<Port, Port> adj = walk_adjacency(d);
  fc.vertices = (int)d.vertices.size();
  fc.edges = (int)adj.size() / 2;

  std::map<int, int> parent;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& [id, v] : d.vertices) parent[id] = id;
  for (const auto& [p, q] : adj) {
    int a = find(p.v), b = find(q.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  auto rotate = [&](Port p) {
    int deg = vertex_degree(d, p.v);
    return Port{p.v, (p.slot + 1) % deg};
  };
  std::map<int, int> piece_v, piece_e2, piece_f;
  for (const auto& [id, v] : d.vertices) ++piece_v[find(id)];
  for (const auto& [p, q] : adj) ++piece_e2[find(p.v)];
  std::set<Port> seen;
  for (const auto& [p0, q0] : adj) {
    if (seen.count(p0)) continue;
    ++fc.faces;
    ++piece_f[find(p0.v)];
    Port cur = p0;
    do {
      seen.insert(cur);
      cur = rotate(adj.at(cur));
    } while (cur != p0);
  }
  fc.pieces = (int)piece_v.size();
  fc.euler_ok = true;
  for (const auto& [root, nv] : piece_v) {
    int chi = nv - piece_e2[root] / 2 + piece_f[root];
    if (chi != 2) fc.euler_ok = false;
  }
  return fc;
}

Involution random_fpf_involution(int n, std::mt19937_64& rng) {
  std::vector<int> labels(2 * n);
  for (int i = 0; i < 2 * n; ++i) labels[i] = i + 1;
  std::shuffle(labels.begin(), labels.end(), rng);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) pairs.emplace_back(labels[2 * i], labels[2 * i + 1]);
  return Involution::from_pairs(n, pairs);
}

GaussCode random_gauss_linkoid(int strands, int crossings, std::mt19937_64& rng) {
  std::vector<GaussPassage> tokens;
  for (int c = 1; c <= crossings; ++c) {
    int sign = (rng() & 1) ? 1 : -1;
    tokens.push_back({c, true, sign});
    tokens.push_back({c, false, sign});
  }
  std::shuffle(tokens.begin(), tokens.end(), rng);
  // Random split into `strands` (possibly empty) runs.
  std::vector<int> cuts;
  for (int i = 0; i < strands - 1; ++i)
    cuts.push_back((int)(rng() % (tokens.size() + 1)));
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back((int)tokens.size());
  GaussCode g;
  int at = 0;
  for (int i = 0; i < strands; ++i) {
    GaussStrand s;
    s.closed = false;
    s.foot_label = 2 * i + 1;
    s.head_label = 2 * i + 2;
    for (; at < cuts[i]; ++at) s.passages.push_back(tokens[at]);
    g.strands.push_back(std::move(s));
  }
  return g;
}

namespace {

struct EdgeRef {
  int strand = -1;
  int pos = 0;  // insertion index into passages
  Port from, to;
};

std::vector<EdgeRef> edge_catalog(const PlanarDiagram& d) {
  std::vector<EdgeRef> out;
  auto entry = [](const Passage& p) { return Port{p.v, p.slot}; };
  auto exit = [](const Passage& p) { return Port{p.v, (p.slot + 2) % 4}; };
  for (int si = 0; si < (int)d.strands.size(); ++si) {
    const Strand& s = d.strands[si];
    if (s.closed) {
      int k = (int)s.passages.size();
      for (int j = 0; j < k; ++j)
        out.push_back({si, j, exit(s.passages[(j + k - 1) % k]), entry(s.passages[j])});
    } else {
      Port prev{s.foot, 0};
      int k = (int)s.passages.size();
      for (int j = 0; j <= k; ++j) {
        Port to = (j == k) ? Port{s.head, 0} : entry(s.passages[j]);
        out.push_back({si, j, prev, to});
        if (j < k) prev = exit(s.passages[j]);
      }
    }
  }
  return out;
}

struct Insertion {
  int strand, pos;
  std::vector<Passage> ps;
};

PlanarDiagram with_insertions(const PlanarDiagram& d, std::vector<Insertion> ops) {
  PlanarDiagram out = d;
  std::sort(ops.begin(), ops.end(), [](const Insertion& a, const Insertion& b) {
    if (a.strand != b.strand) return a.strand < b.strand;
    return a.pos > b.pos;  // same strand: back to front
  });
  for (const Insertion& op : ops) {
    auto& ps = out.strands.at(op.strand).passages;
    ps.insert(ps.begin() + op.pos, op.ps.begin(), op.ps.end());
  }
  return out;
}

bool valid_quiet(PlanarDiagram& d) {
  try {
    d.derive_signs();
  } catch (const Error&) {
    return false;
  }
  return d.validate().empty();
}

// Face of each dart, and the dart list per face, over walk adjacency.
struct DartFaces {
  std::map<Port, Port> adj;
  std::vector<std::vector<Port>> faces;
  std::map<Port, int> face_of;
};

DartFaces dart_faces(const PlanarDiagram& d) {
  DartFaces df;
  df.adj = walk_adjacency(d);
  auto rotate = [&](Port p) {
    int deg = vertex_degree(d, p.v);
    return Port{p.v, (p.slot + 1) % deg};
  };
  for (const auto& [p0, q0] : df.adj) {
    if (df.face_of.count(p0)) continue;
    int id = (int)df.faces.size();
    std::vector<Port> cyc;
    Port cur = p0;
    do {
      df.face_of[cur] = id;
      cyc.push_back(cur);
      cur = rotate(df.adj.at(cur));
    } while (cur != p0);
    df.faces.push_back(std::move(cyc));
  }
  return df;
}

// True when some face is bounded by exactly the darts at the given vertices
// (one dart per vertex, vertices distinct).
bool has_small_face(const PlanarDiagram& d, std::vector<int> want) {
  std::sort(want.begin(), want.end());
  DartFaces df = dart_faces(d);
  for (const auto& f : df.faces) {
    if (f.size() != want.size()) continue;
    std::vector<int> got;
    for (const Port& p : f) got.push_back(p.v);
    std::sort(got.begin(), got.end());
    if (got == want) return true;
  }
  return false;
}

int edge_index_of(const std::vector<EdgeRef>& edges, Port dart) {
  for (int i = 0; i < (int)edges.size(); ++i)
    if (edges[i].from == dart || edges[i].to == dart) return i;
  return -1;
}

}  // namespace

int edge_count(const PlanarDiagram& d) { return (int)edge_catalog(d).size(); }

PlanarDiagram r1_kink(const PlanarDiagram& d, int edge_index, int sign) {
  std::vector<EdgeRef> edges = edge_catalog(d);
  const EdgeRef& e = edges.at(edge_index);
  int uslot = sign > 0 ? 1 : 3;
  for (bool under_first : {false, true}) {
    PlanarDiagram out = d;
    int v = out.fresh_vertex_id();
    out.vertices[v] = Vertex{VertexKind::Classical, 0, std::nullopt, 0};
    std::vector<Passage> ins;
    if (under_first)
      ins = {{v, uslot}, {v, 0}};
    else
      ins = {{v, 0}, {v, uslot}};
    out = with_insertions(out, {{e.strand, e.pos, ins}});
    if (!valid_quiet(out)) continue;
    if (out.vertices.at(v).sign != sign) continue;
    return out;
  }
  throw std::runtime_error("r1_kink: no planar curl at this edge");
}

namespace {

std::optional<PlanarDiagram> try_poke(const PlanarDiagram& d, const EdgeRef& over_e,
                                      const EdgeRef& under_e) {
  int v1 = d.fresh_vertex_id();
  int v2 = v1 + 1;
  for (int s1 : {1, 3})
    for (int s2 : {1, 3})
      for (bool swap_under : {false, true}) {
        PlanarDiagram out = d;
        out.vertices[v1] = Vertex{VertexKind::Classical, 0, std::nullopt, 0};
        out.vertices[v2] = Vertex{VertexKind::Classical, 0, std::nullopt, 0};
        std::vector<Passage> under =
            swap_under ? std::vector<Passage>{{v2, s2}, {v1, s1}}
                       : std::vector<Passage>{{v1, s1}, {v2, s2}};
        out = with_insertions(out, {{over_e.strand, over_e.pos, {{v1, 0}, {v2, 0}}},
                                    {under_e.strand, under_e.pos, under}});
        if (!valid_quiet(out)) continue;
        if (out.vertices.at(v1).sign + out.vertices.at(v2).sign != 0) continue;
        if (!has_small_face(out, {v1, v2})) continue;
        return out;
      }
  return std::nullopt;
}

}  // namespace

PlanarDiagram r2_poke(const PlanarDiagram& d) {
  std::vector<EdgeRef> edges = edge_catalog(d);
  DartFaces df = dart_faces(d);
  for (const auto& face : df.faces)
    for (const Port& da : face)
      for (const Port& db : face) {
        int ea = edge_index_of(edges, da), eb = edge_index_of(edges, db);
        if (ea < 0 || eb < 0 || ea == eb) continue;
        if (std::optional<PlanarDiagram> out = try_poke(d, edges[ea], edges[eb]))
          return *out;
      }
  throw std::runtime_error("r2_poke: no legal site");
}

namespace {

// Swap two adjacent passages (at the given vertices) within one strand.
bool swap_adjacent_in_strand(PlanarDiagram& d, int si, int va, int vb) {
  Strand& s = d.strands.at(si);
  int k = (int)s.passages.size();
  for (int j = 0; j < k; ++j) {
    int jn = (j + 1) % k;
    if (!s.closed && jn == 0) continue;
    int x = s.passages[j].v, y = s.passages[jn].v;
    if ((x == va && y == vb) || (x == vb && y == va)) {
      std::swap(s.passages[j], s.passages[jn]);
      return true;
    }
  }
  return false;
}

}  // namespace

namespace {

std::optional<R3Result> try_r3(const PlanarDiagram& d) {
  std::vector<EdgeRef> edges = edge_catalog(d);
  DartFaces df = dart_faces(d);
  for (const auto& face : df.faces) {
    for (const Port& dB : face) {
      Port zport = df.adj.at(dB);
      if (d.vertices.at(zport.v).kind != VertexKind::Classical) continue;
      int z = zport.v;
      // The finger pokes from eA over edge eB near its end z, then over the
      // continuation of the other line through z (the edge leaving z one
      // rotation step clockwise of eB's end), and retreats.
      Port dCopp{z, (zport.slot + 3) % 4};
      int eb = edge_index_of(edges, dB);
      int ec = edge_index_of(edges, dCopp);
      if (eb < 0 || ec < 0 || eb == ec) continue;
      for (const Port& dA : face) {
        int ea = edge_index_of(edges, dA);
        if (ea < 0 || ea == eb || ea == ec) continue;
        if (edges[ea].from.v == z || edges[ea].to.v == z) continue;
        int v1 = d.fresh_vertex_id(), v2 = v1 + 1, v3 = v1 + 2, v4 = v1 + 3;
        for (int smask = 0; smask < 16; ++smask)
          for (int omask = 0; omask < 4; ++omask) {
            int sb1 = (smask & 1) ? 3 : 1, sb4 = (smask & 2) ? 3 : 1;
            int sc2 = (smask & 4) ? 3 : 1, sc3 = (smask & 8) ? 3 : 1;
            bool bswap = omask & 1, cswap = omask & 2;
            PlanarDiagram out = d;
            for (int v : {v1, v2, v3, v4})
              out.vertices[v] = Vertex{VertexKind::Classical, 0, std::nullopt, 0};
            std::vector<Passage> under_b =
                bswap ? std::vector<Passage>{{v4, sb4}, {v1, sb1}}
                      : std::vector<Passage>{{v1, sb1}, {v4, sb4}};
            std::vector<Passage> under_c =
                cswap ? std::vector<Passage>{{v3, sc3}, {v2, sc2}}
                      : std::vector<Passage>{{v2, sc2}, {v3, sc3}};
            out = with_insertions(
                out, {{edges[ea].strand, edges[ea].pos,
                       {{v1, 0}, {v2, 0}, {v3, 0}, {v4, 0}}},
                      {edges[eb].strand, edges[eb].pos, under_b},
                      {edges[ec].strand, edges[ec].pos, under_c}});
            if (!valid_quiet(out)) continue;
            if (out.vertices.at(v1).sign + out.vertices.at(v4).sign != 0) continue;
            if (out.vertices.at(v2).sign + out.vertices.at(v3).sign != 0) continue;
            if (!has_small_face(out, {v1, z, v2})) continue;
            if (!has_small_face(out, {v2, v3})) continue;

            // Slide the finger segment v1..v2 across the crossing z.  Each of
            // the three strands through the triangle sees its two triangle
            // crossings swap order; slots are untouched, so every crossing
            // keeps its sign.
            PlanarDiagram slid = out;
            if (!swap_adjacent_in_strand(slid, edges[ea].strand, v1, v2)) continue;
            if (!swap_adjacent_in_strand(slid, edges[eb].strand, v1, z)) continue;
            if (!swap_adjacent_in_strand(slid, edges[ec].strand, v2, z)) continue;
            if (!valid_quiet(slid)) continue;
            bool signs_ok = true;
            for (const auto& [id, v] : out.vertices)
              if (v.kind == VertexKind::Classical &&
                  slid.vertices.at(id).sign != v.sign)
                signs_ok = false;
            if (!signs_ok) continue;
            return R3Result{out, slid};
          }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

R3Result r3_variant(const PlanarDiagram& d) {
  // Small diagrams may lack a face with a spare edge to poke across; an R2
  // poke densifies the arrangement without changing any invariant.
  PlanarDiagram base = d;
  for (int attempt = 0; attempt < 3; ++attempt) {
    if (std::optional<R3Result> out = try_r3(base)) return *out;
    base = r2_poke(base);
  }
  throw std::runtime_error("r3_variant: no legal site");
}

}  // namespace support
