#include "linkoid/diagram.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "linkoid/errors.hpp"

namespace linkoid {

using nlohmann::json;

namespace {

int degree_for(VertexKind k) {
  switch (k) {
    case VertexKind::Endpoint: return 1;
    case VertexKind::Joint: return 2;
    default: return 4;
  }
}

std::string port_str(Port p) {
  return "(" + std::to_string(p.v) + "," + std::to_string(p.slot) + ")";
}

}  // namespace

Involution GaussCode::strand_permutation() const {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& s : strands) {
    if (s.closed)
      throw ClosedComponent("strand permutation requires open strands");
    pairs.emplace_back(s.foot_label, s.head_label);
  }
  int n = (int)pairs.size();
  return Involution::from_pairs(n, pairs);
}

int GaussCode::classical_count() const {
  std::set<int> ids;
  for (const auto& s : strands)
    for (const auto& p : s.passages) ids.insert(p.crossing);
  return (int)ids.size();
}

int GaussCode::writhe() const {
  std::map<int, int> sign;
  for (const auto& s : strands)
    for (const auto& p : s.passages) sign[p.crossing] = p.sign;
  int w = 0;
  for (const auto& [id, sg] : sign) w += sg;
  return w;
}

std::map<Port, Port> PlanarDiagram::adjacency() const {
  std::map<Port, Port> adj;
  auto connect = [&](Port a, Port b) {
    if (adj.count(a) || adj.count(b))
      throw InvalidDiagram("port used twice: " + port_str(adj.count(a) ? a : b));
    adj[a] = b;
    adj[b] = a;
  };
  for (const auto& s : strands) {
    if (s.closed) {
      if (s.passages.empty()) throw InvalidDiagram("closed strand without passages");
      Port prev{s.passages.back().v, (s.passages.back().slot + 2) % 4};
      for (const auto& p : s.passages) {
        connect(prev, Port{p.v, p.slot});
        prev = Port{p.v, (p.slot + 2) % 4};
      }
    } else {
      Port prev{s.foot, 0};
      for (const auto& p : s.passages) {
        connect(prev, Port{p.v, p.slot});
        prev = Port{p.v, (p.slot + 2) % 4};
      }
      connect(prev, Port{s.head, 0});
    }
  }
  // every port of every vertex must be paired
  for (const auto& [id, v] : vertices) {
    for (int s = 0; s < degree_for(v.kind); ++s) {
      if (!adj.count(Port{id, s}))
        throw InvalidDiagram("unused port " + port_str(Port{id, s}));
    }
  }
  return adj;
}

void PlanarDiagram::derive_signs() {
  std::map<int, std::pair<int, int>> entries;  // vertex -> (over entry, under entry)
  for (const auto& s : strands) {
    for (const auto& p : s.passages) {
      auto it = vertices.find(p.v);
      if (it == vertices.end() || it->second.kind != VertexKind::Classical) continue;
      auto& e = entries.try_emplace(p.v, -1, -1).first->second;
      (p.slot % 2 == 0 ? e.first : e.second) = p.slot;
    }
  }
  for (auto& [id, v] : vertices) {
    if (v.kind != VertexKind::Classical) continue;
    auto it = entries.find(id);
    if (it == entries.end() || it->second.first < 0 || it->second.second < 0)
      throw InvalidDiagram("classical vertex " + std::to_string(id) +
                           " lacks an over or under passage");
    auto [over_in, under_in] = it->second;
    v.sign = (under_in == (over_in + 1) % 4) ? 1 : -1;
  }
}

GaussCode PlanarDiagram::to_gauss() const {
  GaussCode g;
  for (const auto& s : strands) {
    GaussStrand gs;
    gs.closed = s.closed;
    if (!s.closed) {
      gs.foot_label = vertices.at(s.foot).label;
      gs.head_label = vertices.at(s.head).label;
    }
    for (const auto& p : s.passages) {
      const Vertex& v = vertices.at(p.v);
      if (v.kind != VertexKind::Classical) continue;
      gs.passages.push_back(GaussPassage{p.v, p.slot % 2 == 0, v.sign});
    }
    g.strands.push_back(std::move(gs));
  }
  for (int i = 0; i < free_loops; ++i) g.strands.push_back(GaussStrand{true, 0, 0, {}});
  return g;
}

Involution PlanarDiagram::strand_permutation() const {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& s : strands) {
    if (s.closed)
      throw ClosedComponent("strand permutation requires open strands");
    pairs.emplace_back(vertices.at(s.foot).label, vertices.at(s.head).label);
  }
  return Involution::from_pairs((int)pairs.size(), pairs);
}

int PlanarDiagram::classical_count() const {
  int n = 0;
  for (const auto& [id, v] : vertices)
    if (v.kind == VertexKind::Classical) ++n;
  return n;
}

int PlanarDiagram::virtual_count() const {
  int n = 0;
  for (const auto& [id, v] : vertices)
    if (v.kind == VertexKind::Virtual) ++n;
  return n;
}

int PlanarDiagram::endpoint_count() const {
  int n = 0;
  for (const auto& [id, v] : vertices)
    if (v.kind == VertexKind::Endpoint) ++n;
  return n;
}

bool PlanarDiagram::is_closed() const {
  for (const auto& s : strands)
    if (!s.closed) return false;
  return true;
}

int PlanarDiagram::fresh_vertex_id() const {
  return vertices.empty() ? 1 : vertices.rbegin()->first + 1;
}

FaceSet compute_faces(const std::map<Port, Port>& adj,
                      const std::function<int(int)>& degree_of) {
  FaceSet fs;
  std::set<Port> seen;
  for (const auto& [start, unused] : adj) {
    if (seen.count(start)) continue;
    std::vector<Port> face;
    Port p = start;
    do {
      face.push_back(p);
      seen.insert(p);
      Port q = adj.at(p);
      int deg = degree_of(q.v);
      p = Port{q.v, (q.slot + 1) % deg};
    } while (p != start);
    int idx = (int)fs.faces.size();
    for (const Port& d : face) fs.face_of[d] = idx;
    fs.faces.push_back(std::move(face));
  }
  return fs;
}

std::vector<std::string> PlanarDiagram::validate() const {
  std::vector<std::string> out;
  auto complain = [&](std::string msg) { out.push_back(std::move(msg)); };

  // strand structure
  for (size_t si = 0; si < strands.size(); ++si) {
    const Strand& s = strands[si];
    std::string at = "strand " + std::to_string(si);
    if (s.closed) {
      if (s.passages.empty()) complain(at + ": closed strand with empty path");
    } else {
      for (int ep : {s.foot, s.head}) {
        auto it = vertices.find(ep);
        if (it == vertices.end())
          complain(at + ": missing endpoint vertex " + std::to_string(ep));
        else if (it->second.kind != VertexKind::Endpoint)
          complain(at + ": strand end " + std::to_string(ep) + " is not an endpoint");
      }
      if (s.foot == s.head) complain(at + ": foot and head are the same vertex");
    }
    for (const auto& p : s.passages) {
      auto it = vertices.find(p.v);
      if (it == vertices.end()) {
        complain(at + ": passage through missing vertex " + std::to_string(p.v));
        continue;
      }
      VertexKind k = it->second.kind;
      if (k != VertexKind::Classical && k != VertexKind::Virtual)
        complain(at + ": passage through non-crossing vertex " + std::to_string(p.v));
      if (p.slot < 0 || p.slot > 3) complain(at + ": slot out of range");
    }
  }
  for (const auto& [id, v] : vertices)
    if (v.kind == VertexKind::Joint)
      complain("vertex " + std::to_string(id) + ": internal joint kind in a finished diagram");

  // endpoint labels must form {1..2n}, each endpoint used exactly once
  {
    std::map<int, int> label_count;
    int n_ep = 0;
    for (const auto& [id, v] : vertices)
      if (v.kind == VertexKind::Endpoint) {
        ++n_ep;
        label_count[v.label]++;
      }
    if (n_ep % 2) complain("odd number of endpoints");
    for (const auto& [lbl, cnt] : label_count)
      if (cnt > 1) complain("endpoint label " + std::to_string(lbl) + " used twice");
    for (int l = 1; l <= n_ep; ++l)
      if (!label_count.count(l))
        complain("endpoint labels do not cover {1..2n}: missing " + std::to_string(l));
    std::map<int, int> end_use;
    for (const auto& s : strands)
      if (!s.closed) {
        end_use[s.foot]++;
        end_use[s.head]++;
      }
    for (const auto& [id, v] : vertices)
      if (v.kind == VertexKind::Endpoint && end_use[id] != 1)
        complain("endpoint vertex " + std::to_string(id) + " used " +
                 std::to_string(end_use[id]) + " times as a strand end");
  }

  // port usage (lenient adjacency build)
  std::map<Port, Port> adj;
  bool adj_ok = true;
  {
    auto connect = [&](Port a, Port b) {
      if (adj.count(a) || adj.count(b)) {
        complain("port used twice: " + port_str(adj.count(a) ? a : b));
        adj_ok = false;
        return;
      }
      adj[a] = b;
      adj[b] = a;
    };
    for (const auto& s : strands) {
      if (s.closed) {
        if (s.passages.empty()) continue;
        Port prev{s.passages.back().v, (s.passages.back().slot + 2) % 4};
        for (const auto& p : s.passages) {
          connect(prev, Port{p.v, p.slot});
          prev = Port{p.v, (p.slot + 2) % 4};
        }
      } else {
        if (!vertices.count(s.foot) || !vertices.count(s.head)) continue;
        Port prev{s.foot, 0};
        for (const auto& p : s.passages) {
          connect(prev, Port{p.v, p.slot});
          prev = Port{p.v, (p.slot + 2) % 4};
        }
        connect(prev, Port{s.head, 0});
      }
    }
    for (const auto& [id, v] : vertices)
      for (int sl = 0; sl < degree_for(v.kind); ++sl)
        if (!adj.count(Port{id, sl})) {
          complain("unused port " + port_str(Port{id, sl}));
          adj_ok = false;
        }
  }

  // one over and one under passage per classical vertex; declared signs
  {
    std::map<int, std::pair<int, int>> cnt;  // vertex -> (#even entries, #odd entries)
    for (const auto& s : strands)
      for (const auto& p : s.passages) {
        auto it = vertices.find(p.v);
        if (it == vertices.end() || it->second.kind != VertexKind::Classical) continue;
        auto& c = cnt.try_emplace(p.v, 0, 0).first->second;
        (p.slot % 2 == 0 ? c.first : c.second)++;
      }
    for (const auto& [id, v] : vertices) {
      if (v.kind != VertexKind::Classical) continue;
      auto it = cnt.find(id);
      if (it == cnt.end() || it->second.first != 1 || it->second.second != 1) {
        complain("classical vertex " + std::to_string(id) +
                 " is not passed exactly once over and once under");
        continue;
      }
      if (v.declared_sign && v.sign != 0 && *v.declared_sign != v.sign)
        complain("vertex " + std::to_string(id) + ": declared sign " +
                 std::to_string(*v.declared_sign) + " contradicts derived sign " +
                 std::to_string(v.sign));
    }
  }

  // planarity: V - E + F = 2 on every connected component
  if (adj_ok && !vertices.empty()) {
    std::map<int, int> comp;
    for (const auto& [id, v] : vertices) comp[id] = id;
    std::function<int(int)> find = [&](int x) {
      while (comp[x] != x) x = comp[x] = comp[comp[x]];
      return x;
    };
    for (const auto& [p, q] : adj) {
      int a = find(p.v), b = find(q.v);
      if (a != b) comp[a > b ? a : b] = a > b ? b : a;
    }
    FaceSet fs = compute_faces(adj, [&](int v) { return degree_for(vertices.at(v).kind); });
    std::map<int, int> V, E2, F;
    for (const auto& [id, v] : vertices) V[find(id)]++;
    for (const auto& [p, q] : adj) E2[find(p.v)]++;
    for (const auto& face : fs.faces) F[find(face.front().v)]++;
    for (const auto& [root, nv] : V) {
      int chi = nv - E2[root] / 2 + F[root];
      if (chi != 2)
        complain("component at vertex " + std::to_string(root) +
                 " is not planar: V-E+F = " + std::to_string(chi));
    }
  }

  // placement references
  for (const auto& [rep, pl] : placement) {
    if (!vertices.count(rep))
      complain("placement references missing component " + std::to_string(rep));
    for (const auto& corner : {pl.outer, pl.host})
      if (corner && !vertices.count(corner->v))
        complain("placement corner references missing vertex " + std::to_string(corner->v));
  }

  return out;
}

// ---------------------------------------------------------------------------
// JSON round-trip

namespace {

int parse_id(const std::string& key, const char* where) {
  try {
    size_t pos = 0;
    int v = std::stoi(key, &pos);
    if (pos != key.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ParseError("non-integer id '" + key + "'", where);
  }
}

}  // namespace

PlanarDiagram parse_diagram(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad json: ") + e.what(), "document");
  }
  if (!j.is_object()) throw ParseError("top level must be an object", "document");
  for (const char* key : {"strands", "vertices", "rotation"})
    if (!j.contains(key)) throw ParseError(std::string("missing required key '") + key + "'",
                                           "document");

  PlanarDiagram d;

  const json& jv = j["vertices"];
  if (!jv.is_object()) throw ParseError("'vertices' must be an object", "vertices");
  for (auto it = jv.begin(); it != jv.end(); ++it) {
    int id = parse_id(it.key(), "vertices");
    const json& spec = it.value();
    std::string where = "vertices/" + it.key();
    if (!spec.is_object() || !spec.contains("kind"))
      throw ParseError("vertex needs a 'kind'", where);
    std::string kind = spec["kind"];
    Vertex v;
    if (kind == "classical")
      v.kind = VertexKind::Classical;
    else if (kind == "virtual")
      v.kind = VertexKind::Virtual;
    else if (kind == "endpoint")
      v.kind = VertexKind::Endpoint;
    else
      throw ParseError("unknown vertex kind '" + kind + "'", where);
    if (spec.contains("sign")) {
      int sg = spec["sign"];
      if (sg != 1 && sg != -1) throw ParseError("sign must be +1 or -1", where);
      if (v.kind != VertexKind::Classical)
        throw ParseError("sign on a non-classical vertex", where);
      v.declared_sign = sg;
    }
    if (spec.contains("label")) {
      if (v.kind != VertexKind::Endpoint)
        throw ParseError("label on a non-endpoint vertex", where);
      v.label = spec["label"];
    } else if (v.kind == VertexKind::Endpoint) {
      throw ParseError("endpoint needs a 'label'", where);
    }
    d.vertices[id] = v;
  }

  const json& js = j["strands"];
  if (!js.is_array()) throw ParseError("'strands' must be an array", "strands");
  for (size_t si = 0; si < js.size(); ++si) {
    const json& spec = js[si];
    std::string where = "strands/" + std::to_string(si);
    if (!spec.is_object() || !spec.contains("path"))
      throw ParseError("strand needs a 'path'", where);
    Strand s;
    s.closed = spec.value("closed", false);
    const json& path = spec["path"];
    if (!path.is_array()) throw ParseError("'path' must be an array", where);
    if (s.closed && path.empty()) {
      ++d.free_loops;
      continue;
    }
    std::vector<json> items(path.begin(), path.end());
    size_t lo = 0, hi = items.size();
    if (!s.closed) {
      if (items.size() < 2 || !items.front().contains("end") || !items.back().contains("end"))
        throw ParseError("open strand path must start and end with {\"end\": id}", where);
      s.foot = items.front()["end"];
      s.head = items.back()["end"];
      lo = 1;
      hi = items.size() - 1;
    }
    for (size_t k = lo; k < hi; ++k) {
      const json& e = items[k];
      if (!e.contains("v") || !e.contains("slot"))
        throw ParseError("passage needs 'v' and 'slot'", where + "/" + std::to_string(k));
      Passage p{e["v"], e["slot"]};
      if (p.slot < 0 || p.slot > 3)
        throw ParseError("slot out of range", where + "/" + std::to_string(k));
      s.passages.push_back(p);
    }
    d.strands.push_back(std::move(s));
  }

  const json& jr = j["rotation"];
  if (!jr.is_object()) throw ParseError("'rotation' must be an object", "rotation");
  // Rotation is redundant with the strand walk; require agreement.
  {
    std::map<Port, Port> adj;
    try {
      adj = d.adjacency();
    } catch (const InvalidDiagram&) {
      adj.clear();  // structural trouble; validate() will report it
    }
    if (!adj.empty()) {
      for (auto it = jr.begin(); it != jr.end(); ++it) {
        int id = parse_id(it.key(), "rotation");
        const json& lst = it.value();
        std::string where = "rotation/" + it.key();
        if (!d.vertices.count(id)) throw ParseError("rotation for missing vertex", where);
        if (!lst.is_array()) throw ParseError("rotation entry must be an array", where);
        int deg = degree_for(d.vertices[id].kind);
        if ((int)lst.size() != deg)
          throw ParseError("rotation entry must list " + std::to_string(deg) + " ports", where);
        for (int sl = 0; sl < deg; ++sl) {
          const json& nb = lst[sl];
          if (!nb.is_array() || nb.size() != 2)
            throw ParseError("rotation neighbor must be [vertex, slot]", where);
          Port expect = adj.at(Port{id, sl});
          if (expect.v != (int)nb[0] || expect.slot != (int)nb[1])
            throw ParseError("rotation disagrees with strand walk at slot " +
                                 std::to_string(sl),
                             where);
        }
      }
      for (const auto& [id, v] : d.vertices)
        if (!jr.contains(std::to_string(id)))
          throw ParseError("rotation missing vertex " + std::to_string(id), "rotation");
    }
  }

  if (j.contains("placement")) {
    const json& jp = j["placement"];
    if (!jp.is_object()) throw ParseError("'placement' must be an object", "placement");
    for (auto it = jp.begin(); it != jp.end(); ++it) {
      int rep = parse_id(it.key(), "placement");
      const json& spec = it.value();
      ComponentPlacement pl;
      for (const char* key : {"outer", "host"}) {
        if (!spec.contains(key)) continue;
        const json& c = spec[key];
        if (!c.is_array() || c.size() != 2)
          throw ParseError("placement corner must be [vertex, slot]", "placement/" + it.key());
        Port corner{c[0], c[1]};
        (std::string(key) == "outer" ? pl.outer : pl.host) = corner;
      }
      d.placement[rep] = pl;
    }
  }

  try {
    d.derive_signs();
  } catch (const InvalidDiagram&) {
    // leave signs at 0; validate() reports the structural problem
  }
  return d;
}

std::string serialize_diagram(const PlanarDiagram& d) {
  json j;
  j["strands"] = json::array();
  for (const auto& s : d.strands) {
    json path = json::array();
    if (!s.closed) path.push_back({{"end", s.foot}});
    for (const auto& p : s.passages) path.push_back({{"v", p.v}, {"slot", p.slot}});
    if (!s.closed) path.push_back({{"end", s.head}});
    j["strands"].push_back({{"closed", s.closed}, {"path", path}});
  }
  for (int i = 0; i < d.free_loops; ++i)
    j["strands"].push_back({{"closed", true}, {"path", json::array()}});

  j["vertices"] = json::object();
  for (const auto& [id, v] : d.vertices) {
    json spec;
    switch (v.kind) {
      case VertexKind::Classical:
        spec["kind"] = "classical";
        if (v.sign) spec["sign"] = v.sign;
        break;
      case VertexKind::Virtual: spec["kind"] = "virtual"; break;
      case VertexKind::Endpoint:
        spec["kind"] = "endpoint";
        spec["label"] = v.label;
        break;
      case VertexKind::Joint: throw Error("cannot serialize an unfinished diagram");
    }
    j["vertices"][std::to_string(id)] = spec;
  }

  j["rotation"] = json::object();
  auto adj = d.adjacency();
  for (const auto& [id, v] : d.vertices) {
    json lst = json::array();
    for (int sl = 0; sl < degree_for(v.kind); ++sl) {
      Port q = adj.at(Port{id, sl});
      lst.push_back({q.v, q.slot});
    }
    j["rotation"][std::to_string(id)] = lst;
  }

  j["placement"] = json::object();
  for (const auto& [rep, pl] : d.placement) {
    json spec = json::object();
    if (pl.outer) spec["outer"] = {pl.outer->v, pl.outer->slot};
    if (pl.host) spec["host"] = {pl.host->v, pl.host->slot};
    j["placement"][std::to_string(rep)] = spec;
  }

  return j.dump(2) + "\n";
}

PlanarDiagram load_diagram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_diagram(ss.str());
}

}  // namespace linkoid
