#include "linkoid/curves3d.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "linkoid/errors.hpp"

namespace linkoid {

namespace {

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
double norm3(const Vec3& a) { return std::sqrt(dot(a, a)); }
double dist3(const Vec3& a, const Vec3& b) {
  Vec3 d{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
  return norm3(d);
}

struct P2 {
  double u = 0, v = 0;
};
P2 sub2(const P2& a, const P2& b) { return {a.u - b.u, a.v - b.v}; }
double cross2(const P2& a, const P2& b) { return a.u * b.v - a.v * b.u; }
double len2(const P2& a) { return std::sqrt(a.u * a.u + a.v * a.v); }
double dist2(const P2& a, const P2& b) { return len2(sub2(a, b)); }

double point_segment_dist(const P2& p, const P2& a, const P2& b) {
  P2 d = sub2(b, a);
  double l2 = d.u * d.u + d.v * d.v;
  if (l2 == 0) return dist2(p, a);
  double t = ((p.u - a.u) * d.u + (p.v - a.v) * d.v) / l2;
  t = std::clamp(t, 0.0, 1.0);
  return dist2(p, P2{a.u + t * d.u, a.v + t * d.v});
}

std::vector<std::pair<int, int>> effective_labels(const PolyCurveSet& c) {
  if (!c.labels.empty()) return c.labels;
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < (int)c.curves.size(); ++i)
    out.push_back({2 * i + 1, 2 * i + 2});
  return out;
}

void validate_curve_set(const PolyCurveSet& c) {
  if (c.curves.empty()) throw ParseError("no curves", "curves file");
  int n = (int)c.curves.size();
  for (int i = 0; i < n; ++i) {
    const auto& cv = c.curves[i];
    if (cv.size() < 2)
      throw ParseError("curve " + std::to_string(i) + " has fewer than 2 points",
                       "curve " + std::to_string(i));
    for (size_t k = 0; k + 1 < cv.size(); ++k)
      if (cv[k] == cv[k + 1])
        throw ParseError("curve " + std::to_string(i) +
                             " repeats consecutive point " + std::to_string(k),
                         "curve " + std::to_string(i));
  }
  std::vector<std::pair<int, int>> labels = effective_labels(c);
  if ((int)labels.size() != n)
    throw ParseError("expected one label pair per curve", "labels");
  std::set<int> seen;
  for (auto [a, b] : labels) {
    if (a == b || a < 1 || a > 2 * n || b < 1 || b > 2 * n)
      throw ParseError("label pair (" + std::to_string(a) + ", " +
                           std::to_string(b) + ") out of range",
                       "labels");
    seen.insert(a);
    seen.insert(b);
  }
  if ((int)seen.size() != 2 * n)
    throw ParseError("labels must cover 1..2n exactly once", "labels");
}

}  // namespace

Involution PolyCurveSet::tau() const {
  return Involution::from_pairs((int)curves.size(), effective_labels(*this));
}

double PolyCurveSet::diameter() const {
  std::vector<const Vec3*> pts;
  for (const auto& cv : curves)
    for (const Vec3& p : cv) pts.push_back(&p);
  double best = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, dist3(*pts[i], *pts[j]));
  return best;
}

PolyCurveSet parse_curves(const std::string& text) {
  size_t start = text.find_first_not_of(" \t\r\n");
  if (start == std::string::npos) throw ParseError("empty curves file", "offset 0");

  PolyCurveSet c;
  if (text[start] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), "curves file");
    }
    if (!j.is_object() || !j.contains("curves") || !j["curves"].is_array())
      throw ParseError("expected an object with a \"curves\" array", "curves file");
    for (const auto& jc : j["curves"]) {
      if (!jc.is_array())
        throw ParseError("each curve must be an array of points", "curves");
      std::vector<Vec3> cv;
      for (const auto& jp : jc) {
        if (!jp.is_array() || jp.size() != 3 || !jp[0].is_number() ||
            !jp[1].is_number() || !jp[2].is_number())
          throw ParseError("each point must be [x, y, z]", "curves");
        cv.push_back({jp[0].get<double>(), jp[1].get<double>(), jp[2].get<double>()});
      }
      c.curves.push_back(std::move(cv));
    }
    if (j.contains("labels")) {
      if (!j["labels"].is_array())
        throw ParseError("\"labels\" must be an array of pairs", "labels");
      for (const auto& jl : j["labels"]) {
        if (!jl.is_array() || jl.size() != 2 || !jl[0].is_number_integer() ||
            !jl[1].is_number_integer())
          throw ParseError("each label entry must be [start, end]", "labels");
        c.labels.push_back({jl[0].get<int>(), jl[1].get<int>()});
      }
    }
  } else {
    // CSV rows "curve,x,y,z"; optional header, '#' comments.
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool header_allowed = true;
    std::map<long, int> curve_index;
    while (std::getline(in, line)) {
      ++lineno;
      while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
        line.pop_back();
      size_t a = line.find_first_not_of(" \t");
      if (a == std::string::npos || line[a] == '#') continue;
      std::vector<std::string> fields;
      std::istringstream ls(line);
      std::string f;
      while (std::getline(ls, f, ',')) fields.push_back(f);
      std::string where = "line " + std::to_string(lineno);
      if (fields.size() != 4)
        throw ParseError("expected 4 comma-separated fields", where);
      char* end = nullptr;
      long id = std::strtol(fields[0].c_str(), &end, 10);
      bool ok = end && *end == '\0' && !fields[0].empty();
      double xyz[3];
      for (int k = 0; ok && k < 3; ++k) {
        xyz[k] = std::strtod(fields[k + 1].c_str(), &end);
        ok = end && *end == '\0' && !fields[k + 1].empty();
      }
      if (!ok) {
        if (header_allowed) {
          header_allowed = false;
          continue;
        }
        throw ParseError("unparseable CSV row", where);
      }
      header_allowed = false;
      auto [it, fresh] = curve_index.emplace(id, (int)c.curves.size());
      if (fresh) c.curves.emplace_back();
      c.curves[it->second].push_back({xyz[0], xyz[1], xyz[2]});
    }
  }
  if (c.labels.empty()) c.labels = effective_labels(c);
  validate_curve_set(c);
  return c;
}

PolyCurveSet load_curves_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open curves file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_curves(ss.str());
}

namespace {

struct Seg {
  int curve = 0, idx = 0;
  P2 a, b;
  double da = 0, db = 0;  // depth along xi
  Vec3 a3, b3;
};

struct Incidence {
  int curve = 0, seg = 0;
  double t = 0, depth = 0;
  bool over = false;
  int slot = 0;
};

struct CrossingRec {
  P2 pos;
  Incidence inc[2];
  int vid = 0;
};

struct Chain {
  Port a, b;
  std::vector<P2> pts;  // drawn polyline of the edge, a to b
};

std::string seg_name(const Seg& s) {
  return "curve " + std::to_string(s.curve) + " segment " + std::to_string(s.idx);
}

// Downward ray shoot answers both placement questions for a piece: the face
// below its last self-hit is its outer face, and the face above the first
// hit on any other piece is the face containing it.
struct RayHit {
  double t = 0;
  int piece = 0;
  Port a, b;
  double side = 0;  // cross2(chain segment direction, ray direction)
};

}  // namespace

PlanarDiagram project(const PolyCurveSet& c, const Vec3& xi,
                      const ProjectionOptions& opts) {
  if (std::abs(norm3(xi) - 1.0) > 1e-12)
    throw Error("projection direction must be a unit vector");
  int n = (int)c.curves.size();
  for (const auto& cv : c.curves)
    if (cv.size() < 2) throw Error("curve with fewer than 2 points");
  std::vector<std::pair<int, int>> labels = effective_labels(c);
  if ((int)labels.size() != n) throw Error("one label pair per curve required");

  double diam = c.diameter();
  if (!(diam > 0)) throw Error("degenerate curve set");
  double eps = opts.eps_scale * diam;

  // Right-handed frame (e1, e2, xi); seen from +xi the (u, v) plane has its
  // usual counterclockwise orientation.
  int ax = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(xi[k]) < std::abs(xi[ax])) ax = k;
  Vec3 axis{0, 0, 0};
  axis[ax] = 1;
  Vec3 e1 = cross(xi, axis);
  double l = norm3(e1);
  e1 = {e1[0] / l, e1[1] / l, e1[2] / l};
  Vec3 e2 = cross(xi, e1);

  std::vector<std::vector<P2>> pts(n);
  std::vector<std::vector<double>> dep(n);
  for (int ci = 0; ci < n; ++ci)
    for (const Vec3& p : c.curves[ci]) {
      pts[ci].push_back({dot(p, e1), dot(p, e2)});
      dep[ci].push_back(dot(p, xi));
    }

  std::vector<Seg> segs;
  for (int ci = 0; ci < n; ++ci)
    for (int k = 0; k + 1 < (int)c.curves[ci].size(); ++k) {
      Seg s{ci, k, pts[ci][k], pts[ci][k + 1], dep[ci][k], dep[ci][k + 1],
            c.curves[ci][k], c.curves[ci][k + 1]};
      if (dist2(s.a, s.b) < eps)
        throw IrregularProjection("segment projects below tolerance", seg_name(s));
      segs.push_back(s);
    }

  // Segments that share a 3D point act like consecutive segments: the shared
  // corner is a glue point, not a crossing.
  auto quasi_adjacent = [&](const Seg& s, const Seg& t) {
    if (s.curve == t.curve && std::abs(s.idx - t.idx) <= 1) return true;
    return dist3(s.a3, t.a3) <= eps || dist3(s.a3, t.b3) <= eps ||
           dist3(s.b3, t.a3) <= eps || dist3(s.b3, t.b3) <= eps;
  };

  std::vector<CrossingRec> crossings;
  for (size_t i = 0; i < segs.size(); ++i)
    for (size_t j = i + 1; j < segs.size(); ++j) {
      const Seg& si = segs[i];
      const Seg& sj = segs[j];
      if (quasi_adjacent(si, sj)) continue;
      P2 r = sub2(si.b, si.a), s = sub2(sj.b, sj.a);
      double denom = cross2(r, s);
      std::string where = seg_name(si) + " x " + seg_name(sj);
      if (std::abs(denom) < opts.eps_angle * len2(r) * len2(s)) {
        double d = std::min(
            std::min(point_segment_dist(si.a, sj.a, sj.b),
                     point_segment_dist(si.b, sj.a, sj.b)),
            std::min(point_segment_dist(sj.a, si.a, si.b),
                     point_segment_dist(sj.b, si.a, si.b)));
        if (d < eps)
          throw IrregularProjection("near-parallel segments within tolerance",
                                    where);
        continue;
      }
      P2 qp = sub2(sj.a, si.a);
      double t = cross2(qp, s) / denom;
      double u = cross2(qp, r) / denom;
      double dt = eps / len2(r), du = eps / len2(s);
      bool inside = t > dt && t < 1 - dt && u > du && u < 1 - du;
      bool nearby = t > -dt && t < 1 + dt && u > -du && u < 1 + du;
      if (!inside) {
        if (nearby)
          throw IrregularProjection("crossing within tolerance of a vertex",
                                    where);
        continue;
      }
      double di = si.da + t * (si.db - si.da);
      double dj = sj.da + u * (sj.db - sj.da);
      if (std::abs(di - dj) < eps)
        throw IrregularProjection("crossing with ambiguous over/under", where);
      CrossingRec rec;
      rec.pos = {si.a.u + t * r.u, si.a.v + t * r.v};
      rec.inc[0] = {si.curve, si.idx, t, di, di > dj, 0};
      rec.inc[1] = {sj.curve, sj.idx, u, dj, dj > di, 0};
      P2 dov = rec.inc[0].over ? r : s;
      P2 dun = rec.inc[0].over ? s : r;
      int uslot = cross2(dov, dun) > 0 ? 1 : 3;
      rec.inc[0].slot = rec.inc[0].over ? 0 : uslot;
      rec.inc[1].slot = rec.inc[1].over ? 0 : uslot;
      crossings.push_back(rec);
    }

  for (size_t i = 0; i < crossings.size(); ++i)
    for (size_t j = i + 1; j < crossings.size(); ++j)
      if (dist2(crossings[i].pos, crossings[j].pos) < eps)
        throw IrregularProjection("two crossings within tolerance",
                                  "crossing pair");
  for (const CrossingRec& rec : crossings)
    for (int ci = 0; ci < n; ++ci)
      for (const P2& p : pts[ci])
        if (dist2(rec.pos, p) < eps)
          throw IrregularProjection("crossing within tolerance of a vertex",
                                    "curve " + std::to_string(ci));

  for (int ci = 0; ci < n; ++ci)
    for (int side = 0; side < 2; ++side) {
      P2 pe = side ? pts[ci].back() : pts[ci].front();
      Vec3 p3 = side ? c.curves[ci].back() : c.curves[ci].front();
      int incident = side ? (int)c.curves[ci].size() - 2 : 0;
      for (const Seg& s : segs) {
        if (s.curve == ci && s.idx == incident) continue;
        if (dist3(p3, s.a3) <= eps || dist3(p3, s.b3) <= eps) continue;
        if (point_segment_dist(pe, s.a, s.b) < eps)
          throw IrregularProjection("endpoint within tolerance of a strand",
                                    "curve " + std::to_string(ci) + " " +
                                        (side ? "head" : "foot"));
      }
    }

  std::sort(crossings.begin(), crossings.end(),
            [](const CrossingRec& x, const CrossingRec& y) {
              return std::tie(x.inc[0].curve, x.inc[0].seg, x.inc[0].t) <
                     std::tie(y.inc[0].curve, y.inc[0].seg, y.inc[0].t);
            });
  for (size_t i = 0; i < crossings.size(); ++i) crossings[i].vid = (int)i + 1;
  int C = (int)crossings.size();

  struct SegStop {
    double t;
    int vid, slot;
    P2 pos;
  };
  std::map<std::pair<int, int>, std::vector<SegStop>> on_seg;
  for (const CrossingRec& rec : crossings)
    for (const Incidence& in : rec.inc)
      on_seg[{in.curve, in.seg}].push_back({in.t, rec.vid, in.slot, rec.pos});
  for (auto& [key, stops] : on_seg)
    std::sort(stops.begin(), stops.end(),
              [](const SegStop& x, const SegStop& y) { return x.t < y.t; });

  PlanarDiagram pd;
  for (const CrossingRec& rec : crossings)
    pd.vertices[rec.vid] = Vertex{VertexKind::Classical, 0, std::nullopt, 0};
  std::vector<Chain> chains;
  for (int ci = 0; ci < n; ++ci) {
    int foot_id = C + 2 * ci + 1, head_id = C + 2 * ci + 2;
    pd.vertices[foot_id] =
        Vertex{VertexKind::Endpoint, 0, std::nullopt, labels[ci].first};
    pd.vertices[head_id] =
        Vertex{VertexKind::Endpoint, 0, std::nullopt, labels[ci].second};
    Strand st;
    st.foot = foot_id;
    st.head = head_id;
    Port cur{foot_id, 0};
    std::vector<P2> run{pts[ci][0]};
    for (int k = 0; k + 1 < (int)c.curves[ci].size(); ++k) {
      auto it = on_seg.find({ci, k});
      if (it != on_seg.end())
        for (const SegStop& stop : it->second) {
          st.passages.push_back({stop.vid, stop.slot});
          run.push_back(stop.pos);
          chains.push_back({cur, Port{stop.vid, stop.slot}, std::move(run)});
          cur = Port{stop.vid, (stop.slot + 2) % 4};
          run = {stop.pos};
        }
      run.push_back(pts[ci][k + 1]);
    }
    chains.push_back({cur, Port{head_id, 0}, std::move(run)});
    pd.strands.push_back(std::move(st));
  }
  pd.derive_signs();

  // Placement of disconnected pieces, from the drawing itself.
  std::map<int, int> piece_of;  // vertex -> piece representative
  {
    std::map<int, int> parent;
    for (const auto& [id, v] : pd.vertices) parent[id] = id;
    std::function<int(int)> find = [&parent, &find](int x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    auto unite = [&](int x, int y) {
      x = find(x);
      y = find(y);
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    };
    for (const Strand& st : pd.strands) {
      unite(st.foot, st.head);
      for (const Passage& p : st.passages) unite(st.foot, p.v);
    }
    for (const auto& [id, v] : pd.vertices) piece_of[id] = find(id);
  }
  std::set<int> piece_reps;
  for (const auto& [id, rep] : piece_of) piece_reps.insert(rep);

  if (piece_reps.size() > 1) {
    // z0 per piece: midpoint of its lowest drawn sub-segment.
    std::map<int, P2> z0;
    std::map<int, double> z0v;
    int low_piece = 0;
    double low_v = std::numeric_limits<double>::infinity();
    for (const Chain& ch : chains) {
      int rep = piece_of.at(ch.a.v);
      for (size_t k = 0; k + 1 < ch.pts.size(); ++k) {
        P2 m{(ch.pts[k].u + ch.pts[k + 1].u) / 2,
             (ch.pts[k].v + ch.pts[k + 1].v) / 2};
        if (!z0v.count(rep) || m.v < z0v.at(rep)) {
          z0v[rep] = m.v;
          z0[rep] = m;
        }
      }
      for (const P2& p : ch.pts)
        if (p.v < low_v) {
          low_v = p.v;
          low_piece = rep;
        }
    }

    std::map<int, ComponentPlacement> placement;
    bool placed = false;
    for (int tilt = 0; tilt <= 40 && !placed; ++tilt) {
      double th = 7e-4 * tilt;
      P2 ray{std::sin(th), -std::cos(th)};
      bool dirty = false;
      std::map<int, ComponentPlacement> trial;
      for (int rep : piece_reps) {
        P2 org = z0.at(rep);
        std::vector<RayHit> hits;
        for (const Chain& ch : chains) {
          int crep = piece_of.at(ch.a.v);
          for (size_t k = 0; k + 1 < ch.pts.size() && !dirty; ++k) {
            P2 d = sub2(ch.pts[k + 1], ch.pts[k]);
            double denom = cross2(ray, d);
            P2 off = sub2(ch.pts[k], org);
            if (std::abs(denom) < 1e-12 * len2(d)) {
              // Near-vertical segment: ambiguous only if it rides the ray line.
              if (std::abs(cross2(off, ray)) < eps) dirty = true;
              continue;
            }
            double t = cross2(off, d) / denom;
            double s = cross2(off, ray) / denom;
            if (t < -1e-12 * diam) continue;
            double margin = std::min(s, 1 - s) * len2(d);
            if (s < 0 || s > 1) {
              if (margin > -eps) dirty = true;  // grazes a junction
              continue;
            }
            if (margin < eps) {
              dirty = true;
              continue;
            }
            hits.push_back({t, crep, ch.a, ch.b, cross2(d, ray)});
          }
          if (dirty) break;
        }
        if (dirty) break;
        std::sort(hits.begin(), hits.end(),
                  [](const RayHit& x, const RayHit& y) { return x.t < y.t; });
        for (size_t k = 0; k + 1 < hits.size(); ++k)
          if (hits[k + 1].t - hits[k].t < eps) dirty = true;
        const RayHit* last_own = nullptr;
        const RayHit* first_other = nullptr;
        for (const RayHit& h : hits) {
          if (h.piece == rep)
            last_own = &h;
          else if (!first_other && h.t > 0)
            first_other = &h;
        }
        if (!last_own || dirty) {
          dirty = true;
          break;
        }
        ComponentPlacement cp;
        cp.outer = last_own->side < 0 ? last_own->a : last_own->b;
        if (rep != low_piece && first_other)
          cp.host = first_other->side < 0 ? first_other->b : first_other->a;
        trial[rep] = cp;
      }
      if (!dirty) {
        placement = std::move(trial);
        placed = true;
      }
    }
    if (!placed)
      throw IrregularProjection("piece placement is ambiguous", "ray shoot");

    // The lowest piece is provably outermost; renumber so it comes first and
    // anchors the ambient face.
    std::vector<int> order(piece_reps.begin(), piece_reps.end());
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return (x == low_piece) > (y == low_piece);
    });
    std::map<int, int> remap;
    int next_id = 1;
    for (int rep : order)
      for (const auto& [id, v] : pd.vertices)
        if (piece_of.at(id) == rep) remap[id] = next_id++;

    PlanarDiagram out;
    for (const auto& [id, v] : pd.vertices) out.vertices[remap.at(id)] = v;
    for (const Strand& st : pd.strands) {
      Strand t;
      t.closed = false;
      t.foot = remap.at(st.foot);
      t.head = remap.at(st.head);
      for (const Passage& p : st.passages)
        t.passages.push_back({remap.at(p.v), p.slot});
      out.strands.push_back(std::move(t));
    }
    for (const auto& [rep, cp] : placement) {
      ComponentPlacement m;
      if (cp.outer) m.outer = Port{remap.at(cp.outer->v), cp.outer->slot};
      if (cp.host) m.host = Port{remap.at(cp.host->v), cp.host->slot};
      int key = std::numeric_limits<int>::max();
      for (const auto& [id, r] : piece_of)
        if (r == rep) key = std::min(key, remap.at(id));
      out.placement[key] = m;
    }
    pd = std::move(out);
  }

  {
    std::vector<std::string> errs = pd.validate();
    if (!errs.empty())
      throw Error("projection produced an invalid diagram: " + errs.front());
  }
  return pd;
}

namespace {

struct SplitMix {
  std::uint64_t state;
  explicit SplitMix(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double unit() { return double((next() >> 11) + 1) * 0x1.0p-53; }  // (0, 1]
};

Vec3 direction_at(std::uint64_t seed, std::uint64_t index) {
  SplitMix g(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
  for (;;) {
    double r1 = std::sqrt(-2.0 * std::log(g.unit()));
    double a1 = 2.0 * M_PI * g.unit();
    double r2 = std::sqrt(-2.0 * std::log(g.unit()));
    double a2 = 2.0 * M_PI * g.unit();
    Vec3 v{r1 * std::cos(a1), r1 * std::sin(a1), r2 * std::cos(a2)};
    double nn = norm3(v);
    if (nn > 1e-8) return {v[0] / nn, v[1] / nn, v[2] / nn};
  }
}

}  // namespace

std::vector<Vec3> sample_directions(int n, std::uint64_t seed) {
  if (n < 1) throw Error("sample_directions: need at least one direction");
  std::vector<Vec3> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) out.push_back(direction_at(seed, k));
  return out;
}

namespace {

// Streaming per-key mean and variance; keys absent from a sample count as 0,
// and keys first seen mid-stream start from the zeros they implied.
struct Welford {
  long long n = 0;
  std::map<std::string, double> mean, m2;
  void add(const std::map<std::string, double>& x) {
    ++n;
    for (const auto& [k, v] : x)
      if (!mean.count(k)) {
        mean[k] = 0;
        m2[k] = 0;
      }
    for (auto& [k, m] : mean) {
      auto it = x.find(k);
      double xv = it == x.end() ? 0.0 : it->second;
      double d = xv - m;
      m += d / (double)n;
      m2[k] += d * (xv - m);
    }
  }
};

struct EvalOut {
  std::vector<std::map<std::string, double>> vals;
  std::vector<std::string> reprs;
};

struct McAccum {
  std::vector<Welford> stats;
  std::vector<std::vector<std::string>> dumps;
  int accepted = 0;
  int rejected = 0;
};

std::string format_direction(const Vec3& xi) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g", xi[0], xi[1], xi[2]);
  return buf;
}

// First-N-accepted-by-index semantics: acceptance and values depend only on
// (seed, index), so the result is identical for every thread count.
template <class Eval>
McAccum run_directions(const PolyCurveSet& c, const SampleOptions& opts, int K,
                       Eval&& eval) {
  if (opts.samples < 1) throw Error("measure: samples must be >= 1");
  McAccum acc;
  acc.stats.resize(K);
  acc.dumps.resize(K);
  long long budget = (long long)opts.budget_factor * opts.samples;
  int threads = std::max(1, opts.threads);
  long long next = 0;

  struct Outcome {
    int status = 0;  // 1 accepted, 2 rejected, 3 error
    std::exception_ptr error;
    EvalOut out;
    std::string dir;
  };

  while (acc.accepted < opts.samples) {
    if (next >= budget)
      throw SamplingFailure(std::to_string(acc.rejected) + " of " +
                            std::to_string(next) +
                            " directions rejected; sampling budget exhausted");
    long long batch =
        std::min<long long>(budget - next, threads == 1 ? 1 : 4 * threads);
    std::vector<Outcome> out((size_t)batch);
    auto work = [&](long long i) {
      Outcome& o = out[(size_t)i];
      Vec3 xi = direction_at(opts.seed, (std::uint64_t)(next + i));
      if (opts.dump_samples) o.dir = format_direction(xi);
      try {
        PlanarDiagram pd = project(c, xi, opts.projection);
        o.out = eval(pd);
        o.status = 1;
      } catch (const IrregularProjection&) {
        o.status = 2;
      } catch (...) {
        o.status = 3;
        o.error = std::current_exception();
      }
    };
    if (threads == 1 || batch == 1) {
      for (long long i = 0; i < batch; ++i) work(i);
    } else {
      std::atomic<long long> widx{0};
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
          for (long long i = widx++; i < batch; i = widx++) work(i);
        });
      for (std::thread& th : pool) th.join();
    }
    for (long long i = 0; i < batch && acc.accepted < opts.samples; ++i) {
      Outcome& o = out[(size_t)i];
      if (o.status == 2) {
        ++acc.rejected;
        continue;
      }
      if (o.status == 3) std::rethrow_exception(o.error);
      for (int k = 0; k < K; ++k) acc.stats[k].add(o.out.vals[k]);
      if (opts.dump_samples)
        for (int k = 0; k < K; ++k)
          acc.dumps[k].push_back(o.dir + " -> " + o.out.reprs[k]);
      ++acc.accepted;
    }
    next += batch;
  }
  return acc;
}

MeasureEstimate finalize(Welford& w, std::vector<std::string> dump,
                         const SampleOptions& opts, bool scalar, int rejected) {
  MeasureEstimate m;
  m.samples = (int)w.n;
  m.rejected = rejected;
  m.seed = opts.seed;
  m.scalar = scalar;
  m.mean = std::move(w.mean);
  for (const auto& [k, v] : w.m2)
    m.sem[k] = w.n >= 2 ? std::sqrt(std::max(0.0, v / double(w.n - 1)) /
                                    double(w.n))
                        : 0.0;
  m.dump = std::move(dump);
  return m;
}

std::string t_key(int exp) {
  if (exp == 0) return "1";
  if (exp == 1) return "t";
  return "t^" + std::to_string(exp);
}

bool scalar_selector(Selector f) {
  return f != Selector::Jones && f != Selector::Arrow && f != Selector::Affine;
}

std::pair<std::map<std::string, double>, std::string> eval_selector(
    const PlanarDiagram& pd, const Involution& sigma, Selector f,
    const StateSumOptions& ss) {
  std::map<std::string, double> vals;
  std::string repr;
  switch (f) {
    case Selector::Jones: {
      LaurentPoly p = jones(pd.to_gauss(), sigma, ss);
      for (const auto& [exp, co] : p.terms())
        vals[monomial_key(exp)] = co.to_double();
      repr = p.str();
      break;
    }
    case Selector::Arrow: {
      ArrowPoly p = arrow(pd.to_gauss(), sigma, ss);
      for (const auto& [mono, co] : p.terms())
        vals[monomial_key(mono)] = co.to_double();
      repr = p.str();
      break;
    }
    case Selector::Affine: {
      AffinePoly p = affine_index(pd.to_gauss(), sigma).poly;
      for (const auto& [exp, co] : p.terms())
        vals[t_key(exp)] = (double)co;
      repr = p.str();
      break;
    }
    case Selector::HeightBound: {
      int v = height_bound(pd, sigma);
      vals["value"] = v;
      repr = std::to_string(v);
      break;
    }
    case Selector::GenusBound: {
      int v = genus_bound(reduce_virtual(virtual_closure(pd, sigma)));
      vals["value"] = v;
      repr = std::to_string(v);
      break;
    }
    case Selector::ComponentCount: {
      int v = burnside_count(pd.strand_permutation(), sigma);
      vals["value"] = v;
      repr = std::to_string(v);
      break;
    }
    case Selector::OddWrithe: {
      int v = odd_writhe(pd.to_gauss(), sigma).value;
      vals["value"] = v;
      repr = std::to_string(v);
      break;
    }
  }
  return {std::move(vals), std::move(repr)};
}

void check_component_selector(const PolyCurveSet& c, const Involution& sigma,
                              Selector f) {
  if (f != Selector::Affine && f != Selector::OddWrithe) return;
  int components = burnside_count(c.tau(), sigma);
  if (components != 1)
    throw MultiComponent(selector_name(f) + " needs a 1-component closure; " +
                         sigma.str() + " closes the set into " +
                         std::to_string(components) + " components");
}

std::vector<Vec3> endpoint_positions(const PolyCurveSet& c) {
  std::vector<std::pair<int, int>> labels = effective_labels(c);
  std::vector<Vec3> pos(2 * c.curves.size());
  for (size_t i = 0; i < c.curves.size(); ++i) {
    pos[labels[i].first - 1] = c.curves[i].front();
    pos[labels[i].second - 1] = c.curves[i].back();
  }
  return pos;
}

double sigma_weight(const std::vector<Vec3>& pos, const Involution& sigma) {
  double sum = 0;
  for (int i = 1; i <= sigma.size(); ++i)
    sum += dist3(pos[i - 1], pos[sigma(i) - 1]);
  return sum / (double)sigma.size();
}

std::string render_map(const std::map<std::string, double>& vals) {
  std::string out;
  for (const auto& [k, v] : vals) {
    if (!out.empty()) out += " ";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += k + "=" + buf;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

MeasureEstimate measure(const PolyCurveSet& c, const Involution& sigma,
                        Selector f, const SampleOptions& opts) {
  validate_curve_set(c);
  if (sigma.size() != 2 * (int)c.curves.size())
    throw SizeMismatch("sigma pairs " + std::to_string(sigma.size()) +
                       " labels but the curve set has " +
                       std::to_string(2 * c.curves.size()));
  check_component_selector(c, sigma, f);
  McAccum acc = run_directions(c, opts, 1, [&](const PlanarDiagram& pd) {
    auto [vals, repr] = eval_selector(pd, sigma, f, opts.statesum);
    EvalOut o;
    o.vals.push_back(std::move(vals));
    o.reprs.push_back(std::move(repr));
    return o;
  });
  return finalize(acc.stats[0], std::move(acc.dumps[0]), opts,
                  scalar_selector(f), acc.rejected);
}

WeightedSpectrum weighted_spectrum(const PolyCurveSet& c, Selector f,
                                   const SampleOptions& opts) {
  validate_curve_set(c);
  int n = (int)c.curves.size();
  if (n > 4)
    throw TooLarge("weighted spectrum over H_" + std::to_string(n) + " runs " +
                   std::to_string(double_factorial_odd(n)) +
                   " estimates; 4 curves max");
  std::vector<Involution> sigmas = enumerate_Hn(n);
  for (const Involution& s : sigmas) check_component_selector(c, s, f);
  std::vector<Vec3> pos = endpoint_positions(c);

  int K = (int)sigmas.size();
  McAccum acc = run_directions(c, opts, K, [&](const PlanarDiagram& pd) {
    EvalOut o;
    for (const Involution& s : sigmas) {
      auto [vals, repr] = eval_selector(pd, s, f, opts.statesum);
      o.vals.push_back(std::move(vals));
      o.reprs.push_back(std::move(repr));
    }
    return o;
  });

  WeightedSpectrum ws;
  ws.w_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < K; ++k) {
    WeightedEntry e;
    e.sigma = sigmas[k];
    e.weight = sigma_weight(pos, sigmas[k]);
    e.estimate = finalize(acc.stats[k], std::move(acc.dumps[k]), opts,
                          scalar_selector(f), acc.rejected);
    ws.w_min = std::min(ws.w_min, e.weight);
    ws.entries.push_back(std::move(e));
  }
  return ws;
}

MeasureEstimate spectral_measure(const PolyCurveSet& c, Selector f,
                                 const SampleOptions& opts) {
  validate_curve_set(c);
  int n = (int)c.curves.size();
  if (n > 4)
    throw TooLarge("spectral measure over H_" + std::to_string(n) + " runs " +
                   std::to_string(double_factorial_odd(n)) +
                   " estimates; 4 curves max");
  std::vector<Involution> sigmas = enumerate_Hn(n);
  std::vector<Vec3> pos = endpoint_positions(c);
  std::vector<double> w(sigmas.size());
  double wmin = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < sigmas.size(); ++k) {
    w[k] = sigma_weight(pos, sigmas[k]);
    wmin = std::min(wmin, w[k]);
  }
  // Weight w_min/w_sigma, read in the limit when w_min = 0: coincident
  // closures keep weight 1, everything else drops out.
  std::vector<std::pair<size_t, double>> active;
  for (size_t k = 0; k < sigmas.size(); ++k) {
    double wk = wmin == 0 ? (w[k] == 0 ? 1.0 : 0.0) : wmin / w[k];
    if (wk > 0) active.push_back({k, wk});
  }
  for (const auto& [k, wk] : active) check_component_selector(c, sigmas[k], f);

  McAccum acc = run_directions(c, opts, 1, [&](const PlanarDiagram& pd) {
    std::map<std::string, double> sum;
    for (const auto& [k, wk] : active) {
      auto [vals, repr] = eval_selector(pd, sigmas[k], f, opts.statesum);
      for (const auto& [key, v] : vals) sum[key] += wk * v;
    }
    EvalOut o;
    o.reprs.push_back(render_map(sum));
    o.vals.push_back(std::move(sum));
    return o;
  });
  return finalize(acc.stats[0], std::move(acc.dumps[0]), opts,
                  scalar_selector(f), acc.rejected);
}

}  // namespace linkoid
