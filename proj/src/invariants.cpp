#include "linkoid/invariants.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "linkoid/errors.hpp"

namespace linkoid {

StateSumOptions default_state_sum_options() {
  StateSumOptions o;
  if (const char* env = std::getenv("LINKOID_MAX_CROSSINGS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0 && v < 62) o.max_crossings = (int)v;
  }
  return o;
}

int writhe(const GaussCode& g) { return g.writhe(); }

namespace {

// Flattened state-sum instance.  Crossing index ci owns the slot nodes
// 4ci..4ci+3 (over-strand in at 0, out at 2; under-strand in at 1 for
// positive crossings, at 3 for negative).  Endpoint label l lives at node
// 4C + l - 1.  "arc" is the perfect matching given by the strand arcs.
struct Engine {
  int C = 0;
  std::vector<int> ids;             // ci -> crossing id
  int L = 0;                        // endpoint labels (2n)
  std::vector<int> arc;             // node -> node
  std::vector<signed char> inflow;  // +1 where a strand flows into the vertex
  int base_circles = 0;             // crossingless closed components
  Involution sigma;
};

// A smoothing arc joins slots {anchor, anchor+1 mod 4}; a traversal entering
// at the anchor slot has the arc's tip (toward the vertex center) on its
// left.  This is pure slot geometry, independent of signs and orientations.
constexpr int kAnchorA[4] = {3, 1, 1, 3};    // A-state arcs {3,0} and {1,2}
constexpr int kAnchorB[4] = {0, 0, 2, 2};    // B-state arcs {0,1} and {2,3}
constexpr int kPartnerA[4] = {3, 2, 1, 0};
constexpr int kPartnerB[4] = {1, 0, 3, 2};

Engine build_engine(const GaussCode& g, const Involution& sigma,
                    const std::vector<bool>& reversed, int free_loops) {
  Engine e;
  e.sigma = sigma;
  e.base_circles = free_loops;

  std::map<int, std::pair<int, int>> passes;  // crossing -> (over, under) count
  std::map<int, int> sign_of;
  for (const GaussStrand& s : g.strands)
    for (const GaussPassage& p : s.passages) {
      auto& [ov, un] = passes[p.crossing];
      (p.over ? ov : un)++;
      if (p.sign != 1 && p.sign != -1)
        throw InvalidDiagram("gauss code: crossing " +
                             std::to_string(p.crossing) + " has no sign");
      auto [it, fresh] = sign_of.emplace(p.crossing, p.sign);
      if (!fresh && it->second != p.sign)
        throw InvalidDiagram("gauss code: crossing " +
                             std::to_string(p.crossing) +
                             " has inconsistent signs");
    }
  for (const auto& [id, cnt] : passes) {
    if (cnt.first != 1 || cnt.second != 1)
      throw InvalidDiagram("gauss code: crossing " + std::to_string(id) +
                           " must appear once over and once under");
    e.ids.push_back(id);
  }
  e.C = (int)e.ids.size();
  e.L = sigma.size();
  std::map<int, int> index;
  for (int i = 0; i < e.C; ++i) index[e.ids[i]] = i;

  int nodes = 4 * e.C + e.L;
  e.arc.assign(nodes, -1);
  e.inflow.assign(4 * e.C, 0);
  auto link = [&e](int x, int y) {
    if (e.arc[x] != -1 || e.arc[y] != -1)
      throw InvalidDiagram("gauss code: inconsistent strand structure");
    e.arc[x] = y;
    e.arc[y] = x;
  };

  for (int si = 0; si < (int)g.strands.size(); ++si) {
    const GaussStrand& s = g.strands[si];
    if (s.closed && s.passages.empty()) continue;
    bool rev = si < (int)reversed.size() && reversed[si];
    int prev = s.closed ? -1 : 4 * e.C + s.foot_label - 1;
    int first = -1;
    for (const GaussPassage& p : s.passages) {
      int ci = index.at(p.crossing);
      int entry = p.over ? 0 : (p.sign > 0 ? 1 : 3);
      int exit = (entry + 2) % 4;
      int eff_in = rev ? exit : entry;
      e.inflow[4 * ci + eff_in] = 1;
      e.inflow[4 * ci + (eff_in + 2) % 4] = -1;
      if (prev >= 0)
        link(prev, 4 * ci + entry);
      else
        first = 4 * ci + entry;
      prev = 4 * ci + exit;
    }
    if (s.closed)
      link(prev, first);
    else
      link(prev, 4 * e.C + s.head_label - 1);
  }
  for (int x = 0; x < nodes; ++x)
    if (e.arc[x] == -1)
      throw InvalidDiagram("gauss code: dangling strand node");
  return e;
}

// Cyclic reduction of a cusp word (letters +1 left / -1 right); adjacent
// equal letters cancel.  Returns half the surviving length.
int reduce_word(const std::vector<signed char>& w) {
  std::vector<signed char> st;
  for (signed char c : w) {
    if (!st.empty() && st.back() == c)
      st.pop_back();
    else
      st.push_back(c);
  }
  size_t lo = 0, hi = st.size();
  while (hi - lo >= 2 && st[lo] == st[hi - 1]) {
    ++lo;
    --hi;
  }
  if ((hi - lo) % 2 != 0)
    throw Error("internal: odd cusp word in state sum");
  return (int)((hi - lo) / 2);
}

void trace_states(const Engine& e, std::uint64_t lo, std::uint64_t hi,
                  ArrowPoly& out) {
  const int C = e.C;
  std::vector<LaurentPoly> dpow;
  {
    int maxd = C + e.L + e.base_circles + 2;
    dpow.resize(maxd + 1);
    dpow[0] = LaurentPoly::one();
    for (int i = 1; i <= maxd; ++i) dpow[i] = dpow[i - 1] * bracket_loop_value();
  }
  const int nodes = 4 * C + e.L;
  std::vector<int> partner(4 * C);
  std::vector<signed char> cusped(4 * C), anchor(4 * C);
  std::vector<char> visited(nodes), used(e.L + 1);
  std::vector<int> path_other(e.L + 1);
  std::vector<char> path_start(e.L + 1);
  std::vector<std::vector<signed char>> path_word(e.L + 1);

  for (std::uint64_t state = lo; state < hi; ++state) {
    int alpha = 0;
    for (int ci = 0; ci < C; ++ci) {
      bool a_state = !((state >> ci) & 1);
      alpha += a_state ? 1 : -1;
      const int* part = a_state ? kPartnerA : kPartnerB;
      const int* anch = a_state ? kAnchorA : kAnchorB;
      for (int s = 0; s < 4; ++s) {
        partner[4 * ci + s] = 4 * ci + part[s];
        anchor[4 * ci + s] = (signed char)anch[s];
        cusped[4 * ci + s] =
            (signed char)(e.inflow[4 * ci + s] == e.inflow[4 * ci + part[s]]);
      }
    }
    std::fill(visited.begin(), visited.end(), 0);
    std::vector<int> kfactors;
    int circles = e.base_circles;

    // Open segments, one starting at each label.
    for (int lab = 1; lab <= e.L; ++lab) {
      int n0 = 4 * C + lab - 1;
      if (visited[n0]) continue;
      visited[n0] = 1;
      std::vector<signed char> word;
      int cur = e.arc[n0];
      for (;;) {
        if (cur >= 4 * C) {
          visited[cur] = 1;
          int lab2 = cur - 4 * C + 1;
          path_other[lab] = lab2;
          path_other[lab2] = lab;
          path_start[lab] = 1;
          path_start[lab2] = 0;
          path_word[lab] = std::move(word);
          break;
        }
        visited[cur] = 1;
        if (cusped[cur])
          word.push_back((signed char)((cur & 3) == anchor[cur] ? 1 : -1));
        int nxt = partner[cur];
        visited[nxt] = 1;
        cur = e.arc[nxt];
      }
    }

    // Closed loops in what remains.
    for (int n0 = 0; n0 < 4 * C; ++n0) {
      if (visited[n0]) continue;
      std::vector<signed char> word;
      int cur = n0;
      do {
        visited[cur] = 1;
        if (cusped[cur])
          word.push_back((signed char)((cur & 3) == anchor[cur] ? 1 : -1));
        int nxt = partner[cur];
        visited[nxt] = 1;
        cur = e.arc[nxt];
      } while (cur != n0);
      ++circles;
      int k = reduce_word(word);
      if (k > 0) kfactors.push_back(k);
    }

    // Glue segments into cycles with sigma.
    int segcycles = 0;
    std::fill(used.begin(), used.end(), 0);
    for (int lab = 1; lab <= e.L; ++lab) {
      if (used[lab]) continue;
      std::vector<signed char> word;
      int cur = lab;
      do {
        used[cur] = 1;
        int other = path_other[cur];
        used[other] = 1;
        if (path_start[cur]) {
          const auto& w = path_word[cur];
          word.insert(word.end(), w.begin(), w.end());
        } else {
          const auto& w = path_word[other];
          for (auto it = w.rbegin(); it != w.rend(); ++it)
            word.push_back((signed char)-*it);
        }
        cur = e.sigma(other);
      } while (cur != lab);
      ++segcycles;
      int k = reduce_word(word);
      if (k > 0) kfactors.push_back(k);
    }

    int dexp = circles + segcycles - 1;
    if (dexp < 0) throw Error("internal: empty state in state sum");
    ArrowMono mono;
    std::sort(kfactors.begin(), kfactors.end());
    for (size_t i = 0; i < kfactors.size();) {
      size_t j = i;
      while (j < kfactors.size() && kfactors[j] == kfactors[i]) ++j;
      mono.ks.push_back({kfactors[i], (int)(j - i)});
      i = j;
    }
    for (const auto& [ex, co] : dpow[dexp].terms()) {
      mono.a = ex + alpha;
      out.add_term(mono, co);
    }
  }
}

ArrowPoly arrow_sum(const GaussCode& g, const Involution& sigma,
                    const StateSumOptions& opts) {
  ClosedTraversal ct = gauss_closure(g, sigma);
  Engine e = build_engine(g, sigma, ct.reversed, ct.free_loops);
  if (e.C > opts.max_crossings)
    throw TooLarge("state sum over " + std::to_string(e.C) +
                   " crossings exceeds the limit of " +
                   std::to_string(opts.max_crossings));
  if (e.C == 0 && e.L == 0 && e.base_circles == 0) return ArrowPoly::one();

  std::uint64_t total = 1ull << e.C;
  int threads = std::max(1, opts.threads);
  if (threads == 1 || e.C < 16) {
    ArrowPoly acc;
    trace_states(e, 0, total, acc);
    return acc;
  }
  threads = std::min<std::uint64_t>(threads, 64);
  std::vector<ArrowPoly> parts(threads);
  std::vector<std::thread> pool;
  std::uint64_t chunk = (total + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::uint64_t lo = chunk * t, hi = std::min(total, chunk * (t + 1));
    if (lo >= hi) continue;
    pool.emplace_back([&e, lo, hi, &parts, t] { trace_states(e, lo, hi, parts[t]); });
  }
  for (std::thread& th : pool) th.join();
  ArrowPoly acc;
  for (const ArrowPoly& p : parts) acc += p;
  return acc;
}

int closure_writhe(const GaussCode& g, const Involution& sigma) {
  ClosedTraversal ct = gauss_closure(g, sigma);
  std::map<int, int> sgn;
  for (const auto& comp : ct.components)
    for (const GaussPassage& p : comp.passages) sgn[p.crossing] = p.sign;
  int w = 0;
  for (const auto& [id, s] : sgn) w += s;
  return w;
}

}  // namespace

LaurentPoly bracket(const GaussCode& g, const Involution& sigma,
                    const StateSumOptions& opts) {
  return arrow_sum(g, sigma, opts).substitute_k_one();
}

LaurentPoly jones(const GaussCode& g, const Involution& sigma,
                  const StateSumOptions& opts) {
  return writhe_normalization(closure_writhe(g, sigma)) * bracket(g, sigma, opts);
}

ArrowPoly arrow(const GaussCode& g, const Involution& sigma,
                const StateSumOptions& opts) {
  return arrow_sum(g, sigma, opts);
}

AffineResult affine_index(const GaussCode& g, const Involution& sigma) {
  ClosedTraversal ct = gauss_closure(g, sigma);
  if ((int)ct.components.size() != 1 || ct.free_loops > 0)
    throw MultiComponent("affine index needs a 1-component closure");
  const std::vector<GaussPassage>& ps = ct.components[0].passages;
  int n = (int)ps.size();

  // Arc labels around the loop: a passage on the left of its counterpart
  // decrements, one on the right increments.
  auto decrements = [](const GaussPassage& p) { return p.over == (p.sign > 0); };
  std::vector<int> lab(n + 1, 0);
  for (int i = 0; i < n; ++i) lab[i + 1] = lab[i] + (decrements(ps[i]) ? -1 : 1);
  if (lab[n] != 0) throw Error("internal: affine labels fail to close up");

  std::map<int, std::pair<int, int>> pos;
  for (int i = 0; i < n; ++i) {
    auto [it, fresh] = pos.emplace(ps[i].crossing, std::make_pair(i, -1));
    if (!fresh) it->second.second = i;
  }
  AffineResult r;
  for (const auto& [id, ij] : pos) {
    int i = ij.first, j = ij.second;
    if (j < 0)
      throw InvalidDiagram("gauss code: crossing " + std::to_string(id) +
                           " appears once");
    int dec = decrements(ps[i]) ? i : j;
    int inc = dec == i ? j : i;
    int wplus = lab[dec] - lab[inc] - 1;
    int s = ps[i].sign;
    int wk = s > 0 ? wplus : -wplus;
    r.weights[id] = wk;
    r.poly.add_term(wk, s);
    r.poly.add_term(0, -s);
  }
  return r;
}

OddWritheResult odd_writhe(const GaussCode& g, const Involution& sigma) {
  ClosedTraversal ct = gauss_closure(g, sigma);
  if ((int)ct.components.size() != 1 || ct.free_loops > 0)
    throw MultiComponent("odd writhe needs a 1-component closure");
  const std::vector<GaussPassage>& ps = ct.components[0].passages;
  std::map<int, std::pair<int, int>> pos;
  for (int i = 0; i < (int)ps.size(); ++i) {
    auto [it, fresh] = pos.emplace(ps[i].crossing, std::make_pair(i, -1));
    if (!fresh) it->second.second = i;
  }
  OddWritheResult r;
  for (const auto& [id, ij] : pos) {
    if (ij.second < 0)
      throw InvalidDiagram("gauss code: crossing " + std::to_string(id) +
                           " appears once");
    if ((ij.second - ij.first - 1) % 2 != 0) {
      r.odd_crossings.push_back(id);
      r.value += ps[ij.first].sign;
    }
  }
  return r;
}

int height_bound(const PlanarDiagram& d, const Involution& sigma) {
  return reduce_virtual(virtual_closure(d, sigma)).virtual_count;
}

int genus_bound(const ClosedVirtualDiagram& c) {
  // Ribbon surface of the closed diagram: virtual crossings pass through, so
  // contract them away and take Euler characteristics per component.
  std::set<int> virtuals;
  for (const auto& [id, v] : c.diagram.vertices)
    if (v.kind == VertexKind::Virtual) virtuals.insert(id);

  PlanarDiagram contracted;
  for (const auto& [id, v] : c.diagram.vertices)
    if (!virtuals.count(id)) contracted.vertices[id] = v;
  for (const Strand& s : c.diagram.strands) {
    Strand t;
    t.closed = true;
    for (const Passage& p : s.passages)
      if (!virtuals.count(p.v)) t.passages.push_back(p);
    if (!t.passages.empty()) contracted.strands.push_back(std::move(t));
  }
  if (contracted.strands.empty()) return 0;

  std::map<Port, Port> adj = contracted.adjacency();
  FaceSet fs = compute_faces(adj, [](int) { return 4; });

  std::vector<int> verts;
  for (const auto& [id, v] : contracted.vertices) verts.push_back(id);
  std::map<int, int> dense;
  for (int i = 0; i < (int)verts.size(); ++i) dense[verts[i]] = i;
  std::vector<int> parent(verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&parent, &find](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& [p, q] : adj) {
    int a = find(dense.at(p.v)), b = find(dense.at(q.v));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  std::map<int, int> vcount, fcount;
  for (int i = 0; i < (int)verts.size(); ++i) vcount[find(i)]++;
  for (const std::vector<Port>& face : fs.faces)
    fcount[find(dense.at(face.front().v))]++;

  int genus = 0;
  for (const auto& [root, nv] : vcount) {
    int chi = nv - 2 * nv + fcount[root];  // E = 2V for 4-valent graphs
    if ((2 - chi) % 2 != 0 || chi > 2)
      throw Error("internal: bad Euler characteristic in genus bound");
    genus += (2 - chi) / 2;
  }
  return genus;
}

InvariantReport report(const PlanarDiagram& d, const Involution& sigma,
                       const StateSumOptions& opts) {
  InvariantReport r;
  r.sigma = sigma;
  GaussCode g = d.to_gauss();
  ClosedVirtualDiagram closure = virtual_closure(d, sigma);
  ClosedVirtualDiagram reduced = reduce_virtual(closure);
  r.component_count = closure.component_count;
  r.writhe = closure_writhe(g, sigma);
  r.arrow = arrow_sum(g, sigma, opts);
  r.bracket = r.arrow.substitute_k_one();
  r.jones = writhe_normalization(r.writhe) * r.bracket;
  if (r.component_count == 1) {
    r.affine = affine_index(g, sigma);
    r.odd_writhe = odd_writhe(g, sigma);
  }
  r.height_bound = reduced.virtual_count;
  r.genus_bound = genus_bound(reduced);
  return r;
}

}  // namespace linkoid
