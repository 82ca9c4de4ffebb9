#include "ddsub/mesh2d.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace ddsub {

namespace {

struct Cell {
  std::size_t k;
  std::uint64_t i, j;
  auto operator<=>(const Cell&) const = default;
};

Cell cell_of(const NodePath& path) {
  const auto idx = grid_index(path, 2);
  return {path.size(), idx[0], idx[1]};
}

bool needs_split(const Cell& c, const std::set<Cell>& internal) {
  const std::uint64_t side = std::uint64_t{1} << c.k;
  const int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (const auto& d : dirs) {
    if ((d[0] < 0 && c.i == 0) || (d[1] < 0 && c.j == 0)) continue;
    const std::uint64_t ni = c.i + d[0], nj = c.j + d[1];
    if (ni >= side || nj >= side) continue;
    if (!internal.count({c.k, ni, nj})) continue;
    // the two children of the neighbour that touch c
    for (std::uint64_t b = 0; b < 2; ++b) {
      Cell child{c.k + 1, 0, 0};
      if (d[0] != 0) {
        child.i = 2 * ni + (d[0] < 0 ? 1 : 0);
        child.j = 2 * nj + b;
      } else {
        child.i = 2 * ni + b;
        child.j = 2 * nj + (d[1] < 0 ? 1 : 0);
      }
      if (internal.count(child)) return true;
    }
  }
  return false;
}

struct Rect {
  std::uint64_t x0, y0, x1, y1;
};

Rect rect_of(const TreeNode& leaf, std::size_t resolution) {
  const auto idx = grid_index(leaf.path, 2);
  const std::uint64_t s = std::uint64_t{1} << (resolution - leaf.depth());
  return {idx[0] * s, idx[1] * s, (idx[0] + 1) * s, (idx[1] + 1) * s};
}

int sign_of(const Rational& q) { return sgn(q); }

}  // namespace

BalancedTree balance(const SubdivisionResult& result) {
  if (result.input.nvars() != 2) throw std::invalid_argument("balance: planar input required");
  if (result.counts.depth_capped > 0) throw std::invalid_argument("balance: run has depth-capped leaves");

  std::map<Cell, TreeNode> leaves;
  std::set<Cell> internal;
  for (const auto& t : result.terminal) {
    if (t.status == NodeStatus::DepthCapped) throw std::invalid_argument("balance: run has depth-capped leaves");
    leaves.emplace(cell_of(t.path), t);
    NodePath prefix;
    for (const auto k : t.path) {
      internal.insert(cell_of(prefix));
      prefix.push_back(k);
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Cell> to_split;
    for (const auto& [c, node] : leaves)
      if (needs_split(c, internal)) to_split.push_back(c);
    for (const auto& c : to_split) {
      TreeNode parent = std::move(leaves.at(c));
      leaves.erase(c);
      internal.insert(c);
      std::vector<Box> boxes = subdivide_box(parent.box);
      for (std::uint32_t ci = 0; ci < 4; ++ci) {
        NodePath p = parent.path;
        p.push_back(ci);
        TreeNode child{std::move(p), std::move(boxes[ci]), parent.status, parent.criterion, std::nullopt};
        leaves.emplace(Cell{c.k + 1, 2 * c.i + (ci & 1U), 2 * c.j + (ci >> 1)}, std::move(child));
      }
      changed = true;
    }
  }

  BalancedTree tree{result.input, {}, 0};
  for (auto& [c, node] : leaves) {
    tree.resolution = std::max(tree.resolution, node.depth());
    tree.leaves.push_back(std::move(node));
  }
  std::sort(tree.leaves.begin(), tree.leaves.end(),
            [](const TreeNode& a, const TreeNode& b) { return a.path < b.path; });
  return tree;
}

bool is_balanced(const BalancedTree& tree) {
  std::vector<Rect> rects;
  for (const auto& l : tree.leaves) rects.push_back(rect_of(l, tree.resolution));
  for (std::size_t a = 0; a < rects.size(); ++a) {
    for (std::size_t b = a + 1; b < rects.size(); ++b) {
      const Rect& p = rects[a];
      const Rect& q = rects[b];
      const bool vertical = (p.x1 == q.x0 || q.x1 == p.x0) && std::min(p.y1, q.y1) > std::max(p.y0, q.y0);
      const bool horizontal = (p.y1 == q.y0 || q.y1 == p.y0) && std::min(p.x1, q.x1) > std::max(p.x0, q.x0);
      if (!vertical && !horizontal) continue;
      const auto da = tree.leaves[a].depth(), db = tree.leaves[b].depth();
      if ((da > db ? da - db : db - da) > 1) return false;
    }
  }
  return true;
}

std::array<Rational, 2> corner_point(const BalancedTree& tree, const CornerKey& key) {
  Rational unit = tree.input.width().to_rational();
  unit /= Rational(Integer(1) << static_cast<mp_bitcnt_t>(tree.resolution));
  Rational x = tree.input.lower(0).to_rational() + unit * Rational(Integer(std::to_string(key.first)));
  Rational y = tree.input.lower(1).to_rational() + unit * Rational(Integer(std::to_string(key.second)));
  return {x, y};
}

std::map<CornerKey, int> corner_signs(const MultiPoly& f, const BalancedTree& tree) {
  if (f.nvars() != 2) throw std::invalid_argument("corner_signs: planar polynomial required");
  std::map<CornerKey, int> signs;
  for (const auto& leaf : tree.leaves) {
    const Rect r = rect_of(leaf, tree.resolution);
    for (const CornerKey& key : {CornerKey{r.x0, r.y0}, CornerKey{r.x1, r.y0}, CornerKey{r.x1, r.y1},
                                CornerKey{r.x0, r.y1}}) {
      if (signs.count(key)) continue;
      const auto p = corner_point(tree, key);
      signs[key] = sign_of(evaluate(f, std::span<const Rational>(p)));
    }
  }
  return signs;
}

Mesh2D extract_segments(const MultiPoly& f, const BalancedTree& tree, const std::map<CornerKey, int>& signs) {
  Mesh2D mesh;
  std::map<CornerKey, std::size_t> vertex_of;  // keys in half units
  std::set<std::pair<std::size_t, std::size_t>> seen;

  auto sg = [&](const CornerKey& k) {
    const auto it = signs.find(k);
    if (it == signs.end()) throw std::invalid_argument("extract_segments: missing corner sign");
    return it->second >= 0 ? 1 : -1;
  };
  auto vertex = [&](const CornerKey& a, const CornerKey& b) {
    const CornerKey key{a.first + b.first, a.second + b.second};
    const auto it = vertex_of.find(key);
    if (it != vertex_of.end()) return it->second;
    BalancedTree half{tree.input, {}, tree.resolution + 1};
    mesh.vertices.push_back(corner_point(half, key));
    vertex_of.emplace(key, mesh.vertices.size() - 1);
    return mesh.vertices.size() - 1;
  };
  auto add_segment = [&](std::size_t a, std::size_t b, std::size_t leaf) {
    if (a == b) return;
    const auto key = std::minmax(a, b);
    if (!seen.insert(key).second) return;
    mesh.segments.emplace_back(a, b);
    mesh.segment_leaf.push_back(leaf);
  };

  for (std::size_t li = 0; li < tree.leaves.size(); ++li) {
    const TreeNode& leaf = tree.leaves[li];
    if (leaf.status == NodeStatus::AcceptedC0) continue;
    const Rect r = rect_of(leaf, tree.resolution);
    const bool has_mid = leaf.depth() < tree.resolution;
    const std::uint64_t xm = (r.x0 + r.x1) / 2, ym = (r.y0 + r.y1) / 2;

    // boundary walked counter-clockwise, hanging corners included
    std::vector<CornerKey> cycle;
    auto push_mid = [&](CornerKey k) {
      if (has_mid && signs.count(k)) cycle.push_back(k);
    };
    cycle.push_back({r.x0, r.y0});
    push_mid({xm, r.y0});
    cycle.push_back({r.x1, r.y0});
    push_mid({r.x1, ym});
    cycle.push_back({r.x1, r.y1});
    push_mid({xm, r.y1});
    cycle.push_back({r.x0, r.y1});
    push_mid({r.x0, ym});

    const std::size_t m = cycle.size();
    std::vector<std::size_t> at;  // sub-edge index of each crossing
    std::vector<std::size_t> verts;
    for (std::size_t t = 0; t < m; ++t) {
      const CornerKey& a = cycle[t];
      const CornerKey& b = cycle[(t + 1) % m];
      if (sg(a) != sg(b)) {
        at.push_back(t);
        verts.push_back(vertex(a, b));
      }
    }
    const std::size_t c = verts.size();
    if (c == 0) continue;
    if (c == 2) {
      add_segment(verts[0], verts[1], li);
      continue;
    }
    std::vector<Rational> centre;
    for (const auto& x : leaf.box.center()) centre.push_back(x.to_rational());
    const int sc = sign_of(evaluate(f, std::span<const Rational>(centre))) >= 0 ? 1 : -1;
    // the arc that follows crossing 0 is cut off when c0 is joined to c1
    const int arc0 = sg(cycle[(at[0] + 1) % m]);
    const std::size_t offset = arc0 != sc ? 0 : 1;
    for (std::size_t p = 0; p < c; p += 2) add_segment(verts[(p + offset) % c], verts[(p + offset + 1) % c], li);
  }
  return mesh;
}

MeshTopology analyze_topology(const Mesh2D& mesh) {
  const std::size_t nv = mesh.vertices.size();
  std::vector<std::size_t> parent(nv), degree(nv, 0);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : mesh.segments) {
    ++degree[a];
    ++degree[b];
    parent[find(a)] = find(b);
  }
  std::map<std::size_t, std::tuple<std::size_t, std::size_t, bool>> comp;  // vertices, edges, all degree 2
  for (std::size_t v = 0; v < nv; ++v) {
    if (degree[v] == 0) continue;
    auto& [vc, ec, ok] = comp.try_emplace(find(v), 0, 0, true).first->second;
    ++vc;
    ok = ok && degree[v] == 2;
  }
  for (const auto& [a, b] : mesh.segments) ++std::get<1>(comp[find(a)]);
  MeshTopology topo;
  topo.components = comp.size();
  for (const auto& [root, t] : comp) {
    const auto& [vc, ec, ok] = t;
    if (ok && vc == ec) ++topo.closed_loops;
    else ++topo.open_chains;
  }
  for (const auto d : degree) topo.max_degree = std::max(topo.max_degree, d);
  return topo;
}

void emit_svg(std::ostream& out, const Box& input, std::span<const TreeNode> leaves, const Mesh2D* mesh) {
  if (input.nvars() != 2) throw std::invalid_argument("emit_svg: planar input required");
  constexpr double kSize = 512.0;
  const Rational w = input.width().to_rational();
  const Rational x0 = input.lower(0).to_rational();
  const Rational y1 = input.upper(1).to_rational();
  auto px = [&](const Rational& x) { return Rational((x - x0) / w).get_d() * kSize; };
  auto py = [&](const Rational& y) { return Rational((y1 - y) / w).get_d() * kSize; };
  char buf[256];

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"512\" height=\"512\" "
         "viewBox=\"0 0 512 512\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"512\" height=\"512\" fill=\"white\"/>\n"
      << "<g fill=\"none\" stroke-width=\"0.5\">\n";
  for (const auto& leaf : leaves) {
    const char* colour = "#8899aa";
    if (leaf.status == NodeStatus::AcceptedC1) colour = "#33aa77";
    else if (leaf.status == NodeStatus::DepthCapped) colour = "#ee8800";
    const double left = px(leaf.box.lower(0).to_rational());
    const double top = py(leaf.box.upper(1).to_rational());
    const double size = Rational(leaf.box.width().to_rational() / w).get_d() * kSize;
    std::snprintf(buf, sizeof buf, "<rect x=\"%.6f\" y=\"%.6f\" width=\"%.6f\" height=\"%.6f\" stroke=\"%s\"/>\n",
                  left, top, size, size, colour);
    out << buf;
  }
  out << "</g>\n";
  if (mesh && !mesh->segments.empty()) {
    out << "<g stroke=\"#cc0000\" stroke-width=\"1.5\" stroke-linecap=\"round\">\n";
    for (const auto& [a, b] : mesh->segments) {
      const auto& p = mesh->vertices[a];
      const auto& q = mesh->vertices[b];
      std::snprintf(buf, sizeof buf, "<line x1=\"%.6f\" y1=\"%.6f\" x2=\"%.6f\" y2=\"%.6f\"/>\n", px(p[0]), py(p[1]),
                    px(q[0]), py(q[1]));
      out << buf;
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
}

void write_mesh(std::ostream& out, const Mesh2D& mesh) {
  out << "ddsub-mesh 1\n";
  out << "vertices " << mesh.vertices.size() << '\n';
  for (const auto& v : mesh.vertices) out << "v " << to_string(v[0]) << ' ' << to_string(v[1]) << '\n';
  out << "segments " << mesh.segments.size() << '\n';
  for (const auto& [a, b] : mesh.segments) out << "s " << a << ' ' << b << '\n';
  out << "end\n";
}

Mesh2D read_mesh(std::istream& in) {
  std::string word;
  int version = 0;
  if (!(in >> word >> version) || word != "ddsub-mesh" || version != 1)
    throw std::runtime_error("mesh: bad header");
  std::size_t count = 0;
  if (!(in >> word >> count) || word != "vertices") throw std::runtime_error("mesh: expected vertices");
  Mesh2D mesh;
  for (std::size_t i = 0; i < count; ++i) {
    std::string x, y;
    if (!(in >> word >> x >> y) || word != "v") throw std::runtime_error("mesh: bad vertex line");
    mesh.vertices.push_back({parse_rational(x), parse_rational(y)});
  }
  if (!(in >> word >> count) || word != "segments") throw std::runtime_error("mesh: expected segments");
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t a = 0, b = 0;
    if (!(in >> word >> a >> b) || word != "s") throw std::runtime_error("mesh: bad segment line");
    if (a >= mesh.vertices.size() || b >= mesh.vertices.size()) throw std::runtime_error("mesh: index out of range");
    mesh.segments.emplace_back(a, b);
  }
  if (!(in >> word) || word != "end") throw std::runtime_error("mesh: missing end");
  return mesh;
}

}  // namespace ddsub
