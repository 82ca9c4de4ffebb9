#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ddsub/families.hpp"
#include "ddsub/mesh2d.hpp"

using namespace ddsub;

namespace {

Box square(const char* h) { return Box({Dyadic(0), Dyadic(0)}, Dyadic::parse(h)); }

SubdivisionResult pv(const MultiPoly& f, const Box& I, unsigned depth = 24) {
  EngineConfig c;
  c.max_depth = depth;
  return run_pv(f, I, c);
}

struct Meshed {
  BalancedTree tree;
  Mesh2D mesh;
  MeshTopology topo;
};

Meshed mesh_of(const MultiPoly& f, const Box& I) {
  Meshed m{balance(pv(f, I)), {}, {}};
  m.mesh = extract_segments(f, m.tree, corner_signs(f, m.tree));
  m.topo = analyze_topology(m.mesh);
  return m;
}

Rational tree_measure(const BalancedTree& t) {
  Rational s(0);
  for (const auto& l : t.leaves) s += l.box.measure();
  return s;
}

CornerKey key_of(const BalancedTree& t, const Rational& x, const Rational& y) {
  const Rational unit = t.input.width().to_rational() / Rational(Integer(1) << t.resolution);
  const Rational kx = (x - t.input.lower(0).to_rational()) / unit;
  const Rational ky = (y - t.input.lower(1).to_rational()) / unit;
  REQUIRE(kx.get_den() == 1);
  REQUIRE(ky.get_den() == 1);
  return {kx.get_num().get_ui(), ky.get_num().get_ui()};
}

BalancedTree single_leaf(const Box& I) {
  return BalancedTree{I, {TreeNode{{}, I, NodeStatus::AcceptedC1, 1, std::nullopt}}, 0};
}

}  // namespace

TEST_SUITE("mesh2d") {
  TEST_CASE("uniform grids are already balanced") {
    const Criterion small = [](const Box& b) { return b.width() <= Dyadic(1); };
    EngineConfig c;
    c.max_depth = 10;
    const SubdivisionResult r = run_generic(square("2"), std::span<const Criterion>(&small, 1), c);
    const BalancedTree t = balance(r);
    CHECK(t.leaves.size() == r.terminal.size());
    CHECK(is_balanced(t));
  }

  TEST_CASE("a coarse leaf next to deep leaves is split") {
    // right half stops at depth 1, left half goes to depth 3
    const Criterion c0 = [](const Box& b) { return b.center()[0] > Dyadic(0) || b.width() <= Dyadic::parse("1/2"); };
    EngineConfig c;
    c.max_depth = 10;
    const SubdivisionResult r = run_generic(square("2"), std::span<const Criterion>(&c0, 1), c);
    const BalancedTree raw{r.input, r.terminal, 3};
    CHECK_FALSE(is_balanced(raw));
    const BalancedTree t = balance(r);
    CHECK(is_balanced(t));
    CHECK(t.leaves.size() > r.terminal.size());
    CHECK(tree_measure(t) == r.input.measure());
    for (const auto& l : t.leaves) CHECK(l.status == NodeStatus::AcceptedC0);
  }

  TEST_CASE("balancing a circle run") {
    const SubdivisionResult r = pv(parse_poly("x1^2 + x2^2 - 1", 2), square("2"));
    const BalancedTree t = balance(r);
    CHECK(is_balanced(t));
    CHECK(tree_measure(t) == square("2").measure());
  }

  TEST_CASE("balancing refuses capped and non-planar input") {
    CHECK_THROWS_AS(balance(pv(parse_poly("x1^2 - x2^2", 2), square("2"), 5)), std::invalid_argument);
    CHECK_THROWS_AS(balance(pv(parse_poly("x1 + x2 + x3", 3), Box::cube(3, Dyadic(0), Dyadic(1)))),
                    std::invalid_argument);
  }

  TEST_CASE("corner signs") {
    const MultiPoly f = parse_poly("x1^2 + x2^2 - 1", 2);
    const BalancedTree t = balance(pv(f, square("2")));
    const auto signs = corner_signs(f, t);
    CHECK(signs.at(key_of(t, 0, 0)) == -1);
    CHECK(signs.at(key_of(t, 1, 0)) == 0);
    CHECK(signs.at(key_of(t, 2, 2)) == 1);
    for (const auto& [k, s] : signs) {
      const auto p = corner_point(t, k);
      CHECK(s == sgn(evaluate(f, std::span<const Rational>(p.data(), 2))));
    }
  }

  TEST_CASE("single-leaf segment rules") {
    const Box I = square("1");
    const BalancedTree t = single_leaf(I);
    const MultiPoly pos = parse_poly("x1 + x2 + 3", 2);
    CHECK(extract_segments(pos, t, corner_signs(pos, t)).segments.empty());

    // only the (-1, -1) corner is negative
    const MultiPoly one = parse_poly("x1 + x2 + 3/2", 2);
    const Mesh2D m = extract_segments(one, t, corner_signs(one, t));
    REQUIRE(m.segments.size() == 1);
    REQUIRE(m.vertices.size() == 2);
    std::set<std::array<Rational, 2>> vs(m.vertices.begin(), m.vertices.end());
    CHECK(vs.count({Rational(0), Rational(-1)}) == 1);
    CHECK(vs.count({Rational(-1), Rational(0)}) == 1);

    // a zero corner counts as positive
    const MultiPoly touch = parse_poly("x1 + x2 + 2", 2);
    CHECK(extract_segments(touch, t, corner_signs(touch, t)).segments.empty());
  }

  TEST_CASE("four crossings are paired by the center sign") {
    const Box I = square("1");
    const BalancedTree t = single_leaf(I);
    // saddle x1 x2 + c: corners +,-,-,+ ; center sign decides the pairing
    for (const char* text : {"x1 x2 + 1/4", "x1 x2 - 1/4"}) {
      const MultiPoly f = parse_poly(text, 2);
      const Mesh2D m = extract_segments(f, t, corner_signs(f, t));
      REQUIRE(m.segments.size() == 2);
      const MeshTopology topo = analyze_topology(m);
      CHECK(topo.components == 2);
      CHECK(topo.max_degree == 1);
      const Rational c = evaluate(f, std::vector<Rational>{0, 0});
      // each segment cuts off the corner whose sign differs from the center
      for (const auto& [a, b] : m.segments) {
        const auto& p = m.vertices[a];
        const auto& q = m.vertices[b];
        const Rational mx = (p[0] + q[0]) / 2, my = (p[1] + q[1]) / 2;
        CHECK(sgn(evaluate(f, std::vector<Rational>{mx * 2, my * 2})) != sgn(c));
      }
    }
  }

  TEST_CASE("one circle gives one closed loop") {
    const Meshed m = mesh_of(parse_poly("x1^2 + x2^2 - 1", 2), square("2"));
    CHECK(m.topo.components == 1);
    CHECK(m.topo.closed_loops == 1);
    CHECK(m.topo.open_chains == 0);
    CHECK(m.mesh.vertices.size() == m.mesh.segments.size());
    CHECK(m.topo.max_degree == 2);
  }

  TEST_CASE("two disjoint circles give two closed loops") {
    const Meshed m = mesh_of(two_circles_poly(), square("8"));
    CHECK(m.topo.components == 2);
    CHECK(m.topo.closed_loops == 2);
    CHECK(m.mesh.vertices.size() == m.mesh.segments.size());
  }

  TEST_CASE("constant polynomial gives an empty mesh") {
    const Meshed m = mesh_of(parse_poly("3", 2), square("2"));
    CHECK(m.mesh.vertices.empty());
    CHECK(m.topo.components == 0);
  }

  TEST_CASE("vertices are midpoints of sign-changing leaf edges near the curve") {
    const MultiPoly f = parse_poly("x1^2 + 2 x2^2 - x1 x2 - 1", 2);
    const Meshed m = mesh_of(f, square("2"));
    CHECK(m.topo.closed_loops == 1);
    for (std::size_t s = 0; s < m.mesh.segments.size(); ++s) {
      const TreeNode& leaf = m.tree.leaves[m.mesh.segment_leaf[s]];
      const IntervalR enc = centered_form(f, leaf.box);
      for (std::size_t v : {m.mesh.segments[s].first, m.mesh.segments[s].second}) {
        const auto& p = m.mesh.vertices[v];
        const std::vector<Rational> pt{p[0], p[1]};
        CHECK(leaf.box.contains(pt));
        // on the boundary of the leaf
        const bool on_edge = p[0] == leaf.box.lower(0).to_rational() || p[0] == leaf.box.upper(0).to_rational() ||
                             p[1] == leaf.box.lower(1).to_rational() || p[1] == leaf.box.upper(1).to_rational();
        CHECK(on_edge);
        const Rational fv = evaluate(f, std::span<const Rational>(pt));
        CHECK(enc.contains(fv));
      }
    }
  }

  TEST_CASE("mesh files round-trip") {
    const Meshed m = mesh_of(two_circles_poly(), square("8"));
    std::stringstream s;
    write_mesh(s, m.mesh);
    const Mesh2D back = read_mesh(s);
    CHECK(back.vertices == m.mesh.vertices);
    CHECK(back.segments == m.mesh.segments);
    std::stringstream bad("ddsub-mesh 1\nvertices 1\nv 0\nsegments 0\nend\n");
    CHECK_THROWS(read_mesh(bad));
  }

  TEST_CASE("svg of a single box") {
    std::stringstream s;
    const Box I = square("1");
    const TreeNode leaf{{}, I, NodeStatus::AcceptedC0, 0, std::nullopt};
    emit_svg(s, I, std::span<const TreeNode>(&leaf, 1), nullptr);
    const std::string svg = s.str();
    std::size_t rects = 0;
    for (std::size_t at = svg.find("<rect"); at != std::string::npos; at = svg.find("<rect", at + 1)) ++rects;
    CHECK(rects == 2);  // background plus the leaf
    CHECK(svg.find("<rect x=\"0.000000\" y=\"0.000000\" width=\"512.000000\" height=\"512.000000\"") !=
          std::string::npos);
    CHECK(svg.find("<line") == std::string::npos);
  }

  TEST_CASE("circle svg matches the golden file") {
    const Meshed m = mesh_of(parse_poly("x1^2 + x2^2 - 1", 2), square("2"));
    std::stringstream s;
    emit_svg(s, m.tree.input, m.tree.leaves, &m.mesh);
    std::ifstream golden(DDSUB_GOLDEN_DIR "/circle.svg");
    REQUIRE(golden.good());
    std::stringstream want;
    want << golden.rdbuf();
    CHECK(s.str() == want.str());
  }
}
