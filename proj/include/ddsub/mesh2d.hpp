// Planar post-processing: quadtree balancing, corner signs, segment
// extraction and SVG output.

#ifndef DDSUB_MESH2D_HPP
#define DDSUB_MESH2D_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "ddsub/subdivide.hpp"

namespace ddsub {

struct BalancedTree {
  Box input;
  /// Leaves in lexicographic path order.
  std::vector<TreeNode> leaves;
  /// Deepest leaf; corner keys are integers on the 2^resolution grid.
  std::size_t resolution = 0;
};

/// Splits accepted leaves until edge-adjacent leaves differ in depth by at
/// most one. Children of a split leaf keep its status. Throws
/// std::invalid_argument for depth-capped or non-planar input.
BalancedTree balance(const SubdivisionResult& result);

/// Exhaustive pairwise adjacency scan.
bool is_balanced(const BalancedTree& tree);

/// Corner position in units of input width / 2^resolution, measured from
/// the lower-left corner of the input box.
using CornerKey = std::pair<std::uint64_t, std::uint64_t>;

std::array<Rational, 2> corner_point(const BalancedTree& tree, const CornerKey& key);

/// Exact sign of f at every distinct leaf corner.
std::map<CornerKey, int> corner_signs(const MultiPoly& f, const BalancedTree& tree);

struct Mesh2D {
  std::vector<std::array<Rational, 2>> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> segments;
  /// Leaf index (into BalancedTree::leaves) that produced each segment.
  std::vector<std::size_t> segment_leaf;
};

/// One vertex at the midpoint of each leaf sub-edge whose end signs differ
/// (a zero sign counts as positive); crossings inside a leaf are joined by
/// the non-crossing pairing that agrees with the sign of f at the leaf center.
Mesh2D extract_segments(const MultiPoly& f, const BalancedTree& tree, const std::map<CornerKey, int>& signs);

struct MeshTopology {
  std::size_t components = 0;
  /// Components in which every vertex has degree 2.
  std::size_t closed_loops = 0;
  std::size_t open_chains = 0;
  std::size_t max_degree = 0;
};

MeshTopology analyze_topology(const Mesh2D& mesh);

/// SVG 1.1 with leaf outlines and mesh segments. The input box is mapped to
/// a 512 x 512 canvas with y pointing up.
void emit_svg(std::ostream& out, const Box& input, std::span<const TreeNode> leaves, const Mesh2D* mesh);

/// Text form:
///   ddsub-mesh 1
///   vertices <k>
///   v <x> <y>          (exact rationals)
///   segments <m>
///   s <i> <j>
///   end
void write_mesh(std::ostream& out, const Mesh2D& mesh);
Mesh2D read_mesh(std::istream& in);

}  // namespace ddsub

#endif  // DDSUB_MESH2D_HPP
