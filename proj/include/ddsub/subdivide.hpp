// Generic subdivision engine and its Plantinga-Vegter instantiation.
//
// Boxes are bisected along every axis into 2^n children, so each child has
// 2^-n of the parent's measure and half of its diameter. The frontier is
// processed breadth-first; nodes on one level may be evaluated by several
// threads, and results are written back by index so the output does not
// depend on scheduling.

#ifndef DDSUB_SUBDIVIDE_HPP
#define DDSUB_SUBDIVIDE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddsub/interval.hpp"
#include "ddsub/poly.hpp"
#include "ddsub/predicates.hpp"

namespace ddsub {

struct EngineConfig {
  unsigned max_depth = 24;
  unsigned parallelism = 1;
  /// Keep every visited node (not only the terminal ones) in the result.
  bool record_tree = false;
};

enum class NodeStatus { Split, AcceptedC0, AcceptedC1, DepthCapped };

const char* to_string(NodeStatus s);
NodeStatus parse_status(std::string_view text);

/// Child index bit i set means the child lies on the + side of axis i.
using NodePath = std::vector<std::uint32_t>;

std::string path_string(const NodePath& path);
NodePath parse_path(std::string_view text);

struct TreeNode {
  NodePath path;
  Box box;
  NodeStatus status = NodeStatus::Split;
  /// Index of the accepting criterion (run_generic); 0 = C0, 1 = C1 for run_pv.
  std::optional<std::size_t> criterion;
  /// Predicate enclosures; only filled by run_pv.
  std::optional<PredicateOutcome> outcome;

  std::size_t depth() const { return path.size(); }
};

struct SubdivisionCounts {
  std::size_t c0_accepted = 0;
  std::size_t c1_accepted = 0;
  std::size_t split = 0;
  std::size_t depth_capped = 0;

  std::size_t terminal() const { return c0_accepted + c1_accepted + depth_capped; }
  friend bool operator==(const SubdivisionCounts&, const SubdivisionCounts&) = default;
};

struct SubdivisionResult {
  Box input;
  /// Terminal nodes in lexicographic path order.
  std::vector<TreeNode> terminal;
  /// Every visited node in breadth-first order; empty unless record_tree.
  std::vector<TreeNode> tree;
  SubdivisionCounts counts;
  std::size_t max_depth_reached = 0;
  std::size_t total_nodes = 0;
  /// Sum over visited nodes of (depth + bit size of the input box): the bit
  /// size of the Taylor-shift center used at that node.
  std::uint64_t taylor_shift_bit_total = 0;
};

/// The 2^n children of J in child-index order.
std::vector<Box> subdivide_box(const Box& J);

using Criterion = std::function<bool(const Box&)>;

/// Subdivides I until some criterion holds on each region or max_depth is
/// reached. Criterion i accepting a node yields status AcceptedC0 for i = 0
/// and AcceptedC1 otherwise; `criterion` records i.
SubdivisionResult run_generic(const Box& I, std::span<const Criterion> criteria, const EngineConfig& cfg);

/// Subdivision with C0 then C1 on g = gradient_pair(f). The Taylor shifts
/// of f and g are carried down the tree: a child's shifted polynomial is the
/// parent's shifted by the half-width offset of the child center.
SubdivisionResult run_pv(const MultiPoly& f, const Box& I, const EngineConfig& cfg);

/// Bit size of the input box coordinates: max over center coordinates and
/// half-width of Dyadic::bit_size().
std::size_t input_bit_size(const Box& I);

/// Sum of terminal measures; equals I.measure() for a partition.
Rational terminal_measure(const SubdivisionResult& r);

/// Integer coordinates of a node relative to the input box: the node spans
/// [idx, idx + 1] * 2^-depth of the input width along each axis.
std::vector<std::uint64_t> grid_index(const NodePath& path, std::size_t nvars);

// ---------------------------------------------------------------------------
// Record files

/// Line-oriented record format:
///
///   ddsub-records 1
///   nvars <n>
///   input center=<d>,<d>,... halfwidth=<d>
///   counts c0=<k> c1=<k> split=<k> capped=<k> total=<k> max_depth=<k>
///   node path=<p> status=<s> center=<d>,... halfwidth=<d>
///   ...
///   end
///
/// <d> is a dyadic written m*2^e; <p> is "-" for the root or dot-separated
/// child indices.
void write_records(std::ostream& out, const SubdivisionResult& r);

struct RecordSet {
  Box input;
  SubdivisionCounts counts;
  std::size_t total_nodes = 0;
  std::size_t max_depth_reached = 0;
  std::vector<TreeNode> terminal;
};

RecordSet read_records(std::istream& in);

}  // namespace ddsub

#endif  // DDSUB_SUBDIVIDE_HPP
