#include "ddsub/subdivide.hpp"

#include <algorithm>
#include <exception>
#include <memory>
#include <stdexcept>
#include <thread>

namespace ddsub {

const char* to_string(NodeStatus s) {
  switch (s) {
    case NodeStatus::Split: return "SPLIT";
    case NodeStatus::AcceptedC0: return "ACCEPTED_C0";
    case NodeStatus::AcceptedC1: return "ACCEPTED_C1";
    case NodeStatus::DepthCapped: return "DEPTH_CAPPED";
  }
  return "?";
}

NodeStatus parse_status(std::string_view text) {
  if (text == "SPLIT") return NodeStatus::Split;
  if (text == "ACCEPTED_C0") return NodeStatus::AcceptedC0;
  if (text == "ACCEPTED_C1") return NodeStatus::AcceptedC1;
  if (text == "DEPTH_CAPPED") return NodeStatus::DepthCapped;
  throw std::invalid_argument("unknown node status '" + std::string(text) + "'");
}

std::string path_string(const NodePath& path) {
  if (path.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(path[i]);
  }
  return s;
}

NodePath parse_path(std::string_view text) {
  NodePath p;
  if (text == "-") return p;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t dot = text.find('.', start);
    const std::string part(text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("malformed node path '" + std::string(text) + "'");
    p.push_back(static_cast<std::uint32_t>(std::stoul(part)));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return p;
}

std::vector<Box> subdivide_box(const Box& J) {
  const std::size_t n = J.nvars();
  const Dyadic h = J.halfwidth().half();
  std::vector<Box> children;
  children.reserve(std::size_t{1} << n);
  for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
    std::vector<Dyadic> c = J.center();
    for (std::size_t i = 0; i < n; ++i) c[i] = ((k >> i) & 1U) ? c[i] + h : c[i] - h;
    children.emplace_back(std::move(c), h);
  }
  return children;
}

std::size_t input_bit_size(const Box& I) {
  std::size_t b = I.halfwidth().bit_size();
  for (const auto& c : I.center()) b = std::max(b, c.bit_size());
  return b;
}

Rational terminal_measure(const SubdivisionResult& r) {
  Rational sum(0);
  for (const auto& t : r.terminal) sum += t.box.measure();
  return sum;
}

std::vector<std::uint64_t> grid_index(const NodePath& path, std::size_t nvars) {
  std::vector<std::uint64_t> idx(nvars, 0);
  for (const auto k : path)
    for (std::size_t i = 0; i < nvars; ++i) idx[i] = 2 * idx[i] + ((k >> i) & 1U);
  return idx;
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers <= 1 || count < 2) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  const std::size_t nthreads = std::min<std::size_t>(workers, count);
  std::vector<std::exception_ptr> errors(nthreads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t k = t; k < count; k += nthreads) fn(k);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct Evaluation {
  std::optional<std::size_t> accepted;
  std::optional<PredicateOutcome> outcome;
};

template <typename State, typename Eval, typename Child>
SubdivisionResult run_engine(const Box& I, State root, Eval&& eval, Child&& child_state,
                             const EngineConfig& cfg) {
  if (cfg.max_depth < 1) throw std::invalid_argument("max_depth must be at least 1");
  struct Item {
    TreeNode node;
    State state;
  };
  SubdivisionResult result{I, {}, {}, {}, 0, 0, 0};
  const std::size_t base_bits = input_bit_size(I);
  const std::size_t nchildren = std::size_t{1} << I.nvars();

  std::vector<Item> frontier;
  frontier.push_back(Item{TreeNode{{}, I, NodeStatus::Split, std::nullopt, std::nullopt}, std::move(root)});

  while (!frontier.empty()) {
    std::vector<Evaluation> evals(frontier.size());
    parallel_for(frontier.size(), cfg.parallelism,
                 [&](std::size_t k) { evals[k] = eval(frontier[k].state, frontier[k].node.box); });

    std::vector<Item> next;
    std::vector<std::size_t> parent_of;
    for (std::size_t k = 0; k < frontier.size(); ++k) {
      TreeNode& node = frontier[k].node;
      node.outcome = std::move(evals[k].outcome);
      node.criterion = evals[k].accepted;
      result.total_nodes += 1;
      result.taylor_shift_bit_total += node.depth() + base_bits;
      result.max_depth_reached = std::max(result.max_depth_reached, node.depth());
      if (node.criterion) {
        node.status = *node.criterion == 0 ? NodeStatus::AcceptedC0 : NodeStatus::AcceptedC1;
        ++(*node.criterion == 0 ? result.counts.c0_accepted : result.counts.c1_accepted);
      } else if (node.depth() >= cfg.max_depth) {
        node.status = NodeStatus::DepthCapped;
        ++result.counts.depth_capped;
      } else {
        node.status = NodeStatus::Split;
        ++result.counts.split;
        std::vector<Box> boxes = subdivide_box(node.box);
        for (std::size_t c = 0; c < nchildren; ++c) {
          NodePath p = node.path;
          p.push_back(static_cast<std::uint32_t>(c));
          next.push_back(Item{TreeNode{std::move(p), std::move(boxes[c]), NodeStatus::Split, std::nullopt,
                                       std::nullopt},
                              State{}});
          parent_of.push_back(k);
        }
      }
    }
    parallel_for(next.size(), cfg.parallelism, [&](std::size_t j) {
      const Item& parent = frontier[parent_of[j]];
      next[j].state = child_state(parent.state, parent.node.box, next[j].node.path.back());
    });

    for (auto& item : frontier) {
      if (cfg.record_tree) result.tree.push_back(item.node);
      if (item.node.status != NodeStatus::Split) result.terminal.push_back(std::move(item.node));
    }
    frontier = std::move(next);
  }
  std::sort(result.terminal.begin(), result.terminal.end(),
            [](const TreeNode& a, const TreeNode& b) { return a.path < b.path; });
  return result;
}

struct NoState {};

// g is shifted lazily: most nodes far from the curve pass C0 and never need it.
struct ShiftState {
  MultiPoly f{1};
  std::shared_ptr<const MultiPoly> g;
  std::shared_ptr<const MultiPoly> parent_g;
  std::vector<Rational> g_offset;
};

}  // namespace

SubdivisionResult run_generic(const Box& I, std::span<const Criterion> criteria, const EngineConfig& cfg) {
  if (criteria.empty()) throw std::invalid_argument("run_generic: no stopping criteria supplied");
  auto eval = [&](const NoState&, const Box& box) {
    Evaluation e;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
      if (criteria[i](box)) {
        e.accepted = i;
        break;
      }
    }
    return e;
  };
  auto child = [](const NoState&, const Box&, std::uint32_t) { return NoState{}; };
  return run_engine(I, NoState{}, eval, child, cfg);
}

SubdivisionResult run_pv(const MultiPoly& f, const Box& I, const EngineConfig& cfg) {
  if (f.is_zero()) throw std::invalid_argument("run_pv: zero polynomial");
  if (f.nvars() != I.nvars()) throw std::invalid_argument("run_pv: dimension mismatch");
  const std::size_t n = f.nvars();
  const MultiPoly g = gradient_pair(f);

  ShiftState root;
  root.f = taylor_shift(f, std::span<const Dyadic>(I.center()));
  const std::vector<Dyadic> dc = doubled_center(I);
  root.g = std::make_shared<const MultiPoly>(taylor_shift(g, std::span<const Dyadic>(dc)));

  auto eval = [](ShiftState& s, const Box& box) {
    Evaluation e;
    const IntervalR enc0 = centered_form_shifted(s.f, box.halfwidth());
    if (!enc0.contains_zero()) {
      e.outcome = PredicateOutcome{PredicateTag::C0, enc0, std::nullopt};
      e.accepted = 0;
      return e;
    }
    if (!s.g) {
      s.g = std::make_shared<const MultiPoly>(taylor_shift(*s.parent_g, std::span<const Rational>(s.g_offset)));
      s.parent_g.reset();
    }
    IntervalR enc1 = centered_form_shifted(*s.g, box.halfwidth());
    const bool pass1 = !enc1.contains_zero();
    e.outcome = PredicateOutcome{pass1 ? PredicateTag::C1 : PredicateTag::Neither, enc0, std::move(enc1)};
    if (pass1) e.accepted = 1;
    return e;
  };
  auto child = [n](const ShiftState& parent, const Box& parent_box, std::uint32_t index) {
    const Dyadic h = parent_box.halfwidth().half();
    std::vector<Rational> offset(n);
    for (std::size_t i = 0; i < n; ++i) offset[i] = (((index >> i) & 1U) ? h : -h).to_rational();
    std::vector<Rational> offset2 = offset;
    offset2.insert(offset2.end(), offset.begin(), offset.end());
    ShiftState s;
    s.f = taylor_shift(parent.f, std::span<const Rational>(offset));
    s.parent_g = parent.g;
    s.g_offset = std::move(offset2);
    return s;
  };
  return run_engine(I, std::move(root), eval, child, cfg);
}

}  // namespace ddsub
