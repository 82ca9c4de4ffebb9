#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ddsub/complexity.hpp"
#include "ddsub/families.hpp"
#include "ddsub/mesh2d.hpp"
#include "ddsub/oracle.hpp"
#include "ddsub/poly.hpp"
#include "ddsub/subdivide.hpp"

namespace ddsub::cli {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Box parse_box(const std::string& center, const std::string& halfwidth) {
  std::vector<Dyadic> c;
  try {
    std::stringstream ss(center);
    std::string part;
    while (std::getline(ss, part, ',')) c.push_back(Dyadic::parse(part));
    if (c.empty()) throw InputError("empty --center");
    return Box(std::move(c), Dyadic::parse(halfwidth));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("invalid box: ") + e.what());
  }
}

MultiPoly parse_input_poly(const std::string& text, std::size_t nvars) {
  MultiPoly f(nvars);
  try {
    f = parse_poly(text, nvars);
  } catch (const std::exception& e) {
    throw InputError(std::string("cannot parse polynomial: ") + e.what());
  }
  if (f.is_zero()) throw InputError("the zero polynomial has no meaningful variety");
  return f;
}

struct Problem {
  Box box;
  MultiPoly f;
};

Problem load(const Options& o) {
  Box box = parse_box(o.center, o.halfwidth);
  MultiPoly f = parse_input_poly(o.poly, box.nvars());
  return {std::move(box), std::move(f)};
}

EngineConfig engine(const Options& o) {
  EngineConfig cfg;
  cfg.max_depth = o.max_depth;
  cfg.parallelism = o.jobs;
  return cfg;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  return f;
}

void finish(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

void print_counts(std::ostream& out, const SubdivisionResult& r) {
  out << "c0: " << r.counts.c0_accepted << '\n'
      << "c1: " << r.counts.c1_accepted << '\n'
      << "split: " << r.counts.split << '\n'
      << "capped: " << r.counts.depth_capped << '\n'
      << "terminal: " << r.terminal.size() << '\n'
      << "total_nodes: " << r.total_nodes << '\n'
      << "max_depth: " << r.max_depth_reached << '\n';
}

void print_capped(std::ostream& out, const SubdivisionResult& r) {
  std::size_t shown = 0;
  for (const auto& t : r.terminal) {
    if (t.status != NodeStatus::DepthCapped) continue;
    if (shown++ == 20) {
      out << "capped_leaf: ...\n";
      break;
    }
    out << "capped_leaf: " << t.box.str() << '\n';
  }
}

std::pair<DistanceOracle, DistanceOracle> parse_oracle(const std::string& spec, const MultiPoly& f) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw InputError("--oracle expects kind:value");
  const std::string kind = spec.substr(0, colon);
  double value = 0;
  try {
    value = parse_rational(spec.substr(colon + 1)).get_d();
  } catch (const std::exception&) {
    throw InputError("invalid --oracle parameter '" + spec.substr(colon + 1) + "'");
  }
  if (!(value > 0)) throw InputError("--oracle parameter must be positive");
  if (kind == "circle-plus" || kind == "circle-minus") {
    if (f.nvars() != 2) throw InputError("circle oracles are planar");
    return circle_distance_oracles(kind == "circle-plus" ? CircleVariant::Plus : CircleVariant::Minus, value);
  }
  if (kind == "generic") return {generic_lower_oracle(f, value), generic_lower_pairing_oracle(f, value)};
  throw InputError("unknown oracle kind '" + kind + "'");
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

}  // namespace

int cmd_run(const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem p = load(o);
    const SubdivisionResult r = run_pv(p.f, p.box, engine(o));
    print_counts(out, r);
    if (!o.records_path.empty()) {
      auto f = open_out(o.records_path);
      write_records(f, r);
      finish(f, o.records_path);
    }
    if (!o.svg_path.empty()) {
      if (p.box.nvars() != 2) throw InputError("--svg needs a planar box");
      auto f = open_out(o.svg_path);
      emit_svg(f, r.input, r.terminal, nullptr);
      finish(f, o.svg_path);
    }
    if (r.counts.depth_capped > 0) {
      print_capped(out, r);
      if (o.strict) {
        err << "error: " << r.counts.depth_capped << " leaves reached the depth cap\n";
        return int{kDepthCapped};
      }
    }
    return int{kOk};
  });
}

int cmd_mesh(const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem p = load(o);
    if (p.box.nvars() != 2) throw InputError("mesh extraction is planar");
    const SubdivisionResult r = run_pv(p.f, p.box, engine(o));
    print_counts(out, r);
    if (r.counts.depth_capped > 0) {
      print_capped(out, r);
      err << "error: cannot mesh a run with depth-capped leaves\n";
      return int{kDepthCapped};
    }
    const BalancedTree tree = balance(r);
    const auto signs = corner_signs(p.f, tree);
    const Mesh2D mesh = extract_segments(p.f, tree, signs);
    const MeshTopology topo = analyze_topology(mesh);
    out << "balanced_leaves: " << tree.leaves.size() << '\n'
        << "vertices: " << mesh.vertices.size() << '\n'
        << "segments: " << mesh.segments.size() << '\n'
        << "components: " << topo.components << '\n'
        << "loops: " << topo.closed_loops << '\n'
        << "open_chains: " << topo.open_chains << '\n';
    if (!o.svg_path.empty()) {
      auto f = open_out(o.svg_path);
      emit_svg(f, tree.input, tree.leaves, &mesh);
      finish(f, o.svg_path);
    }
    if (!o.mesh_path.empty()) {
      auto f = open_out(o.mesh_path);
      write_mesh(f, mesh);
      finish(f, o.mesh_path);
    }
    if (!o.records_path.empty()) {
      auto f = open_out(o.records_path);
      write_records(f, r);
      finish(f, o.records_path);
    }
    return int{kOk};
  });
}

int cmd_bound(const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem p = load(o);
    BoundMode mode;
    if (o.mode == "rigorous") mode = BoundMode::Rigorous;
    else if (o.mode == "oracle") mode = BoundMode::Oracle;
    else throw InputError("--mode must be rigorous or oracle");
    std::optional<std::pair<DistanceOracle, DistanceOracle>> oracles;
    if (mode == BoundMode::Oracle) {
      if (o.oracle.empty()) throw InputError("oracle mode needs --oracle");
      oracles = parse_oracle(o.oracle, p.f);
    }
    const BoundReport rep = bound_report(p.f, p.box, mode, oracles ? &oracles->first : nullptr,
                                         oracles ? &oracles->second : nullptr);
    write_bound_report(out, rep);
    return int{kOk};
  });
}

int cmd_ca(const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem p = load(o);
    if (o.oracle.empty()) throw InputError("ca needs --oracle");
    const auto [d0, d1] = parse_oracle(o.oracle, p.f);
    const CAConfig cfg;
    const CAEstimate reg = ca_region_integral(p.f, p.box, d0, d1, cfg);
    const CoeffStats cs = coeff_stats(clear_denominators(p.f));
    const double tau = std::max(1U, cs.bitsize);
    const CAEstimate bit = ca_bit_integral(p.f, p.box, d0, d1, tau, cfg);
    out << "oracle: " << d0.label << ", " << d1.label << '\n'
        << "region_value: " << fmt(reg.value) << '\n'
        << "region_upper: " << fmt(reg.upper) << '\n'
        << "region_converged: " << (reg.converged ? "true" : "false") << '\n'
        << "region_diverged: " << (reg.diverged ? "true" : "false") << '\n'
        << "refinement_depth: " << reg.refinement_depth << '\n'
        << "cells: " << reg.cells_evaluated << '\n'
        << "tau: " << tau << '\n'
        << "bit_value: " << fmt(bit.value) << '\n'
        << "bit_upper: " << fmt(bit.upper) << '\n'
        << "bit_diverged: " << (bit.diverged ? "true" : "false") << '\n';
    if (o.with_run) {
      const SubdivisionResult r = run_pv(p.f, p.box, engine(o));
      out << "observed_terminal: " << r.terminal.size() << '\n' << "observed_capped: " << r.counts.depth_capped << '\n';
    }
    return int{kOk};
  });
}

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<std::string> params = o.params;
    const bool circle = o.family == "circle_plus" || o.family == "circle_minus";
    if (params.empty()) {
      if (circle) params = {"1/2", "1/4", "1/8", "1/16", "1/32", "1/64", "1/128", "1/256"};
      else if (o.family == "asymptote") params = {"10", "100", "1000"};
      else if (o.family == "mignotte") params = {"2", "3", "4"};
      else throw InputError("unknown family '" + o.family + "'");
    }
    EngineConfig cfg;
    cfg.max_depth = o.max_depth;
    cfg.parallelism = o.jobs;

    out << "family param terminal capped lower_bound ca_value\n";
    for (const auto& ps : params) {
      Rational param;
      try {
        param = parse_rational(ps);
      } catch (const std::exception&) {
        throw InputError("invalid parameter '" + ps + "'");
      }
      if (param <= 0) throw InputError("parameters must be positive");
      std::string lower = "-", ca = "-";
      std::size_t count = 0;
      SubdivisionResult r = [&] {
        if (circle) {
          const auto variant = o.family == "circle_plus" ? CircleVariant::Plus : CircleVariant::Minus;
          const Box I = Box::cube(2, 0, 2);
          const MultiPoly f = circle_poly(variant, param);
          SubdivisionResult res = run_pv(f, I, cfg);
          if (o.with_ca) {
            const auto [d0, d1] = circle_distance_oracles(variant, param.get_d());
            ca = fmt(ca_region_integral(f, I, d0, d1, CAConfig{}).value);
          }
          return res;
        }
        if (o.family == "asymptote") {
          SubdivisionResult res = run_pv(asymptote_poly(param), Box::cube(2, 0, 2), cfg);
          const double eps = std::pow(param.get_d(), -1.0 / 8);
          lower = fmt(family_lower_bound_example62(4, 4, eps, 0.25, 2));
          return res;
        }
        if (param.get_den() != 1 || param < 2) throw InputError("mignotte parameter a must be an integer >= 2");
        const unsigned a = static_cast<unsigned>(param.get_num().get_ui());
        lower = fmt(mignotte_lower_bound(2, 3, a, 2));
        return run_pv(mignotte_poly(a, 3), Box::cube(2, 0, 1), cfg);
      }();
      count = o.family == "asymptote" ? count_boxes_on_segment(r, Rational(1, 4), Rational(2)) : r.terminal.size();
      out << o.family << ' ' << to_string(param) << ' ' << count << ' ' << r.counts.depth_capped << ' ' << lower
          << ' ' << ca << '\n';
    }
    return int{kOk};
  });
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified subdivision for implicit varieties"};
  app.require_subcommand(1);
  Options opt;
  BenchOptions bench;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--poly", opt.poly, "polynomial in x1..xn, e.g. \"x1^2+x2^2-1\"")->required();
    sub->add_option("--center", opt.center, "comma-separated dyadic center")->capture_default_str();
    sub->add_option("--halfwidth", opt.halfwidth, "dyadic half-width")->capture_default_str();
    sub->add_option("--max-depth", opt.max_depth, "depth cap")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--jobs", opt.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "seed for sampling-based checks")->capture_default_str();
  };

  auto* run = app.add_subcommand("run", "subdivide and report counts");
  common(run);
  run->add_flag("--strict", opt.strict, "exit 3 if any leaf hits the depth cap");
  run->add_option("--records", opt.records_path, "terminal-region record file");
  run->add_option("--svg", opt.svg_path, "SVG of the terminal boxes");

  auto* mesh = app.add_subcommand("mesh", "subdivide, balance and extract a piecewise-linear curve");
  common(mesh);
  mesh->add_option("--svg", opt.svg_path, "SVG of boxes and curve");
  mesh->add_option("--mesh", opt.mesh_path, "mesh text file");
  mesh->add_option("--records", opt.records_path, "terminal-region record file");

  auto* bound = app.add_subcommand("bound", "non-adaptive region-count bound");
  common(bound);
  bound->add_option("--mode", opt.mode, "rigorous or oracle")
      ->capture_default_str()
      ->check(CLI::IsMember({"rigorous", "oracle"}));
  bound->add_option("--oracle", opt.oracle, "circle-plus:EPS, circle-minus:EPS or generic:R");

  auto* ca = app.add_subcommand("ca", "continuous-amortization estimates");
  common(ca);
  ca->add_option("--oracle", opt.oracle, "circle-plus:EPS, circle-minus:EPS or generic:R")->required();
  ca->add_flag("--with-run", opt.with_run, "also run the subdivision and print observed counts");

  auto* be = app.add_subcommand("bench", "run a benchmark family");
  be->add_option("family", bench.family, "mignotte, asymptote, circle_plus or circle_minus")
      ->required()
      ->check(CLI::IsMember({"mignotte", "asymptote", "circle_plus", "circle_minus"}));
  be->add_option("--param", bench.params, "parameter values (eps, c or a); repeatable");
  be->add_option("--max-depth", bench.max_depth, "depth cap")->capture_default_str()->check(CLI::PositiveNumber);
  be->add_option("--jobs", bench.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  bool no_ca = false;
  be->add_flag("--no-ca", no_ca, "skip the continuous-amortization column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? int{kOk} : int{kUsage};
  }
  if (*run) return cmd_run(opt, out, err);
  if (*mesh) return cmd_mesh(opt, out, err);
  if (*bound) return cmd_bound(opt, out, err);
  if (*ca) return cmd_ca(opt, out, err);
  bench.with_ca = !no_ca;
  return cmd_bench(bench, out, err);
}

}  // namespace ddsub::cli
