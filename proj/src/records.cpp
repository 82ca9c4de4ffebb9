#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ddsub/subdivide.hpp"

namespace ddsub {

namespace {

void write_center(std::ostream& out, const std::vector<Dyadic>& c) {
  for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i].str();
}

std::vector<Dyadic> parse_center(const std::string& text) {
  std::vector<Dyadic> c;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) c.push_back(Dyadic::parse(part));
  return c;
}

// Splits "key=value key=value" into a map; the first word is returned separately.
std::map<std::string, std::string> fields(std::istringstream& line) {
  std::map<std::string, std::string> kv;
  std::string tok;
  while (line >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::runtime_error("record: expected key=value, got '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

const std::string& need(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw std::runtime_error("record: missing field '" + key + "'");
  return it->second;
}

std::size_t to_size(const std::string& s) { return static_cast<std::size_t>(std::stoull(s)); }

}  // namespace

void write_records(std::ostream& out, const SubdivisionResult& r) {
  out << "ddsub-records 1\n";
  out << "nvars " << r.input.nvars() << '\n';
  out << "input center=";
  write_center(out, r.input.center());
  out << " halfwidth=" << r.input.halfwidth().str() << '\n';
  out << "counts c0=" << r.counts.c0_accepted << " c1=" << r.counts.c1_accepted << " split=" << r.counts.split
      << " capped=" << r.counts.depth_capped << " total=" << r.total_nodes << " max_depth=" << r.max_depth_reached
      << '\n';
  for (const auto& t : r.terminal) {
    out << "node path=" << path_string(t.path) << " status=" << to_string(t.status) << " center=";
    write_center(out, t.box.center());
    out << " halfwidth=" << t.box.halfwidth().str() << '\n';
  }
  out << "end\n";
}

namespace {

RecordSet read_records_unchecked(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> std::istringstream {
    if (!std::getline(in, line)) throw std::runtime_error("record: unexpected end of input");
    return std::istringstream(line);
  };

  if (!std::getline(in, line) || line != "ddsub-records 1") throw std::runtime_error("record: bad header");

  std::string word;
  auto ls = next_line();
  std::size_t nvars = 0;
  if (!(ls >> word >> nvars) || word != "nvars" || nvars == 0) throw std::runtime_error("record: bad nvars line");

  ls = next_line();
  if (!(ls >> word) || word != "input") throw std::runtime_error("record: expected input line");
  auto kv = fields(ls);
  std::vector<Dyadic> ic = parse_center(need(kv, "center"));
  if (ic.size() != nvars) throw std::runtime_error("record: input dimension mismatch");
  RecordSet rs{Box(std::move(ic), Dyadic::parse(need(kv, "halfwidth"))), {}, 0, 0, {}};

  ls = next_line();
  if (!(ls >> word) || word != "counts") throw std::runtime_error("record: expected counts line");
  kv = fields(ls);
  rs.counts.c0_accepted = to_size(need(kv, "c0"));
  rs.counts.c1_accepted = to_size(need(kv, "c1"));
  rs.counts.split = to_size(need(kv, "split"));
  rs.counts.depth_capped = to_size(need(kv, "capped"));
  rs.total_nodes = to_size(need(kv, "total"));
  rs.max_depth_reached = to_size(need(kv, "max_depth"));

  while (true) {
    ls = next_line();
    if (!(ls >> word)) continue;
    if (word == "end") break;
    if (word != "node") throw std::runtime_error("record: unexpected line '" + line + "'");
    kv = fields(ls);
    std::vector<Dyadic> c = parse_center(need(kv, "center"));
    if (c.size() != nvars) throw std::runtime_error("record: node dimension mismatch");
    TreeNode node{parse_path(need(kv, "path")), Box(std::move(c), Dyadic::parse(need(kv, "halfwidth"))),
                  parse_status(need(kv, "status")), std::nullopt, std::nullopt};
    rs.terminal.push_back(std::move(node));
  }
  if (rs.terminal.size() != rs.counts.terminal()) throw std::runtime_error("record: node count disagrees with counts");
  return rs;
}

}  // namespace

// Field-level parse failures (bad dyadics, paths, statuses, numbers) surface
// as runtime_error like every other malformed record.
RecordSet read_records(std::istream& in) {
  try {
    return read_records_unchecked(in);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("record: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw std::runtime_error(std::string("record: ") + e.what());
  }
}

}  // namespace ddsub
