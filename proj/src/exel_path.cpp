#include "ckbench/exel_path.hpp"

#include <optional>
#include <sstream>

namespace ckb {

DepthFunction ml_inner(const DepthFunction& a, const DepthFunction& b) { return transfer_L(a * b); }

CheckReport transfer_identity_check(const DepthFunction& a, const DepthFunction& b) {
  CheckReport report{"transfer identity"};
  const DepthFunction lhs = transfer_L(alpha_shift(a) * b);
  const DepthFunction rhs = a * transfer_L(b);
  report.expect(lhs == rhs, [&] {
    return "L(alpha(a) b) != a L(b)\n-- a --\n" + a.str() + "-- b --\n" + b.str() + "-- lhs --\n" + lhs.str() + "-- rhs --\n" + rhs.str();
  });
  return report;
}

DepthFunction parse_depth_function(const GraphPtr& graph, std::string_view text, std::vector<std::string>* warnings) {
  std::vector<std::pair<Path, Rational>> entries;
  std::optional<std::size_t> depth;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens[0] != "F" || tokens.size() != 3) throw ParseError(line_no, "expected 'F <path> <rational>'");
    try {
      Path p = graph->parse_path(tokens[1]);
      const Radical value = Radical::parse(tokens[2]);
      if (!value.is_rational()) throw ParseError(0, "function values must be rational");
      if (depth && *depth != p.size()) throw ParseError(0, "all paths in a function file must share one length");
      depth = p.size();
      entries.emplace_back(std::move(p), value.rational_part());
    } catch (const ParseError& err) {
      throw ParseError(line_no, err.what());
    }
  }
  DepthFunction f(graph, depth.value_or(0));
  std::vector<bool> seen(f.paths().size(), false);
  for (auto& [p, q] : entries) {
    const std::size_t i = graph->level(f.depth()).index.at(p);
    if (seen[i]) throw ParseError(0, "path '" + graph->path_str(p) + "' given twice");
    seen[i] = true;
    f.set(p, q);
  }
  if (warnings != nullptr) {
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) warnings->push_back("missing value for " + graph->path_str(f.paths()[i]) + ", using 0");
    }
  }
  return f;
}

RadFunction to_radical(const DepthFunction& f) {
  RadFunction out(f.graph_ptr(), f.depth());
  const auto& ps = f.paths();
  for (std::size_t i = 0; i < ps.size(); ++i) out.set(ps[i], Radical(f.values()[i]));
  return out;
}

DepthFunction random_depth_function(const GraphPtr& graph, std::size_t depth, SplitMix64& rng) {
  DepthFunction f(graph, depth);
  for (const Path& p : graph->level(depth).paths) {
    Rational value(rng.between(-4, 4));
    value /= Rational(rng.between(1, 3));
    f.set(p, value);
  }
  return f;
}

}  // namespace ckb
