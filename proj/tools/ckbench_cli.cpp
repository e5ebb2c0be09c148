#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ckbench/core_endo.hpp"
#include "ckbench/dilation.hpp"
#include "ckbench/errors.hpp"
#include "ckbench/exel_path.hpp"
#include "ckbench/graph.hpp"
#include "ckbench/hilbert_module.hpp"
#include "ckbench/ktheory.hpp"
#include "ckbench/random.hpp"
#include "ckbench/star_algebra.hpp"
#include "ckbench/uhf_cuntz.hpp"

namespace {

using namespace ckb;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

// Thrown for bad command-line input that the library would not reject itself.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t depth = 2;
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  std::size_t level = 1;
  long box = 4;
  std::string matrix;
  std::string sigma;
  std::size_t n = 2;
  std::size_t big_n = 1;
  bool json = false;
  bool parallel = false;
  bool af = false;
  std::vector<std::string> files;
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void value(const std::string& key, const std::string& text) { values_.emplace_back(key, text); }
  void add(CheckReport report) { reports_.push_back(std::move(report)); }

  bool failed() const {
    return std::any_of(reports_.begin(), reports_.end(), [](const CheckReport& r) { return !r.passed(); });
  }

  void print(bool json) const {
    std::size_t checks = 0;
    std::size_t failures = 0;
    for (const auto& r : reports_) {
      checks += r.checks;
      failures += r.failures.size();
    }
    if (json) {
      Json out;
      out["command"] = command_;
      if (seed_) out["seed"] = *seed_;
      out["checks"] = checks;
      out["passed"] = checks - failures;
      out["failed"] = failures;
      Json values = Json::object();
      for (const auto& [k, v] : values_) values[k] = v;
      out["results"] = values;
      Json suites = Json::array();
      for (const auto& r : reports_) {
        suites.push_back({{"name", r.name}, {"checks", r.checks}, {"failed", r.failures.size()}, {"witnesses", r.failures}});
      }
      out["suites"] = suites;
      std::cout << out.dump(2) << "\n";
      return;
    }
    std::cout << "command: " << command_ << "\n";
    if (seed_) std::cout << "seed: " << *seed_ << "\n";
    for (const auto& [k, v] : values_) {
      if (v.find('\n') == std::string::npos) {
        std::cout << k << ": " << v << "\n";
      } else {
        std::cout << k << ":\n" << v << (v.back() == '\n' ? "" : "\n");
      }
    }
    for (const auto& r : reports_) {
      std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks, " << r.failures.size() << " failed)\n";
      for (const auto& w : r.failures) std::cout << "--- witness ---\n" << w << (w.empty() || w.back() != '\n' ? "\n" : "");
    }
    std::cout << "checks: " << checks << " passed: " << checks - failures << " failed: " << failures << "\n";
  }

 private:
  std::string command_;
  std::optional<std::uint64_t> seed_;
  std::vector<std::pair<std::string, std::string>> values_;
  std::vector<CheckReport> reports_;
};

// Runs cases [0, count) and returns their reports in case order.
std::vector<CheckReport> sweep(std::size_t count, bool parallel, const std::function<CheckReport(std::size_t)>& run_case) {
  std::vector<CheckReport> results(count);
  if (!parallel || count < 2) {
    for (std::size_t i = 0; i < count; ++i) results[i] = run_case(i);
    return results;
  }
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) results[i] = run_case(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

CheckReport combine(const std::string& name, const std::vector<CheckReport>& parts) {
  CheckReport out(name);
  for (const auto& p : parts) out.merge(p);
  return out;
}

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", std::abs(x) < 5e-13 ? 0.0 : x);
  return buf;
}

const std::string& file_arg(const Options& opt, std::size_t i, const char* what) {
  if (opt.files.size() <= i) throw InputError(std::string("missing ") + what + " argument");
  return opt.files[i];
}

GraphPtr graph_arg(const Options& opt) { return load_graph_file(file_arg(opt, 0, "graph file")); }

StarElement element_arg(const GraphPtr& g, const Options& opt, std::size_t i) {
  return StarElement::parse(g, read_text_file(file_arg(opt, i, "element file")));
}

// ---- graph ----

void graph_info(const Options& opt, Report& report) {
  const GraphPtr g = graph_arg(opt);
  const VertexReport info = g->classify_vertices();
  std::string vertices;
  for (std::size_t v = 0; v < g->vertex_count(); ++v) {
    const VertexInfo& vi = info.vertices[v];
    vertices += g->vertex_name(static_cast<VertexId>(v)) + " out=" + std::to_string(vi.out_degree) + " in=" +
                std::to_string(vi.in_degree) + (vi.singular ? " singular" : " regular") + "\n";
  }
  report.value("vertices", vertices);
  std::string edges;
  for (std::size_t e = 0; e < g->edge_count(); ++e) {
    const Edge& ed = g->edge(static_cast<EdgeId>(e));
    edges += ed.name + " src=" + g->vertex_name(ed.src) + " rng=" + g->vertex_name(ed.rng) + "\n";
  }
  report.value("edges", edges.empty() ? "none" : edges);
  report.value("beta_admissible", info.beta_admissible ? "true" : "false");
  report.value("path_space_admissible", info.path_space_admissible ? "true" : "false");
  report.value("all_regular", info.all_regular ? "true" : "false");
  for (std::size_t len = 0; len <= opt.level; ++len) report.value("paths_" + std::to_string(len), std::to_string(g->level(len).paths.size()));
}

// ---- core ----

std::string element_text(const StarElement& x) { return x.str(); }

void core_mul(const Options& opt, Report& report) {
  const GraphPtr g = graph_arg(opt);
  report.value("product", element_text(element_arg(g, opt, 1) * element_arg(g, opt, 2)));
}

void core_beta(const Options& opt, Report& report) {
  const GraphPtr g = graph_arg(opt);
  report.value("beta", element_text(CoreEndo(g).beta(element_arg(g, opt, 1))));
}

void core_iexpand(const Options& opt, Report& report) {
  const GraphPtr g = graph_arg(opt);
  const StarElement x = element_arg(g, opt, 1);
  const auto parts = i_expand(x, opt.level);
  for (std::size_t j = 0; j < parts.size(); ++j) report.value("c_" + std::to_string(j), element_text(parts[j]));
  StarElement sum(g);
  for (const auto& p : parts) sum += p;
  CheckReport check("i-expansion recombines");
  check.expect(equal(sum, x), [&] { return "sum of components differs from the input\n" + sum.str(); });
  report.add(check);
}

void core_norm(const Options& opt, Report& report) {
  const GraphPtr g = graph_arg(opt);
  const NormResult r = op_norm(element_arg(g, opt, 1));
  report.value("norm", fixed(r.value));
  report.value("error_bound", fixed(r.error_bound));
}

void core_verify_beta(const Options& opt, Report& report) {
  const GraphPtr g = graph_arg(opt);
  report.set_seed(opt.seed);
  const CoreEndo endo(g);
  report.add(endo.w_isometry_check());
  CheckReport units("matrix-unit images");
  for (std::size_t level = 1; level <= opt.depth; ++level) {
    for (std::size_t v = 0; v < g->vertex_count(); ++v) units.merge(endo.matrix_unit_images(level, static_cast<VertexId>(v)).report);
  }
  report.add(units);
  const std::vector<StarElement> basis = core_matrix_units(g, opt.depth);
  report.add(combine("beta homomorphism on matrix units", sweep(basis.size(), opt.parallel, [&](std::size_t i) {
    CheckReport r("row");
    for (const auto& y : basis) r.merge(endo.homomorphism_check(basis[i], y));
    r.merge(endo.covariance_check(basis[i]));
    return r;
  })));
  SplitMix64 rng(opt.seed);
  std::vector<std::pair<StarElement, StarElement>> cases;
  for (std::size_t t = 0; t < opt.trials; ++t) {
    StarElement x = random_core_element(g, opt.depth, 3, rng);
    StarElement y = random_core_element(g, opt.depth, 3, rng);
    cases.emplace_back(std::move(x), std::move(y));
  }
  report.add(combine("beta on random core elements", sweep(cases.size(), opt.parallel, [&](std::size_t i) {
    CheckReport r("trial");
    r.merge(endo.homomorphism_check(cases[i].first, cases[i].second));
    r.merge(endo.covariance_check(cases[i].first));
    r.merge(endo.iterate_check(cases[i].first));
    return r;
  })));
}

// ---- exel ----

void exel_verify_transfer(const Options& opt, Report& report) {
  const GraphPtr g = graph_arg(opt);
  report.set_seed(opt.seed);
  std::vector<DepthFunction> basis;
  for (std::size_t d = 0; d <= opt.depth; ++d) {
    for (const Path& p : g->level(d).paths) basis.push_back(DepthFunction::indicator(g, p));
  }
  const DepthFunction one = DepthFunction::constant(g, Rational(1));
  CheckReport normal("L(1) = 1 and L(alpha(f)) = f");
  normal.expect(transfer_L(one) == one, [] { return "L(1) != 1"; });
  for (const auto& f : basis) normal.expect(transfer_L(alpha_shift(f)) == f, [&] { return "L(alpha(f)) != f\n" + f.str(); });
  report.add(normal);
  report.add(combine("transfer identity on indicator pairs", sweep(basis.size(), opt.parallel, [&](std::size_t i) {
    CheckReport r("row");
    for (const auto& b : basis) r.merge(transfer_identity_check(basis[i], b));
    return r;
  })));
  SplitMix64 rng(opt.seed);
  std::vector<std::pair<DepthFunction, DepthFunction>> cases;
  for (std::size_t t = 0; t < opt.trials; ++t) {
    DepthFunction a = random_depth_function(g, rng.below(opt.depth + 1), rng);
    DepthFunction b = random_depth_function(g, rng.below(opt.depth + 1), rng);
    cases.emplace_back(std::move(a), std::move(b));
  }
  report.add(combine("transfer identity on random functions", sweep(cases.size(), opt.parallel, [&](std::size_t i) {
    return transfer_identity_check(cases[i].first, cases[i].second);
  })));
}

// ---- module ----

template <class System>
void frames_suite(const HilbertModule<System>& module, std::size_t depth, Report& report) {
  const System& sys = module.system();
  report.add(module.frame_check());
  CheckReport recon("reconstruction");
  std::vector<typename HilbertModule<System>::Element> elements;
  for (std::size_t degree = 1; degree <= 2; ++degree) {
    for (const IndexWord& w : sys.words(degree)) {
      const auto f = module.frame_element(w);
      recon.merge(module.reconstruct_check(f));
      if (degree == 1) elements.push_back(f);
    }
  }
  for (std::size_t d = 0; d < depth; ++d) {
    for (const auto& a : sys.basis(d)) {
      recon.merge(module.reconstruct_check_raw(a));
      const auto q = module.coords_of(a);
      recon.merge(module.reconstruct_check(q));
      elements.push_back(q);
    }
  }
  report.add(recon);
  const double lowest = module.gram_min_eigenvalue(elements);
  report.value("gram_min_eigenvalue", fixed(lowest));
  CheckReport psd("Gram positivity");
  psd.expect(lowest >= -1e-9, [&] { return "smallest Gram eigenvalue " + fixed(lowest); });
  report.add(psd);
}

template <class System>
void u_suite(const HilbertModule<System>& module, std::size_t depth, Report& report) {
  report.add(module.u_check());
  for (std::size_t degree = 1; degree + 1 <= depth && degree <= 2; ++degree) report.add(module.u_tensor_check(degree));
}

bool uhf_requested(const Options& opt) { return opt.files.empty(); }

void module_verify_frames(const Options& opt, Report& report) {
  if (uhf_requested(opt)) {
    const UhfModule module(UhfExelSystem(UhfSystem(opt.n, opt.big_n), opt.depth));
    frames_suite(module, opt.depth, report);
    return;
  }
  const HilbertModule<GraphPathSystem> module(GraphPathSystem(graph_arg(opt), opt.depth));
  frames_suite(module, opt.depth, report);
}

void module_verify_u(const Options& opt, Report& report) {
  if (uhf_requested(opt)) {
    const UhfModule module(UhfExelSystem(UhfSystem(opt.n, opt.big_n), opt.depth));
    u_suite(module, opt.depth, report);
    return;
  }
  const HilbertModule<GraphPathSystem> module(GraphPathSystem(graph_arg(opt), opt.depth));
  u_suite(module, opt.depth, report);
}

void module_crosscheck(const Options& opt, Report& report) {
  const GraphPtr g = graph_arg(opt);
  const auto& paths = g->level(opt.level).paths;
  std::vector<std::pair<Path, Path>> pairs;
  for (const Path& mu : paths) {
    for (const Path& nu : paths) {
      if (mu.source == nu.source) pairs.emplace_back(mu, nu);
    }
  }
  report.value("pairs", std::to_string(pairs.size()));
  report.add(combine("module beta against core beta", sweep(pairs.size(), opt.parallel, [&](std::size_t i) {
    return beta_crosscheck(g, pairs[i].first, pairs[i].second);
  })));
}

// ---- uhf ----

void uhf_demo(const Options& opt, Report& report) {
  const UhfSystem sys(opt.n, opt.big_n);
  report.set_seed(opt.seed);
  report.value("target", "O_" + std::to_string(sys.generators()));
  report.add(e_basis_check(sys));
  report.add(UhfModule(UhfExelSystem(sys, opt.depth)).u_check());
  const CuntzRepresentation pi(sys, canonical_cuntz_family(sys));
  report.add(pi_matrix_unit_check(pi, opt.depth));
  SplitMix64 rng(opt.seed);
  std::vector<std::pair<TensorElement, TensorElement>> pairs;
  for (std::size_t t = 0; t < opt.trials; ++t) {
    TensorElement a = random_tensor(sys.n, opt.depth, 3, rng);
    TensorElement b = random_tensor(sys.n, opt.depth, 3, rng);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  report.add(pi_multiplicative_check(pi, pairs));
  report.add(pi_relation_check(pi, opt.depth));
  report.add(iso_generators_check(sys, opt.depth));
  report.add(almost_faithful_probe(sys, opt.depth));
  CheckReport transfer("L(alpha(a) b) = a L(b)");
  for (const auto& [a, b] : pairs) {
    const TensorElement lhs = uhf_L(sys, uhf_alpha(sys, a) * b);
    const TensorElement rhs = a * uhf_L(sys, b);
    transfer.expect(lhs == rhs, [&] { return "a = " + a.str() + "\nb = " + b.str(); });
  }
  report.add(transfer);
  CheckReport prefix("prefix representation");
  for (std::size_t d = 0; d <= opt.depth; ++d) {
    for (const auto& a : TensorElement::basis(sys.n, d)) {
      const std::size_t m = d + 1;
      const std::size_t words = ipow(sys.n, m);
      for (std::size_t x = 0; x < words; ++x) {
        for (std::size_t y = 0; y < words; ++y) prefix.merge(prefix_rep_check(sys, a, digits(x, sys.n, m), digits(y, sys.n, m)));
      }
    }
  }
  report.add(prefix);
  std::vector<TensorElement> samples;
  for (std::size_t d = 0; d <= opt.depth; ++d) {
    for (auto& b : TensorElement::basis(sys.n, d)) samples.push_back(std::move(b));
  }
  for (const auto& [a, b] : pairs) samples.push_back(a + b);
  const double lowest = transfer_positivity(sys, samples);
  report.value("transfer_min_eigenvalue", fixed(lowest));
  CheckReport positive("L positive");
  positive.expect(lowest >= -1e-9, [&] { return "L(a*a) has eigenvalue " + fixed(lowest); });
  report.add(positive);
  const PaschkeResult paschke = paschke_sequence(IntMatrix::from_rows({{static_cast<long>(sys.generators())}}), true);
  const GraphKTheory kg = graph_k_theory(make_bouquet(static_cast<int>(sys.generators())));
  report.value("K_0", paschke.k0.str());
  report.value("K_1", paschke.k1.str());
  CheckReport k("K-theory of O_nN");
  k.expect(paschke.k0 == kg.k0 && paschke.k1 == kg.k1, [&] { return "Paschke " + paschke.k0.str() + " vs graph " + kg.k0.str(); });
  report.add(k);
}

// ---- dilation ----

std::vector<IntVec> parse_sigma(const std::string& text) { return parse_int_rows(text); }

void dilation_verify(const Options& opt, Report& report) {
  if (opt.matrix.empty()) throw InputError("--matrix is required");
  if (opt.box < 0) throw InputError("--box must be nonnegative");
  const IntRows b = parse_int_rows(opt.matrix);
  const LatticeSystem sys = make_lattice_system(b, opt.sigma.empty() ? std::nullopt : std::optional(parse_sigma(opt.sigma)));
  std::string sigma;
  for (const auto& m : sys.sigma) sigma += vec_str(m) + " ";
  sigma.pop_back();
  report.value("det", std::to_string(sys.det));
  report.value("sigma", sigma);
  report.add(lattice_rep_check(sys, opt.box));
  const std::size_t levels = std::max<std::size_t>(opt.depth, 1);
  for (std::size_t i = 1; i <= levels; ++i) report.add(sigma_i_check(sys, i));
  for (std::size_t i = 1; i <= std::min<std::size_t>(levels, 2); ++i) report.add(sigma_matrix_unit_check(sys, i, std::min<long>(opt.box, 2)));
  std::vector<DilationTerm> terms;
  for (std::size_t i = 0; i <= 1; ++i) {
    for (const auto& m : sys.sigma) {
      for (const auto& n : sys.sigma) terms.push_back(DilationTerm{m, i, n});
    }
  }
  CheckReport beta("dilation beta");
  for (const auto& t : terms) beta.merge(dilation_beta_check(sys, t, opt.box));
  for (const auto& x : terms) {
    for (const auto& y : terms) beta.merge(dilation_product_check(sys, x, y, std::min<long>(opt.box, 3)));
  }
  report.add(beta);
}

// ---- ktheory ----

void ktheory_graph(const Options& opt, Report& report) {
  const GraphPtr g = graph_arg(opt);
  GraphKTheory k;
  try {
    k = graph_k_theory(g);
  } catch (const std::runtime_error& err) {
    CheckReport fail("stabilization");
    fail.expect(false, [&] { return std::string(err.what()); });
    report.add(fail);
    return;
  }
  report.value("K_0", k.k0.str());
  report.value("K_1", k.k1.str());
  report.value("stage_beta", k.stage_beta.str());
  report.value("connecting", k.connecting.str());
  report.add(k.report);
}

void ktheory_paschke(const Options& opt, Report& report) {
  if (opt.matrix.empty()) throw InputError("--matrix is required");
  const PaschkeResult r = paschke_sequence(IntMatrix::parse(opt.matrix), opt.af);
  if (r.af) {
    report.value("K_0", r.k0.str());
    report.value("K_1", r.k1.str());
  }
  report.value("diagram", r.diagram);
}

std::string command_echo(int argc, char** argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) out += (i > 1 ? " " : "") + std::string(argv[i]);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symbolic workbench for graph C*-algebra constructions"};
  app.require_subcommand(1);
  Options opt;

  const auto add_common = [&opt](CLI::App* cmd) {
    cmd->add_option("files", opt.files, "graph file followed by element files");
    cmd->add_option("--depth", opt.depth, "level or truncation depth");
    cmd->add_option("--trials", opt.trials, "number of random cases");
    cmd->add_option("--seed", opt.seed, "splitmix64 seed");
    cmd->add_option("--level", opt.level, "expansion level");
    cmd->add_option("--box", opt.box, "box radius for lattice checks");
    cmd->add_option("--matrix", opt.matrix, "integer matrix 'a,b;c,d'");
    cmd->add_option("--sigma", opt.sigma, "transversal as rows 'x1,y1;x2,y2'");
    cmd->add_option("--n", opt.n, "matrix size of the UHF factor");
    cmd->add_option("--N", opt.big_n, "rank of the projection p");
    cmd->add_flag("--json", opt.json, "structured output");
    cmd->add_flag("--parallel", opt.parallel, "data-parallel sweeps");
    cmd->add_flag("--af", opt.af, "assume K_1 of the core vanishes");
  };

  std::vector<std::pair<CLI::App*, std::function<void(const Options&, Report&)>>> handlers;
  const auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help, std::function<void(const Options&, Report&)> fn) {
    CLI::App* cmd = group->add_subcommand(name, help);
    add_common(cmd);
    handlers.emplace_back(cmd, std::move(fn));
  };

  CLI::App* graph = app.add_subcommand("graph", "graph files")->require_subcommand(1);
  leaf(graph, "info", "vertex classification and path counts", graph_info);
  CLI::App* core = app.add_subcommand("core", "core elements and beta")->require_subcommand(1);
  leaf(core, "mul", "product of two element files", core_mul);
  leaf(core, "beta", "beta of a core element", core_beta);
  leaf(core, "iexpand", "i-expansion at --level", core_iexpand);
  leaf(core, "norm", "operator norm of a homogeneous element", core_norm);
  leaf(core, "verify-beta", "homomorphism and covariance sweep", core_verify_beta);
  CLI::App* exel = app.add_subcommand("exel", "path-space Exel system")->require_subcommand(1);
  leaf(exel, "verify-transfer", "transfer operator identities", exel_verify_transfer);
  CLI::App* module = app.add_subcommand("module", "Hilbert module checks")->require_subcommand(1);
  leaf(module, "verify-frames", "Gram identities and reconstruction", module_verify_frames);
  leaf(module, "verify-u", "isometries U and U_i", module_verify_u);
  leaf(module, "crosscheck", "module beta against core beta", module_crosscheck);
  CLI::App* uhf = app.add_subcommand("uhf", "UHF to Cuntz algebra chain")->require_subcommand(1);
  leaf(uhf, "demo", "full verification chain for --n --N --depth", uhf_demo);
  CLI::App* dilation = app.add_subcommand("dilation", "integer dilation system")->require_subcommand(1);
  leaf(dilation, "verify", "lattice relations, Sigma_i and beta", dilation_verify);
  CLI::App* ktheory = app.add_subcommand("ktheory", "K-theory via Smith normal form")->require_subcommand(1);
  leaf(ktheory, "graph", "K_0 and K_1 of a graph algebra", ktheory_graph);
  leaf(ktheory, "paschke", "six-term sequence for a given beta_*", ktheory_paschke);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  Report report(command_echo(argc, argv));
  try {
    for (const auto& [cmd, fn] : handlers) {
      if (cmd->parsed()) fn(opt, report);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  report.print(opt.json);
  return report.failed() ? kExitFailed : kExitOk;
}
