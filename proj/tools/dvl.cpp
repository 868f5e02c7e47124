// dvl: command-line front end. Reports go to stdout as JSON.
// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 validation failure.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "dvl/dvl.hpp"
#include "dvl/io.hpp"

namespace {

using dvl::cplx;
using dvl::io::json;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitInput = 2;
constexpr int kExitValidation = 3;

json report(const std::string& command, json inputs, json results) {
  return {{"schema", dvl::io::kSchemaVersion}, {"command", command}, {"inputs", std::move(inputs)},
          {"results", std::move(results)}};
}

int emit(json r, int status) {
  static const char* names[] = {"ok", "verification_failure", "input_error", "validation_failure"};
  r["status"] = names[status];
  std::cout << r.dump(2) << '\n';
  return status;
}

/// "re,im", "re" or a JSON [re, im].
cplx parse_cplx(const std::string& s) {
  if (!s.empty() && s.front() == '[') return dvl::io::decode_cplx(dvl::io::parse_text(s));
  std::stringstream in(s);
  std::string part;
  std::vector<double> v;
  while (std::getline(in, part, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw dvl::MalformedInput("not a complex number: '" + s + "'");
    v.push_back(x);
  }
  if (v.empty() || v.size() > 2) throw dvl::MalformedInput("not a complex number: '" + s + "'");
  return {v[0], v.size() == 2 ? v[1] : 0.0};
}

std::vector<double> parse_values(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part.empty()) continue;
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw dvl::MalformedInput("not a number: '" + part + "'");
    out.push_back(x);
  }
  return out;
}

/// Validation is advisory: a failure is reported on stderr and turns the exit
/// status into 3, but the command still runs.
int check_map(const dvl::EmbeddingMap& f, const std::string& source, const dvl::Tolerances& tol, json& evidence) {
  const dvl::ValidationReport v = dvl::validate(f, 1024, tol);
  evidence[source] = dvl::io::encode(v);
  if (v.ok()) return kExitOk;
  std::cerr << "warning: " << source << " fails validation; results may be meaningless\n";
  return kExitValidation;
}

struct Options {
  std::uint64_t seed = 0;
  std::string source;
  std::string source_b;
  int grid = 1024;
  int samples = 2048;
  std::string pick_input;
  std::string z;
  std::string w;
  std::string mode = "isomorphism";
  std::string mu_lambda;
  std::string mu_a;
  std::string suite;
  int pairs = 100;
  std::string family;
  std::string param;
  std::string values;
  std::string out;
  bool scan = false;
};

int cmd_validate(const Options& o, const dvl::Tolerances& tol) {
  const dvl::EmbeddingMap f = dvl::io::load_map_source(o.source, tol);
  const dvl::ValidationReport v = dvl::validate(f, o.grid, tol);
  if (!v.ok()) std::cerr << "warning: " << o.source << " fails validation\n";
  return emit(report("validate", {{"source", o.source}, {"grid", o.grid}}, dvl::io::encode(v)),
              v.ok() ? kExitOk : kExitValidation);
}

int cmd_crossings(const Options& o, const dvl::Tolerances& tol) {
  const dvl::EmbeddingMap f = dvl::io::load_map_source(o.source, tol);
  json evidence;
  const int status = check_map(f, o.source, tol, evidence);
  const dvl::CrossingPattern p = dvl::find_self_crossings(f, o.samples, tol);
  json r = report("crossings", {{"source", o.source}, {"samples", o.samples}}, dvl::io::encode(p));
  r["evidence"] = {{"validation", evidence}};
  return emit(r, status);
}

int cmd_invariants(const Options& o, const dvl::Tolerances& tol) {
  const dvl::EmbeddingMap f = dvl::io::load_map_source(o.source, tol);
  json evidence;
  const int status = check_map(f, o.source, tol, evidence);
  const dvl::CrossingPattern p = dvl::find_self_crossings(f, o.samples, tol);
  json classes = json::array();
  for (const auto& c : p.classes) {
    json entry = dvl::io::encode(dvl::ratio_tuple(f, c, tol));
    json pairs = json::array();
    for (std::size_t j = 0; j < c.size(); ++j)
      for (std::size_t k = j + 1; k < c.size(); ++k) pairs.push_back(dvl::io::encode(dvl::boundary_pair_data(f, c[j], c[k], tol)));
    entry["pair_data"] = pairs;
    classes.push_back(entry);
  }
  json r = report("invariants", {{"source", o.source}, {"samples", o.samples}}, {{"classes", classes}});
  r["evidence"] = {{"validation", evidence}, {"pattern", dvl::io::encode(p)}};
  return emit(r, status);
}

int cmd_pick(const Options& o, const dvl::Tolerances& tol) {
  const dvl::EmbeddingMap f = dvl::io::load_map_source(o.source, tol);
  const json req_json = dvl::io::guarded([&] {
    return o.pick_input.rfind('{', 0) == 0 ? dvl::io::parse_text(o.pick_input) : dvl::io::read_file(o.pick_input);
  });
  const dvl::io::PickRequest req = dvl::io::guarded([&] { return dvl::io::decode_pick_request(req_json); });
  const dvl::PickInstance inst = dvl::pick_matrix(f, req.nodes, req.targets, tol);
  const dvl::PsdReport psd = dvl::psd_check(inst.matrix, tol.psd);
  json r = report("pick", {{"source", o.source}, {"instance", dvl::io::encode(inst)}},
                  {{"feasible", psd.psd}, {"min_eigenvalue", dvl::min_eigenvalue(inst.matrix)}});
  r["evidence"] = dvl::io::encode(psd);
  return emit(r, kExitOk);
}

int cmd_metric(const Options& o, const dvl::Tolerances& tol) {
  const dvl::EmbeddingMap f = dvl::io::load_map_source(o.source, tol);
  const cplx z = parse_cplx(o.z);
  const cplx w = parse_cplx(o.w);
  const double d = dvl::metric_d(f, z, w, tol);
  json r = report("metric", {{"source", o.source}, {"z", dvl::io::encode(z)}, {"w", dvl::io::encode(w)}}, {{"d", d}});
  r["evidence"] = {{"kernel_zw", dvl::io::encode(dvl::kernel_eval(f, z, w, tol))},
                   {"kernel_zz", dvl::kernel_eval(f, z, z, tol).real()},
                   {"kernel_ww", dvl::kernel_eval(f, w, w, tol).real()}};
  return emit(r, kExitOk);
}

int cmd_classify(const Options& o, const dvl::Tolerances& tol) {
  if (o.mode != "isomorphism" && o.mode != "equality") throw dvl::MalformedInput("--mode must be isomorphism or equality");
  const dvl::ClassifyMode mode = o.mode == "equality" ? dvl::ClassifyMode::Equality : dvl::ClassifyMode::Isomorphism;
  const bool with_mu = !o.mu_lambda.empty() || !o.mu_a.empty();
  if (with_mu == !o.source_b.empty()) throw dvl::MalformedInput("give either a second map or --mu-lambda/--mu-a");
  const dvl::EmbeddingMap f = dvl::io::load_map_source(o.source, tol);
  json inputs = {{"map_a", o.source}, {"mode", o.mode}};
  dvl::Moebius mu;
  std::optional<dvl::EmbeddingMap> g;
  if (with_mu) {
    mu = dvl::Moebius(parse_cplx(o.mu_lambda.empty() ? "-1" : o.mu_lambda), parse_cplx(o.mu_a.empty() ? "0" : o.mu_a), tol);
    g = dvl::emb_compose(f, mu);
    inputs["mu"] = dvl::io::encode(mu);
  } else {
    g = dvl::io::load_map_source(o.source_b, tol);
    inputs["map_b"] = o.source_b;
  }
  json evidence;
  const std::string name_b = with_mu ? "map_a o mu" : o.source_b;
  int status = check_map(f, o.source, tol, evidence);
  status = std::max(status, check_map(*g, name_b, tol, evidence));
  const dvl::Classification c = dvl::classify(f, *g, mode, o.samples, tol);
  json results = dvl::io::encode(c.verdict);
  if (with_mu) {
    // Candidates map f's crossing points to g's, which undoes the precomposition.
    json rec = nullptr;
    double best = std::numeric_limits<double>::infinity();
    for (const dvl::Moebius& cand : c.verdict.candidates) {
      const dvl::Moebius inv = dvl::moebius_invert(cand);
      const double err = inv.parameter_distance(mu);
      if (err < best) {
        best = err;
        rec = {{"mu", dvl::io::encode(inv)}, {"mu_inverse", dvl::io::encode(cand)}, {"parameter_error", err}};
      }
    }
    results["recovered"] = rec;
  }
  json r = report("classify", inputs, results);
  r["evidence"] = {{"validation", evidence},
                   {"pattern_a", dvl::io::encode(c.pattern_f)},
                   {"pattern_b", dvl::io::encode(c.pattern_g)},
                   {"ratios_a", dvl::io::encode(c.ratios_f)},
                   {"ratios_b", dvl::io::encode(c.ratios_g)}};
  return emit(r, status);
}

int cmd_verify(const Options& o, const dvl::Tolerances& tol) {
  dvl::SuiteReport s;
  if (o.suite == "expansion")
    s = dvl::verify_expansion(1e-3, tol);
  else if (o.suite == "path_metric")
    s = dvl::verify_path_metric(tol);
  else if (o.suite == "kernel_diff")
    s = dvl::verify_kernel_diff(tol);
  else if (o.suite == "duality")
    s = dvl::verify_duality(o.seed, o.pairs, tol);
  else
    throw dvl::MalformedInput("unknown suite '" + o.suite + "'");
  json inputs = {{"suite", o.suite}};
  if (o.suite == "duality") inputs["pairs"] = o.pairs;
  return emit(report("verify", inputs, dvl::io::encode(s)), s.passed() ? kExitOk : kExitVerification);
}

struct SweepRow {
  double value = 0.0;
  dvl::CrossingPattern pattern;
  std::vector<dvl::RatioTuple> ratios;
};

std::string join_cplx(const std::vector<cplx>& zs) {
  std::string out;
  for (const cplx z : zs) {
    if (!out.empty()) out += ';';
    out += dvl::format_g(dvl::boundary_angle(z));
  }
  return out;
}

std::string csv_line(const SweepRow& row) {
  std::ostringstream os;
  os.precision(17);
  std::string points;
  std::string avalues;
  std::string ratios;
  for (const dvl::RatioTuple& t : row.ratios) {
    if (!points.empty()) {
      points += '|';
      avalues += '|';
      ratios += '|';
    }
    points += join_cplx(t.points);
    for (std::size_t k = 0; k < t.values.size(); ++k) {
      std::ostringstream v;
      v.precision(17);
      v << (k ? ";" : "") << t.values[k];
      avalues += v.str();
      std::ostringstream q;
      q.precision(17);
      q << (k ? ";" : "") << t.normalized()[k];
      ratios += q.str();
    }
  }
  os << row.value << ',' << row.pattern.classes.size() << ',' << points << ',' << avalues << ',' << ratios << ',';
  if (!row.ratios.empty() && row.ratios.front().values.size() >= 2)
    os << row.ratios.front().values[0] / row.ratios.front().values[1];
  return os.str();
}

int cmd_sweep(const Options& o, const dvl::Tolerances& tol) {
  const dvl::FamilyRef base = dvl::parse_family_ref(o.family);
  if (o.param.empty()) throw dvl::MalformedInput("--param is required");
  const std::vector<double> grid = parse_values(o.values);

  // Build every map first so a range violation aborts before any output.
  std::vector<dvl::EmbeddingMap> maps;
  for (const double v : grid) {
    dvl::FamilyRef s = base;
    s.params[o.param] = v;
    maps.push_back(dvl::make_family(s, tol));
  }

  std::vector<SweepRow> rows(grid.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), grid.size()));
  std::vector<std::string> errors(grid.size());
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < grid.size(); i += workers) {
      try {
        rows[i].value = grid[i];
        rows[i].pattern = dvl::find_self_crossings(maps[i], o.samples, tol);
        rows[i].ratios = dvl::ratio_tuples(maps[i], rows[i].pattern, tol);
      } catch (const dvl::Error& e) {
        errors[i] = e.what();
      }
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (std::thread& t : pool) t.join();
  }
  for (const std::string& e : errors)
    if (!e.empty()) throw dvl::DomainError(e);

  static const char* header = "value,classes,angles,a_values,ratios,a_ratio";
  if (!o.out.empty()) {
    std::ofstream csv(o.out);
    if (!csv) throw dvl::MalformedInput("cannot write '" + o.out + "'");
    csv << header << '\n';
    for (const SweepRow& r : rows) csv << csv_line(r) << '\n';
  }
  json out_rows = json::array();
  for (const SweepRow& r : rows) {
    json row = {{"value", r.value}, {"classes", r.pattern.classes.size()}, {"ratios", dvl::io::encode(r.ratios)}};
    if (!r.ratios.empty() && r.ratios.front().values.size() >= 2)
      row["a_ratio"] = r.ratios.front().values[0] / r.ratios.front().values[1];
    out_rows.push_back(row);
  }
  json inputs = {{"family", dvl::io::encode(base)}, {"param", o.param}, {"values", grid}, {"samples", o.samples}};
  if (!o.out.empty()) inputs["out"] = o.out;
  return emit(report("sweep", inputs, {{"rows", out_rows}, {"csv_columns", header}}), kExitOk);
}

int cmd_families(const Options& o, const dvl::Tolerances& tol) {
  const json kinds = {
      {{"kind", "f_r"}, {"params", {"r"}}, {"range", "0 < r < 1"}},
      {{"kind", "f_rs"}, {"params", {"r", "s"}}, {"range", "-1 < r, s < 1, r != s"}},
      {{"kind", "f_symmetric"}, {"params", {"r"}}, {"range", "0 < r < 1"}},
      {{"kind", "g_alpha"}, {"params", {"alpha"}}, {"range", "-1/2 < alpha < 1"}},
      {{"kind", "f_three_crossing"}, {"params", {"alpha0", "alpha1", "alpha"}},
       {"range", "0 < alpha0 < 1, -1/2 < alpha1, alpha < 1"}}};
  json three = {{"alpha0", dvl::kCatalogAlpha0},
                {"alpha1", dvl::kCatalogAlpha1},
                {"alpha", dvl::kCatalogAlpha},
                {"screen", dvl::io::encode(dvl::injectivity_screen(dvl::kCatalogAlpha0, dvl::kCatalogAlpha1, tol))}};
  if (o.scan) three["alpha1_scan"] = dvl::io::encode(dvl::scan_alpha1(dvl::kCatalogAlpha0, 0.01, tol));
  return emit(report("families", {{"scan", o.scan}}, {{"kinds", kinds}, {"f_three_crossing", three}}), kExitOk);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossing invariants, kernels and Pick problems for analytic discs in the unit ball"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--seed", o.seed, "Seed for randomized sampling")->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Check sphere attachment, derivative, injectivity, transversality");
  validate->add_option("map", o.source, "Family reference kind:k=v,... or EmbeddingMap/FamilyRef JSON file")->required();
  validate->add_option("--grid", o.grid, "Boundary sample count")->capture_default_str();

  auto* crossings = app.add_subcommand("crossings", "Boundary self-crossing classes");
  crossings->add_option("map", o.source)->required();
  crossings->add_option("--samples", o.samples)->capture_default_str();

  auto* invariants = app.add_subcommand("invariants", "A-values, ratio tuples and pair constants per crossing class");
  invariants->add_option("map", o.source)->required();
  invariants->add_option("--samples", o.samples)->capture_default_str();

  auto* pick = app.add_subcommand("pick", "Pick matrix feasibility");
  pick->add_option("map", o.source)->required();
  pick->add_option("instance", o.pick_input, "PickInstance JSON file or inline JSON")->required();

  auto* metric = app.add_subcommand("metric", "The metric d_f(z, w)");
  metric->add_option("map", o.source)->required();
  metric->add_option("--z", o.z, "re,im")->required();
  metric->add_option("--w", o.w, "re,im")->required();

  auto* classify = app.add_subcommand("classify", "Compare two maps through their crossing data");
  classify->add_option("map_a", o.source)->required();
  classify->add_option("map_b", o.source_b);
  classify->add_option("--mode", o.mode, "isomorphism or equality")->capture_default_str();
  classify->add_option("--mu-lambda", o.mu_lambda, "Compare map_a with map_a o mu; unimodular factor re,im");
  classify->add_option("--mu-a", o.mu_a, "Center of mu, re,im");
  classify->add_option("--samples", o.samples)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run a numeric property ladder over the catalog");
  verify->add_option("suite", o.suite, "expansion, path_metric, kernel_diff or duality")->required();
  verify->add_option("--pairs", o.pairs, "Random pairs per family (duality)")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Crossing data over a parameter grid");
  sweep->add_option("family", o.family, "Base family reference, e.g. f_three_crossing or f_rs:r=0.2")->required();
  sweep->add_option("--param", o.param)->required();
  sweep->add_option("--values", o.values, "Comma separated grid, possibly empty")->required();
  sweep->add_option("--out", o.out, "CSV output path");
  sweep->add_option("--samples", o.samples)->capture_default_str();

  auto* families = app.add_subcommand("families", "List the built-in families and catalog parameters");
  families->add_flag("--scan", o.scan, "Include the alpha1 scan evidence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  const dvl::Tolerances tol = dvl::Tolerances::from_environment();
  try {
    if (*validate) return cmd_validate(o, tol);
    if (*crossings) return cmd_crossings(o, tol);
    if (*invariants) return cmd_invariants(o, tol);
    if (*pick) return cmd_pick(o, tol);
    if (*metric) return cmd_metric(o, tol);
    if (*classify) return cmd_classify(o, tol);
    if (*verify) return cmd_verify(o, tol);
    if (*sweep) return cmd_sweep(o, tol);
    if (*families) return cmd_families(o, tol);
  } catch (const dvl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
