#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include <dominion/json_io.hpp>

using namespace dominion;

namespace {

struct CommonOpts {
  std::string in;
  std::string out;
  double tol = 1e-9;
  int samples = 500;
  uint64_t seed = 0;
  std::vector<double> t_grid = default_t_grid();
  std::vector<double> alpha_grid;  // empty: derived from the lower bound
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_input = true) {
  auto* in = cmd->add_option("--in", o.in, "instance file (JSON)");
  if (needs_input) in->required();
  cmd->add_option("--out", o.out, "write the report here instead of stdout");
  cmd->add_option("--tol", o.tol, "comparison tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--samples", o.samples, "random samples per probe")->check(CLI::Range(1, 1000000));
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--t-grid", o.t_grid, "semigroup time grid")->delimiter(',');
  cmd->add_option("--alpha-grid", o.alpha_grid, "resolvent shift grid")->delimiter(',');
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty())
    std::cout << text;
  else
    write_text_file(o.out, text);
}

void validate_grids(const CommonOpts& o) {
  if (o.t_grid.empty()) throw Error(ErrorCode::InvalidParameters, "t grid must not be empty");
  for (double t : o.t_grid)
    if (t < 0.0) throw Error(ErrorCode::InvalidParameters, "t grid entries must be nonnegative");
}

struct LoadedPair {
  Pairing pairing;
  OperatorForm a;
  OperatorForm b;
};

LoadedPair load_domination_instance(const std::string& path) {
  const std::string text = read_text_file(path);
  switch (detect_instance_kind(text)) {
    case InstanceKind::Magnetic: {
      const MagneticInstance inst = parse_magnetic(text);
      return {Pairing::bundle_modulus(inst.bundle_space()), magnetic_operator(inst),
              formal_laplacian(inst.graph)};
    }
    case InstanceKind::Graph: {
      const WeightedGraph g = parse_graph(text);
      OperatorForm lap = formal_laplacian(g);
      return {Pairing::lattice_abs(g.scalar_space()), lap, lap};
    }
    case InstanceKind::OperatorPair: {
      OperatorPairInstance inst = parse_operator_pair(text);
      return {std::move(inst.pairing), std::move(inst.a), std::move(inst.b)};
    }
    default:
      throw Error(ErrorCode::SchemaViolation,
                  "expected a magnetic, graph or operator-pair instance", "");
  }
}

OperatorOnConeInstance load_cone_operator(const std::string& path) {
  const std::string text = read_text_file(path);
  switch (detect_instance_kind(text)) {
    case InstanceKind::Graph: {
      const WeightedGraph g = parse_graph(text);
      return {Cone::orthant(g.scalar_space()), formal_laplacian(g)};
    }
    case InstanceKind::OperatorOnCone:
      return parse_operator_on_cone(text);
    default:
      throw Error(ErrorCode::SchemaViolation, "expected a graph or operator-on-cone instance", "");
  }
}

void write_config(JsonWriter& w, const CommonOpts& o) {
  w.key("config").begin_object();
  w.key("tol").value(o.tol);
  w.key("samples").value(o.samples);
  w.key("seed").value(o.seed);
  w.end_object();
}

int run_project(const CommonOpts& o, bool moreau) {
  const ConeInstance inst = parse_cone_instance(read_text_file(o.in));
  if (!inst.vector)
    throw Error(ErrorCode::SchemaViolation, "this command needs a \"vector\" entry", "/vector");
  JsonWriter w;
  w.begin_object();
  w.key("command").value(moreau ? "moreau" : "project");
  write_config(w, o);
  if (moreau) {
    const MoreauPair mp = inst.cone.moreau_decompose(*inst.vector);
    w.key("h1").value(mp.h1);
    w.key("h2").value(mp.h2);
    w.key("orthogonality").value(inst.cone.inner(mp.h1, mp.h2));
    RVec sum(mp.h1.size());
    for (size_t i = 0; i < sum.size(); ++i) sum[i] = mp.h1[i] + mp.h2[i];
    w.key("norm_identity_deviation")
        .value(std::abs(inst.cone.norm(*inst.vector) - inst.cone.norm(sum)));
  } else {
    const RVec p = inst.cone.project(*inst.vector);
    w.key("projection").value(p);
    w.key("membership_margin").value(inst.cone.membership_margin(p));
  }
  w.key("verdict").value(true);
  w.end_object();
  emit(o, w.str() + "\n");
  return 0;
}

int run_check_cone(const CommonOpts& o, const std::string& property) {
  const ConeInstance inst = parse_cone_instance(read_text_file(o.in));
  const ProbeResult res = property == "selfdual"
                              ? inst.cone.probe_self_dual(o.samples, o.seed, o.tol)
                              : inst.cone.probe_isotone(o.samples, o.seed, o.tol);
  JsonWriter w;
  w.begin_object();
  w.key("command").value("check-cone");
  w.key("property").value(property);
  write_config(w, o);
  w.key("verdict").value(res.holds);
  w.key("trials").value(res.trials);
  w.key("margin").value(res.margin);
  w.key("witness");
  if (res.holds) {
    w.null_value();
  } else {
    w.begin_object();
    w.key("vector").value(res.witness);
    if (!res.witness_second.empty()) w.key("partner").value(res.witness_second);
    w.key("detail").value(res.detail);
    w.end_object();
  }
  w.end_object();
  emit(o, w.str() + "\n");
  return res.holds ? 0 : 1;
}

int run_check_bd(const CommonOpts& o) {
  const OperatorOnConeInstance inst = load_cone_operator(o.in);
  const BdReport rep = check_first_bd(inst.op, inst.cone, o.samples, o.seed, o.tol);
  JsonWriter w;
  w.begin_object();
  w.key("command").value("check-bd");
  write_config(w, o);
  w.key("verdict").value(rep.holds);
  w.key("max_value").value(rep.max_value);
  w.key("witness");
  if (rep.witness)
    w.value(*rep.witness);
  else
    w.null_value();
  w.end_object();
  emit(o, w.str() + "\n");
  return rep.holds ? 0 : 1;
}

int run_check_positivity(const CommonOpts& o) {
  validate_grids(o);
  const OperatorOnConeInstance inst = load_cone_operator(o.in);
  const PositivityReport rep =
      check_positivity_preserving(inst.op, inst.cone, o.t_grid, o.samples, o.seed, o.tol);
  JsonWriter w;
  w.begin_object();
  w.key("command").value("check-positivity");
  write_config(w, o);
  w.key("t_grid").value(RVec(o.t_grid.begin(), o.t_grid.end()));
  w.key("verdict").value(rep.preserving);
  w.key("sampled").value(rep.sampled_verdict);
  w.key("structural");
  if (rep.structural_verdict)
    w.value(*rep.structural_verdict);
  else
    w.null_value();
  w.key("agree").value(rep.agree);
  w.key("worst_margin").value(rep.worst_margin);
  w.key("witness");
  if (rep.witness) {
    w.begin_object();
    w.key("g").value(rep.witness->g);
    w.key("t").value(rep.witness->t);
    w.key("margin").value(rep.witness->margin);
    w.end_object();
  } else {
    w.null_value();
  }
  w.end_object();
  emit(o, w.str() + "\n");
  return rep.preserving ? 0 : 1;
}

RunConfig to_run_config(const CommonOpts& o) {
  RunConfig cfg;
  cfg.tol = o.tol;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.t_grid = o.t_grid;
  if (!o.alpha_grid.empty()) cfg.alpha_grid = o.alpha_grid;
  return cfg;
}

void write_grid_result(JsonWriter& w, const GridCheckResult& res) {
  w.begin_object();
  w.key("verdict").value(res.holds);
  w.key("exact").value(res.exact);
  w.key("margin").value(res.margin);
  w.key("per_grid").value(res.per_grid);
  w.key("witness");
  if (res.witness) {
    w.begin_object();
    w.key("grid_value").value(res.witness->grid_value);
    w.key("block").begin_array().value(res.witness->block_x).value(res.witness->block_y).end_array();
    w.key("f1").value(res.witness->f1);
    w.key("margin").value(res.witness->margin);
    w.end_object();
  } else {
    w.null_value();
  }
  w.end_object();
}

int run_check_domination(const CommonOpts& o, const std::string& mode) {
  validate_grids(o);
  const LoadedPair inst = load_domination_instance(o.in);
  const RunConfig cfg = to_run_config(o);

  if (mode == "all") {
    const DominationReport rep = verify_theorem_equivalence(inst.a, inst.b, inst.pairing, cfg);
    emit(o, serialize_report(rep, "check-domination"));
    return (rep.semigroup && rep.resolvent && rep.form) ? 0 : 1;
  }

  JsonWriter w;
  w.begin_object();
  w.key("command").value("check-domination");
  w.key("mode").value(mode);
  write_config(w, o);
  bool verdict = true;
  if (mode == "semigroup") {
    const auto res = check_semigroup_domination(inst.a, inst.b, inst.pairing, o.t_grid, o.tol);
    w.key("t_grid").value(RVec(o.t_grid.begin(), o.t_grid.end()));
    w.key("result");
    write_grid_result(w, res);
    verdict = res.holds;
  } else if (mode == "resolvent") {
    std::vector<double> grid = o.alpha_grid;
    if (grid.empty()) {
      const double lambda = std::max(inst.a.lower_bound_lambda(), inst.b.lower_bound_lambda());
      grid = {lambda + 0.1, lambda + 1.0, lambda + 10.0};
    }
    const auto res = check_resolvent_domination(inst.a, inst.b, inst.pairing, grid, o.tol);
    w.key("alpha_grid").value(RVec(grid.begin(), grid.end()));
    w.key("result");
    write_grid_result(w, res);
    verdict = res.holds;
  } else {
    const auto res = check_form_domination(inst.a, inst.b, inst.pairing, o.samples, o.seed, o.tol);
    w.key("result").begin_object();
    w.key("verdict").value(res.holds);
    w.key("margin").value(res.margin);
    w.key("ideal_i1_vacuous").value(res.ideal_i1_vacuous);
    w.key("ideal_i2_ok").value(res.ideal_i2_ok);
    w.key("witness");
    if (res.witness) {
      w.begin_object();
      w.key("f1").value(res.witness->f1);
      w.key("f2").value(res.witness->f2);
      w.key("margin").value(res.witness->margin);
      w.end_object();
    } else {
      w.null_value();
    }
    w.end_object();
    verdict = res.holds;
  }
  w.key("verdict").value(verdict);
  w.end_object();
  emit(o, w.str() + "\n");
  return verdict ? 0 : 1;
}

int run_verify_theorem(const CommonOpts& o) {
  validate_grids(o);
  const LoadedPair inst = load_domination_instance(o.in);
  const DominationReport rep =
      verify_theorem_equivalence(inst.a, inst.b, inst.pairing, to_run_config(o));
  emit(o, serialize_report(rep, "verify-theorem"));
  return (rep.semigroup && rep.resolvent && rep.form) ? 0 : 1;
}

int run_kato(const CommonOpts& o) {
  const LoadedPair inst = load_domination_instance(o.in);
  const KatoResult res = kato_check(inst.a, inst.b, inst.pairing, o.samples, o.seed, o.tol);
  JsonWriter w;
  w.begin_object();
  w.key("command").value("kato");
  write_config(w, o);
  w.key("verdict").value(res.holds);
  w.key("margin").value(res.margin);
  w.end_object();
  emit(o, w.str() + "\n");
  return res.holds ? 0 : 1;
}

int run_gen(const CommonOpts& o, const std::string& kind, int n, int max_fiber, double density,
            bool ensure_w_geq_c) {
  if (o.out.empty())
    throw Error(ErrorCode::InvalidParameters, "gen writes instances to files; pass --out");
  std::string text;
  if (kind == "graph") {
    text = serialize_graph(random_graph(n, density, o.seed));
  } else {
    text = serialize_magnetic(random_instance(n, max_fiber, density, ensure_w_geq_c, o.seed));
  }
  write_text_file(o.out, text);
  JsonWriter w;
  w.begin_object();
  w.key("command").value("gen");
  w.key("kind").value(kind);
  w.key("out").value(o.out);
  w.key("seed").value(o.seed);
  w.key("verdict").value(true);
  w.end_object();
  std::cout << w.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite ordered-Hilbert-space toolkit: cones, pairings, domination checks"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string property = "selfdual";
  std::string mode = "all";
  std::string kind = "graph";
  int n = 6;
  int max_fiber = 3;
  double density = 0.5;
  bool ensure_w = false;

  auto* project = app.add_subcommand("project", "project a vector onto a cone");
  add_common(project, opts);
  auto* moreau = app.add_subcommand("moreau", "split a vector into its cone components");
  add_common(moreau, opts);
  auto* check_cone = app.add_subcommand("check-cone", "probe self-duality or isotonicity");
  add_common(check_cone, opts);
  check_cone->add_option("--property", property, "selfdual | isotone")
      ->check(CLI::IsMember({"selfdual", "isotone"}));
  auto* check_bd = app.add_subcommand("check-bd", "first positivity criterion of a form");
  add_common(check_bd, opts);
  auto* check_pos = app.add_subcommand("check-positivity", "cone preservation of a semigroup");
  add_common(check_pos, opts);
  auto* check_dom = app.add_subcommand("check-domination", "domination checks for a pair");
  add_common(check_dom, opts);
  check_dom->add_option("--mode", mode, "semigroup | resolvent | form | all")
      ->check(CLI::IsMember({"semigroup", "resolvent", "form", "all"}));
  auto* verify = app.add_subcommand("verify-theorem", "all three characterizations + unanimity");
  add_common(verify, opts);
  auto* kato = app.add_subcommand("kato", "generator-level inequality for a dominated pair");
  add_common(kato, opts);
  auto* gen = app.add_subcommand("gen", "write a random instance to a file");
  add_common(gen, opts, false);
  gen->add_option("--kind", kind, "graph | magnetic")->check(CLI::IsMember({"graph", "magnetic"}));
  gen->add_option("--n", n, "vertex count")->check(CLI::Range(1, 1000));
  gen->add_option("--max-fiber", max_fiber, "largest fiber dimension")->check(CLI::Range(1, 16));
  gen->add_option("--edge-density", density, "probability of extra edges");
  gen->add_flag("--ensure-w-geq-c", ensure_w, "make W(x) - c(x) I positive semidefinite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "{\"code\":\"UsageError\",\"message\":\"" << e.what() << "\",\"path\":\"\"}\n";
    return 2;
  }

  try {
    if (project->parsed()) return run_project(opts, false);
    if (moreau->parsed()) return run_project(opts, true);
    if (check_cone->parsed()) return run_check_cone(opts, property);
    if (check_bd->parsed()) return run_check_bd(opts);
    if (check_pos->parsed()) return run_check_positivity(opts);
    if (check_dom->parsed()) return run_check_domination(opts, mode);
    if (verify->parsed()) return run_verify_theorem(opts);
    if (kato->parsed()) return run_kato(opts);
    if (gen->parsed()) return run_gen(opts, kind, n, max_fiber, density, ensure_w);
  } catch (const Error& e) {
    JsonWriter w;
    w.begin_object();
    w.key("code").value(error_code_name(e.code()));
    w.key("message").value(e.message());
    w.key("path").value(e.path());
    w.end_object();
    std::cerr << w.str() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "{\"code\":\"InternalError\",\"message\":\"" << e.what() << "\",\"path\":\"\"}\n";
    return 2;
  }
  return 2;
}
