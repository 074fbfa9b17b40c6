// gqft: synthesize, simulate and verify Fourier-transform circuits for
// finite groups.
//
//   gqft bratteli --group S4 [--dot]
//   gqft synth    --group g.json [--plan auto|beals|homothetic] [--stats] [--dot]
//   gqft simulate --circuit c.json [--input delta|uniform|random|f.json] [--element "(1 2)"] [--seed N]
//   gqft verify   --group D13 [--plan ...] [--tol 1e-8] [--seed N] [--cross-check]
//   gqft costs    --family symmetric --from 3 --to 6 [--fit]
//
// Exit codes: 0 success / verification passed, 1 verification failed,
// 2 input, capability or plan error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gqft/cost.hpp"
#include "gqft/errors.hpp"
#include "gqft/fourier.hpp"
#include "gqft/verify.hpp"

using namespace gqft;
using nlohmann::json;

namespace {

// A path to a JSON spec, or a short id: Z8, S4, D5, M7_3_2.
GroupSpec parse_group(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_group_spec(arg);
  std::smatch m;
  static const std::regex simple("([ZSD])([0-9]+)");
  static const std::regex meta("M([0-9]+)_([0-9]+)_([0-9]+)");
  if (std::regex_match(arg, m, simple)) {
    const int n = std::stoi(m[2]);
    GroupSpec spec = m[1] == "Z" ? GroupSpec::cyclic(n) : m[1] == "S" ? GroupSpec::symmetric(n) : GroupSpec::dihedral(n);
    make_group(spec);
    return spec;
  }
  if (std::regex_match(arg, m, meta)) {
    auto spec = GroupSpec::metacyclic(std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]));
    make_group(spec);
    return spec;
  }
  throw EncodingError("'" + arg + "' is neither a group spec file nor a group id like S4, Z8, D5, M7_3_2");
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw DomainError("cannot write '" + out + "'");
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<cplx> load_function(const Tower& tower, const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError("input function '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ParseError("input function must map element strings to [re, im]");
  std::vector<cplx> f(tower.order());
  for (const auto& [key, value] : j.items()) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number())
      throw ParseError("value for '" + key + "' must be [re, im]");
    f[tower.element_index(tower.group().parse(key))] = {value[0].get<double>(), value[1].get<double>()};
  }
  return f;
}

int run_bratteli(const std::string& group, bool dot, const std::string& out) {
  const auto ctx = QftContext::build(parse_group(group));
  if (dot) {
    emit(ctx->diagram->to_dot(), out);
  } else {
    json j = ctx->diagram->to_json();
    j["group"] = group_spec_to_json(ctx->group->spec());
    emit(j.dump(2), out);
  }
  return 0;
}

int run_synth(const std::string& group, const std::string& plan, bool stats, bool dot, const std::string& out) {
  const Synthesizer synth(QftContext::build(parse_group(group)));
  const auto sp = synth.plan(plan_kind_from_string(plan));
  const auto circuit = synth.synthesize(sp);
  const auto diags = validate(circuit);
  for (const auto& d : diags) std::cerr << "validate: " << d.str() << '\n';
  if (stats) {
    json s = synth.stats(circuit, sp).to_json();
    s["stages"] = sp.to_json();
    for (std::size_t i = 0; i < s["stages"].size(); ++i) s["stages"][i]["gates"] = synth.stats(circuit, sp).stages[i].gates;
    std::cerr << s.dump(2) << '\n';
  }
  emit(dot ? to_dot(circuit) : serialize(circuit), out);
  return diags.empty() ? 0 : 2;
}

int run_simulate(const std::string& circuit_path, const std::string& group_arg, const std::string& input,
                 const std::string& element, std::uint64_t seed, const std::string& backend_name,
                 const std::string& out) {
  const Circuit circuit = deserialize(read_file(circuit_path));
  GroupSpec spec;
  if (!group_arg.empty())
    spec = parse_group(group_arg);
  else if (circuit.group)
    spec = *circuit.group;
  else
    throw EncodingError("circuit has no group; pass --group");
  const auto ctx = QftContext::build(spec);
  if (!(ctx->layout == circuit.layout)) throw ExecutionError("circuit layout does not match the group's register layout");
  const auto& tower = *ctx->tower;

  std::vector<cplx> f;
  if (input == "delta")
    f = delta_function(tower, tower.element_index(element.empty() ? tower.group().identity() : tower.group().parse(element)));
  else if (input == "uniform")
    f = uniform_function(tower);
  else if (input == "random")
    f = random_function(tower, seed);
  else
    f = load_function(tower, input);

  const Backend backend = backend_name == "auto" ? choose_backend(circuit.layout) : backend_from_string(backend_name);
  auto state = encode_input(tower, circuit.layout, f, backend);
  Simulator(circuit).run(state);
  const OutputMap map(circuit.layout, *ctx->diagram);
  const auto decoded = decode_output(state, map);

  const FourierIndex index(*ctx->table);
  json amps = json::array();
  std::size_t slot = 0;
  const int top = ctx->tower->levels();
  for (int v = 0; v < index.nodes(); ++v)
    for (int r = 0; r < index.dim(v); ++r)
      for (int c = 0; c < index.dim(v); ++c, ++slot)
        amps.push_back({{"irrep", ctx->diagram->label(top, v)},
                        {"row", r},
                        {"col", c},
                        {"s", map.s_path(slot)},
                        {"t", map.t_path(slot)},
                        {"amplitude", cplx_json(decoded.amplitudes[slot])}});
  json doc = {{"group", spec.id()},
              {"backend", std::string(to_string(backend))},
              {"leakage", decoded.leakage},
              {"amplitudes", std::move(amps)}};
  emit(doc.dump(2), out);
  return 0;
}

int run_verify(const std::string& group, const std::string& plan, double tol, std::uint64_t seed,
               const std::string& backend_name, bool cross, const std::string& out) {
  VerifyOptions o;
  o.plan = plan_kind_from_string(plan);
  o.tolerance = tol;
  o.seed = seed;
  o.cross_check = cross;
  if (backend_name != "auto") o.backend = backend_from_string(backend_name);
  const auto report = verify_group(parse_group(group), o);
  emit(report.to_json().dump(2), out);
  std::cerr << report.group << ": " << (report.passed ? "PASS" : "FAIL") << " max deviation " << report.max_deviation
            << ", leakage " << report.max_leakage << '\n';
  return report.passed ? 0 : 1;
}

int run_costs(const std::string& family, int from, int to, const std::string& plan, bool fit, const std::string& out) {
  const auto rows = cost_report(family, from, to, plan_kind_from_string(plan));
  emit(cost_csv(rows), out);
  if (fit) {
    std::vector<double> xs, ys;
    for (const auto& r : rows)
      if (r.cost > 0) {
        xs.push_back(r.parameter);
        ys.push_back(static_cast<double>(r.cost));
      }
    if (xs.size() >= 3) {
      const auto quad = fit_polynomial(xs, ys, 2);
      const auto pb = power_bound(xs, ys);
      std::cerr << "quadratic fit relative residual " << quad.relative_residual << "; log-log slope " << pb.slope
                << ", bound " << pb.constant << " * n^" << pb.degree << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier-transform circuit synthesis over finite groups"};
  app.require_subcommand(1);

  std::string group, plan = "auto", out, circuit, input = "delta", element, backend = "auto", family;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  bool stats = false, dot = false, cross = false, fit = false;
  int from = 1, to = 1;

  auto* brat = app.add_subcommand("bratteli", "Print the Bratteli diagram of the group's tower");
  brat->add_option("--group", group, "Group spec file or id (Z6, S4, D5, M7_3_2)")->required();
  brat->add_flag("--dot", dot, "Graphviz output instead of JSON");
  brat->add_option("--out", out, "Output file (default stdout)");

  auto* syn = app.add_subcommand("synth", "Synthesize the Fourier-transform circuit");
  syn->add_option("--group", group, "Group spec file or id")->required();
  syn->add_option("--plan", plan, "auto | beals | homothetic");
  syn->add_flag("--stats", stats, "Print I, D, M and per-stage gate counts to stderr");
  syn->add_flag("--dot", dot, "Graphviz gate sequence instead of circuit JSON");
  syn->add_option("--out", out, "Output file (default stdout)");

  auto* sim = app.add_subcommand("simulate", "Run a circuit on an input function");
  sim->add_option("--circuit", circuit, "Circuit JSON")->required();
  sim->add_option("--group", group, "Override the group recorded in the circuit");
  sim->add_option("--input", input, "delta | uniform | random | JSON file mapping element -> [re, im]");
  sim->add_option("--element", element, "Element for --input delta (default identity)");
  sim->add_option("--seed", seed, "Seed for --input random");
  sim->add_option("--backend", backend, "auto | dense | sparse");
  sim->add_option("--out", out, "Output file (default stdout)");

  auto* ver = app.add_subcommand("verify", "Compare the circuit with the dense reference transform");
  ver->add_option("--group", group, "Group spec file or id")->required();
  ver->add_option("--plan", plan, "auto | beals | homothetic");
  ver->add_option("--tol", tol, "Maximum amplitude deviation");
  ver->add_option("--seed", seed, "Column sampling seed");
  ver->add_option("--backend", backend, "auto | dense | sparse");
  ver->add_flag("--cross-check", cross, "Also run the other plan for metacyclic groups and compare");
  ver->add_option("--out", out, "Report file (default stdout)");

  auto* costs = app.add_subcommand("costs", "Gate-count table over a family");
  costs->add_option("--family", family, "cyclic | cyclic2 | symmetric | dihedral")->required();
  costs->add_option("--from", from, "First parameter")->required();
  costs->add_option("--to", to, "Last parameter")->required();
  costs->add_option("--plan", plan, "auto | beals | homothetic");
  costs->add_flag("--fit", fit, "Print quadratic and power-law fits to stderr");
  costs->add_option("--out", out, "CSV file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*brat) return run_bratteli(group, dot, out);
    if (*syn) return run_synth(group, plan, stats, dot, out);
    if (*sim) return run_simulate(circuit, group, input, element, seed, backend, out);
    if (*ver) return run_verify(group, plan, tol, seed, backend, cross, out);
    if (*costs) return run_costs(family, from, to, plan, fit, out);
  } catch (const Error& e) {
    std::cerr << "gqft: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gqft: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
