#include <nlohmann/json.hpp>

#include "gqft/circuit.hpp"
#include "gqft/errors.hpp"

namespace gqft {

using nlohmann::json;

namespace {

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json provenance_json(const Provenance& p) {
  return {{"stage", p.stage}, {"strategy", p.strategy}, {"level", p.level}, {"iteration", p.iteration},
          {"role", p.role}};
}

json block_json(const SchurBlock& b) {
  return {{"node", b.node}, {"m", b.m}, {"d", b.d}, {"small", matrix_json(b.small)}, {"rows", b.rows}};
}

struct GateWriter {
  json operator()(const ConditionedUnitary& g) const {
    json branches = json::array();
    for (const auto& b : g.branches) branches.push_back({{"when", b.when}, {"matrix", matrix_json(b.matrix)}});
    return {{"targets", g.targets}, {"controls", g.controls}, {"branches", std::move(branches)}};
  }
  json operator()(const ClassicalPermutation& g) const { return {{"registers", g.registers}, {"image", g.image}}; }
  json operator()(const Phase& g) const {
    return {{"registers", g.registers}, {"modulus", g.modulus}, {"exponents", g.exponents}};
  }
  json operator()(const PrimitiveCyclicQFT& g) const {
    return {{"target", g.target}, {"order", g.order},       {"offset", g.offset},
            {"inverse", g.inverse}, {"controls", g.controls}, {"when", g.when}};
  }
  json operator()(const StructuredUnitary& g) const {
    json paths = json::array();
    for (const auto& p : g.paths) paths.push_back({{"values", p.values}, {"node", p.node}, {"row", p.row}});
    json mats = json::array();
    for (const auto& m : g.node_matrices) mats.push_back(matrix_json(m));
    json blocks = json::array();
    for (const auto& b : g.blocks) blocks.push_back(block_json(b));
    return {{"level", g.level}, {"generator", g.generator}, {"inverse", g.inverse},        {"registers", g.registers},
            {"paths", std::move(paths)}, {"node_matrices", std::move(mats)}, {"certificate", std::move(blocks)}};
  }
};

// Readers carry a JSON-pointer style path for error messages.
[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw ParseError("at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) bad(path, "expected object");
  auto it = j.find(key);
  if (it == j.end()) bad(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string join(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

int read_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected integer");
  return j.get<int>();
}

bool read_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) bad(path, "expected boolean");
  return j.get<bool>();
}

std::string read_string(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected string");
  return j.get<std::string>();
}

const json& read_array(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected array");
  return j;
}

std::vector<int> read_ints(const json& j, const std::string& path) {
  std::vector<int> out;
  for (std::size_t i = 0; i < read_array(j, path).size(); ++i) out.push_back(read_int(j[i], join(path, i)));
  return out;
}

std::vector<std::vector<int>> read_tuples(const json& j, const std::string& path) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < read_array(j, path).size(); ++i) out.push_back(read_ints(j[i], join(path, i)));
  return out;
}

double read_double(const json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected number");
  return j.get<double>();
}

cplx read_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) bad(path, "expected [re, im]");
  return {read_double(j[0], join(path, 0)), read_double(j[1], join(path, 1))};
}

Matrix read_matrix(const json& j, const std::string& path) {
  const auto rows = read_array(j, path).size();
  if (rows == 0) return Matrix(0, 0);
  const auto cols = read_array(j[0], join(path, 0)).size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto rp = join(path, r);
    if (read_array(j[r], rp).size() != cols) bad(rp, "ragged matrix row");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = read_complex(j[r][c], join(rp, c));
  }
  return m;
}

Provenance read_provenance(const json& j, const std::string& path) {
  Provenance p;
  p.stage = read_string(field(j, path, "stage"), join(path, "stage"));
  p.strategy = read_string(field(j, path, "strategy"), join(path, "strategy"));
  p.level = read_int(field(j, path, "level"), join(path, "level"));
  p.iteration = read_int(field(j, path, "iteration"), join(path, "iteration"));
  p.role = read_string(field(j, path, "role"), join(path, "role"));
  return p;
}

SchurBlock read_block(const json& j, const std::string& path) {
  SchurBlock b;
  b.node = read_int(field(j, path, "node"), join(path, "node"));
  b.m = read_int(field(j, path, "m"), join(path, "m"));
  b.d = read_int(field(j, path, "d"), join(path, "d"));
  b.small = read_matrix(field(j, path, "small"), join(path, "small"));
  b.rows = read_tuples(field(j, path, "rows"), join(path, "rows"));
  return b;
}

GateOp read_op(const json& j, const std::string& path) {
  const std::string kind = read_string(field(j, path, "kind"), join(path, "kind"));
  auto f = [&](const char* key) -> const json& { return field(j, path, key); };
  auto p = [&](const char* key) { return join(path, key); };
  if (kind == "conditioned_unitary") {
    ConditionedUnitary g;
    g.targets = read_ints(f("targets"), p("targets"));
    g.controls = read_ints(f("controls"), p("controls"));
    const auto& branches = read_array(f("branches"), p("branches"));
    for (std::size_t i = 0; i < branches.size(); ++i) {
      const auto bp = join(p("branches"), i);
      g.branches.push_back({read_tuples(field(branches[i], bp, "when"), join(bp, "when")),
                            read_matrix(field(branches[i], bp, "matrix"), join(bp, "matrix"))});
    }
    return g;
  }
  if (kind == "classical_permutation") {
    ClassicalPermutation g;
    g.registers = read_ints(f("registers"), p("registers"));
    for (int v : read_ints(f("image"), p("image"))) {
      if (v < 0) bad(p("image"), "negative image value");
      g.image.push_back(static_cast<std::uint32_t>(v));
    }
    return g;
  }
  if (kind == "phase") {
    Phase g;
    g.registers = read_ints(f("registers"), p("registers"));
    g.modulus = read_int(f("modulus"), p("modulus"));
    g.exponents = read_ints(f("exponents"), p("exponents"));
    return g;
  }
  if (kind == "cyclic_qft") {
    PrimitiveCyclicQFT g;
    g.target = read_int(f("target"), p("target"));
    g.order = read_int(f("order"), p("order"));
    g.offset = read_int(f("offset"), p("offset"));
    g.inverse = read_bool(f("inverse"), p("inverse"));
    g.controls = read_ints(f("controls"), p("controls"));
    g.when = read_tuples(f("when"), p("when"));
    return g;
  }
  if (kind == "structured_unitary") {
    StructuredUnitary g;
    g.level = read_int(f("level"), p("level"));
    g.generator = read_int(f("generator"), p("generator"));
    g.inverse = read_bool(f("inverse"), p("inverse"));
    g.registers = read_ints(f("registers"), p("registers"));
    const auto& paths = read_array(f("paths"), p("paths"));
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const auto pp = join(p("paths"), i);
      g.paths.push_back({read_ints(field(paths[i], pp, "values"), join(pp, "values")),
                         read_int(field(paths[i], pp, "node"), join(pp, "node")),
                         read_int(field(paths[i], pp, "row"), join(pp, "row"))});
    }
    const auto& mats = read_array(f("node_matrices"), p("node_matrices"));
    for (std::size_t i = 0; i < mats.size(); ++i) g.node_matrices.push_back(read_matrix(mats[i], join(p("node_matrices"), i)));
    const auto& blocks = read_array(f("certificate"), p("certificate"));
    for (std::size_t i = 0; i < blocks.size(); ++i) g.blocks.push_back(read_block(blocks[i], join(p("certificate"), i)));
    return g;
  }
  bad(join(path, "kind"), "unknown gate kind '" + kind + "'");
}

RegisterRole read_role(const json& j, const std::string& path) {
  const auto s = read_string(j, path);
  if (s == "alpha") return RegisterRole::alpha;
  if (s == "s") return RegisterRole::s_edge;
  if (s == "t") return RegisterRole::t_edge;
  bad(path, "unknown register role '" + s + "'");
}

}  // namespace

json to_json(const Circuit& circuit) {
  json layout = json::array();
  for (const auto& r : circuit.layout.registers())
    layout.push_back({{"role", std::string(to_string(r.role))}, {"level", r.level}, {"radix", r.radix}});
  json gates = json::array();
  for (const auto& g : circuit.gates) {
    json j = std::visit(GateWriter{}, g.op);
    j["kind"] = std::string(gate_kind(g.op));
    j["provenance"] = provenance_json(g.provenance);
    gates.push_back(std::move(j));
  }
  json doc = {{"layout", std::move(layout)}, {"gates", std::move(gates)}};
  if (circuit.group) doc["group"] = group_spec_to_json(*circuit.group);
  return doc;
}

Circuit circuit_from_json(const json& doc) {
  Circuit c;
  std::vector<Register> regs;
  const auto& layout = read_array(field(doc, "", "layout"), "/layout");
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const auto path = join("/layout", i);
    Register r;
    r.role = read_role(field(layout[i], path, "role"), join(path, "role"));
    r.level = read_int(field(layout[i], path, "level"), join(path, "level"));
    r.radix = read_int(field(layout[i], path, "radix"), join(path, "radix"));
    regs.push_back(r);
  }
  try {
    c.layout = RegisterLayout(std::move(regs));
  } catch (const Error& e) {
    bad("/layout", e.what());
  }
  const auto& gates = read_array(field(doc, "", "gates"), "/gates");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto path = join("/gates", i);
    Gate g;
    g.op = read_op(gates[i], path);
    if (gates[i].contains("provenance")) g.provenance = read_provenance(gates[i]["provenance"], join(path, "provenance"));
    c.gates.push_back(std::move(g));
  }
  if (doc.contains("group")) {
    try {
      c.group = group_spec_from_json(doc["group"]);
    } catch (const Error& e) {
      bad("/group", e.what());
    }
  }
  return c;
}

std::string serialize(const Circuit& circuit) { return to_json(circuit).dump(); }

Circuit deserialize(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("malformed circuit document at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return circuit_from_json(doc);
}

}  // namespace gqft
