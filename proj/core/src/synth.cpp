#include "gqft/synth.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "gqft/errors.hpp"

namespace gqft {

std::shared_ptr<const QftContext> QftContext::build(const GroupSpec& spec) {
  auto ctx = std::make_shared<QftContext>();
  ctx->group = make_group(spec);
  ctx->tower = std::make_shared<Tower>(ctx->group);
  ctx->table = std::make_shared<RepresentationTable>(ctx->tower);
  ctx->diagram = std::make_shared<BratteliDiagram>(*ctx->table);
  ctx->layout = RegisterLayout::for_tower(*ctx->tower, *ctx->diagram);
  return ctx;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::beals:
      return "beals";
    case Strategy::homothetic:
      return "homothetic";
    case Strategy::nonsplit_cyclic:
      return "nonsplit-cyclic";
  }
  return "?";
}

std::string_view to_string(PlanKind k) {
  switch (k) {
    case PlanKind::automatic:
      return "auto";
    case PlanKind::beals:
      return "beals";
    case PlanKind::homothetic:
      return "homothetic";
  }
  return "?";
}

PlanKind plan_kind_from_string(std::string_view s) {
  if (s == "auto") return PlanKind::automatic;
  if (s == "beals") return PlanKind::beals;
  if (s == "homothetic") return PlanKind::homothetic;
  throw PlanError("unknown plan '" + std::string(s) + "' (expected auto, beals or homothetic)");
}

nlohmann::json StagePlan::to_json() const {
  auto out = nlohmann::json::array();
  for (const auto& l : levels)
    out.push_back({{"level", l.level},
                   {"strategy", std::string(to_string(l.strategy))},
                   {"index", l.index},
                   {"split", l.split},
                   {"abelian_transverse", l.abelian_transverse},
                   {"orbit_sizes", l.orbit_sizes},
                   {"note", l.note}});
  return out;
}

nlohmann::json SynthStats::to_json() const {
  auto stages_json = nlohmann::json::array();
  for (const auto& s : stages)
    stages_json.push_back(
        {{"level", s.level}, {"strategy", std::string(to_string(s.strategy))}, {"gates", s.gates}, {"cost", s.cost}});
  return {{"I", I},
          {"D", D},
          {"M", M},
          {"log2_order", log2_order},
          {"stages", std::move(stages_json)},
          {"total_gates", total_gates},
          {"total_cost", total_cost}};
}

ScaleFactorTable::ScaleFactorTable(const RepresentationTable& table, const BratteliDiagram& diagram) {
  const auto& tower = table.tower();
  for (int i = 1; i <= diagram.levels(); ++i) {
    const double ratio =
        static_cast<double>(tower.subgroup_order(i - 1)) / static_cast<double>(tower.subgroup_order(i));
    std::vector<std::vector<double>> level;
    for (int s = 0; s < diagram.node_count(i - 1); ++s) {
      std::vector<double> row;
      const double ds = diagram.dim(i - 1, s);
      for (const auto& e : diagram.out_edges(i - 1, s)) row.push_back(std::sqrt(ratio * diagram.dim(i, e.child) / ds));
      level.push_back(std::move(row));
    }
    a_.push_back(std::move(level));
  }
}

double ScaleFactorTable::at(int level, int sigma, int e) const {
  return row(level, sigma).at(static_cast<std::size_t>(e - 1));
}

const std::vector<double>& ScaleFactorTable::row(int level, int sigma) const {
  return a_.at(static_cast<std::size_t>(level - 1)).at(static_cast<std::size_t>(sigma));
}

double ScaleFactorTable::normalization_residual() const {
  double worst = 0.0;
  for (const auto& level : a_)
    for (const auto& row : level) {
      double s = 0.0;
      for (double a : row) s += a * a;
      worst = std::max(worst, std::abs(s - 1.0));
    }
  return worst;
}

namespace {

constexpr double kExact = 1e-12;

Provenance prov(int level, Strategy s, int iteration, std::string role) {
  return {"level " + std::to_string(level), std::string(to_string(s)), level, iteration, std::move(role)};
}

// Extend an injective partial map on [0, n) to a bijection by pairing the
// unused sources with the unused targets in increasing order.
std::vector<std::uint32_t> complete_bijection(std::uint64_t n, const std::map<std::uint64_t, std::uint64_t>& partial) {
  std::vector<std::int64_t> image(n, -1);
  std::vector<bool> used(n, false);
  for (const auto& [src, dst] : partial) {
    if (src >= n || dst >= n || used[dst]) throw SynthesisError("classical map is not injective");
    image[src] = static_cast<std::int64_t>(dst);
    used[dst] = true;
  }
  std::vector<std::uint64_t> free_dst;
  for (std::uint64_t x = 0; x < n; ++x)
    if (!used[x]) free_dst.push_back(x);
  std::size_t next = 0;
  std::vector<std::uint32_t> out(n);
  for (std::uint64_t x = 0; x < n; ++x)
    out[x] = static_cast<std::uint32_t>(image[x] >= 0 ? static_cast<std::uint64_t>(image[x]) : free_dst[next++]);
  return out;
}

std::vector<int> edge_registers(const RegisterLayout& layout, RegisterRole role, int from, int to) {
  std::vector<int> out;
  for (int l = from; l <= to; ++l) out.push_back(layout.index_of(role, l));
  return out;
}

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Element power(const Group& g, const Element& x, int k) {
  Element out = g.identity();
  for (int i = 0; i < k; ++i) out = g.mul(out, x);
  return out;
}

}  // namespace

struct Synthesizer::OrbitData {
  int Q = 1;
  // image[k][sigma]: the node h -> sigma(gamma^-k h gamma^k), k in [0, Q).
  std::vector<std::vector<int>> image;
  std::vector<int> orbit_size;  // per node of level-1
};

Synthesizer::Synthesizer(std::shared_ptr<const QftContext> ctx)
    : ctx_(std::move(ctx)), scale_(*ctx_->table, *ctx_->diagram) {}

Synthesizer::OrbitData Synthesizer::orbit_data(int level) const {
  const auto& tower = *ctx_->tower;
  const auto& G = tower.group();
  const auto& table = *ctx_->table;
  const auto& diagram = *ctx_->diagram;
  const int base = level - 1;
  const auto& T = tower.transversal(level);
  OrbitData od;
  od.Q = static_cast<int>(T.size());

  for (int s = 0; s < diagram.node_count(base); ++s)
    if (diagram.dim(base, s) != 1) throw PlanError("level " + std::to_string(base) + " is not abelian");
  const Element gamma = od.Q > 1 ? T[1] : G.identity();
  for (int c = 0; c < od.Q; ++c)
    if (T[static_cast<std::size_t>(c)] != power(G, gamma, c))
      throw PlanError("transversal of level " + std::to_string(level) + " is not the powers of one element");
  if (power(G, gamma, od.Q) != G.identity())
    throw PlanError("extension at level " + std::to_string(level) + " is not split");

  const auto base_gens = tower.generators_in(base);
  // Character values of every base node on the base generators.
  auto signature = [&](int node, const Element& conj) {
    std::vector<cplx> out;
    for (int k : base_gens) {
      const Element h = tower.generators()[static_cast<std::size_t>(k)].element;
      const Element c = G.mul(G.mul(G.inverse(conj), h), conj);
      if (G.level_of(c) > base) throw PlanError("transversal does not normalize G_" + std::to_string(base));
      out.push_back(table.evaluate(base, node, c)(0, 0));
    }
    return out;
  };
  std::vector<std::vector<cplx>> plain;
  for (int s = 0; s < diagram.node_count(base); ++s) plain.push_back(signature(s, G.identity()));
  for (int k = 0; k < od.Q; ++k) {
    const Element gk = power(G, gamma, k);
    std::vector<int> img;
    for (int s = 0; s < diagram.node_count(base); ++s) {
      const auto sig = signature(s, gk);
      int found = -1;
      for (int t = 0; t < diagram.node_count(base) && found < 0; ++t) {
        bool same = true;
        for (std::size_t x = 0; x < sig.size() && same; ++x) same = std::abs(sig[x] - plain[static_cast<std::size_t>(t)][x]) < 1e-9;
        if (same) found = t;
      }
      if (found < 0)
        throw SynthesisError("conjugate of " + diagram.label(base, s) + " not found among level " +
                             std::to_string(base) + " representations");
      img.push_back(found);
    }
    od.image.push_back(std::move(img));
  }

  // Exactness: rho(gamma) must carry the block of sigma to the block of
  // sigma^gamma with phase omega_Q^{e-1}, e the edge index from sigma.
  const int gamma_gen = [&] {
    if (od.Q == 1) return -1;
    const auto& w = tower.transversal_word_at(level, 1);
    if (w.size() != 1 || w[0].inverse) throw PlanError("transverse generator is not in the generating set");
    return w[0].generator;
  }();
  for (int s = 0; s < diagram.node_count(base); ++s) {
    int q = 1;
    while (q < od.Q && od.image[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] != s) ++q;
    if (od.Q % q != 0) throw PlanError("orbit size does not divide the transverse order");
    od.orbit_size.push_back(q);
    const auto& edges = diagram.out_edges(base, s);
    if (static_cast<int>(edges.size()) != od.Q / q)
      throw PlanError("out-degree of " + diagram.label(base, s) + " differs from the stabilizer order");
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto& rho = table.rep(level, edges[e].child);
      if (rho.dim != q) throw PlanError("representation " + rho.label + " is not induced from a full orbit");
      if (gamma_gen < 0) continue;
      const Matrix g = table.generator_image(level, edges[e].child, gamma_gen);
      const int sl = edges[e].slot;
      const int next = (sl + 1) % q;
      if (rho.parents[static_cast<std::size_t>(next)] != od.image[1][static_cast<std::size_t>(s)])
        throw PlanError("in-slots of " + rho.label + " do not follow the orbit");
      Matrix expect = Matrix::Zero(q, 1);
      expect(next, 0) = root_of_unity(od.Q, static_cast<long long>(e));
      if (max_abs(g.col(sl) - expect) > kExact)
        throw PlanError("transverse generator does not act homothetically on " + rho.label);
    }
  }
  return od;
}

LevelPlan Synthesizer::certify(int level, Strategy strategy) const {
  const auto& tower = *ctx_->tower;
  const auto& table = *ctx_->table;
  const auto& diagram = *ctx_->diagram;
  if (level < 1 || level > tower.levels()) throw PlanError("level out of range");
  LevelPlan lp;
  lp.level = level;
  lp.strategy = strategy;
  lp.index = tower.index(level);
  switch (strategy) {
    case Strategy::beals:
      lp.note = "separation of variables over " + std::to_string(lp.index) + " cosets";
      break;
    case Strategy::homothetic: {
      const auto od = orbit_data(level);
      lp.split = true;
      lp.abelian_transverse = true;
      lp.orbit_sizes = od.orbit_size;
      lp.note = "split cyclic extension of order " + std::to_string(od.Q) + " acting by exact permutation";
      break;
    }
    case Strategy::nonsplit_cyclic: {
      if (lp.index != 2) throw PlanError("nonsplit-cyclic stage needs an index-2 step at level " + std::to_string(level));
      const auto& G = tower.group();
      int gen = -1;
      for (int k : tower.generators_in(level))
        if (tower.generators()[static_cast<std::size_t>(k)].level == level) {
          if (gen >= 0) throw PlanError("level " + std::to_string(level) + " has several new generators");
          gen = k;
        }
      if (gen < 0) throw PlanError("no generator at level " + std::to_string(level));
      const Element gamma = tower.generators()[static_cast<std::size_t>(gen)].element;
      const auto n_i = static_cast<int>(tower.subgroup_order(level));
      if (tower.transversal(level)[1] != gamma || power(G, gamma, n_i) != G.identity())
        throw PlanError("level " + std::to_string(level) + " is not a cyclic step");
      for (int k = 1; k < n_i; ++k)
        if (power(G, gamma, k) == G.identity()) throw PlanError("level " + std::to_string(level) + " is not cyclic");
      for (int v = 0; v < diagram.node_count(level); ++v)
        if (diagram.dim(level, v) != 1) throw PlanError("level " + std::to_string(level) + " is not abelian");
      // rho(gamma) must equal omega_{n_i}^{sum_l n_{l-1}(e_l - 1)} * (-1)^{e-1}.
      for (int s = 0; s < diagram.node_count(level - 1); ++s) {
        const auto path = diagram.paths_to(level - 1, s).front();
        long long j = 0;
        for (int l = 1; l < level; ++l)
          j += static_cast<long long>(tower.subgroup_order(l - 1)) * (path[static_cast<std::size_t>(l - 1)] - 1);
        const auto& edges = diagram.out_edges(level - 1, s);
        for (std::size_t e = 0; e < edges.size(); ++e) {
          const cplx want = root_of_unity(n_i, j + static_cast<long long>(e) * (n_i / 2));
          if (std::abs(table.generator_image(level, edges[e].child, gen)(0, 0) - want) > kExact)
            throw PlanError("characters at level " + std::to_string(level) + " are not labelled by binary digits");
        }
      }
      lp.split = false;
      lp.abelian_transverse = true;
      lp.note = "index-2 cyclic step; phase omega_" + std::to_string(n_i) + "^{j c}";
      break;
    }
  }
  return lp;
}

StagePlan Synthesizer::plan(PlanKind kind) const {
  const auto& tower = *ctx_->tower;
  const auto family = tower.group().spec().family;
  StagePlan out;
  const int m = tower.levels();
  for (int i = 1; i <= m; ++i) {
    if (kind == PlanKind::beals) {
      out.levels.push_back(certify(i, Strategy::beals));
      continue;
    }
    const bool top_metacyclic = family == Family::metacyclic && i == m;
    if (kind == PlanKind::homothetic && top_metacyclic) {
      out.levels.push_back(certify(i, Strategy::homothetic));
      continue;
    }
    if (kind == PlanKind::homothetic && family != Family::metacyclic && i == m)
      throw PlanError("homothetic plan needs a metacyclic group");
    std::optional<LevelPlan> chosen;
    try {
      if (family == Family::cyclic && tower.index(i) == 2) chosen = certify(i, Strategy::nonsplit_cyclic);
      if (top_metacyclic) chosen = certify(i, Strategy::homothetic);
    } catch (const PlanError&) {
      chosen.reset();
    }
    out.levels.push_back(chosen ? *chosen : certify(i, Strategy::beals));
  }
  return out;
}

StructuredUnitary Synthesizer::generator_gate(int level, int generator, bool inverse) const {
  const auto key = std::make_tuple(level, generator, inverse);
  {
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const auto& table = *ctx_->table;
  const auto& diagram = *ctx_->diagram;
  StructuredUnitary g;
  g.level = level;
  g.generator = generator;
  g.inverse = inverse;
  g.registers = edge_registers(ctx_->layout, RegisterRole::s_edge, 1, level);
  for (int v = 0; v < diagram.node_count(level); ++v) {
    const auto paths = diagram.paths_to(level, v);
    for (std::size_t r = 0; r < paths.size(); ++r) g.paths.push_back({paths[r], v, static_cast<int>(r)});
    g.node_matrices.push_back(table.generator_image(level, v, generator, inverse));
  }
  g.blocks = schur_certificate(table, diagram, level, generator, inverse).blocks;
  std::lock_guard lock(cache_mutex_);
  return cache_.emplace(key, std::move(g)).first->second;
}

std::vector<Gate> Synthesizer::twiddle(int level, int position, bool inverse) const {
  const Word& w = ctx_->tower->transversal_word_at(level, position);
  std::vector<Gate> out;
  const std::string role = inverse ? "twiddle-inverse" : "twiddle";
  if (inverse) {
    for (const auto& letter : w)
      out.push_back({generator_gate(level, letter.generator, !letter.inverse), prov(level, Strategy::beals, position, role)});
  } else {
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      out.push_back({generator_gate(level, it->generator, it->inverse), prov(level, Strategy::beals, position, role)});
  }
  return out;
}

std::vector<Gate> Synthesizer::embedding_U(int level) const {
  const auto& diagram = *ctx_->diagram;
  const auto& layout = ctx_->layout;
  const int s_reg = layout.index_of(RegisterRole::s_edge, level);
  const int t_reg = layout.index_of(RegisterRole::t_edge, level);
  const int R = layout.radix(s_reg);
  if (layout.radix(t_reg) != R) throw SynthesisError("edge register radices differ");

  ConditionedUnitary g;
  g.targets = {s_reg, t_reg};
  g.controls = {layout.index_of(RegisterRole::alpha, level)};
  const auto sp = edge_registers(layout, RegisterRole::s_edge, 1, level - 1);
  const auto tp = edge_registers(layout, RegisterRole::t_edge, 1, level - 1);
  g.controls = concat(concat(g.controls, sp), tp);

  for (int sigma = 0; sigma < diagram.node_count(level - 1); ++sigma) {
    const auto& a = scale_.row(level, sigma);
    double norm2 = 0.0;
    for (double x : a) norm2 += x * x;
    if (std::abs(norm2 - 1.0) > kExact)
      throw SynthesisError("scale factors of " + diagram.label(level - 1, sigma) + " are not normalized");
    // Householder reflection exchanging |0,0> and sum_e A_e |e,e>.
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(R * R);
    u(0) = 1.0;
    for (std::size_t e = 0; e < a.size(); ++e) {
      const auto ee = static_cast<Eigen::Index>(e + 1);
      u(ee * R + ee) = -a[e];
    }
    ConditionedUnitary::Branch b;
    b.matrix = Matrix::Identity(R * R, R * R) - u * u.adjoint();
    const auto paths = level > 1 ? diagram.paths_to(level - 1, sigma) : std::vector<GTPath>{GTPath{}};
    for (const auto& s : paths)
      for (const auto& t : paths) {
        std::vector<int> tuple{0};
        tuple.insert(tuple.end(), s.begin(), s.end());
        tuple.insert(tuple.end(), t.begin(), t.end());
        b.when.push_back(std::move(tuple));
      }
    g.branches.push_back(std::move(b));
  }
  return {Gate{std::move(g), prov(level, Strategy::beals, -1, "embed")}};
}

Gate Synthesizer::valpha(int level, int position) const {
  const auto& layout = ctx_->layout;
  if (position < 0 || position >= ctx_->tower->index(level)) throw DomainError("transversal position out of range");
  ClassicalPermutation g;
  g.registers = {layout.index_of(RegisterRole::alpha, level), layout.index_of(RegisterRole::s_edge, level),
                 layout.index_of(RegisterRole::t_edge, level)};
  const auto n = layout.local_dimension(g.registers);
  g.image.resize(n);
  for (std::uint32_t x = 0; x < n; ++x) g.image[x] = x;
  const auto zero = static_cast<std::uint32_t>(layout.local_index(g.registers, {0, 0, 0}));
  const auto digit = static_cast<std::uint32_t>(layout.local_index(g.registers, {position + 1, 0, 0}));
  std::swap(g.image[zero], g.image[digit]);
  return {std::move(g), prov(level, Strategy::beals, position, "swap")};
}

std::vector<Gate> Synthesizer::beals_stage(int level) const {
  std::vector<Gate> out;
  const auto U = embedding_U(level);
  // The accumulated state under rho(alpha)^-1 is the transform of a function
  // supported off G_{level-1}, so it has no weight on |0,0> or on the
  // embedded image; U before V_alpha would act trivially and is omitted.
  for (int p = 0; p < ctx_->tower->index(level); ++p) {
    for (auto& g : twiddle(level, p, true)) out.push_back(std::move(g));
    out.push_back(valpha(level, p));
    for (auto g : U) {
      g.provenance.iteration = p;
      out.push_back(std::move(g));
    }
    for (auto& g : twiddle(level, p, false)) out.push_back(std::move(g));
  }
  return out;
}

std::vector<Gate> Synthesizer::homothetic_stage(int level) const {
  const auto od = orbit_data(level);
  const auto& diagram = *ctx_->diagram;
  const auto& layout = ctx_->layout;
  const int base = level - 1;
  const int Q = od.Q;
  const int alpha = layout.index_of(RegisterRole::alpha, level);
  const int s_reg = layout.index_of(RegisterRole::s_edge, level);
  const int t_reg = layout.index_of(RegisterRole::t_edge, level);
  const auto sp = edge_registers(layout, RegisterRole::s_edge, 1, base);
  const auto tp = edge_registers(layout, RegisterRole::t_edge, 1, base);
  std::vector<GTPath> path(static_cast<std::size_t>(diagram.node_count(base)));
  for (int s = 0; s < diagram.node_count(base); ++s)
    path[static_cast<std::size_t>(s)] = base > 0 ? diagram.paths_to(base, s).front() : GTPath{};
  auto P = [&](std::string role) { return prov(level, Strategy::homothetic, -1, std::move(role)); };
  std::vector<Gate> out;

  // c = q*j + k  ->  alpha = k+1, s = j+1.
  {
    ClassicalPermutation g;
    g.registers = concat(tp, {alpha, s_reg});
    std::map<std::uint64_t, std::uint64_t> m;
    for (int s = 0; s < diagram.node_count(base); ++s) {
      const int q = od.orbit_size[static_cast<std::size_t>(s)];
      for (int c = 0; c < Q; ++c) {
        auto src = path[static_cast<std::size_t>(s)];
        auto dst = src;
        src.push_back(c + 1);
        src.push_back(0);
        dst.push_back(c % q + 1);
        dst.push_back(c / q + 1);
        m[layout.local_index(g.registers, src)] = layout.local_index(g.registers, dst);
      }
    }
    g.image = complete_bijection(layout.local_dimension(g.registers), m);
    out.push_back({std::move(g), P("split-power")});
  }
  // Fourier transform over the stabilizer on s[level].
  {
    std::map<int, std::vector<std::vector<int>>> by_order;
    for (int s = 0; s < diagram.node_count(base); ++s)
      by_order[Q / od.orbit_size[static_cast<std::size_t>(s)]].push_back(path[static_cast<std::size_t>(s)]);
    for (auto& [order, tuples] : by_order) {
      if (order < 2) continue;
      PrimitiveCyclicQFT g;
      g.target = s_reg;
      g.order = order;
      g.offset = 1;
      if (base > 0 && static_cast<int>(tuples.size()) < diagram.node_count(base)) {
        g.controls = tp;
        g.when = std::move(tuples);
      }
      out.push_back({std::move(g), P("stabilizer-fourier")});
    }
  }
  // Copy the edge into t[level].
  {
    ClassicalPermutation g;
    g.registers = {s_reg, t_reg};
    std::map<std::uint64_t, std::uint64_t> m;
    for (int e = 1; e < layout.radix(s_reg); ++e)
      m[layout.local_index(g.registers, {e, 0})] = layout.local_index(g.registers, {e, e});
    g.image = complete_bijection(layout.local_dimension(g.registers), m);
    out.push_back({std::move(g), P("copy-edge")});
  }
  // omega_Q^{(e-1) k}.
  if (Q > 1) {
    Phase g;
    g.registers = {alpha, s_reg};
    g.modulus = Q;
    g.exponents.assign(layout.local_dimension(g.registers), 0);
    for (int a = 1; a < layout.radix(alpha); ++a)
      for (int e = 1; e < layout.radix(s_reg); ++e)
        g.exponents[layout.local_index(g.registers, {a, e})] = ((e - 1) * (a - 1)) % Q;
    out.push_back({std::move(g), P("phase")});
  }
  // (sigma, sigma, k+1) -> (sigma^{gamma^k}, sigma, 0).
  {
    ClassicalPermutation g;
    g.registers = concat(concat(sp, tp), {alpha});
    std::map<std::uint64_t, std::uint64_t> m;
    for (int s = 0; s < diagram.node_count(base); ++s) {
      const int q = od.orbit_size[static_cast<std::size_t>(s)];
      for (int k = 0; k < q; ++k) {
        const int img = od.image[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)];
        auto src = concat(path[static_cast<std::size_t>(s)], path[static_cast<std::size_t>(s)]);
        auto dst = concat(path[static_cast<std::size_t>(img)], path[static_cast<std::size_t>(s)]);
        src.push_back(k + 1);
        dst.push_back(0);
        m[layout.local_index(g.registers, src)] = layout.local_index(g.registers, dst);
      }
    }
    g.image = complete_bijection(layout.local_dimension(g.registers), m);
    out.push_back({std::move(g), P("orbit-shift")});
  }
  return out;
}

std::vector<Gate> Synthesizer::nonsplit_cyclic_stage(int level) const {
  certify(level, Strategy::nonsplit_cyclic);
  const auto& tower = *ctx_->tower;
  const auto& layout = ctx_->layout;
  const int alpha = layout.index_of(RegisterRole::alpha, level);
  const int s_reg = layout.index_of(RegisterRole::s_edge, level);
  const int t_reg = layout.index_of(RegisterRole::t_edge, level);
  const auto n_i = static_cast<int>(tower.subgroup_order(level));
  auto P = [&](std::string role) { return prov(level, Strategy::nonsplit_cyclic, -1, std::move(role)); };
  std::vector<Gate> out;
  for (int l = 1; l < level; ++l) {
    Phase g;
    g.registers = {alpha, layout.index_of(RegisterRole::s_edge, l)};
    g.modulus = n_i;
    g.exponents.assign(layout.local_dimension(g.registers), 0);
    const auto n_prev = static_cast<long long>(tower.subgroup_order(l - 1));
    for (int a = 1; a < layout.radix(alpha); ++a)
      for (int e = 1; e < layout.radix(g.registers[1]); ++e)
        g.exponents[layout.local_index(g.registers, {a, e})] = static_cast<int>((a - 1) * n_prev * (e - 1) % n_i);
    out.push_back({std::move(g), P("phase")});
  }
  {
    ClassicalPermutation g;
    g.registers = {alpha, s_reg};
    std::map<std::uint64_t, std::uint64_t> m;
    for (int c = 0; c < 2; ++c) m[layout.local_index(g.registers, {c + 1, 0})] = layout.local_index(g.registers, {0, c + 1});
    g.image = complete_bijection(layout.local_dimension(g.registers), m);
    out.push_back({std::move(g), P("move-digit")});
  }
  {
    PrimitiveCyclicQFT g;
    g.target = s_reg;
    g.order = 2;
    g.offset = 1;
    out.push_back({std::move(g), P("fourier")});
  }
  {
    ClassicalPermutation g;
    g.registers = {s_reg, t_reg};
    std::map<std::uint64_t, std::uint64_t> m;
    for (int e = 1; e < layout.radix(s_reg); ++e)
      m[layout.local_index(g.registers, {e, 0})] = layout.local_index(g.registers, {e, e});
    g.image = complete_bijection(layout.local_dimension(g.registers), m);
    out.push_back({std::move(g), P("copy-edge")});
  }
  return out;
}

std::vector<Gate> Synthesizer::stage(const LevelPlan& plan) const {
  switch (plan.strategy) {
    case Strategy::beals:
      return beals_stage(plan.level);
    case Strategy::homothetic:
      return homothetic_stage(plan.level);
    case Strategy::nonsplit_cyclic:
      return nonsplit_cyclic_stage(plan.level);
  }
  throw PlanError("unknown strategy");
}

Circuit Synthesizer::synthesize(const StagePlan& plan) const {
  if (static_cast<int>(plan.levels.size()) != ctx_->tower->levels())
    throw PlanError("plan covers " + std::to_string(plan.levels.size()) + " levels, tower has " +
                    std::to_string(ctx_->tower->levels()));
  Circuit c;
  c.layout = ctx_->layout;
  c.group = ctx_->group->spec();
  for (std::size_t i = 0; i < plan.levels.size(); ++i) {
    if (plan.levels[i].level != static_cast<int>(i) + 1) throw PlanError("plan levels out of order");
    for (auto& g : stage(plan.levels[i])) c.gates.push_back(std::move(g));
  }
  return c;
}

SynthStats Synthesizer::stats(const Circuit& circuit, const StagePlan& plan) const {
  const auto& tower = *ctx_->tower;
  SynthStats s;
  const auto ts = tower.stats();
  s.I = ts.max_index;
  s.D = ts.adapted_diameter;
  std::vector<int> beals_levels;
  for (const auto& l : plan.levels)
    if (l.strategy == Strategy::beals) beals_levels.push_back(l.level);
  s.M = max_multiplicity(*ctx_->table, *ctx_->diagram, beals_levels);
  s.log2_order = std::log2(static_cast<double>(tower.order()));
  for (const auto& l : plan.levels) s.stages.push_back({l.level, l.strategy, 0, 0});
  for (const auto& g : circuit.gates) {
    const int lvl = g.provenance.level;
    if (lvl < 1 || lvl > static_cast<int>(s.stages.size())) continue;
    auto& st = s.stages[static_cast<std::size_t>(lvl - 1)];
    st.gates += 1;
    st.cost += gate_cost(g.op);
  }
  s.total_gates = circuit.gates.size();
  for (const auto& st : s.stages) s.total_cost += st.cost;
  return s;
}

Circuit synth_qft(const GroupSpec& spec, PlanKind kind) {
  return Synthesizer(QftContext::build(spec)).synthesize(kind);
}

}  // namespace gqft
