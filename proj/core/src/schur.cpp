#include "gqft/schur.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "gqft/errors.hpp"

namespace gqft {

int SchurCertificate::max_block() const {
  int m = 0;
  for (const auto& b : blocks) m = std::max(m, b.m);
  return m;
}

std::vector<SchurBlock> schur_blocks(const RepresentationTable& table, const BratteliDiagram& diagram, int level,
                                     int node, int generator, bool inverse, double tol) {
  const auto& info = table.tower().generators().at(static_cast<std::size_t>(generator));
  if (info.level > level) throw DomainError("generator " + info.name + " is not in G_" + std::to_string(level));
  const int g_level = info.level;
  const int k_level = std::min(info.centralized_level, g_level);
  const Matrix rho = table.generator_image(level, node, generator, inverse);

  struct Cell {
    std::vector<GTPath> middles;                        // v
    std::vector<std::pair<GTPath, GTPath>> outers;      // (p, w)
    std::map<std::pair<GTPath, GTPath>, int> row_of;    // (v, p ++ w) -> row
  };
  std::map<std::pair<int, int>, Cell> groups;
  for (int r = 0; r < diagram.dim(level, node); ++r) {
    const GTPath path = diagram.index_to_path(level, node, r);
    GTPath p(path.begin(), path.begin() + k_level);
    GTPath v(path.begin() + k_level, path.begin() + g_level);
    GTPath w(path.begin() + g_level, path.end());
    const int eta = diagram.path_to_index(p).node;
    const int tau = diagram.path_to_index(std::span<const int>(path.data(), static_cast<std::size_t>(g_level))).node;
    auto& grp = groups[{eta, tau}];
    if (std::find(grp.middles.begin(), grp.middles.end(), v) == grp.middles.end()) grp.middles.push_back(v);
    std::pair<GTPath, GTPath> outer{p, w};
    if (std::find(grp.outers.begin(), grp.outers.end(), outer) == grp.outers.end()) grp.outers.push_back(outer);
    GTPath pw = p;
    pw.insert(pw.end(), w.begin(), w.end());
    grp.row_of[{v, pw}] = r;
  }

  std::vector<SchurBlock> blocks;
  for (auto& [key, grp] : groups) {
    std::sort(grp.middles.begin(), grp.middles.end());
    std::sort(grp.outers.begin(), grp.outers.end());
    SchurBlock b;
    b.node = node;
    b.m = static_cast<int>(grp.middles.size());
    b.d = static_cast<int>(grp.outers.size());
    b.rows.assign(static_cast<std::size_t>(b.m), std::vector<int>(static_cast<std::size_t>(b.d), -1));
    for (int u = 0; u < b.m; ++u)
      for (int x = 0; x < b.d; ++x) {
        const auto& [p, w] = grp.outers[static_cast<std::size_t>(x)];
        GTPath pw = p;
        pw.insert(pw.end(), w.begin(), w.end());
        auto it = grp.row_of.find({grp.middles[static_cast<std::size_t>(u)], pw});
        if (it == grp.row_of.end()) throw CertificationError("incomplete multiplicity block");
        b.rows[static_cast<std::size_t>(u)][static_cast<std::size_t>(x)] = it->second;
      }
    b.small = Matrix::Zero(b.m, b.m);
    for (int u = 0; u < b.m; ++u)
      for (int u2 = 0; u2 < b.m; ++u2) b.small(u, u2) = rho(b.rows[static_cast<std::size_t>(u)][0], b.rows[static_cast<std::size_t>(u2)][0]);
    blocks.push_back(std::move(b));
  }

  const Matrix mats[] = {rho};
  std::vector<SchurBlock> local = blocks;
  for (auto& b : local) b.node = 0;
  const double residual = certificate_residual(mats, local);
  if (residual > tol)
    throw CertificationError("Schur block structure violated for " + diagram.label(level, node) + " under " +
                             info.name + " (residual " + std::to_string(residual) + ")");
  return blocks;
}

SchurCertificate schur_certificate(const RepresentationTable& table, const BratteliDiagram& diagram, int level,
                                   int generator, bool inverse, double tol) {
  SchurCertificate cert;
  cert.level = level;
  cert.generator = generator;
  cert.inverse = inverse;
  const auto& info = table.tower().generators().at(static_cast<std::size_t>(generator));
  cert.k_level = std::min(info.centralized_level, info.level);
  std::vector<Matrix> mats;
  for (int v = 0; v < diagram.node_count(level); ++v) {
    auto blocks = schur_blocks(table, diagram, level, v, generator, inverse, tol);
    cert.blocks.insert(cert.blocks.end(), blocks.begin(), blocks.end());
    mats.push_back(table.generator_image(level, v, generator, inverse));
  }
  cert.residual = certificate_residual(mats, cert.blocks);
  return cert;
}

double certificate_residual(std::span<const Matrix> node_matrices, std::span<const SchurBlock> blocks) {
  std::vector<Matrix> expected;
  for (const auto& m : node_matrices) expected.push_back(Matrix::Zero(m.rows(), m.cols()));
  std::vector<Eigen::MatrixXi> covered;
  for (const auto& m : node_matrices) covered.push_back(Eigen::MatrixXi::Zero(m.rows(), m.cols()));
  double residual = 0.0;
  for (const auto& b : blocks) {
    if (b.node < 0 || b.node >= static_cast<int>(node_matrices.size())) return INFINITY;
    auto& e = expected[static_cast<std::size_t>(b.node)];
    auto& c = covered[static_cast<std::size_t>(b.node)];
    if (b.small.rows() != b.m || b.small.cols() != b.m || static_cast<int>(b.rows.size()) != b.m) return INFINITY;
    for (int u = 0; u < b.m; ++u)
      for (int u2 = 0; u2 < b.m; ++u2)
        for (int x = 0; x < b.d; ++x) {
          const int r = b.rows[static_cast<std::size_t>(u)].at(static_cast<std::size_t>(x));
          const int col = b.rows[static_cast<std::size_t>(u2)].at(static_cast<std::size_t>(x));
          if (r < 0 || col < 0 || r >= e.rows() || col >= e.cols()) return INFINITY;
          e(r, col) = b.small(u, u2);
          c(r, col) = 1;
        }
  }
  for (std::size_t n = 0; n < node_matrices.size(); ++n) {
    residual = std::max(residual, max_abs(node_matrices[n] - expected[n]));
    // Every row must be claimed by some block.
    for (Eigen::Index r = 0; r < covered[n].rows(); ++r)
      if (covered[n].row(r).sum() == 0) return INFINITY;
  }
  return residual;
}

int max_multiplicity(const RepresentationTable& table, const BratteliDiagram& diagram, std::span<const int> levels) {
  int m = 1;
  for (int l : levels)
    for (int k : table.tower().generators_in(l))
      for (int v = 0; v < diagram.node_count(l); ++v)
        for (const auto& b : schur_blocks(table, diagram, l, v, k, false)) m = std::max(m, b.m);
  return m;
}

}  // namespace gqft
