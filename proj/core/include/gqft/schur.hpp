#pragma once

#include <span>
#include <vector>

#include "gqft/bratteli.hpp"

namespace gqft {

// One (m x m) ⊗ I_d block of rho(gamma): rows[u][x] is the row index of
// multiplicity slot u in copy x, and the claim is
//   rho(gamma)[rows[u][x], rows[u'][x']] = delta_{x x'} small(u, u')
// with every entry outside the blocks zero.
struct SchurBlock {
  int node = 0;
  int m = 1;
  int d = 1;
  Matrix small;
  std::vector<std::vector<int>> rows;
};

struct SchurCertificate {
  int level = 0;
  int generator = 0;
  bool inverse = false;
  int k_level = 0;  // the centralized subgroup G_k the blocks refer to
  std::vector<SchurBlock> blocks;
  double residual = 0.0;  // largest deviation from the claimed structure
  int max_block() const;
};

// Blocks of rho(gamma^{±1}) for a single node at `level`, relative to
// K = G_{min(centralized level, generator level)}. Rows are split into
// (path to eta at K, path eta -> tau at the generator's level, path tau ->
// rho); the middle part indexes the multiplicity slot. Throws
// CertificationError when the residual exceeds tol.
std::vector<SchurBlock> schur_blocks(const RepresentationTable& table, const BratteliDiagram& diagram, int level,
                                     int node, int generator, bool inverse, double tol = 1e-10);

// Certificate covering every node at `level`.
SchurCertificate schur_certificate(const RepresentationTable& table, const BratteliDiagram& diagram, int level,
                                   int generator, bool inverse, double tol = 1e-10);

// Residual of a claimed block list against explicit per-node matrices.
double certificate_residual(std::span<const Matrix> node_matrices, std::span<const SchurBlock> blocks);

// Largest Schur block over all generators of G_l and all irreducibles of G_l,
// for each level l in `levels` (the levels served by twiddle products).
int max_multiplicity(const RepresentationTable& table, const BratteliDiagram& diagram, std::span<const int> levels);

}  // namespace gqft
