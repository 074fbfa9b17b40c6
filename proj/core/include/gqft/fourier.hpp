#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gqft/irreps.hpp"

namespace gqft {

// f-hat(rho) for every top-level irreducible, indexed by node.
using FourierCoefficients = std::vector<Matrix>;

// Flattening of Fourier-side slots (node, row, col) in node order, then row,
// then column. This is the row order of dense_qft_matrix.
class FourierIndex {
 public:
  explicit FourierIndex(const RepresentationTable& table);
  std::size_t size() const { return size_; }
  std::size_t flat(int node, int row, int col) const;
  int nodes() const { return static_cast<int>(dims_.size()); }
  int dim(int node) const { return dims_[static_cast<std::size_t>(node)]; }

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> offsets_;
  std::size_t size_ = 0;
};

// rho(g) for every top-level node and every element, images[g][node] with g
// the canonical element index.
std::vector<std::vector<Matrix>> top_level_images(const RepresentationTable& table);

// f is indexed by canonical element index.
FourierCoefficients fourier(const RepresentationTable& table, std::span<const cplx> f);
FourierCoefficients fourier(const RepresentationTable& table, const std::vector<std::vector<Matrix>>& images,
                            std::span<const cplx> f);

// f(s) = sum_rho sqrt(d_rho/|G|) tr(rho(s)^dagger f-hat(rho)).
std::vector<cplx> inverse_fourier(const RepresentationTable& table, const FourierCoefficients& coeffs);

// F[(rho,j,k), g] = sqrt(d_rho/|G|) rho(g)_{jk}; unitary.
Matrix dense_qft_matrix(const RepresentationTable& table);

}  // namespace gqft
