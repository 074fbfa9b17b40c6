#include "gqft/fourier.hpp"

#include <cmath>

#include "gqft/errors.hpp"

namespace gqft {

FourierIndex::FourierIndex(const RepresentationTable& table) {
  for (const auto& rep : table.irreps(table.levels())) {
    dims_.push_back(rep.dim);
    offsets_.push_back(size_);
    size_ += static_cast<std::size_t>(rep.dim) * static_cast<std::size_t>(rep.dim);
  }
}

std::size_t FourierIndex::flat(int node, int row, int col) const {
  const auto d = static_cast<std::size_t>(dims_.at(static_cast<std::size_t>(node)));
  return offsets_[static_cast<std::size_t>(node)] + static_cast<std::size_t>(row) * d + static_cast<std::size_t>(col);
}

std::vector<std::vector<Matrix>> top_level_images(const RepresentationTable& table) {
  const int top = table.levels();
  const auto& elements = table.tower().elements();
  const auto& reps = table.irreps(top);
  std::vector<std::vector<Matrix>> out(elements.size());
  for (std::size_t g = 0; g < elements.size(); ++g) {
    out[g].reserve(reps.size());
    for (std::size_t v = 0; v < reps.size(); ++v)
      out[g].push_back(table.evaluate(top, static_cast<int>(v), elements[g]));
  }
  return out;
}

FourierCoefficients fourier(const RepresentationTable& table, std::span<const cplx> f) {
  return fourier(table, top_level_images(table), f);
}

FourierCoefficients fourier(const RepresentationTable& table, const std::vector<std::vector<Matrix>>& images,
                            std::span<const cplx> f) {
  const auto& reps = table.irreps(table.levels());
  const double order = static_cast<double>(table.tower().order());
  if (f.size() != images.size()) throw DomainError("function length != |G|");
  FourierCoefficients out;
  for (std::size_t v = 0; v < reps.size(); ++v) {
    Matrix acc = Matrix::Zero(reps[v].dim, reps[v].dim);
    for (std::size_t g = 0; g < f.size(); ++g)
      if (f[g] != cplx{}) acc += f[g] * images[g][v];
    out.push_back(std::sqrt(reps[v].dim / order) * acc);
  }
  return out;
}

std::vector<cplx> inverse_fourier(const RepresentationTable& table, const FourierCoefficients& coeffs) {
  const auto images = top_level_images(table);
  const auto& reps = table.irreps(table.levels());
  const double order = static_cast<double>(table.tower().order());
  if (coeffs.size() != reps.size()) throw DomainError("coefficient count != number of irreducibles");
  std::vector<cplx> f(images.size());
  for (std::size_t g = 0; g < images.size(); ++g) {
    cplx s{};
    for (std::size_t v = 0; v < reps.size(); ++v)
      s += std::sqrt(reps[v].dim / order) * (images[g][v].adjoint() * coeffs[v]).trace();
    f[g] = s;
  }
  return f;
}

Matrix dense_qft_matrix(const RepresentationTable& table) {
  const auto images = top_level_images(table);
  const FourierIndex index(table);
  const double order = static_cast<double>(table.tower().order());
  Matrix F = Matrix::Zero(static_cast<Eigen::Index>(index.size()), static_cast<Eigen::Index>(images.size()));
  for (std::size_t g = 0; g < images.size(); ++g)
    for (int v = 0; v < index.nodes(); ++v) {
      const double scale = std::sqrt(index.dim(v) / order);
      for (int j = 0; j < index.dim(v); ++j)
        for (int k = 0; k < index.dim(v); ++k)
          F(static_cast<Eigen::Index>(index.flat(v, j, k)), static_cast<Eigen::Index>(g)) =
              scale * images[g][static_cast<std::size_t>(v)](j, k);
    }
  return F;
}

}  // namespace gqft
