#include "tdgl/sparse.hpp"

#include <algorithm>
#include <cmath>

namespace tdgl {

SparsityPattern::SparsityPattern(int n, int block, std::span<const int> element_dofs) : n_(n), block_(block) {
  const std::size_t ne = element_dofs.size() / block;
  std::vector<std::vector<int>> rows(n);
  for (std::size_t e = 0; e < ne; ++e)
    for (int i = 0; i < block; ++i)
      for (int j = 0; j < block; ++j) rows[element_dofs[e * block + i]].push_back(element_dofs[e * block + j]);
  row_ptr_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    auto& r = rows[i];
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    row_ptr_[i + 1] = row_ptr_[i] + static_cast<int>(r.size());
  }
  col_.reserve(row_ptr_[n]);
  for (const auto& r : rows) col_.insert(col_.end(), r.begin(), r.end());

  scatter_.resize(ne * block * block);
  for (std::size_t e = 0; e < ne; ++e)
    for (int i = 0; i < block; ++i) {
      const int gi = element_dofs[e * block + i];
      const auto first = col_.begin() + row_ptr_[gi], last = col_.begin() + row_ptr_[gi + 1];
      for (int j = 0; j < block; ++j) {
        const auto it = std::lower_bound(first, last, element_dofs[e * block + j]);
        scatter_[(e * block + i) * block + j] = static_cast<int>(it - col_.begin());
      }
    }
}

double hermitian_defect(const ComplexCsr& m) {
  double worst = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k)
      worst = std::max(worst, std::abs(m.val[k] - std::conj(m.at(m.col[k], i))));
  return worst;
}

double symmetry_defect(const RealCsr& m) {
  double worst = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k)
      worst = std::max(worst, std::abs(m.val[k] - m.at(m.col[k], i)));
  return worst;
}

}  // namespace tdgl
