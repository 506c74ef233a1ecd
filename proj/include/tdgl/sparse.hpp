#pragma once

#include <complex>
#include <span>
#include <vector>

#include "tdgl/types.hpp"

namespace tdgl {

/// Compressed sparse row matrix with sorted column indices per row.
template <class T>
struct CsrMatrix {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<T> val;

  int nnz() const { return static_cast<int>(col.size()); }
  // Structural zero when (i, j) is absent.
  T at(int i, int j) const;
};

using RealCsr = CsrMatrix<double>;
using ComplexCsr = CsrMatrix<Complex>;

/// CSR pattern for element-by-element assembly. Each element contributes a
/// dense block over `block` global indices; `scatter` maps the element's
/// row-major local entries to positions in the value array.
class SparsityPattern {
 public:
  SparsityPattern() = default;
  SparsityPattern(int n, int block, std::span<const int> element_dofs);

  int n() const { return n_; }
  int block() const { return block_; }
  int num_elements() const { return block_ ? static_cast<int>(scatter_.size()) / (block_ * block_) : 0; }

  template <class T>
  CsrMatrix<T> zero_matrix() const {
    return CsrMatrix<T>{n_, row_ptr_, col_, std::vector<T>(col_.size(), T{})};
  }

  // Adds the element's block into m. Local entries are row-major block x block.
  template <class T>
  void scatter_add(CsrMatrix<T>& m, int element, std::span<const T> local) const {
    const int bb = block_ * block_;
    const int* pos = scatter_.data() + static_cast<std::size_t>(element) * bb;
    for (int k = 0; k < bb; ++k) m.val[pos[k]] += local[k];
  }

 private:
  int n_ = 0;
  int block_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> col_;
  std::vector<int> scatter_;
};

template <class T>
T CsrMatrix<T>::at(int i, int j) const {
  for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
    if (col[k] == j) return val[k];
  return T{};
}

// Largest |a_ij - conj(a_ji)| over stored entries.
double hermitian_defect(const ComplexCsr& m);
double symmetry_defect(const RealCsr& m);

}  // namespace tdgl
