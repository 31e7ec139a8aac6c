#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace heatalg {

// All objects are built relative to a fixed genus g >= 1.
//
// Variable sets and weights:
//   lambda_4, lambda_6, ..., lambda_{4g+2}    wt lambda_{2k} = 2k
//   z_1, z_3, ..., z_{2g-1}                   wt z_k = -k
//   d_1, d_3, ..., d_{2g-1} (= d/dz_k)        wt d_k = +k
//
// By convention lambda_s = 0 for s outside {0, 4, 6, ..., 4g+2}, lambda_0 = 1
// and lambda_2 = 0; lambda_atom() in lambda_poly.hpp folds accordingly.
struct GenusContext {
  int g;

  explicit GenusContext(int genus) : g(genus) {
    if (genus < 1) throw std::invalid_argument("GenusContext: genus must be >= 1");
  }

  int nlambda() const { return 2 * g; }
  int lambda_index(int pos) const { return 2 * pos + 4; }  // pos in 0..2g-1
  bool lambda_in_range(int index) const {
    return index >= 4 && index <= 4 * g + 2 && index % 2 == 0;
  }
  int lambda_pos(int index) const {
    if (!lambda_in_range(index))
      throw std::out_of_range("lambda index " + std::to_string(index) +
                              " outside {4,6,...," + std::to_string(4 * g + 2) + "}");
    return (index - 4) / 2;
  }
  std::vector<int> lambda_indices() const {
    std::vector<int> v(nlambda());
    for (int p = 0; p < nlambda(); ++p) v[p] = lambda_index(p);
    return v;
  }

  int nz() const { return g; }
  int z_index(int pos) const { return 2 * pos + 1; }  // pos in 0..g-1
  bool z_in_range(int index) const { return index >= 1 && index <= 2 * g - 1 && index % 2 == 1; }
  int z_pos(int index) const {
    if (!z_in_range(index))
      throw std::out_of_range("z index " + std::to_string(index) + " outside {1,3,...," +
                              std::to_string(2 * g - 1) + "}");
    return (index - 1) / 2;
  }
  std::vector<int> z_indices() const {
    std::vector<int> v(nz());
    for (int p = 0; p < nz(); ++p) v[p] = z_index(p);
    return v;
  }
};

}  // namespace heatalg
