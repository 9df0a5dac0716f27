#ifndef QTWIST_LINALG_HPP
#define QTWIST_LINALG_HPP

#include <optional>
#include <vector>

#include "qtwist/cyclotomic.hpp"

namespace qtw {

// Solves M x = rhs exactly by Gaussian elimination; nullopt when the
// system has no solution.  M need not be square: free variables are set
// to zero.
std::optional<std::vector<Cyclotomic>> solve_linear(std::vector<std::vector<Cyclotomic>> M,
                                                    std::vector<Cyclotomic> rhs);

// Feed vectors one at a time; the first vector that is linearly dependent
// on those already absorbed is reported as its expansion in the original
// vectors (v = sum_k c_k v_k), which is what the convolution-power search
// needs.  Independent vectors return nullopt and are absorbed.
class RowReducer {
  public:
    std::optional<std::vector<Cyclotomic>> add_row(std::vector<Cyclotomic> v);
    int rank() const { return static_cast<int>(rows_.size()); }

  private:
    struct StoredRow {
        std::vector<Cyclotomic> v;      // reduced, leading entry 1
        std::vector<Cyclotomic> combo;  // expansion in the original vectors
        size_t pivot;
    };
    std::vector<StoredRow> rows_;
    int fed_ = 0;
};

} // namespace qtw

#endif
