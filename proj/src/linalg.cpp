#include "qtwist/linalg.hpp"

#include "qtwist/errors.hpp"

namespace qtw {

std::optional<std::vector<Cyclotomic>> solve_linear(std::vector<std::vector<Cyclotomic>> M,
                                                    std::vector<Cyclotomic> rhs) {
    const size_t nrows = M.size();
    if (rhs.size() != nrows) throw Error("solve_linear: size mismatch");
    const size_t ncols = nrows == 0 ? 0 : M[0].size();
    for (const auto& row : M)
        if (row.size() != ncols) throw Error("solve_linear: ragged matrix");

    std::vector<size_t> pivot_col; // per eliminated row
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < nrows; ++col) {
        size_t sel = row;
        while (sel < nrows && M[sel][col].is_zero()) ++sel;
        if (sel == nrows) continue;
        std::swap(M[sel], M[row]);
        std::swap(rhs[sel], rhs[row]);
        Cyclotomic inv = M[row][col].inverse();
        for (size_t c = col; c < ncols; ++c) M[row][c] *= inv;
        rhs[row] *= inv;
        for (size_t r = 0; r < nrows; ++r) {
            if (r == row || M[r][col].is_zero()) continue;
            Cyclotomic f = M[r][col];
            for (size_t c = col; c < ncols; ++c) M[r][c] -= f * M[row][c];
            rhs[r] -= f * rhs[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    // rows below the rank must have zero rhs, else inconsistent
    for (size_t r = row; r < nrows; ++r)
        if (!rhs[r].is_zero()) return std::nullopt;

    std::vector<Cyclotomic> x(ncols);
    for (size_t r = 0; r < row; ++r) x[pivot_col[r]] = rhs[r];
    return x;
}

std::optional<std::vector<Cyclotomic>> RowReducer::add_row(std::vector<Cyclotomic> v) {
    std::vector<Cyclotomic> combo(static_cast<size_t>(fed_) + 1);
    combo[fed_] = Cyclotomic::integer(1);
    ++fed_;
    for (const auto& sr : rows_) {
        if (sr.pivot >= v.size() || v[sr.pivot].is_zero()) continue;
        Cyclotomic f = v[sr.pivot];
        for (size_t c = 0; c < v.size(); ++c) v[c] -= f * sr.v[c];
        for (size_t k = 0; k < sr.combo.size(); ++k) combo[k] -= f * sr.combo[k];
    }
    size_t pivot = v.size();
    for (size_t c = 0; c < v.size(); ++c)
        if (!v[c].is_zero()) {
            pivot = c;
            break;
        }
    if (pivot == v.size()) {
        // dependent: v_new = -sum_{k<new} combo_k v_k after moving terms over
        combo.pop_back();
        for (auto& c : combo) c = -c;
        return combo;
    }
    Cyclotomic inv = v[pivot].inverse();
    for (auto& c : v) c *= inv;
    for (auto& c : combo) c *= inv;
    rows_.push_back({std::move(v), std::move(combo), pivot});
    return std::nullopt;
}

} // namespace qtw
