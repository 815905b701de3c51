#include "shlr/linalg.hpp"

namespace shlr {

namespace {

const Rat kZero = 0;

// Dense reduced row echelon form. Returns pivot column per pivot row.
// Columns are swept left to right; the pivot is the first row (from the
// current one down) with a nonzero entry, which makes the result — and every
// solve built on it — reproducible.
std::vector<int> rref(std::vector<std::vector<Rat>>& m) {
    std::vector<int> pivot_cols;
    if (m.empty()) return pivot_cols;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pr = -1;
        for (int r = row; r < rows; ++r) {
            if (!is_zero(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)])) {
                pr = r;
                break;
            }
        }
        if (pr < 0) continue;
        std::swap(m[static_cast<std::size_t>(row)], m[static_cast<std::size_t>(pr)]);
        Rat inv = 1 / m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
        auto& prow = m[static_cast<std::size_t>(row)];
        for (int c = col; c < cols; ++c) prow[static_cast<std::size_t>(c)] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == row) continue;
            Rat f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            if (is_zero(f)) continue;
            for (int c = col; c < cols; ++c)
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -= f * prow[static_cast<std::size_t>(c)];
        }
        pivot_cols.push_back(col);
        ++row;
    }
    return pivot_cols;
}

std::vector<std::vector<Rat>> to_dense(const RationalMatrix& A) {
    std::vector<std::vector<Rat>> m(static_cast<std::size_t>(A.rows()),
                                    std::vector<Rat>(static_cast<std::size_t>(A.cols()), Rat(0)));
    for (const auto& [rc, v] : A.entries())
        m[static_cast<std::size_t>(rc.first)][static_cast<std::size_t>(rc.second)] = v;
    return m;
}

} // namespace

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void RationalMatrix::check_index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        fail(ErrorCode::Argument, "matrix index out of bounds");
}

const Rat& RationalMatrix::at(int r, int c) const {
    check_index(r, c);
    auto it = entries_.find({r, c});
    return it == entries_.end() ? kZero : it->second;
}

void RationalMatrix::set(int r, int c, const Rat& v) {
    check_index(r, c);
    if (is_zero(v))
        entries_.erase({r, c});
    else
        entries_[{r, c}] = v;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (const auto& [rc, v] : entries_) t.set(rc.second, rc.first, v);
    return t;
}

RationalMatrix RationalMatrix::mul(const RationalMatrix& other) const {
    if (cols_ != other.rows()) fail(ErrorCode::Argument, "matrix product dimension mismatch");
    RationalMatrix out(rows_, other.cols());
    for (const auto& [rc, v] : entries_) {
        for (int c = 0; c < other.cols(); ++c) {
            const Rat& w = other.at(rc.second, c);
            if (!is_zero(w)) out.add(rc.first, c, v * w);
        }
    }
    return out;
}

std::vector<Rat> RationalMatrix::apply(const std::vector<Rat>& x) const {
    if (static_cast<int>(x.size()) != cols_) fail(ErrorCode::Argument, "matrix-vector dimension mismatch");
    std::vector<Rat> out(static_cast<std::size_t>(rows_), Rat(0));
    for (const auto& [rc, v] : entries_)
        out[static_cast<std::size_t>(rc.first)] += v * x[static_cast<std::size_t>(rc.second)];
    return out;
}

std::optional<std::vector<Rat>> solve(const RationalMatrix& A, const std::vector<Rat>& b) {
    if (static_cast<int>(b.size()) != A.rows()) fail(ErrorCode::Argument, "solve: rhs length mismatch");
    auto m = to_dense(A);
    if (m.empty()) m.resize(1); // 0xN: consistent iff b empty, handled below
    for (int r = 0; r < A.rows(); ++r) m[static_cast<std::size_t>(r)].push_back(b[static_cast<std::size_t>(r)]);
    if (A.rows() == 0) return std::vector<Rat>(static_cast<std::size_t>(A.cols()), Rat(0));
    auto pivots = rref(m);
    int aug = A.cols();
    for (int i = 0; i < static_cast<int>(pivots.size()); ++i)
        if (pivots[static_cast<std::size_t>(i)] == aug) return std::nullopt; // pivot in the rhs column
    std::vector<Rat> x(static_cast<std::size_t>(A.cols()), Rat(0));
    for (int i = 0; i < static_cast<int>(pivots.size()); ++i)
        x[static_cast<std::size_t>(pivots[static_cast<std::size_t>(i)])] =
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(aug)];
    return x;
}

std::vector<std::vector<Rat>> kernel_basis(const RationalMatrix& A) {
    if (A.cols() == 0) return {};
    if (A.rows() == 0) {
        std::vector<std::vector<Rat>> basis;
        for (int c = 0; c < A.cols(); ++c) {
            std::vector<Rat> v(static_cast<std::size_t>(A.cols()), Rat(0));
            v[static_cast<std::size_t>(c)] = 1;
            basis.push_back(std::move(v));
        }
        return basis;
    }
    auto m = to_dense(A);
    auto pivots = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(A.cols()), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<Rat>> basis;
    for (int free = 0; free < A.cols(); ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<Rat> v(static_cast<std::size_t>(A.cols()), Rat(0));
        v[static_cast<std::size_t>(free)] = 1;
        for (int i = 0; i < static_cast<int>(pivots.size()); ++i)
            v[static_cast<std::size_t>(pivots[static_cast<std::size_t>(i)])] =
                -m[static_cast<std::size_t>(i)][static_cast<std::size_t>(free)];
        basis.push_back(std::move(v));
    }
    return basis;
}

int rank(const RationalMatrix& A) {
    if (A.rows() == 0 || A.cols() == 0) return 0;
    auto m = to_dense(A);
    return static_cast<int>(rref(m).size());
}

} // namespace shlr
