#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "shlr/rational.hpp"
#include "shlr/error.hpp"

namespace shlr {

// Sparse matrix over Q. Stored entries are always nonzero.
class RationalMatrix {
  public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) fail(ErrorCode::Argument, "negative matrix dimensions");
    }

    static RationalMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Rat& at(int r, int c) const;
    void set(int r, int c, const Rat& v);
    void add(int r, int c, const Rat& v) { set(r, c, at(r, c) + v); }

    const std::map<std::pair<int, int>, Rat>& entries() const { return entries_; }

    RationalMatrix transpose() const;
    RationalMatrix mul(const RationalMatrix& other) const;
    std::vector<Rat> apply(const std::vector<Rat>& x) const;

    bool operator==(const RationalMatrix&) const = default;

  private:
    void check_index(int r, int c) const;
    int rows_ = 0, cols_ = 0;
    std::map<std::pair<int, int>, Rat> entries_;
};

// Exact solution of A x = b with deterministic reduced-echelon pivoting and
// free variables set to zero; nullopt when inconsistent.
std::optional<std::vector<Rat>> solve(const RationalMatrix& A, const std::vector<Rat>& b);

// Exact basis of the null space, ordered by ascending free-column index.
std::vector<std::vector<Rat>> kernel_basis(const RationalMatrix& A);

int rank(const RationalMatrix& A);

} // namespace shlr
