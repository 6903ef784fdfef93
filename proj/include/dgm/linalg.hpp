#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "dgm/rational.hpp"

namespace dgm {

using Vec = std::vector<Rational>;

/* Sparse matrix over Q in column-vector convention: the matrix maps
   coordinate columns of length `cols` to columns of length `rows`.
   Entries are kept sorted by (row, col), zero-free and duplicate-free. */
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols);

    static SparseMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    /* builder: overwrites any existing entry; dropping zeros */
    void set(int r, int c, const Rational& v);
    Rational get(int r, int c) const;
    void add_to(int r, int c, const Rational& v);

    const std::vector<std::tuple<int, int, Rational>>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    Vec apply(const Vec& x) const;
    SparseMatrix compose(const SparseMatrix& inner) const;  /* this * inner */
    SparseMatrix scaled(const Rational& c) const;

    std::vector<Vec> to_dense_rows() const;
    static SparseMatrix from_dense_rows(const std::vector<Vec>& rows, int cols);

    bool operator==(const SparseMatrix& o) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::tuple<int, int, Rational>> entries_;  /* sorted (row, col) */
};

struct RowReduceResult {
    SparseMatrix reduced;    /* reduced row-echelon form */
    int rank = 0;
    std::vector<Vec> kernel_basis;  /* coordinate vectors in the column space */
};

/* Gauss-Jordan over Q.  Dense inside (windowed graded slices are small);
   sparse at the interface. */
RowReduceResult row_reduce(const SparseMatrix& m);

int rank_of(const SparseMatrix& m);
std::vector<Vec> kernel_of(const SparseMatrix& m);

/* One solution of A x = b, if any. */
std::optional<Vec> solve(const SparseMatrix& a, const Vec& b);

/* Incremental RREF span with membership / coordinate queries.  Coordinates
   are expressed in terms of the vectors that actually grew the span, in
   insertion order. */
class Subspace {
public:
    explicit Subspace(int ambient_dim);

    int ambient_dim() const { return ambient_; }
    int dim() const { return static_cast<int>(rows_.size()); }

    /* returns true when v enlarged the span */
    bool insert(const Vec& v);

    bool contains(const Vec& v) const;
    /* residual of v after reduction against the span (zero iff contained) */
    Vec reduce(const Vec& v) const;
    /* coordinates of v w.r.t. the inserted spanning vectors; nullopt if v
       is outside the span */
    std::optional<Vec> coordinates(const Vec& v) const;

private:
    int ambient_;
    std::vector<Vec> rows_;      /* RREF rows over the ambient coordinates */
    std::vector<Vec> trace_;     /* same rows expressed in inserted-generator coords */
    std::vector<int> pivots_;
    std::vector<Vec> gens_;      /* vectors that grew the span, insertion order */
};

/* basis vectors e_i convenience */
Vec unit_vec(int dim, int i);
Vec zero_vec(int dim);
Vec add_vec(const Vec& a, const Vec& b);
Vec sub_vec(const Vec& a, const Vec& b);
Vec scale_vec(const Rational& c, const Vec& a);
bool is_zero_vec(const Vec& a);

}  // namespace dgm
