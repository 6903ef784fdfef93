#include "dgm/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace dgm {

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

SparseMatrix SparseMatrix::identity(int n) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, Rational(1));
    return m;
}

void SparseMatrix::set(int r, int c, const Rational& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("matrix index out of range");
    auto key = std::make_tuple(r, c, Rational(0));
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const auto& a, const auto& b) {
                                   return std::make_pair(std::get<0>(a), std::get<1>(a)) <
                                          std::make_pair(std::get<0>(b), std::get<1>(b));
                               });
    bool hit = it != entries_.end() && std::get<0>(*it) == r && std::get<1>(*it) == c;
    if (dgm::is_zero(v)) {
        if (hit) entries_.erase(it);
    } else if (hit) {
        std::get<2>(*it) = v;
    } else {
        entries_.insert(it, std::make_tuple(r, c, v));
    }
}

Rational SparseMatrix::get(int r, int c) const {
    for (const auto& [er, ec, ev] : entries_) {
        if (er == r && ec == c) return ev;
        if (er > r || (er == r && ec > c)) break;
    }
    return Rational(0);
}

void SparseMatrix::add_to(int r, int c, const Rational& v) { set(r, c, get(r, c) + v); }

Vec SparseMatrix::apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols_)
        throw std::invalid_argument("matrix/vector size mismatch");
    Vec y(rows_, Rational(0));
    for (const auto& [r, c, v] : entries_) y[r] += v * x[c];
    return y;
}

SparseMatrix SparseMatrix::compose(const SparseMatrix& inner) const {
    if (cols_ != inner.rows_) throw std::invalid_argument("composition size mismatch");
    SparseMatrix out(rows_, inner.cols_);
    for (const auto& [r, k, v] : entries_)
        for (const auto& [k2, c, w] : inner.entries_)
            if (k == k2) out.add_to(r, c, v * w);
    return out;
}

SparseMatrix SparseMatrix::scaled(const Rational& c) const {
    SparseMatrix out(rows_, cols_);
    if (dgm::is_zero(c)) return out;
    for (const auto& [r, cc, v] : entries_) out.entries_.emplace_back(r, cc, v * c);
    return out;
}

std::vector<Vec> SparseMatrix::to_dense_rows() const {
    std::vector<Vec> rows(rows_, Vec(cols_, Rational(0)));
    for (const auto& [r, c, v] : entries_) rows[r][c] = v;
    return rows;
}

SparseMatrix SparseMatrix::from_dense_rows(const std::vector<Vec>& rows, int cols) {
    SparseMatrix out(static_cast<int>(rows.size()), cols);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        if (static_cast<int>(rows[r].size()) != cols)
            throw std::invalid_argument("ragged dense rows");
        for (int c = 0; c < cols; ++c)
            if (!dgm::is_zero(rows[r][c])) out.entries_.emplace_back(r, c, rows[r][c]);
    }
    return out;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

namespace {

/* in-place Gauss-Jordan; returns pivot column per reduced row */
std::vector<int> gauss_jordan(std::vector<Vec>& rows, int cols) {
    std::vector<int> pivots;
    int r = 0;
    for (int lead = 0; lead < cols && r < static_cast<int>(rows.size()); ++lead) {
        int pr = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (!is_zero(rows[i][lead])) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(rows[r], rows[pr]);
        Rational inv = rows[r][lead];
        for (int c = lead; c < cols; ++c) rows[r][c] /= inv;
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || is_zero(rows[i][lead])) continue;
            Rational f = rows[i][lead];
            for (int c = lead; c < cols; ++c) rows[i][c] -= f * rows[r][c];
        }
        pivots.push_back(lead);
        ++r;
    }
    return pivots;
}

}  // namespace

RowReduceResult row_reduce(const SparseMatrix& m) {
    auto rows = m.to_dense_rows();
    auto pivots = gauss_jordan(rows, m.cols());
    RowReduceResult res;
    res.rank = static_cast<int>(pivots.size());

    /* drop zero rows that sank to the bottom, keep shape */
    res.reduced = SparseMatrix::from_dense_rows(rows, m.cols());

    /* kernel: one vector per free column */
    std::vector<int> pivot_of_col(m.cols(), -1);
    for (int r = 0; r < res.rank; ++r) pivot_of_col[pivots[r]] = r;
    for (int c = 0; c < m.cols(); ++c) {
        if (pivot_of_col[c] >= 0) continue;
        Vec k(m.cols(), Rational(0));
        k[c] = 1;
        for (int r = 0; r < res.rank; ++r)
            if (!dgm::is_zero(rows[r][c])) k[pivots[r]] = -rows[r][c];
        res.kernel_basis.push_back(std::move(k));
    }
    return res;
}

int rank_of(const SparseMatrix& m) { return row_reduce(m).rank; }
std::vector<Vec> kernel_of(const SparseMatrix& m) { return row_reduce(m).kernel_basis; }

std::optional<Vec> solve(const SparseMatrix& a, const Vec& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw std::invalid_argument("rhs size mismatch");
    /* eliminate on [A | b] */
    auto rows = a.to_dense_rows();
    for (int r = 0; r < a.rows(); ++r) rows[r].push_back(b[r]);
    auto pivots = gauss_jordan(rows, a.cols() + 1);
    for (int p : pivots)
        if (p == a.cols()) return std::nullopt;  /* pivot in the rhs column */
    Vec x(a.cols(), Rational(0));
    for (int r = 0; r < static_cast<int>(pivots.size()); ++r) x[pivots[r]] = rows[r][a.cols()];
    return x;
}

Subspace::Subspace(int ambient_dim) : ambient_(ambient_dim) {}

bool Subspace::insert(const Vec& v) {
    if (static_cast<int>(v.size()) != ambient_)
        throw std::invalid_argument("subspace/vector dimension mismatch");
    Vec w = v;
    Vec tr(gens_.size() + 1, Rational(0));
    tr.back() = 1;  /* w starts life as "the new generator" */
    for (auto& row : trace_) row.push_back(Rational(0));
    for (size_t r = 0; r < rows_.size(); ++r) {
        const Rational& f = w[pivots_[r]];
        if (is_zero(f)) continue;
        Rational ff = f;
        for (int c = 0; c < ambient_; ++c) w[c] -= ff * rows_[r][c];
        for (size_t c = 0; c < tr.size(); ++c) tr[c] -= ff * trace_[r][c];
    }
    int piv = -1;
    for (int c = 0; c < ambient_; ++c)
        if (!is_zero(w[c])) { piv = c; break; }
    if (piv < 0) {
        for (auto& row : trace_) row.pop_back();
        return false;  /* dependent; not recorded as a generator */
    }
    Rational inv = w[piv];
    for (int c = 0; c < ambient_; ++c) w[c] /= inv;
    for (auto& t : tr) t /= inv;
    /* back-substitute to keep earlier rows reduced */
    for (size_t r = 0; r < rows_.size(); ++r) {
        const Rational f = rows_[r][piv];
        if (is_zero(f)) continue;
        for (int c = 0; c < ambient_; ++c) rows_[r][c] -= f * w[c];
        for (size_t c = 0; c < tr.size(); ++c) trace_[r][c] -= f * tr[c];
    }
    rows_.push_back(std::move(w));
    trace_.push_back(std::move(tr));
    pivots_.push_back(piv);
    gens_.push_back(v);
    return true;
}

Vec Subspace::reduce(const Vec& v) const {
    if (static_cast<int>(v.size()) != ambient_)
        throw std::invalid_argument("subspace/vector dimension mismatch");
    Vec w = v;
    for (size_t r = 0; r < rows_.size(); ++r) {
        const Rational f = w[pivots_[r]];
        if (is_zero(f)) continue;
        for (int c = 0; c < ambient_; ++c) w[c] -= f * rows_[r][c];
    }
    return w;
}

bool Subspace::contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
    if (static_cast<int>(v.size()) != ambient_)
        throw std::invalid_argument("subspace/vector dimension mismatch");
    Vec w = v;
    Vec coeff(gens_.size(), Rational(0));
    for (size_t r = 0; r < rows_.size(); ++r) {
        const Rational f = w[pivots_[r]];
        if (is_zero(f)) continue;
        for (int c = 0; c < ambient_; ++c) w[c] -= f * rows_[r][c];
        for (size_t c = 0; c < gens_.size(); ++c) coeff[c] += f * trace_[r][c];
    }
    if (!is_zero_vec(w)) return std::nullopt;
    return coeff;
}

Vec unit_vec(int dim, int i) {
    Vec v(dim, Rational(0));
    v[i] = 1;
    return v;
}
Vec zero_vec(int dim) { return Vec(dim, Rational(0)); }

Vec add_vec(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vec c = a;
    for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return c;
}
Vec sub_vec(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vec c = a;
    for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return c;
}
Vec scale_vec(const Rational& c, const Vec& a) {
    Vec r = a;
    for (auto& x : r) x *= c;
    return r;
}
bool is_zero_vec(const Vec& a) {
    for (const auto& x : a)
        if (!is_zero(x)) return false;
    return true;
}

}  // namespace dgm
