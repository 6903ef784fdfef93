#include "dgm/complex.hpp"

#include <stdexcept>

namespace dgm {

CochainComplexWindow::CochainComplexWindow(DegreeWindow window, BasisLabeledSpace basis,
                                           std::map<int, SparseMatrix> diff)
    : window_(window), basis_(std::move(basis)), diff_(std::move(diff)) {
    for (const auto& [k, labels] : basis_.all())
        if (!window_.contains(k))
            throw std::invalid_argument("basis in degree " + std::to_string(k) +
                                        " outside the window");
    for (const auto& [k, m] : diff_) {
        if (k < window_.lo || k >= window_.hi)
            throw std::invalid_argument("differential out of degree " + std::to_string(k) +
                                        " does not fit the window");
        if (m.cols() != basis_.dim(k) || m.rows() != basis_.dim(k + 1))
            throw std::invalid_argument("differential shape mismatch at degree " +
                                        std::to_string(k));
    }
}

SparseMatrix CochainComplexWindow::d(int degree) const {
    auto it = diff_.find(degree);
    if (it != diff_.end()) return it->second;
    int target = window_.contains(degree + 1) ? basis_.dim(degree + 1) : 0;
    int source = window_.contains(degree) ? basis_.dim(degree) : 0;
    return SparseMatrix(target, source);
}

bool CochainComplexWindow::differential_squares_to_zero() const {
    for (int k = window_.lo; k + 1 < window_.hi; ++k)
        if (!d(k + 1).compose(d(k)).is_zero()) return false;
    return true;
}

CohomologyResult cohomology_window(const CochainComplexWindow& c) {
    if (!c.differential_squares_to_zero())
        throw std::invalid_argument("differential does not square to zero");
    CohomologyResult res{c.window(), {}};
    for (int k = c.window().lo; k <= c.window().hi; ++k) {
        CohomologyDegree h;
        h.boundary_incomplete = !c.window().interior(k);
        int n = c.dim(k);

        /* cocycles: everything at the top edge (no outgoing differential is
           stored there), the kernel elsewhere */
        std::vector<Vec> cocycles;
        if (k == c.window().hi) {
            for (int i = 0; i < n; ++i) cocycles.push_back(unit_vec(n, i));
        } else {
            cocycles = kernel_of(c.d(k));
        }

        /* coboundaries: image of the incoming differential, empty at the
           bottom edge */
        Subspace span(n);
        if (k > c.window().lo) {
            const SparseMatrix din = c.d(k - 1);
            for (int j = 0; j < din.cols(); ++j) span.insert(din.apply(unit_vec(din.cols(), j)));
        }

        for (const auto& z : cocycles)
            if (span.insert(z)) {
                h.representatives.push_back(z);
                ++h.dim;
            }
        res.by_degree.emplace(k, std::move(h));
    }
    return res;
}

CochainComplexWindow shift_complex(const CochainComplexWindow& c, int n) {
    DegreeWindow w(c.window().lo - n, c.window().hi - n);
    BasisLabeledSpace basis;
    for (const auto& [k, labels] : c.basis().all()) basis.set_basis(k - n, labels);
    std::map<int, SparseMatrix> diff;
    Rational sign = (n % 2 == 0) ? Rational(1) : Rational(-1);
    for (int k = c.window().lo; k < c.window().hi; ++k)
        if (c.has_d(k)) diff.emplace(k - n, c.d(k).scaled(sign));
    return CochainComplexWindow(w, std::move(basis), std::move(diff));
}

CochainComplexWindow sphere_complex(int n, const DegreeWindow& w) {
    if (!w.contains(n)) throw std::invalid_argument("sphere degree outside the window");
    BasisLabeledSpace basis;
    basis.set_basis(n, {"a"});
    return CochainComplexWindow(w, std::move(basis), {});
}

CochainComplexWindow disk_complex(int n, const DegreeWindow& w) {
    if (!w.contains(n) || !w.contains(n - 1))
        throw std::invalid_argument("disk degrees outside the window");
    BasisLabeledSpace basis;
    basis.set_basis(n - 1, {"a"});
    basis.set_basis(n, {"b"});
    std::map<int, SparseMatrix> diff;
    SparseMatrix d(1, 1);
    d.set(0, 0, Rational(1));
    diff.emplace(n - 1, std::move(d));
    return CochainComplexWindow(w, std::move(basis), std::move(diff));
}

}  // namespace dgm
