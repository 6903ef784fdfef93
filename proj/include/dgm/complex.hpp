#pragma once

#include <map>
#include <string>
#include <vector>

#include "dgm/grading.hpp"
#include "dgm/linalg.hpp"

namespace dgm {

/* A cochain complex of finite-dimensional Q-vector spaces, materialized over
   an explicit degree window.  Differentials raise degree by one; the one out
   of the top window degree is not stored (it lands outside the window). */
class CochainComplexWindow {
public:
    CochainComplexWindow(DegreeWindow window, BasisLabeledSpace basis,
                         std::map<int, SparseMatrix> diff);

    const DegreeWindow& window() const { return window_; }
    const BasisLabeledSpace& basis() const { return basis_; }

    int dim(int degree) const { return basis_.dim(degree); }
    const std::vector<std::string>& labels(int degree) const { return basis_.labels(degree); }

    /* d^k : C^k -> C^{k+1}; a correctly shaped zero matrix when absent */
    SparseMatrix d(int degree) const;
    bool has_d(int degree) const { return diff_.count(degree) > 0; }

    /* d(d(x)) = 0 for every composable pair inside the window */
    bool differential_squares_to_zero() const;

private:
    DegreeWindow window_;
    BasisLabeledSpace basis_;
    std::map<int, SparseMatrix> diff_;
};

struct CohomologyDegree {
    int dim = 0;
    std::vector<Vec> representatives;  /* cocycles in C^degree coordinates */
    /* true at the window edges, where the missing neighbouring differential
       makes the reported dimension an upper bound only */
    bool boundary_incomplete = false;
};

struct CohomologyResult {
    DegreeWindow window;
    std::map<int, CohomologyDegree> by_degree;  /* one entry per window degree */

    int dim(int k) const {
        auto it = by_degree.find(k);
        return it == by_degree.end() ? 0 : it->second.dim;
    }
};

/* Exact cohomology at interior degrees; edge degrees are computed with the
   missing differential treated as zero and flagged boundary_incomplete.
   Throws when the differential does not square to zero. */
CohomologyResult cohomology_window(const CochainComplexWindow& c);

/* C[n]^k = C^{k+n} with differential scaled by (-1)^n. */
CochainComplexWindow shift_complex(const CochainComplexWindow& c, int n);

/* One generator in degree n, zero differential. */
CochainComplexWindow sphere_complex(int n, const DegreeWindow& w);
/* Generators a in degree n-1 and b in degree n with d(a) = b; acyclic. */
CochainComplexWindow disk_complex(int n, const DegreeWindow& w);

}  // namespace dgm
