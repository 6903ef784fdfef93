#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dgm/cdga.hpp"
#include "dgm/complex.hpp"
#include "dgm/dgmodule.hpp"

namespace dgm {

/* A two-sided normalized bar complex restricted to a total-degree window.
   Basis vectors are words m[a_1|...|a_p]n: a left module basis element, p
   middle entries drawn from the augmentation-ideal monomial basis, and a
   right module basis element.  A word of length p sits in total degree
   |m| + sum |a_i| + |n| - p.  Words of length above the cap are dropped;
   the certificate records whether the cap can affect the window. */
struct BarComplexWindow {
    CochainComplexWindow complex;
    /* per degree, the word length of each basis vector (parallel to labels) */
    std::map<int, std::vector<int>> word_length;
    int max_length = 0;
    bool complete = false;     /* cap provably cannot affect the window */
    std::string certificate;
};

/* B(A; A; N) together with the augmentation onto N (multiply the left entry
   into the right one on length-zero words; longer words map to zero).  The
   augmentation is a quasi-isomorphism onto N wherever the window is exact. */
struct BarResolution {
    BarComplexWindow bar;
    std::map<int, SparseMatrix> augmentation;  /* degree t: bar^t -> N^t */
};

BarResolution bar_resolution(const SemifreeCdga& a, const ModuleTable& n,
                             int max_length, const DegreeWindow& w);

/* Cohomology of B(M; A; N) by total degree, with word counts per
   (length, degree).  For semifree M, N this agrees with the cohomology of
   the tensor product M (x)_A N on interior degrees. */
struct TorResult {
    DegreeWindow window{0, 0};
    std::map<std::pair<int, int>, int> word_counts;  /* (length, degree) */
    std::map<int, int> tor_dims;
    std::map<int, bool> incomplete;                  /* edge degrees */
    bool complete = false;
    std::string certificate;
};

TorResult derived_tensor_tor(const ModuleTable& m, const ModuleTable& n,
                             int max_length, const DegreeWindow& w);
/* Convenience overload: tables are generated on windows wide enough for w. */
TorResult derived_tensor_tor(const SemifreeModule& m, const SemifreeModule& n,
                             int max_length, const DegreeWindow& w);

/* Hom_A(B(A; A; N), M) as a cochain complex on the hom-degree window, with
   the word length of each basis pair recorded (it is a filtration datum).
   Feasibility: with g the word-degree range [min M basis - w.hi,
   max M basis - w.lo], the table windows must satisfy
   M.window >= [w.lo + g.lo, w.hi + g.hi] and N.window >= [g.lo, g.hi];
   otherwise the truncation could corrupt interior degrees and the call
   throws std::invalid_argument. */
struct BarHomComplex {
    CochainComplexWindow complex;
    std::map<int, std::vector<int>> word_length;
    int max_length = 0;
    bool complete = false;
    std::string certificate;
};

BarHomComplex bar_hom_complex(const SemifreeCdga& a, const ModuleTable& n,
                              const ModuleTable& m, int max_length,
                              const DegreeWindow& w);

/* Ext_A(N, M) as the cohomology of the bar hom complex.  Must agree with
   ext_via_hom on interior degrees whenever both routes apply. */
ExtResult ext_via_bar(const SemifreeCdga& a, const ModuleTable& n,
                      const ModuleTable& m, int max_length,
                      const DegreeWindow& w);

/* A graded module over a GradedAlgebraTable: labeled basis per degree and
   the action of each algebra basis element on each module degree.  An
   absent action entry means the product leaves the recorded range. */
struct GradedModuleTable {
    DegreeWindow window{0, 0};
    std::map<int, std::vector<std::string>> labels;
    /* (algebra deg, algebra idx, module deg) -> dim(sum) x dim(module deg) */
    std::map<std::tuple<int, int, int>, SparseMatrix> action;

    int dim(int degree) const;
    std::optional<Vec> act(int adeg, int aidx, int mdeg, const Vec& v) const;
};

/* Q with the trivial action: the unit line acts by identity, everything in
   positive degree acts by zero. */
GradedModuleTable q_graded_module(const GradedAlgebraTable& h);

/* H(N) as a graded module over H(A): representatives are multiplied at the
   cochain level and reduced against the cohomology basis of N.  Degrees
   outside the interior of N's window are omitted. */
GradedModuleTable cohomology_module_table(const GradedAlgebraTable& h,
                                          const ModuleTable& n,
                                          const DegreeWindow& w);

/* Ext over a graded algebra with zero differential, bigraded by word length:
   dims[(p, k)] is the rank at word length p and total hom degree k, and the
   total over p is exact (the differential raises word length by one, so the
   complex splits over the diagonals k - p). */
struct BigradedExt {
    DegreeWindow window{0, 0};
    std::map<std::pair<int, int>, int> dims;  /* (length, total degree) */
    std::map<int, int> total_dims;
    bool complete = false;
    std::string certificate;
};

BigradedExt graded_algebra_bar(const GradedAlgebraTable& h,
                               const GradedModuleTable& hn,
                               const GradedModuleTable& hm, int max_length,
                               const DegreeWindow& w);

}  // namespace dgm
