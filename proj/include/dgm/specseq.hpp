#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dgm/cdga.hpp"
#include "dgm/complex.hpp"
#include "dgm/dgmodule.hpp"

namespace dgm {

/* A windowed cochain complex together with a non-negative filtration level
   on every basis vector.  F^p in each degree is the span of the vectors of
   level >= p, so F^0 is everything and the filtration is decreasing.  The
   constructor checks that the differential never lowers the level (d maps
   F^p into F^p entrywise) and that it squares to zero; violations throw
   std::invalid_argument.  A degree may omit its level list only when the
   complex has no basis there. */
class FilteredComplexWindow {
public:
    FilteredComplexWindow(CochainComplexWindow complex, std::map<int, std::vector<int>> levels);

    const CochainComplexWindow& complex() const { return complex_; }
    int level(int degree, int index) const;
    int max_level() const { return max_level_; }

private:
    CochainComplexWindow complex_;
    std::map<int, std::vector<int>> levels_;
    int max_level_ = 0;
};

/* One entry of a page: its rank together with representative cochains,
   printed in the labels of the underlying complex. */
struct PageEntry {
    int dim = 0;
    std::vector<std::string> basis;

    bool operator==(const PageEntry& o) const { return dim == o.dim && basis == o.basis; }
};

/* Page r of the spectral sequence of a filtered complex.  Entries are keyed
   by (p, q) where p is the filtration column and q the complementary index,
   so the total degree is n = p + q.  The differential d_r maps (p, q) to
   (p + r, q - r + 1); a matrix is stored under the source key whenever the
   source and target entries are both nonzero. */
struct SSPage {
    int r = 0;
    std::map<std::pair<int, int>, PageEntry> entries;
    std::map<std::pair<int, int>, SparseMatrix> differentials;

    int dim(int p, int q) const;
    /* sum of dim(p, n - p) over all columns p */
    int total_dim(int n) const;
};

/* Pages 1..r_max from the span formulas
     Z_r^{p,n} = { x in F^p C^n : dx in F^{p+r} },
     E_r^{p,n} = Z_r^{p,n} / (Z_{r-1}^{p+1,n} + d Z_{r-1}^{p-r+1,n-1}).
   Every page is recomputed from the differentials of the page before it and
   the ranks must agree, and every composite d_r . d_r must vanish; failures
   of either audit throw std::logic_error.  Degrees at the window edges see
   a truncated differential, exactly as in cohomology_window. */
std::vector<SSPage> compute_pages(const FilteredComplexWindow& f, int r_max);

/* The limit as the associated graded of the filtration on cohomology:
   the value at (p, q) is dim F^p H^{p+q} - dim F^{p+1} H^{p+q}, and zero
   entries are omitted. */
std::map<std::pair<int, int>, int> einf_entries(const FilteredComplexWindow& f);

/* Bookkeeping for the convergence statement: the limit's column totals per
   total degree, the directly computed target ranks, which degrees are
   trustworthy, and the first page whose ranks already equal the limit. */
struct ConvergenceReport {
    DegreeWindow window{0, 0};
    std::map<int, int> einf_total_dims;
    std::map<int, int> target_dims;
    std::map<int, bool> incomplete; /* window edges and truncation caps */
    /* first page whose ranks equal the limit on total degrees strictly
       inside the window (edge degrees see a truncated differential and are
       left out of the comparison); 0 when not reached within r_max */
    int stabilization_page = 0;
    bool stabilized = false;
    bool complete = false; /* word-length truncation certificate */
    std::string certificate;
    bool matches = false; /* stabilized and limit == target off flagged degrees */
};

struct SpectralSequence {
    std::vector<SSPage> pages;
    ConvergenceReport report;
};

/* The spectral sequence of the reduced two-sided bar hom complex filtered
   by word length.  Page one is recounted independently from the cohomology
   of the letter-tensor complexes paired against the cohomology of the
   target, and page two against the bar construction over the cohomology
   algebra; a recount that cannot be set up inside the given windows is
   skipped, and a recount that disagrees throws std::logic_error.  Window
   demands on n and m are those of bar_hom_complex. */
SpectralSequence hyper_ext_ss(const SemifreeCdga& a, const ModuleTable& n, const ModuleTable& m,
                              int max_length, const DegreeWindow& w, int r_max);

/* The spectral sequence of the hom complex out of a minimal semifree module,
   filtered by source generator degree.  Page one is recounted against the
   hom cohomology of each generator-degree slice.  Throws
   std::invalid_argument when the source is not minimal or has a generator
   of negative degree. */
SpectralSequence minimal_ss(const SemifreeModule& nmin, const ModuleTable& m,
                            const DegreeWindow& w, int r_max);

}  // namespace dgm
