#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dgm/bar.hpp"
#include "dgm/cdga.hpp"
#include "dgm/dgmodule.hpp"
#include "dgm/specseq.hpp"
#include "doctest.h"

using namespace dgm;

namespace {

bool has_substring(const std::string& s, const std::string& sub) {
    return s.find(sub) != std::string::npos;
}

SemifreeModule hopf_module(const SemifreeCdga& s2) {
    SemifreeModule m(s2);
    m.add_generator("e_0", 0);
    m.add_generator("e_1", 1, ModElement::generator(0, AlgElement::generator(0)));
    return m;
}

SemifreeModule free_rank_one(const SemifreeCdga& a, int degree) {
    SemifreeModule m(a);
    m.add_generator("u", degree);
    return m;
}

/* The cohomology ring of the even-sphere model as a module table over the
   model itself, through the algebra map sending the closed generator to its
   class and the bounding generator to zero.  Quasi-isomorphic to the free
   rank-one module, but bounded above, so hom-window feasibility can hold. */
ModuleTable sphere_cohomology_table(const SemifreeCdga& s2, const DegreeWindow& w) {
    BasisLabeledSpace sp;
    sp.set_basis(0, {"1"});
    sp.set_basis(2, {"w"});
    CochainComplexWindow cx(w, std::move(sp), {});
    std::map<std::tuple<int, int, int>, Vec> act;
    act[{0, 0, 0}] = Vec{Rational(1)}; /* w_2 . 1 = w */
    act[{0, 2, 0}] = Vec{};            /* w_2 . w lands in degree 4: zero */
    act[{1, 0, 0}] = Vec{};            /* w_3 . 1 lands in degree 3: zero */
    act[{1, 2, 0}] = Vec{};            /* w_3 . w lands in degree 5: zero */
    return ModuleTable{s2, std::move(cx), std::move(act)};
}

int pdim(const SSPage& pg, int p, int q) { return pg.dim(p, q); }

int einf_at(const std::map<std::pair<int, int>, int>& e, int p, int q) {
    auto it = e.find({p, q});
    return it == e.end() ? 0 : it->second;
}

/* one generator in each listed degree, zero differential */
CochainComplexWindow two_term_complex(const DegreeWindow& w, int lodeg,
                                      const std::vector<std::string>& lolabels, int hideg,
                                      const std::vector<std::string>& hilabels,
                                      const SparseMatrix& d) {
    BasisLabeledSpace sp;
    sp.set_basis(lodeg, lolabels);
    sp.set_basis(hideg, hilabels);
    std::map<int, SparseMatrix> diff;
    if (!d.is_zero()) diff.emplace(lodeg, d);
    return CochainComplexWindow(w, std::move(sp), std::move(diff));
}

}  // namespace

TEST_CASE("two-step filtration of a contractible complex clears by page two") {
    SparseMatrix d(1, 1);
    d.set(0, 0, Rational(1));
    CochainComplexWindow cx = two_term_complex({-1, 2}, 0, {"x"}, 1, {"y"}, d);
    FilteredComplexWindow f(cx, {{0, {0}}, {1, {1}}});

    std::vector<SSPage> pages = compute_pages(f, 2);
    REQUIRE(pages.size() == 2);
    CHECK(pages[0].r == 1);
    CHECK(pdim(pages[0], 0, 0) == 1);
    CHECK(pdim(pages[0], 1, 0) == 1);
    CHECK(pages[0].entries.size() == 2);

    std::pair<int, int> key{0, 0};
    REQUIRE(pages[0].differentials.count(key) == 1);
    CHECK_FALSE(pages[0].differentials.at(key).is_zero());

    CHECK(pages[1].entries.empty());
    CHECK(einf_entries(f).empty());
}

TEST_CASE("a differential that raises filtration by one reappears on page one") {
    /* d(x1) = y1, d(x2) = 0; levels equal to the degree */
    SparseMatrix d(2, 2);
    d.set(0, 0, Rational(1));
    CochainComplexWindow cx = two_term_complex({-1, 2}, 0, {"x1", "x2"}, 1, {"y1", "y2"}, d);
    FilteredComplexWindow f(cx, {{0, {0, 0}}, {1, {1, 1}}});

    std::vector<SSPage> pages = compute_pages(f, 3);
    CHECK(pdim(pages[0], 0, 0) == 2);
    CHECK(pdim(pages[0], 1, 0) == 2);

    std::pair<int, int> key{0, 0};
    REQUIRE(pages[0].differentials.count(key) == 1);
    const SparseMatrix& d1 = pages[0].differentials.at(key);
    CHECK(d1.rows() == 2);
    CHECK(d1.cols() == 2);
    CHECK(d1.get(0, 0) == Rational(1));
    CHECK(d1.get(0, 1) == Rational(0));
    CHECK(d1.get(1, 0) == Rational(0));
    CHECK(d1.get(1, 1) == Rational(0));

    /* page two equals the direct cohomology, and later pages stay put */
    CohomologyResult h = cohomology_window(cx);
    CHECK(pdim(pages[1], 0, 0) == h.dim(0));
    CHECK(pdim(pages[1], 1, 0) == h.dim(1));
    CHECK(pages[1].entries.size() == 2);
    CHECK(pages[2].entries == pages[1].entries);

    auto einf = einf_entries(f);
    CHECK(einf_at(einf, 0, 0) == 1);
    CHECK(einf_at(einf, 1, 0) == 1);
    CHECK(einf.size() == 2);

    /* totals never grow with the page index */
    for (int n = 0; n <= 1; ++n) CHECK(pages[1].total_dim(n) <= pages[0].total_dim(n));
}

TEST_CASE("the trivial filtration puts total cohomology in column zero at page one") {
    SparseMatrix d(2, 2);
    d.set(0, 0, Rational(1));
    CochainComplexWindow cx = two_term_complex({-1, 2}, 0, {"x1", "x2"}, 1, {"y1", "y2"}, d);
    FilteredComplexWindow f(cx, {{0, {0, 0}}, {1, {0, 0}}});

    std::vector<SSPage> pages = compute_pages(f, 2);
    CHECK(pdim(pages[0], 0, 0) == 1);
    CHECK(pdim(pages[0], 0, 1) == 1);
    CHECK(pages[0].entries.size() == 2);
    CHECK(pages[1].entries == pages[0].entries);
    CHECK(einf_entries(f) == std::map<std::pair<int, int>, int>{{{0, 0}, 1}, {{0, 1}, 1}});
}

TEST_CASE("a filtration jump of two produces a genuine page-two differential") {
    SparseMatrix d(1, 1);
    d.set(0, 0, Rational(1));
    CochainComplexWindow cx = two_term_complex({-1, 2}, 0, {"x"}, 1, {"z"}, d);
    FilteredComplexWindow f(cx, {{0, {0}}, {1, {2}}});

    std::vector<SSPage> pages = compute_pages(f, 3);
    CHECK(pdim(pages[0], 0, 0) == 1);
    CHECK(pdim(pages[0], 2, -1) == 1);
    CHECK(pages[0].entries.size() == 2);
    CHECK(pages[0].differentials.empty()); /* the page-one target column is empty */

    CHECK(pages[1].entries == pages[0].entries);
    std::pair<int, int> key{0, 0};
    REQUIRE(pages[1].differentials.count(key) == 1);
    CHECK_FALSE(pages[1].differentials.at(key).is_zero());

    CHECK(pages[2].entries.empty());
    CHECK(einf_entries(f).empty());
}

TEST_CASE("filtration violations and malformed inputs are refused") {
    SparseMatrix d(1, 1);
    d.set(0, 0, Rational(1));
    CochainComplexWindow cx = two_term_complex({-1, 2}, 0, {"x"}, 1, {"y"}, d);

    /* the differential may never lower the level */
    CHECK_THROWS_WITH_AS(FilteredComplexWindow(cx, {{0, {1}}, {1, {0}}}),
                         doctest::Contains("filtration"), std::invalid_argument);
    /* per-degree level lists must match the basis */
    CHECK_THROWS_WITH_AS(FilteredComplexWindow(cx, {{0, {0, 0}}, {1, {1}}}),
                         doctest::Contains("level"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(FilteredComplexWindow(cx, {{1, {1}}}), doctest::Contains("level"),
                         std::invalid_argument);
    /* levels are non-negative by convention */
    CHECK_THROWS_WITH_AS(FilteredComplexWindow(cx, {{0, {-1}}, {1, {0}}}),
                         doctest::Contains("level"), std::invalid_argument);

    FilteredComplexWindow ok(cx, {{0, {0}}, {1, {0}}});
    CHECK_THROWS_WITH_AS(compute_pages(ok, 0), doctest::Contains("page"), std::invalid_argument);
}

TEST_CASE("hyper spectral sequence of the loop-space pattern collapses at page one") {
    SemifreeCdga s3 = standard_model(ModelKind::odd_sphere, 3);
    ModuleTable q_n = augmentation_table(s3, {-1, 7});
    ModuleTable q_m = augmentation_table(s3, {-8, 8});

    SpectralSequence ss = hyper_ext_ss(s3, q_n, q_m, 3, {-7, 1}, 3);
    REQUIRE(ss.pages.size() == 3);

    /* one word of each length p at total degree -2p, nothing else */
    for (int p = 0; p <= 3; ++p) CHECK(pdim(ss.pages[0], p, -3 * p) == 1);
    CHECK(ss.pages[0].entries.size() == 4);
    CHECK(ss.pages[0].differentials.empty());
    CHECK(ss.pages[2].entries == ss.pages[0].entries);

    const ConvergenceReport& rep = ss.report;
    CHECK(rep.stabilized);
    CHECK(rep.stabilization_page == 1);
    CHECK(rep.complete);
    CHECK(rep.matches);
    for (int k = -6; k <= 0; ++k) {
        CHECK(rep.einf_total_dims.at(k) == ((k % 2 == 0) ? 1 : 0));
        CHECK(rep.target_dims.at(k) == rep.einf_total_dims.at(k));
        CHECK_FALSE(rep.incomplete.at(k));
    }
    CHECK(rep.incomplete.at(-7));
    CHECK(rep.incomplete.at(1));
}

TEST_CASE("hyper spectral sequence converges to the module ext over the sphere base") {
    SemifreeCdga s2 = standard_model(ModelKind::even_sphere, 2);
    SemifreeModule hopf = hopf_module(s2);
    ModuleTable n = from_semifree(hopf, {-8, 6});
    ModuleTable m = sphere_cohomology_table(s2, {-10, 12});

    SpectralSequence ss = hyper_ext_ss(s2, n, m, 5, {-3, 7}, 3);
    const SSPage& e1 = ss.pages[0];

    /* page one on interior degrees, entry by entry */
    std::map<std::pair<int, int>, int> expected{
        {{0, -1}, 1}, {{0, 0}, 1}, {{0, 2}, 1}, {{1, -3}, 1}, {{1, -2}, 1}, {{1, 0}, 1},
        {{2, -4}, 1}, {{2, -2}, 1}, {{3, -4}, 1}, {{4, -6}, 1}};
    for (const auto& [key, dim] : expected) CHECK(pdim(e1, key.first, key.second) == dim);
    for (const auto& [key, entry] : e1.entries) {
        int total = key.first + key.second;
        if (total >= -2 && total <= 6) {
            CHECK_MESSAGE(expected.count(key) == 1,
                          "unexpected page-one entry at p=", key.first, " q=", key.second);
        }
    }

    /* limit: one class at total degree -1 and one at 2, both in column zero */
    const ConvergenceReport& rep = ss.report;
    CHECK(rep.stabilized);
    CHECK(rep.stabilization_page == 2);
    CHECK(rep.complete);
    CHECK(rep.matches);
    for (int k = -2; k <= 6; ++k) {
        int want = (k == -1 || k == 2) ? 1 : 0;
        CHECK(rep.einf_total_dims.at(k) == want);
        CHECK_FALSE(rep.incomplete.at(k));
    }

    /* the same ranks from the resolution-free route on the honestly free target */
    ModuleTable free_m = from_semifree(free_rank_one(s2, 0), {-4, 9});
    ExtResult direct = ext_via_hom(hopf, free_m, {-3, 7});
    for (int k = -2; k <= 6; ++k) CHECK(direct.dims.at(k) == rep.einf_total_dims.at(k));

    /* totals never grow with the page index on interior degrees */
    for (int n_deg = -2; n_deg <= 6; ++n_deg) {
        CHECK(ss.pages[1].total_dim(n_deg) <= ss.pages[0].total_dim(n_deg));
        CHECK(ss.pages[2].total_dim(n_deg) <= ss.pages[1].total_dim(n_deg));
    }
}

TEST_CASE("a free coefficient module concentrates the limit in column zero") {
    SemifreeCdga s3 = standard_model(ModelKind::odd_sphere, 3);
    ModuleTable n = from_semifree(free_rank_one(s3, 0), {-2, 6});
    ModuleTable m = augmentation_table(s3, {-7, 7});

    SpectralSequence ss = hyper_ext_ss(s3, n, m, 2, {-5, 1}, 3);

    /* page one is NOT concentrated in column zero... */
    CHECK(pdim(ss.pages[0], 1, -3) == 1);
    CHECK(pdim(ss.pages[0], 0, -3) == 1);
    /* ...but everything away from column zero cancels in the limit */
    const ConvergenceReport& rep = ss.report;
    CHECK(rep.stabilized);
    CHECK(rep.matches);
    CHECK(rep.complete);
    for (int k = -4; k <= 0; ++k) CHECK(rep.einf_total_dims.at(k) == (k == 0 ? 1 : 0));
}

TEST_CASE("minimal filtration of the hopf module collapses at page one") {
    SemifreeCdga s2 = standard_model(ModelKind::even_sphere, 2);
    SemifreeModule hopf = hopf_module(s2);
    ModuleTable m = augmentation_table(s2, {-5, 5});

    SpectralSequence ss = minimal_ss(hopf, m, {-3, 2}, 2);
    CHECK(pdim(ss.pages[0], 0, 0) == 1);
    CHECK(pdim(ss.pages[0], 1, -2) == 1);
    CHECK(ss.pages[0].entries.size() == 2);
    for (const auto& [key, mat] : ss.pages[0].differentials) CHECK(mat.is_zero());

    const ConvergenceReport& rep = ss.report;
    CHECK(rep.stabilized);
    CHECK(rep.stabilization_page == 1);
    CHECK(rep.matches);
    CHECK(rep.einf_total_dims.at(0) == 1);
    CHECK(rep.einf_total_dims.at(-1) == 1);
    CHECK(rep.target_dims.at(0) == 1);
    CHECK(rep.target_dims.at(-1) == 1);

    /* the page-one columns are the generator-degree slices, independently */
    ExtResult slice0 = ext_via_hom(split_postnikov(hopf, 0).slice, m, {-3, 2});
    ExtResult slice1 = ext_via_hom(split_postnikov(hopf, 1).slice, m, {-3, 2});
    CHECK(slice0.dims.at(0) == pdim(ss.pages[0], 0, 0));
    CHECK(slice1.dims.at(-1) == pdim(ss.pages[0], 1, -2));
}

TEST_CASE("a single generator degree collapses the minimal sequence immediately") {
    SemifreeCdga s3 = standard_model(ModelKind::odd_sphere, 3);
    SemifreeModule one = free_rank_one(s3, 0);
    ModuleTable m = from_semifree(free_rank_one(s3, 0), {-2, 6});

    SpectralSequence ss = minimal_ss(one, m, {-1, 4}, 2);
    CHECK(pdim(ss.pages[0], 0, 0) == 1);
    CHECK(pdim(ss.pages[0], 0, 3) == 1);
    CHECK(ss.pages[0].entries.size() == 2);
    CHECK(ss.report.stabilized);
    CHECK(ss.report.stabilization_page == 1);
    CHECK(ss.report.matches);
    for (int k = 0; k <= 3; ++k) CHECK(ss.report.einf_total_dims.at(k) == (k % 3 == 0 ? 1 : 0));
}

TEST_CASE("the minimal sequence of a truncated resolution runs a page-two differential") {
    SemifreeCdga s3 = standard_model(ModelKind::odd_sphere, 3);
    ResolutionResult rr =
        minimal_resolution(s3, augmentation_table(s3, {-1, 8}), {0, 6}, ResolutionCaps{});
    REQUIRE(rr.complete);
    ModuleTable m = from_semifree(free_rank_one(s3, 0), {-6, 11});

    SpectralSequence ss = minimal_ss(rr.module, m, {-5, 4}, 4);
    const SSPage& e1 = ss.pages[0];

    /* generator duals against the sphere classes: (p, -p) and (p, 3-p) shapes */
    std::map<std::pair<int, int>, int> expected{{{0, 0}, 1},  {{0, 3}, 1},  {{2, -4}, 1},
                                                {{2, -1}, 1}, {{4, -8}, 1}, {{4, -5}, 1},
                                                {{6, -9}, 1}};
    for (const auto& [key, dim] : expected) CHECK(pdim(e1, key.first, key.second) == dim);
    for (const auto& [key, entry] : e1.entries) {
        int total = key.first + key.second;
        if (total >= -4 && total <= 3)
            CHECK_MESSAGE(expected.count(key) == 1, "unexpected entry at p=", key.first,
                          " q=", key.second);
    }
    /* odd columns are empty, so page one stores no differentials */
    CHECK(e1.differentials.empty());

    /* the page-two map out of (0,0) pairs the unit dual with the shifted one */
    std::pair<int, int> corner{0, 0};
    REQUIRE(ss.pages[1].differentials.count(corner) == 1);
    CHECK_FALSE(ss.pages[1].differentials.at(corner).is_zero());

    /* page three keeps only the socle class, and that is the limit */
    CHECK(pdim(ss.pages[2], 0, 3) == 1);
    const ConvergenceReport& rep = ss.report;
    CHECK(rep.stabilized);
    CHECK(rep.stabilization_page == 3);
    CHECK(rep.matches);
    for (int k = -4; k <= 3; ++k) {
        CHECK(rep.einf_total_dims.at(k) == (k == 3 ? 1 : 0));
        CHECK(rep.target_dims.at(k) == rep.einf_total_dims.at(k));
    }
}

TEST_CASE("non-minimal or negative-degree sources are refused") {
    SemifreeCdga s3 = standard_model(ModelKind::odd_sphere, 3);
    ModuleTable m = augmentation_table(s3, {-5, 5});

    SemifreeModule collapsing(s3);
    collapsing.add_generator("a", 1);
    collapsing.add_generator("b", 0, ModElement::generator(0, AlgElement::unit(Rational(1))));
    CHECK_THROWS_WITH_AS(minimal_ss(collapsing, m, {-2, 2}, 2), doctest::Contains("minimal"),
                         std::invalid_argument);

    SemifreeModule shifted(s3);
    shifted.add_generator("a", -2);
    CHECK_THROWS_WITH_AS(minimal_ss(shifted, m, {-2, 2}, 2), doctest::Contains("negative"),
                         std::invalid_argument);
}

TEST_CASE("hyper feasibility failures surface as window errors") {
    SemifreeCdga s3 = standard_model(ModelKind::odd_sphere, 3);
    ModuleTable q_n = augmentation_table(s3, {-1, 7});
    ModuleTable narrow_m = augmentation_table(s3, {-3, 3});
    CHECK_THROWS_WITH_AS(hyper_ext_ss(s3, q_n, narrow_m, 3, {-7, 1}, 2),
                         doctest::Contains("infeasible"), std::invalid_argument);
}
