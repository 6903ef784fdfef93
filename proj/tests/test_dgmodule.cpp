#include <algorithm>
#include <random>
#include <stdexcept>

#include "dgm/dgmodule.hpp"
#include "doctest.h"

using namespace dgm;

namespace {

/* independent dense rank via forward elimination, no shared code paths */
int oracle_rank(std::vector<std::vector<Rational>> rows) {
    if (rows.empty()) return 0;
    size_t cols = rows[0].size();
    int rank = 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows.size(); ++c) {
        size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            Rational f = rows[i][c] / rows[r][c];
            for (size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++rank;
        ++r;
    }
    return rank;
}

/* dim H^k = dim C^k - rank d^k - rank d^{k-1}, interior degrees only */
std::map<int, int> oracle_h_dims(const CochainComplexWindow& c) {
    std::map<int, int> out;
    const DegreeWindow& w = c.window();
    for (int k = w.lo + 1; k < w.hi; ++k) {
        int dim = c.dim(k);
        dim -= oracle_rank(c.d(k).to_dense_rows());
        dim -= oracle_rank(c.d(k - 1).to_dense_rows());
        out[k] = dim;
    }
    return out;
}

SemifreeCdga sphere2() { return standard_model(ModelKind::even_sphere, 2); }
SemifreeCdga sphere3() { return standard_model(ModelKind::odd_sphere, 3); }
SemifreeCdga circle() { return standard_model(ModelKind::circle); }

AlgElement mono_elem(std::vector<std::pair<int, int>> factors, Rational c = Rational(1)) {
    AlgElement e;
    e.add_term(Monomial{std::move(factors)}, c);
    return e;
}

SemifreeModule hopf() {
    SemifreeModule m(sphere2());
    m.add_generator("e_0", 0);
    ModElement d1;
    d1.add(0, AlgElement::generator(0));  /* w_2 · e_0 */
    m.add_generator("e_1", 1, d1);
    return m;
}

SemifreeModule free_on(const SemifreeCdga& a, const std::string& name, int degree) {
    SemifreeModule m(a);
    m.add_generator(name, degree);
    return m;
}

/* appends contractible pairs (w, v) with dv = w + (reduced combination of the
   original generators); dw forced by d^2 = 0 */
SemifreeModule inflate(const SemifreeModule& m, std::mt19937& rng, int pairs) {
    SemifreeModule r = m;
    int originals = m.num_generators();
    std::uniform_int_distribution<int> pick_deg(0, 3);
    std::uniform_int_distribution<int> pick_coeff(-2, 2);
    for (int p = 0; p < pairs; ++p) {
        int vdeg = pick_deg(rng);
        ModElement tail;
        for (int g = 0; g < originals; ++g) {
            int cdeg = vdeg + 1 - m.generator(g).degree;
            if (cdeg < 1) continue;
            auto monos = r.base().monomial_basis(cdeg);
            if (monos.empty()) continue;
            int c = pick_coeff(rng);
            if (c == 0) continue;
            std::uniform_int_distribution<size_t> pick_m(0, monos.size() - 1);
            AlgElement a;
            a.add_term(monos[pick_m(rng)], Rational(c));
            tail.add(g, a);
        }
        int w = r.add_generator("zw" + std::to_string(p), vdeg + 1,
                                r.differentiate(tail).scaled(Rational(-1)));
        ModElement dv = ModElement::generator(w) + tail;
        r.add_generator("zv" + std::to_string(p), vdeg, dv);
    }
    return r;
}

std::map<int, int> h_dims(const CohomologyResult& h, int lo, int hi) {
    std::map<int, int> out;
    for (int k = lo; k <= hi; ++k) out[k] = h.dim(k);
    return out;
}

}  // namespace

TEST_CASE("validate_module accepts the Hopf module as minimal") {
    ModuleValidation v = validate_module(hopf());
    CHECK(v.valid);
    CHECK(v.errors.empty());
    CHECK(v.coefficients_reduced);
    CHECK(v.degree_monotone);
    CHECK(v.minimal);
}

TEST_CASE("validate_module flags constant coefficients and degree errors") {
    SemifreeCdga a = sphere2();

    /* contractible pair d(p) = q: the referenced generator must come first,
       so the list order is forced to be degree-decreasing */
    SemifreeModule pq(a);
    pq.add_generator("q", 2);
    pq.add_generator("p", 1, ModElement::generator(0, AlgElement::unit(Rational(1))));
    ModuleValidation v = validate_module(pq);
    CHECK(v.valid);
    CHECK_FALSE(v.coefficients_reduced);
    CHECK_FALSE(v.degree_monotone);
    CHECK_FALSE(v.minimal);

    SemifreeModule bad(a);
    bad.add_generator("u", 0);
    bad.add_generator("w", 2, ModElement::generator(0, AlgElement::generator(0)));
    /* d(w) would need degree 3; w_2·u has degree 2 */
    ModuleValidation vb = validate_module(bad);
    CHECK_FALSE(vb.valid);
    CHECK_FALSE(vb.errors.empty());

    SemifreeModule nonmono(a);
    nonmono.add_generator("b", 2);
    nonmono.add_generator("a", 1);
    ModuleValidation vm = validate_module(nonmono);
    CHECK(vm.valid);
    CHECK(vm.coefficients_reduced);
    CHECK_FALSE(vm.degree_monotone);
    CHECK_FALSE(vm.minimal);
}

TEST_CASE("validate_module catches a failing d^2 and names the generator") {
    SemifreeCdga a = sphere2();
    SemifreeModule m(a);
    m.add_generator("u", 0);
    m.add_generator("v", 1, ModElement::generator(0, AlgElement::generator(0)));
    m.add_generator("t", 2, ModElement::generator(1, AlgElement::generator(0)));
    /* d(t) = w_2·v, d^2(t) = w_2·(w_2·u) = w_2^2·u ≠ 0 */
    ModuleValidation v = validate_module(m);
    CHECK_FALSE(v.valid);
    bool names_t = false;
    for (const auto& e : v.errors) names_t = names_t || e.find("t") != std::string::npos;
    CHECK(names_t);
}

TEST_CASE("validate_module rejects references to later generators") {
    SemifreeModule m(sphere2());
    m.add_generator("a", 1);
    m.add_generator("b", 2);
    m.set_differential(0, ModElement::generator(1, AlgElement::unit(Rational(1))));
    CHECK_FALSE(validate_module(m).valid);
}

TEST_CASE("module slices of the Hopf module have the expected dimensions") {
    SemifreeModule m = hopf();
    CochainComplexWindow c = module_complex_window(m, DegreeWindow{0, 5});
    CHECK(c.dim(0) == 1);
    CHECK(c.dim(1) == 1);
    CHECK(c.dim(2) == 1);
    CHECK(c.dim(3) == 2);
    CHECK(c.dim(4) == 2);
    CHECK(c.dim(5) == 2);
    CHECK(c.differential_squares_to_zero());
    /* degree 3 basis: w_3·e_0 then w_2·e_1 (generator-major order) */
    CHECK(c.labels(3) == std::vector<std::string>{"w_3*e_0", "w_2*e_1"});
}

TEST_CASE("Hopf module cohomology is Q in degrees 0 and 3") {
    SemifreeModule m = hopf();
    CohomologyResult h = module_cohomology(m, DegreeWindow{-1, 6});
    CHECK(h_dims(h, 0, 5) == std::map<int, int>{{0, 1}, {1, 0}, {2, 0}, {3, 1}, {4, 0}, {5, 0}});
    for (int k = 0; k <= 5; ++k) CHECK_FALSE(h.by_degree.at(k).boundary_incomplete);

    /* H^3 is spanned by w_3·e_0 - w_2·e_1: basis order (w_3*e_0, w_2*e_1) */
    const Vec& rep = h.by_degree.at(3).representatives.at(0);
    std::vector<std::vector<Rational>> stacked{rep, {Rational(1), Rational(-1)}};
    CHECK(oracle_rank(stacked) == 1);
}

TEST_CASE("free and contractible modules have the expected cohomology") {
    CohomologyResult hf = module_cohomology(free_on(sphere3(), "e", 0), DegreeWindow{-1, 7});
    CHECK(h_dims(hf, 0, 6) == std::map<int, int>{{0, 1}, {1, 0}, {2, 0}, {3, 1}, {4, 0}, {5, 0}, {6, 0}});

    SemifreeModule disk(sphere2());
    disk.add_generator("q", 2);
    disk.add_generator("p", 1, ModElement::generator(0, AlgElement::unit(Rational(1))));
    CohomologyResult hd = module_cohomology(disk, DegreeWindow{-1, 6});
    for (int k = 0; k <= 5; ++k) CHECK(hd.dim(k) == 0);
}

TEST_CASE("module cohomology dims agree with the independent rank oracle") {
    SemifreeModule m = hopf();
    SemifreeModule t = tensor_over_A(m, m);
    for (const SemifreeModule* mod : {&m, &t}) {
        CochainComplexWindow c = module_complex_window(*mod, DegreeWindow{-1, 7});
        CohomologyResult h = cohomology_window(c);
        for (const auto& [k, dim] : oracle_h_dims(c)) CHECK(h.dim(k) == dim);
    }
}

TEST_CASE("from_semifree tables act compatibly with both differentials") {
    SemifreeModule m = hopf();
    DegreeWindow w{-1, 7};
    ModuleTable t = from_semifree(m, w);
    CHECK(t.complex.differential_squares_to_zero());
    for (int k = 0; k <= 4; ++k) CHECK(t.complex.dim(k) == module_complex_window(m, w).dim(k));

    /* Leibniz on the table: d(a·x) = (da)·x + (-1)^{|a|} a·(dx) for a = w_3 */
    SemifreeCdga a = m.base();
    AlgElement w3 = AlgElement::generator(1);
    AlgElement dw3 = a.extend_derivation(w3);
    for (int k = 0; k <= 2; ++k) {
        for (int i = 0; i < t.complex.dim(k); ++i) {
            Vec x = unit_vec(t.complex.dim(k), i);
            auto lhs = t.act(w3, k + 1, t.complex.d(k).apply(x));
            auto ax = t.act(w3, k, x);
            REQUIRE(ax.has_value());
            Vec rhs = t.complex.d(k + 3).apply(*ax);
            auto dax = t.act(dw3, k, x);
            REQUIRE(dax.has_value());
            REQUIRE(lhs.has_value());
            /* d(w_3·x) = (dw_3)·x - w_3·dx  =>  dax = rhs + (-1)^{|w_3|} lhs */
            Vec expect = add_vec(*dax, scale_vec(Rational(-1), *lhs));
            CHECK(rhs == expect);
        }
    }
}

TEST_CASE("augmentation table is Q concentrated in degree zero") {
    ModuleTable q = augmentation_table(sphere2(), DegreeWindow{-2, 4});
    CHECK(q.complex.dim(0) == 1);
    for (int k = -2; k <= 4; ++k)
        if (k != 0) CHECK(q.complex.dim(k) == 0);
    auto acted = q.act(AlgElement::generator(0), 0, unit_vec(1, 0));
    REQUIRE(acted.has_value());
    CHECK(is_zero_vec(*acted));
    auto unit_acted = q.act(AlgElement::unit(Rational(7)), 0, unit_vec(1, 0));
    REQUIRE(unit_acted.has_value());
    CHECK(*unit_acted == Vec{Rational(7)});
    CohomologyResult h = module_cohomology(q, DegreeWindow{-1, 3});
    CHECK(h.dim(0) == 1);
    CHECK(h.dim(1) == 0);
    CHECK(h.dim(2) == 0);
}

TEST_CASE("shift_module by zero is the identity and round trips are exact") {
    SemifreeModule m = hopf();
    CHECK(shift_module(m, 0) == m);
    for (int n : {1, 2, 3, -2}) CHECK(shift_module(shift_module(m, n), -n) == m);
}

TEST_CASE("shift_module signs: the Hopf differential coefficient flips for odd shifts") {
    SemifreeModule m = hopf();
    SemifreeModule s1 = shift_module(m, 1);
    CHECK(s1.generator(0).degree == -1);
    CHECK(s1.generator(1).degree == 0);
    /* stored coefficient picks up (-1)^{n(1+|a|)}: n=1, |w_2|=2 gives -w_2 */
    CHECK(s1.differential(1) == ModElement::generator(0, AlgElement::generator(0, Rational(-1))));
    CHECK(validate_module(s1).valid);

    SemifreeModule s2 = shift_module(m, 2);
    CHECK(s2.differential(1) == ModElement::generator(0, AlgElement::generator(0, Rational(1))));
}

TEST_CASE("shift_module shifts cohomology: H^k(M[1]) = H^{k+1}(M)") {
    SemifreeModule m = hopf();
    SemifreeModule s = shift_module(m, 1);
    CohomologyResult hm = module_cohomology(m, DegreeWindow{-1, 7});
    CohomologyResult hs = module_cohomology(s, DegreeWindow{-2, 6});
    for (int k = -1; k <= 5; ++k) CHECK(hs.dim(k) == hm.dim(k + 1));
}

TEST_CASE("minimize leaves the Hopf module unchanged") {
    SemifreeModule m = hopf();
    MinimizeResult r = minimize(m);
    CHECK(r.module == m);
    CHECK(is_chain_map(m, r.module, r.projection));
    CHECK(is_chain_map(r.module, m, r.section));
    for (int i = 0; i < r.module.num_generators(); ++i) {
        ModElement round = apply_morphism(r.module, r.projection,
                                          apply_morphism(m, r.section, ModElement::generator(i)));
        CHECK(round == ModElement::generator(i));
    }
}

TEST_CASE("minimize cancels a unit-coefficient pair down to one generator") {
    SemifreeCdga a = sphere2();
    SemifreeModule m(a);
    m.add_generator("e_0", 0);
    m.add_generator("k", 2);
    m.add_generator("h", 1, ModElement::generator(1, AlgElement::unit(Rational(1))));
    MinimizeResult r = minimize(m);
    REQUIRE(r.module.num_generators() == 1);
    CHECK(r.module.generator(0).name == "e_0");
    CHECK(r.module.differential(0).is_zero());
    CHECK(validate_module(r.module).minimal);
    CHECK(is_chain_map(m, r.module, r.projection));
    CHECK(is_chain_map(r.module, m, r.section));
}

TEST_CASE("minimize handles a pair entangled with the surviving generator") {
    SemifreeCdga a = sphere2();
    SemifreeModule m(a);
    m.add_generator("e_0", 0);
    /* d(h) = -w_2^2·e_0 so that d(k) = h + w_3·e_0 squares to zero */
    m.add_generator("h", 3, ModElement::generator(0, mono_elem({{0, 2}}, Rational(-1))));
    ModElement dk = ModElement::generator(1, AlgElement::unit(Rational(1)));
    dk.add(0, AlgElement::generator(1));
    m.add_generator("k", 2, dk);
    REQUIRE(validate_module(m).valid);

    MinimizeResult r = minimize(m);
    REQUIRE(r.module.num_generators() == 1);
    CHECK(r.module.generator(0).name == "e_0");
    CHECK(validate_module(r.module).minimal);
    CHECK(is_chain_map(m, r.module, r.projection));
    CHECK(is_chain_map(r.module, m, r.section));
    for (int i = 0; i < r.module.num_generators(); ++i) {
        ModElement round = apply_morphism(r.module, r.projection,
                                          apply_morphism(m, r.section, ModElement::generator(i)));
        CHECK(round == ModElement::generator(i));
    }

    CohomologyResult before = module_cohomology(m, DegreeWindow{-1, 7});
    CohomologyResult after = module_cohomology(r.module, DegreeWindow{-1, 7});
    for (int k = 0; k <= 6; ++k) CHECK(before.dim(k) == after.dim(k));
}

TEST_CASE("minimize strips random contractible inflations exactly") {
    std::mt19937 rng(771177);
    SemifreeModule m = hopf();
    for (int trial = 0; trial < 20; ++trial) {
        SemifreeModule big = inflate(m, rng, 3);
        REQUIRE(validate_module(big).valid);
        MinimizeResult r = minimize(big);
        CHECK(r.module == m);
        CHECK(is_chain_map(big, r.module, r.projection));
        CHECK(is_chain_map(r.module, big, r.section));
        CohomologyResult before = module_cohomology(big, DegreeWindow{-1, 6});
        CohomologyResult after = module_cohomology(r.module, DegreeWindow{-1, 6});
        for (int k = 0; k <= 5; ++k) CHECK(before.dim(k) == after.dim(k));
    }
}

TEST_CASE("minimal_resolution of Q over the 3-sphere climbs by even degrees") {
    SemifreeCdga a = sphere3();
    ModuleTable q = augmentation_table(a, DegreeWindow{-1, 10});
    ResolutionResult r = minimal_resolution(a, q, DegreeWindow{0, 8});
    CHECK(r.complete);
    REQUIRE(r.module.num_generators() == 5);
    for (int j = 0; j < 5; ++j) CHECK(r.module.generator(j).degree == 2 * j);
    for (int j = 1; j < 5; ++j) {
        const ModElement& d = r.module.differential(j);
        REQUIRE(d.coeffs().size() == 1);
        REQUIRE(d.coeffs().count(j - 1) == 1);
        const AlgElement& c = d.coeffs().at(j - 1);
        REQUIRE(c.terms().size() == 1);
        CHECK(c.terms().begin()->first == Monomial{{{0, 1}}});  /* w_3 */
        CHECK(c.terms().begin()->second != 0);
    }
    CHECK(validate_module(r.module).minimal);

    /* chain map and cohomology comparison against the table */
    for (int i = 0; i < r.module.num_generators(); ++i) {
        auto lhs = apply_table_morphism(r.module, q, r.map, r.module.differential(i));
        REQUIRE(lhs.has_value());
        int deg = r.module.generator(i).degree;
        Vec rhs = q.complex.d(deg).apply(r.map.images.at(i));
        CHECK(*lhs == rhs);
    }
    CohomologyResult hr = module_cohomology(r.module, DegreeWindow{-1, 10});
    CohomologyResult ht = module_cohomology(q, DegreeWindow{-1, 10});
    for (int k = 0; k <= 9; ++k) CHECK(hr.dim(k) == ht.dim(k));
}

TEST_CASE("minimal_resolution over the circle trips its round cap honestly") {
    SemifreeCdga a = circle();
    ModuleTable q = augmentation_table(a, DegreeWindow{-2, 7});
    for (int n : {1, 2, 5}) {
        ResolutionCaps caps;
        caps.max_rounds = n;
        ResolutionResult r = minimal_resolution(a, q, DegreeWindow{0, 4}, caps);
        CHECK_FALSE(r.complete);
        CHECK(r.failed_degree == 1);
        REQUIRE(r.module.num_generators() == n + 1);
        for (int j = 0; j <= n; ++j) CHECK(r.module.generator(j).degree == 0);
        for (int j = 1; j <= n; ++j) {
            const ModElement& d = r.module.differential(j);
            REQUIRE(d.coeffs().size() == 1);
            REQUIRE(d.coeffs().count(j - 1) == 1);
            const AlgElement& c = d.coeffs().at(j - 1);
            REQUIRE(c.terms().size() == 1);
            CHECK(c.terms().begin()->first == Monomial{{{0, 1}}});  /* x */
        }
    }
}

TEST_CASE("minimal_resolution of an already-minimal one-generator table is one generator") {
    SemifreeCdga a = sphere3();
    ModuleTable t = from_semifree(free_on(a, "g", 2), DegreeWindow{-1, 7});
    ResolutionResult r = minimal_resolution(a, t, DegreeWindow{0, 4});
    CHECK(r.complete);
    REQUIRE(r.module.num_generators() == 1);
    CHECK(r.module.generator(0).degree == 2);
    CHECK(r.module.differential(0).is_zero());
}

TEST_CASE("split_postnikov of the Hopf module at zero") {
    SemifreeModule m = hopf();
    PostnikovSplit s = split_postnikov(m, 0);
    REQUIRE(s.sub.num_generators() == 1);
    CHECK(s.sub.generator(0).name == "e_0");
    CHECK(s.sub == free_on(sphere2(), "e_0", 0));
    REQUIRE(s.quot.num_generators() == 1);
    CHECK(s.quot.generator(0).name == "e_1");
    CHECK(s.quot.differential(0).is_zero());  /* the w_2·e_0 term is deleted */
    REQUIRE(s.slice.num_generators() == 1);
    CHECK(s.slice.generator(0).name == "e_0");
    CHECK(is_chain_map(s.sub, m, s.include));
    CHECK(is_chain_map(m, s.quot, s.project));
}

TEST_CASE("split_postnikov keeps everything when all generators sit in one degree") {
    SemifreeCdga a = sphere3();
    SemifreeModule m(a);
    m.add_generator("u", 2);
    m.add_generator("v", 2);
    PostnikovSplit s = split_postnikov(m, 2);
    CHECK(s.sub == m);
    CHECK(s.quot.num_generators() == 0);
    CHECK(s.slice == m);
}

TEST_CASE("split_postnikov rejects non-minimal modules") {
    SemifreeModule m(sphere2());
    m.add_generator("p", 1);
    m.add_generator("q", 2, ModElement::generator(0, AlgElement::unit(Rational(1))));
    CHECK_THROWS_AS(split_postnikov(m, 0), std::invalid_argument);
}

TEST_CASE("degree-zero slice of the circle resolution keeps its differential") {
    SemifreeCdga a = circle();
    ModuleTable q = augmentation_table(a, DegreeWindow{-2, 7});
    ResolutionCaps caps;
    caps.max_rounds = 3;
    ResolutionResult r = minimal_resolution(a, q, DegreeWindow{0, 4}, caps);
    PostnikovSplit s = split_postnikov(r.module, 0);
    CHECK(s.sub == r.module);
    CHECK(s.quot.num_generators() == 0);
    CHECK(s.slice == r.module);
    CHECK_FALSE(s.slice.differential(1).is_zero());
}

TEST_CASE("Postnikov long exact sequence is exact for the standard fixtures") {
    SemifreeModule m = hopf();
    for (int k : {-1, 0, 1, 2}) {
        for (const LesDegreeReport& rep : postnikov_les_check(m, k, DegreeWindow{-1, 7}))
            CHECK(rep.exact);
    }

    SemifreeCdga a3 = sphere3();
    ModuleTable q = augmentation_table(a3, DegreeWindow{-1, 12});
    ResolutionResult r = minimal_resolution(a3, q, DegreeWindow{0, 8});
    for (int k : {1, 3, 4, 5}) {
        for (const LesDegreeReport& rep : postnikov_les_check(r.module, k, DegreeWindow{-1, 10}))
            CHECK(rep.exact);
    }

    /* Hopf sub/quot side dimension identities */
    PostnikovSplit s = split_postnikov(m, 0);
    CohomologyResult hm = module_cohomology(m, DegreeWindow{-1, 7});
    CohomologyResult hs = module_cohomology(s.sub, DegreeWindow{-1, 7});
    CohomologyResult hq = module_cohomology(s.quot, DegreeWindow{-1, 7});
    CHECK(hs.dim(0) == hm.dim(0));
    for (int j = 2; j <= 6; ++j) CHECK(hq.dim(j) == hm.dim(j));
}

TEST_CASE("tensor of free modules is free on the tensor generator") {
    SemifreeCdga a = sphere2();
    SemifreeModule t = tensor_over_A(free_on(a, "e", 0), free_on(a, "f", 0));
    REQUIRE(t.num_generators() == 1);
    CHECK(t.generator(0).name == "e@f");
    CHECK(t.generator(0).degree == 0);
    CHECK(t.differential(0).is_zero());
}

TEST_CASE("tensor square of the Hopf module matches the worked differential") {
    SemifreeModule m = hopf();
    SemifreeModule t = tensor_over_A(m, m);
    REQUIRE(t.num_generators() == 4);
    /* lex order: e_0@e_0, e_0@e_1, e_1@e_0, e_1@e_1 */
    CHECK(t.generator(0).degree == 0);
    CHECK(t.generator(1).degree == 1);
    CHECK(t.generator(2).degree == 1);
    CHECK(t.generator(3).degree == 2);
    CHECK(validate_module(t).minimal);

    ModElement expected;
    expected.add(1, AlgElement::generator(0));              /* +w_2·(e_0@e_1) */
    expected.add(2, AlgElement::generator(0, Rational(-1))); /* -w_2·(e_1@e_0) */
    CHECK(t.differential(3) == expected);

    CohomologyResult h = module_cohomology(t, DegreeWindow{-1, 7});
    CHECK(h_dims(h, 0, 6) ==
          std::map<int, int>{{0, 1}, {1, 1}, {2, 0}, {3, 1}, {4, 1}, {5, 0}, {6, 0}});
}

TEST_CASE("tensor cohomology is symmetric in its factors") {
    SemifreeCdga a = sphere2();
    SemifreeModule m = hopf();
    SemifreeModule f = free_on(a, "g", 2);
    CohomologyResult mf = module_cohomology(tensor_over_A(m, f), DegreeWindow{-1, 7});
    CohomologyResult fm = module_cohomology(tensor_over_A(f, m), DegreeWindow{-1, 7});
    for (int k = 0; k <= 6; ++k) CHECK(mf.dim(k) == fm.dim(k));
}

TEST_CASE("tensoring with a shifted unit agrees with shift_module") {
    SemifreeCdga a = sphere2();
    SemifreeModule m = hopf();
    for (int n : {1, 2}) {
        SemifreeModule unit_shift = shift_module(free_on(a, "one", 0), n);
        SemifreeModule t = tensor_over_A(m, unit_shift);
        SemifreeModule s = shift_module(m, n);
        CohomologyResult ht = module_cohomology(t, DegreeWindow{-4, 7});
        CohomologyResult hs = module_cohomology(s, DegreeWindow{-4, 7});
        for (int k = -3; k <= 6; ++k) CHECK(ht.dim(k) == hs.dim(k));
    }
}

TEST_CASE("ext from a free module recovers target cohomology") {
    SemifreeCdga a = sphere2();
    SemifreeModule n = free_on(a, "u", 0);
    ModuleTable m = from_semifree(hopf(), DegreeWindow{-2, 6});
    ExtResult e = ext_via_hom(n, m, DegreeWindow{-1, 5});
    CHECK(e.dims.at(0) == 1);
    CHECK(e.dims.at(1) == 0);
    CHECK(e.dims.at(2) == 0);
    CHECK(e.dims.at(3) == 1);
    CHECK(e.dims.at(4) == 0);
}

TEST_CASE("ext of the sphere resolution against Q lands in even negative degrees") {
    SemifreeCdga a = sphere3();
    ModuleTable q10 = augmentation_table(a, DegreeWindow{-1, 12});
    ResolutionResult r = minimal_resolution(a, q10, DegreeWindow{0, 8});
    REQUIRE(r.complete);

    DegreeWindow w{-9, 1};
    ModuleTable q = augmentation_table(a, DegreeWindow{-9, 10});
    CochainComplexWindow hom = hom_complex_window(r.module, q, w);
    for (int k = w.lo; k < w.hi; ++k) CHECK(hom.d(k).is_zero());

    ExtResult e = ext_via_hom(r.module, q, w);
    for (int k = -8; k <= 0; ++k) CHECK(e.dims.at(k) == ((k % 2 == 0) ? 1 : 0));
}

TEST_CASE("ext of the Hopf module against Q is one-dimensional in degrees 0 and -1") {
    SemifreeModule n = hopf();
    ModuleTable q = augmentation_table(sphere2(), DegreeWindow{-4, 4});
    ExtResult e = ext_via_hom(n, q, DegreeWindow{-3, 2});
    CHECK(e.dims.at(0) == 1);
    CHECK(e.dims.at(-1) == 1);
    CHECK(e.dims.at(-2) == 0);
    CHECK(e.dims.at(1) == 0);
    CHECK(e.complete);
}

TEST_CASE("hom complex differential squares to zero and sees the identity class") {
    SemifreeModule n = hopf();
    ModuleTable m = from_semifree(hopf(), DegreeWindow{-3, 6});
    DegreeWindow w{-2, 4};
    CochainComplexWindow hom = hom_complex_window(n, m, w);
    CHECK(hom.differential_squares_to_zero());
    ExtResult e = ext_via_hom(n, m, w);
    CHECK(e.dims.at(0) >= 1);
}

TEST_CASE("ext dims ignore contractible inflation of the source") {
    std::mt19937 rng(424242);
    SemifreeModule n = hopf();
    ModuleTable q = augmentation_table(sphere2(), DegreeWindow{-5, 7});
    ExtResult base = ext_via_hom(n, q, DegreeWindow{-3, 2});
    for (int trial = 0; trial < 5; ++trial) {
        SemifreeModule big = inflate(n, rng, 2);
        ExtResult e = ext_via_hom(big, q, DegreeWindow{-3, 2});
        /* interior degrees only: the window edges depend on the presentation
           and are flagged incomplete */
        for (int k = -2; k <= 1; ++k) CHECK(e.dims.at(k) == base.dims.at(k));
        CHECK(e.incomplete.at(-3));
        CHECK(e.incomplete.at(2));
    }
}

TEST_CASE("cdga morphisms apply multiplicatively and detect chain failures") {
    SemifreeCdga a = sphere2();
    CdgaMorphism id = identity_cdga_morphism(a);
    CHECK(is_cdga_chain_map(id));
    AlgElement probe = mono_elem({{0, 2}, {1, 1}}, Rational(3));
    CHECK(apply_cdga_morphism(id, probe) == probe);

    CdgaMorphism aug = augmentation_morphism(a);
    CHECK(is_cdga_chain_map(aug));
    CHECK(apply_cdga_morphism(aug, probe).is_zero());
    CHECK(apply_cdga_morphism(aug, AlgElement::unit(Rational(5))) == AlgElement::unit(Rational(5)));

    CdgaMorphism broken{a, sphere3(), {AlgElement{}, AlgElement{}}};
    broken.images[0] = AlgElement::generator(0);  /* w_2 ↦ w_3: wrong degree */
    CHECK_FALSE(is_cdga_chain_map(broken));
}

TEST_CASE("extend along the augmentation kills the differential") {
    SemifreeModule m = hopf();
    CdgaMorphism aug = augmentation_morphism(m.base());
    SemifreeModule v = extend_module(m, aug);
    REQUIRE(v.num_generators() == 2);
    CHECK(v.differential(0).is_zero());
    CHECK(v.differential(1).is_zero());
    CohomologyResult h = module_cohomology(v, DegreeWindow{-1, 3});
    CHECK(h.dim(0) == 1);
    CHECK(h.dim(1) == 1);
    CHECK(h.dim(2) == 0);
}

TEST_CASE("extend along the identity is the identity") {
    SemifreeModule m = hopf();
    CHECK(extend_module(m, identity_cdga_morphism(m.base())) == m);
}

TEST_CASE("extend along a base quasi-isomorphism preserves cohomology dims") {
    SemifreeCdga a = sphere2();
    SemifreeCdga big = sphere2();
    big.add_generator("p_5", 5);
    big.add_generator("q_4", 4, AlgElement::generator(2));  /* dq = p: acyclic pair */
    CdgaMorphism incl{a, big, {AlgElement::generator(0), AlgElement::generator(1)}};
    REQUIRE(is_cdga_chain_map(incl));

    SemifreeModule m = hopf();
    SemifreeModule ext = extend_module(m, incl);
    CohomologyResult hm = module_cohomology(m, DegreeWindow{-1, 6});
    CohomologyResult he = module_cohomology(ext, DegreeWindow{-1, 6});
    for (int k = 0; k <= 5; ++k) CHECK(hm.dim(k) == he.dim(k));
}

TEST_CASE("restriction along the Hopf map resolves back to the Hopf module") {
    SemifreeCdga s2 = sphere2();
    SemifreeCdga s3 = sphere3();
    CdgaMorphism f{s2, s3, {AlgElement{}, AlgElement::generator(0)}};  /* w_2↦0, w_3↦w_3 */
    REQUIRE(is_cdga_chain_map(f));

    SemifreeModule b = free_on(s3, "one", 0);
    ModuleTable t = restrict_module(b, f, DegreeWindow{-1, 7});
    CohomologyResult ht = module_cohomology(t, DegreeWindow{-1, 7});
    CHECK(ht.dim(0) == 1);
    CHECK(ht.dim(3) == 1);
    CHECK(ht.dim(2) == 0);

    ResolutionResult r = minimal_resolution(s2, t, DegreeWindow{0, 5});
    CHECK(r.complete);
    REQUIRE(r.module.num_generators() == 2);
    CHECK(r.module.generator(0).degree == 0);
    CHECK(r.module.generator(1).degree == 1);
    const ModElement& d = r.module.differential(1);
    REQUIRE(d.coeffs().count(0) == 1);
    REQUIRE(d.coeffs().at(0).terms().size() == 1);
    CHECK(d.coeffs().at(0).terms().begin()->first == Monomial{{{0, 1}}});  /* w_2 */
}

TEST_CASE("free_A_algebra adjoins a closed generator") {
    SemifreeCdga a = sphere2();
    SemifreeCdga out = free_A_algebra(free_on(a, "g_3", 3));
    REQUIRE(out.num_generators() == 3);
    CHECK(out.generator(2).name == "g_3");
    CHECK(out.generator(2).degree == 3);
    CHECK(out.generator(2).diff.is_zero());
    CHECK(validate_cdga(out).valid);
    /* slice dimension check: degree 5 holds w_2·g_3 and w_2·w_3... degree 5:
       w_2*w_3 and g_3*w_2 — two monomials */
    CHECK(out.monomial_basis(5).size() == 2);
}

TEST_CASE("free_A_algebra on the unit-generator module builds the S3 total model") {
    SemifreeCdga a = sphere2();
    SemifreeModule m(a);
    m.add_generator("1", 0);
    m.add_generator("x_1", 1, ModElement::generator(0, AlgElement::generator(0)));
    SemifreeCdga total = free_A_algebra(m);
    REQUIRE(total.num_generators() == 3);
    CHECK(total.generator(2).name == "x_1");
    CHECK(total.generator(2).diff == AlgElement::generator(0));  /* dx_1 = w_2 */
    REQUIRE(validate_cdga(total).valid);
    GradedAlgebraTable h = cohomology_algebra(total, DegreeWindow{0, 7});
    CHECK(h.dim(0) == 1);
    CHECK(h.dim(1) == 0);
    CHECK(h.dim(2) == 0);
    CHECK(h.dim(3) == 1);
    CHECK(h.dim(4) == 0);
    CHECK(h.dim(5) == 0);
    CHECK(h.dim(6) == 0);
}

TEST_CASE("free_A_algebra rejects degree-zero non-unit generators and keeps empty input") {
    SemifreeCdga a = sphere2();
    CHECK(free_A_algebra(SemifreeModule(a)) == a);
    SemifreeModule bad(a);
    bad.add_generator("z", 0);
    CHECK_THROWS_AS(free_A_algebra(bad), std::invalid_argument);
}

TEST_CASE("aug_ideal of the Hopf total space is the Hopf module pattern") {
    SemifreeCdga a = sphere2();
    SemifreeCdga b = sphere2();
    b.add_generator("x_1", 1, AlgElement::generator(0));  /* dx_1 = w_2 */
    SemifreeModule m = aug_ideal(a, b, DegreeWindow{0, 4});
    REQUIRE(m.num_generators() == 2);
    CHECK(m.generator(0).name == "1");
    CHECK(m.generator(0).degree == 0);
    CHECK(m.generator(1).degree == 1);
    CHECK(m.differential(1) == ModElement::generator(0, AlgElement::generator(0)));
    CHECK(validate_module(m).minimal);
    CohomologyResult h = module_cohomology(m, DegreeWindow{-1, 6});
    CHECK(h_dims(h, 0, 5) == std::map<int, int>{{0, 1}, {1, 0}, {2, 0}, {3, 1}, {4, 0}, {5, 0}});
}

TEST_CASE("aug_ideal with no relative generators is the zero module") {
    SemifreeCdga a = sphere2();
    SemifreeCdga b = sphere2();
    CHECK(aug_ideal(a, b, DegreeWindow{0, 5}).num_generators() == 0);
}

TEST_CASE("aug_ideal of an adjoined even generator lists its powers") {
    SemifreeCdga a = sphere2();
    SemifreeCdga b = sphere2();
    b.add_generator("g_2", 2);
    SemifreeModule m = aug_ideal(a, b, DegreeWindow{0, 6});
    REQUIRE(m.num_generators() == 3);
    CHECK(m.generator(0).degree == 2);
    CHECK(m.generator(1).degree == 4);
    CHECK(m.generator(2).degree == 6);
    for (int i = 0; i < 3; ++i) CHECK(m.differential(i).is_zero());
    CHECK(m.generator_index("1") == std::nullopt);
}

TEST_CASE("aug_ideal reorders generators when a differential points upward in degree") {
    SemifreeCdga a = sphere3();
    SemifreeCdga b = sphere3();
    b.add_generator("u", 1);
    b.add_generator("s", 1);
    AlgElement us;
    us.add_term(Monomial{{{1, 1}, {2, 1}}}, Rational(1));
    b.add_generator("t", 1, us);  /* dt = u·s */
    REQUIRE(validate_cdga(b).valid);

    SemifreeModule m = aug_ideal(a, b, DegreeWindow{0, 3});
    ModuleValidation v = validate_module(m);
    CHECK(v.valid);
    CHECK_FALSE(v.minimal);  /* dt = 1·(u·s) has a constant coefficient */
    REQUIRE(m.num_generators() == 7);
    auto t_idx = m.generator_index("t");
    auto us_idx = m.generator_index("u*s");
    REQUIRE(t_idx.has_value());
    REQUIRE(us_idx.has_value());
    CHECK(*us_idx < *t_idx);

    CHECK_THROWS_AS(aug_ideal(a, b, DegreeWindow{0, 1}), std::invalid_argument);
}
