#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dgm/cdga.hpp"
#include "dgm/complex.hpp"
#include "dgm/grading.hpp"
#include "dgm/linalg.hpp"

namespace dgm {

struct ModGenerator {
    std::string name;
    int degree = 0;
};

/* Finite sum  Σ a_i · v_i  with algebra-element coefficients keyed by
   generator index.  Zero coefficients never stored. */
class ModElement {
public:
    ModElement() = default;

    static ModElement generator(int index, const AlgElement& coeff = AlgElement::unit(Rational(1))) {
        ModElement e;
        e.add(index, coeff);
        return e;
    }

    void add(int gen, const AlgElement& a) {
        if (a.is_zero()) return;
        auto [it, fresh] = coeffs_.emplace(gen, a);
        if (!fresh) {
            it->second = it->second + a;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    const std::map<int, AlgElement>& coeffs() const { return coeffs_; }
    AlgElement coeff(int gen) const {
        auto it = coeffs_.find(gen);
        return it == coeffs_.end() ? AlgElement{} : it->second;
    }
    bool is_zero() const { return coeffs_.empty(); }

    ModElement operator+(const ModElement& o) const {
        ModElement r = *this;
        for (const auto& [g, a] : o.coeffs_) r.add(g, a);
        return r;
    }
    ModElement operator-(const ModElement& o) const {
        ModElement r = *this;
        for (const auto& [g, a] : o.coeffs_) r.add(g, a.scaled(Rational(-1)));
        return r;
    }
    ModElement scaled(const Rational& c) const {
        ModElement r;
        for (const auto& [g, a] : coeffs_) r.add(g, a.scaled(c));
        return r;
    }
    bool operator==(const ModElement& o) const { return coeffs_ == o.coeffs_; }

private:
    std::map<int, AlgElement> coeffs_;
};

/* Free module over a semifree cdga on an ordered generator list, with a
   differential given on generators by strictly earlier ones. */
class SemifreeModule {
public:
    explicit SemifreeModule(SemifreeCdga base) : base_(std::move(base)) {}

    int add_generator(const std::string& name, int degree, ModElement diff = {});
    void set_differential(int index, ModElement diff);

    const SemifreeCdga& base() const { return base_; }
    int num_generators() const { return static_cast<int>(gens_.size()); }
    const ModGenerator& generator(int i) const { return gens_.at(i); }
    const ModElement& differential(int i) const { return diffs_.at(i); }
    std::optional<int> generator_index(const std::string& name) const;

    /* left action  a · (Σ b_i v_i) = Σ (a b_i) v_i  */
    ModElement act(const AlgElement& a, const ModElement& m) const;
    /* module Leibniz rule  d(a·v) = (da)·v + (-1)^{|a|} a·(dv)  */
    ModElement differentiate(const ModElement& e) const;
    /* degree of a homogeneous element; nullopt for zero; throws otherwise */
    std::optional<int> degree_of(const ModElement& e) const;

    std::string format(const ModElement& e) const;
    bool operator==(const SemifreeModule& o) const;

private:
    SemifreeCdga base_;
    std::vector<ModGenerator> gens_;
    std::vector<ModElement> diffs_;
};

struct ModuleValidation {
    bool valid = false;
    std::vector<std::string> errors;
    bool coefficients_reduced = false;  /* all differential coefficients constant-free */
    bool degree_monotone = false;
    bool minimal = false;               /* both of the above, on a valid module */
};

ModuleValidation validate_module(const SemifreeModule& m);

/* The windowed basis of A ⊗ V: per degree, pairs (generator, algebra
   monomial), ordered by generator index then monomial order. */
using ModulePairBasis = std::vector<std::pair<int, Monomial>>;

std::map<int, ModulePairBasis> module_basis(const SemifreeModule& m, const DegreeWindow& w);
Vec module_coords(const SemifreeModule& m, const ModElement& e, const ModulePairBasis& basis);
ModElement module_element(const SemifreeModule& m, const ModulePairBasis& basis, const Vec& v);
CochainComplexWindow module_complex_window(const SemifreeModule& m, const DegreeWindow& w);

/* A module presented numerically: a windowed complex plus the action of each
   algebra generator on each basis vector.  Absent action entries mean the
   target degree escapes the window, not that the action vanishes. */
struct ModuleTable {
    SemifreeCdga base;
    CochainComplexWindow complex;
    std::map<std::tuple<int, int, int>, Vec> gen_action;  /* (alg gen, degree, basis idx) */

    const DegreeWindow& window() const { return complex.window(); }
    std::optional<Vec> act_generator(int alg_gen, int degree, const Vec& v) const;
    std::optional<Vec> act(const AlgElement& a, int degree, const Vec& v) const;
};

ModuleTable from_semifree(const SemifreeModule& m, const DegreeWindow& w);
/* Q as a module over A through the augmentation killing all generators. */
ModuleTable augmentation_table(const SemifreeCdga& a, const DegreeWindow& w);

CohomologyResult module_cohomology(const SemifreeModule& m, const DegreeWindow& w);
CohomologyResult module_cohomology(const ModuleTable& t, const DegreeWindow& w);

/* generators shifted down by n; differential and action signs folded in:
   the stored coefficient picks up (-1)^{n(1+|a|)} per homogeneous piece */
SemifreeModule shift_module(const SemifreeModule& m, int n);

struct ModuleMorphism {
    std::vector<ModElement> images;  /* per source generator, element of the target */
};

ModElement apply_morphism(const SemifreeModule& target, const ModuleMorphism& f,
                          const ModElement& e);
bool is_chain_map(const SemifreeModule& source, const SemifreeModule& target,
                  const ModuleMorphism& f);
/* outer ∘ inner, where outer lands in outer_target */
ModuleMorphism compose_morphisms(const SemifreeModule& outer_target, const ModuleMorphism& outer,
                                 const ModuleMorphism& inner);

struct MinimizeResult {
    SemifreeModule module;      /* minimal */
    ModuleMorphism projection;  /* original -> minimal, quasi-isomorphism */
    ModuleMorphism section;     /* minimal -> original, projection ∘ section = id */
};

/* Cancels generator pairs linked by a unit-bearing differential coefficient
   until none remain, then re-sorts generators by degree. */
MinimizeResult minimize(const SemifreeModule& m);

struct ResolutionCaps {
    int max_generators_per_degree = 64;
    int max_rounds = 256;
};

/* Chain map into a table, one target vector per source generator. */
struct TableMorphism {
    std::vector<Vec> images;     /* coords in the table complex at the generator degree */
};

std::optional<Vec> apply_table_morphism(const SemifreeModule& source, const ModuleTable& target,
                                        const TableMorphism& f, const ModElement& e);

struct ResolutionResult {
    SemifreeModule module;  /* minimal */
    TableMorphism map;      /* quasi-isomorphism onto the table when complete */
    bool complete = false;
    int failed_degree = 0;  /* meaningful when !complete */
};

/* Builds a minimal semifree approximation of the table degree by degree:
   closed generators to hit missing cohomology, then one-degree-lower
   generators to kill excess classes.  Caps stop the non-terminating cases. */
ResolutionResult minimal_resolution(const SemifreeCdga& a, const ModuleTable& t,
                                    const DegreeWindow& w, ResolutionCaps caps = {});

struct PostnikovSplit {
    SemifreeModule sub;      /* generators of degree <= k */
    SemifreeModule quot;     /* generators of degree >= k+1, induced differential */
    SemifreeModule slice;    /* generators of degree exactly k, induced differential */
    ModuleMorphism include;  /* sub -> original */
    ModuleMorphism project;  /* original -> quot */
    int at = 0;
};

PostnikovSplit split_postnikov(const SemifreeModule& m, int k);

/* Rank bookkeeping for one degree of the long exact sequence of
   sub -> M -> quot; exact = every consecutive kernel equals the image. */
struct LesDegreeReport {
    int degree = 0;
    int dim_sub = 0, dim_total = 0, dim_quot = 0;
    bool exact = false;
};

std::vector<LesDegreeReport> postnikov_les_check(const SemifreeModule& m, int k,
                                                 const DegreeWindow& w);

SemifreeModule tensor_over_A(const SemifreeModule& m, const SemifreeModule& n);

struct ExtResult {
    DegreeWindow window{0, 0};
    std::map<int, int> dims;
    std::map<int, bool> incomplete;              /* edge degrees; bar caps fold in here */
    std::map<int, std::vector<std::string>> basis_labels;
    bool complete = true;                        /* all requested interior degrees exact */
    std::string certificate;                     /* bar route truncation note; empty for hom */
};

/* Hom-complex basis in hom-degree k: pairs (source generator v, target basis
   vector at degree k + |v|); differential (dλ)(v) = d(λv) - (-1)^k λ(dv). */
CochainComplexWindow hom_complex_window(const SemifreeModule& n, const ModuleTable& m,
                                        const DegreeWindow& w);

ExtResult ext_via_hom(const SemifreeModule& n, const ModuleTable& m, const DegreeWindow& w);
ExtResult ext_via_hom(const SemifreeModule& n, const SemifreeModule& m, const DegreeWindow& w);

struct CdgaMorphism {
    SemifreeCdga source;
    SemifreeCdga target;
    std::vector<AlgElement> images;  /* per source generator */
};

AlgElement apply_cdga_morphism(const CdgaMorphism& f, const AlgElement& e);
bool is_cdga_chain_map(const CdgaMorphism& f);
CdgaMorphism identity_cdga_morphism(const SemifreeCdga& a);
/* A -> Q, every generator to zero */
CdgaMorphism augmentation_morphism(const SemifreeCdga& a);

/* coefficients pushed through f; semifreeness and minimality preserved */
SemifreeModule extend_module(const SemifreeModule& m, const CdgaMorphism& f);
/* target-algebra module viewed over the source algebra; not semifree in
   general, hence a table */
ModuleTable restrict_module(const SemifreeModule& m, const CdgaMorphism& f,
                            const DegreeWindow& w);

/* adjoins the module generators as algebra generators (degrees >= 1) */
SemifreeCdga free_A_algebra(const SemifreeModule& m);

/* Module of monomials in the generators of B beyond the prefix A, of degree
   <= w.hi.  When some differential has a pure-A component the degree-0 unit
   generator is included so the differential stays internal (the underlying
   module of B); otherwise this is the kernel of B -> A. */
SemifreeModule aug_ideal(const SemifreeCdga& a, const SemifreeCdga& b, const DegreeWindow& w);

}  // namespace dgm
