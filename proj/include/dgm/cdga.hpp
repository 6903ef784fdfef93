#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dgm/complex.hpp"
#include "dgm/grading.hpp"
#include "dgm/linalg.hpp"

namespace dgm {

/* Normal form for a product of generators: factors sorted by generator
   index, exponents >= 1, odd generators never squared.  Empty = unit. */
struct Monomial {
    std::vector<std::pair<int, int>> factors;  /* (generator index, exponent) */

    bool is_unit() const { return factors.empty(); }
    int total_exponent() const {
        int t = 0;
        for (const auto& [g, e] : factors) t += e;
        return t;
    }
    bool operator==(const Monomial& o) const { return factors == o.factors; }
    bool operator<(const Monomial& o) const { return factors < o.factors; }
};

/* Finite Q-linear combination of monomials; zero coefficients never stored. */
class AlgElement {
public:
    AlgElement() = default;

    static AlgElement unit(const Rational& c) {
        AlgElement e;
        e.add_term(Monomial{}, c);
        return e;
    }
    static AlgElement generator(int index, const Rational& c = Rational(1)) {
        AlgElement e;
        e.add_term(Monomial{{{index, 1}}}, c);
        return e;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (dgm::is_zero(c)) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (dgm::is_zero(it->second)) terms_.erase(it);
        }
    }

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    AlgElement operator+(const AlgElement& o) const {
        AlgElement r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    AlgElement operator-(const AlgElement& o) const {
        AlgElement r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    AlgElement scaled(const Rational& c) const {
        AlgElement r;
        for (const auto& [m, v] : terms_) r.add_term(m, v * c);
        return r;
    }
    bool operator==(const AlgElement& o) const { return terms_ == o.terms_; }

private:
    std::map<Monomial, Rational> terms_;
};

struct AlgGenerator {
    std::string name;
    int degree = 0;
    AlgElement diff;
};

/* Free graded-commutative algebra on an ordered generator list, with a
   derivational differential given on generators.  The empty list is Q. */
class SemifreeCdga {
public:
    SemifreeCdga() = default;

    /* The differential may only reference generators already present. */
    int add_generator(const std::string& name, int degree, AlgElement diff = {});
    /* Post-hoc differential assignment (validation reports any violation). */
    void set_differential(int index, AlgElement diff);

    int num_generators() const { return static_cast<int>(gens_.size()); }
    const AlgGenerator& generator(int i) const { return gens_.at(i); }
    const std::vector<AlgGenerator>& generators() const { return gens_; }
    std::optional<int> generator_index(const std::string& name) const;

    int degree_of(const Monomial& m) const;
    /* degree of a homogeneous element; nullopt for zero; throws otherwise */
    std::optional<int> degree_of(const AlgElement& e) const;

    /* (sign, sorted monomial); nullopt when an odd generator squares to zero */
    std::optional<std::pair<int, Monomial>> multiply_monomials(const Monomial& a,
                                                               const Monomial& b) const;
    /* Koszul-signed canonical product */
    AlgElement normalize_product(const AlgElement& a, const AlgElement& b) const;
    /* Leibniz extension of the generator differentials */
    AlgElement extend_derivation(const AlgElement& e) const;

    /* all monomials of the given total degree, lex order on exponent vectors;
       requires every generator degree >= 1 */
    std::vector<Monomial> monomial_basis(int degree) const;
    Vec coords(const AlgElement& e, const std::vector<Monomial>& basis) const;

    std::string format(const Monomial& m) const;
    std::string format(const AlgElement& e) const;

    bool operator==(const SemifreeCdga& o) const;

private:
    std::vector<AlgGenerator> gens_;
};

struct CdgaValidation {
    bool valid = false;
    std::vector<std::string> errors;
    bool decomposable = false;     /* every differential lies in products of >= 2 generators */
    bool degree_monotone = false;  /* generator degrees nondecreasing in list order */
    bool minimal = false;          /* both of the above */
};

CdgaValidation validate_cdga(const SemifreeCdga& a);

enum class ModelKind { odd_sphere, even_sphere, eilenberg_maclane, circle };

/* odd_sphere n: one closed generator w_n (n odd).
   even_sphere n: w_n, w_{2n-1} with d(w_{2n-1}) = w_n^2 (n even).
   eilenberg_maclane n: one closed generator w_n.
   circle: one closed generator x in degree 1. */
SemifreeCdga standard_model(ModelKind kind, int n = 1);

/* Cohomology of a cdga presented with chosen representative cocycles and
   multiplication structure constants; zero differential implicit. */
struct GradedAlgebraTable {
    DegreeWindow window{0, 0};
    BasisLabeledSpace basis;                       /* class labels per degree */
    std::map<int, std::vector<AlgElement>> reps;   /* representative cocycles */
    /* (deg1, idx1, deg2, idx2) -> coordinates in the basis at deg1+deg2;
       absent when the target degree is not covered */
    std::map<std::tuple<int, int, int, int>, Vec> product;

    int dim(int degree) const { return basis.dim(degree); }
    /* zero vector fallback for covered target degrees */
    Vec multiply(int d1, int i1, int d2, int i2) const;
    bool covers(int degree) const;
};

/* Basis and products of H(A) on [0, w.hi); degree 0 is always the unit line,
   other edge degrees are omitted (their groups are boundary-incomplete). */
GradedAlgebraTable cohomology_algebra(const SemifreeCdga& a, const DegreeWindow& w);

/* The underlying cochain complex of A restricted to the window. */
CochainComplexWindow algebra_complex_window(const SemifreeCdga& a, const DegreeWindow& w);

}  // namespace dgm
