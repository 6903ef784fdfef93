#pragma once

// Polynomial differential forms on standard simplices, with exact rational
// coefficients.  Forms on the n-simplex are written in the barycentric
// coordinates t_1..t_n; the redundant coordinate is eliminated through
// t_0 = 1 - t_1 - ... - t_n and dt_0 = -(dt_1 + ... + dt_n), so every form
// has a unique normal form and equality is a term-by-term comparison.
//
// Provided operations: wedge product, exterior derivative, pullback along
// the face and degeneracy maps of the simplex category, exact integration
// of top-degree forms, and the pairing that evaluates a k-form on the
// k-faces of the simplex (the map that intertwines the exterior derivative
// with the simplicial coboundary).

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dgm/linalg.hpp"

namespace dgm {

class PolyForm {
public:
    // key: (exponents of t_1..t_n, wedge set as a bitmask with bit i-1 for dt_i)
    using TermKey = std::pair<std::vector<int>, std::uint32_t>;

    PolyForm();                                    // zero form on the point
    explicit PolyForm(int simplex_dim);            // zero form

    static PolyForm constant(int simplex_dim, const Rational& c);
    // coordinate(n, i) is t_i for 1 <= i <= n; t_0 yields 1 - t_1 - ... - t_n
    static PolyForm coordinate(int simplex_dim, int i);
    // differential_coordinate(n, i) is dt_i; dt_0 yields -(dt_1 + ... + dt_n)
    static PolyForm differential_coordinate(int simplex_dim, int i);

    int simplex_dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    // wedge degree shared by all terms; nullopt when mixed, 0 for the zero form
    std::optional<int> form_degree() const;
    const std::map<TermKey, Rational>& terms() const { return terms_; }
    void add_term(const std::vector<int>& exponents, std::uint32_t wedge_mask,
                  const Rational& c);

    PolyForm operator+(const PolyForm& other) const;
    PolyForm operator-(const PolyForm& other) const;
    PolyForm scaled(const Rational& c) const;
    bool operator==(const PolyForm& other) const {
        return n_ == other.n_ && terms_ == other.terms_;
    }

private:
    int n_ = 0;
    std::map<TermKey, Rational> terms_;
};

struct SimplicialOperator {
    enum class Kind { face, degeneracy };
    Kind kind = Kind::face;
    int source_dim = 0;  // dimension of the simplex the input form lives on
    int index = 0;       // 0 <= index <= source_dim
    int target_dim() const {
        return kind == Kind::face ? source_dim - 1 : source_dim + 1;
    }
};

SimplicialOperator face_op(int source_dim, int index);
SimplicialOperator degeneracy_op(int source_dim, int index);

// one rational value per strictly increasing vertex tuple of size degree+1
struct Cochain {
    int simplex_dim = 0;
    int degree = 0;
    std::map<std::vector<int>, Rational> values;
    bool operator==(const Cochain& other) const = default;
};

// graded product; zero whenever the wedge sets overlap
PolyForm form_wedge(const PolyForm& a, const PolyForm& b);

// exterior derivative
PolyForm form_d(const PolyForm& a);

// pullback along a face inclusion or degeneracy collapse; substitutes the
// coordinate images and re-eliminates t_0 on the target simplex
PolyForm apply_simplicial_map(const SimplicialOperator& op, const PolyForm& a);

// exact integral of a top-degree form over the simplex, oriented so that
// dt_1 ^ ... ^ dt_n has positive volume
Rational integrate(const PolyForm& a);

// evaluate a homogeneous k-form on every k-face: restrict along iterated
// face maps, then integrate over the face
Cochain stokes_pair(const PolyForm& a, int k);

// simplicial coboundary with alternating signs; missing values count as zero
Cochain coboundary(const Cochain& c);

}  // namespace dgm
