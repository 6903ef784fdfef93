#include "dgm/cdga.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dgm {

namespace {

bool odd_deg(int d) { return d % 2 != 0; }

AlgElement element_of(const Monomial& m, const Rational& c = Rational(1)) {
    AlgElement e;
    e.add_term(m, c);
    return e;
}

}  // namespace

int SemifreeCdga::add_generator(const std::string& name, int degree, AlgElement diff) {
    if (generator_index(name))
        throw std::invalid_argument("duplicate generator name '" + name + "'");
    for (const auto& [m, c] : diff.terms())
        for (const auto& [g, e] : m.factors)
            if (g < 0 || g >= num_generators())
                throw std::invalid_argument("differential of '" + name +
                                            "' references a generator not yet added");
    gens_.push_back({name, degree, std::move(diff)});
    return num_generators() - 1;
}

void SemifreeCdga::set_differential(int index, AlgElement diff) {
    for (const auto& [m, c] : diff.terms())
        for (const auto& [g, e] : m.factors)
            if (g < 0 || g >= num_generators())
                throw std::invalid_argument("differential references an unknown generator");
    gens_.at(index).diff = std::move(diff);
}

std::optional<int> SemifreeCdga::generator_index(const std::string& name) const {
    for (int i = 0; i < num_generators(); ++i)
        if (gens_[i].name == name) return i;
    return std::nullopt;
}

int SemifreeCdga::degree_of(const Monomial& m) const {
    int d = 0;
    for (const auto& [g, e] : m.factors) d += gens_.at(g).degree * e;
    return d;
}

std::optional<int> SemifreeCdga::degree_of(const AlgElement& e) const {
    std::optional<int> deg;
    for (const auto& [m, c] : e.terms()) {
        int d = degree_of(m);
        if (deg && *deg != d) throw std::invalid_argument("inhomogeneous element");
        deg = d;
    }
    return deg;
}

std::optional<std::pair<int, Monomial>> SemifreeCdga::multiply_monomials(
    const Monomial& a, const Monomial& b) const {
    /* parity of the total degree of a's factors from position i on */
    const size_t na = a.factors.size();
    std::vector<int> suffix_parity(na + 1, 0);
    for (size_t i = na; i-- > 0;) {
        const auto& [g, e] = a.factors[i];
        int p = odd_deg(gens_.at(g).degree) ? (e % 2) : 0;
        suffix_parity[i] = (suffix_parity[i + 1] + p) % 2;
    }

    int sign = 1;
    std::vector<std::pair<int, int>> out;
    auto emit = [&](std::pair<int, int> f) -> bool {
        if (!out.empty() && out.back().first == f.first) {
            out.back().second += f.second;
            if (odd_deg(gens_.at(f.first).degree)) return false;  /* odd square */
        } else {
            out.push_back(f);
        }
        return true;
    };

    size_t i = 0, j = 0;
    while (i < na || j < b.factors.size()) {
        if (j == b.factors.size() || (i < na && a.factors[i].first <= b.factors[j].first)) {
            if (!emit(a.factors[i++])) return std::nullopt;
        } else {
            /* b's factor crosses every remaining factor of a */
            const auto& [g, e] = b.factors[j];
            int p = odd_deg(gens_.at(g).degree) ? (e % 2) : 0;
            if (p != 0 && suffix_parity[i] != 0) sign = -sign;
            if (!emit(b.factors[j++])) return std::nullopt;
        }
    }
    return std::make_pair(sign, Monomial{std::move(out)});
}

AlgElement SemifreeCdga::normalize_product(const AlgElement& a, const AlgElement& b) const {
    AlgElement out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            if (auto nm = multiply_monomials(ma, mb))
                out.add_term(nm->second, ca * cb * nm->first);
    return out;
}

AlgElement SemifreeCdga::extend_derivation(const AlgElement& e) const {
    AlgElement out;
    for (const auto& [m, c] : e.terms()) {
        int prefix_parity = 0;
        for (size_t t = 0; t < m.factors.size(); ++t) {
            const auto& [g, ex] = m.factors[t];
            const AlgElement& dg = gens_.at(g).diff;
            if (!dg.is_zero()) {
                /* prefix * (ex * g^(ex-1) * dg) * suffix, Leibniz sign on the prefix */
                Monomial prefix{{m.factors.begin(), m.factors.begin() + t}};
                Monomial power;
                if (ex > 1) power.factors.push_back({g, ex - 1});
                Monomial suffix{{m.factors.begin() + t + 1, m.factors.end()}};
                Rational coeff = c * ex;
                if (prefix_parity != 0) coeff = -coeff;
                AlgElement term = element_of(prefix, coeff);
                term = normalize_product(term, element_of(power));
                term = normalize_product(term, dg);
                term = normalize_product(term, element_of(suffix));
                out = out + term;
            }
            int p = odd_deg(gens_.at(g).degree) ? (ex % 2) : 0;
            prefix_parity = (prefix_parity + p) % 2;
        }
    }
    return out;
}

namespace {

void enumerate_slice(const SemifreeCdga& a, int gi, int remaining,
                     std::vector<std::pair<int, int>>& cur, std::vector<Monomial>& out) {
    if (gi == a.num_generators()) {
        if (remaining == 0) out.push_back(Monomial{cur});
        return;
    }
    int d = a.generator(gi).degree;
    int max_e = odd_deg(d) ? 1 : remaining / d;
    for (int e = 0; e <= max_e && e * d <= remaining; ++e) {
        if (e > 0) cur.push_back({gi, e});
        enumerate_slice(a, gi + 1, remaining - e * d, cur, out);
        if (e > 0) cur.pop_back();
    }
}

}  // namespace

std::vector<Monomial> SemifreeCdga::monomial_basis(int degree) const {
    for (const auto& g : gens_)
        if (g.degree < 1)
            throw std::invalid_argument("degree slices are finite only for generator degrees >= 1");
    std::vector<Monomial> out;
    if (degree < 0) return out;
    std::vector<std::pair<int, int>> cur;
    enumerate_slice(*this, 0, degree, cur, out);
    return out;
}

Vec SemifreeCdga::coords(const AlgElement& e, const std::vector<Monomial>& basis) const {
    std::map<Monomial, int> index;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) index.emplace(basis[i], i);
    Vec v(basis.size(), Rational(0));
    for (const auto& [m, c] : e.terms()) {
        auto it = index.find(m);
        if (it == index.end())
            throw std::invalid_argument("element has a term outside the basis slice: " + format(m));
        v[it->second] = c;
    }
    return v;
}

std::string SemifreeCdga::format(const Monomial& m) const {
    if (m.is_unit()) return "1";
    std::string s;
    for (const auto& [g, e] : m.factors) {
        if (!s.empty()) s += "*";
        s += gens_.at(g).name;
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::string SemifreeCdga::format(const AlgElement& e) const {
    if (e.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : e.terms()) {
        Rational a = c;
        if (s.empty()) {
            if (sgn(a) < 0) { s += "-"; a = -a; }
        } else {
            s += sgn(a) < 0 ? " - " : " + ";
            if (sgn(a) < 0) a = -a;
        }
        if (m.is_unit()) s += rat_str(a);
        else if (a == 1) s += format(m);
        else s += rat_str(a) + "*" + format(m);
    }
    return s;
}

bool SemifreeCdga::operator==(const SemifreeCdga& o) const {
    if (num_generators() != o.num_generators()) return false;
    for (int i = 0; i < num_generators(); ++i)
        if (gens_[i].name != o.gens_[i].name || gens_[i].degree != o.gens_[i].degree ||
            !(gens_[i].diff == o.gens_[i].diff))
            return false;
    return true;
}

CdgaValidation validate_cdga(const SemifreeCdga& a) {
    CdgaValidation v;
    std::set<std::string> names;
    for (int i = 0; i < a.num_generators(); ++i) {
        const auto& g = a.generator(i);
        if (!names.insert(g.name).second)
            v.errors.push_back("duplicate generator name '" + g.name + "'");
        if (g.degree < 1)
            v.errors.push_back("generator '" + g.name + "' has degree < 1");
        for (const auto& [m, c] : g.diff.terms())
            for (const auto& [gi, e] : m.factors)
                if (gi >= i) {
                    v.errors.push_back("differential of '" + g.name +
                                       "' is not strictly lower-triangular");
                    goto triangularity_done;
                }
    triangularity_done:
        if (!g.diff.is_zero()) {
            try {
                auto d = a.degree_of(g.diff);
                if (d && *d != g.degree + 1)
                    v.errors.push_back("differential of '" + g.name + "' has degree " +
                                       std::to_string(*d) + ", expected " +
                                       std::to_string(g.degree + 1));
            } catch (const std::invalid_argument&) {
                v.errors.push_back("differential of '" + g.name + "' is inhomogeneous");
            }
        }
    }
    if (v.errors.empty()) {
        for (int i = 0; i < a.num_generators(); ++i) {
            const auto& g = a.generator(i);
            if (!a.extend_derivation(g.diff).is_zero()) {
                v.errors.push_back("d^2 does not vanish on generator '" + g.name + "'");
                break;
            }
        }
    }

    v.decomposable = true;
    for (int i = 0; i < a.num_generators(); ++i)
        for (const auto& [m, c] : a.generator(i).diff.terms())
            if (m.total_exponent() < 2) v.decomposable = false;
    v.degree_monotone = true;
    for (int i = 0; i + 1 < a.num_generators(); ++i)
        if (a.generator(i).degree > a.generator(i + 1).degree) v.degree_monotone = false;

    v.valid = v.errors.empty();
    v.minimal = v.valid && v.decomposable && v.degree_monotone;
    return v;
}

SemifreeCdga standard_model(ModelKind kind, int n) {
    SemifreeCdga a;
    switch (kind) {
        case ModelKind::odd_sphere: {
            if (n < 1 || n % 2 == 0)
                throw std::invalid_argument("odd_sphere requires odd n >= 1");
            a.add_generator("w_" + std::to_string(n), n);
            break;
        }
        case ModelKind::even_sphere: {
            if (n < 2 || n % 2 != 0)
                throw std::invalid_argument("even_sphere requires even n >= 2");
            a.add_generator("w_" + std::to_string(n), n);
            AlgElement sq;
            sq.add_term(Monomial{{{0, 2}}}, Rational(1));
            a.add_generator("w_" + std::to_string(2 * n - 1), 2 * n - 1, sq);
            break;
        }
        case ModelKind::eilenberg_maclane: {
            if (n < 1) throw std::invalid_argument("eilenberg_maclane requires n >= 1");
            a.add_generator("w_" + std::to_string(n), n);
            break;
        }
        case ModelKind::circle: {
            a.add_generator("x", 1);
            break;
        }
    }
    return a;
}

CochainComplexWindow algebra_complex_window(const SemifreeCdga& a, const DegreeWindow& w) {
    BasisLabeledSpace basis;
    std::map<int, std::vector<Monomial>> slice;
    for (int k = w.lo; k <= w.hi; ++k) {
        slice[k] = a.monomial_basis(k);
        std::vector<std::string> labels;
        for (const auto& m : slice[k]) labels.push_back(a.format(m));
        basis.set_basis(k, labels);
    }
    std::map<int, SparseMatrix> diff;
    for (int k = w.lo; k < w.hi; ++k) {
        SparseMatrix d(static_cast<int>(slice[k + 1].size()), static_cast<int>(slice[k].size()));
        for (int j = 0; j < static_cast<int>(slice[k].size()); ++j) {
            AlgElement de = a.extend_derivation(element_of(slice[k][j]));
            Vec col = a.coords(de, slice[k + 1]);
            for (int r = 0; r < static_cast<int>(col.size()); ++r)
                if (!is_zero(col[r])) d.set(r, j, col[r]);
        }
        diff.emplace(k, std::move(d));
    }
    return CochainComplexWindow(w, std::move(basis), std::move(diff));
}

Vec GradedAlgebraTable::multiply(int d1, int i1, int d2, int i2) const {
    auto it = product.find(std::make_tuple(d1, i1, d2, i2));
    if (it == product.end())
        throw std::out_of_range("product lands outside the covered degrees");
    return it->second;
}

bool GradedAlgebraTable::covers(int degree) const {
    return degree == 0 || window.interior(degree);
}

GradedAlgebraTable cohomology_algebra(const SemifreeCdga& a, const DegreeWindow& w) {
    if (w.lo < 0) throw std::invalid_argument("cohomology window must not go below 0");
    auto cw = algebra_complex_window(a, w);
    auto h = cohomology_window(cw);

    std::map<int, std::vector<Monomial>> slice;
    for (int k = w.lo; k <= w.hi; ++k) slice[k] = a.monomial_basis(k);

    GradedAlgebraTable t;
    t.window = w;
    /* degree 0 is exactly the unit line for a connected algebra, even though
       it sits on the window edge */
    t.basis.set_basis(0, {"1"});
    t.reps[0] = {AlgElement::unit(Rational(1))};

    std::vector<int> covered{0};
    for (int k = std::max(1, w.lo + 1); k < w.hi; ++k) {
        const auto& hk = h.by_degree.at(k);
        if (hk.dim == 0) continue;
        std::vector<std::string> labels;
        std::vector<AlgElement> reps;
        for (const auto& rv : hk.representatives) {
            AlgElement rep;
            for (int i = 0; i < static_cast<int>(rv.size()); ++i) rep.add_term(slice[k][i], rv[i]);
            labels.push_back("[" + a.format(rep) + "]");
            reps.push_back(std::move(rep));
        }
        t.basis.set_basis(k, labels);
        t.reps[k] = std::move(reps);
        covered.push_back(k);
    }

    /* reducers: per covered degree, the coboundary span followed by the class
       representatives, so coordinates(z) ends with the class coordinates */
    std::map<int, std::pair<Subspace, int>> reducer;
    for (int k : covered) {
        int n = static_cast<int>(slice[k].size());
        Subspace s(n);
        if (k > 0 && k - 1 >= w.lo) {
            SparseMatrix din = cw.d(k - 1);
            for (int j = 0; j < din.cols(); ++j) s.insert(din.apply(unit_vec(din.cols(), j)));
        }
        int r0 = s.dim();
        for (const auto& rep : t.reps.at(k)) s.insert(a.coords(rep, slice[k]));
        reducer.emplace(k, std::make_pair(std::move(s), r0));
    }

    for (int d1 : covered)
        for (int d2 : covered) {
            int target = d1 + d2;
            if (!t.covers(target)) continue;
            for (int i1 = 0; i1 < t.dim(d1); ++i1)
                for (int i2 = 0; i2 < t.dim(d2); ++i2) {
                    if (t.dim(target) == 0) {
                        /* exact or empty target slice: the class is zero */
                        t.product.emplace(std::make_tuple(d1, i1, d2, i2), Vec{});
                        continue;
                    }
                    const auto& [s, r0] = reducer.at(target);
                    AlgElement z = a.normalize_product(t.reps.at(d1)[i1], t.reps.at(d2)[i2]);
                    auto coords = s.coordinates(a.coords(z, slice[target]));
                    if (!coords)
                        throw std::logic_error("cocycle product escaped the cocycle span");
                    Vec cls(coords->begin() + r0, coords->end());
                    t.product.emplace(std::make_tuple(d1, i1, d2, i2), std::move(cls));
                }
        }
    return t;
}

}  // namespace dgm
