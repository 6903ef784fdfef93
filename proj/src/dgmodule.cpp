#include "dgm/dgmodule.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace dgm {

namespace {

AlgElement element_of(const Monomial& m, const Rational& c = Rational(1)) {
    AlgElement e;
    e.add_term(m, c);
    return e;
}

std::map<std::pair<int, Monomial>, int> pair_positions(const ModulePairBasis& basis) {
    std::map<std::pair<int, Monomial>, int> pos;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) pos.emplace(basis[i], i);
    return pos;
}

}  // namespace

int SemifreeModule::add_generator(const std::string& name, int degree, ModElement diff) {
    if (generator_index(name))
        throw std::invalid_argument("duplicate module generator name '" + name + "'");
    int index = num_generators();
    for (const auto& [g, a] : diff.coeffs())
        if (g < 0 || g >= index)
            throw std::invalid_argument("differential of '" + name +
                                        "' references a generator not yet added");
    gens_.push_back(ModGenerator{name, degree});
    diffs_.push_back(std::move(diff));
    return index;
}

void SemifreeModule::set_differential(int index, ModElement diff) {
    for (const auto& [g, a] : diff.coeffs())
        if (g < 0 || g >= num_generators())
            throw std::invalid_argument("differential references an unknown generator");
    diffs_.at(index) = std::move(diff);
}

std::optional<int> SemifreeModule::generator_index(const std::string& name) const {
    for (int i = 0; i < num_generators(); ++i)
        if (gens_[i].name == name) return i;
    return std::nullopt;
}

ModElement SemifreeModule::act(const AlgElement& a, const ModElement& m) const {
    ModElement r;
    for (const auto& [g, b] : m.coeffs()) r.add(g, base_.normalize_product(a, b));
    return r;
}

ModElement SemifreeModule::differentiate(const ModElement& e) const {
    ModElement r;
    for (const auto& [g, a] : e.coeffs()) {
        r.add(g, base_.extend_derivation(a));
        const ModElement& dg = diffs_.at(g);
        if (dg.is_zero()) continue;
        for (const auto& [mono, c] : a.terms()) {
            Rational sc = (base_.degree_of(mono) % 2 != 0) ? Rational(-c) : c;
            AlgElement piece = element_of(mono, sc);
            for (const auto& [g2, b] : dg.coeffs()) r.add(g2, base_.normalize_product(piece, b));
        }
    }
    return r;
}

std::optional<int> SemifreeModule::degree_of(const ModElement& e) const {
    std::optional<int> deg;
    for (const auto& [g, a] : e.coeffs()) {
        auto da = base_.degree_of(a);
        if (!da) continue;
        int d = *da + gens_.at(g).degree;
        if (deg && *deg != d) throw std::invalid_argument("inhomogeneous module element");
        deg = d;
    }
    return deg;
}

std::string SemifreeModule::format(const ModElement& e) const {
    if (e.is_zero()) return "0";
    std::string s;
    for (const auto& [g, a] : e.coeffs()) {
        if (!s.empty()) s += " + ";
        if (a == AlgElement::unit(Rational(1))) {
            s += gens_.at(g).name;
            continue;
        }
        std::string ca = base_.format(a);
        if (a.terms().size() > 1) ca = "(" + ca + ")";
        s += ca + "*" + gens_.at(g).name;
    }
    return s;
}

bool SemifreeModule::operator==(const SemifreeModule& o) const {
    if (!(base_ == o.base_) || gens_.size() != o.gens_.size()) return false;
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name != o.gens_[i].name || gens_[i].degree != o.gens_[i].degree) return false;
    return diffs_ == o.diffs_;
}

ModuleValidation validate_module(const SemifreeModule& m) {
    ModuleValidation v;
    CdgaValidation bv = validate_cdga(m.base());
    if (!bv.valid)
        for (const auto& e : bv.errors) v.errors.push_back("base algebra: " + e);
    for (int i = 0; i < m.num_generators(); ++i)
        for (int j = i + 1; j < m.num_generators(); ++j)
            if (m.generator(i).name == m.generator(j).name)
                v.errors.push_back("duplicate generator name '" + m.generator(i).name + "'");

    bool structural = v.errors.empty();
    for (int i = 0; i < m.num_generators(); ++i) {
        const ModGenerator& g = m.generator(i);
        for (const auto& [j, a] : m.differential(i).coeffs()) {
            if (j < 0 || j >= i) {
                v.errors.push_back("differential of '" + g.name +
                                   "' references a generator that is not strictly earlier");
                structural = false;
                continue;
            }
            for (const auto& [mono, c] : a.terms()) {
                int d = m.base().degree_of(mono) + m.generator(j).degree;
                if (d != g.degree + 1) {
                    v.errors.push_back("differential of '" + g.name + "' has a term of degree " +
                                       std::to_string(d) + ", expected " +
                                       std::to_string(g.degree + 1));
                    structural = false;
                }
            }
        }
    }
    if (structural && bv.valid)
        for (int i = 0; i < m.num_generators(); ++i)
            if (!m.differentiate(m.differential(i)).is_zero())
                v.errors.push_back("d^2 is nonzero on generator '" + m.generator(i).name + "'");

    v.coefficients_reduced = true;
    for (int i = 0; i < m.num_generators(); ++i)
        for (const auto& [j, a] : m.differential(i).coeffs())
            if (a.terms().count(Monomial{})) v.coefficients_reduced = false;
    v.degree_monotone = true;
    for (int i = 0; i + 1 < m.num_generators(); ++i)
        if (m.generator(i).degree > m.generator(i + 1).degree) v.degree_monotone = false;
    v.valid = v.errors.empty();
    v.minimal = v.valid && v.coefficients_reduced && v.degree_monotone;
    return v;
}

std::map<int, ModulePairBasis> module_basis(const SemifreeModule& m, const DegreeWindow& w) {
    std::map<int, ModulePairBasis> out;
    for (int k = w.lo; k <= w.hi; ++k) {
        ModulePairBasis b;
        for (int i = 0; i < m.num_generators(); ++i)
            for (const auto& mono : m.base().monomial_basis(k - m.generator(i).degree))
                b.emplace_back(i, mono);
        out.emplace(k, std::move(b));
    }
    return out;
}

Vec module_coords(const SemifreeModule&, const ModElement& e, const ModulePairBasis& basis) {
    auto pos = pair_positions(basis);
    Vec v(basis.size(), Rational(0));
    for (const auto& [g, a] : e.coeffs())
        for (const auto& [mono, c] : a.terms()) {
            auto it = pos.find({g, mono});
            if (it == pos.end())
                throw std::invalid_argument("module element has a term outside the basis slice");
            v[it->second] = c;
        }
    return v;
}

ModElement module_element(const SemifreeModule&, const ModulePairBasis& basis, const Vec& v) {
    if (v.size() != basis.size()) throw std::invalid_argument("coordinate size mismatch");
    ModElement e;
    for (size_t i = 0; i < basis.size(); ++i) {
        if (dgm::is_zero(v[i])) continue;
        e.add(basis[i].first, element_of(basis[i].second, v[i]));
    }
    return e;
}

CochainComplexWindow module_complex_window(const SemifreeModule& m, const DegreeWindow& w) {
    auto basis = module_basis(m, w);
    BasisLabeledSpace space;
    for (const auto& [k, pairs] : basis) {
        std::vector<std::string> labels;
        for (const auto& [g, mono] : pairs)
            labels.push_back(mono.is_unit() ? m.generator(g).name
                                            : m.base().format(mono) + "*" + m.generator(g).name);
        space.set_basis(k, std::move(labels));
    }
    std::map<int, SparseMatrix> diff;
    for (int k = w.lo; k < w.hi; ++k) {
        const ModulePairBasis& src = basis.at(k);
        const ModulePairBasis& tgt = basis.at(k + 1);
        auto pos = pair_positions(tgt);
        SparseMatrix d(static_cast<int>(tgt.size()), static_cast<int>(src.size()));
        for (int j = 0; j < static_cast<int>(src.size()); ++j) {
            ModElement de =
                m.differentiate(ModElement::generator(src[j].first, element_of(src[j].second)));
            for (const auto& [g, a] : de.coeffs())
                for (const auto& [mono, c] : a.terms()) {
                    auto it = pos.find({g, mono});
                    if (it == pos.end())
                        throw std::logic_error("module differential escaped its degree slice");
                    d.add_to(it->second, j, c);
                }
        }
        if (!d.is_zero()) diff.emplace(k, std::move(d));
    }
    return CochainComplexWindow(w, std::move(space), std::move(diff));
}

std::optional<Vec> ModuleTable::act_generator(int alg_gen, int degree, const Vec& v) const {
    const DegreeWindow& w = complex.window();
    int target = degree + base.generator(alg_gen).degree;
    if (!w.contains(degree) || !w.contains(target)) return std::nullopt;
    if (static_cast<int>(v.size()) != complex.dim(degree))
        throw std::invalid_argument("table action: coordinate size mismatch");
    Vec out = zero_vec(complex.dim(target));
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        if (dgm::is_zero(v[i])) continue;
        auto it = gen_action.find({alg_gen, degree, i});
        if (it == gen_action.end()) return std::nullopt;
        out = add_vec(out, scale_vec(v[i], it->second));
    }
    return out;
}

std::optional<Vec> ModuleTable::act(const AlgElement& a, int degree, const Vec& v) const {
    auto adeg = base.degree_of(a); /* throws on an inhomogeneous scalar */
    if (!adeg) return zero_vec(complex.dim(degree));
    int target = degree + *adeg;
    if (!complex.window().contains(degree) || !complex.window().contains(target))
        return std::nullopt;
    Vec out = zero_vec(complex.dim(target));
    for (const auto& [mono, c] : a.terms()) {
        Vec cur = v;
        int curdeg = degree;
        bool escaped = false;
        /* apply factors right to left: (g1^{e1} … gr^{er})·v = g1^{e1}·(…·(gr^{er}·v)) */
        for (auto fit = mono.factors.rbegin(); fit != mono.factors.rend() && !escaped; ++fit)
            for (int rep = 0; rep < fit->second && !escaped; ++rep) {
                auto next = act_generator(fit->first, curdeg, cur);
                if (!next) {
                    escaped = true;
                    break;
                }
                cur = std::move(*next);
                curdeg += base.generator(fit->first).degree;
            }
        if (escaped) return std::nullopt;
        out = add_vec(out, scale_vec(c, cur));
    }
    return out;
}

ModuleTable from_semifree(const SemifreeModule& m, const DegreeWindow& w) {
    ModuleTable t{m.base(), module_complex_window(m, w), {}};
    auto basis = module_basis(m, w);
    std::map<int, std::map<std::pair<int, Monomial>, int>> pos;
    for (const auto& [k, pairs] : basis) pos.emplace(k, pair_positions(pairs));
    for (int g = 0; g < m.base().num_generators(); ++g) {
        int dg = m.base().generator(g).degree;
        Monomial gmono{{{g, 1}}};
        for (int k = w.lo; k <= w.hi; ++k) {
            int target = k + dg;
            if (!w.contains(target)) continue;
            const ModulePairBasis& src = basis.at(k);
            const auto& tpos = pos.at(target);
            int tdim = static_cast<int>(basis.at(target).size());
            for (int i = 0; i < static_cast<int>(src.size()); ++i) {
                Vec col = zero_vec(tdim);
                auto prod = m.base().multiply_monomials(gmono, src[i].second);
                if (prod) {
                    auto it = tpos.find({src[i].first, prod->second});
                    if (it == tpos.end())
                        throw std::logic_error("monomial action escaped its degree slice");
                    col[it->second] = Rational(prod->first);
                }
                t.gen_action[{g, k, i}] = std::move(col);
            }
        }
    }
    return t;
}

ModuleTable augmentation_table(const SemifreeCdga& a, const DegreeWindow& w) {
    BasisLabeledSpace space;
    if (w.contains(0)) space.set_basis(0, {"1"});
    ModuleTable t{a, CochainComplexWindow(w, std::move(space), {}), {}};
    if (w.contains(0))
        for (int g = 0; g < a.num_generators(); ++g) {
            int target = a.generator(g).degree;
            if (w.contains(target)) t.gen_action[{g, 0, 0}] = zero_vec(t.complex.dim(target));
        }
    return t;
}

CohomologyResult module_cohomology(const SemifreeModule& m, const DegreeWindow& w) {
    return cohomology_window(module_complex_window(m, w));
}

CohomologyResult module_cohomology(const ModuleTable& t, const DegreeWindow& w) {
    const DegreeWindow& tw = t.window();
    if (tw.lo > w.lo || tw.hi < w.hi)
        throw std::invalid_argument("table window does not cover the requested window");
    CohomologyResult full = cohomology_window(t.complex);
    CohomologyResult out{w, {}};
    for (int k = w.lo; k <= w.hi; ++k) out.by_degree.emplace(k, full.by_degree.at(k));
    return out;
}

SemifreeModule shift_module(const SemifreeModule& m, int n) {
    SemifreeModule out(m.base());
    for (int i = 0; i < m.num_generators(); ++i) {
        ModElement d;
        for (const auto& [g, a] : m.differential(i).coeffs()) {
            AlgElement b;
            for (const auto& [mono, c] : a.terms()) {
                bool flip = (n * (1 + m.base().degree_of(mono))) % 2 != 0;
                b.add_term(mono, flip ? Rational(-c) : c);
            }
            d.add(g, b);
        }
        out.add_generator(m.generator(i).name, m.generator(i).degree - n, std::move(d));
    }
    return out;
}

ModElement apply_morphism(const SemifreeModule& target, const ModuleMorphism& f,
                          const ModElement& e) {
    ModElement r;
    for (const auto& [g, a] : e.coeffs()) r = r + target.act(a, f.images.at(g));
    return r;
}

bool is_chain_map(const SemifreeModule& source, const SemifreeModule& target,
                  const ModuleMorphism& f) {
    if (static_cast<int>(f.images.size()) != source.num_generators()) return false;
    for (int i = 0; i < source.num_generators(); ++i) {
        try {
            auto d = target.degree_of(f.images[i]);
            if (d && *d != source.generator(i).degree) return false;
        } catch (const std::invalid_argument&) {
            return false;
        }
        ModElement lhs = apply_morphism(target, f, source.differential(i));
        ModElement rhs = target.differentiate(f.images[i]);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

ModuleMorphism compose_morphisms(const SemifreeModule& outer_target, const ModuleMorphism& outer,
                                 const ModuleMorphism& inner) {
    ModuleMorphism r;
    for (const auto& img : inner.images)
        r.images.push_back(apply_morphism(outer_target, outer, img));
    return r;
}

std::optional<Vec> apply_table_morphism(const SemifreeModule& source, const ModuleTable& target,
                                        const TableMorphism& f, const ModElement& e) {
    std::optional<Vec> out;
    for (const auto& [g, a] : e.coeffs()) {
        auto part = target.act(a, source.generator(g).degree, f.images.at(g));
        if (!part) return std::nullopt;
        out = out ? add_vec(*out, *part) : *part;
    }
    if (!out) return Vec{}; /* the zero element has no degree to size a vector by */
    return out;
}

SemifreeModule tensor_over_A(const SemifreeModule& m, const SemifreeModule& n) {
    if (!(m.base() == n.base()))
        throw std::invalid_argument("tensor factors live over different base algebras");
    SemifreeModule out(m.base());
    const int N = n.num_generators();
    auto index = [N](int i, int j) { return i * N + j; };
    for (int i = 0; i < m.num_generators(); ++i) {
        int vi = m.generator(i).degree;
        for (int j = 0; j < N; ++j) {
            ModElement d;
            for (const auto& [z, a] : m.differential(i).coeffs()) d.add(index(z, j), a);
            for (const auto& [z, b] : n.differential(j).coeffs()) {
                AlgElement sb;
                for (const auto& [mono, c] : b.terms()) {
                    bool flip = (vi * (1 + n.base().degree_of(mono))) % 2 != 0;
                    sb.add_term(mono, flip ? Rational(-c) : c);
                }
                d.add(index(i, z), sb);
            }
            out.add_generator(m.generator(i).name + "@" + n.generator(j).name,
                              vi + n.generator(j).degree, std::move(d));
        }
    }
    return out;
}

}  // namespace dgm
