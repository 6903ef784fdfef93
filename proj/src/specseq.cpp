#include "dgm/specseq.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dgm/bar.hpp"

namespace dgm {

namespace {

AlgElement element_of(const Monomial& m, const Rational& c = Rational(1)) {
    AlgElement e;
    e.add_term(m, c);
    return e;
}

std::string render_element(const std::vector<std::string>& labels, const Vec& v) {
    std::string s;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        if (is_zero(v[i])) continue;
        if (!s.empty()) s += " + ";
        if (!(v[i] == Rational(1))) s += rat_str(v[i]) + "*";
        s += labels.at(i);
    }
    return s.empty() ? "0" : s;
}

/* Spans Z^{p,n}_{cut} = { x in F^p C^n : dx in F^{cut} C^{n+1} }, expanded
   to ambient coordinates and cached under clamped keys: every p below zero
   means "no column constraint" and every cut beyond the top level means
   "dx must vanish". */
class ZCache {
public:
    explicit ZCache(const FilteredComplexWindow& f) : f_(f), pmax_(f.max_level()) {}

    const std::vector<Vec>& z(int p, int cut, int n) {
        int pe = std::max(p, 0);
        int ce = std::min(std::max(cut, 0), pmax_ + 1);
        auto key = std::make_tuple(pe, ce, n);
        auto it = store_.find(key);
        if (it != store_.end()) return it->second;
        return store_.emplace(key, build(pe, ce, n)).first->second;
    }

private:
    std::vector<Vec> build(int pe, int ce, int n) const {
        const CochainComplexWindow& c = f_.complex();
        if (!c.window().contains(n)) return {};
        const int dn = c.dim(n);
        if (dn == 0) return {};

        std::vector<int> cols;
        for (int j = 0; j < dn; ++j)
            if (f_.level(n, j) >= pe) cols.push_back(j);
        if (cols.empty()) return {};

        const SparseMatrix d = c.d(n);
        std::vector<int> rowpos(d.rows(), -1);
        int nrows = 0;
        for (int i = 0; i < d.rows(); ++i)
            if (f_.level(n + 1, i) < ce) rowpos[i] = nrows++;

        std::vector<Vec> basis;
        if (nrows == 0) {
            for (int j : cols) basis.push_back(unit_vec(dn, j));
            return basis;
        }
        std::vector<int> colpos(dn, -1);
        for (int j = 0; j < static_cast<int>(cols.size()); ++j) colpos[cols[j]] = j;
        SparseMatrix sub(nrows, static_cast<int>(cols.size()));
        for (const auto& [r, cc, v] : d.entries()) {
            if (rowpos[r] < 0 || colpos[cc] < 0) continue;
            sub.set(rowpos[r], colpos[cc], v);
        }
        for (const Vec& k : kernel_of(sub)) {
            Vec full = zero_vec(dn);
            for (int j = 0; j < static_cast<int>(cols.size()); ++j) full[cols[j]] = k[j];
            basis.push_back(std::move(full));
        }
        return basis;
    }

    const FilteredComplexWindow& f_;
    int pmax_;
    std::map<std::tuple<int, int, int>, std::vector<Vec>> store_;
};

/* One page entry with enough structure to express classes in it: the
   denominator span first, then chosen cocycle representatives. */
struct EntrySpan {
    Subspace space;
    int den_dim = 0;
    std::vector<Vec> reps;

    explicit EntrySpan(int ambient) : space(ambient) {}

    Vec class_coords(const Vec& x) const {
        auto co = space.coordinates(x);
        if (!co) throw std::logic_error("page class escaped its span");
        return Vec(co->begin() + den_dim, co->end());
    }
};

EntrySpan build_entry(ZCache& zc, const FilteredComplexWindow& f, int r, int p, int n) {
    const CochainComplexWindow& c = f.complex();
    EntrySpan e(c.dim(n));
    if (c.dim(n) == 0) return e;
    for (const Vec& v : zc.z(p + 1, p + r, n)) e.space.insert(v);
    if (c.window().contains(n - 1)) {
        const SparseMatrix dprev = c.d(n - 1);
        for (const Vec& v : zc.z(p - r + 1, p, n - 1)) e.space.insert(dprev.apply(v));
    }
    e.den_dim = e.space.dim();
    for (const Vec& v : zc.z(p, p + r, n))
        if (e.space.insert(v)) e.reps.push_back(v);
    return e;
}

int stored_rank(const std::map<std::pair<int, int>, SparseMatrix>& diffs, int p, int q) {
    auto it = diffs.find({p, q});
    return it == diffs.end() ? 0 : rank_of(it->second);
}

/* rank audit: every entry of the new page must equal the cohomology of the
   previous page at the same spot */
void audit_against_previous(const SSPage& prev, const SSPage& cur) {
    const int step = prev.r;
    std::set<std::pair<int, int>> keys;
    for (const auto& [k, e] : prev.entries) keys.insert(k);
    for (const auto& [k, e] : cur.entries) keys.insert(k);
    for (const auto& [p, q] : keys) {
        int out_rank = stored_rank(prev.differentials, p, q);
        int in_rank = stored_rank(prev.differentials, p - step, q + step - 1);
        int expected = prev.dim(p, q) - out_rank - in_rank;
        if (cur.dim(p, q) != expected)
            throw std::logic_error("page recomputation mismatch between consecutive pages");
    }
}

void audit_squares_to_zero(const SSPage& pg) {
    for (const auto& [key, mat] : pg.differentials) {
        auto next = pg.differentials.find({key.first + pg.r, key.second - pg.r + 1});
        if (next == pg.differentials.end()) continue;
        if (!next->second.compose(mat).is_zero())
            throw std::logic_error("page differential fails to square to zero");
    }
}

}  // namespace

FilteredComplexWindow::FilteredComplexWindow(CochainComplexWindow complex,
                                             std::map<int, std::vector<int>> levels)
    : complex_(std::move(complex)), levels_(std::move(levels)) {
    if (!complex_.differential_squares_to_zero())
        throw std::invalid_argument("filtered complex differential does not square to zero");
    const DegreeWindow w = complex_.window();
    for (int k = w.lo; k <= w.hi; ++k) {
        const int dk = complex_.dim(k);
        auto it = levels_.find(k);
        if (it == levels_.end()) {
            if (dk != 0)
                throw std::invalid_argument("missing filtration level list for a nonzero degree");
            continue;
        }
        if (static_cast<int>(it->second.size()) != dk)
            throw std::invalid_argument("filtration level list does not match the basis");
        for (int v : it->second) {
            if (v < 0) throw std::invalid_argument("filtration levels must be non-negative");
            max_level_ = std::max(max_level_, v);
        }
    }
    for (int k = w.lo; k < w.hi; ++k) {
        for (const auto& [r, c, v] : complex_.d(k).entries()) {
            (void)v;
            if (level(k + 1, r) < level(k, c))
                throw std::invalid_argument("the differential lowers the filtration level");
        }
    }
}

int FilteredComplexWindow::level(int degree, int index) const {
    return levels_.at(degree).at(index);
}

int SSPage::dim(int p, int q) const {
    auto it = entries.find({p, q});
    return it == entries.end() ? 0 : it->second.dim;
}

int SSPage::total_dim(int n) const {
    int total = 0;
    for (const auto& [key, e] : entries)
        if (key.first + key.second == n) total += e.dim;
    return total;
}

std::vector<SSPage> compute_pages(const FilteredComplexWindow& f, int r_max) {
    if (r_max < 1) throw std::invalid_argument("page index must be at least one");
    const CochainComplexWindow& c = f.complex();
    const DegreeWindow w = c.window();
    const int pmax = f.max_level();
    ZCache zc(f);

    std::vector<SSPage> pages;
    for (int r = 1; r <= r_max; ++r) {
        SSPage pg;
        pg.r = r;
        std::map<std::pair<int, int>, EntrySpan> spans;
        for (int n = w.lo; n <= w.hi; ++n) {
            if (c.dim(n) == 0) continue;
            for (int p = 0; p <= pmax; ++p) {
                EntrySpan e = build_entry(zc, f, r, p, n);
                if (e.reps.empty()) continue;
                PageEntry pe;
                pe.dim = static_cast<int>(e.reps.size());
                for (const Vec& rep : e.reps) pe.basis.push_back(render_element(c.labels(n), rep));
                pg.entries.emplace(std::make_pair(p, n - p), std::move(pe));
                spans.emplace(std::make_pair(p, n), std::move(e));
            }
        }
        for (const auto& [key, src] : spans) {
            const auto& [p, n] = key;
            auto tgt = spans.find({p + r, n + 1});
            if (tgt == spans.end()) continue;
            const SparseMatrix dn = c.d(n);
            SparseMatrix mat(static_cast<int>(tgt->second.reps.size()),
                             static_cast<int>(src.reps.size()));
            for (int j = 0; j < static_cast<int>(src.reps.size()); ++j) {
                Vec cls = tgt->second.class_coords(dn.apply(src.reps[j]));
                for (int i = 0; i < static_cast<int>(cls.size()); ++i)
                    if (!is_zero(cls[i])) mat.set(i, j, cls[i]);
            }
            pg.differentials.emplace(std::make_pair(p, n - p), std::move(mat));
        }
        audit_squares_to_zero(pg);
        if (!pages.empty()) audit_against_previous(pages.back(), pg);
        pages.push_back(std::move(pg));
    }
    return pages;
}

std::map<std::pair<int, int>, int> einf_entries(const FilteredComplexWindow& f) {
    const CochainComplexWindow& c = f.complex();
    const DegreeWindow w = c.window();
    const int pmax = f.max_level();
    ZCache zc(f);

    std::map<std::pair<int, int>, int> out;
    for (int n = w.lo; n <= w.hi; ++n) {
        if (c.dim(n) == 0) continue;
        std::vector<Vec> image;
        if (c.window().contains(n - 1)) {
            const SparseMatrix dprev = c.d(n - 1);
            for (int j = 0; j < dprev.cols(); ++j)
                image.push_back(dprev.apply(unit_vec(dprev.cols(), j)));
        }
        /* S_p = dim(image + ker cap F^p), graded piece = S_p - S_{p+1} */
        std::vector<int> s(pmax + 2, 0);
        for (int p = 0; p <= pmax + 1; ++p) {
            Subspace sp(c.dim(n));
            for (const Vec& v : image) sp.insert(v);
            for (const Vec& v : zc.z(p, pmax + 1, n)) sp.insert(v);
            s[p] = sp.dim();
        }
        for (int p = 0; p <= pmax; ++p)
            if (s[p] - s[p + 1] > 0) out[{p, n - p}] = s[p] - s[p + 1];
    }
    return out;
}

namespace {

/* ---------- shared report assembly ---------- */

ConvergenceReport make_report(const FilteredComplexWindow& f, const std::vector<SSPage>& pages,
                              const DegreeWindow& w, bool complete, const std::string& cert) {
    std::map<std::pair<int, int>, int> einf = einf_entries(f);
    CohomologyResult h = cohomology_window(f.complex());

    ConvergenceReport rep;
    rep.window = w;
    rep.complete = complete;
    rep.certificate = cert;
    for (int k = w.lo; k <= w.hi; ++k) {
        int tot = 0;
        for (const auto& [key, d] : einf)
            if (key.first + key.second == k) tot += d;
        rep.einf_total_dims[k] = tot;
        const CohomologyDegree& hd = h.by_degree.at(k);
        rep.target_dims[k] = hd.dim;
        rep.incomplete[k] = hd.boundary_incomplete || !complete;
    }
    /* stabilization is judged on total degrees strictly inside the window;
       edge degrees see a truncated differential and carry no honest claim */
    auto interior_only = [&w](const std::map<std::pair<int, int>, int>& dims) {
        std::map<std::pair<int, int>, int> out;
        for (const auto& [key, d] : dims) {
            const int tot = key.first + key.second;
            if (tot > w.lo && tot < w.hi) out[key] = d;
        }
        return out;
    };
    const auto einf_in = interior_only(einf);
    for (const SSPage& pg : pages) {
        std::map<std::pair<int, int>, int> dims;
        for (const auto& [key, e] : pg.entries) dims[key] = e.dim;
        if (interior_only(dims) == einf_in) {
            rep.stabilized = true;
            rep.stabilization_page = pg.r;
            break;
        }
    }
    bool agree = true;
    for (int k = w.lo; k <= w.hi; ++k)
        if (!rep.incomplete.at(k) && rep.einf_total_dims.at(k) != rep.target_dims.at(k))
            agree = false;
    rep.matches = rep.stabilized && agree;
    return rep;
}

/* ---------- page-one recount for the word-length filtration ----------

   The level-preserving part of the hom differential is dual to the letter
   differentials plus the coefficient differential, so page one at column p
   counts H(letter tensor complex) paired against H(target).  The tensor
   complex is rebuilt here from nothing but the algebra and the coefficient
   table. */

struct TensorLayer {
    std::vector<std::vector<int>> tuples; /* d1,i1,...,dp,ip,e,ei */
    std::map<std::vector<int>, int> index;
};

class LetterTensorComplex {
public:
    LetterTensorComplex(const SemifreeCdga& a, const ModuleTable& n, int p, int amin,
                        const DegreeWindow& w)
        : a_(a), n_(n), p_(p), amin_(amin), w_(w) {
        for (int deg = w.lo; deg <= w.hi; ++deg) {
            TensorLayer& layer = layers_[deg];
            std::vector<int> stub;
            enumerate(0, deg, stub, layer);
        }
    }

    CochainComplexWindow complex() const {
        BasisLabeledSpace space;
        for (const auto& [deg, layer] : layers_) {
            if (layer.tuples.empty()) continue;
            std::vector<std::string> labs;
            for (int i = 0; i < static_cast<int>(layer.tuples.size()); ++i)
                labs.push_back("t" + std::to_string(deg) + "_" + std::to_string(i));
            space.set_basis(deg, std::move(labs));
        }
        std::map<int, SparseMatrix> diffs;
        for (int deg = w_.lo; deg < w_.hi; ++deg) {
            const TensorLayer& src = layers_.at(deg);
            const TensorLayer& tgt = layers_.at(deg + 1);
            if (src.tuples.empty() || tgt.tuples.empty()) continue;
            SparseMatrix mat(static_cast<int>(tgt.tuples.size()),
                             static_cast<int>(src.tuples.size()));
            for (int j = 0; j < static_cast<int>(src.tuples.size()); ++j)
                differentiate(src.tuples[j], tgt, j, mat);
            if (!mat.is_zero()) diffs.emplace(deg, std::move(mat));
        }
        return CochainComplexWindow(w_, std::move(space), std::move(diffs));
    }

private:
    const std::vector<Monomial>& monos(int d) const {
        auto it = mono_cache_.find(d);
        if (it == mono_cache_.end())
            it = mono_cache_.emplace(d, d >= 1 ? a_.monomial_basis(d) : std::vector<Monomial>{})
                     .first;
        return it->second;
    }

    void enumerate(int slot, int rest, std::vector<int>& acc, TensorLayer& layer) {
        if (slot == p_) {
            const int e = rest;
            if (e < n_.window().lo || e > n_.window().hi) return;
            const int dim = n_.complex.dim(e);
            for (int ei = 0; ei < dim; ++ei) {
                std::vector<int> t = acc;
                t.push_back(e);
                t.push_back(ei);
                layer.index.emplace(t, static_cast<int>(layer.tuples.size()));
                layer.tuples.push_back(std::move(t));
            }
            return;
        }
        const int slots_left = p_ - slot - 1;
        for (int d = amin_; d <= rest - slots_left * amin_; ++d) {
            const auto& mb = monos(d);
            if (mb.empty()) continue;
            for (int i = 0; i < static_cast<int>(mb.size()); ++i) {
                acc.push_back(d);
                acc.push_back(i);
                enumerate(slot + 1, rest - d, acc, layer);
                acc.pop_back();
                acc.pop_back();
            }
        }
    }

    void differentiate(const std::vector<int>& tup, const TensorLayer& tgt, int col,
                       SparseMatrix& mat) const {
        int prefix = 0;
        for (int slot = 0; slot < p_; ++slot) {
            const int d = tup[2 * slot];
            const int i = tup[2 * slot + 1];
            AlgElement de = a_.extend_derivation(element_of(monos(d)[i]));
            Vec co = a_.coords(de, monos(d + 1));
            Rational sg = prefix % 2 != 0 ? Rational(-1) : Rational(1);
            for (int r = 0; r < static_cast<int>(co.size()); ++r) {
                if (is_zero(co[r])) continue;
                std::vector<int> t = tup;
                t[2 * slot] = d + 1;
                t[2 * slot + 1] = r;
                auto it = tgt.index.find(t);
                if (it == tgt.index.end())
                    throw std::logic_error("letter tensor target escaped its layer");
                mat.add_to(it->second, col, sg * co[r]);
            }
            prefix += d;
        }
        const int e = tup[2 * p_];
        const int ei = tup[2 * p_ + 1];
        const SparseMatrix dn = n_.complex.d(e);
        Rational sg = prefix % 2 != 0 ? Rational(-1) : Rational(1);
        for (const auto& [r, c, v] : dn.entries()) {
            if (c != ei) continue;
            std::vector<int> t = tup;
            t[2 * p_] = e + 1;
            t[2 * p_ + 1] = r;
            auto it = tgt.index.find(t);
            if (it == tgt.index.end())
                throw std::logic_error("letter tensor target escaped its layer");
            mat.add_to(it->second, col, sg * v);
        }
    }

    const SemifreeCdga& a_;
    const ModuleTable& n_;
    int p_;
    int amin_;
    DegreeWindow w_;
    std::map<int, TensorLayer> layers_;
    mutable std::map<int, std::vector<Monomial>> mono_cache_;
};

void basis_extent(const CochainComplexWindow& c, int& lo, int& hi) {
    lo = std::numeric_limits<int>::max();
    hi = std::numeric_limits<int>::min();
    for (int k = c.window().lo; k <= c.window().hi; ++k) {
        if (c.dim(k) == 0) continue;
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
}

void verify_page_one_hyper(const SemifreeCdga& a, const ModuleTable& n, const ModuleTable& m,
                           int max_length, const DegreeWindow& w, const SSPage& e1) {
    if (w.hi - w.lo < 2) return;
    int n_lo, n_hi, m_lo, m_hi;
    basis_extent(n.complex, n_lo, n_hi);
    basis_extent(m.complex, m_lo, m_hi);
    if (n_lo > n_hi || m_lo > m_hi) return;
    (void)n_hi;
    (void)m_lo;

    CohomologyResult hm = cohomology_window(m.complex);
    auto hm_trusted = [&](int k) -> int {
        /* -1 marks a rank the window cannot certify */
        if (k < m.window().lo || k > m.window().hi) return -1;
        if (m.complex.dim(k) == 0) return 0;
        const CohomologyDegree& hd = hm.by_degree.at(k);
        return hd.boundary_incomplete ? -1 : hd.dim;
    };

    int amin = std::numeric_limits<int>::max();
    for (int i = 0; i < a.num_generators(); ++i)
        amin = std::min(amin, a.generator(i).degree);

    for (int p = 0; p <= max_length; ++p) {
        if (p > 0 && amin == std::numeric_limits<int>::max()) {
            for (int nn = w.lo + 1; nn <= w.hi - 1; ++nn)
                if (e1.dim(p, nn - p) != 0)
                    throw std::logic_error("page one failed its independent recount");
            continue;
        }
        const long x_lo = static_cast<long>(p) * amin + n_lo - 1;
        const long x_hi = std::min<long>(static_cast<long>(m_hi) + p - w.lo,
                                         static_cast<long>(n.window().hi) - 1 +
                                             static_cast<long>(p) * amin);
        if (x_hi < x_lo) continue;

        LetterTensorComplex ltc(a, n, p, amin == std::numeric_limits<int>::max() ? 1 : amin,
                                DegreeWindow{static_cast<int>(x_lo), static_cast<int>(x_hi)});
        CohomologyResult hx = cohomology_window(ltc.complex());

        for (int nn = w.lo + 1; nn <= w.hi - 1; ++nn) {
            /* words at or beyond the top of the tensor window must be unable
               to pair into the target, else this total degree is unverifiable */
            if (x_hi + nn - p <= m_hi) continue;
            long expected = 0;
            bool verifiable = true;
            for (long d = x_lo + 1; d <= x_hi - 1; ++d) {
                int hd = hx.by_degree.at(static_cast<int>(d)).dim;
                if (hd == 0) continue;
                int mm = hm_trusted(static_cast<int>(d) + nn - p);
                if (mm < 0) {
                    verifiable = false;
                    break;
                }
                expected += static_cast<long>(hd) * mm;
            }
            if (!verifiable) continue;
            if (e1.dim(p, nn - p) != expected)
                throw std::logic_error("page one failed its independent recount");
        }
    }
}

void verify_page_two_hyper(const SemifreeCdga& a, const ModuleTable& n, const ModuleTable& m,
                           int max_length, const DegreeWindow& w, const SSPage& e2,
                           bool hom_complete) {
    if (w.hi - w.lo < 4 || !hom_complete) return;
    int n_lo, n_hi, m_lo, m_hi;
    basis_extent(n.complex, n_lo, n_hi);
    basis_extent(m.complex, m_lo, m_hi);
    if (n_lo > n_hi || m_lo > m_hi) return;
    (void)n_hi;
    (void)m_lo;
    try {
        const int bound = (m_hi - w.lo) + 2 - n_lo;
        GradedAlgebraTable h = cohomology_algebra(a, DegreeWindow{0, std::max(bound, 1) + 1});
        GradedModuleTable hn =
            cohomology_module_table(h, n, DegreeWindow{n.window().lo + 1, n.window().hi - 1});
        GradedModuleTable hm =
            cohomology_module_table(h, m, DegreeWindow{m.window().lo + 1, m.window().hi - 1});
        DegreeWindow wi{w.lo + 1, w.hi - 1};
        BigradedExt big = graded_algebra_bar(h, hn, hm, max_length, wi);
        if (!big.complete) return;
        for (int k = wi.lo + 1; k <= wi.hi - 1; ++k) {
            for (int p = 0; p <= max_length; ++p) {
                auto it = big.dims.find({p, k});
                const int want = it == big.dims.end() ? 0 : it->second;
                if (e2.dim(p, k - p) != want)
                    throw std::logic_error("page two failed its cohomology-algebra recount");
            }
        }
    } catch (const std::invalid_argument&) {
        /* the windows cannot host the recount; leave the page unaudited */
    }
}

}  // namespace

SpectralSequence hyper_ext_ss(const SemifreeCdga& a, const ModuleTable& n, const ModuleTable& m,
                              int max_length, const DegreeWindow& w, int r_max) {
    BarHomComplex hom = bar_hom_complex(a, n, m, max_length, w);
    FilteredComplexWindow f(hom.complex, hom.word_length);

    SpectralSequence out;
    out.pages = compute_pages(f, r_max);
    out.report = make_report(f, out.pages, w, hom.complete, hom.certificate);

    verify_page_one_hyper(a, n, m, max_length, w, out.pages.front());
    if (out.pages.size() >= 2)
        verify_page_two_hyper(a, n, m, max_length, w, out.pages[1], hom.complete);
    return out;
}

SpectralSequence minimal_ss(const SemifreeModule& nmin, const ModuleTable& m,
                            const DegreeWindow& w, int r_max) {
    const int G = nmin.num_generators();
    for (int i = 0; i < G; ++i) {
        if (nmin.generator(i).degree < 0)
            throw std::invalid_argument(
                "generator-degree filtration needs no negative generator degrees");
        const ModElement diff = nmin.differential(i);
        for (int al = 0; al < G; ++al) {
            const AlgElement co = diff.coeff(al);
            for (const auto& [mono, c] : co.terms()) {
                (void)c;
                if (mono.factors.empty())
                    throw std::invalid_argument(
                        "source module is not minimal: a differential has a unit coefficient");
            }
        }
    }

    CochainComplexWindow hom = hom_complex_window(nmin, m, w);
    std::map<int, std::vector<int>> levels;
    for (int k = w.lo; k <= w.hi; ++k) {
        std::vector<int> lv;
        for (int al = 0; al < G; ++al) {
            const int td = k + nmin.generator(al).degree;
            const int dim = static_cast<int>(m.complex.labels(td).size());
            for (int i = 0; i < dim; ++i) lv.push_back(nmin.generator(al).degree);
        }
        if (!lv.empty()) levels.emplace(k, std::move(lv));
    }

    FilteredComplexWindow f(std::move(hom), std::move(levels));
    SpectralSequence out;
    out.pages = compute_pages(f, r_max);
    out.report = make_report(f, out.pages, w, true,
                             "generator-degree filtration: no truncation cap");

    /* page-one recount: each column is the hom cohomology of one
       generator-degree slice */
    std::set<int> gen_degrees;
    for (int i = 0; i < G; ++i) gen_degrees.insert(nmin.generator(i).degree);
    const SSPage& e1 = out.pages.front();
    for (int p : gen_degrees) {
        ExtResult se = ext_via_hom(split_postnikov(nmin, p).slice, m, w);
        for (int nn = w.lo + 1; nn <= w.hi - 1; ++nn) {
            if (se.incomplete.at(nn)) continue;
            if (e1.dim(p, nn - p) != se.dims.at(nn))
                throw std::logic_error("page one failed its generator-slice recount");
        }
    }
    return out;
}

}  // namespace dgm
