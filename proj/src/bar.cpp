#include "dgm/bar.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace dgm {

namespace {

bool odd(long x) { return x % 2 != 0; }

Rational sign_if(bool negative) { return negative ? Rational(-1) : Rational(1); }

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

/* coordinates of cocycles against (boundaries, then chosen representatives) */
struct ClassCoords {
    Subspace space;
    int boundary_dim = 0;

    ClassCoords(const CochainComplexWindow& c, const CohomologyResult& h, int k)
        : space(c.dim(k)) {
        SparseMatrix din = c.d(k - 1);
        for (int j = 0; j < din.cols(); ++j) space.insert(din.apply(unit_vec(din.cols(), j)));
        boundary_dim = space.dim();
        auto it = h.by_degree.find(k);
        if (it != h.by_degree.end())
            for (const Vec& r : it->second.representatives) space.insert(r);
    }

    Vec class_coords(const Vec& x) const {
        auto co = space.coordinates(x);
        if (!co) throw std::logic_error("expected a cocycle within the classified span");
        return Vec(co->begin() + boundary_dim, co->end());
    }
};

using MonoCache = std::map<int, std::vector<Monomial>>;
using MonoCachePtr = std::shared_ptr<MonoCache>;

const std::vector<Monomial>& mono_basis(const SemifreeCdga& a, MonoCache& cache, int degree) {
    auto it = cache.find(degree);
    if (it == cache.end()) {
        std::vector<Monomial> b;
        if (degree >= 0) b = a.monomial_basis(degree);
        it = cache.emplace(degree, std::move(b)).first;
    }
    return it->second;
}

/* The middle slots of a bar word: a basis of the augmentation ideal per
   positive degree, with products and differentials in basis coordinates. */
struct MidSystem {
    int amin = std::numeric_limits<int>::max(); /* least positive basis degree */
    std::function<int(int)> dim;
    std::function<std::string(int, int)> label;
    /* (d1,i1)*(d2,i2) in degree d1+d2 coordinates */
    std::function<Vec(int, int, int, int)> mul;
    /* differential of (d,i) in degree d+1 coordinates */
    std::function<Vec(int, int)> diff;
};

MidSystem cdga_mid(const SemifreeCdga& a, const MonoCachePtr& cache) {
    MidSystem s;
    int amin = std::numeric_limits<int>::max();
    for (int i = 0; i < a.num_generators(); ++i)
        amin = std::min(amin, a.generator(i).degree);
    s.amin = amin;
    s.dim = [&a, cache](int d) {
        return d >= 1 ? static_cast<int>(mono_basis(a, *cache, d).size()) : 0;
    };
    s.label = [&a, cache](int d, int i) { return a.format(mono_basis(a, *cache, d)[i]); };
    s.mul = [&a, cache](int d1, int i1, int d2, int i2) {
        const Monomial& m1 = mono_basis(a, *cache, d1)[i1];
        const Monomial& m2 = mono_basis(a, *cache, d2)[i2];
        const auto& target = mono_basis(a, *cache, d1 + d2);
        auto prod = a.multiply_monomials(m1, m2);
        if (!prod) return zero_vec(static_cast<int>(target.size()));
        return a.coords(element_of(prod->second, Rational(prod->first)), target);
    };
    s.diff = [&a, cache](int d, int i) {
        AlgElement de = a.extend_derivation(element_of(mono_basis(a, *cache, d)[i]));
        return a.coords(de, mono_basis(a, *cache, d + 1));
    };
    return s;
}

MidSystem graded_mid(const GradedAlgebraTable& h) {
    MidSystem s;
    int amin = std::numeric_limits<int>::max();
    for (const auto& [d, labs] : h.basis.all())
        if (d >= 1 && !labs.empty()) amin = std::min(amin, d);
    s.amin = amin;
    s.dim = [&h](int d) { return d >= 1 ? h.dim(d) : 0; };
    s.label = [&h](int d, int i) { return h.basis.labels(d).at(i); };
    s.mul = [&h](int d1, int i1, int d2, int i2) { return h.multiply(d1, i1, d2, i2); };
    s.diff = [&h](int d, int i) {
        (void)i;
        return zero_vec(h.dim(d + 1));
    };
    return s;
}

/* An end slot of a bar word: a windowed module with its differential and the
   left action of middle-slot elements.  `degrees` lists where the basis is
   nonzero so enumeration never walks a huge window. */
struct EndSystem {
    DegreeWindow win{0, 0};
    std::vector<int> degrees;
    bool in_label = true;
    std::function<int(int)> dim;
    std::function<std::string(int, int)> label;
    std::function<SparseMatrix(int)> diff;
    /* (adeg,aidx) from the mid basis acting on coordinates at mdeg */
    std::function<std::optional<Vec>(int, int, int, const Vec&)> act;
};

EndSystem table_end(const ModuleTable& t, const SemifreeCdga& a, const MonoCachePtr& cache) {
    EndSystem s;
    s.win = t.window();
    for (int d = s.win.lo; d <= s.win.hi; ++d)
        if (t.complex.dim(d) > 0) s.degrees.push_back(d);
    s.dim = [&t](int d) { return t.complex.dim(d); };
    s.label = [&t](int d, int i) { return t.complex.labels(d).at(i); };
    s.diff = [&t](int d) { return t.complex.d(d); };
    s.act = [&t, &a, cache](int ad, int ai, int md, const Vec& v) {
        return t.act(element_of(mono_basis(a, *cache, ad)[ai]), md, v);
    };
    return s;
}

/* The algebra as the free rank-one module over itself on [0, hi]. */
EndSystem algebra_end(const SemifreeCdga& a, const MonoCachePtr& cache, int hi) {
    EndSystem s;
    s.win = DegreeWindow{0, hi + 1};
    for (int d = 0; d <= hi + 1; ++d)
        if (!mono_basis(a, *cache, d).empty()) s.degrees.push_back(d);
    s.dim = [&a, cache](int d) {
        return d >= 0 ? static_cast<int>(mono_basis(a, *cache, d).size()) : 0;
    };
    s.label = [&a, cache](int d, int i) { return a.format(mono_basis(a, *cache, d)[i]); };
    s.diff = [&a, cache](int d) {
        const auto& src = mono_basis(a, *cache, d);
        const auto& tgt = mono_basis(a, *cache, d + 1);
        SparseMatrix m(static_cast<int>(tgt.size()), static_cast<int>(src.size()));
        for (int j = 0; j < static_cast<int>(src.size()); ++j) {
            Vec col = a.coords(a.extend_derivation(element_of(src[j])), tgt);
            for (int r = 0; r < static_cast<int>(tgt.size()); ++r)
                if (!is_zero(col[r])) m.set(r, j, col[r]);
        }
        return m;
    };
    s.act = [&a, cache](int ad, int ai, int md, const Vec& v) -> std::optional<Vec> {
        const Monomial& am = mono_basis(a, *cache, ad)[ai];
        const auto& src = mono_basis(a, *cache, md);
        const auto& tgt = mono_basis(a, *cache, ad + md);
        Vec out = zero_vec(static_cast<int>(tgt.size()));
        for (int i = 0; i < static_cast<int>(src.size()); ++i) {
            if (is_zero(v[i])) continue;
            auto prod = a.multiply_monomials(am, src[i]);
            if (!prod) continue;
            out = add_vec(out, a.coords(element_of(prod->second, Rational(prod->first) * v[i]), tgt));
        }
        return out;
    };
    return s;
}

EndSystem graded_end(const GradedModuleTable& g) {
    EndSystem s;
    s.win = g.window;
    for (const auto& [d, labs] : g.labels)
        if (!labs.empty()) s.degrees.push_back(d);
    s.dim = [&g](int d) { return g.dim(d); };
    s.label = [&g](int d, int i) { return g.labels.at(d).at(i); };
    s.diff = [&g](int d) { return SparseMatrix(g.dim(d + 1), g.dim(d)); };
    s.act = [&g](int ad, int ai, int md, const Vec& v) { return g.act(ad, ai, md, v); };
    return s;
}

/* The implicit unit left entry of a one-sided generator word. */
EndSystem trivial_left() {
    EndSystem s;
    s.win = DegreeWindow{0, 1};
    s.degrees = {0};
    s.in_label = false;
    s.dim = [](int d) { return d == 0 ? 1 : 0; };
    s.label = [](int, int) { return std::string(); };
    s.diff = [](int d) { return SparseMatrix(0, d == 0 ? 1 : 0); };
    s.act = [](int, int, int, const Vec&) -> std::optional<Vec> { return std::nullopt; };
    return s;
}

/* One bar word m[a_1|...|a_p]n in basis indices; canonical order sorts by
   (length, left degree, left index, middle slots, right degree, right index). */
struct Word {
    int ldeg = 0, lidx = 0;
    std::vector<std::pair<int, int>> mids;
    int rdeg = 0, ridx = 0;

    int length() const { return static_cast<int>(mids.size()); }
    auto key() const {
        return std::make_tuple(static_cast<int>(mids.size()), ldeg, lidx, mids, rdeg, ridx);
    }
    bool operator<(const Word& o) const { return key() < o.key(); }
};

struct WordSet {
    DegreeWindow trange{0, 0};
    std::map<int, std::vector<Word>> words;
    std::map<int, std::map<Word, int>> index;

    int dim(int t) const {
        auto it = words.find(t);
        return it == words.end() ? 0 : static_cast<int>(it->second.size());
    }
};

/* All words of total degree in trange and length at most max_len.  A word of
   length p has total degree |m| + sum|a_i| + |n| - p. */
WordSet enumerate_words(const EndSystem& left, const MidSystem& mid, const EndSystem& right,
                        int max_len, const DegreeWindow& trange) {
    WordSet ws;
    ws.trange = trange;
    for (int t = trange.lo; t <= trange.hi; ++t) {
        std::vector<Word> acc;
        for (int p = 0; p <= max_len; ++p) {
            if (p > 0 && mid.amin == std::numeric_limits<int>::max()) break;
            for (int ld : left.degrees) {
                for (int rd : right.degrees) {
                    int budget = t + p - ld - rd;
                    if (p == 0 && budget != 0) continue;
                    if (p > 0 && budget < p * mid.amin) continue;
                    Word wd;
                    wd.ldeg = ld;
                    wd.rdeg = rd;
                    wd.mids.resize(p);
                    std::function<void(int)> fill_idx = [&](int slot) {
                        if (slot == p) {
                            for (int li = 0; li < left.dim(ld); ++li)
                                for (int ri = 0; ri < right.dim(rd); ++ri) {
                                    wd.lidx = li;
                                    wd.ridx = ri;
                                    acc.push_back(wd);
                                }
                            return;
                        }
                        for (int i = 0; i < mid.dim(wd.mids[slot].first); ++i) {
                            wd.mids[slot].second = i;
                            fill_idx(slot + 1);
                        }
                    };
                    std::function<void(int, int)> place = [&](int slot, int rest) {
                        if (slot == p) {
                            if (rest == 0) fill_idx(0);
                            return;
                        }
                        int dmax = rest - (p - 1 - slot) * mid.amin;
                        for (int d = mid.amin; d <= dmax; ++d) {
                            if (mid.dim(d) == 0) continue;
                            wd.mids[slot].first = d;
                            place(slot + 1, rest - d);
                        }
                    };
                    place(0, budget);
                }
            }
        }
        if (!acc.empty()) {
            std::sort(acc.begin(), acc.end());
            auto& im = ws.index[t];
            for (int i = 0; i < static_cast<int>(acc.size()); ++i) im.emplace(acc[i], i);
            ws.words.emplace(t, std::move(acc));
        }
    }
    return ws;
}

std::string word_label(const Word& x, const EndSystem& left, const MidSystem& mid,
                       const EndSystem& right) {
    std::string s;
    if (left.in_label) s += left.label(x.ldeg, x.lidx);
    s += "[";
    for (int j = 0; j < x.length(); ++j) {
        if (j) s += "|";
        s += mid.label(x.mids[j].first, x.mids[j].second);
    }
    s += "]";
    s += right.label(x.rdeg, x.ridx);
    return s;
}

/* The bar differential of one word as a column over the degree-(t+1) words:
   faces sum_{i=0..p} (-1)^i d_i (face 0 folds a_1 into the left entry as a
   right action, carrying the Koszul flip; face p acts a_p on the right entry)
   plus (-1)^p times the internal differential, whose summand on a slot hops
   over everything to its left. */
Vec word_column(const Word& x, int t, const EndSystem& left, const MidSystem& mid,
                const EndSystem& right, const WordSet& ws) {
    const int p = x.length();
    Vec out = zero_vec(ws.dim(t + 1));
    auto add_word = [&](const Word& y, const Rational& c) {
        if (is_zero(c)) return;
        auto dit = ws.index.find(t + 1);
        if (dit != ws.index.end()) {
            auto it = dit->second.find(y);
            if (it != dit->second.end()) {
                out[it->second] = out[it->second] + c;
                return;
            }
        }
        throw std::logic_error("bar word escaped the enumeration");
    };

    if (p >= 1) {
        { /* face 0 */
            const auto [ad, ai] = x.mids[0];
            auto acted = left.act(ad, ai, x.ldeg, unit_vec(left.dim(x.ldeg), x.lidx));
            if (!acted) throw std::invalid_argument("left window cannot absorb a bar face");
            Rational s = sign_if(odd(ad) && odd(x.ldeg));
            Word y = x;
            y.mids.erase(y.mids.begin());
            y.ldeg = x.ldeg + ad;
            for (int r = 0; r < static_cast<int>(acted->size()); ++r) {
                y.lidx = r;
                add_word(y, s * (*acted)[r]);
            }
        }
        for (int i = 1; i <= p - 1; ++i) { /* merge faces */
            const auto [d1, i1] = x.mids[i - 1];
            const auto [d2, i2] = x.mids[i];
            Vec prod = mid.mul(d1, i1, d2, i2);
            Rational s = sign_if(odd(i));
            Word y = x;
            y.mids.erase(y.mids.begin() + i);
            for (int r = 0; r < static_cast<int>(prod.size()); ++r) {
                if (is_zero(prod[r])) continue;
                y.mids[i - 1] = {d1 + d2, r};
                add_word(y, s * prod[r]);
            }
        }
        { /* face p */
            const auto [ad, ai] = x.mids[p - 1];
            auto acted = right.act(ad, ai, x.rdeg, unit_vec(right.dim(x.rdeg), x.ridx));
            if (!acted) throw std::invalid_argument("right window cannot absorb a bar face");
            Rational s = sign_if(odd(p));
            Word y = x;
            y.mids.pop_back();
            y.rdeg = x.rdeg + ad;
            for (int r = 0; r < static_cast<int>(acted->size()); ++r) {
                y.ridx = r;
                add_word(y, s * (*acted)[r]);
            }
        }
    }

    Rational front = sign_if(odd(p));
    { /* internal differential: left entry */
        Vec dl = left.diff(x.ldeg).apply(unit_vec(left.dim(x.ldeg), x.lidx));
        Word y = x;
        y.ldeg = x.ldeg + 1;
        for (int r = 0; r < static_cast<int>(dl.size()); ++r) {
            y.lidx = r;
            add_word(y, front * dl[r]);
        }
    }
    int hop = x.ldeg;
    for (int j = 0; j < p; ++j) { /* internal differential: middle slots */
        const auto [d, i] = x.mids[j];
        Vec dv = mid.diff(d, i);
        Rational s = front * sign_if(odd(hop));
        Word y = x;
        for (int r = 0; r < static_cast<int>(dv.size()); ++r) {
            if (is_zero(dv[r])) continue;
            y.mids[j] = {d + 1, r};
            add_word(y, s * dv[r]);
        }
        hop += d;
    }
    { /* internal differential: right entry */
        Vec dr = right.diff(x.rdeg).apply(unit_vec(right.dim(x.rdeg), x.ridx));
        Rational s = front * sign_if(odd(hop));
        Word y = x;
        y.rdeg = x.rdeg + 1;
        for (int r = 0; r < static_cast<int>(dr.size()); ++r) {
            y.ridx = r;
            add_word(y, s * dr[r]);
        }
    }
    return out;
}

struct BuiltComplex {
    CochainComplexWindow complex;
    std::map<int, std::vector<int>> lengths;
};

BuiltComplex build_bar_complex(const WordSet& ws, const EndSystem& left, const MidSystem& mid,
                               const EndSystem& right, const DegreeWindow& w) {
    BasisLabeledSpace space;
    std::map<int, std::vector<int>> lengths;
    for (const auto& [t, list] : ws.words) {
        std::vector<std::string> labs;
        auto& lens = lengths[t];
        for (const Word& x : list) {
            labs.push_back(word_label(x, left, mid, right));
            lens.push_back(x.length());
        }
        space.set_basis(t, labs);
    }
    std::map<int, SparseMatrix> diffs;
    for (int t = w.lo; t < w.hi; ++t) {
        int cols = ws.dim(t);
        if (cols == 0) continue;
        SparseMatrix m(ws.dim(t + 1), cols);
        for (int j = 0; j < cols; ++j) {
            Vec col = word_column(ws.words.at(t)[j], t, left, mid, right, ws);
            for (int r = 0; r < static_cast<int>(col.size()); ++r)
                if (!is_zero(col[r])) m.set(r, j, col[r]);
        }
        diffs.emplace(t, std::move(m));
    }
    return BuiltComplex{CochainComplexWindow(w, std::move(space), std::move(diffs)),
                        std::move(lengths)};
}

struct Cert {
    bool complete = false;
    std::string text;
};

/* A word of length s has total degree at least s*(amin - 1) above the entry
   minima, so lengths beyond excess/(amin - 1) cannot meet the window. */
Cert word_length_certificate(int amin, int max_len, int excess) {
    Cert c;
    if (amin == std::numeric_limits<int>::max()) {
        c.complete = true;
        c.text = "simply connected: words of length > " + std::to_string(max_len) +
                 " cannot meet the window";
        return c;
    }
    if (amin <= 1) {
        c.complete = false;
        c.text = "capped: possibly incomplete (degree-one classes admit words of every length)";
        return c;
    }
    int required = excess <= 0 ? 0 : excess / (amin - 1);
    c.complete = max_len >= required;
    if (c.complete)
        c.text = "simply connected: words of length > " + std::to_string(max_len) +
                 " cannot meet the window";
    else
        c.text = "capped: possibly incomplete (length " + std::to_string(required) +
                 " certifies this window)";
    return c;
}

/* One summand of the bar differential of a generator word, with the target
   resolved to its position; extraction components carry the slot element
   folded out into the module coefficient. */
struct DComp {
    Rational c;
    bool extraction = false;
    int adeg = 0, aidx = 0;
    int tdeg = 0, tpos = 0;
};

/* Components of D on a one-sided generator word (a_1|...|a_p)n.  Targets
   outside the word range are dropped: every hom pairing they could enter
   uses a module degree where the target module has no basis. */
std::vector<DComp> word_components(const Word& x, int t, const MidSystem& mid,
                                   const EndSystem& nsys, const WordSet& ws) {
    std::vector<DComp> out;
    const int p = x.length();
    auto resolve = [&](const Word& y, int tdeg, const Rational& c, bool extraction, int adeg,
                       int aidx) {
        if (is_zero(c)) return;
        auto dit = ws.index.find(tdeg);
        if (dit == ws.index.end()) throw std::logic_error("bar word escaped the enumeration");
        auto it = dit->second.find(y);
        if (it == dit->second.end()) throw std::logic_error("bar word escaped the enumeration");
        out.push_back(DComp{c, extraction, adeg, aidx, tdeg, it->second});
    };
    bool unit_in_range = t + 1 <= ws.trange.hi;

    if (p >= 1) {
        { /* face 0 extracts the first slot into the coefficient */
            const auto [ad, ai] = x.mids[0];
            if (t + 1 - ad >= ws.trange.lo && t + 1 - ad <= ws.trange.hi) {
                Word y = x;
                y.mids.erase(y.mids.begin());
                resolve(y, t + 1 - ad, Rational(1), true, ad, ai);
            }
        }
        if (unit_in_range) {
            for (int i = 1; i <= p - 1; ++i) {
                const auto [d1, i1] = x.mids[i - 1];
                const auto [d2, i2] = x.mids[i];
                Vec prod = mid.mul(d1, i1, d2, i2);
                Rational s = sign_if(odd(i));
                Word y = x;
                y.mids.erase(y.mids.begin() + i);
                for (int r = 0; r < static_cast<int>(prod.size()); ++r) {
                    if (is_zero(prod[r])) continue;
                    y.mids[i - 1] = {d1 + d2, r};
                    resolve(y, t + 1, s * prod[r], false, 0, 0);
                }
            }
            { /* face p */
                const auto [ad, ai] = x.mids[p - 1];
                auto acted = nsys.act(ad, ai, x.rdeg, unit_vec(nsys.dim(x.rdeg), x.ridx));
                if (!acted) throw std::invalid_argument("coefficient window cannot absorb a bar face");
                Rational s = sign_if(odd(p));
                Word y = x;
                y.mids.pop_back();
                y.rdeg = x.rdeg + ad;
                for (int r = 0; r < static_cast<int>(acted->size()); ++r) {
                    y.ridx = r;
                    resolve(y, t + 1, s * (*acted)[r], false, 0, 0);
                }
            }
        }
    }
    if (unit_in_range) {
        Rational front = sign_if(odd(p));
        int hop = 0;
        for (int j = 0; j < p; ++j) {
            const auto [d, i] = x.mids[j];
            Vec dv = mid.diff(d, i);
            Rational s = front * sign_if(odd(hop));
            Word y = x;
            for (int r = 0; r < static_cast<int>(dv.size()); ++r) {
                if (is_zero(dv[r])) continue;
                y.mids[j] = {d + 1, r};
                resolve(y, t + 1, s * dv[r], false, 0, 0);
            }
            hop += d;
        }
        {
            Vec dr = nsys.diff(x.rdeg).apply(unit_vec(nsys.dim(x.rdeg), x.ridx));
            Rational s = front * sign_if(odd(hop));
            Word y = x;
            y.rdeg = x.rdeg + 1;
            for (int r = 0; r < static_cast<int>(dr.size()); ++r) {
                y.ridx = r;
                resolve(y, t + 1, s * dr[r], false, 0, 0);
            }
        }
    }
    return out;
}

struct HomBuilt {
    CochainComplexWindow complex;
    std::map<int, std::vector<int>> lengths;
    Cert cert;
};

/* Hom_A(B(A;A;N), M) over the hom-degree window.  Basis at degree k: pairs
   of a generator word g (total degree t) and an M basis element at k + t.
   (d lambda)(g) = d_M(lambda g) - (-1)^k lambda(D g), with A-linearity
   lambda(a y) = (-1)^{k |a|} a lambda(y) folding extraction components into
   the M action. */
HomBuilt build_bar_hom(const MidSystem& mid, const EndSystem& nsys, const EndSystem& msys,
                       int max_length, const DegreeWindow& w) {
    if (nsys.degrees.empty() || msys.degrees.empty()) {
        Cert c;
        c.complete = true;
        c.text = "empty module: no words can meet the window";
        return HomBuilt{CochainComplexWindow(w, BasisLabeledSpace{}, {}), {}, c};
    }
    const int n_lo = nsys.degrees.front();
    const int m_lo = msys.degrees.front();
    const int m_hi = msys.degrees.back();
    const int g_lo = m_lo - w.hi;
    const int g_hi = m_hi - w.lo;
    if (nsys.win.lo > g_lo || nsys.win.hi < g_hi)
        throw std::invalid_argument("coefficient window infeasible: needs [" +
                                    std::to_string(g_lo) + ", " + std::to_string(g_hi) + "]");
    if (msys.win.lo > w.lo + g_lo || msys.win.hi < w.hi + g_hi)
        throw std::invalid_argument("target window infeasible: needs [" +
                                    std::to_string(w.lo + g_lo) + ", " +
                                    std::to_string(w.hi + g_hi) + "]");

    EndSystem left = trivial_left();
    WordSet ws = enumerate_words(left, mid, nsys, max_length, DegreeWindow{g_lo, g_hi});
    Cert cert = word_length_certificate(mid.amin, max_length, g_hi - n_lo);

    /* pair bookkeeping per hom degree, ordered by (t, word, m index) */
    std::map<int, std::vector<std::tuple<int, int, int>>> pairs;
    std::map<int, std::map<std::tuple<int, int, int>, int>> pidx;
    BasisLabeledSpace space;
    std::map<int, std::vector<int>> lengths;
    for (int k = w.lo; k <= w.hi; ++k) {
        auto& list = pairs[k];
        auto& pm = pidx[k];
        std::vector<std::string> labs;
        for (const auto& [t, wl] : ws.words) {
            int mdim = msys.dim(k + t);
            if (mdim == 0) continue;
            for (int wpos = 0; wpos < static_cast<int>(wl.size()); ++wpos)
                for (int mi = 0; mi < mdim; ++mi) {
                    pm.emplace(std::make_tuple(t, wpos, mi), static_cast<int>(list.size()));
                    list.emplace_back(t, wpos, mi);
                    labs.push_back(word_label(wl[wpos], left, mid, nsys) + "->" +
                                   msys.label(k + t, mi));
                    lengths[k].push_back(wl[wpos].length());
                }
        }
        if (!labs.empty()) space.set_basis(k, labs);
    }

    std::map<std::pair<int, int>, std::vector<DComp>> comps;
    for (const auto& [t, wl] : ws.words)
        for (int i = 0; i < static_cast<int>(wl.size()); ++i)
            comps.emplace(std::make_pair(t, i), word_components(wl[i], t, mid, nsys, ws));

    std::map<int, SparseMatrix> diffs;
    for (int k = w.lo; k < w.hi; ++k) {
        const auto& cls = pairs.at(k);
        if (cls.empty()) continue;
        const auto& rix = pidx.at(k + 1);
        SparseMatrix dm(static_cast<int>(pairs.at(k + 1).size()), static_cast<int>(cls.size()));
        Rational ksg = sign_if(odd(k));

        /* post-composition with d_M */
        for (int c0 = 0; c0 < static_cast<int>(cls.size()); ++c0) {
            const auto& [t, wpos, j] = cls[c0];
            SparseMatrix dmat = msys.diff(k + t);
            for (const auto& [r, cc, v] : dmat.entries()) {
                if (cc != j) continue;
                dm.add_to(rix.at(std::make_tuple(t, wpos, r)), c0, v);
            }
        }

        /* pre-composition with D: a row word couples to the columns its
           components target */
        const auto& cix = pidx.at(k);
        for (const auto& [key, comp_list] : comps) {
            const auto& [tg, gpos] = key;
            for (const DComp& comp : comp_list) {
                int mu = k + comp.tdeg;
                int mdim = msys.dim(mu);
                if (mdim == 0) continue;
                if (!comp.extraction) {
                    Rational f = Rational(-1) * ksg * comp.c;
                    for (int j = 0; j < mdim; ++j)
                        dm.add_to(rix.at(std::make_tuple(tg, gpos, j)),
                                  cix.at(std::make_tuple(comp.tdeg, comp.tpos, j)), f);
                } else {
                    Rational f = Rational(-1) * ksg * comp.c *
                                 sign_if(odd(k) && odd(comp.adeg));
                    for (int j = 0; j < mdim; ++j) {
                        auto av = msys.act(comp.adeg, comp.aidx, mu, unit_vec(mdim, j));
                        if (!av)
                            throw std::invalid_argument(
                                "target window cannot absorb the extracted action");
                        int col = cix.at(std::make_tuple(comp.tdeg, comp.tpos, j));
                        for (int r = 0; r < static_cast<int>(av->size()); ++r)
                            if (!is_zero((*av)[r]))
                                dm.add_to(rix.at(std::make_tuple(tg, gpos, r)), col,
                                          f * (*av)[r]);
                    }
                }
            }
        }
        diffs.emplace(k, std::move(dm));
    }

    CochainComplexWindow complex(w, std::move(space), std::move(diffs));
    if (!complex.differential_squares_to_zero())
        throw std::logic_error("hom differential failed to square to zero");
    return HomBuilt{std::move(complex), std::move(lengths), cert};
}

}  // namespace

int GradedModuleTable::dim(int degree) const {
    auto it = labels.find(degree);
    return it == labels.end() ? 0 : static_cast<int>(it->second.size());
}

std::optional<Vec> GradedModuleTable::act(int adeg, int aidx, int mdeg, const Vec& v) const {
    int target = adeg + mdeg;
    if (!window.contains(mdeg) || !window.contains(target)) return std::nullopt;
    if (dim(mdeg) == 0) return zero_vec(dim(target));
    auto it = action.find(std::make_tuple(adeg, aidx, mdeg));
    if (it == action.end()) return std::nullopt;
    return it->second.apply(v);
}

BarResolution bar_resolution(const SemifreeCdga& a, const ModuleTable& n, int max_length,
                             const DegreeWindow& w) {
    if (max_length < 0) throw std::invalid_argument("word length cap must be nonnegative");
    const DegreeWindow nw = n.window();
    if (nw.lo > w.lo || nw.hi < w.hi)
        throw std::invalid_argument("coefficient window infeasible: must cover [" +
                                    std::to_string(w.lo) + ", " + std::to_string(w.hi) + "]");
    auto cache = std::make_shared<MonoCache>();
    EndSystem right = table_end(n, a, cache);
    MidSystem mid = cdga_mid(a, cache);
    if (right.degrees.empty()) {
        Cert c;
        c.complete = true;
        c.text = "empty coefficients: no words can meet the window";
        BarResolution out{BarComplexWindow{CochainComplexWindow(w, BasisLabeledSpace{}, {}),
                                           {},
                                           max_length,
                                           c.complete,
                                           c.text},
                          {}};
        for (int t = w.lo; t <= w.hi; ++t)
            out.augmentation.emplace(t, SparseMatrix(n.complex.dim(t), 0));
        return out;
    }
    const int nmin = right.degrees.front();
    EndSystem left = algebra_end(a, cache, std::max(0, w.hi - nmin));
    WordSet ws = enumerate_words(left, mid, right, max_length, w);
    BuiltComplex built = build_bar_complex(ws, left, mid, right, w);
    if (!built.complex.differential_squares_to_zero())
        throw std::logic_error("bar differential failed to square to zero");
    Cert cert = word_length_certificate(mid.amin, max_length, w.hi - nmin);

    BarResolution out{BarComplexWindow{std::move(built.complex), std::move(built.lengths),
                                       max_length, cert.complete, cert.text},
                      {}};
    for (int t = w.lo; t <= w.hi; ++t) {
        SparseMatrix m(n.complex.dim(t), ws.dim(t));
        auto it = ws.words.find(t);
        if (it != ws.words.end())
            for (int j = 0; j < static_cast<int>(it->second.size()); ++j) {
                const Word& x = it->second[j];
                if (x.length() != 0) continue;
                auto acted = n.act(element_of(mono_basis(a, *cache, x.ldeg)[x.lidx]), x.rdeg,
                                   unit_vec(n.complex.dim(x.rdeg), x.ridx));
                if (!acted)
                    throw std::invalid_argument("coefficient window cannot evaluate the augmentation");
                for (int r = 0; r < static_cast<int>(acted->size()); ++r)
                    if (!is_zero((*acted)[r])) m.set(r, j, (*acted)[r]);
            }
        out.augmentation.emplace(t, std::move(m));
    }
    return out;
}

TorResult derived_tensor_tor(const ModuleTable& m, const ModuleTable& n, int max_length,
                             const DegreeWindow& w) {
    if (max_length < 0) throw std::invalid_argument("word length cap must be nonnegative");
    if (!(m.base == n.base)) throw std::invalid_argument("factors live over different algebras");
    auto cache = std::make_shared<MonoCache>();
    const SemifreeCdga& a = m.base;
    EndSystem left = table_end(m, a, cache);
    EndSystem right = table_end(n, a, cache);
    MidSystem mid = cdga_mid(a, cache);
    int mmin = 0, nmin = 0;
    if (!left.degrees.empty() && !right.degrees.empty()) {
        mmin = left.degrees.front();
        nmin = right.degrees.front();
        if (left.win.hi < w.hi - nmin)
            throw std::invalid_argument("left factor window infeasible: must reach " +
                                        std::to_string(w.hi - nmin));
        if (right.win.hi < w.hi - mmin)
            throw std::invalid_argument("right factor window infeasible: must reach " +
                                        std::to_string(w.hi - mmin));
    }
    WordSet ws = enumerate_words(left, mid, right, max_length, w);
    BuiltComplex built = build_bar_complex(ws, left, mid, right, w);
    if (!built.complex.differential_squares_to_zero())
        throw std::logic_error("bar differential failed to square to zero");
    Cert cert = word_length_certificate(mid.amin, max_length, w.hi - mmin - nmin);
    CohomologyResult h = cohomology_window(built.complex);

    TorResult out;
    out.window = w;
    for (const auto& [t, list] : ws.words)
        for (const Word& x : list) out.word_counts[{x.length(), t}] += 1;
    for (int t = w.lo; t <= w.hi; ++t) {
        out.tor_dims[t] = h.dim(t);
        out.incomplete[t] = h.by_degree.at(t).boundary_incomplete || !cert.complete;
    }
    out.complete = cert.complete;
    out.certificate = cert.text;
    return out;
}

TorResult derived_tensor_tor(const SemifreeModule& m, const SemifreeModule& n, int max_length,
                             const DegreeWindow& w) {
    auto min_gen = [](const SemifreeModule& x) {
        if (x.num_generators() == 0) return 0;
        int v = std::numeric_limits<int>::max();
        for (int i = 0; i < x.num_generators(); ++i) v = std::min(v, x.generator(i).degree);
        return v;
    };
    int mmin = min_gen(m), nmin = min_gen(n);
    DegreeWindow mw{std::min(mmin, w.lo) - 1, std::max({w.hi - nmin, mmin, w.hi}) + 1};
    DegreeWindow nw{std::min(nmin, w.lo) - 1, std::max({w.hi - mmin, nmin, w.hi}) + 1};
    return derived_tensor_tor(from_semifree(m, mw), from_semifree(n, nw), max_length, w);
}

BarHomComplex bar_hom_complex(const SemifreeCdga& a, const ModuleTable& n, const ModuleTable& m,
                              int max_length, const DegreeWindow& w) {
    if (max_length < 0) throw std::invalid_argument("word length cap must be nonnegative");
    auto cache = std::make_shared<MonoCache>();
    EndSystem nsys = table_end(n, a, cache);
    EndSystem msys = table_end(m, a, cache);
    MidSystem mid = cdga_mid(a, cache);
    HomBuilt built = build_bar_hom(mid, nsys, msys, max_length, w);
    return BarHomComplex{std::move(built.complex), std::move(built.lengths), max_length,
                         built.cert.complete, built.cert.text};
}

ExtResult ext_via_bar(const SemifreeCdga& a, const ModuleTable& n, const ModuleTable& m,
                      int max_length, const DegreeWindow& w) {
    BarHomComplex hc = bar_hom_complex(a, n, m, max_length, w);
    CohomologyResult h = cohomology_window(hc.complex);
    ExtResult out;
    out.window = w;
    out.complete = hc.complete;
    out.certificate = hc.certificate;
    for (int k = w.lo; k <= w.hi; ++k) {
        const auto& hd = h.by_degree.at(k);
        out.dims[k] = hd.dim;
        out.incomplete[k] = hd.boundary_incomplete || !hc.complete;
        std::vector<std::string> labs;
        const auto& basis_labs = hc.complex.labels(k);
        for (const Vec& rep : hd.representatives) labs.push_back(render_element(basis_labs, rep));
        out.basis_labels[k] = std::move(labs);
    }
    return out;
}

GradedModuleTable q_graded_module(const GradedAlgebraTable& h) {
    GradedModuleTable g;
    g.window = DegreeWindow{-1048576, 1048576};
    g.labels[0] = {"1"};
    SparseMatrix id(1, 1);
    id.set(0, 0, Rational(1));
    g.action.emplace(std::make_tuple(0, 0, 0), std::move(id));
    for (const auto& [d, labs] : h.basis.all()) {
        if (d < 1) continue;
        for (int i = 0; i < static_cast<int>(labs.size()); ++i)
            g.action.emplace(std::make_tuple(d, i, 0), SparseMatrix(0, 1));
    }
    return g;
}

GradedModuleTable cohomology_module_table(const GradedAlgebraTable& h, const ModuleTable& n,
                                          const DegreeWindow& w) {
    const DegreeWindow nw = n.window();
    if (w.lo <= nw.lo || w.hi >= nw.hi)
        throw std::invalid_argument("window must sit strictly inside the module window");
    CohomologyResult ch = module_cohomology(n, nw);

    GradedModuleTable g;
    g.window = w;
    for (int k = w.lo; k <= w.hi; ++k) {
        const auto& hd = ch.by_degree.at(k);
        if (hd.dim == 0) continue;
        std::vector<std::string> labs;
        for (const Vec& rep : hd.representatives)
            labs.push_back(render_element(n.complex.labels(k), rep));
        g.labels.emplace(k, std::move(labs));
    }
    /* products at the cochain level, reduced against the class basis;
       products leaving the window stay absent */
    for (const auto& [ad, alabs] : h.basis.all()) {
        for (int ai = 0; ai < static_cast<int>(alabs.size()); ++ai) {
            const AlgElement& rep_a = h.reps.at(ad).at(ai);
            for (const auto& [mdeg, mlabs] : g.labels) {
                int target = ad + mdeg;
                if (!w.contains(target)) continue;
                ClassCoords red(n.complex, ch, target);
                SparseMatrix mat(g.dim(target), static_cast<int>(mlabs.size()));
                for (int j = 0; j < static_cast<int>(mlabs.size()); ++j) {
                    auto acted = n.act(rep_a, mdeg, ch.by_degree.at(mdeg).representatives.at(j));
                    if (!acted)
                        throw std::invalid_argument("module window cannot evaluate the product");
                    Vec cls = red.class_coords(*acted);
                    for (int r = 0; r < static_cast<int>(cls.size()); ++r)
                        if (!is_zero(cls[r])) mat.set(r, j, cls[r]);
                }
                g.action.emplace(std::make_tuple(ad, ai, mdeg), std::move(mat));
            }
        }
    }
    return g;
}

BigradedExt graded_algebra_bar(const GradedAlgebraTable& h, const GradedModuleTable& hn,
                               const GradedModuleTable& hm, int max_length,
                               const DegreeWindow& w) {
    if (max_length < 0) throw std::invalid_argument("word length cap must be nonnegative");
    const DegreeWindow wide = w.widened(1);
    MidSystem mid = graded_mid(h);
    EndSystem nsys = graded_end(hn);
    EndSystem msys = graded_end(hm);

    BigradedExt out;
    out.window = w;
    if (nsys.degrees.empty() || msys.degrees.empty()) {
        out.complete = true;
        out.certificate = "empty module: no words can meet the window";
        return out;
    }
    const int n_lo = nsys.degrees.front();
    const int bound = (msys.degrees.back() - wide.lo) + 1 - n_lo;
    for (int d = 1; d <= bound; ++d)
        if (!h.covers(d))
            throw std::invalid_argument("algebra table window infeasible: products needed through degree " +
                                        std::to_string(bound));

    HomBuilt built = build_bar_hom(mid, nsys, msys, max_length, wide);
    out.complete = built.cert.complete;
    out.certificate = built.cert.text;

    /* the differential raises word length by exactly one, so the complex
       splits over the diagonals s = k - length; each diagonal is reindexed
       by length and resolved exactly (degree 0 has nothing below it) */
    std::set<int> diags;
    for (const auto& [k, lens] : built.lengths)
        for (int len : lens) diags.insert(k - len);
    for (int s : diags) {
        BasisLabeledSpace dspace;
        std::map<int, std::map<int, int>> local; /* length -> big position -> local index */
        for (int p = 0; p <= max_length; ++p) {
            int k = s + p;
            if (!wide.contains(k)) continue;
            auto lit = built.lengths.find(k);
            if (lit == built.lengths.end()) continue;
            const auto& labs = built.complex.labels(k);
            auto& lm = local[p];
            std::vector<std::string> sub;
            for (int pos = 0; pos < static_cast<int>(lit->second.size()); ++pos)
                if (lit->second[pos] == p) {
                    lm.emplace(pos, static_cast<int>(sub.size()));
                    sub.push_back(labs.at(pos));
                }
            if (!sub.empty()) dspace.set_basis(p, sub);
        }
        std::map<int, SparseMatrix> ddiffs;
        for (int p = 0; p <= max_length; ++p) {
            auto cit = local.find(p);
            if (cit == local.end() || cit->second.empty()) continue;
            int k = s + p;
            auto rit = local.find(p + 1);
            int rows = rit == local.end() ? 0 : static_cast<int>(rit->second.size());
            SparseMatrix dm(rows, static_cast<int>(cit->second.size()));
            if (built.complex.has_d(k)) {
                SparseMatrix big = built.complex.d(k);
                for (const auto& [r, c, v] : big.entries()) {
                    auto cpos = cit->second.find(c);
                    if (cpos == cit->second.end()) continue;
                    if (rit == local.end())
                        throw std::logic_error("graded bar differential left its diagonal");
                    auto rpos = rit->second.find(r);
                    if (rpos == rit->second.end())
                        throw std::logic_error("graded bar differential left its diagonal");
                    dm.set(rpos->second, cpos->second, v);
                }
            }
            ddiffs.emplace(p, std::move(dm));
        }
        CochainComplexWindow dc(DegreeWindow{0, max_length + 1}, std::move(dspace),
                                std::move(ddiffs));
        CohomologyResult dh = cohomology_window(dc);
        for (int p = 0; p <= max_length; ++p) {
            int dim = dh.dim(p);
            if (dim == 0) continue;
            int k = s + p;
            if (!w.contains(k)) continue;
            out.dims[{p, k}] = dim;
            out.total_dims[k] += dim;
        }
    }
    return out;
}

}  // namespace dgm
