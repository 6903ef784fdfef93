#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "dgm/dgmodule.hpp"

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

/* substitute generators: e over the images' source, images into the target */
ModElement apply_gen_map(const SemifreeCdga& base, const std::vector<ModElement>& images,
                         const ModElement& e) {
    ModElement r;
    for (const auto& [g, a] : e.coeffs())
        for (const auto& [g2, b] : images.at(g).coeffs()) r.add(g2, base.normalize_product(a, b));
    return r;
}

/* stable topological order: dependencies first, ties by listed position */
std::vector<int> triangular_order(const std::vector<ModElement>& diffs) {
    const int n = static_cast<int>(diffs.size());
    std::vector<std::vector<int>> out_edges(n);
    std::vector<int> indeg(n, 0);
    for (int i = 0; i < n; ++i)
        for (const auto& [j, a] : diffs[i].coeffs()) {
            out_edges.at(j).push_back(i);
            ++indeg[i];
        }
    std::set<int> ready;
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.insert(i);
    std::vector<int> order;
    while (!ready.empty()) {
        int i = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(i);
        for (int t : out_edges[i])
            if (--indeg[t] == 0) ready.insert(t);
    }
    if (static_cast<int>(order.size()) != n)
        throw std::logic_error("cyclic generator dependencies");
    return order;
}

/* coordinates of cocycles against (boundaries, then chosen representatives) */
struct ClassReducer {
    Subspace space;
    int boundary_dim = 0;

    ClassReducer(const CochainComplexWindow& c, const CohomologyResult& h, int k)
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

SparseMatrix from_columns(int rows, const std::vector<Vec>& cols) {
    SparseMatrix m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
        for (int r = 0; r < rows; ++r)
            if (!is_zero(cols[j][r])) m.set(r, j, cols[j][r]);
    return m;
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

}  // namespace

MinimizeResult minimize(const SemifreeModule& m) {
    ModuleValidation val = validate_module(m);
    if (!val.valid)
        throw std::invalid_argument("minimize requires a valid module" +
                                    (val.errors.empty() ? std::string{}
                                                        : ": " + val.errors.front()));
    const SemifreeCdga& base = m.base();
    SemifreeModule cur = m;
    const int n0 = m.num_generators();
    ModuleMorphism proj; /* original -> cur */
    ModuleMorphism sect; /* cur -> original */
    for (int i = 0; i < n0; ++i) {
        proj.images.push_back(ModElement::generator(i));
        sect.images.push_back(ModElement::generator(i));
    }

    for (;;) {
        /* first differential carrying a constant coefficient: dv = c·w + … */
        int v = -1, w = -1;
        Rational c;
        for (int i = 0; i < cur.num_generators() && v < 0; ++i)
            for (const auto& [j, a] : cur.differential(i).coeffs()) {
                auto it = a.terms().find(Monomial{});
                if (it != a.terms().end()) {
                    v = i;
                    w = j;
                    c = it->second;
                    break;
                }
            }
        if (v < 0) break;

        const int n = cur.num_generators();
        const ModElement dv = cur.differential(v);

        /* quotient differentials over the old indexing: substitute
           w ↦ -(1/c)·Σ_{z≠w} dv_z·z and drop v */
        std::vector<ModElement> nd(n);
        for (int u = 0; u < n; ++u) {
            if (u == v || u == w) continue;
            const ModElement& du = cur.differential(u);
            AlgElement bw = du.coeff(w);
            ModElement r;
            for (const auto& [z, bz] : du.coeffs())
                if (z != v && z != w) r.add(z, bz);
            if (!bw.is_zero())
                for (const auto& [z, az] : dv.coeffs()) {
                    if (z == v || z == w) continue;
                    r.add(z, base.normalize_product(bw, az).scaled(Rational(-1) / c));
                }
            nd[u] = std::move(r);
        }

        std::vector<int> kept;
        for (int u = 0; u < n; ++u)
            if (u != v && u != w) kept.push_back(u);
        std::vector<int> compact_of_old(n, -1);
        for (int s2 = 0; s2 < static_cast<int>(kept.size()); ++s2) compact_of_old[kept[s2]] = s2;

        std::vector<ModElement> compact_diffs(kept.size());
        for (int s2 = 0; s2 < static_cast<int>(kept.size()); ++s2) {
            ModElement r;
            for (const auto& [z, az] : nd[kept[s2]].coeffs()) r.add(compact_of_old[z], az);
            compact_diffs[s2] = std::move(r);
        }
        std::vector<int> order = triangular_order(compact_diffs);
        std::vector<int> newpos_of_compact(kept.size());
        for (int p = 0; p < static_cast<int>(order.size()); ++p) newpos_of_compact[order[p]] = p;
        auto newpos_of_old = [&](int u) { return newpos_of_compact[compact_of_old[u]]; };

        SemifreeModule next(base);
        for (int p = 0; p < static_cast<int>(order.size()); ++p) {
            int s2 = order[p];
            ModElement d;
            for (const auto& [z, az] : compact_diffs[s2].coeffs())
                d.add(newpos_of_compact[z], az);
            next.add_generator(cur.generator(kept[s2]).name, cur.generator(kept[s2]).degree,
                               std::move(d));
        }

        /* step projection cur -> next */
        ModuleMorphism pstep;
        pstep.images.resize(n);
        for (int u : kept) pstep.images[u] = ModElement::generator(newpos_of_old(u));
        pstep.images[v] = ModElement{};
        {
            ModElement img;
            for (const auto& [z, az] : dv.coeffs()) {
                if (z == v || z == w) continue;
                img.add(newpos_of_old(z), az.scaled(Rational(-1) / c));
            }
            pstep.images[w] = std::move(img);
        }

        /* step section next -> cur, built along next's triangular order:
           ι(ū) = u - t·v with t = (-1)^{|z_w|}·z_w/c, z = du - ι(d̄ū) */
        ModuleMorphism sstep;
        sstep.images.resize(next.num_generators());
        for (int p = 0; p < next.num_generators(); ++p) {
            int u = kept[order[p]];
            ModElement iota_dbar = apply_gen_map(base, sstep.images, next.differential(p));
            ModElement z = cur.differential(u) - iota_dbar;
            ModElement img = ModElement::generator(u);
            AlgElement zw = z.coeff(w);
            if (!zw.is_zero()) {
                auto dz = base.degree_of(zw);
                int sign = (dz && *dz % 2 != 0) ? -1 : 1;
                AlgElement t = zw.scaled(Rational(sign) / c);
                img.add(v, t.scaled(Rational(-1)));
            }
            if (!(cur.differentiate(img) == iota_dbar))
                throw std::logic_error("cancellation section failed its chain self-check");
            sstep.images[p] = std::move(img);
        }

        for (int i = 0; i < n0; ++i)
            proj.images[i] = apply_gen_map(base, pstep.images, proj.images[i]);
        ModuleMorphism snew;
        for (int p = 0; p < next.num_generators(); ++p)
            snew.images.push_back(apply_gen_map(base, sect.images, sstep.images[p]));
        sect = std::move(snew);
        cur = std::move(next);
    }

    /* re-sort by degree (stable); constant-free differentials keep this
       triangular because every referenced generator has degree <= its own */
    const int n = cur.num_generators();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return cur.generator(x).degree < cur.generator(y).degree;
    });
    bool identity_order = true;
    for (int p = 0; p < n; ++p) identity_order = identity_order && order[p] == p;
    if (!identity_order) {
        std::vector<int> newpos(n);
        for (int p = 0; p < n; ++p) newpos[order[p]] = p;
        SemifreeModule sorted(base);
        for (int p = 0; p < n; ++p) {
            ModElement d;
            for (const auto& [z, az] : cur.differential(order[p]).coeffs())
                d.add(newpos[z], az);
            sorted.add_generator(cur.generator(order[p]).name, cur.generator(order[p]).degree,
                                 std::move(d));
        }
        for (int i = 0; i < n0; ++i) {
            ModElement r;
            for (const auto& [z, az] : proj.images[i].coeffs()) r.add(newpos[z], az);
            proj.images[i] = std::move(r);
        }
        ModuleMorphism s2;
        for (int p = 0; p < n; ++p) s2.images.push_back(sect.images[order[p]]);
        sect = std::move(s2);
        cur = std::move(sorted);
    }

    if (!validate_module(cur).minimal)
        throw std::logic_error("cancellation did not reach a minimal module");
    return MinimizeResult{std::move(cur), std::move(proj), std::move(sect)};
}

ResolutionResult minimal_resolution(const SemifreeCdga& a, const ModuleTable& t,
                                    const DegreeWindow& w, ResolutionCaps caps) {
    if (!(a == t.base)) throw std::invalid_argument("resolution base algebra mismatch");
    DegreeWindow W(w.lo - 1, w.hi + 2);
    if (t.window().lo > W.lo || t.window().hi < W.hi)
        throw std::invalid_argument(
            "resolution window infeasible: the table must cover one degree below and two above");
    const CohomologyResult TH = cohomology_window(t.complex);

    SemifreeModule R(a);
    std::vector<Vec> phi; /* image in the table, one vector per generator */
    int counter = 0;
    bool complete = true;
    int failed_degree = 0;

    std::map<int, ModulePairBasis> basis;
    std::optional<CochainComplexWindow> RC;
    std::optional<CohomologyResult> RH;
    auto recompute = [&] {
        basis = module_basis(R, W);
        RC.emplace(module_complex_window(R, W));
        RH.emplace(cohomology_window(*RC));
    };

    auto phi_of = [&](int k, const Vec& x) {
        Vec out = zero_vec(t.complex.dim(k));
        const ModulePairBasis& pairs = basis.at(k);
        for (int i = 0; i < static_cast<int>(x.size()); ++i) {
            if (is_zero(x[i])) continue;
            auto acted =
                t.act(element_of(pairs[i].second, x[i]), R.generator(pairs[i].first).degree,
                      phi[pairs[i].first]);
            if (!acted) throw std::logic_error("resolution image escaped the table window");
            out = add_vec(out, *acted);
        }
        return out;
    };

    /* class coordinates in H^k of the table */
    auto t_classifier = [&](int k) { return ClassReducer(t.complex, TH, k); };

    auto count_at = [&](int deg) {
        int c = 0;
        for (int i = 0; i < R.num_generators(); ++i)
            if (R.generator(i).degree == deg) ++c;
        return c;
    };

    for (int k = w.lo; k <= w.hi && complete; ++k) {
        int rounds = 0;
        for (;;) {
            recompute();

            /* surjectivity of H^k: adjoin closed generators onto the missing
               classes, in representative order */
            ClassReducer red_k = t_classifier(k);
            const int hk = TH.by_degree.at(k).dim;
            Subspace image(hk);
            for (const Vec& rep : RH->by_degree.at(k).representatives)
                image.insert(red_k.class_coords(phi_of(k, rep)));
            std::vector<int> missing;
            for (int i = 0; i < hk; ++i) {
                Vec e = unit_vec(hk, i);
                if (!image.contains(e)) {
                    missing.push_back(i);
                    image.insert(e);
                }
            }
            bool did_surj = !missing.empty();
            if (did_surj) {
                if (rounds >= caps.max_rounds) {
                    complete = false;
                    failed_degree = k;
                    break;
                }
                if (count_at(k) + static_cast<int>(missing.size()) >
                    caps.max_generators_per_degree) {
                    complete = false;
                    failed_degree = k;
                    break;
                }
                for (int i : missing) {
                    R.add_generator("r_" + std::to_string(counter++), k, {});
                    phi.push_back(TH.by_degree.at(k).representatives.at(i));
                }
                recompute();
            }

            /* injectivity of H^{k+1}: kill kernel classes with generators one
               degree below, mapping onto chosen preimages */
            ClassReducer red_k1 = t_classifier(k + 1);
            const int hk1 = TH.by_degree.at(k + 1).dim;
            const std::vector<Vec>& reps1 = RH->by_degree.at(k + 1).representatives;
            std::vector<Vec> cols;
            for (const Vec& rep : reps1) cols.push_back(red_k1.class_coords(phi_of(k + 1, rep)));
            std::vector<Vec> kernel = kernel_of(from_columns(hk1, cols));
            bool did_inj = !kernel.empty();
            if (!did_surj && !did_inj) break;
            if (did_inj) {
                if (rounds >= caps.max_rounds) {
                    complete = false;
                    failed_degree = k + 1;
                    break;
                }
                if (count_at(k) + static_cast<int>(kernel.size()) >
                    caps.max_generators_per_degree) {
                    complete = false;
                    failed_degree = k + 1;
                    break;
                }
                for (const Vec& kap : kernel) {
                    Vec zvec = zero_vec(RC->dim(k + 1));
                    for (int j = 0; j < static_cast<int>(kap.size()); ++j)
                        if (!is_zero(kap[j])) zvec = add_vec(zvec, scale_vec(kap[j], reps1[j]));
                    ModElement z = module_element(R, basis.at(k + 1), zvec);
                    Vec img = phi_of(k + 1, zvec);
                    auto tsol = solve(t.complex.d(k), img);
                    if (!tsol) throw std::logic_error("null class image is not a boundary");
                    R.add_generator("r_" + std::to_string(counter++), k, std::move(z));
                    phi.push_back(std::move(*tsol));
                }
            }
            ++rounds;
        }
    }

    MinimizeResult mr = minimize(R);
    TableMorphism raw{std::move(phi)};
    TableMorphism map;
    for (int j = 0; j < mr.module.num_generators(); ++j) {
        auto img = apply_table_morphism(R, t, raw, mr.section.images.at(j));
        if (!img) throw std::logic_error("resolution map escaped the table window");
        map.images.push_back(std::move(*img));
    }
    return ResolutionResult{std::move(mr.module), std::move(map), complete, failed_degree};
}

PostnikovSplit split_postnikov(const SemifreeModule& m, int k) {
    if (!validate_module(m).minimal)
        throw std::invalid_argument("postnikov splitting requires a minimal module");
    const SemifreeCdga& base = m.base();
    PostnikovSplit s{SemifreeModule(base), SemifreeModule(base), SemifreeModule(base), {}, {}, k};
    std::vector<int> sub_of(m.num_generators(), -1);
    std::vector<int> quot_of(m.num_generators(), -1);
    std::vector<int> slice_of(m.num_generators(), -1);
    for (int i = 0; i < m.num_generators(); ++i) {
        int deg = m.generator(i).degree;
        if (deg <= k) {
            ModElement d;
            for (const auto& [z, az] : m.differential(i).coeffs()) d.add(sub_of[z], az);
            sub_of[i] = s.sub.add_generator(m.generator(i).name, deg, std::move(d));
        }
        if (deg >= k + 1) {
            ModElement d;
            for (const auto& [z, az] : m.differential(i).coeffs())
                if (quot_of[z] >= 0) d.add(quot_of[z], az);
            quot_of[i] = s.quot.add_generator(m.generator(i).name, deg, std::move(d));
        }
        if (deg == k) {
            ModElement d;
            for (const auto& [z, az] : m.differential(i).coeffs())
                if (slice_of[z] >= 0) d.add(slice_of[z], az);
            slice_of[i] = s.slice.add_generator(m.generator(i).name, deg, std::move(d));
        }
    }
    s.include.images.resize(s.sub.num_generators());
    for (int i = 0; i < m.num_generators(); ++i)
        if (sub_of[i] >= 0) s.include.images[sub_of[i]] = ModElement::generator(i);
    for (int i = 0; i < m.num_generators(); ++i)
        s.project.images.push_back(quot_of[i] >= 0 ? ModElement::generator(quot_of[i])
                                                   : ModElement{});
    return s;
}

std::vector<LesDegreeReport> postnikov_les_check(const SemifreeModule& m, int k,
                                                 const DegreeWindow& w) {
    PostnikovSplit s = split_postnikov(m, k);
    CochainComplexWindow cs = module_complex_window(s.sub, w);
    CochainComplexWindow cm = module_complex_window(m, w);
    CochainComplexWindow cq = module_complex_window(s.quot, w);
    CohomologyResult hs = cohomology_window(cs);
    CohomologyResult hm = cohomology_window(cm);
    CohomologyResult hq = cohomology_window(cq);
    auto sb = module_basis(s.sub, w);
    auto mb = module_basis(m, w);
    auto qb = module_basis(s.quot, w);

    std::vector<int> m_of_sub(s.sub.num_generators(), -1);
    for (int i = 0; i < s.sub.num_generators(); ++i)
        m_of_sub[i] = s.include.images.at(i).coeffs().begin()->first;
    std::vector<int> sub_of_m(m.num_generators(), -1);
    for (int i = 0; i < static_cast<int>(m_of_sub.size()); ++i) sub_of_m[m_of_sub[i]] = i;
    std::vector<int> quot_of_m(m.num_generators(), -1);
    std::vector<int> m_of_quot(s.quot.num_generators(), -1);
    for (int i = 0; i < m.num_generators(); ++i)
        if (!s.project.images.at(i).is_zero()) {
            quot_of_m[i] = s.project.images.at(i).coeffs().begin()->first;
            m_of_quot[quot_of_m[i]] = i;
        }

    auto sub_to_m = [&](int d, const Vec& x) {
        auto pos = pair_positions(mb.at(d));
        Vec out = zero_vec(static_cast<int>(mb.at(d).size()));
        const ModulePairBasis& pairs = sb.at(d);
        for (int i = 0; i < static_cast<int>(x.size()); ++i)
            if (!is_zero(x[i])) out[pos.at({m_of_sub[pairs[i].first], pairs[i].second})] = x[i];
        return out;
    };
    auto m_to_quot = [&](int d, const Vec& x) {
        auto pos = pair_positions(qb.at(d));
        Vec out = zero_vec(static_cast<int>(qb.at(d).size()));
        const ModulePairBasis& pairs = mb.at(d);
        for (int i = 0; i < static_cast<int>(x.size()); ++i) {
            if (is_zero(x[i])) continue;
            int q = quot_of_m[pairs[i].first];
            if (q >= 0) out[pos.at({q, pairs[i].second})] = x[i];
        }
        return out;
    };
    auto quot_to_m = [&](int d, const Vec& x) {
        auto pos = pair_positions(mb.at(d));
        Vec out = zero_vec(static_cast<int>(mb.at(d).size()));
        const ModulePairBasis& pairs = qb.at(d);
        for (int i = 0; i < static_cast<int>(x.size()); ++i)
            if (!is_zero(x[i])) out[pos.at({m_of_quot[pairs[i].first], pairs[i].second})] = x[i];
        return out;
    };
    auto m_to_sub = [&](int d, const Vec& x) {
        auto pos = pair_positions(sb.at(d));
        Vec out = zero_vec(static_cast<int>(sb.at(d).size()));
        const ModulePairBasis& pairs = mb.at(d);
        for (int i = 0; i < static_cast<int>(x.size()); ++i) {
            if (is_zero(x[i])) continue;
            int si = sub_of_m[pairs[i].first];
            if (si < 0) throw std::logic_error("connecting boundary left the sub complex");
            out[pos.at({si, pairs[i].second})] = x[i];
        }
        return out;
    };

    std::vector<LesDegreeReport> reports;
    for (int j = w.lo + 1; j <= w.hi - 2; ++j) {
        ClassReducer rm_j(cm, hm, j), rq_j(cq, hq, j);
        ClassReducer rs_j1(cs, hs, j + 1), rm_j1(cm, hm, j + 1);
        const std::vector<Vec>& reps_s = hs.by_degree.at(j).representatives;
        const std::vector<Vec>& reps_m = hm.by_degree.at(j).representatives;
        const std::vector<Vec>& reps_q = hq.by_degree.at(j).representatives;
        const std::vector<Vec>& reps_s1 = hs.by_degree.at(j + 1).representatives;

        std::vector<Vec> acols, bcols, dcols, a1cols;
        for (const Vec& r : reps_s) acols.push_back(rm_j.class_coords(sub_to_m(j, r)));
        for (const Vec& r : reps_m) bcols.push_back(rq_j.class_coords(m_to_quot(j, r)));
        for (const Vec& r : reps_q)
            dcols.push_back(rs_j1.class_coords(m_to_sub(j + 1, cm.d(j).apply(quot_to_m(j, r)))));
        for (const Vec& r : reps_s1) a1cols.push_back(rm_j1.class_coords(sub_to_m(j + 1, r)));

        SparseMatrix A = from_columns(hm.dim(j), acols);
        SparseMatrix B = from_columns(hq.dim(j), bcols);
        SparseMatrix D = from_columns(hs.dim(j + 1), dcols);
        SparseMatrix A1 = from_columns(hm.dim(j + 1), a1cols);

        bool zero_comps =
            B.compose(A).is_zero() && D.compose(B).is_zero() && A1.compose(D).is_zero();
        int ra = rank_of(A), rb = rank_of(B), rd = rank_of(D), ra1 = rank_of(A1);
        bool exact = zero_comps && ra == hm.dim(j) - rb && rb == hq.dim(j) - rd &&
                     rd == hs.dim(j + 1) - ra1;
        reports.push_back(LesDegreeReport{j, hs.dim(j), hm.dim(j), hq.dim(j), exact});
    }
    return reports;
}

CochainComplexWindow hom_complex_window(const SemifreeModule& n, const ModuleTable& m,
                                        const DegreeWindow& w) {
    if (!(n.base() == m.base))
        throw std::invalid_argument("hom complex over mismatched base algebras");
    const int G = n.num_generators();
    if (G > 0) {
        int dmin = n.generator(0).degree, dmax = dmin;
        for (int i = 1; i < G; ++i) {
            dmin = std::min(dmin, n.generator(i).degree);
            dmax = std::max(dmax, n.generator(i).degree);
        }
        if (m.window().lo > w.lo + dmin || m.window().hi < w.hi + dmax)
            throw std::invalid_argument(
                "hom window infeasible: the target table must cover the source degrees shifted "
                "by the window");
    }

    std::map<int, std::vector<std::pair<int, int>>> pairs; /* (source gen, target basis idx) */
    BasisLabeledSpace space;
    for (int k = w.lo; k <= w.hi; ++k) {
        std::vector<std::pair<int, int>> ps;
        std::vector<std::string> labels;
        for (int al = 0; al < G; ++al) {
            int td = k + n.generator(al).degree;
            const std::vector<std::string>& tl = m.complex.labels(td);
            for (int i = 0; i < static_cast<int>(tl.size()); ++i) {
                ps.emplace_back(al, i);
                labels.push_back(n.generator(al).name + "->" + tl[i]);
            }
        }
        space.set_basis(k, std::move(labels));
        pairs.emplace(k, std::move(ps));
    }

    std::map<int, SparseMatrix> diff;
    for (int k = w.lo; k < w.hi; ++k) {
        const auto& src = pairs.at(k);
        const auto& tgt = pairs.at(k + 1);
        std::map<std::pair<int, int>, int> tpos;
        for (int i = 0; i < static_cast<int>(tgt.size()); ++i) tpos.emplace(tgt[i], i);
        SparseMatrix dmat(static_cast<int>(tgt.size()), static_cast<int>(src.size()));
        for (int j = 0; j < static_cast<int>(src.size()); ++j) {
            const auto& [al, mi] = src[j];
            int td = k + n.generator(al).degree;
            /* post-compose with the target differential */
            Vec dm = m.complex.d(td).apply(unit_vec(m.complex.dim(td), mi));
            for (int r = 0; r < static_cast<int>(dm.size()); ++r)
                if (!is_zero(dm[r])) dmat.add_to(tpos.at({al, r}), j, dm[r]);
            /* pre-compose with the source differential:
               contribution -(-1)^{k(1+|a|)}·(a·m) at every dv_β ∋ a·v_α */
            for (int be = 0; be < G; ++be) {
                AlgElement aco = n.differential(be).coeff(al);
                if (aco.is_zero()) continue;
                for (const auto& [mono, c] : aco.terms()) {
                    int q = k * (1 + n.base().degree_of(mono));
                    Rational mult = (q % 2 != 0) ? c : Rational(-c);
                    auto acted = m.act(element_of(mono), td, unit_vec(m.complex.dim(td), mi));
                    if (!acted) throw std::logic_error("hom action escaped the table window");
                    for (int r = 0; r < static_cast<int>(acted->size()); ++r)
                        if (!is_zero((*acted)[r]))
                            dmat.add_to(tpos.at({be, r}), j, mult * (*acted)[r]);
                }
            }
        }
        if (!dmat.is_zero()) diff.emplace(k, std::move(dmat));
    }
    return CochainComplexWindow(w, std::move(space), std::move(diff));
}

ExtResult ext_via_hom(const SemifreeModule& n, const ModuleTable& m, const DegreeWindow& w) {
    CochainComplexWindow hom = hom_complex_window(n, m, w);
    CohomologyResult h = cohomology_window(hom);
    ExtResult out;
    out.window = w;
    for (int k = w.lo; k <= w.hi; ++k) {
        const CohomologyDegree& hd = h.by_degree.at(k);
        out.dims[k] = hd.dim;
        out.incomplete[k] = hd.boundary_incomplete;
        std::vector<std::string> reps;
        for (const Vec& r : hd.representatives) reps.push_back(render_element(hom.labels(k), r));
        out.basis_labels[k] = std::move(reps);
    }
    out.complete = true;
    return out;
}

ExtResult ext_via_hom(const SemifreeModule& n, const SemifreeModule& m, const DegreeWindow& w) {
    int dmin = 0, dmax = 0;
    if (n.num_generators() > 0) {
        dmin = n.generator(0).degree;
        dmax = dmin;
        for (int i = 1; i < n.num_generators(); ++i) {
            dmin = std::min(dmin, n.generator(i).degree);
            dmax = std::max(dmax, n.generator(i).degree);
        }
    }
    ModuleTable t = from_semifree(m, DegreeWindow(w.lo + dmin, w.hi + dmax));
    return ext_via_hom(n, t, w);
}

AlgElement apply_cdga_morphism(const CdgaMorphism& f, const AlgElement& e) {
    AlgElement out;
    for (const auto& [mono, c] : e.terms()) {
        AlgElement cur = AlgElement::unit(c);
        for (const auto& [g, ex] : mono.factors)
            for (int r = 0; r < ex && !cur.is_zero(); ++r)
                cur = f.target.normalize_product(cur, f.images.at(g));
        out = out + cur;
    }
    return out;
}

bool is_cdga_chain_map(const CdgaMorphism& f) {
    if (static_cast<int>(f.images.size()) != f.source.num_generators()) return false;
    for (int i = 0; i < f.source.num_generators(); ++i) {
        try {
            auto d = f.target.degree_of(f.images[i]);
            if (d && *d != f.source.generator(i).degree) return false;
        } catch (const std::invalid_argument&) {
            return false;
        }
        AlgElement lhs = apply_cdga_morphism(f, f.source.generator(i).diff);
        AlgElement rhs = f.target.extend_derivation(f.images[i]);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

CdgaMorphism identity_cdga_morphism(const SemifreeCdga& a) {
    CdgaMorphism f{a, a, {}};
    for (int i = 0; i < a.num_generators(); ++i) f.images.push_back(AlgElement::generator(i));
    return f;
}

CdgaMorphism augmentation_morphism(const SemifreeCdga& a) {
    CdgaMorphism f{a, SemifreeCdga{}, {}};
    f.images.assign(a.num_generators(), AlgElement{});
    return f;
}

SemifreeModule extend_module(const SemifreeModule& m, const CdgaMorphism& f) {
    if (!(m.base() == f.source))
        throw std::invalid_argument("module base does not match the morphism source");
    SemifreeModule out(f.target);
    for (int i = 0; i < m.num_generators(); ++i) {
        ModElement d;
        for (const auto& [g, a] : m.differential(i).coeffs())
            d.add(g, apply_cdga_morphism(f, a));
        out.add_generator(m.generator(i).name, m.generator(i).degree, std::move(d));
    }
    return out;
}

ModuleTable restrict_module(const SemifreeModule& m, const CdgaMorphism& f,
                            const DegreeWindow& w) {
    if (!(m.base() == f.target))
        throw std::invalid_argument("module base does not match the morphism target");
    ModuleTable t{f.source, module_complex_window(m, w), {}};
    auto basis = module_basis(m, w);
    for (int g = 0; g < f.source.num_generators(); ++g) {
        int dg = f.source.generator(g).degree;
        const AlgElement& fg = f.images.at(g);
        for (int k = w.lo; k <= w.hi; ++k) {
            int target = k + dg;
            if (!w.contains(target)) continue;
            const ModulePairBasis& src = basis.at(k);
            int tdim = static_cast<int>(basis.at(target).size());
            for (int i = 0; i < static_cast<int>(src.size()); ++i) {
                Vec col = zero_vec(tdim);
                if (!fg.is_zero()) {
                    ModElement acted = m.act(
                        fg, ModElement::generator(src[i].first, element_of(src[i].second)));
                    col = module_coords(m, acted, basis.at(target));
                }
                t.gen_action[{g, k, i}] = std::move(col);
            }
        }
    }
    return t;
}

SemifreeCdga free_A_algebra(const SemifreeModule& m) {
    SemifreeCdga out = m.base();
    std::optional<int> unit_gen;
    std::vector<int> alg_of(m.num_generators(), -1);
    for (int i = 0; i < m.num_generators(); ++i) {
        const ModGenerator& g = m.generator(i);
        if (g.degree < 1) {
            if (g.degree == 0 && g.name == "1" && m.differential(i).is_zero() && !unit_gen) {
                unit_gen = i;
                continue;
            }
            throw std::invalid_argument(
                "algebra generators need degree >= 1 (degree 0 is reserved for the unit "
                "generator '1')");
        }
        AlgElement diff;
        for (const auto& [z, a] : m.differential(i).coeffs()) {
            if (unit_gen && z == *unit_gen) {
                diff = diff + a;
                continue;
            }
            if (alg_of[z] < 0)
                throw std::invalid_argument(
                    "differential references a generator outside the adjoined algebra");
            diff = diff + out.normalize_product(a, AlgElement::generator(alg_of[z]));
        }
        alg_of[i] = out.add_generator(g.name, g.degree, std::move(diff));
    }
    return out;
}

SemifreeModule aug_ideal(const SemifreeCdga& a, const SemifreeCdga& b, const DegreeWindow& w) {
    const int nA = a.num_generators();
    if (b.num_generators() < nA)
        throw std::invalid_argument("the extension does not contain the base algebra");
    for (int i = 0; i < nA; ++i) {
        const AlgGenerator& ga = a.generator(i);
        const AlgGenerator& gb = b.generator(i);
        if (ga.name != gb.name || ga.degree != gb.degree || !(ga.diff == gb.diff))
            throw std::invalid_argument(
                "the extension does not restrict to the base algebra on its generator prefix");
    }

    /* monomials in the adjoined generators only, degree 1..w.hi */
    std::vector<Monomial> cand;
    std::map<Monomial, int> cpos;
    for (int d = 1; d <= w.hi; ++d)
        for (const auto& mono : b.monomial_basis(d)) {
            bool adjoined_only = !mono.is_unit();
            for (const auto& [g, e] : mono.factors) adjoined_only = adjoined_only && g >= nA;
            if (!adjoined_only) continue;
            cpos.emplace(mono, static_cast<int>(cand.size()));
            cand.push_back(mono);
        }

    /* split each differential term as (base coefficient)·(adjoined monomial);
       a term with no adjoined part lands on the unit generator */
    const int n = static_cast<int>(cand.size());
    std::vector<ModElement> raw(n); /* indices: 0..n-1 candidates, n = unit */
    bool need_unit = false;
    for (int i = 0; i < n; ++i) {
        AlgElement de = b.extend_derivation(element_of(cand[i]));
        ModElement d;
        for (const auto& [mono, c] : de.terms()) {
            std::vector<std::pair<int, int>> afac, vfac;
            for (const auto& fa : mono.factors) (fa.first < nA ? afac : vfac).push_back(fa);
            AlgElement coeff = element_of(Monomial{std::move(afac)}, c);
            Monomial vmono{std::move(vfac)};
            if (vmono.is_unit()) {
                need_unit = true;
                d.add(n, coeff);
            } else {
                auto it = cpos.find(vmono);
                if (it == cpos.end())
                    throw std::invalid_argument(
                        "a differential leaves the degree window; widen it");
                d.add(it->second, coeff);
            }
        }
        raw[i] = std::move(d);
    }

    std::vector<std::string> names;
    std::vector<int> degrees;
    std::vector<ModElement> all;
    const int offset = need_unit ? 1 : 0;
    if (need_unit) {
        names.push_back("1");
        degrees.push_back(0);
        all.push_back(ModElement{});
    }
    for (int i = 0; i < n; ++i) {
        names.push_back(b.format(cand[i]));
        degrees.push_back(b.degree_of(cand[i]));
        ModElement d;
        for (const auto& [z, az] : raw[i].coeffs()) d.add(z == n ? 0 : z + offset, az);
        all.push_back(std::move(d));
    }
    std::vector<int> order = triangular_order(all);
    std::vector<int> newpos(all.size());
    for (int p = 0; p < static_cast<int>(order.size()); ++p) newpos[order[p]] = p;
    SemifreeModule out(a);
    for (int p = 0; p < static_cast<int>(order.size()); ++p) {
        int i = order[p];
        ModElement d;
        for (const auto& [z, az] : all[i].coeffs()) d.add(newpos[z], az);
        out.add_generator(names[i], degrees[i], std::move(d));
    }
    return out;
}

}  // namespace dgm
