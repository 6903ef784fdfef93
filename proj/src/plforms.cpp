#include "dgm/plforms.hpp"

#include <bit>
#include <stdexcept>

namespace dgm {

namespace {

constexpr int kMaxSimplexDim = 30;  // wedge sets live in a 32-bit mask

void check_dim(int n) {
    if (n < 0 || n > kMaxSimplexDim)
        throw std::out_of_range("simplex dimension out of range");
}

int popcount(std::uint32_t m) { return std::popcount(m); }

/* number of transpositions needed to merge two ascending wedge lists:
   pairs (x in a, y in b) with y < x */
int merge_inversions(std::uint32_t a, std::uint32_t b) {
    int inv = 0;
    for (std::uint32_t rest = a; rest != 0; rest &= rest - 1) {
        const int pos = std::countr_zero(rest);
        inv += popcount(b & ((1u << pos) - 1));
    }
    return inv;
}

Rational factorial(int k) {
    Rational out(1);
    for (int i = 2; i <= k; ++i) out *= Rational(i);
    return out;
}

void increasing_tuples(int n, int len, std::vector<int>& prefix,
                       std::vector<std::vector<int>>& out) {
    if (static_cast<int>(prefix.size()) == len) {
        out.push_back(prefix);
        return;
    }
    const int start = prefix.empty() ? 0 : prefix.back() + 1;
    for (int v = start; v <= n; ++v) {
        prefix.push_back(v);
        increasing_tuples(n, len, prefix, out);
        prefix.pop_back();
    }
}

std::vector<std::vector<int>> all_increasing_tuples(int n, int len) {
    std::vector<std::vector<int>> out;
    std::vector<int> prefix;
    increasing_tuples(n, len, prefix, out);
    return out;
}

}  // namespace

PolyForm::PolyForm() : n_(0) {}

PolyForm::PolyForm(int simplex_dim) : n_(simplex_dim) { check_dim(simplex_dim); }

PolyForm PolyForm::constant(int simplex_dim, const Rational& c) {
    PolyForm f(simplex_dim);
    f.add_term(std::vector<int>(simplex_dim, 0), 0, c);
    return f;
}

PolyForm PolyForm::coordinate(int simplex_dim, int i) {
    check_dim(simplex_dim);
    if (i < 0 || i > simplex_dim)
        throw std::out_of_range("coordinate index out of range");
    PolyForm f(simplex_dim);
    if (i == 0) {
        f.add_term(std::vector<int>(simplex_dim, 0), 0, Rational(1));
        for (int j = 1; j <= simplex_dim; ++j) {
            std::vector<int> e(simplex_dim, 0);
            e[j - 1] = 1;
            f.add_term(e, 0, Rational(-1));
        }
    } else {
        std::vector<int> e(simplex_dim, 0);
        e[i - 1] = 1;
        f.add_term(e, 0, Rational(1));
    }
    return f;
}

PolyForm PolyForm::differential_coordinate(int simplex_dim, int i) {
    check_dim(simplex_dim);
    if (i < 0 || i > simplex_dim)
        throw std::out_of_range("coordinate index out of range");
    PolyForm f(simplex_dim);
    const std::vector<int> e(simplex_dim, 0);
    if (i == 0) {
        for (int j = 1; j <= simplex_dim; ++j)
            f.add_term(e, 1u << (j - 1), Rational(-1));
    } else {
        f.add_term(e, 1u << (i - 1), Rational(1));
    }
    return f;
}

std::optional<int> PolyForm::form_degree() const {
    std::optional<int> deg;
    for (const auto& [key, c] : terms_) {
        const int k = popcount(key.second);
        if (!deg)
            deg = k;
        else if (*deg != k)
            return std::nullopt;
    }
    return deg ? deg : std::optional<int>(0);
}

void PolyForm::add_term(const std::vector<int>& exponents, std::uint32_t wedge_mask,
                        const Rational& c) {
    if (static_cast<int>(exponents.size()) != n_)
        throw std::invalid_argument("exponent list does not match the simplex dimension");
    for (int e : exponents)
        if (e < 0) throw std::invalid_argument("negative exponent in a form term");
    if (n_ < 32 && (wedge_mask >> n_) != 0)
        throw std::invalid_argument("wedge set names a coordinate beyond the dimension");
    if (dgm::is_zero(c)) return;
    TermKey key{exponents, wedge_mask};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (dgm::is_zero(it->second)) terms_.erase(it);
    }
}

PolyForm PolyForm::operator+(const PolyForm& other) const {
    if (n_ != other.n_)
        throw std::invalid_argument("form dimension mismatch");
    PolyForm out = *this;
    for (const auto& [key, c] : other.terms_) out.add_term(key.first, key.second, c);
    return out;
}

PolyForm PolyForm::operator-(const PolyForm& other) const {
    return *this + other.scaled(Rational(-1));
}

PolyForm PolyForm::scaled(const Rational& c) const {
    PolyForm out(n_);
    if (dgm::is_zero(c)) return out;
    for (const auto& [key, v] : terms_) out.terms_.emplace(key, v * c);
    return out;
}

PolyForm form_wedge(const PolyForm& a, const PolyForm& b) {
    if (a.simplex_dim() != b.simplex_dim())
        throw std::invalid_argument("form dimension mismatch");
    PolyForm out(a.simplex_dim());
    const int n = a.simplex_dim();
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            if ((ka.second & kb.second) != 0) continue;  // repeated dt factor
            std::vector<int> e(n);
            for (int i = 0; i < n; ++i) e[i] = ka.first[i] + kb.first[i];
            const int inv = merge_inversions(ka.second, kb.second);
            Rational c = ca * cb;
            if (inv % 2 != 0) c = -c;
            out.add_term(e, ka.second | kb.second, c);
        }
    }
    return out;
}

PolyForm form_d(const PolyForm& a) {
    const int n = a.simplex_dim();
    PolyForm out(n);
    for (const auto& [key, c] : a.terms()) {
        for (int i = 1; i <= n; ++i) {
            const int e = key.first[i - 1];
            if (e == 0) continue;
            const std::uint32_t bit = 1u << (i - 1);
            if ((key.second & bit) != 0) continue;  // dt_i already present
            std::vector<int> exps = key.first;
            exps[i - 1] -= 1;
            /* move dt_i into ascending position across the smaller factors */
            const int crossings = popcount(key.second & (bit - 1));
            Rational v = c * Rational(e);
            if (crossings % 2 != 0) v = -v;
            out.add_term(exps, key.second | bit, v);
        }
    }
    return out;
}

SimplicialOperator face_op(int source_dim, int index) {
    return SimplicialOperator{SimplicialOperator::Kind::face, source_dim, index};
}

SimplicialOperator degeneracy_op(int source_dim, int index) {
    return SimplicialOperator{SimplicialOperator::Kind::degeneracy, source_dim, index};
}

PolyForm apply_simplicial_map(const SimplicialOperator& op, const PolyForm& a) {
    const int n = op.source_dim;
    check_dim(n);
    if (a.simplex_dim() != n)
        throw std::invalid_argument("form does not live on the operator's source simplex");
    if (op.index < 0 || op.index > n)
        throw std::out_of_range("simplicial index out of range");
    const bool is_face = op.kind == SimplicialOperator::Kind::face;
    if (is_face && n == 0)
        throw std::invalid_argument("the point has no faces");
    const int m = op.target_dim();
    check_dim(m);

    /* images of t_1..t_n as polynomials on the target simplex; coordinate()
       already eliminates t_0, so the face-zero case needs no special text */
    std::vector<PolyForm> image(n, PolyForm(m)), dimage(n, PolyForm(m));
    for (int k = 1; k <= n; ++k) {
        PolyForm img(m);
        if (is_face) {
            if (k < op.index)
                img = PolyForm::coordinate(m, k);
            else if (k == op.index)
                img = PolyForm(m);  // restricted to zero on the face
            else
                img = PolyForm::coordinate(m, k - 1);
        } else {
            if (k < op.index)
                img = PolyForm::coordinate(m, k);
            else if (k == op.index)
                img = PolyForm::coordinate(m, k) + PolyForm::coordinate(m, k + 1);
            else
                img = PolyForm::coordinate(m, k + 1);
        }
        image[k - 1] = img;
        dimage[k - 1] = form_d(img);
    }

    PolyForm out(m);
    for (const auto& [key, c] : a.terms()) {
        PolyForm acc = PolyForm::constant(m, c);
        for (int k = 1; k <= n; ++k)
            for (int rep = 0; rep < key.first[k - 1]; ++rep)
                acc = form_wedge(acc, image[k - 1]);
        for (std::uint32_t rest = key.second; rest != 0; rest &= rest - 1) {
            const int s = std::countr_zero(rest) + 1;
            acc = form_wedge(acc, dimage[s - 1]);
        }
        out = out + acc;
    }
    return out;
}

Rational integrate(const PolyForm& a) {
    const int n = a.simplex_dim();
    const std::uint32_t full = n == 0 ? 0u : (1u << n) - 1u;
    Rational total(0);
    for (const auto& [key, c] : a.terms()) {
        if (key.second != full)
            throw std::invalid_argument("integration needs a top-degree form");
        int sum = 0;
        Rational numer(1);
        for (int e : key.first) {
            numer *= factorial(e);
            sum += e;
        }
        total += c * numer / factorial(n + sum);
    }
    return total;
}

Cochain stokes_pair(const PolyForm& a, int k) {
    const int n = a.simplex_dim();
    if (k < 0 || k > n)
        throw std::invalid_argument("pairing degree out of range");
    for (const auto& [key, c] : a.terms()) {
        (void)c;
        if (popcount(key.second) != k)
            throw std::invalid_argument("form is not homogeneous of the requested degree");
    }

    Cochain out;
    out.simplex_dim = n;
    out.degree = k;
    for (const auto& tuple : all_increasing_tuples(n, k + 1)) {
        /* delete the complementary vertices from the top; descending order
           keeps every remaining vertex at its original index */
        PolyForm restricted = a;
        int dim = n;
        for (int v = n; v >= 0; --v) {
            bool kept = false;
            for (int u : tuple) kept = kept || u == v;
            if (kept) continue;
            restricted = apply_simplicial_map(face_op(dim, v), restricted);
            --dim;
        }
        out.values[tuple] = integrate(restricted);
    }
    return out;
}

Cochain coboundary(const Cochain& c) {
    Cochain out;
    out.simplex_dim = c.simplex_dim;
    out.degree = c.degree + 1;
    for (const auto& tuple : all_increasing_tuples(c.simplex_dim, c.degree + 2)) {
        Rational v(0);
        for (std::size_t j = 0; j < tuple.size(); ++j) {
            std::vector<int> sub = tuple;
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(j));
            auto it = c.values.find(sub);
            if (it == c.values.end()) continue;
            v += j % 2 == 0 ? it->second : -it->second;
        }
        out.values[tuple] = v;
    }
    return out;
}

}  // namespace dgm
