#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgm {

/* Every potentially infinite computation in the engine is bounded by an
   explicit degree window.  Results at the window edges are never trusted;
   callers widen by one on each side of the degrees they care about. */
struct DegreeWindow {
    int lo = 0;
    int hi = 0;

    DegreeWindow() = default;
    DegreeWindow(int lo_, int hi_) : lo(lo_), hi(hi_) {
        if (lo > hi) throw std::invalid_argument("degree window with lo > hi");
    }

    bool contains(int k) const { return lo <= k && k <= hi; }
    /* interior = degrees whose neighbours on both sides are also in window */
    bool interior(int k) const { return lo < k && k < hi; }
    DegreeWindow widened(int by = 1) const { return DegreeWindow(lo - by, hi + by); }
    DegreeWindow shifted(int n) const { return DegreeWindow(lo + n, hi + n); }

    bool operator==(const DegreeWindow& o) const { return lo == o.lo && hi == o.hi; }
};

/* Graded rational vector space presented by ordered basis labels per degree.
   Labels are opaque strings; uniqueness within a degree is enforced. */
class BasisLabeledSpace {
public:
    void set_basis(int degree, std::vector<std::string> labels) {
        for (size_t i = 0; i < labels.size(); ++i)
            for (size_t j = i + 1; j < labels.size(); ++j)
                if (labels[i] == labels[j])
                    throw std::invalid_argument("duplicate basis label '" + labels[i] +
                                                "' in degree " + std::to_string(degree));
        if (labels.empty())
            by_degree_.erase(degree);
        else
            by_degree_[degree] = std::move(labels);
    }

    int dim(int degree) const {
        auto it = by_degree_.find(degree);
        return it == by_degree_.end() ? 0 : static_cast<int>(it->second.size());
    }

    const std::vector<std::string>& labels(int degree) const {
        static const std::vector<std::string> empty;
        auto it = by_degree_.find(degree);
        return it == by_degree_.end() ? empty : it->second;
    }

    const std::map<int, std::vector<std::string>>& all() const { return by_degree_; }

    bool operator==(const BasisLabeledSpace& o) const { return by_degree_ == o.by_degree_; }

private:
    std::map<int, std::vector<std::string>> by_degree_;
};

}  // namespace dgm
