#pragma once

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fracfem/similarity.hpp"

namespace fracfem {

/// Staged development B_0 ⊆ B_1 ⊆ ... ⊆ B_n of an interface microstructure.
///
/// Each stage is the full (cumulative) point set, strictly sorted and
/// duplicate-free under exact rational comparison. The recursion
/// B_k = ∪_i S_i(B_{k-1}) is not monotone for arbitrary inputs; inputs whose
/// recursion fails B_{k-1} ⊆ B_k are rejected rather than patched, because the
/// staged coefficient and forcing laws are only meaningful for monotone
/// developments.
class Microstructure {
public:
    static Microstructure develop(const IteratedFunctionSystem& ifs,
                                  std::vector<Rational> b0, int stages) {
        if (stages < 0) throw std::invalid_argument("develop: negative stage count");
        if (b0.empty()) throw std::invalid_argument("develop: B_0 must be non-empty");
        for (const Rational& p : b0)
            if (p < kZero || p > kOne)
                throw std::invalid_argument("develop: B_0 point outside [0,1]");
        std::sort(b0.begin(), b0.end());
        b0.erase(std::unique(b0.begin(), b0.end()), b0.end());

        Microstructure m;
        m.stages_.push_back(b0);
        for (const Rational& p : b0) m.first_stage_.emplace_back(p, 0);

        for (int k = 1; k <= stages; ++k) {
            const std::vector<Rational>& prev = m.stages_.back();
            std::vector<Rational> next;
            next.reserve(prev.size() * ifs.size());
            for (const Similarity& s : ifs.maps)
                for (const Rational& p : prev) next.push_back(s(p));
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            if (!std::includes(next.begin(), next.end(), prev.begin(), prev.end()))
                throw std::invalid_argument(
                    "develop: non-monotone development (B_{n-1} is not contained in B_n)");
            std::vector<std::pair<Rational, int>> additions;
            for (const Rational& p : next)
                if (!m.contains_point(p)) additions.emplace_back(p, k);
            m.first_stage_.insert(m.first_stage_.end(), additions.begin(), additions.end());
            std::sort(m.first_stage_.begin(), m.first_stage_.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            m.stages_.push_back(std::move(next));
        }
        return m;
    }

    /// The natural development of the Cantor-extremes microstructure:
    /// B_0 = {0,1}, B_{n+1} = (1/3)B_n ∪ (1 - (1/3)B_n).
    static Microstructure cantor_extremes(int stages) {
        return develop(cantor_ifs(), {Rational(0, 1), Rational(1, 1)}, stages);
    }

    /// Highest developed stage index n.
    int stage_count() const { return static_cast<int>(stages_.size()) - 1; }

    const std::vector<Rational>& points(int stage) const {
        check_stage(stage);
        return stages_[static_cast<std::size_t>(stage)];
    }

    std::size_t cardinality(int stage) const { return points(stage).size(); }

    /// Smallest k with p ∈ B_k. Throws if p never appears.
    int stage_of(const Rational& p) const {
        const auto it = std::lower_bound(
            first_stage_.begin(), first_stage_.end(), p,
            [](const auto& entry, const Rational& q) { return entry.first < q; });
        if (it == first_stage_.end() || !(it->first == p))
            throw std::domain_error("stage_of: point is not in the microstructure");
        return it->second;
    }

    bool contains_point(const Rational& p) const {
        const auto it = std::lower_bound(
            first_stage_.begin(), first_stage_.end(), p,
            [](const auto& entry, const Rational& q) { return entry.first < q; });
        return it != first_stage_.end() && it->first == p;
    }

    /// One line per point of the final stage: "numerator/denominator stage".
    void write_text(std::ostream& os) const {
        const std::vector<Rational>& final_pts = stages_.back();
        for (const Rational& p : final_pts)
            os << p.num() << "/" << p.den() << " " << stage_of(p) << "\n";
    }

private:
    void check_stage(int stage) const {
        if (stage < 0 || stage > stage_count())
            throw std::out_of_range("Microstructure: stage out of range");
    }

    std::vector<std::vector<Rational>> stages_;
    std::vector<std::pair<Rational, int>> first_stage_;  // sorted by point
};

}  // namespace fracfem
