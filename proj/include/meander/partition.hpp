#pragma once

#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace meander {

// Generalized partition nu = [0^{nu_0} 1^{nu_1} 2^{nu_2} ...] given by the
// multiplicity nu_d of each entry d >= 0.  Entries 0 are allowed (marked
// points); |nu| = sum of entries, ell(nu) = number of entries.
class GeneralizedPartition {
public:
    GeneralizedPartition() = default;

    // mult[d] = nu_d
    explicit GeneralizedPartition(std::vector<int> mult) : mult_(std::move(mult)) {
        for (int m : mult_)
            if (m < 0) throw std::invalid_argument("partition multiplicities must be >= 0");
        trim();
    }

    // from a list of entries, e.g. {1,1,2} -> [1^2 2^1]
    static GeneralizedPartition from_entries(const std::vector<int>& entries) {
        std::vector<int> mult;
        for (int e : entries) {
            if (e < 0) throw std::invalid_argument("partition entries must be >= 0");
            if (static_cast<size_t>(e) >= mult.size()) mult.resize(static_cast<size_t>(e) + 1, 0);
            mult[static_cast<size_t>(e)]++;
        }
        return GeneralizedPartition(std::move(mult));
    }

    static GeneralizedPartition principal(int k) {
        // [1^k]
        if (k < 0) throw std::invalid_argument("principal partition needs k >= 0");
        std::vector<int> m;
        if (k > 0) m = {0, k};
        return GeneralizedPartition(std::move(m));
    }

    int multiplicity(int d) const {
        return (d >= 0 && static_cast<size_t>(d) < mult_.size())
                   ? mult_[static_cast<size_t>(d)]
                   : 0;
    }
    int max_entry() const { return static_cast<int>(mult_.size()) - 1; }

    // |nu| = sum d * nu_d
    int weight() const {
        int w = 0;
        for (size_t d = 0; d < mult_.size(); ++d) w += static_cast<int>(d) * mult_[d];
        return w;
    }

    // ell(nu) = sum nu_d, zero entries included
    int length() const {
        int l = 0;
        for (int m : mult_) l += m;
        return l;
    }

    // number of simple poles of the genus-0 stratum Q(nu, -1^{|nu|+4})
    int poles() const { return weight() + 4; }

    GeneralizedPartition with_extra_zeros(int k) const {
        std::vector<int> m = mult_;
        if (m.empty()) m.resize(1, 0);
        m[0] += k;
        return GeneralizedPartition(std::move(m));
    }

    GeneralizedPartition without_zeros() const {
        std::vector<int> m = mult_;
        if (!m.empty()) m[0] = 0;
        return GeneralizedPartition(std::move(m));
    }

    GeneralizedPartition operator+(const GeneralizedPartition& o) const {
        std::vector<int> m(std::max(mult_.size(), o.mult_.size()), 0);
        for (size_t d = 0; d < m.size(); ++d)
            m[d] = multiplicity(static_cast<int>(d)) + o.multiplicity(static_cast<int>(d));
        return GeneralizedPartition(std::move(m));
    }

    bool contains(const GeneralizedPartition& sub) const {
        for (int d = 0; d <= sub.max_entry(); ++d)
            if (sub.multiplicity(d) > multiplicity(d)) return false;
        return true;
    }

    GeneralizedPartition operator-(const GeneralizedPartition& sub) const {
        if (!contains(sub))
            throw std::invalid_argument("partition difference needs a subpartition");
        std::vector<int> m = mult_;
        for (int d = 0; d <= sub.max_entry(); ++d) m[static_cast<size_t>(d)] -= sub.multiplicity(d);
        return GeneralizedPartition(std::move(m));
    }

    bool operator==(const GeneralizedPartition& o) const { return mult_ == o.mult_; }
    bool operator!=(const GeneralizedPartition& o) const { return !(*this == o); }
    bool operator<(const GeneralizedPartition& o) const { return mult_ < o.mult_; }

    // all iota with 0 <= iota_d <= nu_d
    std::vector<GeneralizedPartition> subpartitions() const {
        std::vector<GeneralizedPartition> out;
        std::vector<int> cur(mult_.size(), 0);
        std::function<void(size_t)> rec = [&](size_t d) {
            if (d == mult_.size()) {
                out.push_back(GeneralizedPartition(cur));
                return;
            }
            for (int v = 0; v <= mult_[d]; ++v) {
                cur[d] = v;
                rec(d + 1);
            }
            cur[d] = 0;
        };
        rec(0);
        return out;
    }

    // "[1^2 3]", "[]"
    std::string to_string() const {
        std::ostringstream out;
        out << "[";
        bool first = true;
        for (size_t d = 0; d < mult_.size(); ++d) {
            if (mult_[d] == 0) continue;
            if (!first) out << " ";
            first = false;
            out << d;
            if (mult_[d] > 1) out << "^" << mult_[d];
        }
        out << "]";
        return out.str();
    }

    const std::vector<int>& raw() const { return mult_; }

private:
    std::vector<int> mult_;

    void trim() {
        while (!mult_.empty() && mult_.back() == 0) mult_.pop_back();
    }
};

}  // namespace meander
