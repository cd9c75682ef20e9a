#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "qba/util/error.hpp"

namespace qba::qstate {

// Finite classical distribution over digit tuples. The digits are matched
// against the target register's per-site dims when purified or sampled.
class ClassicalDistribution {
public:
    ClassicalDistribution() = default;

    static ClassicalDistribution point(std::vector<uint8_t> value) {
        ClassicalDistribution d;
        d.support_[std::move(value)] = 1.0;
        return d;
    }

    static ClassicalDistribution uniform(int dim) {
        ClassicalDistribution d;
        for (int v = 0; v < dim; ++v) d.support_[{static_cast<uint8_t>(v)}] = 1.0 / dim;
        return d;
    }

    // Biased bit: P[1] = p1.
    static ClassicalDistribution bernoulli(double p1) {
        ClassicalDistribution d;
        if (p1 < 1.0) d.support_[{0}] = 1.0 - p1;
        if (p1 > 0.0) d.support_[{1}] = p1;
        return d;
    }

    void add(std::vector<uint8_t> value, double p) {
        require(p >= 0.0, "negative probability");
        if (p > 0.0) support_[std::move(value)] += p;
    }

    const std::map<std::vector<uint8_t>, double>& support() const { return support_; }
    bool empty() const { return support_.empty(); }
    size_t size() const { return support_.size(); }

    void validate() const {
        double total = 0.0;
        for (const auto& [v, p] : support_) {
            require(p >= 0.0, "negative probability");
            total += p;
        }
        require(std::abs(total - 1.0) <= 1e-12, "distribution does not sum to 1");
    }

    // Tensor product: this ⊗ other (digit tuples concatenated).
    ClassicalDistribution product(const ClassicalDistribution& other) const {
        ClassicalDistribution out;
        for (const auto& [a, pa] : support_) {
            for (const auto& [b, pb] : other.support_) {
                std::vector<uint8_t> v = a;
                v.insert(v.end(), b.begin(), b.end());
                out.add(std::move(v), pa * pb);
            }
        }
        return out;
    }

private:
    std::map<std::vector<uint8_t>, double> support_;
};

}  // namespace qba::qstate
