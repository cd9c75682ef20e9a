#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "qba/qstate/bijection.hpp"
#include "qba/qstate/dense_unitary.hpp"
#include "qba/qstate/distribution.hpp"
#include "qba/qstate/layout.hpp"

namespace qba::qstate {

constexpr double kPruneThreshold = 1e-12;   // amplitudes below this modulus are dropped
constexpr double kNormTolerance = 1e-9;
constexpr int kDenseCapDefault = 256;       // max subspace dimension for dense unitaries

// Pure state of the whole system, stored sparsely over computational-basis
// configurations. Honest-protocol dynamics (purify, permute, measure) never
// grow the support beyond the product of randomness-support sizes, which is
// what keeps desk-scale runs feasible. Values are immutable in spirit: every
// operation returns a new state.
class SparseState {
public:
    using AmpMap = std::unordered_map<BasisConfig, cplx, BasisConfigHash>;

    SparseState() = default;

    // All-zero product state |0...0> over the given layout.
    explicit SparseState(RegisterLayout layout) : layout_(std::move(layout)) {
        amps_[BasisConfig(layout_.total_sites(), 0)] = 1.0;
    }

    static SparseState from_amplitudes(RegisterLayout layout, AmpMap amps) {
        SparseState s;
        s.layout_ = std::move(layout);
        s.amps_ = std::move(amps);
        s.prune_and_check();
        return s;
    }

    const RegisterLayout& layout() const { return layout_; }
    const AmpMap& amplitudes() const { return amps_; }
    size_t support_size() const { return amps_.size(); }
    bool empty() const { return amps_.empty(); }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& [c, a] : amps_) s += std::norm(a);
        return s;
    }

    // Appends fresh registers in the |0> state. Existing amplitudes are
    // zero-extended; support size is unchanged.
    SparseState extend(const std::vector<std::pair<std::string, std::vector<int>>>& regs) const {
        SparseState out;
        out.layout_ = layout_;
        int added = 0;
        for (const auto& [name, dims] : regs) {
            out.layout_.add_register(name, dims);
            added += static_cast<int>(dims.size());
        }
        out.amps_.reserve(amps_.size());
        for (const auto& [c, a] : amps_) {
            BasisConfig e = c;
            e.resize(e.size() + added, 0);
            out.amps_.emplace(std::move(e), a);
        }
        return out;
    }

    bool register_is_zero(const std::string& name) const {
        std::vector<Site> sites = layout_.sites_of(name);
        for (const auto& [c, a] : amps_)
            for (Site s : sites)
                if (c[s] != 0) return false;
        return true;
    }

    // Value of a register if it is classical (same digits in every branch).
    std::optional<std::vector<uint8_t>> read_classical(const std::string& name) const {
        std::vector<Site> sites = layout_.sites_of(name);
        std::optional<std::vector<uint8_t>> val;
        for (const auto& [c, a] : amps_) {
            std::vector<uint8_t> v(sites.size());
            for (size_t i = 0; i < sites.size(); ++i) v[i] = c[sites[i]];
            if (!val)
                val = std::move(v);
            else if (*val != v)
                return std::nullopt;
        }
        return val;
    }

private:
    void prune_and_check() {
        for (auto it = amps_.begin(); it != amps_.end();) {
            if (std::abs(it->second) < kPruneThreshold)
                it = amps_.erase(it);
            else
                ++it;
        }
        if (amps_.empty()) return;
        double n = norm_sq();
        if (std::abs(n - 1.0) > kNormTolerance) {
            double r = 1.0 / std::sqrt(n);
            for (auto& [c, a] : amps_) a *= r;
        }
    }

    RegisterLayout layout_;
    AmpMap amps_;

    friend SparseState prepare_distribution(const SparseState&, const std::string&,
                                            const ClassicalDistribution&);
    friend SparseState apply_permutation(const SparseState&, const BasisBijection&);
    friend SparseState apply_dense_unitary(const SparseState&, const DenseUnitary&, int);
    friend SparseState set_register(const SparseState&, const std::string&,
                                    const std::vector<uint8_t>&);
};

// ---- operations -----------------------------------------------------------

// P_Q-style purification: the register, currently |0...0>, is loaded with
// sum_r sqrt(dist(r)) |r>.
inline SparseState prepare_distribution(const SparseState& state, const std::string& reg,
                                        const ClassicalDistribution& dist) {
    dist.validate();
    require(state.register_is_zero(reg), "prepare_distribution: register not all-zero: " + reg);
    const Register& r = state.layout().reg(state.layout().find(reg));
    std::vector<Site> sites = state.layout().sites_of(reg);
    for (const auto& [v, p] : dist.support()) {
        require(v.size() == sites.size(), "distribution value width != register sites");
        for (size_t i = 0; i < v.size(); ++i)
            require(v[i] < r.dims[i], "distribution support exceeds register capacity");
    }
    SparseState out;
    out.layout_ = state.layout();
    out.amps_.reserve(state.amplitudes().size() * dist.size());
    for (const auto& [c, a] : state.amplitudes()) {
        for (const auto& [v, p] : dist.support()) {
            BasisConfig e = c;
            for (size_t i = 0; i < sites.size(); ++i) e[sites[i]] = v[i];
            out.amps_.emplace(std::move(e), a * std::sqrt(p));
        }
    }
    out.prune_and_check();
    return out;
}

// Point-mass register load (classical mode). Register must be all-zero.
inline SparseState set_register(const SparseState& state, const std::string& reg,
                                const std::vector<uint8_t>& value) {
    return prepare_distribution(state, reg, ClassicalDistribution::point(value));
}

// Relabels each basis term through the bijection; amplitudes and support size
// are unchanged.
inline SparseState apply_permutation(const SparseState& state, const BasisBijection& bij) {
    const auto& sites = bij.sites();
    for (size_t i = 0; i < sites.size(); ++i)
        require(state.layout().dim_at(sites[i]) == bij.dims()[i],
                "bijection dims do not match layout");
    SparseState out;
    out.layout_ = state.layout();
    out.amps_.reserve(state.amplitudes().size());
    BasisBijection::SubConfig sub(sites.size());
    for (const auto& [c, a] : state.amplitudes()) {
        for (size_t i = 0; i < sites.size(); ++i) sub[i] = c[sites[i]];
        BasisBijection::SubConfig mapped = bij.apply(sub);
        BasisConfig e = c;
        for (size_t i = 0; i < sites.size(); ++i) e[sites[i]] = mapped[i];
        bool fresh = out.amps_.emplace(std::move(e), a).second;
        require(fresh, "non-injective mapping detected");
    }
    require(out.amps_.size() == state.amplitudes().size(), "permutation lost support");
    return out;
}

inline SparseState apply_dense_unitary(const SparseState& state, const DenseUnitary& u,
                                       int dense_cap = kDenseCapDefault) {
    require(u.space() <= dense_cap, "dense unitary target exceeds dense-cap");
    u.validate();
    for (size_t i = 0; i < u.target_sites.size(); ++i)
        require(state.layout().dim_at(u.target_sites[i]) == u.dims[i],
                "dense unitary dims do not match layout");

    // Group configs by their off-target part, run the matrix per group.
    const auto& sites = u.target_sites;
    const int n = u.space();
    std::unordered_map<BasisConfig, std::vector<cplx>, BasisConfigHash> groups;
    for (const auto& [c, a] : state.amplitudes()) {
        BasisConfig rest = c;
        std::vector<uint8_t> sub(sites.size());
        for (size_t i = 0; i < sites.size(); ++i) {
            sub[i] = c[sites[i]];
            rest[sites[i]] = 0;
        }
        long long idx = decode_value(sub, u.dims);
        auto [it, fresh] = groups.try_emplace(std::move(rest));
        if (fresh) it->second.assign(n, 0.0);
        it->second[static_cast<size_t>(idx)] += a;
    }
    SparseState::AmpMap out_amps;
    for (auto& [rest, vec] : groups) {
        for (int row = 0; row < n; ++row) {
            cplx s = 0.0;
            for (int col = 0; col < n; ++col) {
                if (vec[col] != 0.0) s += u.matrix[row][col] * vec[col];
            }
            if (std::abs(s) < kPruneThreshold) continue;
            BasisConfig e = rest;
            std::vector<uint8_t> sub = encode_value(row, u.dims);
            for (size_t i = 0; i < sites.size(); ++i) e[sites[i]] = sub[i];
            out_amps.emplace(std::move(e), s);
        }
    }
    return SparseState::from_amplitudes(state.layout(), std::move(out_amps));
}

struct MeasurementBranch {
    std::vector<uint8_t> outcome;
    double probability = 0.0;
    SparseState state;
};

// All outcomes of a computational-basis measurement on the given sites,
// sorted by outcome value. Probabilities sum to 1; collapsed states are
// normalized and support-disjoint on the measured sites.
inline std::vector<MeasurementBranch> measurement_branches(const SparseState& state,
                                                           const std::vector<Site>& sites) {
    require(!sites.empty(), "measurement on empty site set");
    std::map<std::vector<uint8_t>, SparseState::AmpMap> groups;
    for (const auto& [c, a] : state.amplitudes()) {
        std::vector<uint8_t> outcome(sites.size());
        for (size_t i = 0; i < sites.size(); ++i) outcome[i] = c[sites[i]];
        groups[std::move(outcome)].emplace(c, a);
    }
    std::vector<MeasurementBranch> out;
    out.reserve(groups.size());
    for (auto& [outcome, amps] : groups) {
        MeasurementBranch b;
        b.outcome = outcome;
        double w = 0.0;
        for (const auto& [c, a] : amps) w += std::norm(a);
        b.probability = w;
        double r = 1.0 / std::sqrt(w);
        for (auto& [c, a] : amps) a *= r;
        b.state = SparseState::from_amplitudes(state.layout(), std::move(amps));
        out.push_back(std::move(b));
    }
    return out;
}

// Samples one branch; deterministic given the generator state.
inline std::pair<std::vector<uint8_t>, SparseState> measure(const SparseState& state,
                                                            const std::vector<Site>& sites,
                                                            std::mt19937_64& rng) {
    auto branches = measurement_branches(state, sites);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double x = unif(rng);
    double acc = 0.0;
    for (auto& b : branches) {
        acc += b.probability;
        if (x <= acc) return {b.outcome, std::move(b.state)};
    }
    auto& last = branches.back();
    return {last.outcome, std::move(last.state)};
}

struct ProjectionResult {
    double probability = 0.0;
    bool zero = false;  // flagged zero-probability branch
    SparseState state;  // empty-state result when zero
};

// Projector onto `value` at `sites`, with renormalized post-state.
inline ProjectionResult project(const SparseState& state, const std::vector<Site>& sites,
                                const std::vector<uint8_t>& value) {
    require(sites.size() == value.size(), "projection value width mismatch");
    for (size_t i = 0; i < sites.size(); ++i)
        require(value[i] < state.layout().dim_at(sites[i]), "projection value exceeds dimension");
    SparseState::AmpMap kept;
    double w = 0.0;
    for (const auto& [c, a] : state.amplitudes()) {
        bool match = true;
        for (size_t i = 0; i < sites.size(); ++i) {
            if (c[sites[i]] != value[i]) {
                match = false;
                break;
            }
        }
        if (match) {
            kept.emplace(c, a);
            w += std::norm(a);
        }
    }
    ProjectionResult res;
    res.probability = w;
    if (kept.empty() || w < kPruneThreshold * kPruneThreshold) {
        res.zero = true;
        res.probability = 0.0;
        return res;
    }
    double r = 1.0 / std::sqrt(w);
    for (auto& [c, a] : kept) a *= r;
    res.state = SparseState::from_amplitudes(state.layout(), std::move(kept));
    return res;
}

// ---- comparisons ----------------------------------------------------------

inline cplx inner_product(const SparseState& a, const SparseState& b) {
    // <a|b> over matching configs; layouts must have the same total sites.
    require(a.layout().total_sites() == b.layout().total_sites(),
            "inner product across different layouts");
    const auto& small = a.support_size() <= b.support_size() ? a : b;
    const auto& big = a.support_size() <= b.support_size() ? b : a;
    cplx s = 0.0;
    for (const auto& [c, amp] : small.amplitudes()) {
        auto it = big.amplitudes().find(c);
        if (it == big.amplitudes().end()) continue;
        if (&small == &a)
            s += std::conj(amp) * it->second;
        else
            s += std::conj(it->second) * amp;
    }
    return s;
}

inline double fidelity(const SparseState& a, const SparseState& b) {
    cplx ip = inner_product(a, b);
    return std::norm(ip);
}

// State equality up to global phase.
inline bool approx_equal(const SparseState& a, const SparseState& b, double tol = 1e-9) {
    return fidelity(a, b) >= 1.0 - tol;
}

}  // namespace qba::qstate
