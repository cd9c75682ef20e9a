#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <map>
#include <vector>

#include "qba/qstate/sparse_state.hpp"

namespace qba::qstate {

// Numerical Schmidt rank of the state across the cut G|B: singular values of
// the coefficient matrix below `tol` count as zero. The two site lists must
// partition all sites of the layout.
inline int schmidt_rank(const SparseState& state, const std::vector<Site>& cut_g,
                        const std::vector<Site>& cut_b, double tol = 1e-9) {
    require(static_cast<int>(cut_g.size() + cut_b.size()) == state.layout().total_sites(),
            "cut does not partition the sites");
    std::vector<bool> seen(state.layout().total_sites(), false);
    for (Site s : cut_g) seen[s] = true;
    for (Site s : cut_b) {
        require(!seen[s], "cut site listed twice");
        seen[s] = true;
    }

    // Index the support projections on each side.
    std::map<std::vector<uint8_t>, int> g_index, b_index;
    auto side_key = [](const BasisConfig& c, const std::vector<Site>& sites) {
        std::vector<uint8_t> k(sites.size());
        for (size_t i = 0; i < sites.size(); ++i) k[i] = c[sites[i]];
        return k;
    };
    for (const auto& [c, a] : state.amplitudes()) {
        g_index.emplace(side_key(c, cut_g), 0);
        b_index.emplace(side_key(c, cut_b), 0);
    }
    int gi = 0;
    for (auto& [k, v] : g_index) v = gi++;
    int bi = 0;
    for (auto& [k, v] : b_index) v = bi++;

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(gi, bi);
    for (const auto& [c, a] : state.amplitudes())
        m(g_index[side_key(c, cut_g)], b_index[side_key(c, cut_b)]) += a;

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++rank;
    return rank;
}

// When the state is a product across the cut (Schmidt rank 1), returns the
// B-side factor as a state over a layout containing only the cut_b registers.
// cut_b sites must be exactly the sites of the registers named in b_regs, in
// layout order.
inline SparseState extract_factor(const SparseState& state, const std::vector<Site>& cut_b,
                                  const RegisterLayout& b_layout) {
    require(static_cast<int>(cut_b.size()) == b_layout.total_sites(),
            "factor layout does not match cut");
    // Find the G-side key with the largest weight, take the B-side slice.
    std::map<std::vector<uint8_t>, double> g_weight;
    std::vector<bool> is_b(state.layout().total_sites(), false);
    for (Site s : cut_b) is_b[s] = true;
    auto g_key = [&](const BasisConfig& c) {
        std::vector<uint8_t> k;
        k.reserve(c.size() - cut_b.size());
        for (size_t i = 0; i < c.size(); ++i)
            if (!is_b[i]) k.push_back(c[i]);
        return k;
    };
    for (const auto& [c, a] : state.amplitudes()) g_weight[g_key(c)] += std::norm(a);
    const std::vector<uint8_t>* best = nullptr;
    double best_w = -1.0;
    for (const auto& [k, w] : g_weight) {
        if (w > best_w) {
            best_w = w;
            best = &k;
        }
    }
    SparseState::AmpMap amps;
    for (const auto& [c, a] : state.amplitudes()) {
        if (g_key(c) != *best) continue;
        BasisConfig b(cut_b.size());
        for (size_t i = 0; i < cut_b.size(); ++i) b[i] = c[cut_b[i]];
        amps.emplace(std::move(b), a);
    }
    return SparseState::from_amplitudes(b_layout, std::move(amps));
}

}  // namespace qba::qstate
