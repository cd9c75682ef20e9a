#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "qba/qstate/layout.hpp"

namespace qba::qstate {

// A permutation of the computational basis of a set of target sites. Two
// construction modes:
//
//  * raw: an arbitrary sub-configuration map, checked for injectivity by
//    enumeration when the subspace has at most 2^16 points, rejected above;
//  * accumulate: the reversible form |v>|y> -> |v>|y + g(v)> with per-site
//    modular addition on the accumulator sites, a bijection for any g.
class BasisBijection {
public:
    using SubConfig = std::vector<uint8_t>;

    // sites: the full target site list (control ++ accumulator for the
    // accumulate form). dims must match the layout the bijection is applied to.
    static BasisBijection raw(std::vector<Site> sites, std::vector<int> dims,
                              std::function<SubConfig(const SubConfig&)> map) {
        BasisBijection b;
        b.sites_ = std::move(sites);
        b.dims_ = std::move(dims);
        b.map_ = std::move(map);
        b.verify_injective();
        return b;
    }

    // |v>|y> -> |v>|y + g(v)> where v lives on control sites and y on
    // accumulator sites; addition is per-site mod the site dimension.
    static BasisBijection accumulate(std::vector<Site> control, std::vector<int> control_dims,
                                     std::vector<Site> accum, std::vector<int> accum_dims,
                                     std::function<SubConfig(const SubConfig&)> g) {
        BasisBijection b;
        b.sites_ = control;
        b.sites_.insert(b.sites_.end(), accum.begin(), accum.end());
        b.dims_ = control_dims;
        b.dims_.insert(b.dims_.end(), accum_dims.begin(), accum_dims.end());
        const size_t n_control = control.size();
        const size_t n_accum = accum.size();
        std::vector<int> adims = accum_dims;
        b.map_ = [g = std::move(g), n_control, n_accum, adims](const SubConfig& in) {
            SubConfig v(in.begin(), in.begin() + n_control);
            SubConfig delta = g(v);
            require(delta.size() == n_accum, "accumulate function output size mismatch");
            SubConfig out = in;
            for (size_t i = 0; i < n_accum; ++i) {
                int d = adims[i];
                out[n_control + i] =
                    static_cast<uint8_t>((out[n_control + i] + delta[i]) % d);
            }
            return out;
        };
        return b;  // bijective by construction, no enumeration check
    }

    // Identity on the given sites.
    static BasisBijection identity(std::vector<Site> sites, std::vector<int> dims) {
        BasisBijection b;
        b.sites_ = std::move(sites);
        b.dims_ = std::move(dims);
        b.map_ = [](const SubConfig& c) { return c; };
        return b;
    }

    // Swap the contents of two equally shaped site runs.
    static BasisBijection swap(std::vector<Site> a, std::vector<Site> b_sites,
                               std::vector<int> dims_each) {
        require(a.size() == b_sites.size(), "swap site runs differ in length");
        BasisBijection b;
        b.sites_ = a;
        b.sites_.insert(b.sites_.end(), b_sites.begin(), b_sites.end());
        b.dims_ = dims_each;
        b.dims_.insert(b.dims_.end(), dims_each.begin(), dims_each.end());
        const size_t half = a.size();
        b.map_ = [half](const SubConfig& in) {
            SubConfig out = in;
            for (size_t i = 0; i < half; ++i) std::swap(out[i], out[half + i]);
            return out;
        };
        return b;
    }

    const std::vector<Site>& sites() const { return sites_; }
    const std::vector<int>& dims() const { return dims_; }

    SubConfig apply(const SubConfig& in) const {
        SubConfig out = map_(in);
        require(out.size() == in.size(), "bijection changed sub-config length");
        return out;
    }

private:
    void verify_injective() const {
        long long space = 1;
        for (int d : dims_) {
            space *= d;
            require(space <= (1 << 16), "raw bijection subspace too large to verify");
        }
        std::set<SubConfig> seen;
        SubConfig c(dims_.size(), 0);
        for (long long i = 0; i < space; ++i) {
            SubConfig out = map_(c);
            require(out.size() == c.size(), "bijection changed sub-config length");
            for (size_t k = 0; k < out.size(); ++k)
                require(out[k] < dims_[k], "bijection output digit exceeds dimension");
            require(seen.insert(out).second, "non-injective mapping detected");
            // next config
            for (size_t k = 0; k < c.size(); ++k) {
                if (++c[k] < dims_[k]) break;
                c[k] = 0;
            }
        }
    }

    std::vector<Site> sites_;
    std::vector<int> dims_;
    std::function<SubConfig(const SubConfig&)> map_;
};

}  // namespace qba::qstate
