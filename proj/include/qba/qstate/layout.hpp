#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qba/util/error.hpp"

namespace qba::qstate {

using Site = int;

// One named register: a contiguous run of qudit sites, each with its own
// dimension. Uniform-dimension registers are the common case; per-site dims
// let a single register hold a tuple such as (coin, leader).
struct Register {
    std::string name;
    std::vector<int> dims;
    Site offset = 0;

    int sites() const { return static_cast<int>(dims.size()); }

    // Number of basis values of the whole register (product of dims).
    long long space_size() const {
        long long s = 1;
        for (int d : dims) s *= d;
        return s;
    }
};

// Ordered collection of named registers. Site indices are global and stable:
// registers are only ever appended, never removed or reordered.
class RegisterLayout {
public:
    int add_register(const std::string& name, std::vector<int> dims) {
        require(!dims.empty(), "register needs at least one site: " + name);
        for (int d : dims)
            require(d >= 2 && d <= 256, "site dimension out of range [2,256] in " + name);
        require(index_.find(name) == index_.end(), "duplicate register name: " + name);
        Register r;
        r.name = name;
        r.dims = std::move(dims);
        r.offset = total_sites_;
        total_sites_ += r.sites();
        index_[name] = static_cast<int>(regs_.size());
        regs_.push_back(std::move(r));
        return static_cast<int>(regs_.size()) - 1;
    }

    int add_register(const std::string& name, int sites, int dim) {
        return add_register(name, std::vector<int>(sites, dim));
    }

    const Register& reg(int id) const { return regs_.at(id); }
    int size() const { return static_cast<int>(regs_.size()); }
    Site total_sites() const { return total_sites_; }

    int find(const std::string& name) const {
        auto it = index_.find(name);
        require(it != index_.end(), "no such register: " + name);
        return it->second;
    }

    bool has(const std::string& name) const { return index_.count(name) > 0; }

    std::vector<Site> sites_of(int id) const {
        const Register& r = reg(id);
        std::vector<Site> s(r.sites());
        for (int i = 0; i < r.sites(); ++i) s[i] = r.offset + i;
        return s;
    }

    std::vector<Site> sites_of(const std::string& name) const { return sites_of(find(name)); }

    int dim_at(Site s) const {
        for (const Register& r : regs_) {
            if (s >= r.offset && s < r.offset + r.sites()) return r.dims[s - r.offset];
        }
        throw Error("site index out of range");
    }

    std::vector<int> dims_at(const std::vector<Site>& sites) const {
        std::vector<int> d(sites.size());
        for (size_t i = 0; i < sites.size(); ++i) d[i] = dim_at(sites[i]);
        return d;
    }

private:
    std::vector<Register> regs_;
    std::map<std::string, int> index_;
    Site total_sites_ = 0;
};

// A computational-basis label: one digit per site of the layout.
using BasisConfig = std::vector<uint8_t>;

struct BasisConfigHash {
    size_t operator()(const BasisConfig& c) const {
        // FNV-1a
        uint64_t h = 1469598103934665603ull;
        for (uint8_t v : c) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

inline void check_config(const RegisterLayout& layout, const BasisConfig& c) {
    require(static_cast<int>(c.size()) == layout.total_sites(), "config length != layout sites");
    for (size_t i = 0; i < c.size(); ++i)
        require(c[i] < layout.dim_at(static_cast<Site>(i)), "config digit exceeds site dimension");
}

// Digits of `value` in the mixed radix given by dims, least-significant first.
inline std::vector<uint8_t> encode_value(long long value, const std::vector<int>& dims) {
    std::vector<uint8_t> out(dims.size());
    for (size_t i = 0; i < dims.size(); ++i) {
        out[i] = static_cast<uint8_t>(value % dims[i]);
        value /= dims[i];
    }
    require(value == 0, "value exceeds register capacity");
    return out;
}

inline long long decode_value(const std::vector<uint8_t>& digits, const std::vector<int>& dims) {
    long long v = 0;
    for (size_t i = digits.size(); i-- > 0;) v = v * dims[i] + digits[i];
    return v;
}

}  // namespace qba::qstate
