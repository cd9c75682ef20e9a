#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qba/qstate/layout.hpp"

namespace qba::qstate {

using cplx = std::complex<double>;

// A small dense unitary acting on an explicit list of target sites. The
// matrix is indexed by the mixed-radix encoding of the target sub-config
// (least-significant site first).
struct DenseUnitary {
    std::vector<Site> target_sites;
    std::vector<int> dims;
    // row-major, dimension = product of dims
    std::vector<std::vector<cplx>> matrix;

    int space() const {
        int s = 1;
        for (int d : dims) s *= d;
        return s;
    }

    void validate(double tol = 1e-9) const {
        const int n = space();
        require(static_cast<int>(matrix.size()) == n, "unitary matrix row count mismatch");
        for (const auto& row : matrix)
            require(static_cast<int>(row.size()) == n, "unitary matrix column count mismatch");
        // U U^dagger = I
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < n; ++k) s += matrix[i][k] * std::conj(matrix[j][k]);
                cplx want = (i == j) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
                require(std::abs(s - want) <= tol, "matrix is not unitary");
            }
        }
    }

    static DenseUnitary identity(std::vector<Site> sites, std::vector<int> dims) {
        DenseUnitary u;
        u.target_sites = std::move(sites);
        u.dims = std::move(dims);
        const int n = u.space();
        u.matrix.assign(n, std::vector<cplx>(n, 0.0));
        for (int i = 0; i < n; ++i) u.matrix[i][i] = 1.0;
        return u;
    }

    static DenseUnitary hadamard(Site site) {
        DenseUnitary u;
        u.target_sites = {site};
        u.dims = {2};
        const double r = 1.0 / std::sqrt(2.0);
        u.matrix = {{r, r}, {r, -r}};
        return u;
    }

    static DenseUnitary pauli_x(Site site) {
        DenseUnitary u;
        u.target_sites = {site};
        u.dims = {2};
        u.matrix = {{0.0, 1.0}, {1.0, 0.0}};
        return u;
    }
};

}  // namespace qba::qstate
