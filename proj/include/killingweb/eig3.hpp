#pragma once

#include "killingweb/smallmat.hpp"

#include <array>

namespace kw {

struct Eig3Result {
    std::array<double, 3> values;   // ascending
    Mat3<double> vectors;           // orthonormal columns, vectors[i][k] = component i of eigenvector k
};

/// Eigendecomposition of a symmetric 3×3 matrix by cyclic Jacobi rotations.
/// Eigenvalues come back ascending; within clusters closer than tol·‖M‖ the
/// eigenspace basis is completed deterministically by Gram-Schmidt against the
/// standard basis, and each column's sign is fixed by its largest component.
/// Throws on an asymmetric input (residual above tol).
Eig3Result symmetric_eig3(const Mat3<double>& m, double tol = 1e-12);

}  // namespace kw
