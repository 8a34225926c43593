#ifndef HIA_NUMERICS_HPP
#define HIA_NUMERICS_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>

namespace hia {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;
using Rng = std::mt19937_64;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyNullSpace : Error {
    using Error::Error;
};

struct RankDeficient : Error {
    using Error::Error;
};

class Tolerance {
public:
    Tolerance() = default;

    explicit Tolerance(double rel_eps) : my_rel_eps(rel_eps) {
        if (!(rel_eps > 0 && rel_eps < 1)) {
            throw std::invalid_argument("tolerance must lie strictly between 0 and 1");
        }
    }

    double rel_eps() const {
        return my_rel_eps;
    }

private:
    double my_rel_eps = 1e-10;
};

// Circularly-symmetric CN(0,1): real and imaginary parts each have variance 1/2.
inline ComplexMatrix sample_gaussian(Index rows, Index cols, Rng& rng) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("sample_gaussian needs at least one row and one column");
    }
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix out(rows, cols);
    for (Index c = 0; c < cols; ++c) {
        for (Index r = 0; r < rows; ++r) {
            double re = normal(rng);
            double im = normal(rng);
            out(r, c) = Complex(re, im);
        }
    }
    return out;
}

inline ComplexVector sample_gaussian_vector(Index n, Rng& rng) {
    if (n == 0) {
        return ComplexVector(0);
    }
    return sample_gaussian(n, 1, rng).col(0);
}

namespace detail {

inline Index count_above(const Eigen::VectorXd& sv, const Tolerance& tol) {
    if (sv.size() == 0 || sv(0) == 0) {
        return 0;
    }
    double cut = tol.rel_eps() * sv(0);
    Index r = 0;
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cut) {
            ++r;
        }
    }
    return r;
}

}

inline Eigen::VectorXd singular_values(const ComplexMatrix& H) {
    if (H.size() == 0) {
        return Eigen::VectorXd(0);
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(H);
    return svd.singularValues();
}

inline Index rank(const ComplexMatrix& H, const Tolerance& tol = Tolerance()) {
    return detail::count_above(singular_values(H), tol);
}

// Smallest over largest singular value; 0 for an empty or zero matrix.
inline double conditioning(const ComplexMatrix& A) {
    auto sv = singular_values(A);
    if (sv.size() == 0 || sv(0) == 0) {
        return 0;
    }
    return sv(sv.size() - 1) / sv(0);
}

inline ComplexMatrix null_space_basis(const ComplexMatrix& H, const Tolerance& tol = Tolerance()) {
    const Index cols = H.cols();
    if (H.rows() == 0) {
        return ComplexMatrix::Identity(cols, cols);
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(H, Eigen::ComputeFullV);
    Index r = detail::count_above(svd.singularValues(), tol);
    if (r == cols) {
        throw EmptyNullSpace("null space is trivial for a " + std::to_string(H.rows()) + "x" + std::to_string(cols) + " matrix");
    }
    return svd.matrixV().rightCols(cols - r);
}

// Orthonormal basis of the complement of null(H) inside C^cols.
inline ComplexMatrix row_space_basis(const ComplexMatrix& H, const Tolerance& tol = Tolerance()) {
    const Index cols = H.cols();
    if (H.rows() == 0) {
        return ComplexMatrix(cols, 0);
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(H, Eigen::ComputeFullV);
    Index r = detail::count_above(svd.singularValues(), tol);
    return svd.matrixV().leftCols(r);
}

// Orthonormal basis of the orthogonal complement of the column space of A.
inline ComplexMatrix left_null_basis(const ComplexMatrix& A, const Tolerance& tol = Tolerance()) {
    const Index rows = A.rows();
    if (A.cols() == 0) {
        return ComplexMatrix::Identity(rows, rows);
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(A, Eigen::ComputeFullU);
    Index r = detail::count_above(svd.singularValues(), tol);
    return svd.matrixU().rightCols(rows - r);
}

// Unitary U with rows x..N-1 of U*G equal to zero, so the desired streams
// occupy the first x outputs only.
inline ComplexMatrix receive_unitary(const ComplexMatrix& G, Index x, const Tolerance& tol = Tolerance()) {
    const Index n = G.rows();
    if (x < 0 || x > n || G.cols() < x) {
        throw std::invalid_argument("receive_unitary needs x <= rows and at least x columns");
    }
    if (x == 0) {
        return ComplexMatrix::Identity(n, n);
    }
    ComplexMatrix lead = G.leftCols(x);
    if (rank(lead, tol) < x) {
        throw RankDeficient("desired-signal matrix has rank below " + std::to_string(x));
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(lead);
    ComplexMatrix Q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    return Q.adjoint();
}

struct LinearSolution {
    ComplexVector x;
    double conditioning = 0;
};

inline LinearSolution solve_checked(const ComplexMatrix& A, const ComplexVector& b, const Tolerance& tol = Tolerance()) {
    if (A.rows() != b.size()) {
        throw std::invalid_argument("solve_exact: right-hand side length does not match");
    }
    if (A.rows() < A.cols()) {
        throw RankDeficient("solve_exact: system has fewer equations than unknowns");
    }
    if (A.cols() == 0) {
        return LinearSolution{ComplexVector(0), 1.0};
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (detail::count_above(sv, tol) < A.cols()) {
        throw RankDeficient("solve_exact: matrix is not full column rank");
    }
    LinearSolution out;
    out.x = svd.solve(b);
    out.conditioning = sv(sv.size() - 1) / sv(0);
    return out;
}

inline ComplexVector solve_exact(const ComplexMatrix& A, const ComplexVector& b, const Tolerance& tol = Tolerance()) {
    return solve_checked(A, b, tol).x;
}

}

#endif
