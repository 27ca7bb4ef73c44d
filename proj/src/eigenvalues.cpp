#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "mcres/error.hpp"
#include "mcres/matrix.hpp"

namespace mcres {

namespace {

bool spectral_order(const std::complex<double>& a, const std::complex<double>& b) {
    const double ma = std::abs(a);
    const double mb = std::abs(b);
    if (ma != mb) return ma > mb;
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
}

}  // namespace

ComplexSpectrum eigenvalues(const DenseMatrix& a, const Tolerances& tol) {
    if (!a.is_square()) throw Error(ErrorKind::NotSquare, "eigenvalues needs a square matrix");
    const auto n = static_cast<Eigen::Index>(a.rows());
    if (n == 0) return {};

    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

    // EigenSolver reduces to Hessenberg form and runs Francis double-shift QR
    // (real Schur form); complex pairs come out of 2x2 blocks as p +/- iz.
    Eigen::EigenSolver<Eigen::MatrixXd> solver;
    solver.setMaxIterations(tol.eigen_sweeps_per_dim * n);
    solver.compute(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NoConvergence,
                    "QR iteration did not converge within " + std::to_string(tol.eigen_sweeps_per_dim * n) +
                        " iterations");
    }

    ComplexSpectrum spectrum(solver.eigenvalues().begin(), solver.eigenvalues().end());
    std::sort(spectrum.begin(), spectrum.end(), spectral_order);

    // Pin conjugate partners to each other bit-for-bit.
    for (std::size_t k = 0; k + 1 < spectrum.size(); ++k) {
        if (spectrum[k].imag() > 0.0 && spectrum[k + 1].imag() < 0.0 &&
            std::abs(spectrum[k + 1] - std::conj(spectrum[k])) <= 1e-12 * (1.0 + std::abs(spectrum[k]))) {
            spectrum[k + 1] = std::conj(spectrum[k]);
            ++k;
        }
    }
    return spectrum;
}

}  // namespace mcres
