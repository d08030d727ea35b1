#include "entloc/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace entloc {

namespace {

void require_two_qubits(const DensityMatrix& rho, const char* who) {
    if (rho.dim() != 4) {
        throw std::invalid_argument(std::string(who) + ": expected a two-qubit state");
    }
}

Cmat matrix_sqrt(const Cmat& psd) {
    Eigen::SelfAdjointEigenSolver<Cmat> es(psd);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.cwiseSqrt().asDiagonal().toDenseMatrix().cast<Complex>() *
           es.eigenvectors().adjoint();
}

Cmat pauli(int i) {
    Cmat s = Cmat::Zero(2, 2);
    switch (i) {
        case 0:
            s(0, 0) = 1.0;
            s(1, 1) = 1.0;
            break;
        case 1:
            s(0, 1) = 1.0;
            s(1, 0) = 1.0;
            break;
        case 2:
            s(0, 1) = Complex(0.0, -1.0);
            s(1, 0) = Complex(0.0, 1.0);
            break;
        default:
            s(0, 0) = 1.0;
            s(1, 1) = -1.0;
            break;
    }
    return s;
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
    require_two_qubits(rho, "concurrence");
    const Cmat sy = pauli(2);
    const Cmat yy = tensor(sy, sy);
    const Cmat rho_tilde = yy * rho.mat().conjugate() * yy;
    const Cmat sq = matrix_sqrt(rho.mat());
    // Eigenvalues of sqrt(rho) rho_tilde sqrt(rho) are real and nonnegative;
    // the concurrence uses their square roots in decreasing order.
    Eigen::SelfAdjointEigenSolver<Cmat> es(sq * rho_tilde * sq);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    std::sort(ev.data(), ev.data() + ev.size(), std::greater<double>());
    return std::max(0.0, ev(0) - ev(1) - ev(2) - ev(3));
}

double bell_max(const DensityMatrix& rho) {
    require_two_qubits(rho, "bell_max");
    Eigen::Matrix3d t;
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            t(i - 1, j - 1) = (tensor(pauli(i), pauli(j)) * rho.mat()).trace().real();
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t);
    const Eigen::Vector3d ev = es.eigenvalues();
    return 2.0 * std::sqrt(std::max(0.0, ev(2) + ev(1)));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    const Cmat sq = matrix_sqrt(rho.mat());
    Eigen::SelfAdjointEigenSolver<Cmat> es(sq * sigma.mat() * sq);
    const double root_sum = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return root_sum * root_sum;
}

double fidelity(const DensityMatrix& rho, const Ket& psi) {
    const Ket n = psi.normalized();
    if (rho.dim() != n.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    return (n.vec().adjoint() * rho.mat() * n.vec())(0).real();
}

double linear_entropy(const DensityMatrix& rho) {
    require_two_qubits(rho, "linear_entropy");
    return (4.0 / 3.0) * (1.0 - rho.purity());
}

double purity(const DensityMatrix& rho) { return rho.purity(); }

MetricReport metric_report(const DensityMatrix& rho) {
    MetricReport r;
    r.concurrence = concurrence(rho);
    r.bell_max = bell_max(rho);
    r.linear_entropy = linear_entropy(rho);
    r.purity = rho.purity();
    return r;
}

}  // namespace entloc
