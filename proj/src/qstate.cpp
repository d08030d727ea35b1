#include "entloc/qstate.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace entloc {

namespace {

bool is_power_of_two_dim(int d) { return d == 2 || d == 4 || d == 8; }

}  // namespace

Ket::Ket(Cvec amplitudes) : v_(std::move(amplitudes)) {
    if (!is_power_of_two_dim(static_cast<int>(v_.size()))) {
        throw std::invalid_argument("Ket: dimension must be 2, 4 or 8");
    }
}

Ket Ket::normalized() const {
    const double n = v_.norm();
    if (n < kDegenerateProb) {
        throw DegenerateOutcome("Ket::normalized: zero vector");
    }
    return Ket(v_ / n);
}

namespace {

Ket make2(Complex a0, Complex a1) {
    Cvec v(2);
    v << a0, a1;
    return Ket(v);
}

}  // namespace

Ket ket_h() { return make2(1.0, 0.0); }
Ket ket_v() { return make2(0.0, 1.0); }
Ket ket_d() { return make2(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)); }
Ket ket_a() { return make2(1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)); }
Ket ket_r() { return make2(1.0 / std::sqrt(2.0), Complex(0.0, 1.0) / std::sqrt(2.0)); }
Ket ket_l() { return make2(1.0 / std::sqrt(2.0), Complex(0.0, -1.0) / std::sqrt(2.0)); }

Ket singlet_pair() {
    Cvec v = Cvec::Zero(4);
    v(1) = 1.0 / std::sqrt(2.0);
    v(2) = -1.0 / std::sqrt(2.0);
    return Ket(v);
}

Ket experimental_pair() {
    Cvec v = Cvec::Zero(4);
    v(1) = 1.0 / std::sqrt(2.0);
    v(2) = Complex(0.0, 1.0) / std::sqrt(2.0);
    return Ket(v);
}

Ket tensor(const Ket& a, const Ket& b) {
    const int da = a.dim();
    const int db = b.dim();
    Cvec v(da * db);
    for (int i = 0; i < da; ++i) {
        for (int j = 0; j < db; ++j) {
            v(i * db + j) = a[i] * b[j];
        }
    }
    return Ket(v);
}

DensityMatrix::DensityMatrix(const Cmat& rho) {
    if (rho.rows() != rho.cols() || !is_power_of_two_dim(static_cast<int>(rho.rows()))) {
        throw std::invalid_argument("DensityMatrix: dimension must be 2, 4 or 8");
    }
    const double herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > kHermitianTol) {
        throw std::invalid_argument("DensityMatrix: not Hermitian (err=" +
                                    std::to_string(herm_err) + ")");
    }
    const double tr_err = std::abs(rho.trace() - Complex(1.0, 0.0));
    if (tr_err > kTraceTol) {
        throw std::invalid_argument("DensityMatrix: trace differs from 1 by " +
                                    std::to_string(tr_err));
    }

    Eigen::SelfAdjointEigenSolver<Cmat> es(0.5 * (rho + rho.adjoint()));
    Eigen::VectorXd ev = es.eigenvalues();
    const double min_ev = ev.minCoeff();
    if (min_ev < kEigenvalueFloor) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                    std::to_string(min_ev));
    }
    if (min_ev < 0.0) {
        // Clip roundoff-level negatives and renormalize the spectrum.
        for (int i = 0; i < ev.size(); ++i) ev(i) = std::max(ev(i), 0.0);
        ev /= ev.sum();
        rho_ = es.eigenvectors() * ev.asDiagonal().toDenseMatrix().cast<Complex>() *
               es.eigenvectors().adjoint();
    } else {
        rho_ = 0.5 * (rho + rho.adjoint());
    }
}

DensityMatrix::DensityMatrix(const Ket& psi) {
    const Ket n = psi.normalized();
    rho_ = n.vec() * n.vec().adjoint();
}

DensityMatrix DensityMatrix::from_unnormalized(const Cmat& rho) {
    const double tr = rho.trace().real();
    if (tr < kDegenerateProb) {
        throw DegenerateOutcome("DensityMatrix::from_unnormalized: trace " +
                                std::to_string(tr));
    }
    return DensityMatrix(rho / tr);
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

Cmat tensor(const Cmat& a, const Cmat& b) {
    const int ra = static_cast<int>(a.rows());
    const int ca = static_cast<int>(a.cols());
    const int rb = static_cast<int>(b.rows());
    const int cb = static_cast<int>(b.cols());
    Cmat out(ra * rb, ca * cb);
    for (int i = 0; i < ra; ++i) {
        for (int j = 0; j < ca; ++j) {
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
        }
    }
    return out;
}

namespace {

int total_dim(const std::vector<int>& dims) {
    int d = 1;
    for (int x : dims) d *= x;
    return d;
}

// Decompose a flat index into per-subsystem digits (leftmost factor first).
std::vector<int> digits_of(int index, const std::vector<int>& dims) {
    std::vector<int> out(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        out[static_cast<size_t>(k)] = index % dims[static_cast<size_t>(k)];
        index /= dims[static_cast<size_t>(k)];
    }
    return out;
}

int index_of(const std::vector<int>& digits, const std::vector<int>& dims) {
    int idx = 0;
    for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
    return idx;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep,
                            const std::vector<int>& dims) {
    if (total_dim(dims) != rho.dim()) {
        throw std::invalid_argument("partial_trace: dims do not match state");
    }
    for (size_t k = 0; k + 1 < keep.size(); ++k) {
        if (keep[k] >= keep[k + 1]) {
            throw std::invalid_argument("partial_trace: keep must be strictly increasing");
        }
    }
    std::vector<int> kept_dims;
    std::vector<char> is_kept(dims.size(), 0);
    for (int k : keep) {
        if (k < 0 || k >= static_cast<int>(dims.size())) {
            throw std::invalid_argument("partial_trace: keep index out of range");
        }
        is_kept[static_cast<size_t>(k)] = 1;
        kept_dims.push_back(dims[static_cast<size_t>(k)]);
    }
    const int dout = total_dim(kept_dims);
    const int din = rho.dim();
    Cmat out = Cmat::Zero(dout, dout);
    for (int i = 0; i < din; ++i) {
        const auto di = digits_of(i, dims);
        for (int j = 0; j < din; ++j) {
            const auto dj = digits_of(j, dims);
            bool diagonal_in_traced = true;
            for (size_t k = 0; k < dims.size(); ++k) {
                if (!is_kept[k] && di[k] != dj[k]) {
                    diagonal_in_traced = false;
                    break;
                }
            }
            if (!diagonal_in_traced) continue;
            std::vector<int> ri, rj;
            for (size_t k = 0; k < dims.size(); ++k) {
                if (is_kept[k]) {
                    ri.push_back(di[k]);
                    rj.push_back(dj[k]);
                }
            }
            out(index_of(ri, kept_dims), index_of(rj, kept_dims)) += rho.mat()(i, j);
        }
    }
    return DensityMatrix(out);
}

std::pair<DensityMatrix, double> project(const DensityMatrix& rho, int subsystem,
                                         const Ket& phi, const std::vector<int>& dims) {
    if (total_dim(dims) != rho.dim()) {
        throw std::invalid_argument("project: dims do not match state");
    }
    if (subsystem < 0 || subsystem >= static_cast<int>(dims.size())) {
        throw std::invalid_argument("project: subsystem out of range");
    }
    if (phi.dim() != dims[static_cast<size_t>(subsystem)]) {
        throw std::invalid_argument("project: ket dimension mismatch");
    }
    const Ket p = phi.normalized();

    std::vector<int> rem_dims;
    for (size_t k = 0; k < dims.size(); ++k) {
        if (static_cast<int>(k) != subsystem) rem_dims.push_back(dims[k]);
    }
    const int dout = total_dim(rem_dims);
    const int din = rho.dim();

    // <phi|_s rho |phi>_s as an operator on the remaining factors.
    Cmat out = Cmat::Zero(dout, dout);
    for (int i = 0; i < din; ++i) {
        const auto di = digits_of(i, dims);
        for (int j = 0; j < din; ++j) {
            const auto dj = digits_of(j, dims);
            std::vector<int> ri, rj;
            for (size_t k = 0; k < dims.size(); ++k) {
                if (static_cast<int>(k) == subsystem) continue;
                ri.push_back(di[k]);
                rj.push_back(dj[k]);
            }
            const Complex w = std::conj(p[di[static_cast<size_t>(subsystem)]]) *
                              p[dj[static_cast<size_t>(subsystem)]];
            out(index_of(ri, rem_dims), index_of(rj, rem_dims)) += w * rho.mat()(i, j);
        }
    }
    const double prob = out.trace().real();
    if (prob < kDegenerateProb) {
        throw DegenerateOutcome("project: outcome probability " + std::to_string(prob));
    }
    return {DensityMatrix(out / prob), prob};
}

LocalFilter::LocalFilter(Side s, double gh, double gv) : side(s), gain_h(gh), gain_v(gv) {
    if (!(gh >= 0.0 && gh <= 1.0) || !(gv >= 0.0 && gv <= 1.0)) {
        throw std::invalid_argument("LocalFilter: gains must lie in [0,1]");
    }
    if (std::max(gh, gv) != 1.0) {
        throw std::invalid_argument(
            "LocalFilter: the transmitted polarization must have unit gain");
    }
}

std::pair<DensityMatrix, double> apply_filter(const DensityMatrix& rho,
                                              const LocalFilter& filter) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("apply_filter: expected a two-qubit state");
    }
    Cmat k1 = Cmat::Zero(2, 2);
    k1(0, 0) = filter.gain_h;
    k1(1, 1) = filter.gain_v;
    const Cmat id = Cmat::Identity(2, 2);
    const Cmat K = (filter.side == Side::A) ? tensor(k1, id) : tensor(id, k1);
    const Cmat filtered = K * rho.mat() * K.adjoint();
    const double prob = filtered.trace().real();
    if (prob < kDegenerateProb) {
        throw DegenerateOutcome("apply_filter: success probability " + std::to_string(prob));
    }
    return {DensityMatrix(filtered / prob), prob};
}

std::string to_json(const Cmat& m) {
    std::ostringstream os;
    os.precision(17);
    auto emit = [&](auto accessor) {
        os << "[";
        for (int i = 0; i < m.rows(); ++i) {
            if (i) os << ",";
            os << "[";
            for (int j = 0; j < m.cols(); ++j) {
                if (j) os << ",";
                os << accessor(i, j);
            }
            os << "]";
        }
        os << "]";
    };
    os << "{\"dim\":" << m.rows() << ",\"re\":";
    emit([&](int i, int j) { return m(i, j).real(); });
    os << ",\"im\":";
    emit([&](int i, int j) { return m(i, j).imag(); });
    os << "}";
    return os.str();
}

std::string to_json(const DensityMatrix& rho) { return to_json(rho.mat()); }

}  // namespace entloc
