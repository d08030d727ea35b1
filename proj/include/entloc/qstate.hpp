#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace entloc {

using Complex = std::complex<double>;
using Cmat = Eigen::MatrixXcd;
using Cvec = Eigen::VectorXcd;

// Numerical tolerances used when validating physical states.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;
inline constexpr double kDegenerateProb = 1e-14;

// Post-selecting on an outcome that has (numerically) zero probability.
struct DegenerateOutcome : std::runtime_error {
    explicit DegenerateOutcome(const std::string& what) : std::runtime_error(what) {}
};

// Coupler settings for which the conditional states are undefined.
struct DegenerateCoupling : std::runtime_error {
    explicit DegenerateCoupling(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check between two model representations failed.
struct ModelInconsistency : std::runtime_error {
    explicit ModelInconsistency(const std::string& what) : std::runtime_error(what) {}
};

// Pure state vector. Dimension is 2^n for n polarization qubits;
// basis order is lexicographic with H=0, V=1 (so |HV> = index 1 in dim 4).
class Ket {
public:
    explicit Ket(Cvec amplitudes);

    const Cvec& vec() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()); }
    double norm() const { return v_.norm(); }

    Ket normalized() const;

    Complex operator[](int i) const { return v_(i); }

private:
    Cvec v_;
};

Ket ket_h();
Ket ket_v();
Ket ket_d();
Ket ket_a();
Ket ket_r();
Ket ket_l();

// (|HV> - |VH>)/sqrt(2)
Ket singlet_pair();
// (|HV> + i|VH>)/sqrt(2), the experimentally prepared variant; locally
// equivalent to the singlet, so all entanglement measures coincide.
Ket experimental_pair();

Ket tensor(const Ket& a, const Ket& b);

// Density operator with validation: Hermitian, unit trace, PSD up to a
// small negative tolerance (tiny negative eigenvalues are clipped and the
// spectrum renormalized).
class DensityMatrix {
public:
    explicit DensityMatrix(const Cmat& rho);
    explicit DensityMatrix(const Ket& psi);

    // Scales an unnormalized positive operator by 1/trace. Throws
    // DegenerateOutcome when the trace is below kDegenerateProb.
    static DensityMatrix from_unnormalized(const Cmat& rho);

    const Cmat& mat() const { return rho_; }
    int dim() const { return static_cast<int>(rho_.rows()); }

    double purity() const;

private:
    DensityMatrix() = default;
    Cmat rho_;
};

Cmat tensor(const Cmat& a, const Cmat& b);

// Trace out all subsystems not listed in `keep` (indices into `dims`,
// subsystem 0 is the leftmost tensor factor). `keep` must be strictly
// increasing; the result orders the kept factors as listed.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep,
                            const std::vector<int>& dims);

// Project subsystem `subsystem` onto |phi><phi| and drop it. Returns the
// conditional state of the remaining subsystems and the outcome probability.
// Throws DegenerateOutcome if the probability is below kDegenerateProb.
std::pair<DensityMatrix, double> project(const DensityMatrix& rho, int subsystem,
                                         const Ket& phi, const std::vector<int>& dims);

enum class Side { A, B };

// Polarization-dependent lossy filter on one arm of a two-qubit state.
// Gains are amplitude transmissions in [0,1]; at least one must be 1
// (a common attenuation of both polarizations is physically a global
// loss and never helps post-selected quantities).
struct LocalFilter {
    Side side = Side::A;
    double gain_h = 1.0;
    double gain_v = 1.0;

    LocalFilter(Side s, double gh, double gv);
};

// Apply K rho K^dag with K = diag(gain_h, gain_v) on the chosen arm and
// renormalize. Returns the filtered state and the success probability
// trace(K rho K^dag).
std::pair<DensityMatrix, double> apply_filter(const DensityMatrix& rho,
                                              const LocalFilter& filter);

// Compact JSON snippets used by the CLI ({"dim":n,"re":[[..]],"im":[[..]]}).
std::string to_json(const Cmat& m);
std::string to_json(const DensityMatrix& rho);

}  // namespace entloc
