#pragma once

// Symplectic linear algebra: the standard form J, symplecticity checks, Floquet
// multipliers, elliptic height, and eigenstructure-based classification of a
// symplectic matrix into basic normal-form blocks (N1(±1,b), R(θ), hyperbolic
// pairs, off-circle quadruples).

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "symindex/errors.hpp"

namespace symindex {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// J = (0 -I_n; I_n 0) acting on coordinates (x_1..x_n, x_{n+1}..x_{2n}).
inline Matrix standard_form(int n) {
    if (n < 1) throw ValidationError("standard_form: n must be >= 1");
    Matrix j = Matrix::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = -Matrix::Identity(n, n);
    j.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
    return j;
}

// omega(a, b) = <J a, b>. For M = R(theta) in the standard plane,
// omega(u, M u) = sin(theta) |u|^2.
inline double omega(const Vector& a, const Vector& b) {
    const int n = static_cast<int>(a.size()) / 2;
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += -a[n + k] * b[k] + a[k] * b[n + k];
    return s;
}

struct SymplecticTolerances {
    double symplecticity = 1e-9;   // ||M^T J M - J||_max
    double determinant = 1e-7;     // |det M - 1|
    double spectral_cluster = 1e-7;
    double unit_circle = 1e-8;
};

class SymplecticMatrix {
public:
    SymplecticMatrix(Matrix m, double sympl_tol = 1e-9, double det_tol = 1e-7)
        : entries_(std::move(m)) {
        if (entries_.rows() != entries_.cols() || entries_.rows() % 2 != 0 || entries_.rows() == 0)
            throw ValidationError("SymplecticMatrix: matrix must be square of even size");
        n_ = static_cast<int>(entries_.rows()) / 2;
        const Matrix j = standard_form(n_);
        sympl_residual_ = (entries_.transpose() * j * entries_ - j).cwiseAbs().maxCoeff();
        if (sympl_residual_ > sympl_tol) {
            std::ostringstream os;
            os << "SymplecticMatrix: symplecticity residual " << sympl_residual_ << " exceeds tolerance "
               << sympl_tol;
            throw ValidationError(os.str());
        }
        const double det_err = std::abs(entries_.determinant() - 1.0);
        if (det_err > det_tol) {
            std::ostringstream os;
            os << "SymplecticMatrix: |det - 1| = " << det_err << " exceeds tolerance " << det_tol;
            throw ValidationError(os.str());
        }
    }

    int n() const { return n_; }
    int dim() const { return 2 * n_; }
    const Matrix& entries() const { return entries_; }
    double sympl_residual() const { return sympl_residual_; }

private:
    Matrix entries_;
    int n_ = 0;
    double sympl_residual_ = 0.0;
};

// ---------------------------------------------------------------------------
// Basic block constructors and the ⋄-product
// ---------------------------------------------------------------------------

inline Matrix n1_matrix(int eig, int b) {
    if (eig != 1 && eig != -1) throw ValidationError("n1_matrix: eigenvalue must be +1 or -1");
    Matrix m(2, 2);
    m << static_cast<double>(eig), static_cast<double>(b), 0.0, static_cast<double>(eig);
    return m;
}

inline Matrix rotation_matrix(double theta) {
    Matrix m(2, 2);
    m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return m;
}

// diag(lambda, 1/lambda); lambda real with |lambda| > 1 covers D(±2).
inline Matrix hyperbolic_pair_matrix(double lambda) {
    if (std::abs(lambda) <= 1.0) throw ValidationError("hyperbolic_pair_matrix: |lambda| must exceed 1");
    Matrix m(2, 2);
    m << lambda, 0.0, 0.0, 1.0 / lambda;
    return m;
}

// Sp(4) block with spectrum {λ, conj λ, 1/λ, 1/conj λ} for off-circle complex λ.
inline Matrix complex_quadruple_matrix(Complex lambda) {
    const double rho = std::abs(lambda);
    if (rho <= 1.0 || std::abs(lambda.imag()) == 0.0)
        throw ValidationError("complex_quadruple_matrix: lambda must be complex with |lambda| > 1");
    const double phi = std::arg(lambda);
    Matrix a = rho * rotation_matrix(phi);
    Matrix m = Matrix::Zero(4, 4);
    m.block(0, 0, 2, 2) = a;
    m.block(2, 2, 2, 2) = a.inverse().transpose();
    return m;
}

// Symplectic direct sum: interleaves x- and y-blocks so that the result is
// symplectic with respect to the standard form of the combined dimension.
inline Matrix diamond(const Matrix& a, const Matrix& b) {
    const int p = static_cast<int>(a.rows()) / 2;
    const int q = static_cast<int>(b.rows()) / 2;
    Matrix m = Matrix::Zero(2 * (p + q), 2 * (p + q));
    m.block(0, 0, p, p) = a.block(0, 0, p, p);
    m.block(0, p + q, p, p) = a.block(0, p, p, p);
    m.block(p + q, 0, p, p) = a.block(p, 0, p, p);
    m.block(p + q, p + q, p, p) = a.block(p, p, p, p);
    m.block(p, p, q, q) = b.block(0, 0, q, q);
    m.block(p, 2 * p + q, q, q) = b.block(0, q, q, q);
    m.block(2 * p + q, p, q, q) = b.block(q, 0, q, q);
    m.block(2 * p + q, 2 * p + q, q, q) = b.block(q, q, q, q);
    return m;
}

inline Matrix diamond(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) throw ValidationError("diamond: empty block list");
    Matrix m = blocks[0];
    for (size_t i = 1; i < blocks.size(); ++i) m = diamond(m, blocks[i]);
    return m;
}

// ---------------------------------------------------------------------------
// Floquet multipliers and elliptic height
// ---------------------------------------------------------------------------

inline std::vector<Complex> sorted_spectrum(std::vector<Complex> ev) {
    std::sort(ev.begin(), ev.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return ev;
}

// Greedy multiset match within an absolute tolerance.
inline bool match_multisets(std::vector<Complex> a, std::vector<Complex> b, double tol) {
    if (a.size() != b.size()) return false;
    for (const Complex& x : a) {
        double best = tol;
        int pick = -1;
        for (size_t i = 0; i < b.size(); ++i) {
            const double d = std::abs(x - b[i]);
            if (d < best) { best = d; pick = static_cast<int>(i); }
        }
        if (pick < 0) return false;
        b.erase(b.begin() + pick);
    }
    return true;
}

// Eigenvalues with algebraic multiplicity. The multiset is checked to be closed
// under λ → 1/λ and λ → conj(λ); gross asymmetry is the practical symptom of an
// ill-conditioned eigenproblem and raises a diagnostic error.
inline std::vector<Complex> floquet_multipliers(const SymplecticMatrix& m, double symmetry_tol = 1e-7) {
    const Matrix& a = m.entries();
    if (a.cwiseAbs().maxCoeff() > 1e12)
        throw AccuracyError("floquet_multipliers: matrix norm too large for a reliable eigensolve");
    Eigen::EigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw AccuracyError("floquet_multipliers: eigensolver failed to converge");
    std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + a.rows());

    std::vector<Complex> inv;
    inv.reserve(ev.size());
    for (const Complex& l : ev) inv.push_back(1.0 / l);
    // Defective unit eigenvalues split as 1 ± δ; their reciprocal partners agree
    // to O(δ²), so an absolute tolerance comparison is still meaningful.
    const double tol = std::max(symmetry_tol, 1e-6);
    if (!match_multisets(ev, inv, tol)) {
        std::vector<Complex> conj;
        for (const Complex& l : ev) conj.push_back(std::conj(l));
        throw AccuracyError("floquet_multipliers: spectrum not closed under inversion within tolerance "
                            "(ill-conditioned eigenproblem)");
    }
    return sorted_spectrum(ev);
}

inline int multiplicity_near(const std::vector<Complex>& ev, Complex value, double tol) {
    int c = 0;
    for (const Complex& l : ev)
        if (std::abs(l - value) < tol) ++c;
    return c;
}

// Total algebraic multiplicity of eigenvalues on the unit circle. Always even
// for a symplectic matrix; an odd raw count means a cluster straddles the
// circle tolerance and is reported as a warning, rounded up to the even value.
inline int elliptic_height(const SymplecticMatrix& m, double circle_tol = 1e-8,
                           std::string* warning = nullptr) {
    const std::vector<Complex> ev = floquet_multipliers(m);
    int count = 0;
    for (const Complex& l : ev)
        if (std::abs(std::abs(l) - 1.0) < circle_tol) ++count;
    if (count % 2 != 0) {
        if (warning)
            *warning = "elliptic_height: odd on-circle count " + std::to_string(count) +
                       "; an eigenvalue cluster sits at the circle tolerance, rounding up";
        ++count;
    }
    return count;
}

// ---------------------------------------------------------------------------
// Block classification
// ---------------------------------------------------------------------------

struct BlockLabel {
    enum class Kind { N1, Rotation, HyperbolicPair, ComplexQuadruple };

    Kind kind = Kind::N1;
    int eig = 1;                 // N1: +1 or -1
    int b = 0;                   // N1: -1, 0, +1
    double theta = 0.0;          // Rotation: in (0, 2π) \ {π is stored as N1(-1,0)}
    double lambda = 0.0;         // HyperbolicPair: real, |lambda| > 1
    Complex lambda_c{0.0, 0.0};  // ComplexQuadruple: |lambda| > 1, off the real axis

    static BlockLabel n1(int eig, int b) {
        BlockLabel l;
        l.kind = Kind::N1;
        l.eig = eig;
        l.b = b;
        return l;
    }
    static BlockLabel rotation(double theta) {
        BlockLabel l;
        l.kind = Kind::Rotation;
        l.theta = theta;
        return l;
    }
    static BlockLabel hyperbolic(double lambda) {
        BlockLabel l;
        l.kind = Kind::HyperbolicPair;
        l.lambda = lambda;
        return l;
    }
    static BlockLabel quadruple(Complex lambda) {
        BlockLabel l;
        l.kind = Kind::ComplexQuadruple;
        l.lambda_c = lambda;
        return l;
    }

    int dim() const { return kind == Kind::ComplexQuadruple ? 4 : 2; }

    int elliptic_dim() const {
        return (kind == Kind::N1 || kind == Kind::Rotation) ? 2 : 0;
    }

    Matrix matrix() const {
        switch (kind) {
            case Kind::N1: return n1_matrix(eig, b);
            case Kind::Rotation: return rotation_matrix(theta);
            case Kind::HyperbolicPair: return hyperbolic_pair_matrix(lambda);
            case Kind::ComplexQuadruple: return complex_quadruple_matrix(lambda_c);
        }
        throw StructuralError("BlockLabel: bad kind");
    }

    std::string str() const {
        std::ostringstream os;
        switch (kind) {
            case Kind::N1: os << "N1(" << eig << "," << b << ")"; break;
            case Kind::Rotation: os << "R(" << theta << ")"; break;
            case Kind::HyperbolicPair: os << "Hyp(" << lambda << ")"; break;
            case Kind::ComplexQuadruple:
                os << "Quad(" << lambda_c.real() << (lambda_c.imag() >= 0 ? "+" : "") << lambda_c.imag() << "i)";
                break;
        }
        return os.str();
    }
};

inline Matrix assemble(const std::vector<BlockLabel>& blocks) {
    std::vector<Matrix> ms;
    ms.reserve(blocks.size());
    for (const auto& b : blocks) ms.push_back(b.matrix());
    return diamond(ms);
}

struct BlockDecomposition {
    std::vector<BlockLabel> blocks;
    int accounted_dim = 0;
    std::vector<std::string> residual_report;

    bool complete(int two_n) const { return residual_report.empty() && accounted_dim == two_n; }

    int elliptic_height_from_blocks() const {
        int e = 0;
        for (const auto& b : blocks) e += b.elliptic_dim();
        return e;
    }

    std::string residual_text() const {
        std::string out;
        for (const auto& r : residual_report) {
            if (!out.empty()) out += "; ";
            out += r;
        }
        return out;
    }
};

namespace detail {

// Orthonormal basis of the invariant subspace for the cluster at ±1,
// i.e. the numerical null space of (M ∓ I)². Returns an empty matrix and a
// residual note when the expected dimension is not cleanly resolved.
inline bool unity_cluster_basis(const Matrix& m, int sign, int expected_dim, Matrix& q_out,
                                std::string& note) {
    const int dim = static_cast<int>(m.rows());
    const Matrix k1 = m - sign * Matrix::Identity(dim, dim);
    const Matrix k2 = k1 * k1;
    Eigen::JacobiSVD<Matrix> svd(k2, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    // Singular values ascend from the tail.
    const double smax = sv(0);
    const double inside = sv(dim - expected_dim);          // largest of the kept ones
    const double outside = expected_dim < dim ? sv(dim - expected_dim - 1) : 1.0;
    if (inside > 1e-6 * std::max(1.0, smax) || (expected_dim < dim && outside < 100.0 * std::max(inside, 1e-14))) {
        std::ostringstream os;
        os << "cluster at " << (sign > 0 ? "+1" : "-1") << ": invariant subspace of dimension " << expected_dim
           << " not resolved (nilpotency deeper than the Sp(6) taxonomy or ambiguous gap)";
        note = os.str();
        return false;
    }
    q_out = svd.matrixV().rightCols(expected_dim);
    return true;
}

inline void classify_unity_cluster(const Matrix& m, int sign, int count, BlockDecomposition& out) {
    const int dim = static_cast<int>(m.rows());
    if (count % 2 != 0) {
        out.residual_report.push_back(std::string("cluster at ") + (sign > 0 ? "+1" : "-1") +
                                      " has odd multiplicity " + std::to_string(count));
        return;
    }
    Matrix q;
    std::string note;
    if (!unity_cluster_basis(m, sign, count, q, note)) {
        out.residual_report.push_back(note);
        return;
    }

    // Restriction to the invariant subspace; E = kernel of (M ∓ I) inside it.
    const Matrix m_sub = q.transpose() * m * q;
    const Matrix n_sub = m_sub - sign * Matrix::Identity(count, count);
    Eigen::JacobiSVD<Matrix> svd_n(n_sub);
    int e_dim = 0;
    for (int i = 0; i < count; ++i)
        if (svd_n.singularValues()(i) < 1e-5 * std::max(1.0, svd_n.singularValues()(0))) ++e_dim;
    const int rank_n = count - e_dim;

    // b-signs from the signature of B = sym(Qᵀ J (M ∓ I) Q): one positive
    // eigenvalue per N1(±1,+1), one negative per N1(±1,-1), null directions
    // are the eigenspace (b = 0 planes).
    const Matrix j = standard_form(dim / 2);
    const Matrix n_full = m - sign * Matrix::Identity(dim, dim);
    Matrix big_b = q.transpose() * j * n_full * q;
    big_b = 0.5 * (big_b + big_b.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> esb(big_b);
    const double b_tol = 1e-6 * std::max(1.0, big_b.cwiseAbs().maxCoeff());
    int pos = 0, neg = 0;
    for (int i = 0; i < count; ++i) {
        if (esb.eigenvalues()(i) > b_tol) ++pos;
        else if (esb.eigenvalues()(i) < -b_tol) ++neg;
    }

    if (pos + neg != rank_n) {
        std::ostringstream os;
        os << "cluster at " << (sign > 0 ? "+1" : "-1") << ": pairing-form rank " << (pos + neg)
           << " disagrees with nilpotent rank " << rank_n;
        out.residual_report.push_back(os.str());
        return;
    }
    const int zero_blocks = count / 2 - pos - neg;
    if (zero_blocks < 0) {
        out.residual_report.push_back("cluster signature exceeds block capacity");
        return;
    }
    for (int i = 0; i < pos; ++i) out.blocks.push_back(BlockLabel::n1(sign, +1));
    for (int i = 0; i < neg; ++i) out.blocks.push_back(BlockLabel::n1(sign, -1));
    for (int i = 0; i < zero_blocks; ++i) out.blocks.push_back(BlockLabel::n1(sign, 0));
    out.accounted_dim += count;
}

} // namespace detail

// Clusters the spectrum and classifies:
//   eigenvalue clusters at ±1          -> N1(±1, b), b from the pairing form;
//   unit-circle conjugate pairs        -> R(θ), orientation from ω(u, Mu);
//   real pairs (λ, 1/λ), |λ| > 1       -> HyperbolicPair(λ);
//   off-circle complex quadruples      -> ComplexQuadruple(λ).
// Structure outside the taxonomy lands in residual_report and is omitted.
inline BlockDecomposition classify_blocks(const SymplecticMatrix& msp, double tol = 1e-7,
                                          double circle_tol = 1e-8) {
    const Matrix& m = msp.entries();
    const int dim = msp.dim();
    BlockDecomposition out;

    Eigen::EigenSolver<Matrix> es(m, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success) throw AccuracyError("classify_blocks: eigensolver failed");
    const auto& ev = es.eigenvalues();

    // Defective eigenvalues at ±1 split by O(sqrt(eps)·cond), so the ±1 cluster
    // window is wider than the generic clustering tolerance.
    const double unity_tol = std::max(tol, 1e-5);

    std::vector<int> state(dim, 0); // 0 = unprocessed, 1 = consumed
    int count_p = 0, count_m = 0;
    for (int i = 0; i < dim; ++i) {
        if (std::abs(ev(i) - Complex(1.0, 0.0)) < unity_tol) { state[i] = 1; ++count_p; }
        else if (std::abs(ev(i) + Complex(1.0, 0.0)) < unity_tol) { state[i] = 1; ++count_m; }
    }
    if (count_p > 0) detail::classify_unity_cluster(m, +1, count_p, out);
    if (count_m > 0) detail::classify_unity_cluster(m, -1, count_m, out);

    // Unit-circle rotations: process each positive-imaginary eigenvector plane.
    for (int i = 0; i < dim; ++i) {
        if (state[i]) continue;
        const Complex l = ev(i);
        if (std::abs(std::abs(l) - 1.0) >= circle_tol) continue;
        if (l.imag() <= 0.0) continue; // conjugate partner handles the plane
        // consume the conjugate partner
        int partner = -1;
        for (int k = 0; k < dim; ++k) {
            if (k == i || state[k]) continue;
            if (std::abs(ev(k) - std::conj(l)) < std::max(tol, 1e-9)) { partner = k; break; }
        }
        if (partner < 0) {
            out.residual_report.push_back("unit-circle eigenvalue without conjugate partner");
            state[i] = 1;
            continue;
        }
        state[i] = state[partner] = 1;
        Eigen::VectorXcd z = es.eigenvectors().col(i);
        Matrix plane(dim, 2);
        plane.col(0) = z.real();
        plane.col(1) = z.imag();
        Eigen::HouseholderQR<Matrix> qr(plane);
        Matrix qp = qr.householderQ() * Matrix::Identity(dim, 2);
        const Vector u = qp.col(0);
        const double s = omega(u, m * u);
        const double theta0 = std::abs(std::arg(l)); // in (0, π)
        const double theta = s > 0.0 ? theta0 : kTwoPi - theta0;
        out.blocks.push_back(BlockLabel::rotation(theta));
        out.accounted_dim += 2;
    }

    // Off-circle structure: real hyperbolic pairs and complex quadruples.
    for (int i = 0; i < dim; ++i) {
        if (state[i]) continue;
        const Complex l = ev(i);
        if (std::abs(l) <= 1.0) continue; // handled with its |λ| > 1 partner
        const double pair_tol = std::max(tol * 10.0, 1e-9) * std::max(1.0, std::abs(l));
        if (std::abs(l.imag()) < 1e-9 * std::max(1.0, std::abs(l))) {
            int partner = -1;
            for (int k = 0; k < dim; ++k) {
                if (state[k] || k == i) continue;
                if (std::abs(ev(k) - 1.0 / l) < pair_tol) { partner = k; break; }
            }
            if (partner < 0) {
                out.residual_report.push_back("real eigenvalue without reciprocal partner");
                state[i] = 1;
                continue;
            }
            state[i] = state[partner] = 1;
            out.blocks.push_back(BlockLabel::hyperbolic(l.real()));
            out.accounted_dim += 2;
        } else {
            if (l.imag() < 0.0) continue; // positive-imaginary representative drives
            int pc = -1, pr = -1, prc = -1;
            for (int k = 0; k < dim; ++k) {
                if (state[k] || k == i) continue;
                if (pc < 0 && std::abs(ev(k) - std::conj(l)) < pair_tol) { pc = k; continue; }
                if (pr < 0 && std::abs(ev(k) - 1.0 / l) < pair_tol) { pr = k; continue; }
                if (prc < 0 && std::abs(ev(k) - std::conj(1.0 / l)) < pair_tol) { prc = k; continue; }
            }
            if (pc < 0 || pr < 0 || prc < 0) {
                out.residual_report.push_back("complex off-circle eigenvalue without full quadruple");
                state[i] = 1;
                continue;
            }
            state[i] = state[pc] = state[pr] = state[prc] = 1;
            out.blocks.push_back(BlockLabel::quadruple(l));
            out.accounted_dim += 4;
        }
    }

    for (int i = 0; i < dim; ++i) {
        if (!state[i]) {
            std::ostringstream os;
            os << "unclassified eigenvalue " << ev(i).real() << (ev(i).imag() >= 0 ? "+" : "") << ev(i).imag()
               << "i";
            out.residual_report.push_back(os.str());
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Splitting numbers
// ---------------------------------------------------------------------------

struct SplittingEntry {
    BlockLabel block;
    int s_plus = 0;  // S^+_M(1)
    int nu_one = 0;  // ν_1(M)
};

// Only the two entries the source material pins down; anything else is refused.
inline SplittingEntry splitting_data(const BlockLabel& block) {
    if (block.kind == BlockLabel::Kind::N1 && block.eig == 1 && block.b == 1)
        return SplittingEntry{block, 1, 1};
    if (block.kind == BlockLabel::Kind::N1 && block.eig == 1 && block.b == -1)
        return SplittingEntry{block, 0, 1};
    throw StructuralError("splitting_data: unsupported block " + block.str() +
                          " (table restricted to N1(1,1) and N1(1,-1))");
}

// ---------------------------------------------------------------------------
// Random symplectic conjugators (exp of a Hamiltonian matrix)
// ---------------------------------------------------------------------------

namespace detail {

// Scaling-and-squaring with a Taylor core; inputs here are small (||A|| ~ 1).
inline Matrix expm(Matrix a) {
    int squarings = 0;
    double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();
    while (nrm > 0.5) {
        a *= 0.5;
        nrm *= 0.5;
        ++squarings;
    }
    const int dim = static_cast<int>(a.rows());
    Matrix result = Matrix::Identity(dim, dim);
    Matrix term = Matrix::Identity(dim, dim);
    for (int k = 1; k <= 20; ++k) {
        term = (term * a / static_cast<double>(k)).eval();
        result += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    for (int i = 0; i < squarings; ++i) result = (result * result).eval();
    return result;
}

} // namespace detail

// Random symplectic matrix exp(J S) with S symmetric; resamples until the
// condition number stays below max_cond.
template <typename Rng>
Matrix random_symplectic(int n, Rng& rng, double max_cond = 1e3, double scale = 0.6) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Matrix j = standard_form(n);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Matrix s(2 * n, 2 * n);
        for (int i = 0; i < 2 * n; ++i)
            for (int k = i; k < 2 * n; ++k) s(i, k) = s(k, i) = scale * gauss(rng);
        Matrix p = detail::expm(j * s);
        Eigen::JacobiSVD<Matrix> svd(p);
        const double cond = svd.singularValues()(0) / svd.singularValues()(2 * n - 1);
        if (cond < max_cond) return p;
        scale *= 0.7;
    }
    throw AccuracyError("random_symplectic: could not draw a well-conditioned conjugator");
}

} // namespace symindex
