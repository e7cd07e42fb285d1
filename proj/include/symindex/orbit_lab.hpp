#pragma once

// Numerical side: convex surface models (ellipsoids and quartic-perturbed
// ellipsoids), closed-characteristic computation (analytic for ellipsoids,
// Newton shooting for perturbations), monodromy by integrating the linearized
// flow, the Maslov-type index of the monodromy path, and orbit classification.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "symindex/errors.hpp"
#include "symindex/iter_engine.hpp"
#include "symindex/sp_core.hpp"

namespace symindex {

// ---------------------------------------------------------------------------
// Surfaces
// ---------------------------------------------------------------------------

// Σ = H^{-1}(1). For ellipsoids H = Q^{α/2} with Q(x) = Σ_k (x_k² + x_{k+n}²)/r_k²,
// so Σ is the same surface for every α and α = 2 gives the quadratic Hamiltonian
// with a constant Hessian. Perturbed ellipsoids add a quartic bump ε·Σ c_k x_k⁴
// (α fixed at 2); convexity is re-probed after perturbation.
class ConvexSurface {
public:
    enum class Kind { Ellipsoid, PerturbedEllipsoid };

    static ConvexSurface ellipsoid(std::vector<double> radii, double alpha = 2.0) {
        ConvexSurface s;
        s.kind_ = Kind::Ellipsoid;
        s.radii_ = std::move(radii);
        s.alpha_ = alpha;
        s.init();
        std::ostringstream os;
        os << "ellipsoid n=" << s.n_ << " alpha=" << alpha;
        s.description_ = os.str();
        return s;
    }

    static ConvexSurface perturbed_ellipsoid(std::vector<double> radii, double epsilon,
                                             std::vector<double> coeffs, unsigned probe_seed = 20240901,
                                             int probe_samples = 1000) {
        ConvexSurface s;
        s.kind_ = Kind::PerturbedEllipsoid;
        s.radii_ = std::move(radii);
        s.alpha_ = 2.0;
        s.epsilon_ = epsilon;
        s.coeffs_ = std::move(coeffs);
        s.init();
        if (static_cast<int>(s.coeffs_.size()) != 2 * s.n_)
            throw ValidationError("perturbed_ellipsoid: need one quartic coefficient per coordinate (2n)");
        s.convexity_probe(probe_samples, probe_seed);
        std::ostringstream os;
        os << "perturbed ellipsoid n=" << s.n_ << " epsilon=" << epsilon;
        s.description_ = os.str();
        return s;
    }

    Kind kind() const { return kind_; }
    int n() const { return n_; }
    int dim() const { return 2 * n_; }
    double alpha() const { return alpha_; }
    double epsilon() const { return epsilon_; }
    const std::vector<double>& radii() const { return radii_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    const std::string& description() const { return description_; }

    double value(const Vector& x) const {
        const double q = quad(x);
        double h = (alpha_ == 2.0) ? q : std::pow(q, alpha_ / 2.0);
        if (kind_ == Kind::PerturbedEllipsoid) h += epsilon_ * quartic(x);
        return h;
    }

    Vector gradient(const Vector& x) const {
        Vector g = quad_grad(x);
        if (alpha_ != 2.0) {
            const double q = quad(x);
            g *= (alpha_ / 2.0) * std::pow(q, alpha_ / 2.0 - 1.0);
        }
        if (kind_ == Kind::PerturbedEllipsoid)
            for (int k = 0; k < 2 * n_; ++k) g[k] += 4.0 * epsilon_ * coeffs_[k] * x[k] * x[k] * x[k];
        return g;
    }

    Matrix hessian(const Vector& x) const {
        Matrix h;
        if (alpha_ == 2.0) {
            h = quad_hess();
        } else {
            const double q = quad(x);
            const Vector g = quad_grad(x);
            const double a2 = alpha_ / 2.0;
            h = a2 * (a2 - 1.0) * std::pow(q, a2 - 2.0) * (g * g.transpose()) +
                a2 * std::pow(q, a2 - 1.0) * quad_hess();
        }
        if (kind_ == Kind::PerturbedEllipsoid)
            for (int k = 0; k < 2 * n_; ++k) h(k, k) += 12.0 * epsilon_ * coeffs_[k] * x[k] * x[k];
        return h;
    }

    // Scale a direction onto Σ by solving H(ρu) = 1 along the ray.
    double shell_scale(const Vector& u) const {
        double lo = 1e-8, hi = 1.0;
        int guard = 0;
        while (value(hi * u) < 1.0) {
            hi *= 2.0;
            if (++guard > 60) throw ValidationError("shell_scale: H does not reach 1 along the ray");
        }
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (value(mid * u) < 1.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

private:
    void init() {
        n_ = static_cast<int>(radii_.size());
        if (n_ < 1) throw ValidationError("surface: need at least one radius");
        for (double r : radii_)
            if (!(r > 0.0)) throw ValidationError("surface: radii must be positive");
        if (!(alpha_ > 1.0))
            throw ValidationError("surface: homogeneity exponent must exceed 1");
    }

    double quad(const Vector& x) const {
        double q = 0.0;
        for (int k = 0; k < n_; ++k) q += (x[k] * x[k] + x[n_ + k] * x[n_ + k]) / (radii_[k] * radii_[k]);
        return q;
    }
    double quartic(const Vector& x) const {
        double q = 0.0;
        for (int k = 0; k < 2 * n_; ++k) q += coeffs_[k] * x[k] * x[k] * x[k] * x[k];
        return q;
    }
    Vector quad_grad(const Vector& x) const {
        Vector g(2 * n_);
        for (int k = 0; k < n_; ++k) {
            g[k] = 2.0 * x[k] / (radii_[k] * radii_[k]);
            g[n_ + k] = 2.0 * x[n_ + k] / (radii_[k] * radii_[k]);
        }
        return g;
    }
    Matrix quad_hess() const {
        Matrix h = Matrix::Zero(2 * n_, 2 * n_);
        for (int k = 0; k < n_; ++k) {
            h(k, k) = 2.0 / (radii_[k] * radii_[k]);
            h(n_ + k, n_ + k) = 2.0 / (radii_[k] * radii_[k]);
        }
        return h;
    }

    // H > 0 and H'' positive definite on a sampled band around the shell.
    void convexity_probe(int samples, unsigned seed) const {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int s = 0; s < samples; ++s) {
            Vector u(2 * n_);
            for (int k = 0; k < 2 * n_; ++k) u[k] = gauss(rng);
            if (u.norm() < 1e-12) continue;
            u.normalize();
            const double rho = shell_scale(u);
            for (double f : {0.9, 1.0, 1.1}) {
                const Vector x = f * rho * u;
                if (!(value(x) > 0.0))
                    throw ValidationError("convexity probe: H <= 0 near the shell");
                Eigen::LLT<Matrix> llt(hessian(x));
                if (llt.info() != Eigen::Success) {
                    std::ostringstream os;
                    os << "convexity probe: Hessian not positive definite at sample " << s
                       << " (|x| = " << x.norm() << ")";
                    throw ValidationError(os.str());
                }
            }
        }
    }

    Kind kind_ = Kind::Ellipsoid;
    int n_ = 0;
    std::vector<double> radii_;
    double alpha_ = 2.0;
    double epsilon_ = 0.0;
    std::vector<double> coeffs_;
    std::string description_;
};

// ---------------------------------------------------------------------------
// Flow integration (classical fixed-step 4th order)
// ---------------------------------------------------------------------------

inline Vector apply_j(const Vector& v) {
    const int n = static_cast<int>(v.size()) / 2;
    Vector out(2 * n);
    out.head(n) = -v.tail(n);
    out.tail(n) = v.head(n);
    return out;
}

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
    double energy_drift = 0.0;
};

namespace detail {

inline Vector flow_rhs(const ConvexSurface& s, const Vector& x) { return apply_j(s.gradient(x)); }

inline Vector rk4_step(const ConvexSurface& s, const Vector& x, double h) {
    const Vector k1 = flow_rhs(s, x);
    const Vector k2 = flow_rhs(s, x + 0.5 * h * k1);
    const Vector k3 = flow_rhs(s, x + 0.5 * h * k2);
    const Vector k4 = flow_rhs(s, x + h * k3);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// One RK4 step of the joint system ẏ = JH'(y), Ẇ = JH''(y)W.
inline void rk4_joint_step(const ConvexSurface& s, Vector& y, Matrix& w, double h) {
    const auto rhs = [&s](const Vector& yy, const Matrix& ww, Vector& dy, Matrix& dw) {
        dy = flow_rhs(s, yy);
        const Matrix hess = s.hessian(yy);
        const int n = static_cast<int>(yy.size()) / 2;
        Matrix hw = hess * ww;
        dw.resize(2 * n, 2 * n);
        dw.topRows(n) = -hw.bottomRows(n);
        dw.bottomRows(n) = hw.topRows(n);
    };
    Vector k1y, k2y, k3y, k4y;
    Matrix k1w, k2w, k3w, k4w;
    rhs(y, w, k1y, k1w);
    rhs(y + 0.5 * h * k1y, w + 0.5 * h * k1w, k2y, k2w);
    rhs(y + 0.5 * h * k2y, w + 0.5 * h * k2w, k3y, k3w);
    rhs(y + h * k3y, w + h * k3w, k4y, k4w);
    y += (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    w += (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
}

} // namespace detail

inline Trajectory flow_integrate(const ConvexSurface& s, const Vector& x0, double t_end, int steps) {
    if (std::abs(s.value(x0) - 1.0) > 1e-9)
        throw ValidationError("flow_integrate: starting point is not on the unit energy shell");
    Trajectory tr;
    if (t_end == 0.0) {
        tr.times = {0.0};
        tr.states = {x0};
        return tr;
    }
    if (steps < 100) throw ValidationError("flow_integrate: need at least 100 steps");
    const double h = t_end / steps;
    tr.times.reserve(steps + 1);
    tr.states.reserve(steps + 1);
    Vector y = x0;
    tr.times.push_back(0.0);
    tr.states.push_back(y);
    double drift = 0.0;
    for (int i = 1; i <= steps; ++i) {
        y = detail::rk4_step(s, y, h);
        tr.times.push_back(i * h);
        tr.states.push_back(y);
        drift = std::max(drift, std::abs(s.value(y) - 1.0));
    }
    tr.energy_drift = drift;
    if (drift > 1e-5) {
        std::ostringstream os;
        os << "flow_integrate: energy drift " << drift << " exceeds 1e-5; increase the step count";
        throw AccuracyError(os.str());
    }
    return tr;
}

// ---------------------------------------------------------------------------
// Closed orbits
// ---------------------------------------------------------------------------

struct ClosedOrbit {
    std::shared_ptr<const ConvexSurface> surface;
    double period = 0.0;
    Vector x0;
    std::vector<double> sample_times;
    std::vector<Vector> samples;
    double closure_residual = 0.0;
    double energy_drift = 0.0;
};

// The n planar circular characteristics of the ellipsoid: orbit k lives in the
// (x_k, x_{k+n}) plane with radius r_k and angular speed α/r_k².
inline std::vector<ClosedOrbit> ellipsoid_orbits(const ConvexSurface& s, int samples_per_orbit = 256) {
    if (s.kind() != ConvexSurface::Kind::Ellipsoid)
        throw ValidationError("ellipsoid_orbits: surface is not an ellipsoid");
    const auto& r = s.radii();
    const int n = s.n();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(r[i] * r[i] - r[j] * r[j]) < 1e-9 * std::max(r[i] * r[i], r[j] * r[j]))
                throw ValidationError(
                    "ellipsoid_orbits: coincident radii give non-isolated characteristics (rejected)");

    auto shared = std::make_shared<ConvexSurface>(s);
    std::vector<ClosedOrbit> orbits;
    for (int k = 0; k < n; ++k) {
        ClosedOrbit o;
        o.surface = shared;
        const double omega_k = s.alpha() / (r[k] * r[k]);
        o.period = kTwoPi / omega_k;
        o.x0 = Vector::Zero(2 * n);
        o.x0[k] = r[k];
        o.sample_times.reserve(samples_per_orbit + 1);
        o.samples.reserve(samples_per_orbit + 1);
        for (int i = 0; i <= samples_per_orbit; ++i) {
            const double t = o.period * i / samples_per_orbit;
            Vector y = Vector::Zero(2 * n);
            y[k] = r[k] * std::cos(omega_k * t);
            y[n + k] = r[k] * std::sin(omega_k * t);
            o.sample_times.push_back(t);
            o.samples.push_back(y);
        }
        o.closure_residual = (o.samples.back() - o.samples.front()).norm();
        o.energy_drift = 0.0;
        orbits.push_back(std::move(o));
    }
    return orbits;
}

// ---------------------------------------------------------------------------
// Newton shooting refinement
// ---------------------------------------------------------------------------

namespace detail {

struct ShotResult {
    Vector y_end;
    Matrix w_end;
    double drift = 0.0;
};

inline ShotResult shoot(const ConvexSurface& s, const Vector& x0, double tau, int steps) {
    ShotResult r;
    r.y_end = x0;
    r.w_end = Matrix::Identity(s.dim(), s.dim());
    const double h = tau / steps;
    for (int i = 0; i < steps; ++i) {
        rk4_joint_step(s, r.y_end, r.w_end, h);
        r.drift = std::max(r.drift, std::abs(s.value(r.y_end) - 1.0));
    }
    return r;
}

} // namespace detail

// Newton (Gauss-Newton on the consistent system) for y(τ; x0) = x0 with the
// energy constraint H(x0) = 1 and a fixed phase section through the seed.
inline ClosedOrbit refine_orbit(const ConvexSurface& s, const ClosedOrbit& guess, double tol = 1e-10,
                                int max_iter = 30, int steps = 2000) {
    const int d = s.dim();
    double diameter = 0.0;
    if (s.kind() == ConvexSurface::Kind::Ellipsoid || s.kind() == ConvexSurface::Kind::PerturbedEllipsoid)
        for (double r : s.radii()) diameter = std::max(diameter, 2.0 * r);
    Vector x0 = guess.x0;
    double tau = guess.period;
    if (tau <= 0.0) throw ValidationError("refine_orbit: guess period must be positive");

    {
        const auto probe = detail::shoot(s, x0, tau, steps);
        const double res0 = (probe.y_end - x0).norm();
        if (res0 >= 0.1 * diameter) {
            std::ostringstream os;
            os << "refine_orbit: guess closure residual " << res0 << " is not below 0.1 * diameter ("
               << 0.1 * diameter << ")";
            throw ValidationError(os.str());
        }
    }

    const Vector v_ref = apply_j(s.gradient(x0)); // fixed transversal section
    std::vector<double> history;

    for (int it = 0; it <= max_iter; ++it) {
        const auto shot = detail::shoot(s, x0, tau, steps);
        const Vector f = shot.y_end - x0;
        const double res = f.norm();
        history.push_back(res);
        if (res <= tol) {
            ClosedOrbit orbit;
            orbit.surface = std::make_shared<ConvexSurface>(s);
            orbit.period = tau;
            orbit.x0 = x0;
            const int keep = 512;
            Trajectory tr = flow_integrate(s, x0, tau, std::max(steps, 512));
            const int stride = std::max<int>(1, static_cast<int>(tr.states.size() - 1) / keep);
            for (size_t i = 0; i < tr.states.size(); i += stride) {
                orbit.sample_times.push_back(tr.times[i]);
                orbit.samples.push_back(tr.states[i]);
            }
            orbit.closure_residual = res;
            orbit.energy_drift = std::max(shot.drift, tr.energy_drift);
            return orbit;
        }

        Matrix a(d + 2, d + 1);
        Vector rhs(d + 2);
        a.block(0, 0, d, d) = shot.w_end - Matrix::Identity(d, d);
        a.block(0, d, d, 1) = apply_j(s.gradient(shot.y_end));
        a.block(d, 0, 1, d) = s.gradient(x0).transpose();
        a(d, d) = 0.0;
        a.block(d + 1, 0, 1, d) = v_ref.transpose();
        a(d + 1, d) = 0.0;
        rhs.head(d) = -f;
        rhs(d) = 1.0 - s.value(x0);
        rhs(d + 1) = 0.0;

        Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const double smin = svd.singularValues()(d);
        if (smin < 1e-12 * svd.singularValues()(0))
            throw Error("refine_orbit: shooting Jacobian singular (orbit not isolated transversally)");
        const Vector delta = svd.solve(rhs);
        x0 += delta.head(d);
        tau += delta(d);
        if (tau <= 0.0)
            throw NonConvergenceError("refine_orbit: period became non-positive", history);
    }
    std::ostringstream os;
    os << "refine_orbit: no convergence after " << max_iter << " iterations (last residual "
       << history.back() << ")";
    throw NonConvergenceError(os.str(), history);
}

// ---------------------------------------------------------------------------
// Monodromy
// ---------------------------------------------------------------------------

struct MonodromyResult {
    Matrix gamma_tau;
    std::vector<Complex> multipliers;
    long long integration_steps = 0;
    double sympl_residual = 0.0;
    std::vector<double> checkpoint_residuals;
    std::vector<double> path_times;   // dense path of the linearized flow
    std::vector<Matrix> path;
    std::vector<Vector> path_states;

    SymplecticMatrix accepted(double tol = 1e-7) const { return SymplecticMatrix(gamma_tau, tol); }
};

inline MonodromyResult monodromy(const ClosedOrbit& orbit, int steps, double accept_tol = 1e-7,
                                 bool store_path = true) {
    const ConvexSurface& s = *orbit.surface;
    const int d = s.dim();
    const Matrix j = standard_form(s.n());
    MonodromyResult res;
    res.integration_steps = steps;
    Vector y = orbit.x0;
    Matrix w = Matrix::Identity(d, d);
    const double h = orbit.period / steps;
    const int checkpoint_every = std::max(1, steps / 16);
    if (store_path) {
        res.path_times.reserve(steps + 1);
        res.path.reserve(steps + 1);
        res.path_states.reserve(steps + 1);
        res.path_times.push_back(0.0);
        res.path.push_back(w);
        res.path_states.push_back(y);
    }
    for (int i = 1; i <= steps; ++i) {
        detail::rk4_joint_step(s, y, w, h);
        if (store_path) {
            res.path_times.push_back(i * h);
            res.path.push_back(w);
            res.path_states.push_back(y);
        }
        if (i % checkpoint_every == 0 || i == steps)
            res.checkpoint_residuals.push_back((w.transpose() * j * w - j).cwiseAbs().maxCoeff());
    }
    res.gamma_tau = w;
    res.sympl_residual = res.checkpoint_residuals.back();
    if (res.sympl_residual > accept_tol) {
        std::ostringstream os;
        os << "monodromy: symplecticity residual " << res.sympl_residual << " exceeds " << accept_tol
           << "; increase the step count";
        throw AccuracyError(os.str());
    }
    res.multipliers = floquet_multipliers(SymplecticMatrix(w, accept_tol));
    if (multiplicity_near(res.multipliers, Complex(1.0, 0.0), 1e-6) < 2)
        throw AccuracyError("monodromy: multiplier 1 does not appear with multiplicity >= 2 "
                            "(orbit direction and energy direction); orbit data is inconsistent");
    return res;
}

// ---------------------------------------------------------------------------
// Maslov-type index of the monodromy path
// ---------------------------------------------------------------------------

struct CZIndexResult {
    long long i_maslov = 0;
    long long i_ekeland = 0;
    std::vector<double> winding_trace;  // Δ(t)/π, downsampled
    double total_winding_over_pi = 0.0;
    std::vector<double> crossing_times;
    std::vector<int> crossing_dims;
    bool degenerate_endpoint = false;
    int endpoint_nullity = 0;
    long long interval_lo = 0;  // [i, i + ν - 1] reported when the endpoint carries
    long long interval_hi = 0;  // extra multipliers at 1
    std::string warning;
};

namespace detail {

inline double sigma_min_of_crossing(const Matrix& g) {
    const int d = static_cast<int>(g.rows());
    Eigen::JacobiSVD<Matrix> svd(g - Matrix::Identity(d, d));
    return svd.singularValues()(d - 1);
}

// Continuous argument of det of the unitary polar part, tracked stepwise.
inline std::vector<double> winding_sequence(const std::vector<Matrix>& path, int n) {
    std::vector<double> delta;
    delta.reserve(path.size());
    double acc = 0.0;
    Complex prev(1.0, 0.0);
    for (size_t i = 0; i < path.size(); ++i) {
        const Matrix& g = path[i];
        Eigen::SelfAdjointEigenSolver<Matrix> es(g * g.transpose());
        const Matrix o = es.operatorInverseSqrt() * g;
        Eigen::MatrixXcd u(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) u(r, c) = Complex(o(r, c), o(n + r, c));
        Complex det = u.determinant();
        det /= std::abs(det);
        if (i > 0) {
            const double jump = std::arg(det / prev);
            if (std::abs(jump) > kPi / 2.0)
                throw AccuracyError("cz_index: winding continuity lost between path samples; "
                                    "retry with finer path sampling");
            acc += jump;
        }
        prev = det;
        delta.push_back(acc);
    }
    return delta;
}

} // namespace detail

// Index of a symplectic path γ with γ(0) = I. For a convex Hamiltonian path
// every crossing form is H''|kernel, positive definite, so
//   i(γ) = n + Σ_{t in (0,T)} dim ker(γ(t) - I),
// which reproduces the rotation closed form 2·floor(ωT/2π)+1 per block (and
// 2(ωT/2π)−1 at exact full turns). The winding of det of the unitary polar
// part is tracked as a diagnostic and must stay within n of the index.
inline CZIndexResult cz_index_path(const std::vector<double>& times, const std::vector<Matrix>& path,
                                   const std::function<Matrix(double)>& eval, int n,
                                   const std::function<Matrix(double)>* hessian_at = nullptr,
                                   double kernel_tol = 1e-6) {
    if (times.size() != path.size() || times.size() < 8)
        throw ValidationError("cz_index_path: need a dense sampled path");
    const double t_end = times.back();
    CZIndexResult out;

    // 1. surface scan of σ_min(γ(t) - I)
    std::vector<double> smin(times.size());
    for (size_t i = 0; i < path.size(); ++i) smin[i] = detail::sigma_min_of_crossing(path[i]);

    // 2. local minima refined by golden-section on the exact evaluator
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    for (size_t i = 1; i + 1 < times.size(); ++i) {
        if (!(smin[i] <= smin[i - 1] && smin[i] <= smin[i + 1] && smin[i] < 0.5)) continue;
        double a = times[i - 1], b = times[i + 1];
        double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
        double f1 = detail::sigma_min_of_crossing(eval(x1));
        double f2 = detail::sigma_min_of_crossing(eval(x2));
        for (int it = 0; it < 80 && (b - a) > 1e-13 * t_end; ++it) {
            if (f1 < f2) {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - golden * (b - a);
                f1 = detail::sigma_min_of_crossing(eval(x1));
            } else {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + golden * (b - a);
                f2 = detail::sigma_min_of_crossing(eval(x2));
            }
        }
        const double t_star = 0.5 * (a + b);
        if (t_star < 1e-9 * t_end || t_star > (1.0 - 1e-9) * t_end) continue; // endpoint degeneracies
        if (!out.crossing_times.empty() && std::abs(t_star - out.crossing_times.back()) < 1e-7 * t_end)
            continue;

        const Matrix g = eval(t_star);
        Eigen::JacobiSVD<Matrix> svd(g - Matrix::Identity(2 * n, 2 * n), Eigen::ComputeFullV);
        int kdim = 0;
        for (int k = 0; k < 2 * n; ++k)
            if (svd.singularValues()(k) < kernel_tol) ++kdim;
        if (kdim == 0) {
            const double gap = svd.singularValues()(2 * n - 1);
            if (gap < 100.0 * kernel_tol && gap >= kernel_tol) {
                std::ostringstream os;
                os << "cz_index: ambiguous kernel at t = " << t_star << " (sigma_min = " << gap
                   << "); retry with finer path sampling";
                throw AccuracyError(os.str());
            }
            continue; // near-miss dip, not a crossing
        }
        if (hessian_at) {
            // convexity: the crossing form v ↦ v·H''v on the kernel must be positive
            const Matrix hess = (*hessian_at)(t_star);
            for (int k = 2 * n - kdim; k < 2 * n; ++k) {
                const Vector v = svd.matrixV().col(k);
                if (v.dot(hess * v) <= 0.0)
                    throw AccuracyError("cz_index: crossing form not positive definite (non-convex data?)");
            }
        }
        out.crossing_times.push_back(t_star);
        out.crossing_dims.push_back(kdim);
    }

    long long total = 0;
    for (int k : out.crossing_dims) total += k;
    out.i_ekeland = total;
    out.i_maslov = total + n;

    // 3. endpoint nullity and the degenerate-endpoint interval
    {
        Eigen::JacobiSVD<Matrix> svd(path.back() - Matrix::Identity(2 * n, 2 * n));
        for (int k = 0; k < 2 * n; ++k)
            if (svd.singularValues()(k) < kernel_tol) ++out.endpoint_nullity;
    }

    // 4. winding diagnostic
    const std::vector<double> delta = detail::winding_sequence(path, n);
    out.total_winding_over_pi = delta.back() / kPi;
    const size_t stride = std::max<size_t>(1, delta.size() / 256);
    for (size_t i = 0; i < delta.size(); i += stride) out.winding_trace.push_back(delta[i] / kPi);
    if (out.winding_trace.empty() || out.winding_trace.back() != delta.back() / kPi)
        out.winding_trace.push_back(delta.back() / kPi);
    if (std::abs(static_cast<double>(out.i_maslov) - out.total_winding_over_pi) > n + 1.0) {
        std::ostringstream os;
        os << "cz_index: winding/index cross-check off (i = " << out.i_maslov
           << ", winding/pi = " << out.total_winding_over_pi << ")";
        out.warning = os.str();
    }
    return out;
}

// Orbit-facing wrapper. The endpoint must carry multiplier 1 with multiplicity
// exactly 2 (orbit and energy directions) for a sharp index; extra multipliers
// at 1 set the degeneracy flag and the index interval [i, i + ν - 1].
inline CZIndexResult cz_index(const ClosedOrbit& orbit, const MonodromyResult& mono) {
    if (mono.path.empty())
        throw ValidationError("cz_index: monodromy was computed without a stored path");
    const ConvexSurface& s = *orbit.surface;
    const int n = s.n();

    // exact evaluator: re-integrate from the nearest stored grid point
    const auto eval = [&](double t) -> Matrix {
        const double h = orbit.period / static_cast<double>(mono.path.size() - 1);
        size_t i = std::min<size_t>(static_cast<size_t>(std::max(0.0, t / h)), mono.path.size() - 1);
        Vector y = mono.path_states[i];
        Matrix w = mono.path[i];
        const double rem = t - mono.path_times[i];
        if (std::abs(rem) > 1e-15 * orbit.period) {
            const int sub = 4;
            for (int k = 0; k < sub; ++k) detail::rk4_joint_step(s, y, w, rem / sub);
        }
        return w;
    };
    const std::function<Matrix(double)> eval_fn = eval;
    const std::function<Matrix(double)> hess_fn = [&](double t) -> Matrix {
        const double h = orbit.period / static_cast<double>(mono.path.size() - 1);
        size_t i = std::min<size_t>(static_cast<size_t>(std::max(0.0, t / h)), mono.path.size() - 1);
        Vector y = mono.path_states[i];
        const double rem = t - mono.path_times[i];
        if (std::abs(rem) > 1e-15 * orbit.period) {
            const int sub = 4;
            for (int k = 0; k < sub; ++k) y = detail::rk4_step(s, y, rem / sub);
        }
        return s.hessian(y);
    };

    CZIndexResult out = cz_index_path(mono.path_times, mono.path, eval_fn, n, &hess_fn);
    const int mult_one = multiplicity_near(mono.multipliers, Complex(1.0, 0.0), 1e-6);
    if (mult_one > 2) {
        out.degenerate_endpoint = true;
        out.interval_lo = out.i_maslov;
        out.interval_hi = out.i_maslov + out.endpoint_nullity - 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Orbit classification
// ---------------------------------------------------------------------------

struct OrbitClassification {
    bool elliptic = false;
    bool hyperbolic = false;
    bool non_degenerate = false;
    bool irrational_mean_verdict = false; // bounded-denominator statement
    long long rational_scan_q_max = 0;
    int elliptic_height = 0;
    int multiplicity_one = 0;
    double mean_index = 0.0;
    MonodromyProfile profile;
    BlockDecomposition decomposition;
    std::vector<RationalityVerdict> angle_verdicts;
    RationalityVerdict mean_verdict;
};

// Builds the symbolic profile in the normal form: the double-1 cluster maps to
// the mandatory leading N1(1,1); the transversal blocks carry over verbatim.
inline MonodromyProfile profile_from_decomposition(const BlockDecomposition& dec, int i1, int n) {
    MonodromyProfile p;
    p.i1 = i1;
    p.n = n;
    std::vector<BlockLabel> rest;
    bool leading_taken = false;
    for (const auto& b : dec.blocks) {
        if (!leading_taken && b.kind == BlockLabel::Kind::N1 && b.eig == 1) {
            leading_taken = true; // orbit + energy directions
            continue;
        }
        rest.push_back(b);
    }
    if (!leading_taken)
        throw StructuralError("profile_from_decomposition: no eigenvalue-1 block for the orbit direction");
    p.blocks.push_back(ProfileBlock::of(BlockLabel::n1(1, 1)));

    int rot = 0, n1_minus_one = 0, n1_plus = 0, n1_minus_other = 0;
    for (const auto& b : rest) {
        if (b.kind == BlockLabel::Kind::Rotation) ++rot;
        else if (b.kind == BlockLabel::Kind::N1 && b.eig == -1 && b.b == 1) ++n1_minus_one;
        else if (b.kind == BlockLabel::Kind::N1 && b.eig == 1) ++n1_plus;
        else if (b.kind == BlockLabel::Kind::N1 && b.eig == -1) ++n1_minus_other;
        p.blocks.push_back(ProfileBlock::of(b));
    }
    if (n1_plus == 2 && rest.size() == 2 &&
        rest[0].kind == BlockLabel::Kind::N1 && rest[0].b == -1 &&
        rest[1].kind == BlockLabel::Kind::N1 && rest[1].b == -1) {
        p.family = ProfileFamily::DoubleN1Minus;
    } else if (n1_plus > 0) {
        p.family = ProfileFamily::Case2;
    } else if (n1_minus_one > 0) {
        p.family = ProfileFamily::Case3;
    } else {
        p.family = ProfileFamily::RFamily;
    }
    validate_profile(p);
    return p;
}

inline OrbitClassification classify_orbit(const ClosedOrbit& orbit, const MonodromyResult& mono,
                                          const CZIndexResult& cz, long long q_max = 10000) {
    OrbitClassification c;
    const int n = orbit.surface->n();
    const SymplecticMatrix g = mono.accepted();
    c.elliptic_height = elliptic_height(g, 1e-6);
    c.multiplicity_one = multiplicity_near(mono.multipliers, Complex(1.0, 0.0), 1e-6);
    c.non_degenerate = (c.multiplicity_one == 2);
    c.elliptic = (c.elliptic_height == 2 * n);
    c.hyperbolic = (c.multiplicity_one == 2 && c.elliptic_height == 2);
    c.decomposition = classify_blocks(g);
    c.profile = profile_from_decomposition(c.decomposition, static_cast<int>(cz.i_maslov), n);
    c.mean_index = mean_index(c.profile).value;
    c.rational_scan_q_max = q_max;
    for (const auto& b : c.profile.blocks)
        if (b.label.kind == BlockLabel::Kind::Rotation)
            c.angle_verdicts.push_back(rationality_test(b.label.theta / kPi, q_max));
    c.mean_verdict = rationality_test(c.mean_index, q_max);
    c.irrational_mean_verdict = !c.mean_verdict.rational;
    return c;
}

} // namespace symindex
