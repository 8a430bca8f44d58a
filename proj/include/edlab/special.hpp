#ifndef EDLAB_SPECIAL_HPP
#define EDLAB_SPECIAL_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace edlab {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    /// Rule mapped onto [a, b].
    GaussRule mapped(double a, double b) const;
};

const GaussRule& gauss_legendre(int n);

/// Integrate f over [a, b] with an n-point Gauss-Legendre rule.
double gauss_integrate(const std::function<double(double)>& f, double a, double b, int n = 32);

/// Integrate f over [a, b] split into `panels` equal panels, n points each.
double gauss_integrate_panels(const std::function<double(double)>& f, double a, double b,
                              int panels, int n = 32);

/// Deterministic pairwise (binary-tree) summation; result does not depend on
/// how callers partition work across threads as long as block boundaries are
/// fixed, which is how the row-block helpers below use it.
double pairwise_sum(std::span<const double> values);

/// Evaluate Sum_i block(i) for i in [0, count) over fixed-size row blocks,
/// possibly in parallel, reducing block results in index order.
double blocked_sum(std::size_t count, std::size_t block_size,
                   const std::function<double(std::size_t, std::size_t)>& block_fn);

/// Global worker count used by blocked_sum (1 = sequential). Values are
/// clamped to [1, hardware_concurrency].
void set_thread_count(int n);
int thread_count();

/// Kummer's confluent hypergeometric function 1F1(a; b; z) for b > 0, z >= 0.
double hyp1f1(double a, double b, double z);

/// E|Z|^q where Z ~ N(mu, s^2 I_n) with |mu| = delta * s; q > -n required.
/// Used both as the closed-form route for energy kernels between isotropic
/// Gaussians and as a test oracle.
double gaussian_abs_moment(int n, double q, double s, double delta);

/// Standard normal CDF and quantile.
double normal_cdf(double x);
double normal_quantile(double p);

/// Regularized incomplete gamma functions P(a,x) (lower) and Q(a,x) (upper).
double gamma_p(double a, double x);
double gamma_q(double a, double x);
double gamma_p_inv(double a, double p);

/// Regularized incomplete beta I_x(a,b) and its inverse in x.
double beta_inc(double a, double b, double x);
double beta_inc_inv(double a, double b, double p);

/// ln Gamma and Gamma(a)/Gamma(b) computed in log space.
double gamma_ratio(double a, double b);

/// Brent root bracketing solver on [a, b]; f(a), f(b) must differ in sign.
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-12, int max_iter = 200);

}  // namespace edlab

#endif
