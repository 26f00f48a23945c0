#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zonolab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct ZonolabError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatch, out-of-range index, bad argument.
struct DimensionError : ZonolabError {
    using ZonolabError::ZonolabError;
};

/// A combinatorial enumeration would exceed its configured budget.
struct BoundExceeded : ZonolabError {
    BoundExceeded(const std::string& msg, double required_count)
        : ZonolabError(msg), required(required_count) {}
    double required;
};

/// Numerical breakdown (failed eigensolve, Gram determinant far below zero, ...).
struct NumericError : ZonolabError {
    using ZonolabError::ZonolabError;
};

struct DegenerateInput : ZonolabError {
    using ZonolabError::ZonolabError;
};

struct ConfigError : ZonolabError {
    using ZonolabError::ZonolabError;
};

/// Compensated accumulator for long sums of small positive terms.
class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

double binomial(int n, int k);

/// kappa_d, the volume of the d-dimensional unit ball; kappa_0 = 1.
double unit_ball_volume(int d);

/// omega_d = d * kappa_d, the surface area of S^{d-1} in R^d.
double sphere_surface_area(int d);

/// V_k(B^d) = binom(d,k) * kappa_d / kappa_{d-k}.
double ball_intrinsic_volume(int d, int k);

struct SphereConstants {
    int d;
    double kappa;
    double omega;
    static SphereConstants for_dim(int d);
};

Mat gram_matrix(const std::vector<Vec>& vectors);

/// |v_1 ^ ... ^ v_k| = sqrt(det Gram). Gram determinants that dip below zero
/// by more than 1e-10 times the Hadamard bound raise NumericError; smaller
/// negatives are clamped to 0.
double wedge_norm(const std::vector<Vec>& vectors);

/// Same clamping contract, operating on a full Gram matrix and an index subset.
/// scale2 is the product of the selected diagonal entries (the Hadamard bound).
double wedge_norm_from_gram(const Mat& gram, const std::vector<int>& idx);

/// sigma_m^k of the values, by the one-pass triangle recurrence. 1 <= k <= m.
double elementary_symmetric(const std::vector<double>& values, int k);

/// e_0..e_m in one pass.
std::vector<double> elementary_symmetric_all(const std::vector<double>& values);

/// (e_1, ..., e_n): sums of k x k principal minors of a symmetric matrix,
/// computed as elementary symmetric functions of its eigenvalues.
std::vector<double> char_poly_symmetric_sums(const Mat& gram);

/// Unit vector orthogonal to d-1 vectors in R^d via the generalized cross
/// product (signed maximal minors). Sign canonicalized: first coordinate of
/// magnitude > 1e-12 is positive. nullopt when the inputs are dependent.
std::optional<Vec> orthogonal_complement_normal(const std::vector<Vec>& vectors);

/// k-subsets of {0..n-1} in revolving-door order: consecutive subsets differ
/// by removing one element and adding another.
class RevolvingDoor {
public:
    RevolvingDoor(int n, int k);

    const std::vector<int>& current() const { return current_; }
    int removed() const { return removed_; }  // -1 before the first step
    int added() const { return added_; }
    bool next();  // advance; false once all C(n,k) subsets were visited

    double count() const { return binomial(n_, k_); }

private:
    void sync_current();
    int n_, k_;
    std::vector<int> c_;  // 1-based working array, c_[k+1] = sentinel n
    std::vector<int> current_, prev_;
    int removed_ = -1, added_ = -1;
    bool done_ = false;
};

}  // namespace zonolab
