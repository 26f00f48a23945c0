#include "zonolab/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace zonolab {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double r = 1.0;
    for (int i = 0; i < k; ++i) {
        r *= static_cast<double>(n - i);
        r /= static_cast<double>(i + 1);
    }
    return r;
}

double unit_ball_volume(int d) {
    if (d < 0) throw DimensionError("unit_ball_volume: d must be >= 0");
    if (d == 0) return 1.0;
    return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double sphere_surface_area(int d) {
    if (d < 1) throw DimensionError("sphere_surface_area: d must be >= 1");
    return d * unit_ball_volume(d);
}

double ball_intrinsic_volume(int d, int k) {
    if (k < 0 || k > d) throw DimensionError("ball_intrinsic_volume: k out of range");
    return binomial(d, k) * unit_ball_volume(d) / unit_ball_volume(d - k);
}

SphereConstants SphereConstants::for_dim(int d) {
    return SphereConstants{d, unit_ball_volume(d), sphere_surface_area(d)};
}

Mat gram_matrix(const std::vector<Vec>& vectors) {
    const int k = static_cast<int>(vectors.size());
    Mat g(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            g(i, j) = vectors[i].dot(vectors[j]);
            g(j, i) = g(i, j);
        }
    }
    return g;
}

namespace {

double clamped_sqrt_det(const Mat& gram, double scale2) {
    double det;
    const int k = static_cast<int>(gram.rows());
    if (k == 1) {
        det = gram(0, 0);
    } else if (k == 2) {
        det = gram(0, 0) * gram(1, 1) - gram(0, 1) * gram(1, 0);
    } else {
        det = gram.determinant();
    }
    if (det < 0.0) {
        if (det < -1e-10 * std::max(scale2, 1e-300))
            throw NumericError("Gram determinant negative beyond tolerance: " +
                               std::to_string(det));
        det = 0.0;
    }
    return std::sqrt(det);
}

}  // namespace

double wedge_norm(const std::vector<Vec>& vectors) {
    const int k = static_cast<int>(vectors.size());
    if (k < 1) throw DimensionError("wedge_norm: need at least one vector");
    const int d = static_cast<int>(vectors[0].size());
    for (const Vec& v : vectors)
        if (static_cast<int>(v.size()) != d)
            throw DimensionError("wedge_norm: mixed dimensions");
    if (k > d) throw DimensionError("wedge_norm: more vectors than the ambient dimension");

    if (k == 1) return vectors[0].norm();

    double scale2 = 1.0;
    for (const Vec& v : vectors) scale2 *= v.squaredNorm();
    return clamped_sqrt_det(gram_matrix(vectors), scale2);
}

double wedge_norm_from_gram(const Mat& gram, const std::vector<int>& idx) {
    const int k = static_cast<int>(idx.size());
    Mat sub(k, k);
    double scale2 = 1.0;
    for (int a = 0; a < k; ++a) {
        scale2 *= gram(idx[a], idx[a]);
        for (int b = 0; b < k; ++b) sub(a, b) = gram(idx[a], idx[b]);
    }
    return clamped_sqrt_det(sub, scale2);
}

std::vector<double> elementary_symmetric_all(const std::vector<double>& values) {
    const int m = static_cast<int>(values.size());
    std::vector<double> e(m + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < m; ++i)
        for (int j = std::min(i + 1, m); j >= 1; --j)
            e[j] += values[i] * e[j - 1];
    return e;
}

double elementary_symmetric(const std::vector<double>& values, int k) {
    const int m = static_cast<int>(values.size());
    if (k < 1 || k > m)
        throw DimensionError("elementary_symmetric: k out of range (1 <= k <= m)");
    std::vector<double> e(k + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < m; ++i)
        for (int j = std::min(i + 1, k); j >= 1; --j)
            e[j] += values[i] * e[j - 1];
    return e[k];
}

std::vector<double> char_poly_symmetric_sums(const Mat& gram) {
    if (gram.rows() != gram.cols())
        throw DimensionError("char_poly_symmetric_sums: matrix must be square");
    Eigen::SelfAdjointEigenSolver<Mat> solver(gram);
    if (solver.info() != Eigen::Success)
        throw NumericError("char_poly_symmetric_sums: eigensolver did not converge");
    const Vec& ev = solver.eigenvalues();
    std::vector<double> lam(ev.data(), ev.data() + ev.size());
    std::vector<double> e = elementary_symmetric_all(lam);
    return std::vector<double>(e.begin() + 1, e.end());
}

std::optional<Vec> orthogonal_complement_normal(const std::vector<Vec>& vectors) {
    const int k = static_cast<int>(vectors.size());
    const int d = k + 1;
    for (const Vec& v : vectors)
        if (static_cast<int>(v.size()) != d)
            throw DimensionError("orthogonal_complement_normal: expected d-1 vectors in R^d");

    Vec w(d);
    if (k == 0) {
        w(0) = 1.0;
        return w;
    }
    Mat m(d, k);
    for (int j = 0; j < k; ++j) m.col(j) = vectors[j];
    double scale = 1.0;
    for (const Vec& v : vectors) scale *= v.norm();

    // w_i = (-1)^i det(m with row i deleted); |w| is the wedge norm of the inputs.
    Mat minor(k, k);
    for (int i = 0; i < d; ++i) {
        int r = 0;
        for (int row = 0; row < d; ++row) {
            if (row == i) continue;
            minor.row(r++) = m.row(row);
        }
        double det = (k == 1) ? minor(0, 0) : minor.determinant();
        w(i) = ((i % 2) == 0 ? 1.0 : -1.0) * det;
    }

    double norm = w.norm();
    if (norm <= 1e-12 * std::max(scale, 1e-300)) return std::nullopt;
    w /= norm;
    for (int i = 0; i < d; ++i) {
        if (std::abs(w(i)) > 1e-12) {
            if (w(i) < 0.0) w = -w;
            break;
        }
    }
    return w;
}

RevolvingDoor::RevolvingDoor(int n, int k) : n_(n), k_(k) {
    if (k < 0 || k > n) throw DimensionError("RevolvingDoor: need 0 <= k <= n");
    if (k == 0) {
        current_.clear();
        return;
    }
    c_.assign(k + 2, 0);
    for (int j = 1; j <= k; ++j) c_[j] = j - 1;
    c_[k + 1] = n;
    sync_current();
}

void RevolvingDoor::sync_current() {
    prev_ = current_;
    current_.assign(c_.begin() + 1, c_.begin() + 1 + k_);
    removed_ = added_ = -1;
    for (int x : prev_)
        if (!std::binary_search(current_.begin(), current_.end(), x)) removed_ = x;
    for (int x : current_)
        if (!std::binary_search(prev_.begin(), prev_.end(), x)) added_ = x;
}

bool RevolvingDoor::next() {
    if (done_) return false;
    if (k_ == 0) {
        done_ = true;
        return false;
    }
    // Revolving-door successor (Knuth TAOCP 7.2.1.3, Algorithm R).
    int j;
    if (k_ % 2 == 1) {
        if (c_[1] + 1 < c_[2]) {
            c_[1] += 1;
            sync_current();
            return true;
        }
        j = 2;
        if (j > k_) {
            done_ = true;
            return false;
        }
        goto try_decrease;
    } else {
        if (c_[1] > 0) {
            c_[1] -= 1;
            sync_current();
            return true;
        }
        j = 2;
        goto try_increase;
    }

try_decrease:
    if (c_[j] >= j) {
        c_[j] = c_[j - 1];
        c_[j - 1] = j - 2;
        sync_current();
        return true;
    }
    ++j;
    // fall through

try_increase:
    if (j > k_) {
        done_ = true;
        return false;
    }
    if (c_[j] + 1 < c_[j + 1]) {
        c_[j - 1] = c_[j];
        c_[j] += 1;
        sync_current();
        return true;
    }
    ++j;
    if (j <= k_) goto try_decrease;
    done_ = true;
    return false;
}

}  // namespace zonolab
