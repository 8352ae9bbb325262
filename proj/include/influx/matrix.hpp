#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace influx {

/// Dense row-major real matrix. Indices are 0-based; the 1-based vertex
/// labels used in files and reports are translated at the boundaries.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static Matrix identity(std::size_t n);
    static Matrix constant(std::size_t rows, std::size_t cols, double value);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    Matrix transposed() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s) noexcept;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);

/// max_{i,j} |A_ij|
double max_abs(const Matrix& a) noexcept;
/// max_{i,j} |A_ij - B_ij|; throws DimensionMismatch on shape mismatch.
double max_abs_diff(const Matrix& a, const Matrix& b);
/// Maximum absolute row sum.
double norm_inf(const Matrix& a) noexcept;
/// Maximum absolute column sum.
double norm_one(const Matrix& a) noexcept;
bool all_finite(const Matrix& a) noexcept;

/// Block diagonal a (+) b.
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Standard product. Each output entry is accumulated over the inner index in
/// ascending order, so the result is bit-for-bit reproducible.
Matrix mat_mul(const Matrix& a, const Matrix& b);

/// y = A x with the same ascending summation order as mat_mul.
std::vector<double> mat_vec(const Matrix& a, std::span<const double> x);

/// D^k by repeated squaring; D^0 = I.
Matrix mat_pow(const Matrix& d, unsigned k);

/// Truncation accounting for the exponential series.
struct SeriesReport {
    /// Number of series terms summed (k = 1 .. terms_used).
    int terms_used = 0;
    /// Upper bound, in max-absolute-entry norm, on the discarded tail.
    double tail_bound = 0.0;
};

struct SeriesResult {
    Matrix value;
    SeriesReport report;
};

inline constexpr double kDefaultTol = 1e-12;
inline constexpr double kDefaultLambda = 1.0;
inline constexpr int kMaxSeriesTerms = 10000;

/// e_+^{lambda D} = sum_{k>=1} (lambda D)^k / k!, summed term by term without
/// the identity. Throws NoConvergence when kMaxSeriesTerms is reached (or a
/// term overflows) before the tail bound drops below tol.
SeriesResult exp_plus(const Matrix& d, double lambda, double tol = kDefaultTol);

/// T(D) = e_+^{lambda D} / (e^lambda - 1). The matrix series is solved to
/// tol * (e^lambda - 1) and divided by the scalar series e_+^lambda truncated
/// at the same number of terms.
SeriesResult pwp_matrix_with_report(const Matrix& d, double lambda, double tol = kDefaultTol);
Matrix pwp_matrix(const Matrix& d, double lambda, double tol = kDefaultTol);

}  // namespace influx
