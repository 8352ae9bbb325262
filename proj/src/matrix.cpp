#include "influx/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "influx/error.hpp"

namespace influx {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()));
    }
}

void require_square(const Matrix& a, const char* op) {
    if (!a.square()) {
        throw DimensionMismatch(std::string(op) + ": matrix is " + std::to_string(a.rows()) +
                                "x" + std::to_string(a.cols()) + ", expected square");
    }
}

// Neumaier's variant of Kahan summation, applied entrywise.
class CompensatedSum {
public:
    explicit CompensatedSum(std::size_t rows, std::size_t cols)
        : sum_(rows, cols), carry_(rows, cols) {}

    void add(const Matrix& term) {
        auto s = sum_.data();
        auto c = carry_.data();
        auto t = term.data();
        for (std::size_t idx = 0; idx < s.size(); ++idx) {
            const double next = s[idx] + t[idx];
            if (std::abs(s[idx]) >= std::abs(t[idx])) {
                c[idx] += (s[idx] - next) + t[idx];
            } else {
                c[idx] += (t[idx] - next) + s[idx];
            }
            s[idx] = next;
        }
    }

    Matrix result() const { return sum_ + carry_; }

private:
    Matrix sum_;
    Matrix carry_;
};

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionMismatch("matrix: " + std::to_string(data_.size()) +
                                " entries for shape " + std::to_string(rows_) + "x" +
                                std::to_string(cols_));
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::constant(std::size_t rows, std::size_t cols, double value) {
    return Matrix(rows, cols, value);
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    require_same_shape(*this, other, "add");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    require_same_shape(*this, other, "subtract");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(double s) noexcept {
    for (double& x : data_) x *= s;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

double max_abs(const Matrix& a) noexcept {
    double m = 0.0;
    for (double x : a.data()) m = std::max(m, std::abs(x));
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double norm_inf(const Matrix& a) noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) row += std::abs(a(i, j));
        m = std::max(m, row);
    }
    return m;
}

double norm_one(const Matrix& a) noexcept {
    double m = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) col += std::abs(a(i, j));
        m = std::max(m, col);
    }
    return m;
}

bool all_finite(const Matrix& a) noexcept {
    return std::all_of(a.data().begin(), a.data().end(),
                       [](double x) { return std::isfinite(x); });
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("mat_mul: inner dimensions " + std::to_string(a.cols()) +
                                " and " + std::to_string(b.rows()));
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (std::size_t l = 0; l < a.cols(); ++l) acc += a(i, l) * b(l, j);
            out(i, j) = acc;
        }
    }
    return out;
}

std::vector<double> mat_vec(const Matrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) {
        throw DimensionMismatch("mat_vec: matrix has " + std::to_string(a.cols()) +
                                " columns, vector has " + std::to_string(x.size()) + " entries");
    }
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t l = 0; l < a.cols(); ++l) acc += a(i, l) * x[l];
        y[i] = acc;
    }
    return y;
}

Matrix mat_pow(const Matrix& d, unsigned k) {
    require_square(d, "mat_pow");
    Matrix result = Matrix::identity(d.rows());
    Matrix base = d;
    bool first = true;
    while (k > 0) {
        if (k & 1U) {
            result = first ? base : mat_mul(result, base);
            first = false;
        }
        k >>= 1U;
        if (k > 0) base = mat_mul(base, base);
    }
    return result;
}

namespace {

void check_series_args(const Matrix& d, double lambda, double tol, const char* what) {
    require_square(d, what);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw DomainError(std::string(what) + ": lambda must be a positive finite number");
    }
    if (!(tol > 0.0)) throw DomainError(std::string(what) + ": tol must be positive");
}

// Sums at least min_terms terms of e_+^{lambda D}, then stops at the first K
// whose tail bound is below tol.
SeriesResult sum_exp_plus(const Matrix& d, double lambda, double tol, int min_terms) {
    const Matrix step = lambda * d;
    const double growth = norm_inf(step);

    // term_k = (lambda D)^k / k!, and term_{k+1} = (lambda D) term_k / (k+1),
    // so max|term_{k+1}| <= max|term_k| * ||lambda D||_inf / (k+1).
    Matrix term = step;
    CompensatedSum sum(d.rows(), d.cols());
    for (int k = 1;; ++k) {
        if (!all_finite(term)) {
            throw NoConvergence("exp_plus: series term " + std::to_string(k) + " overflowed");
        }
        sum.add(term);
        const double u = max_abs(term);
        const double ratio = growth / static_cast<double>(k + 1);
        // Zero terms stay zero; the count still honors min_terms.
        if (u == 0.0) return {sum.result(), {std::max(k, min_terms), 0.0}};
        if (k >= min_terms && ratio < 1.0 && u / (1.0 - ratio) < tol) {
            return {sum.result(), {k, u * ratio / (1.0 - ratio)}};
        }
        if (k >= kMaxSeriesTerms) {
            throw NoConvergence("exp_plus: tail bound still above " + std::to_string(tol) +
                                " after " + std::to_string(kMaxSeriesTerms) + " terms");
        }
        term = mat_mul(step, term);
        for (double& x : term.data()) x /= static_cast<double>(k + 1);
    }
}

}  // namespace

SeriesResult exp_plus(const Matrix& d, double lambda, double tol) {
    check_series_args(d, lambda, tol, "exp_plus");
    return sum_exp_plus(d, lambda, tol, 1);
}

SeriesResult pwp_matrix_with_report(const Matrix& d, double lambda, double tol) {
    check_series_args(d, lambda, tol, "pwp");
    const double norm = std::expm1(lambda);
    const Matrix one(1, 1, 1.0);

    // Divide by the scalar series truncated at the same K, summed by the same
    // recurrence. Then T(I) = I and column sums of stochastic D are kept
    // exactly, not just up to the truncation error.
    SeriesResult series = sum_exp_plus(d, lambda, tol * norm, 1);
    SeriesResult scalar = sum_exp_plus(one, lambda, 1e-17 * norm, series.report.terms_used);
    if (scalar.report.terms_used > series.report.terms_used) {
        series = sum_exp_plus(d, lambda, tol * norm, scalar.report.terms_used);
    }
    const double s = scalar.value(0, 0);

    // |S/s - S_K/s_K| <= (|S - S_K| + max|S_K| |s - s_K| / s_K) / s_K, as s >= s_K > 0.
    SeriesResult r = std::move(series);
    r.report.tail_bound = (r.report.tail_bound + max_abs(r.value) * scalar.report.tail_bound / s) / s;
    for (double& x : r.value.data()) x /= s;
    return r;
}

Matrix pwp_matrix(const Matrix& d, double lambda, double tol) {
    return pwp_matrix_with_report(d, lambda, tol).value;
}

}  // namespace influx
