#include "tcaudit/eigensolvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace tcaudit {

namespace {

constexpr int max_jacobi_sweeps = 100;
constexpr int max_ql_iterations = 60;
constexpr double machine_eps = std::numeric_limits<double>::epsilon();

std::vector<Complex> hermitian_part(const OperatorMatrix& m, double tol)
{
    const std::size_t n = m.dim();
    const double allowed = tol * std::max(1.0, m.max_abs());
    std::vector<Complex> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Complex mij = m(i, j);
            const Complex mji_conj = std::conj(m(j, i));
            if (std::abs(mij - mji_conj) > allowed)
                throw HermiticityError("matrix is not Hermitian: entry (" + std::to_string(i) + "," +
                                       std::to_string(j) + ") differs from its mirror by " +
                                       std::to_string(std::abs(mij - mji_conj)));
            a[i * n + j] = 0.5 * (mij + mji_conj);
        }
    for (std::size_t i = 0; i < n; ++i)
        a[i * n + i] = a[i * n + i].real();
    return a;
}

double conj_of(double x) { return x; }
Complex conj_of(const Complex& z) { return std::conj(z); }
double real_of(double x) { return x; }
double real_of(const Complex& z) { return z.real(); }

// Cyclic Jacobi with unitary plane rotations. Each rotation first removes the
// phase of a_pq and then applies the real symmetric Jacobi rotation.
// Only rows p, q are combined; the columns are their conjugates.
// On return the diagonal of a holds the eigenvalues (unsorted).
template <typename T>
void jacobi(std::vector<T>& a, std::size_t n, std::vector<T>* vectors, double tol)
{
    if (vectors != nullptr) {
        vectors->assign(n * n, T{});
        for (std::size_t i = 0; i < n; ++i)
            (*vectors)[i * n + i] = 1.0;
    }

    double total = 0.0;
    for (const auto& z : a)
        total += std::norm(z);
    const double stop = std::max(tol * 1e-4, machine_eps) * std::sqrt(total);

    for (int sweep = 0; sweep < max_jacobi_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += std::norm(a[p * n + q]);
        if (std::sqrt(2.0 * off) <= stop)
            return;

        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const T apq = a[p * n + q];
                const double mag = std::abs(apq);
                if (mag == 0.0)
                    continue;
                const double app = real_of(a[p * n + p]);
                const double aqq = real_of(a[q * n + q]);
                const double guard = 100.0 * mag;
                if (sweep > 3 && std::abs(app) + guard == std::abs(app) &&
                    std::abs(aqq) + guard == std::abs(aqq)) {
                    a[p * n + q] = a[q * n + p] = 0.0;
                    continue;
                }

                const T phase = apq / mag;
                const double theta = (aqq - app) / (2.0 * mag);
                double t;
                if (std::abs(theta) > 1e150)
                    t = 0.5 / theta;
                else
                    t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const T back = conj_of(phase);   // e^{-i alpha}
                const T j_qp = -s * back;
                const T j_qq = c * back;
                const T j_qp_c = conj_of(j_qp);
                const T j_qq_c = conj_of(j_qq);

                T* row_p = a.data() + p * n;
                T* row_q = a.data() + q * n;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q)
                        continue;
                    const T apk = row_p[k];
                    const T aqk = row_q[k];
                    const T new_pk = c * apk + j_qp_c * aqk;
                    const T new_qk = s * apk + j_qq_c * aqk;
                    row_p[k] = new_pk;
                    row_q[k] = new_qk;
                    a[k * n + p] = conj_of(new_pk);
                    a[k * n + q] = conj_of(new_qk);
                }
                row_p[q] = a[q * n + p] = 0.0;
                row_p[p] = app - t * mag;
                row_q[q] = aqq + t * mag;

                if (vectors != nullptr) {
                    auto& v = *vectors;
                    for (std::size_t k = 0; k < n; ++k) {
                        const T vkp = v[k * n + p];
                        const T vkq = v[k * n + q];
                        v[k * n + p] = vkp * c + vkq * j_qp;
                        v[k * n + q] = vkp * s + vkq * j_qq;
                    }
                }
                rotated = true;
            }
        }
        if (!rotated)
            return;
    }
    throw NumericalError("Jacobi eigensolver did not converge");
}

bool is_real(const std::vector<Complex>& a)
{
    return std::all_of(a.begin(), a.end(), [](const Complex& z) { return z.imag() == 0.0; });
}

std::vector<double> real_parts(const std::vector<Complex>& a)
{
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i].real();
    return out;
}

// Diagonalizes in place; real input takes the cheaper real path.
std::vector<double> jacobi_values(std::vector<Complex>& a, std::size_t n, std::vector<Complex>* vectors,
                                  double tol)
{
    std::vector<double> values(n);
    if (is_real(a)) {
        auto r = real_parts(a);
        std::vector<double> rv;
        jacobi(r, n, vectors != nullptr ? &rv : nullptr, tol);
        for (std::size_t i = 0; i < n; ++i)
            values[i] = r[i * n + i];
        if (vectors != nullptr)
            vectors->assign(rv.begin(), rv.end());
    } else {
        jacobi(a, n, vectors, tol);
        for (std::size_t i = 0; i < n; ++i)
            values[i] = a[i * n + i].real();
    }
    return values;
}

std::vector<std::size_t> ascending_order(const std::vector<double>& values)
{
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
    return order;
}

} // namespace

EigenSystem eigh_dense(const OperatorMatrix& m, double tol)
{
    const std::size_t n = m.dim();
    auto a = hermitian_part(m, tol);
    std::vector<Complex> raw_vectors;
    const auto raw_values = jacobi_values(a, n, &raw_vectors, tol);
    const auto order = ascending_order(raw_values);

    EigenSystem out;
    out.dim = n;
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = raw_values[order[k]];
        for (std::size_t row = 0; row < n; ++row)
            out.vectors[row * n + k] = raw_vectors[row * n + order[k]];
    }
    return out;
}

std::vector<double> eigvalsh_dense(const OperatorMatrix& m, double tol)
{
    const std::size_t n = m.dim();
    auto a = hermitian_part(m, tol);
    auto values = jacobi_values(a, n, nullptr, tol);
    std::sort(values.begin(), values.end());
    return values;
}

std::vector<double> eig_tridiagonal(std::span<const double> diag, std::span<const double> offdiag,
                                    double tol)
{
    if (diag.empty()) {
        if (!offdiag.empty())
            throw DimensionError("off-diagonal given for an empty tridiagonal matrix");
        return {};
    }
    if (offdiag.size() + 1 != diag.size())
        throw DimensionError("tridiagonal off-diagonal length must be diagonal length - 1 (got " +
                             std::to_string(offdiag.size()) + " and " +
                             std::to_string(diag.size()) + ")");

    const std::size_t n = diag.size();
    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(n, 0.0);
    std::copy(offdiag.begin(), offdiag.end(), e.begin());
    const double deflate = std::max(tol * 1e-4, machine_eps);

    for (std::size_t l = 0; l < n; ++l) {
        int iterations = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= deflate * dd)
                    break;
            }
            if (m == l)
                break;
            if (++iterations > max_ql_iterations)
                throw NumericalError("tridiagonal QL did not converge");

            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (std::size_t i = m; i-- > l;) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (underflow)
                continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

} // namespace tcaudit
