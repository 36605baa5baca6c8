#include "banded.hpp"

#include <lapacke.h>

#include <sstream>
#include <stdexcept>

namespace skdv {

template <class T>
BandedSystem<T>::BandedSystem(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1),
      ab_(static_cast<std::size_t>(ldab_) * n), ipiv_(n) {}

template <class T>
void BandedSystem<T>::clear() {
    std::fill(ab_.begin(), ab_.end(), T(0));
    factored_ = false;
}

template <class T>
void BandedSystem<T>::set(int row, int col, T value) {
    if (col - row > ku_ || row - col > kl_ || row < 0 || col < 0 || row >= n_ || col >= n_)
        throw std::logic_error("band matrix entry outside the band");
    ab_[static_cast<std::size_t>(kl_ + ku_ + row - col) + static_cast<std::size_t>(col) * ldab_] = value;
    factored_ = false;
}

template <class T>
T BandedSystem<T>::get(int row, int col) const {
    if (col - row > ku_ || row - col > kl_) return T(0);
    return ab_[static_cast<std::size_t>(kl_ + ku_ + row - col) + static_cast<std::size_t>(col) * ldab_];
}

namespace {

int gbtrf(int n, int kl, int ku, double* ab, int ldab, int* ipiv) {
    return LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, kl, ku, ab, ldab, ipiv);
}

int gbtrf(int n, int kl, int ku, std::complex<double>* ab, int ldab, int* ipiv) {
    return LAPACKE_zgbtrf(LAPACK_COL_MAJOR, n, n, kl, ku,
                          reinterpret_cast<lapack_complex_double*>(ab), ldab, ipiv);
}

int gbtrs(int n, int kl, int ku, const double* ab, int ldab, const int* ipiv, double* b) {
    return LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, kl, ku, 1, ab, ldab, ipiv, b, n);
}

int gbtrs(int n, int kl, int ku, const std::complex<double>* ab, int ldab, const int* ipiv,
          std::complex<double>* b) {
    return LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', n, kl, ku, 1,
                          reinterpret_cast<const lapack_complex_double*>(ab), ldab, ipiv,
                          reinterpret_cast<lapack_complex_double*>(b), n);
}

}  // namespace

template <class T>
void BandedSystem<T>::factor() {
    int info = gbtrf(n_, kl_, ku_, ab_.data(), ldab_, ipiv_.data());
    if (info != 0) {
        std::ostringstream os;
        os << "banded factorization failed (gbtrf info " << info << ")";
        throw std::logic_error(os.str());
    }
    factored_ = true;
}

template <class T>
void BandedSystem<T>::solve(std::span<T> rhs) const {
    if (!factored_) throw std::logic_error("solve before factor");
    if (static_cast<int>(rhs.size()) != n_) throw std::invalid_argument("right-hand side size mismatch");
    int info = gbtrs(n_, kl_, ku_, ab_.data(), ldab_, ipiv_.data(), rhs.data());
    if (info != 0) throw std::logic_error("banded solve failed");
}

template class BandedSystem<double>;
template class BandedSystem<std::complex<double>>;

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order) {
    const int n = static_cast<int>(nodes.size());
    if (order < 0 || order >= n) throw std::invalid_argument("stencil too small for derivative order");
    // c[j][k]: weight of node j for derivative k.
    std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0, c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        int mn = std::min(i, order);
        double c2 = 1.0;
        double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = c[j][order];
    return w;
}

}  // namespace skdv
