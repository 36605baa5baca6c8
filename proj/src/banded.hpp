#pragma once

#include <complex>
#include <span>
#include <vector>

namespace skdv {

// Square band matrix in LAPACK general-band storage, factored with gbtrf and
// reused for any number of right-hand sides.
template <class T>
class BandedSystem {
public:
    BandedSystem() = default;
    BandedSystem(int n, int kl, int ku);

    int size() const { return n_; }
    void clear();
    void set(int row, int col, T value);
    T get(int row, int col) const;

    void factor();
    bool factored() const { return factored_; }
    void solve(std::span<T> rhs) const;

private:
    int n_ = 0, kl_ = 0, ku_ = 0, ldab_ = 0;
    std::vector<T> ab_;
    std::vector<int> ipiv_;
    bool factored_ = false;
};

extern template class BandedSystem<double>;
extern template class BandedSystem<std::complex<double>>;

// Weights c_k with f^{(m)}(x0) ~ sum_k c_k f(x_k) (Fornberg's recursion).
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order);

}  // namespace skdv
