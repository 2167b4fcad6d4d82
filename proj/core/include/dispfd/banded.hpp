// Banded and cyclic-banded matrices with direct solvers.
//
// CyclicBandedMatrix stores an n x n periodic band matrix (offsets -p..p,
// indices wrapping mod n). BandedMatrix is the non-periodic variant with
// independent lower/upper bandwidths. Both are immutable after construction
// as far as solving is concerned: the LU factorization is computed once on
// first use and shared by concurrent readers.

#pragma once

#include <complex>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

namespace dispfd {

using cvec = std::vector<std::complex<double>>;
using rvec = std::vector<double>;

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what)
      : std::runtime_error(what) {}
};

namespace detail {

// LAPACK-style band LU with partial pivoting. Real coefficients; the solve
// is templated so complex right-hand sides reuse the real factorization.
struct BandLU {
  int n = 0;
  int kl = 0;
  int ku = 0;  // upper bandwidth after fill-in (original ku + kl)
  std::vector<double> ab;  // (2*kl + ku_orig + 1) x n, column-major bands
  std::vector<int> piv;

  template <class T>
  void solve_in_place(std::span<T> x) const;
};

BandLU factor_banded(int n, int kl, int ku,
                     const std::vector<double>& rowbands);

}  // namespace detail

// Non-cyclic banded matrix. Row storage: row i holds coefficients for
// offsets -lower..upper; entries falling outside [0, n) are kept at zero.
class BandedMatrix {
 public:
  BandedMatrix(int n, int lower, int upper);

  int rows() const { return n_; }
  int lower() const { return kl_; }
  int upper() const { return ku_; }

  double& at(int row, int offset);
  double at(int row, int offset) const;

  template <class T>
  std::vector<T> apply(std::span<const T> v) const;

  template <class T>
  std::vector<T> solve(std::span<const T> rhs) const;

  ~BandedMatrix();
  BandedMatrix(const BandedMatrix& other);
  BandedMatrix& operator=(const BandedMatrix& other);
  BandedMatrix(BandedMatrix&&) noexcept;
  BandedMatrix& operator=(BandedMatrix&&) noexcept;

 private:
  const detail::BandLU& factorization() const;

  int n_, kl_, ku_;
  std::vector<double> bands_;  // n * (kl + ku + 1), row-major
  struct Cache;
  std::unique_ptr<Cache> cache_;
};

// Cyclic banded matrix, half bandwidth p in {0,1,2,3}. Requires n > 2p + 1
// so wrap-around offsets never self-overlap.
class CyclicBandedMatrix {
 public:
  CyclicBandedMatrix(int n, int half_bandwidth);

  int rows() const { return n_; }
  int half_bandwidth() const { return p_; }

  double& at(int row, int offset);
  double at(int row, int offset) const;

  template <class T>
  std::vector<T> apply(std::span<const T> v) const;

  // Band LU of the acyclic core plus a rank-2p Woodbury correction for the
  // wrap-around entries.
  template <class T>
  std::vector<T> solve(std::span<const T> rhs) const;

  ~CyclicBandedMatrix();
  CyclicBandedMatrix(const CyclicBandedMatrix& other);
  CyclicBandedMatrix& operator=(const CyclicBandedMatrix& other);
  CyclicBandedMatrix(CyclicBandedMatrix&&) noexcept;
  CyclicBandedMatrix& operator=(CyclicBandedMatrix&&) noexcept;

 private:
  struct Woodbury;
  const Woodbury& factorization() const;

  int n_, p_;
  std::vector<double> bands_;  // n * (2p+1), row-major
  struct Cache;
  std::unique_ptr<Cache> cache_;
};

// Dense Gaussian-elimination solve, the test oracle and fallback path for
// small systems (n <= 512).
template <class T>
std::vector<T> dense_solve(const std::vector<std::vector<double>>& m,
                           std::span<const T> rhs);

std::vector<std::vector<double>> to_dense(const BandedMatrix& m);
std::vector<std::vector<double>> to_dense(const CyclicBandedMatrix& m);

}  // namespace dispfd
