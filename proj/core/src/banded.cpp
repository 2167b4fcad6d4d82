#include "dispfd/banded.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace dispfd {

namespace detail {

// Band storage inside BandLU: ab[col * ldab + r] where the matrix entry
// (i, j) lives at r = kl + ku + i - j (ku already includes fill-in space).
BandLU factor_banded(int n, int kl, int ku,
                     const std::vector<double>& rowbands) {
  BandLU lu;
  lu.n = n;
  lu.kl = kl;
  lu.ku = ku + kl;
  const int ldab = 2 * kl + ku + 1;
  lu.ab.assign(static_cast<size_t>(ldab) * n, 0.0);
  lu.piv.resize(n);
  auto entry = [&](int i, int j) -> double& {
    return lu.ab[static_cast<size_t>(j) * ldab + (lu.ku + i - j)];
  };
  const int width = kl + ku + 1;
  for (int i = 0; i < n; ++i)
    for (int o = -kl; o <= ku; ++o) {
      int j = i + o;
      if (j < 0 || j >= n) continue;
      double v = rowbands[static_cast<size_t>(i) * width + (o + kl)];
      if (v != 0.0) entry(i, j) = v;
    }

  double scale = 0.0;
  for (double v : lu.ab) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw SingularMatrixError("zero matrix");

  for (int col = 0; col < n; ++col) {
    int last = std::min(n - 1, col + kl);
    int pivot = col;
    for (int i = col + 1; i <= last; ++i)
      if (std::abs(entry(i, col)) > std::abs(entry(pivot, col))) pivot = i;
    lu.piv[col] = pivot;
    if (std::abs(entry(pivot, col)) < 1e-14 * scale)
      throw SingularMatrixError("pivot below 1e-14 relative magnitude");
    if (pivot != col) {
      int jmax = std::min(n - 1, col + lu.ku);
      for (int j = col; j <= jmax; ++j)
        std::swap(entry(col, j), entry(pivot, j));
    }
    double d = entry(col, col);
    int jmax = std::min(n - 1, col + lu.ku);
    for (int i = col + 1; i <= last; ++i) {
      double m = entry(i, col) / d;
      entry(i, col) = m;  // store multiplier
      for (int j = col + 1; j <= jmax; ++j) entry(i, j) -= m * entry(col, j);
    }
  }
  return lu;
}

template <class T>
void BandLU::solve_in_place(std::span<T> x) const {
  const int ldab = kl + ku + 1;
  auto entry = [&](int i, int j) -> double {
    return ab[static_cast<size_t>(j) * ldab + (ku + i - j)];
  };
  for (int col = 0; col < n; ++col) {
    if (piv[col] != col) std::swap(x[col], x[piv[col]]);
    int last = std::min(n - 1, col + kl);
    for (int i = col + 1; i <= last; ++i) x[i] -= entry(i, col) * x[col];
  }
  for (int col = n - 1; col >= 0; --col) {
    x[col] /= entry(col, col);
    int first = std::max(0, col - ku);
    for (int i = first; i < col; ++i) x[i] -= entry(i, col) * x[col];
  }
}

template void BandLU::solve_in_place<double>(std::span<double>) const;
template void BandLU::solve_in_place<std::complex<double>>(
    std::span<std::complex<double>>) const;

}  // namespace detail

// ---------------------------------------------------------------------------
// BandedMatrix

struct BandedMatrix::Cache {
  std::once_flag once;
  detail::BandLU lu;
};

BandedMatrix::BandedMatrix(int n, int lower, int upper)
    : n_(n), kl_(lower), ku_(upper), cache_(std::make_unique<Cache>()) {
  if (n < 1 || lower < 0 || upper < 0)
    throw std::invalid_argument("BandedMatrix: bad dimensions");
  bands_.assign(static_cast<size_t>(n) * (lower + upper + 1), 0.0);
}

BandedMatrix::BandedMatrix(const BandedMatrix& other)
    : n_(other.n_),
      kl_(other.kl_),
      ku_(other.ku_),
      bands_(other.bands_),
      cache_(std::make_unique<Cache>()) {}

BandedMatrix& BandedMatrix::operator=(const BandedMatrix& other) {
  if (this != &other) {
    n_ = other.n_;
    kl_ = other.kl_;
    ku_ = other.ku_;
    bands_ = other.bands_;
    cache_ = std::make_unique<Cache>();
  }
  return *this;
}

BandedMatrix::~BandedMatrix() = default;
BandedMatrix::BandedMatrix(BandedMatrix&&) noexcept = default;
BandedMatrix& BandedMatrix::operator=(BandedMatrix&&) noexcept = default;

double& BandedMatrix::at(int row, int offset) {
  if (row < 0 || row >= n_ || offset < -kl_ || offset > ku_)
    throw std::out_of_range("BandedMatrix::at");
  return bands_[static_cast<size_t>(row) * (kl_ + ku_ + 1) + (offset + kl_)];
}

double BandedMatrix::at(int row, int offset) const {
  return const_cast<BandedMatrix*>(this)->at(row, offset);
}

template <class T>
std::vector<T> BandedMatrix::apply(std::span<const T> v) const {
  if (static_cast<int>(v.size()) != n_)
    throw std::invalid_argument("BandedMatrix::apply: dimension mismatch");
  std::vector<T> out(n_, T{});
  const int width = kl_ + ku_ + 1;
  for (int i = 0; i < n_; ++i) {
    T acc{};
    for (int o = -kl_; o <= ku_; ++o) {
      int j = i + o;
      if (j < 0 || j >= n_) continue;
      acc += bands_[static_cast<size_t>(i) * width + (o + kl_)] * v[j];
    }
    out[i] = acc;
  }
  return out;
}

const detail::BandLU& BandedMatrix::factorization() const {
  std::call_once(cache_->once, [this] {
    cache_->lu = detail::factor_banded(n_, kl_, ku_, bands_);
  });
  return cache_->lu;
}

template <class T>
std::vector<T> BandedMatrix::solve(std::span<const T> rhs) const {
  if (static_cast<int>(rhs.size()) != n_)
    throw std::invalid_argument("BandedMatrix::solve: dimension mismatch");
  std::vector<T> x(rhs.begin(), rhs.end());
  factorization().solve_in_place(std::span<T>(x));
  return x;
}

// ---------------------------------------------------------------------------
// CyclicBandedMatrix

// Wrap-around entries are split off as a rank-q correction M = A + U V^T,
// q = 2p: U holds selector columns for the first/last p rows, V the wrap
// coefficients. Solving M x = b then needs one band solve plus a tiny dense
// q x q system (Woodbury identity).
struct CyclicBandedMatrix::Woodbury {
  detail::BandLU core;
  std::vector<int> rows;               // affected row indices, size q
  std::vector<std::vector<double>> v;  // q sparse correction rows (dense n)
  std::vector<std::vector<double>> y;  // A^{-1} U, q columns of length n
  std::vector<std::vector<double>> s;  // LU of (I + V^T Y), q x q
  std::vector<int> spiv;
};

struct CyclicBandedMatrix::Cache {
  std::once_flag once;
  Woodbury w;
};

CyclicBandedMatrix::CyclicBandedMatrix(int n, int half_bandwidth)
    : n_(n), p_(half_bandwidth), cache_(std::make_unique<Cache>()) {
  if (p_ < 0 || p_ > 3)
    throw std::invalid_argument("CyclicBandedMatrix: half bandwidth in 0..3");
  if (n <= 2 * p_ + 1)
    throw std::invalid_argument("CyclicBandedMatrix: need n > 2p + 1");
  bands_.assign(static_cast<size_t>(n) * (2 * p_ + 1), 0.0);
}

CyclicBandedMatrix::CyclicBandedMatrix(const CyclicBandedMatrix& other)
    : n_(other.n_),
      p_(other.p_),
      bands_(other.bands_),
      cache_(std::make_unique<Cache>()) {}

CyclicBandedMatrix& CyclicBandedMatrix::operator=(
    const CyclicBandedMatrix& other) {
  if (this != &other) {
    n_ = other.n_;
    p_ = other.p_;
    bands_ = other.bands_;
    cache_ = std::make_unique<Cache>();
  }
  return *this;
}

CyclicBandedMatrix::~CyclicBandedMatrix() = default;
CyclicBandedMatrix::CyclicBandedMatrix(CyclicBandedMatrix&&) noexcept = default;
CyclicBandedMatrix& CyclicBandedMatrix::operator=(CyclicBandedMatrix&&) noexcept =
    default;

double& CyclicBandedMatrix::at(int row, int offset) {
  if (row < 0 || row >= n_ || offset < -p_ || offset > p_)
    throw std::out_of_range("CyclicBandedMatrix::at");
  return bands_[static_cast<size_t>(row) * (2 * p_ + 1) + (offset + p_)];
}

double CyclicBandedMatrix::at(int row, int offset) const {
  return const_cast<CyclicBandedMatrix*>(this)->at(row, offset);
}

template <class T>
std::vector<T> CyclicBandedMatrix::apply(std::span<const T> v) const {
  if (static_cast<int>(v.size()) != n_)
    throw std::invalid_argument("CyclicBandedMatrix::apply: dimension mismatch");
  std::vector<T> out(n_, T{});
  const int width = 2 * p_ + 1;
  for (int i = 0; i < n_; ++i) {
    T acc{};
    for (int o = -p_; o <= p_; ++o) {
      int j = i + o;
      if (j < 0) j += n_;
      if (j >= n_) j -= n_;
      acc += bands_[static_cast<size_t>(i) * width + (o + p_)] * v[j];
    }
    out[i] = acc;
  }
  return out;
}

const CyclicBandedMatrix::Woodbury& CyclicBandedMatrix::factorization() const {
  std::call_once(cache_->once, [this] {
    Woodbury w;
    const int width = 2 * p_ + 1;
    // Acyclic core: wrap entries dropped.
    std::vector<double> core = bands_;
    for (int i = 0; i < n_; ++i) {
      bool affected = false;
      for (int o = -p_; o <= p_; ++o) {
        int j = i + o;
        if (j < 0 || j >= n_) {
          if (bands_[static_cast<size_t>(i) * width + (o + p_)] != 0.0)
            affected = true;
          core[static_cast<size_t>(i) * width + (o + p_)] = 0.0;
        }
      }
      if (affected) {
        w.rows.push_back(i);
        std::vector<double> vr(n_, 0.0);
        for (int o = -p_; o <= p_; ++o) {
          int j = i + o;
          if (j < 0) vr[j + n_] = bands_[static_cast<size_t>(i) * width + (o + p_)];
          if (j >= n_) vr[j - n_] = bands_[static_cast<size_t>(i) * width + (o + p_)];
        }
        w.v.push_back(std::move(vr));
      }
    }
    w.core = detail::factor_banded(n_, p_, p_, core);

    const int q = static_cast<int>(w.rows.size());
    w.y.assign(q, {});
    for (int t = 0; t < q; ++t) {
      std::vector<double> col(n_, 0.0);
      col[w.rows[t]] = 1.0;
      w.core.solve_in_place(std::span<double>(col));
      w.y[t] = std::move(col);
    }
    // S = I + V^T Y, then its dense LU with partial pivoting.
    w.s.assign(q, std::vector<double>(q, 0.0));
    for (int r = 0; r < q; ++r)
      for (int t = 0; t < q; ++t) {
        double acc = (r == t) ? 1.0 : 0.0;
        for (int j = 0; j < n_; ++j) acc += w.v[r][j] * w.y[t][j];
        w.s[r][t] = acc;
      }
    w.spiv.resize(q);
    for (int col = 0; col < q; ++col) {
      int pivot = col;
      for (int i = col + 1; i < q; ++i)
        if (std::abs(w.s[i][col]) > std::abs(w.s[pivot][col])) pivot = i;
      w.spiv[col] = pivot;
      if (std::abs(w.s[pivot][col]) < 1e-14)
        throw SingularMatrixError("singular Woodbury correction");
      std::swap(w.s[col], w.s[pivot]);
      for (int i = col + 1; i < q; ++i) {
        double m = w.s[i][col] / w.s[col][col];
        w.s[i][col] = m;
        for (int j = col + 1; j < q; ++j) w.s[i][j] -= m * w.s[col][j];
      }
    }
    cache_->w = std::move(w);
  });
  return cache_->w;
}

template <class T>
std::vector<T> CyclicBandedMatrix::solve(std::span<const T> rhs) const {
  if (static_cast<int>(rhs.size()) != n_)
    throw std::invalid_argument("CyclicBandedMatrix::solve: dimension mismatch");
  const Woodbury& w = factorization();
  std::vector<T> z(rhs.begin(), rhs.end());
  w.core.solve_in_place(std::span<T>(z));
  const int q = static_cast<int>(w.rows.size());
  if (q == 0) return z;

  std::vector<T> g(q, T{});
  for (int r = 0; r < q; ++r) {
    T acc{};
    for (int j = 0; j < n_; ++j) acc += w.v[r][j] * z[j];
    g[r] = acc;
  }
  // Solve S g = V^T z with the stored LU.
  for (int col = 0; col < q; ++col) {
    if (w.spiv[col] != col) std::swap(g[col], g[w.spiv[col]]);
    for (int i = col + 1; i < q; ++i) g[i] -= w.s[i][col] * g[col];
  }
  for (int col = q - 1; col >= 0; --col) {
    g[col] /= w.s[col][col];
    for (int i = 0; i < col; ++i) g[i] -= w.s[i][col] * g[col];
  }
  for (int t = 0; t < q; ++t)
    for (int j = 0; j < n_; ++j) z[j] -= w.y[t][j] * g[t];
  return z;
}

// ---------------------------------------------------------------------------
// Dense fallback / oracle

template <class T>
std::vector<T> dense_solve(const std::vector<std::vector<double>>& m,
                           std::span<const T> rhs) {
  const int n = static_cast<int>(m.size());
  if (static_cast<int>(rhs.size()) != n)
    throw std::invalid_argument("dense_solve: dimension mismatch");
  std::vector<std::vector<double>> a = m;
  std::vector<T> x(rhs.begin(), rhs.end());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int i = col + 1; i < n; ++i)
      if (std::abs(a[i][col]) > std::abs(a[pivot][col])) pivot = i;
    if (std::abs(a[pivot][col]) < 1e-14)
      throw SingularMatrixError("dense_solve: singular matrix");
    std::swap(a[col], a[pivot]);
    std::swap(x[col], x[pivot]);
    for (int i = col + 1; i < n; ++i) {
      double f = a[i][col] / a[col][col];
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) a[i][j] -= f * a[col][j];
      x[i] -= f * x[col];
    }
  }
  for (int col = n - 1; col >= 0; --col) {
    x[col] /= a[col][col];
    for (int i = 0; i < col; ++i) x[i] -= a[i][col] * x[col];
  }
  return x;
}

std::vector<std::vector<double>> to_dense(const BandedMatrix& m) {
  std::vector<std::vector<double>> d(m.rows(),
                                     std::vector<double>(m.rows(), 0.0));
  for (int i = 0; i < m.rows(); ++i)
    for (int o = -m.lower(); o <= m.upper(); ++o) {
      int j = i + o;
      if (j >= 0 && j < m.rows()) d[i][j] = m.at(i, o);
    }
  return d;
}

std::vector<std::vector<double>> to_dense(const CyclicBandedMatrix& m) {
  std::vector<std::vector<double>> d(m.rows(),
                                     std::vector<double>(m.rows(), 0.0));
  for (int i = 0; i < m.rows(); ++i)
    for (int o = -m.half_bandwidth(); o <= m.half_bandwidth(); ++o) {
      int j = ((i + o) % m.rows() + m.rows()) % m.rows();
      d[i][j] += m.at(i, o);
    }
  return d;
}

template std::vector<double> BandedMatrix::apply(std::span<const double>) const;
template cvec BandedMatrix::apply(std::span<const std::complex<double>>) const;
template std::vector<double> BandedMatrix::solve(std::span<const double>) const;
template cvec BandedMatrix::solve(std::span<const std::complex<double>>) const;
template std::vector<double> CyclicBandedMatrix::apply(
    std::span<const double>) const;
template cvec CyclicBandedMatrix::apply(
    std::span<const std::complex<double>>) const;
template std::vector<double> CyclicBandedMatrix::solve(
    std::span<const double>) const;
template cvec CyclicBandedMatrix::solve(
    std::span<const std::complex<double>>) const;
template std::vector<double> dense_solve(
    const std::vector<std::vector<double>>&, std::span<const double>);
template cvec dense_solve(const std::vector<std::vector<double>>&,
                          std::span<const std::complex<double>>);

}  // namespace dispfd
