// Copyright 2026 The dikit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dikit/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dikit/errors.hpp"

namespace dikit {

FactorSpace::FactorSpace(std::vector<std::size_t> factor_dims) : dims_(std::move(factor_dims)) {
  for (std::size_t d : dims_) {
    if (d == 0) fail(ErrorCode::BadFactorIndex, "factor dimension must be positive");
    total_ *= d;
  }
}

std::size_t FactorSpace::dim(std::size_t factor) const {
  if (factor >= dims_.size())
    fail(ErrorCode::BadFactorIndex, "factor " + std::to_string(factor) + " out of range");
  return dims_[factor];
}

FactorSpace FactorSpace::subspace(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> dims;
  for (std::size_t k : sorted) dims.push_back(dim(k));
  return FactorSpace(std::move(dims));
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.size() == 0) return false;
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return hermiticity_defect(m) <= tol * scale;
}

ComplexMatrix hermitize(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

namespace {

// Implicit-shift QL on a real symmetric tridiagonal matrix. d holds the
// diagonal, e[i] the coupling between i and i+1 (e[n-1] ignored). The
// rotations are accumulated into the columns of z.
void tridiagonal_ql(RealVector& d, RealVector& e, RealMatrix& z) {
  const Eigen::Index n = d.size();
  if (n == 0) return;
  e(n - 1) = 0.0;
  constexpr int kMaxSweeps = 60;
  const double eps = std::numeric_limits<double>::epsilon();

  for (Eigen::Index l = 0; l < n; ++l) {
    int iter = 0;
    Eigen::Index m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d(m)) + std::abs(d(m + 1));
        if (std::abs(e(m)) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps)
          fail(ErrorCode::NoConvergence, "QL iteration exceeded its sweep cap");
        double g = (d(l + 1) - d(l)) / (2.0 * e(l));
        double r = std::hypot(g, 1.0);
        g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        Eigen::Index i;
        bool underflow = false;
        for (i = m - 1; i >= l; --i) {
          double f = s * e(i);
          double b = c * e(i);
          r = std::hypot(f, g);
          e(i + 1) = r;
          if (r == 0.0) {
            d(i + 1) -= p;
            e(m) = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d(i + 1) - p;
          r = (d(i) - g) * s + 2.0 * c * b;
          p = s * r;
          d(i + 1) = g + p;
          g = c * r - b;
          for (Eigen::Index k = 0; k < z.rows(); ++k) {
            double t = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * t;
            z(k, i) = c * z(k, i) - s * t;
          }
        }
        if (underflow) continue;
        d(l) -= p;
        e(l) = g;
        e(m) = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

EighResult eigh(const ComplexMatrix& m) {
  if (!is_hermitian(m, kHermitianTol))
    fail(ErrorCode::NonHermitian, "eigh requires a Hermitian matrix (defect " +
                                      std::to_string(hermiticity_defect(m)) + ")");
  const Eigen::Index n = m.rows();
  ComplexMatrix a = hermitize(m);
  ComplexMatrix q = ComplexMatrix::Identity(n, n);

  // Householder reduction: a <- H a H column by column.
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index len = n - k - 1;
    ComplexVector x = a.block(k + 1, k, len, 1);
    double tail = x.tail(len - 1).norm();
    if (tail == 0.0) continue;
    double xnorm = x.norm();
    cplx phase = std::abs(x(0)) > 0.0 ? x(0) / std::abs(x(0)) : cplx(1.0, 0.0);
    cplx alpha = -phase * xnorm;
    ComplexVector v = x;
    v(0) -= alpha;
    v /= v.norm();

    auto trailing = a.block(k + 1, k + 1, len, len);
    ComplexVector p = trailing * v;
    cplx beta = v.dot(p);  // v^dagger p, real for Hermitian trailing block
    ComplexVector w = p - beta.real() * v;
    trailing -= 2.0 * (v * w.adjoint() + w * v.adjoint());

    a.block(k + 1, k, len, 1).setZero();
    a(k + 1, k) = alpha;
    a.block(k, k + 1, 1, len).setZero();
    a(k, k + 1) = std::conj(alpha);

    auto qcols = q.rightCols(len);
    ComplexVector qv = qcols * v;
    qcols -= 2.0 * qv * v.adjoint();
  }

  RealVector d(n), e(n);
  ComplexVector phases(n);
  if (n > 0) phases(0) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) d(i) = a(i, i).real();
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    cplx sub = a(i + 1, i);
    double mag = std::abs(sub);
    e(i) = mag;
    phases(i + 1) = mag > 0.0 ? phases(i) * sub / mag : phases(i);
  }
  if (n > 0) e(n - 1) = 0.0;

  RealMatrix z = RealMatrix::Identity(n, n);
  tridiagonal_ql(d, e, z);

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return d(i) < d(j); });

  ComplexMatrix qd = q * phases.asDiagonal();
  EighResult out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  ComplexMatrix zc = z.cast<cplx>();
  ComplexMatrix vecs = qd * zc;
  for (Eigen::Index j = 0; j < n; ++j) {
    out.eigenvalues(j) = d(order[j]);
    out.eigenvectors.col(j) = vecs.col(order[j]);
  }
  return out;
}

RealVector eigvalsh(const ComplexMatrix& m) { return eigh(m).eigenvalues; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const FactorSpace& space,
                            std::span<const std::size_t> keep) {
  const std::size_t total = space.total_dim();
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != total)
    fail(ErrorCode::BadFactorIndex, "matrix shape does not match factor space");
  const std::size_t k = space.num_factors();
  std::vector<bool> kept(k, false);
  for (std::size_t f : keep) {
    if (f >= k) fail(ErrorCode::BadFactorIndex, "keep index " + std::to_string(f) + " out of range");
    if (kept[f]) fail(ErrorCode::BadFactorIndex, "duplicate keep index " + std::to_string(f));
    kept[f] = true;
  }

  // Decompose every full index into (kept part, traced part).
  std::size_t keep_dim = 1, trace_dim = 1;
  for (std::size_t f = 0; f < k; ++f) (kept[f] ? keep_dim : trace_dim) *= space.dim(f);
  std::vector<std::size_t> full(keep_dim * trace_dim);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx, kpart = 0, tpart = 0, kstride = 1, tstride = 1;
    for (std::size_t f = k; f-- > 0;) {
      std::size_t d = space.dim(f);
      std::size_t digit = rem % d;
      rem /= d;
      if (kept[f]) {
        kpart += digit * kstride;
        kstride *= d;
      } else {
        tpart += digit * tstride;
        tstride *= d;
      }
    }
    full[kpart * trace_dim + tpart] = idx;
  }

  ComplexMatrix out = ComplexMatrix::Zero(keep_dim, keep_dim);
  for (std::size_t r = 0; r < keep_dim; ++r)
    for (std::size_t c = 0; c < keep_dim; ++c) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < trace_dim; ++t)
        acc += m(full[r * trace_dim + t], full[c * trace_dim + t]);
      out(r, c) = acc;
    }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const FactorSpace& space,
                            std::initializer_list<std::size_t> keep) {
  return partial_trace(m, space, std::span<const std::size_t>(keep.begin(), keep.size()));
}

double op_norm(const ComplexMatrix& m) {
  RealVector ev = eigvalsh(m);
  if (ev.size() == 0) return 0.0;
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b + b * a; }
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  return apply_spectral(m, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

ComplexMatrix orthonormal_complement(const ComplexMatrix& basis, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix proj = ComplexMatrix::Identity(n, n);
  if (basis.cols() > 0) proj -= basis * basis.adjoint();
  EighResult e = eigh(hermitize(proj));
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < n; ++j)
    if (e.eigenvalues(j) > 0.5) cols.push_back(j);
  ComplexMatrix out(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(j) = e.eigenvectors.col(cols[j]);
  return out;
}

namespace pauli {
ComplexMatrix identity(std::size_t d) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}
ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

}  // namespace dikit
