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

#include "dikit/quantum_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dikit/errors.hpp"

namespace dikit {

namespace {

constexpr double kRankThreshold = 1e-12;
constexpr double kMarginalTol = 1e-9;
constexpr double kPovmTol = 1e-9;

ComplexMatrix coefficient_matrix(const ComplexVector& psi, std::size_t dim_a) {
  const auto rows = static_cast<Eigen::Index>(dim_a);
  const Eigen::Index cols = psi.size() / rows;
  ComplexMatrix c(rows, cols);
  for (Eigen::Index a = 0; a < rows; ++a)
    for (Eigen::Index r = 0; r < cols; ++r) c(a, r) = psi(a * cols + r);
  return c;
}

// Replace the columns of m by the nearest orthonormal set (polar factor).
ComplexMatrix orthonormalize_columns(const ComplexMatrix& m) {
  if (m.cols() == 0) return m;
  ComplexMatrix gram = hermitize(m.adjoint() * m);
  ComplexMatrix inv_sqrt = apply_spectral(gram, [](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; });
  return m * inv_sqrt;
}

// Canonical Naimark isometry of `effects` written into the ancilla block
// [offset, offset + effects.size()) of a K of dimension dim_k, followed by
// the unitary that rotates its range onto |phi>|0>. Returns the PVM.
std::vector<ComplexMatrix> dilate_into(const std::vector<ComplexMatrix>& effects, std::size_t dim_k,
                                       std::size_t offset) {
  const Eigen::Index d = effects.front().rows();
  const auto k = static_cast<Eigen::Index>(dim_k);
  const Eigen::Index big = d * k;

  ComplexMatrix y = ComplexMatrix::Zero(big, d);
  for (std::size_t c = 0; c < effects.size(); ++c) {
    ComplexMatrix root = psd_sqrt(hermitize(effects[c]));
    const auto kc = static_cast<Eigen::Index>(offset + c);
    for (Eigen::Index h = 0; h < d; ++h) y.row(h * k + kc) = root.row(h);
  }
  ComplexMatrix v = ComplexMatrix::Zero(big, d);
  for (Eigen::Index h = 0; h < d; ++h) v(h * k, h) = 1.0;

  y = orthonormalize_columns(y);
  ComplexMatrix yc = orthonormal_complement(y, static_cast<std::size_t>(big));
  ComplexMatrix vc = orthonormal_complement(v, static_cast<std::size_t>(big));
  ComplexMatrix w = v * y.adjoint() + vc * yc.adjoint();

  std::vector<ComplexMatrix> pvm;
  pvm.reserve(effects.size());
  for (std::size_t c = 0; c < effects.size(); ++c) {
    ComplexMatrix sel = ComplexMatrix::Zero(k, k);
    sel(static_cast<Eigen::Index>(offset + c), static_cast<Eigen::Index>(offset + c)) = 1.0;
    ComplexMatrix proj = kron(pauli::identity(static_cast<std::size_t>(d)), sel);
    pvm.push_back(hermitize(w * proj * w.adjoint()));
  }
  return pvm;
}

void check_povm(const std::vector<ComplexMatrix>& effects) {
  if (effects.empty()) fail(ErrorCode::NotAPOVM, "POVM has no effects");
  const Eigen::Index d = effects.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : effects) {
    if (e.rows() != d || e.cols() != d) fail(ErrorCode::NotAPOVM, "effects differ in shape");
    if (!is_hermitian(e, kPovmTol)) fail(ErrorCode::NotAPOVM, "effect is not Hermitian");
    if (eigvalsh(hermitize(e))(0) < -kPovmTol) fail(ErrorCode::NotAPOVM, "effect is not positive semidefinite");
    sum += e;
  }
  if ((sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > kPovmTol)
    fail(ErrorCode::NotAPOVM, "effects do not sum to the identity");
}

// <psi| L (x) R |psi> with L on the first `dim_left` coordinates.
double bipartite_expectation(const ComplexVector& psi, std::size_t dim_left, const ComplexMatrix& left,
                             const ComplexMatrix& right) {
  ComplexMatrix c = coefficient_matrix(psi, dim_left);
  ComplexMatrix applied = left * c * right.transpose();
  return (c.conjugate().cwiseProduct(applied)).sum().real();
}

ProbTable make_table(std::size_t nx, std::size_t ny) { return ProbTable(nx, std::vector<std::vector<std::vector<double>>>(ny)); }

}  // namespace

// Reduced state of a pure vector on the listed factors.
ComplexMatrix reduced_pure_state(const ComplexVector& psi, const FactorSpace& space, std::span<const std::size_t> keep) {
  const std::size_t k = space.num_factors();
  std::vector<bool> kept(k, false);
  for (std::size_t f : keep) kept.at(f) = true;
  std::size_t keep_dim = 1, trace_dim = 1;
  for (std::size_t f = 0; f < k; ++f) (kept[f] ? keep_dim : trace_dim) *= space.dim(f);
  ComplexMatrix m(static_cast<Eigen::Index>(keep_dim), static_cast<Eigen::Index>(trace_dim));
  for (std::size_t idx = 0; idx < space.total_dim(); ++idx) {
    std::size_t rem = idx, kpart = 0, tpart = 0, ks = 1, ts = 1;
    for (std::size_t f = k; f-- > 0;) {
      std::size_t d = space.dim(f), digit = rem % d;
      rem /= d;
      if (kept[f]) { kpart += digit * ks; ks *= d; } else { tpart += digit * ts; ts *= d; }
    }
    m(static_cast<Eigen::Index>(kpart), static_cast<Eigen::Index>(tpart)) = psi(static_cast<Eigen::Index>(idx));
  }
  return m * m.adjoint();
}

DensityMatrix::DensityMatrix(FactorSpace space, const ComplexMatrix& mat) : space_(std::move(space)) {
  if (mat.rows() != mat.cols() || static_cast<std::size_t>(mat.rows()) != space_.total_dim())
    fail(ErrorCode::DimensionMismatch, "density matrix shape does not match its factor space");
  if (!is_hermitian(mat, kStateTol)) fail(ErrorCode::NonHermitian, "density matrix is not Hermitian");
  mat_ = hermitize(mat);
  double tr = mat_.trace().real();
  if (std::abs(tr - 1.0) > kStateTol) fail(ErrorCode::RangeError, "density matrix trace " + std::to_string(tr) + " != 1");
  if (eigvalsh(mat_)(0) < -kStateTol) fail(ErrorCode::RangeError, "density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::from_pure(FactorSpace space, const ComplexVector& psi) {
  return DensityMatrix(std::move(space), psi * psi.adjoint());
}

DensityMatrix DensityMatrix::reduce(std::span<const std::size_t> keep) const {
  return DensityMatrix(space_.subspace(keep), partial_trace(mat_, space_, keep));
}

DensityMatrix DensityMatrix::reduce(std::initializer_list<std::size_t> keep) const {
  return reduce(std::span<const std::size_t>(keep.begin(), keep.size()));
}

void PVM::validate() const {
  if (projectors.empty()) fail(ErrorCode::NotAPOVM, "PVM has no projectors");
  const Eigen::Index d = projectors.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const auto& p = projectors[i];
    if (p.rows() != d || p.cols() != d) fail(ErrorCode::NotAPOVM, "projector shapes differ");
    if (!is_hermitian(p)) fail(ErrorCode::NotAPOVM, "projector is not Hermitian");
    if ((p * p - p).cwiseAbs().maxCoeff() > kStateTol) fail(ErrorCode::NotAPOVM, "projector is not idempotent");
    for (std::size_t j = i + 1; j < projectors.size(); ++j)
      if ((p * projectors[j]).cwiseAbs().maxCoeff() > kStateTol)
        fail(ErrorCode::NotAPOVM, "projectors are not orthogonal");
    sum += p;
  }
  if ((sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > kStateTol)
    fail(ErrorCode::NotAPOVM, "projectors do not sum to the identity");
}

DichotomicObservable::DichotomicObservable(std::array<double, 3> bloch) : bloch_(bloch) {
  double n = std::sqrt(bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2]);
  if (std::abs(n - 1.0) > 1e-12) fail(ErrorCode::RangeError, "Bloch vector must have unit norm");
}

DichotomicObservable DichotomicObservable::xz_plane(double theta) {
  return DichotomicObservable({std::sin(theta), 0.0, std::cos(theta)});
}

ComplexMatrix DichotomicObservable::matrix() const {
  return bloch_[0] * pauli::x() + bloch_[1] * pauli::y() + bloch_[2] * pauli::z();
}

ComplexVector phi_plus() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

DensityMatrix werner_state(double visibility) {
  if (!(visibility >= 0.0 && visibility <= 1.0)) fail(ErrorCode::RangeError, "visibility must lie in [0, 1]");
  ComplexVector phi = phi_plus();
  ComplexMatrix m = visibility * (phi * phi.adjoint()) + (1.0 - visibility) * pauli::identity(4) / 4.0;
  return DensityMatrix(FactorSpace({2, 2}), m);
}

PVM bloch_pvm(const DichotomicObservable& obs, std::string label) {
  ComplexMatrix a = obs.matrix();
  ComplexMatrix id = pauli::identity(2);
  return PVM{std::move(label), {(id + a) / 2.0, (id - a) / 2.0}};
}

PVM embed_pvm(const PVM& local, const FactorSpace& space, std::size_t factor) {
  if (local.dim() != space.dim(factor)) fail(ErrorCode::DimensionMismatch, "PVM dimension does not match factor");
  std::size_t before = 1, after = 1;
  for (std::size_t f = 0; f < space.num_factors(); ++f) {
    if (f < factor) before *= space.dim(f);
    if (f > factor) after *= space.dim(f);
  }
  PVM out{local.input_label, {}};
  for (const auto& p : local.projectors)
    out.projectors.push_back(kron(kron(pauli::identity(before), p), pauli::identity(after)));
  return out;
}

Purification purify(const DensityMatrix& rho, std::size_t min_env_dim) {
  EighResult e = eigh(rho.mat());
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = e.eigenvalues.size(); i-- > 0;)
    if (e.eigenvalues(i) > kRankThreshold) support.push_back(i);
  const std::size_t env = std::max<std::size_t>({support.size(), min_env_dim, 1});
  const auto n = static_cast<Eigen::Index>(rho.dim());
  const auto ed = static_cast<Eigen::Index>(env);

  Purification out;
  out.env_dim = env;
  out.psi = ComplexVector::Zero(n * ed);
  for (std::size_t j = 0; j < support.size(); ++j) {
    double w = std::sqrt(e.eigenvalues(support[j]));
    for (Eigen::Index s = 0; s < n; ++s) out.psi(s * ed + static_cast<Eigen::Index>(j)) = w * e.eigenvectors(s, support[j]);
  }
  out.psi.normalize();
  std::vector<std::size_t> dims = rho.space().factor_dims();
  dims.push_back(env);
  out.space = FactorSpace(std::move(dims));
  return out;
}

ComplexMatrix uhlmann_isometry(const ComplexVector& chi, const ComplexVector& phi, std::size_t dim_a) {
  if (dim_a == 0 || chi.size() % static_cast<Eigen::Index>(dim_a) != 0 || phi.size() % static_cast<Eigen::Index>(dim_a) != 0)
    fail(ErrorCode::DimensionMismatch, "state length is not a multiple of dim(A)");
  ComplexMatrix cchi = coefficient_matrix(chi, dim_a);
  ComplexMatrix cphi = coefficient_matrix(phi, dim_a);
  ComplexMatrix rho_chi = cchi * cchi.adjoint();
  ComplexMatrix rho_phi = cphi * cphi.adjoint();
  double mismatch = (rho_chi - rho_phi).cwiseAbs().maxCoeff();
  if (mismatch > kMarginalTol)
    fail(ErrorCode::MarginalMismatch, "A-marginals differ by " + std::to_string(mismatch));

  const Eigen::Index d1 = cchi.cols(), d2 = cphi.cols();
  // One eigenbasis of the shared marginal fixes both Schmidt decompositions,
  // which also pairs up vectors inside degenerate eigenspaces.
  EighResult e = eigh(hermitize(rho_chi));
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = e.eigenvalues.size(); i-- > 0;)
    if (e.eigenvalues(i) > kRankThreshold) support.push_back(i);
  const auto k = static_cast<Eigen::Index>(support.size());
  ComplexMatrix r(d1, k), s(d2, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    double w = std::sqrt(e.eigenvalues(support[j]));
    ComplexVector u = e.eigenvectors.col(support[j]).conjugate();
    r.col(j) = cchi.transpose() * u / w;
    s.col(j) = cphi.transpose() * u / w;
  }
  r = orthonormalize_columns(r);
  s = orthonormalize_columns(s);
  ComplexMatrix w = s * r.adjoint();
  ComplexMatrix rc = orthonormal_complement(r, static_cast<std::size_t>(d1));
  ComplexMatrix sc = orthonormal_complement(s, static_cast<std::size_t>(d2));
  const Eigen::Index extra = std::min(rc.cols(), sc.cols());
  if (extra > 0) w += sc.leftCols(extra) * rc.leftCols(extra).adjoint();
  return w;
}

NaimarkDilation naimark_dilate(const std::vector<ComplexMatrix>& effects) {
  check_povm(effects);
  const Eigen::Index d = effects.front().rows();
  NaimarkDilation out;
  out.dim_k = effects.size();
  const auto k = static_cast<Eigen::Index>(out.dim_k);
  out.isometry = ComplexMatrix::Zero(d * k, d);
  for (Eigen::Index h = 0; h < d; ++h) out.isometry(h * k, h) = 1.0;
  out.pvm = dilate_into(effects, out.dim_k, 0);
  return out;
}

void validate_routed_model(const RoutedModel& m) {
  if (m.rho_l.space() != m.rho_s.space() || m.rho_l.space().num_factors() != 3)
    fail(ErrorCode::DimensionMismatch, "routed model states must share an A (x) B (x) T space");
  ComplexMatrix ra = partial_trace(m.rho_l.mat(), m.rho_l.space(), {0});
  ComplexMatrix rs = partial_trace(m.rho_s.mat(), m.rho_s.space(), {0});
  double mismatch = (ra - rs).cwiseAbs().maxCoeff();
  if (mismatch > kMarginalTol)
    fail(ErrorCode::MarginalMismatch, "rho_L and rho_S A-marginals differ by " + std::to_string(mismatch));
  const auto& sp = m.rho_l.space();
  for (const auto& p : m.alice) if (p.dim() != sp.dim(0)) fail(ErrorCode::DimensionMismatch, "Alice PVM dimension");
  for (const auto& p : m.bob) if (p.dim() != sp.dim(1)) fail(ErrorCode::DimensionMismatch, "Bob PVM dimension");
  for (const auto& p : m.tester) if (p.dim() != sp.dim(2)) fail(ErrorCode::DimensionMismatch, "tester PVM dimension");
}

TranslatedModel translate_routed_model(const RoutedModel& m) {
  validate_routed_model(m);
  const std::size_t da = m.rho_l.space().dim(0), db = m.rho_l.space().dim(1), dt = m.rho_l.space().dim(2);

  Purification chi = purify(m.rho_l);
  Purification phi = purify(m.rho_s, chi.env_dim);
  const std::size_t de = chi.env_dim, des = phi.env_dim;
  ComplexMatrix w = uhlmann_isometry(chi.psi, phi.psi, da);

  // Compress the tester POVMs through W onto B (x) T (x) E. B~ = B (x) T via
  // the identity isometry, so these already act on B~ (x) E.
  std::vector<std::vector<ComplexMatrix>> compressed;
  for (const auto& pvm : m.tester) {
    std::vector<ComplexMatrix> effects;
    for (const auto& t : pvm.projectors) {
      ComplexMatrix lifted = kron(kron(pauli::identity(db), t), pauli::identity(des));
      effects.push_back(hermitize(w.adjoint() * lifted * w));
    }
    compressed.push_back(std::move(effects));
  }

  std::size_t dk = 0;
  for (const auto& eff : compressed) dk += eff.size();
  dk = std::max<std::size_t>(dk, 1);

  TranslatedModel out;
  out.alice = m.alice;
  for (const auto& pvm : m.bob) {
    PVM lifted{pvm.input_label, {}};
    for (const auto& p : pvm.projectors) lifted.projectors.push_back(kron(p, pauli::identity(dt)));
    out.bob.push_back(std::move(lifted));
  }
  std::size_t offset = 0;
  for (const auto& eff : compressed) {
    out.tester.push_back(dilate_into(eff, dk, offset));
    offset += eff.size();
  }
  ComplexVector ancilla = ComplexVector::Zero(static_cast<Eigen::Index>(dk));
  ancilla(0) = 1.0;
  out.psi = kron(chi.psi, ancilla);
  out.space = FactorSpace({da, db * dt, de, dk});
  out.chi_l = std::move(chi);
  return out;
}

ProbTable routed_long_range_stats(const RoutedModel& m) {
  const std::size_t dt = m.rho_l.space().dim(2);
  ProbTable t = make_table(m.alice.size(), m.bob.size());
  for (std::size_t x = 0; x < m.alice.size(); ++x)
    for (std::size_t y = 0; y < m.bob.size(); ++y) {
      auto& cell = t[x][y];
      cell.assign(m.alice[x].outcomes(), std::vector<double>(m.bob[y].outcomes()));
      for (std::size_t a = 0; a < m.alice[x].outcomes(); ++a)
        for (std::size_t b = 0; b < m.bob[y].outcomes(); ++b) {
          ComplexMatrix op = kron(kron(m.alice[x].projectors[a], m.bob[y].projectors[b]), pauli::identity(dt));
          cell[a][b] = (op * m.rho_l.mat()).trace().real();
        }
    }
  return t;
}

ProbTable routed_short_range_stats(const RoutedModel& m) {
  const std::size_t db = m.rho_s.space().dim(1);
  ProbTable t = make_table(m.alice.size(), m.tester.size());
  for (std::size_t x = 0; x < m.alice.size(); ++x)
    for (std::size_t z = 0; z < m.tester.size(); ++z) {
      auto& cell = t[x][z];
      cell.assign(m.alice[x].outcomes(), std::vector<double>(m.tester[z].outcomes()));
      for (std::size_t a = 0; a < m.alice[x].outcomes(); ++a)
        for (std::size_t c = 0; c < m.tester[z].outcomes(); ++c) {
          ComplexMatrix op = kron(kron(m.alice[x].projectors[a], pauli::identity(db)), m.tester[z].projectors[c]);
          cell[a][c] = (op * m.rho_s.mat()).trace().real();
        }
    }
  return t;
}

ProbTable translated_long_range_stats(const TranslatedModel& tm) {
  const std::size_t da = tm.space.dim(0), rest_env = tm.space.dim(2) * tm.space.dim(3);
  ProbTable t = make_table(tm.alice.size(), tm.bob.size());
  for (std::size_t x = 0; x < tm.alice.size(); ++x)
    for (std::size_t y = 0; y < tm.bob.size(); ++y) {
      auto& cell = t[x][y];
      cell.assign(tm.alice[x].outcomes(), std::vector<double>(tm.bob[y].outcomes()));
      for (std::size_t a = 0; a < tm.alice[x].outcomes(); ++a)
        for (std::size_t b = 0; b < tm.bob[y].outcomes(); ++b) {
          ComplexMatrix right = kron(tm.bob[y].projectors[b], pauli::identity(rest_env));
          cell[a][b] = bipartite_expectation(tm.psi, da, tm.alice[x].projectors[a], right);
        }
    }
  return t;
}

ProbTable translated_short_range_stats(const TranslatedModel& tm) {
  const std::size_t da = tm.space.dim(0);
  ProbTable t = make_table(tm.alice.size(), tm.tester.size());
  for (std::size_t x = 0; x < tm.alice.size(); ++x)
    for (std::size_t z = 0; z < tm.tester.size(); ++z) {
      auto& cell = t[x][z];
      cell.assign(tm.alice[x].outcomes(), std::vector<double>(tm.tester[z].size()));
      for (std::size_t a = 0; a < tm.alice[x].outcomes(); ++a)
        for (std::size_t c = 0; c < tm.tester[z].size(); ++c)
          cell[a][c] = bipartite_expectation(tm.psi, da, tm.alice[x].projectors[a], tm.tester[z][c]);
    }
  return t;
}

ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    cplx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

ComplexVector random_pure_state(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(g(rng), g(rng));
  return v.normalized();
}

DensityMatrix random_density(const FactorSpace& space, std::size_t rank, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  ComplexMatrix a(n, static_cast<Eigen::Index>(std::max<std::size_t>(rank, 1)));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = cplx(g(rng), g(rng));
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(space, hermitize(rho));
}

PVM random_pvm(std::size_t dim, std::size_t outcomes, std::mt19937_64& rng, std::string label) {
  ComplexMatrix u = random_unitary(dim, rng);
  const auto n = static_cast<Eigen::Index>(dim);
  PVM out{std::move(label), std::vector<ComplexMatrix>(outcomes, ComplexMatrix::Zero(n, n))};
  for (Eigen::Index j = 0; j < n; ++j) {
    std::size_t c = static_cast<std::size_t>(j) % outcomes;
    out.projectors[c] += u.col(j) * u.col(j).adjoint();
  }
  for (auto& p : out.projectors) p = hermitize(p);
  return out;
}

ComplexMatrix random_involution(std::size_t dim, std::mt19937_64& rng) {
  ComplexMatrix u = random_unitary(dim, rng);
  std::bernoulli_distribution coin(0.5);
  RealVector signs(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < signs.size(); ++i) signs(i) = coin(rng) ? 1.0 : -1.0;
  return hermitize(u * signs.cast<cplx>().asDiagonal() * u.adjoint());
}

RoutedModel random_routed_model(std::mt19937_64& rng) {
  FactorSpace space({2, 2, 2});
  std::uniform_int_distribution<std::size_t> rank_dist(1, 8);
  DensityMatrix rho_l = random_density(space, rank_dist(rng), rng);

  // A unitary on B T E applied to a purification of rho_L leaves the
  // A-marginal untouched and produces a generic rho_S.
  Purification chi = purify(rho_l);
  const std::size_t rest = 4 * chi.env_dim;
  ComplexMatrix u = random_unitary(rest, rng);
  ComplexVector phi = kron(ComplexMatrix(pauli::identity(2)), u) * chi.psi;
  ComplexMatrix rho_s = reduced_pure_state(phi, chi.space, std::vector<std::size_t>{0, 1, 2});

  RoutedModel m{rho_l, DensityMatrix(space, hermitize(rho_s)), {}, {}, {}};
  for (int x = 0; x < 2; ++x) m.alice.push_back(random_pvm(2, 2, rng, "x" + std::to_string(x)));
  for (int y = 0; y < 2; ++y) m.bob.push_back(random_pvm(2, 2, rng, "y" + std::to_string(y)));
  for (int z = 0; z < 2; ++z) m.tester.push_back(random_pvm(2, 2, rng, "z" + std::to_string(z)));
  return m;
}

}  // namespace dikit
