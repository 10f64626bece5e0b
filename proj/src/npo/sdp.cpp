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

#include "dikit/npo/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include "dikit/errors.hpp"

namespace dikit::npo {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Blocks = std::vector<Mat>;

constexpr double kInf = std::numeric_limits<double>::infinity();

Blocks scaled_identity(const std::vector<std::size_t>& dims, const std::vector<double>& scale) {
  Blocks out;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const auto d = static_cast<Eigen::Index>(dims[k]);
    out.push_back(Mat::Identity(d, d) * scale[k]);
  }
  return out;
}

Blocks zeros_like(const Blocks& m) {
  Blocks out;
  for (const auto& b : m) out.push_back(Mat::Zero(b.rows(), b.cols()));
  return out;
}

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
  return s;
}

double fro(const Blocks& a) { return std::sqrt(inner(a, a)); }

double trace(const Blocks& a) {
  double s = 0.0;
  for (const auto& b : a) s += b.trace();
  return s;
}

void add_sparse(Blocks& m, const SparseSymmetric& s, double scale) {
  for (const auto& e : s) {
    m[e.block](e.row, e.col) += scale * e.value;
    if (e.row != e.col) m[e.block](e.col, e.row) += scale * e.value;
  }
}

// tr(A Z) for symmetric sparse A and arbitrary Z.
double sparse_inner(const SparseSymmetric& s, const Blocks& z) {
  double v = 0.0;
  for (const auto& e : s) {
    const Mat& b = z[e.block];
    v += e.value * (e.row == e.col ? b(e.row, e.row) : b(e.row, e.col) + b(e.col, e.row));
  }
  return v;
}

double sparse_norm(const SparseSymmetric& s) {
  double v = 0.0;
  for (const auto& e : s) v += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
  return std::sqrt(v);
}

Blocks sym(const Blocks& m) {
  Blocks out;
  for (const auto& b : m) out.push_back((b + b.transpose()) / 2.0);
  return out;
}

Blocks mul3(const Blocks& a, const Blocks& b, const Blocks& c) {
  Blocks out;
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(a[k] * b[k] * c[k]);
  return out;
}

Blocks axpy(const Blocks& x, double alpha, const Blocks& d) {
  Blocks out;
  for (std::size_t k = 0; k < x.size(); ++k) out.push_back(x[k] + alpha * d[k]);
  return out;
}

// Largest alpha with x + alpha dx PSD, or +inf.
double max_step(const Blocks& x, const Blocks& dx) {
  double alpha = kInf;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double lam;
    if (x[k].rows() == 1) {
      if (x[k](0, 0) <= 0.0) return 0.0;
      lam = dx[k](0, 0) / x[k](0, 0);
    } else {
      Eigen::LLT<Mat> llt(x[k]);
      if (llt.info() != Eigen::Success) return 0.0;
      Mat t = llt.matrixL().solve(dx[k]);
      t = llt.matrixL().solve(t.transpose()).transpose();
      t = (t + t.transpose()) / 2.0;
      Eigen::SelfAdjointEigenSolver<Mat> es(t, Eigen::EigenvaluesOnly);
      lam = es.eigenvalues()(0);
    }
    if (lam < 0.0) alpha = std::min(alpha, -1.0 / lam);
  }
  return alpha;
}

Blocks clip_psd(const Blocks& x) {
  Blocks out;
  for (const auto& b : x) {
    if (b.rows() == 1) {
      out.push_back(b.cwiseMax(0.0));
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es((b + b.transpose()) / 2.0);
    Vec ev = es.eigenvalues().cwiseMax(0.0);
    out.push_back(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose());
  }
  return out;
}

struct Workspace {
  const SdpProblem& pr;
  // Entries of every A_i grouped by block, for the Schur assembly.
  std::vector<std::vector<std::pair<std::size_t, SparseEntry>>> by_block;
  std::vector<std::map<std::size_t, SparseSymmetric>> var_blocks;

  explicit Workspace(const SdpProblem& p) : pr(p), by_block(p.block_dims.size()), var_blocks(p.num_vars()) {
    for (std::size_t i = 0; i < p.num_vars(); ++i)
      for (const auto& e : p.a[i]) {
        by_block[e.block].emplace_back(i, e);
        var_blocks[i][e.block].push_back(e);
      }
  }

  Vec op_a(const Blocks& x) const {
    Vec v(pr.num_vars());
    for (std::size_t i = 0; i < pr.num_vars(); ++i) v(i) = sparse_inner(pr.a[i], x);
    return v;
  }

  Blocks op_at(const Vec& y, const Blocks& like) const {
    Blocks out = zeros_like(like);
    for (std::size_t i = 0; i < pr.num_vars(); ++i)
      if (y(i) != 0.0) add_sparse(out, pr.a[i], y(i));
    return out;
  }

  // M_ij = tr(A_i X A_j S^-1).
  Mat schur(const Blocks& x, const Blocks& sinv) const {
    const auto m = static_cast<Eigen::Index>(pr.num_vars());
    Mat out = Mat::Zero(m, m);
    for (std::size_t j = 0; j < pr.num_vars(); ++j) {
      for (const auto& [k, entries] : var_blocks[j]) {
        const Mat& s = sinv[k];
        const Mat& xk = x[k];
        const auto d = s.rows();
        std::map<std::size_t, Eigen::Index> rows;
        for (const auto& e : entries) {
          rows.try_emplace(e.row, static_cast<Eigen::Index>(rows.size()));
          rows.try_emplace(e.col, static_cast<Eigen::Index>(rows.size()));
        }
        Mat p = Mat::Zero(static_cast<Eigen::Index>(rows.size()), d);
        for (const auto& e : entries) {
          p.row(rows[e.row]) += e.value * s.row(e.col);
          if (e.row != e.col) p.row(rows[e.col]) += e.value * s.row(e.row);
        }
        Mat xr(d, static_cast<Eigen::Index>(rows.size()));
        for (const auto& [r, idx] : rows) xr.col(idx) = xk.col(r);
        Mat g = xr * p;
        for (const auto& [i, e] : by_block[k])
          out(i, j) += e.value * (e.row == e.col ? g(e.row, e.row) : g(e.row, e.col) + g(e.col, e.row));
      }
    }
    return (out + out.transpose()) / 2.0;
  }
};

}  // namespace

std::string_view status_name(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "Optimal";
    case SdpStatus::MaxIter: return "MaxIter";
    case SdpStatus::Infeasible: return "Infeasible";
  }
  return "unknown";
}

SdpSolution solve_sdp(const SdpProblem& pr, const SdpOptions& opt) {
  const std::size_t m = pr.num_vars();
  if (static_cast<std::size_t>(pr.b.size()) != m || static_cast<std::size_t>(pr.y_bound.size()) != m)
    fail(ErrorCode::ShapeError, "SDP objective/bounds length must match the variable count");
  if (pr.e.rows() > 0 && static_cast<std::size_t>(pr.e.cols()) != m)
    fail(ErrorCode::ShapeError, "SDP equality matrix has the wrong width");
  if (pr.e.rows() != pr.f.size()) fail(ErrorCode::ShapeError, "SDP equality right-hand side has the wrong length");
  for (std::size_t d : pr.block_dims)
    if (d == 0 || d > 400) fail(ErrorCode::ShapeError, "SDP block sizes must lie in [1, 400]");
  for (const auto& s : pr.a)
    for (const auto& e : s)
      if (e.block >= pr.block_dims.size() || e.col >= pr.block_dims[e.block] || e.row > e.col)
        fail(ErrorCode::ShapeError, "sparse SDP entry out of range");

  SdpSolution sol;
  const Workspace ws(pr);
  const auto mi = static_cast<Eigen::Index>(m);

  // Drop dependent equality rows; reject inconsistent systems outright.
  Mat e = pr.e;
  Vec f = pr.f;
  if (e.rows() > 0) {
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(e);
    Vec y0 = cod.solve(f);
    if ((e * y0 - f).norm() > 1e-8 * (1.0 + f.norm())) {
      sol.status = SdpStatus::Infeasible;
      sol.certified_bound = -kInf;
      sol.primal_value = sol.dual_value = std::nan("");
      return sol;
    }
    Eigen::ColPivHouseholderQR<Mat> qr(e.transpose());
    qr.setThreshold(1e-10);
    const auto rank = qr.rank();
    Mat er(rank, mi);
    Vec fr(rank);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index r = 0; r < rank; ++r) keep.push_back(qr.colsPermutation().indices()(r));
    std::sort(keep.begin(), keep.end());
    for (Eigen::Index r = 0; r < rank; ++r) {
      er.row(r) = e.row(keep[r]);
      fr(r) = f(keep[r]);
    }
    e = er;
    f = fr;
  }
  const Eigen::Index p = e.rows();

  Blocks c = zeros_like(scaled_identity(pr.block_dims, std::vector<double>(pr.block_dims.size(), 0.0)));
  add_sparse(c, pr.c, 1.0);
  const double c_norm = fro(c), b_norm = pr.b.norm(), f_norm = f.norm();

  // Rigor scale: |sum r_i y_i| <= ||r|| ||B|| <= ||r|| * trace_cap.
  double bound_norm = 0.0;
  for (Eigen::Index i = 0; i < mi; ++i) bound_norm += pr.y_bound(i) * pr.y_bound(i);
  bound_norm = std::sqrt(bound_norm);
  std::size_t max_block = 0;
  for (std::size_t d : pr.block_dims) max_block = std::max(max_block, d);
  const double trace_cap = std::max(static_cast<double>(max_block), bound_norm);

  // Starting point, per-block scaling as in common IPM codes.
  std::vector<double> xi, eta;
  for (std::size_t k = 0; k < pr.block_dims.size(); ++k) {
    double n = static_cast<double>(pr.block_dims[k]);
    double ratio = 0.0, amax = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      auto it = ws.var_blocks[i].find(k);
      double an = it == ws.var_blocks[i].end() ? 0.0 : sparse_norm(it->second);
      ratio = std::max(ratio, (1.0 + std::abs(pr.b(static_cast<Eigen::Index>(i)))) / (1.0 + an));
      amax = std::max(amax, an);
    }
    xi.push_back(std::max({10.0, std::sqrt(n), std::sqrt(n) * ratio}));
    eta.push_back(std::max({10.0, std::sqrt(n), amax, c[k].norm()}));
  }
  Blocks x = scaled_identity(pr.block_dims, xi);
  Blocks s = scaled_identity(pr.block_dims, eta);
  Vec y = Vec::Zero(mi), lam = Vec::Zero(p);
  double n_total = 0.0;
  for (std::size_t d : pr.block_dims) n_total += static_cast<double>(d);

  double best_cert = kInf, best_cert_resid = 0.0, best_score = kInf;
  double best_pobj = 0.0, best_dobj = 0.0, best_prel = 0.0, best_drel = 0.0, best_gap = 0.0;
  Vec best_y = y;
  bool infeasible = false, converged = false;
  int stalls = 0;

  auto certify = [&](const Blocks& xc_raw, const Vec& l) {
    Blocks xc = clip_psd(xc_raw);
    Vec r = pr.b - ws.op_a(xc) - e.transpose() * l;
    double rn = r.norm();
    double shift = rn == 0.0 ? 0.0 : rn * trace_cap;
    double val = inner(c, xc) + f.dot(l) + shift;
    if (std::isfinite(val) && val < best_cert) {
      best_cert = val;
      best_cert_resid = rn;
      sol.rigor_shift = shift;
    }
  };

  int iter = 0;
  for (; iter < opt.max_iterations; ++iter) {
    Blocks rd = axpy(c, -1.0, ws.op_at(y, c));
    for (std::size_t k = 0; k < rd.size(); ++k) rd[k] -= s[k];
    Vec re = f - e * y;
    Vec rp = pr.b - ws.op_a(x) - e.transpose() * lam;
    double pobj = inner(c, x) + f.dot(lam);
    double dobj = pr.b.dot(y);
    double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    double prel = rp.norm() / (1.0 + b_norm);
    double drel = std::sqrt(inner(rd, rd) + re.squaredNorm()) / (1.0 + c_norm + f_norm);

    certify(x, lam);
    double score = std::max({gap, prel, drel});
    if (score < best_score) {
      best_score = score;
      best_pobj = pobj;
      best_dobj = dobj;
      best_prel = prel;
      best_drel = drel;
      best_gap = gap;
      best_y = y;
    }
    if (gap < opt.tolerance && prel < opt.tolerance && drel < opt.tolerance) {
      converged = true;
      break;
    }
    if (trace(x) > opt.infeasibility_scale || std::abs(pobj) > opt.infeasibility_scale ||
        std::abs(dobj) > opt.infeasibility_scale) {
      infeasible = true;
      break;
    }

    const double mu = inner(x, s) / n_total;
    Blocks sinv;
    bool chol_ok = true;
    for (const auto& sk : s) {
      Eigen::LLT<Mat> llt(sk);
      if (llt.info() != Eigen::Success) {
        chol_ok = false;
        break;
      }
      sinv.push_back(llt.solve(Mat::Identity(sk.rows(), sk.cols())));
    }
    if (!chol_ok) break;
    sinv = sym(sinv);

    Mat kkt = Mat::Zero(mi + p, mi + p);
    kkt.topLeftCorner(mi, mi) = ws.schur(x, sinv);
    if (p > 0) {
      kkt.topRightCorner(mi, p) = e.transpose();
      kkt.bottomLeftCorner(p, mi) = e;
    }
    Eigen::PartialPivLU<Mat> lu(kkt);

    Blocks x_rd_sinv = mul3(x, rd, sinv);
    auto direction = [&](const Blocks& rc, Blocks& dx, Blocks& ds, Vec& dy, Vec& dl) {
      Vec rhs(mi + p);
      rhs.head(mi) = rp - ws.op_a(rc);
      if (p > 0) rhs.tail(p) = re;
      Vec sol_kkt = lu.solve(rhs);
      dy = sol_kkt.head(mi);
      dl = sol_kkt.tail(p);
      ds = axpy(rd, -1.0, ws.op_at(dy, rd));
      Blocks corr = sym(mul3(x, ds, sinv));
      dx = zeros_like(x);
      // rc carries -X Rd S^-1; with dS = Rd - A^T dy that term cancels,
      // leaving dX = sym(rc + X Rd S^-1) - sym(X dS S^-1).
      for (std::size_t k = 0; k < x.size(); ++k) {
        Mat t = rc[k] + x_rd_sinv[k];
        dx[k] = (t + t.transpose()) / 2.0 - corr[k];
      }
    };

    Blocks rc_aff = zeros_like(x);
    for (std::size_t k = 0; k < x.size(); ++k) rc_aff[k] = -x[k] - x_rd_sinv[k];
    Blocks dx_a, ds_a;
    Vec dy_a, dl_a;
    direction(rc_aff, dx_a, ds_a, dy_a, dl_a);
    double ap_a = std::min(1.0, max_step(x, dx_a));
    double ad_a = std::min(1.0, max_step(s, ds_a));
    double mu_aff = inner(axpy(x, ap_a, dx_a), axpy(s, ad_a, ds_a)) / n_total;
    double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    Blocks second = mul3(dx_a, ds_a, sinv);
    Blocks rc = zeros_like(x);
    for (std::size_t k = 0; k < x.size(); ++k) rc[k] = sigma * mu * sinv[k] - x[k] - x_rd_sinv[k] - second[k];
    Blocks dx, ds;
    Vec dy, dl;
    direction(rc, dx, ds, dy, dl);

    const double gamma = 0.9 + 0.08 * std::min(ap_a, ad_a);
    double ap = std::min(1.0, gamma * max_step(x, dx));
    double ad = std::min(1.0, gamma * max_step(s, ds));
    if (!std::isfinite(ap) || !std::isfinite(ad)) break;
    if (std::max(ap, ad) < 1e-10) {
      if (++stalls >= 3) break;
    } else {
      stalls = 0;
    }
    x = sym(axpy(x, ap, dx));
    lam += ap * dl;
    y += ad * dy;
    s = sym(axpy(s, ad, ds));
  }
  certify(x, lam);

  sol.iterations = iter;
  sol.y = best_y;
  sol.primal_value = best_dobj + pr.objective_constant;
  sol.dual_value = best_pobj + pr.objective_constant;
  sol.primal_residual = best_drel;
  sol.dual_residual = best_cert_resid;
  sol.gap = best_gap;
  sol.certified_bound = best_cert + pr.objective_constant;
  if (infeasible) {
    sol.status = SdpStatus::Infeasible;
  } else if ((converged || best_score <= opt.report_gap) && best_gap <= opt.report_gap &&
             best_prel <= opt.report_residual && best_drel <= opt.report_residual) {
    sol.status = SdpStatus::Optimal;
  } else {
    sol.status = SdpStatus::MaxIter;
  }
  return sol;
}

SdpProblem to_sdp(const MomentProblem& mp) {
  if (mp.psd_blocks.empty()) fail(ErrorCode::ShapeError, "moment problem has no PSD block");
  SdpProblem pr;
  const std::size_t m = mp.variable_count() - 1;
  pr.a.resize(m);
  for (const auto& grid : mp.psd_blocks) {
    const std::size_t blk = pr.block_dims.size();
    pr.block_dims.push_back(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = i; j < grid.size(); ++j) {
        std::size_t id = grid[i][j];
        if (id == 0) {
          pr.c.push_back({blk, i, j, 1.0});
        } else {
          pr.a[id - 1].push_back({blk, i, j, -1.0});
        }
      }
  }
  for (const auto& le : mp.le_constraints) {
    const std::size_t blk = pr.block_dims.size();
    pr.block_dims.push_back(1);
    pr.c.push_back({blk, 0, 0, le.target});
    for (const auto& [id, v] : le.coeffs) {
      if (id == 0) fail(ErrorCode::ShapeError, "constant terms belong in the target");
      pr.a[id - 1].push_back({blk, 0, 0, v});
    }
  }
  const double sign = mp.sense == Sense::Max ? 1.0 : -1.0;
  pr.b = Vec::Zero(static_cast<Eigen::Index>(m));
  for (const auto& [id, v] : mp.objective.coeffs) pr.b(static_cast<Eigen::Index>(id - 1)) += sign * v;
  pr.objective_constant = sign * mp.objective.constant;
  pr.e = Mat::Zero(static_cast<Eigen::Index>(mp.eq_constraints.size()), static_cast<Eigen::Index>(m));
  pr.f = Vec::Zero(static_cast<Eigen::Index>(mp.eq_constraints.size()));
  for (std::size_t r = 0; r < mp.eq_constraints.size(); ++r) {
    for (const auto& [id, v] : mp.eq_constraints[r].coeffs)
      pr.e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(id - 1)) += v;
    pr.f(static_cast<Eigen::Index>(r)) = mp.eq_constraints[r].target;
  }
  pr.y_bound = Vec(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) pr.y_bound(static_cast<Eigen::Index>(i)) = mp.var_bounds[i + 1];
  return pr;
}

SdpSolution solve_sdp(const MomentProblem& mp, const SdpOptions& options) {
  SdpSolution s = solve_sdp(to_sdp(mp), options);
  if (mp.sense == Sense::Min) {
    s.primal_value = -s.primal_value;
    s.dual_value = -s.dual_value;
    s.certified_bound = -s.certified_bound;
  }
  return s;
}

std::vector<double> moment_values(const SdpSolution& s) {
  std::vector<double> out{1.0};
  for (Eigen::Index i = 0; i < s.y.size(); ++i) out.push_back(s.y(i));
  return out;
}

void to_json(nlohmann::json& j, const SdpSolution& s) {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  j = nlohmann::json{{"status", std::string(status_name(s.status))},
                     {"primal_value", num(s.primal_value)},
                     {"dual_value", num(s.dual_value)},
                     {"primal_residual", num(s.primal_residual)},
                     {"dual_residual", num(s.dual_residual)},
                     {"gap", num(s.gap)},
                     {"rigor_shift", num(s.rigor_shift)},
                     {"certified_bound", num(s.certified_bound)},
                     {"iterations", s.iterations}};
}

}  // namespace dikit::npo
