#include "plantlab/solvers.hpp"

#include "plantlab/errors.hpp"
#include "plantlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

namespace plantlab {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using EigenSolver = Eigen::SelfAdjointEigenSolver<MatrixXd>;

void symmetrize(MatrixXd& m) { m = 0.5 * (m + m.transpose()).eval(); }

/// U diag(d) U^T restricted to the columns where keep(i) holds.
template <class Keep>
MatrixXd reconstruct(const EigenSolver& es, const VectorXd& d, Keep keep) {
  const Eigen::Index n = d.size();
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (keep(i)) cols.push_back(i);
  }
  MatrixXd u(n, static_cast<Eigen::Index>(cols.size()));
  VectorXd dk(static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    u.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(cols[c]);
    dk(static_cast<Eigen::Index>(c)) = d(cols[c]);
  }
  MatrixXd out = u * dk.asDiagonal() * u.transpose();
  symmetrize(out);
  return out;
}

MatrixXd nuclear_step(EigenSolver& es, const MatrixXd& s, double t) {
  es.compute(s, Eigen::ComputeEigenvectors);
  const VectorXd& lam = es.eigenvalues();
  if (lam.cwiseAbs().sum() <= t) return s;
  const VectorXd d = project_l1_ball(lam, t);
  return reconstruct(es, d, [&](Eigen::Index i) { return d(i) != 0.0; });
}

MatrixXd psd_step(EigenSolver& es, const MatrixXd& s) {
  es.compute(s, Eigen::ComputeEigenvectors);
  const VectorXd& lam = es.eigenvalues();
  const Eigen::Index negatives = (lam.array() < 0.0).count();
  if (negatives == 0) return s;
  // subtract the negative part or rebuild the positive part, whichever is cheaper
  if (2 * negatives <= lam.size()) {
    MatrixXd out = s - reconstruct(es, lam, [&](Eigen::Index i) { return lam(i) < 0.0; });
    symmetrize(out);
    return out;
  }
  return reconstruct(es, lam, [&](Eigen::Index i) { return lam(i) > 0.0; });
}

/// Type-II Anderson acceleration of a fixed-point map x -> g(x). An extrapolated
/// point whose residual exceeds that of the plain step it replaced is thrown away
/// and the iteration restarts from the plain step with empty memory.
class Anderson {
 public:
  Anderson(Eigen::Index dim, int memory) : df_(dim, memory), dg_(dim, memory), gram_(memory, memory) {}

  VectorXd step(const VectorXd& x, const VectorXd& g) {
    VectorXd f = g - x;
    const double fnorm = f.norm();
    if (extrapolated_ && fnorm > fallback_norm_) {
      reset();
      return fallback_;
    }
    if (have_prev_) {
      const Eigen::Index slot = next_;
      df_.col(slot) = f - f_prev_;
      dg_.col(slot) = g - g_prev_;
      next_ = (next_ + 1) % df_.cols();
      cols_ = std::min<Eigen::Index>(cols_ + 1, df_.cols());
      for (Eigen::Index c = 0; c < cols_; ++c) gram_(slot, c) = gram_(c, slot) = df_.col(slot).dot(df_.col(c));
    }
    f_prev_ = f;
    g_prev_ = g;
    have_prev_ = true;
    extrapolated_ = false;
    if (cols_ == 0) return g;
    Eigen::MatrixXd h = gram_.topLeftCorner(cols_, cols_);
    h.diagonal().array() += 1e-8 * h.trace() + 1e-300;
    const VectorXd gamma = h.ldlt().solve(df_.leftCols(cols_).transpose() * f);
    if (!gamma.allFinite()) return g;
    fallback_ = g;
    fallback_norm_ = fnorm;
    extrapolated_ = true;
    return g - dg_.leftCols(cols_) * gamma;
  }

  void reset() {
    cols_ = 0;
    next_ = 0;
    have_prev_ = false;
    extrapolated_ = false;
  }

 private:
  Eigen::MatrixXd df_, dg_, gram_;
  VectorXd f_prev_, g_prev_, fallback_;
  Eigen::Index cols_ = 0, next_ = 0;
  bool have_prev_ = false;
  bool extrapolated_ = false;
  double fallback_norm_ = 0.0;
};

void check_weights(const MatrixXd& w, const char* what) { require_symmetric(w, what); }

class Trace {
 public:
  explicit Trace(const std::string& path) {
    if (path.empty()) return;
    out_.open(path);
    if (!out_) throw InputError("cannot open trace file " + path);
    out_ << "iter,objective,residual_primal,residual_dual\n";
    out_.precision(12);
  }
  void row(int iter, double objective, double r, double s) {
    if (out_.is_open()) out_ << iter << ',' << objective << ',' << r << ',' << s << '\n';
  }

 private:
  std::ofstream out_;
};

double box_violation(const MatrixXd& z, const MatrixXd* upper) {
  double v = std::max(0.0, -z.minCoeff());
  if (upper != nullptr) {
    v = std::max(v, (z - *upper).maxCoeff());
  } else {
    v = std::max(v, z.maxCoeff() - 1.0);
  }
  return std::max(0.0, v);
}

/// ADMM on Z in nuclear ball (carrying the linear objective) and Y in the box
/// [0, upper] (upper = J when null). The returned point is Y scaled into the ball.
SolveResult nuclear_admm(const MatrixXd& w, double t, const MatrixXd* upper, const SolveConfig& cfg) {
  cfg.validate();
  if (!(t >= 0.0)) throw InputError("nuclear radius must be nonnegative");
  const Eigen::Index n = w.rows();
  // Automatic penalty balances the objective against the radius of the ball.
  const double wn = w.norm();
  double rho = cfg.rho > 0.0 ? cfg.rho : (t > 0.0 && wn > 0.0 ? 4.0 * wn / t : 10.0);
  const double a = cfg.alpha;
  Trace trace(cfg.trace_path);
  EigenSolver es(n);

  auto clamp = [&](MatrixXd& m) {
    m = m.cwiseMax(0.0);
    if (upper != nullptr) {
      m = m.cwiseMin(*upper);
    } else {
      m = m.cwiseMin(1.0);
    }
  };

  const Eigen::Index nn = n * n;
  VectorXd state = VectorXd::Zero(2 * nn);  // (Y, U) stacked
  VectorXd next(2 * nn);
  MatrixXd z(n, n), y(n, n), y_prev(n, n), u(n, n);
  Anderson accel(2 * nn, std::max(cfg.anderson_memory, 1));

  SolveResult res;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    y_prev = Eigen::Map<const MatrixXd>(state.data(), n, n);
    u = Eigen::Map<const MatrixXd>(state.data() + nn, n, n);
    symmetrize(y_prev);
    symmetrize(u);
    z = nuclear_step(es, y_prev - u + w / rho, t);
    const MatrixXd relaxed = a * z + (1.0 - a) * y_prev;
    y = relaxed + u;
    clamp(y);
    u += relaxed - y;
    Eigen::Map<MatrixXd>(next.data(), n, n) = y;
    Eigen::Map<MatrixXd>(next.data() + nn, n, n) = u;

    const double r = (z - y).norm();
    const double s = rho * (y - y_prev).norm();
    res.iters = it;
    res.residual_primal = r;
    res.residual_dual = s;
    trace.row(it, inner(w, y), r, s);
    const double scale = 1.0 + y.norm();
    if (r <= cfg.tol_primal * scale && s <= cfg.tol_dual * scale) {
      res.converged = true;
      break;
    }
    if (cfg.adaptive_rho && it % 10 == 0 && (r > 10.0 * s || s > 10.0 * r)) {
      const double factor = r > s ? 2.0 : 0.5;
      rho *= factor;
      next.tail(nn) /= factor;
      accel.reset();
      state = next;
    } else {
      state = cfg.anderson_memory > 0 ? accel.step(state, next) : next;
    }
  }

  // Y is in the box; shrinking it toward 0 keeps it there and enters the ball.
  symmetrize(y);
  const double ny = n > 0 ? symmetric_eigenvalues(y).cwiseAbs().sum() : 0.0;
  if (ny > t) y *= (ny > 0.0 ? t / ny : 0.0);
  res.Z = std::move(y);
  res.objective = inner(w, res.Z);
  const double nz = n > 0 ? symmetric_eigenvalues(res.Z).cwiseAbs().sum() : 0.0;
  res.feasibility = {{"nuclear", std::max(0.0, nz - t)},
                     {"box", box_violation(res.Z, upper)},
                     {"symmetry", n > 0 ? (res.Z - res.Z.transpose()).cwiseAbs().maxCoeff() : 0.0}};
  return res;
}

/// Projection onto {Tr Z = k, sum Z = k^2}.
MatrixXd affine_step(const MatrixXd& s, double k) {
  const auto n = static_cast<double>(s.rows());
  const double dt = s.trace() - k;
  const double ds = s.sum() - k * k;
  if (s.rows() == 1) {
    MatrixXd out = s;
    out(0, 0) = k;
    return out;
  }
  // Gram system of (I, J): [[n, n], [n, n^2]]
  const double det = n * n * n - n * n;
  const double a = (n * n * dt - n * ds) / det;
  const double b = (n * ds - n * dt) / det;
  MatrixXd out = s.array() - b;
  out.diagonal().array() -= a;
  return out;
}

}  // namespace

VectorXd project_l1_ball(const VectorXd& v, double t) {
  if (!(t >= 0.0)) throw InputError("l1 ball radius must be nonnegative");
  if (v.cwiseAbs().sum() <= t) return v;
  if (t == 0.0) return VectorXd::Zero(v.size());
  std::vector<double> mags(v.data(), v.data() + v.size());
  for (double& m : mags) m = std::abs(m);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    cum += mags[i];
    const double cand = (cum - t) / static_cast<double>(i + 1);
    if (mags[i] - cand > 0.0) theta = cand;
  }
  VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::max(std::abs(v(i)) - theta, 0.0);
    out(i) = v(i) < 0.0 ? -m : m;
  }
  return out;
}

MatrixXd project_nuclear_ball(const MatrixXd& s, double t) {
  if (!(t >= 0.0)) throw InputError("project_nuclear_ball: radius must be nonnegative");
  require_symmetric(s, "project_nuclear_ball");
  if (s.size() == 0) return s;
  EigenSolver es(s.rows());
  return nuclear_step(es, s, t);
}

MatrixXd project_box(const MatrixXd& m) { return m.cwiseMax(0.0).cwiseMin(1.0); }

MatrixXd project_psd(const MatrixXd& s) {
  require_symmetric(s, "project_psd");
  if (s.size() == 0) return s;
  EigenSolver es(s.rows());
  return psd_step(es, s);
}

void SolveConfig::validate() const {
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw ConfigError("solver rho must be nonnegative (0 selects it automatically)");
  if (!(tol_primal > 0.0) || !(tol_dual > 0.0)) throw ConfigError("solver tolerances must be positive");
  if (max_iters < 1) throw ConfigError("solver max_iters must be at least 1");
  if (!(alpha >= 1.0 && alpha <= 1.8)) throw ConfigError("solver alpha must lie in [1, 1.8]");
  if (anderson_memory < 0 || anderson_memory > 50) throw ConfigError("solver anderson_memory must lie in [0, 50]");
}

void to_json(nlohmann::json& j, const SolveConfig& cfg) {
  j = {{"rho", cfg.rho}, {"tol_primal", cfg.tol_primal}, {"tol_dual", cfg.tol_dual}, {"max_iters", cfg.max_iters},
       {"alpha", cfg.alpha}, {"adaptive_rho", cfg.adaptive_rho}, {"anderson_memory", cfg.anderson_memory}};
  if (!cfg.trace_path.empty()) j["trace_path"] = cfg.trace_path;
}

void from_json(const nlohmann::json& j, SolveConfig& cfg) {
  if (!j.is_object()) throw ConfigError("solver config must be an object");
  static const std::vector<std::string> known{"rho", "tol_primal", "tol_dual", "max_iters", "alpha",
                                                "adaptive_rho", "anderson_memory", "trace_path"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown solver key \"" + key + "\"");
  }
  try {
    cfg = SolveConfig{};
    cfg.rho = j.value("rho", cfg.rho);
    cfg.tol_primal = j.value("tol_primal", cfg.tol_primal);
    cfg.tol_dual = j.value("tol_dual", cfg.tol_dual);
    cfg.max_iters = j.value("max_iters", cfg.max_iters);
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.adaptive_rho = j.value("adaptive_rho", cfg.adaptive_rho);
    cfg.anderson_memory = j.value("anderson_memory", cfg.anderson_memory);
    cfg.trace_path = j.value("trace_path", std::string{});
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("solver config: ") + e.what());
  }
  cfg.validate();
}

double SolveResult::max_violation() const {
  double v = 0.0;
  for (const auto& [_, x] : feasibility) v = std::max(v, x);
  return v;
}

void to_json(nlohmann::json& j, const SolveResult& r) {
  nlohmann::json feas = nlohmann::json::object();
  for (const auto& [name, x] : r.feasibility) feas[name] = x;
  j = {{"objective", r.objective}, {"residual_primal", r.residual_primal}, {"residual_dual", r.residual_dual},
       {"feasibility", feas}, {"iters", r.iters}, {"converged", r.converged}};
}

SolveResult solve_nuclear_program(const CenteredMatrix& w, double t, const SolveConfig& cfg) {
  check_weights(w.W, "solve_nuclear_program");
  return nuclear_admm(w.W, t, nullptr, cfg);
}

SolveResult solve_clique_sdp(const CenteredMatrix& w, int k, const SolveConfig& cfg) {
  check_weights(w.W, "solve_clique_sdp");
  cfg.validate();
  const Eigen::Index n = w.W.rows();
  if (k < 1 || k > n) throw InputError("solve_clique_sdp: need 1 <= k <= n");
  const double kk = k;
  const double rho = cfg.rho > 0.0 ? cfg.rho : 10.0;
  const double a = cfg.alpha;
  Trace trace(cfg.trace_path);
  EigenSolver es(n);

  // Consensus form: X1 PSD (with the objective), X2 >= 0, X3 on the affine set.
  // The iteration state is (Z, U1, U2, U3) stacked.
  const Eigen::Index nn = n * n;
  VectorXd state = VectorXd::Zero(4 * nn);
  state.head(nn).setConstant(kk * kk / static_cast<double>(nn));
  VectorXd next(4 * nn);
  MatrixXd z(n, n), z_prev(n, n), u1(n, n), u2(n, n), u3(n, n), x1(n, n), x2(n, n), x3(n, n);
  const MatrixXd w_scaled = w.W / rho;
  Anderson accel(4 * nn, std::max(cfg.anderson_memory, 1));
  auto block = [&](VectorXd& v, int i) { return Eigen::Map<MatrixXd>(v.data() + i * nn, n, n); };

  SolveResult res;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    z_prev = block(state, 0);
    u1 = block(state, 1);
    u2 = block(state, 2);
    u3 = block(state, 3);
    x1 = psd_step(es, z_prev - u1 + w_scaled);
    x2 = (z_prev - u2).cwiseMax(0.0);
    x3 = affine_step(z_prev - u3, kk);
    const MatrixXd h1 = a * x1 + (1.0 - a) * z_prev;
    const MatrixXd h2 = a * x2 + (1.0 - a) * z_prev;
    const MatrixXd h3 = a * x3 + (1.0 - a) * z_prev;
    z = (h1 + u1 + h2 + u2 + h3 + u3) / 3.0;
    symmetrize(z);
    block(next, 0) = z;
    block(next, 1) = u1 + h1 - z;
    block(next, 2) = u2 + h2 - z;
    block(next, 3) = u3 + h3 - z;

    const double r = std::sqrt((x1 - z).squaredNorm() + (x2 - z).squaredNorm() + (x3 - z).squaredNorm());
    const double s = rho * std::sqrt(3.0) * (z - z_prev).norm();
    res.iters = it;
    res.residual_primal = r;
    res.residual_dual = s;
    trace.row(it, inner(w.W, z), r, s);
    const double scale = 1.0 + z.norm();
    if (r <= cfg.tol_primal * scale && s <= cfg.tol_dual * scale) {
      res.converged = true;
      break;
    }
    state = cfg.anderson_memory > 0 ? accel.step(state, next) : next;
  }

  res.Z = std::move(z);
  res.objective = inner(w.W, res.Z);
  const double lam_min = symmetric_eigenvalues(res.Z).minCoeff();
  res.feasibility = {{"trace", std::abs(res.Z.trace() - kk)},
                     {"sum", std::abs(res.Z.sum() - kk * kk) / (kk * kk)},
                     {"psd", std::max(0.0, -lam_min)},
                     {"nonneg", std::max(0.0, -res.Z.minCoeff())}};
  return res;
}

SubgraphSelection solve_subgraph_selection(const Graph& gamma, const SolveConfig& cfg, double level) {
  if (gamma.size() == 0) throw InputError("solve_subgraph_selection: graph has no edges");
  if (!(level > 0.0 && level <= 1.0)) throw InputError("solve_subgraph_selection: level must lie in (0,1]");
  const MatrixXd a = gamma.adjacency();
  SubgraphSelection out;
  out.relax = nuclear_admm(a, 1.0, &a, cfg);
  out.threshold = level * out.relax.Z.maxCoeff();
  const MatrixXd& x = out.relax.Z;
  out.proposal = gamma.filter_edges([&](const Edge& e) { return out.threshold > 0.0 && x(e.u, e.v) >= out.threshold; });
  return out;
}

double subgraph_selection_bruteforce(const Graph& gamma) {
  const std::size_t m = gamma.size();
  if (m == 0) throw InputError("subgraph_selection_bruteforce: graph has no edges");
  if (m > 20) throw ResourceError("subgraph_selection_bruteforce: more than 20 edges");
  const auto& edges = gamma.edges();
  double best = 0.0;
  const int n = gamma.order();
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    MatrixXd sub = MatrixXd::Zero(n, n);
    int count = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if ((mask >> i) & 1u) {
        sub(edges[i].u, edges[i].v) = sub(edges[i].v, edges[i].u) = 1.0;
        ++count;
      }
    }
    best = std::max(best, 2.0 * count / nuclear_norm(sub));
  }
  return best;
}

}  // namespace plantlab
