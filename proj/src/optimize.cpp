#include "gibbsmps/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "gibbsmps/tensor.hpp"

namespace gibbsmps {

namespace {

// Powell's simplex-acceptability parameters.
constexpr double kAlpha = 0.25;  // minimum vertex-to-hyperplane distance, in units of rho
constexpr double kBeta = 2.1;    // maximum vertex distance from the best point, in units of rho

double checked_eval(const Objective& f, const std::vector<double>& x, std::size_t& evals) {
  const double v = f(x);
  ++evals;
  if (!std::isfinite(v))
    throw std::runtime_error("optimizer abort: objective returned a non-finite value");
  return v;
}

}  // namespace

OptimResult cobyla_minimize(const Objective& f, const std::vector<double>& x0,
                            std::size_t max_iter, double rho_begin, double rho_end) {
  const std::size_t n = x0.size();
  require(n >= 1, "cobyla_minimize: empty parameter vector");
  require(max_iter >= n + 2, "cobyla_minimize: max_iter must be at least dimension + 2");
  require(rho_begin > rho_end && rho_end > 0.0,
          "cobyla_minimize: need rho_begin > rho_end > 0");

  using Vec = Eigen::VectorXd;
  using Mat = Eigen::MatrixXd;

  std::size_t evals = 0;
  double rho = rho_begin;

  // vertex 0 is kept as the current best
  std::vector<Vec> xs(n + 1);
  std::vector<double> fs(n + 1);
  xs[0] = Eigen::Map<const Vec>(x0.data(), n);
  fs[0] = checked_eval(f, x0, evals);
  for (std::size_t j = 1; j <= n; ++j) {
    xs[j] = xs[0];
    xs[j][j - 1] += rho;
    std::vector<double> xv(xs[j].data(), xs[j].data() + n);
    fs[j] = checked_eval(f, xv, evals);
  }

  Vec best_x = xs[0];
  double best_f = fs[0];
  bool converged = false;
  bool prev_step_failed = false;  // rho drops only after two strikes at one scale

  auto promote_best = [&] {
    std::size_t jb = 0;
    for (std::size_t j = 1; j <= n; ++j)
      if (fs[j] < fs[jb]) jb = j;
    if (jb != 0) {
      std::swap(xs[0], xs[jb]);
      std::swap(fs[0], fs[jb]);
    }
    if (fs[0] < best_f) {
      best_f = fs[0];
      best_x = xs[0];
    }
  };

  auto rebuild_simplex = [&] {
    for (std::size_t j = 1; j <= n && evals < max_iter; ++j) {
      xs[j] = xs[0];
      xs[j][j - 1] += rho;
      std::vector<double> xv(xs[j].data(), xs[j].data() + n);
      fs[j] = checked_eval(f, xv, evals);
    }
  };

  while (evals < max_iter) {
    promote_best();

    // edges and dual rows of the simplex around the best vertex
    Mat edges(n, n);
    Vec df(n);
    for (std::size_t j = 1; j <= n; ++j) {
      edges.col(j - 1) = xs[j] - xs[0];
      df[j - 1] = fs[j] - fs[0];
    }
    Eigen::FullPivLU<Mat> lu(edges);
    if (!lu.isInvertible()) {
      rebuild_simplex();
      continue;
    }
    const Mat inv = lu.inverse();  // row j-1 is dual to edge j-1
    const Vec grad = inv.transpose() * df;

    // acceptability: every vertex close enough and the simplex well poised
    std::size_t worst = 0;
    double worst_score = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double eta = edges.col(j - 1).norm();
      const double sigma = 1.0 / inv.row(j - 1).norm();
      double score = 0.0;
      if (eta > kBeta * rho) score = eta / rho;
      if (sigma < kAlpha * rho) score = std::max(score, kAlpha * rho / std::max(sigma, 1e-300));
      if (score > worst_score) {
        worst_score = score;
        worst = j;
      }
    }

    if (worst != 0) {
      // geometry step: move the offending vertex to +-(rho/2) along the
      // direction normal to the opposite face, picking the model-decreasing sign
      Vec v = inv.row(worst - 1).transpose();
      v.normalize();
      if (grad.dot(v) > 0.0) v = -v;
      Vec xnew = xs[0] + 0.5 * rho * v;
      std::vector<double> xv(xnew.data(), xnew.data() + n);
      const double fnew = checked_eval(f, xv, evals);
      xs[worst] = std::move(xnew);
      fs[worst] = fnew;
      continue;
    }

    const double gnorm = grad.norm();
    bool step_improved = false;
    if (gnorm > 0.0) {
      const Vec d = -(rho / gnorm) * grad;
      Vec xnew = xs[0] + d;
      std::vector<double> xv(xnew.data(), xnew.data() + n);
      const double fnew = checked_eval(f, xv, evals);
      const double predicted = rho * gnorm;
      const double actual = fs[0] - fnew;
      step_improved = actual > 0.1 * predicted;

      // replace the vertex with the largest dual component along the step
      std::size_t jrep = 1;
      double best_comp = -1.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double comp = std::abs(inv.row(j - 1).dot(d));
        if (comp > best_comp) {
          best_comp = comp;
          jrep = j;
        }
      }
      xs[jrep] = std::move(xnew);
      fs[jrep] = fnew;
      if (fnew < best_f) {
        best_f = fnew;
        best_x = xs[jrep];
      }
    }

    if (step_improved) {
      prev_step_failed = false;
    } else if (!prev_step_failed) {
      // the failed evaluation entered the simplex, so the next model differs;
      // give the current scale one more chance before shrinking
      prev_step_failed = true;
    } else {
      if (rho <= rho_end * (1.0 + 1e-12)) {
        converged = true;
        break;
      }
      rho *= 0.5;
      if (rho <= 1.5 * rho_end) rho = rho_end;
      prev_step_failed = false;
    }
  }

  promote_best();
  OptimResult out;
  out.x.assign(best_x.data(), best_x.data() + n);
  out.f = best_f;
  out.evaluations = evals;
  out.converged = converged;
  return out;
}

OptimResult nelder_mead_minimize(const Objective& f, const std::vector<double>& x0,
                                 std::size_t max_iter, double rho_begin, double rho_end) {
  const std::size_t n = x0.size();
  require(n >= 1, "nelder_mead_minimize: empty parameter vector");
  require(max_iter >= n + 2, "nelder_mead_minimize: max_iter must be at least dimension + 2");
  require(rho_begin > rho_end && rho_end > 0.0,
          "nelder_mead_minimize: need rho_begin > rho_end > 0");

  using Vec = Eigen::VectorXd;
  std::size_t evals = 0;

  std::vector<Vec> xs(n + 1);
  std::vector<double> fs(n + 1);
  xs[0] = Eigen::Map<const Vec>(x0.data(), n);
  fs[0] = checked_eval(f, x0, evals);
  for (std::size_t j = 1; j <= n; ++j) {
    xs[j] = xs[0];
    xs[j][j - 1] += rho_begin;
    std::vector<double> xv(xs[j].data(), xs[j].data() + n);
    fs[j] = checked_eval(f, xv, evals);
  }

  auto order = [&] {
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    std::vector<Vec> nx(n + 1);
    std::vector<double> nf(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      nx[i] = xs[idx[i]];
      nf[i] = fs[idx[i]];
    }
    xs = std::move(nx);
    fs = std::move(nf);
  };

  auto eval_at = [&](const Vec& x) {
    std::vector<double> xv(x.data(), x.data() + n);
    return checked_eval(f, xv, evals);
  };

  bool converged = false;
  while (evals < max_iter) {
    order();
    double spread = 0.0;
    for (std::size_t j = 1; j <= n; ++j) spread = std::max(spread, (xs[j] - xs[0]).norm());
    if (spread <= rho_end) {
      converged = true;
      break;
    }

    Vec centroid = Vec::Zero(n);
    for (std::size_t j = 0; j < n; ++j) centroid += xs[j];
    centroid /= static_cast<double>(n);

    const Vec xr = centroid + (centroid - xs[n]);
    const double fr = eval_at(xr);
    if (fr < fs[0]) {
      const Vec xe = centroid + 2.0 * (centroid - xs[n]);
      const double fe = eval_at(xe);
      if (fe < fr) {
        xs[n] = xe; fs[n] = fe;
      } else {
        xs[n] = xr; fs[n] = fr;
      }
    } else if (fr < fs[n - 1]) {
      xs[n] = xr; fs[n] = fr;
    } else {
      const Vec xc = centroid + 0.5 * ((fr < fs[n] ? xr : xs[n]) - centroid);
      const double fc = eval_at(xc);
      if (fc < std::min(fr, fs[n])) {
        xs[n] = xc; fs[n] = fc;
      } else {
        for (std::size_t j = 1; j <= n && evals < max_iter; ++j) {
          xs[j] = xs[0] + 0.5 * (xs[j] - xs[0]);
          fs[j] = eval_at(xs[j]);
        }
      }
    }
  }

  order();
  OptimResult out;
  out.x.assign(xs[0].data(), xs[0].data() + n);
  out.f = fs[0];
  out.evaluations = evals;
  out.converged = converged;
  return out;
}

}  // namespace gibbsmps
