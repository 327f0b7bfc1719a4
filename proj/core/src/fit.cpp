#include "tbell/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <vector>

namespace tbell {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void check_inputs(std::span<const double> x, std::span<const double> y,
                  std::span<const double> yerr, std::size_t min_points) {
  if (x.size() != y.size() || x.size() != yerr.size()) {
    throw std::invalid_argument("fit inputs must have equal lengths");
  }
  if (x.size() < min_points) throw std::invalid_argument("too few points to fit");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i]) || !std::isfinite(yerr[i]) || yerr[i] < 0) {
      throw std::invalid_argument("fit inputs must be finite with yerr >= 0");
    }
  }
}

VectorXd to_vector(std::span<const double> v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Unit-norm column scaling; the design columns differ by many decades.
VectorXd column_scales(const MatrixXd& J) {
  VectorXd d(J.cols());
  for (Eigen::Index j = 0; j < J.cols(); ++j) {
    const double n = J.col(j).norm();
    d(j) = n > 0 ? 1.0 / n : 1.0;
  }
  return d;
}

bool full_rank(const MatrixXd& J) {
  const Eigen::ColPivHouseholderQR<MatrixXd> qr(J * column_scales(J).asDiagonal());
  return qr.rank() == J.cols();
}

MatrixXd sandwich(const MatrixXd& J, const VectorXd& yerr) {
  const VectorXd d = column_scales(J);
  const MatrixXd Js = J * d.asDiagonal();
  const Eigen::FullPivLU<MatrixXd> lu(Js.transpose() * Js);
  if (!lu.isInvertible()) throw FitError("singular normal equations");
  const MatrixXd bread = lu.inverse();
  const MatrixXd meat = Js.transpose() * yerr.array().square().matrix().asDiagonal() * Js;
  return d.asDiagonal() * (bread * meat * bread) * d.asDiagonal();
}

// Solves the least-squares problem for design J; returns false when JᵀJ is
// numerically singular.
bool solve_ols(const MatrixXd& J, const VectorXd& y, VectorXd& beta) {
  if (!full_rank(J)) return false;
  beta = Eigen::ColPivHouseholderQR<MatrixXd>(J).solve(y);
  return true;
}

Covariance3 to_array(const MatrixXd& m) {
  Covariance3 out{};
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  }
  return out;
}

struct LinearPart {
  double pedestal = 0.0;
  double amplitude = 0.0;
  double rss = std::numeric_limits<double>::infinity();
};

LinearPart gaussian_linear_part(const VectorXd& x, const VectorXd& y, double width) {
  MatrixXd J(x.size(), 2);
  J.col(0).setOnes();
  J.col(1) = (-(x.array() / width).square()).exp().matrix();
  VectorXd beta;
  if (!solve_ols(J, y, beta)) return {};
  return {beta(0), beta(1), (J * beta - y).squaredNorm()};
}

}  // namespace

GaussianFit fit_gaussian_on_pedestal(std::span<const double> xs, std::span<const double> ys,
                                     std::span<const double> yerrs) {
  check_inputs(xs, ys, yerrs, 4);
  const VectorXd x = to_vector(xs);
  const VectorXd y = to_vector(ys);
  const VectorXd yerr = to_vector(yerrs);

  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  double min_spacing = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double d = sorted[i] - sorted[i - 1];
    if (d > 0) min_spacing = std::min(min_spacing, d);
  }
  const double span = sorted.back() - sorted.front();
  if (!(span > 0) || !std::isfinite(min_spacing)) throw FitError("abscissae are not distinct");

  // Variable projection: the pedestal and amplitude are linear given the
  // width, so only log(width) is searched. A coarse scan picks the basin,
  // Brent refines it.
  const double log_lo = std::log(0.25 * min_spacing);
  const double log_hi = std::log(2.0 * span);
  auto rss_of = [&](double log_w) { return gaussian_linear_part(x, y, std::exp(log_w)).rss; };
  constexpr int kCoarse = 240;
  const double step = (log_hi - log_lo) / kCoarse;
  int best = 0;
  double best_rss = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kCoarse; ++i) {
    const double r = rss_of(log_lo + step * i);
    if (r < best_rss) {
      best_rss = r;
      best = i;
    }
  }
  if (!std::isfinite(best_rss)) throw FitError("singular normal equations");
  const double a = log_lo + step * std::max(0, best - 1);
  const double b = log_lo + step * std::min(kCoarse, best + 1);
  const auto [log_w, rss] = boost::math::tools::brent_find_minima(rss_of, a, b, 52);
  (void)rss;

  GaussianFit fit;
  fit.width = std::exp(log_w);
  const LinearPart lin = gaussian_linear_part(x, y, fit.width);
  if (!std::isfinite(lin.rss)) throw FitError("singular normal equations");
  fit.pedestal = lin.pedestal;
  fit.amplitude = lin.amplitude;

  MatrixXd J(x.size(), 3);
  J.col(0).setOnes();
  const VectorXd m = (-(x.array() / fit.width).square()).exp().matrix();
  J.col(1) = m;
  J.col(2) = (fit.amplitude * 2.0 * x.array().square() / std::pow(fit.width, 3) * m.array())
                 .matrix();
  // A roundoff-level amplitude leaves the width column pure noise.
  const double y_scale = y.cwiseAbs().maxCoeff();
  fit.width_identified =
      std::abs(fit.amplitude) > 64.0 * std::numeric_limits<double>::epsilon() * y_scale &&
      full_rank(J);
  if (fit.width_identified) {
    fit.covariance = to_array(sandwich(J, yerr));
  } else {
    fit.covariance = to_array(sandwich(J.leftCols(2), yerr));
  }
  return fit;
}

SinusoidFit fit_sinusoid_on_pedestal(std::span<const double> xs, std::span<const double> ys,
                                     std::span<const double> yerrs) {
  check_inputs(xs, ys, yerrs, 3);
  const VectorXd x = to_vector(xs);
  const VectorXd y = to_vector(ys);
  MatrixXd J(x.size(), 3);
  J.col(0).setOnes();
  J.col(1) = (2.0 * x.array()).cos().matrix();
  J.col(2) = (2.0 * x.array()).sin().matrix();
  VectorXd beta;
  if (!solve_ols(J, y, beta)) throw FitError("singular normal equations");
  SinusoidFit fit;
  fit.mean = beta(0);
  fit.cos_coeff = beta(1);
  fit.sin_coeff = beta(2);
  fit.covariance = to_array(sandwich(J, to_vector(yerrs)));
  return fit;
}

}  // namespace tbell
