#include "pwa/regression.hpp"

#include <Eigen/QR>

#include <cmath>
#include <stdexcept>

#include "pwa/linprog.hpp"

namespace pwa {

Scalar loss_value(Loss loss, Scalar e) {
  return loss == Loss::Squared ? e * e : std::abs(e);
}

namespace {

Matrix with_intercept(const Eigen::Ref<const Matrix>& X) {
  Matrix Xb(X.rows(), X.cols() + 1);
  Xb.leftCols(X.cols()) = X;
  Xb.col(X.cols()).setOnes();
  return Xb;
}

Vector l1_minimizer(const Matrix& Xb, const Eigen::Ref<const Vector>& y) {
  // min sum t  s.t.  t_i >= |y_i - v.xb_i|, with v split into p - q >= 0.
  const int m = static_cast<int>(Xb.rows());
  const int k = static_cast<int>(Xb.cols());
  Matrix A = Matrix::Zero(2 * m, 2 * k + m);
  A.topLeftCorner(m, k) = Xb;
  A.block(0, k, m, k) = -Xb;
  A.block(m, 0, m, k) = -Xb;
  A.block(m, k, m, k) = Xb;
  A.block(0, 2 * k, m, m).setIdentity();
  A.block(m, 2 * k, m, m).setIdentity();
  Vector b(2 * m);
  b.head(m) = y;
  b.tail(m) = -y;
  Vector c = Vector::Zero(2 * k + m);
  c.tail(m).setOnes();
  const LpResult lp = lp_min_geq(c, A, b);
  if (lp.status != LpStatus::Optimal)
    throw std::logic_error("fit_affine: L1 subproblem did not solve");
  return lp.x.head(k) - lp.x.segment(k, k);
}

}  // namespace

AffineFit fit_affine(const Eigen::Ref<const Matrix>& X,
                     const Eigen::Ref<const Vector>& y, Loss loss) {
  const Eigen::Index m = X.rows();
  const Eigen::Index d = X.cols();
  if (y.size() != m) throw std::invalid_argument("fit_affine: size mismatch");

  AffineFit out;
  out.w = Vector::Zero(d + 1);
  if (m == 0) {
    out.rank_deficient = true;
    return out;
  }

  const Matrix Xb = with_intercept(X);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(Xb);
  out.rank_deficient = cod.rank() < d + 1;
  if (loss == Loss::Squared) {
    out.w = cod.solve(y);
  } else {
    out.w = l1_minimizer(Xb, y);
  }
  const Vector resid = y - Xb * out.w;
  out.cost = 0;
  for (Eigen::Index i = 0; i < m; ++i) out.cost += loss_value(loss, resid(i));
  return out;
}

LabelingCost cost_of_labeling(const Dataset& data, const Labeling& q, int n,
                              Loss loss) {
  const Eigen::Index N = data.size();
  const Eigen::Index d = data.dim();
  if (q.size() != N) throw BadInput("cost_of_labeling: labeling size mismatch");
  if (n < 1) throw BadInput("cost_of_labeling: need n >= 1");
  for (Eigen::Index i = 0; i < N; ++i)
    if (q(i) < 1 || q(i) > n) throw BadInput("cost_of_labeling: label out of {1..n}");

  LabelingCost out;
  out.fits.reserve(n);
  out.empty_mode.resize(n, false);
  for (int j = 1; j <= n; ++j) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < N; ++i)
      if (q(i) == j) idx.push_back(i);
    Matrix Xj(idx.size(), d);
    Vector yj(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      Xj.row(r) = data.X.row(idx[r]);
      yj(r) = data.y(idx[r]);
    }
    AffineFit fit = fit_affine(Xj, yj, loss);
    out.total += fit.cost;
    out.empty_mode[j - 1] = idx.empty();
    if (fit.rank_deficient) ++out.rank_deficient_modes;
    out.fits.push_back(std::move(fit));
  }
  out.total /= static_cast<Scalar>(N);
  return out;
}

Prediction predict(const PWAModel& model, const Eigen::Ref<const Vector>& x) {
  Prediction p;
  if (std::holds_alternative<Hyperplane>(model.classifier)) {
    const auto& hp = std::get<Hyperplane>(model.classifier);
    p.mode = hp.value_at(x) >= 0 ? 1 : 2;
  } else {
    const auto& mc = std::get<MulticlassClassifier>(model.classifier);
    const Vector scores = mc.H * x + mc.b;
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < scores.size(); ++k)
      if (scores(k) > scores(best)) best = k;
    p.mode = static_cast<int>(best) + 1;
  }
  const Eigen::Index d = model.dim();
  p.yhat = model.submodels.row(p.mode - 1).head(d).dot(x) +
           model.submodels(p.mode - 1, d);
  return p;
}

std::pair<Labeling, Vector> predict_all(const PWAModel& model,
                                        const Eigen::Ref<const Matrix>& X) {
  Labeling labels(X.rows());
  Vector yhat(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const Prediction p = predict(model, X.row(i));
    labels(i) = p.mode;
    yhat(i) = p.yhat;
  }
  return {labels, yhat};
}

Scalar classifier_margin(const PWAModel& model,
                         const Eigen::Ref<const Vector>& x) {
  if (std::holds_alternative<Hyperplane>(model.classifier)) {
    return std::abs(std::get<Hyperplane>(model.classifier).value_at(x));
  }
  const auto& mc = std::get<MulticlassClassifier>(model.classifier);
  const Vector scores = mc.H * x + mc.b;
  Scalar top = -std::numeric_limits<Scalar>::infinity();
  Scalar second = top;
  for (Eigen::Index k = 0; k < scores.size(); ++k) {
    if (scores(k) > top) {
      second = top;
      top = scores(k);
    } else if (scores(k) > second) {
      second = scores(k);
    }
  }
  return top - second;
}

}  // namespace pwa
