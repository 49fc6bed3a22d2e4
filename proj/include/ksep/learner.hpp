#pragma once

#include <cstdint>
#include <vector>

#include "ksep/profile.hpp"

namespace ksep {

struct TrainConfig {
  int restarts = 20;
  int max_iters = 0;         // per-restart epoch cap; 0 = 150 * dimension
  double learning_rate = 0.2;
  double tolerance = 1e-12;  // minimum loss improvement that counts as progress
  int stall_patience = 60;   // epochs without progress before a restart is abandoned
  int k_max = 0;             // 0 = dim+1 for 0/1 feature data, 8 otherwise
  // default seed chosen by sweeping parity(2..8): all reach k=n+1 within the
  // default restart budget
  std::uint64_t seed = 3;
  bool smooth = true;        // logistic gating in the three-interval loss
  double beta = 10.0;        // logistic slope
};

// Cluster centers on the projection line, one class label per center.
struct ClusterTargets {
  std::vector<double> centers;
  std::vector<int> labels;
};

// Deployable classifier: direction, k-1 sorted thresholds, k interval labels.
struct IntervalModel {
  std::vector<double> w;
  std::vector<double> thresholds;
  std::vector<int> labels;
  int k = 0;
  bool pure = false;  // reached 100% training purity
  double beta = 10.0;

  double project(const std::vector<double>& x) const;
  int predict(const std::vector<double>& x) const;
};

struct FitReport {
  int attempted_k = 0;  // k of the accepted attempt (fitted k may be smaller)
  int restart = -1;
  int epochs = 0;
  double final_loss = 0.0;
  double accuracy = 0.0;
  std::vector<double> loss_trace;  // per-epoch loss of the accepted restart
};

// Half the summed squared distance from each projection to its nearest
// same-class center; equidistant centers resolve to the lower index.
double loss_quadratic(const std::vector<double>& w, const ClusterTargets& t,
                      const std::vector<std::vector<double>>& points,
                      const std::vector<int>& labels);

struct QuadraticGrad {
  std::vector<double> dw;
  std::vector<double> dcenters;
};

// Gradient of loss_quadratic with the assignments frozen.
QuadraticGrad grad_quadratic(const std::vector<double>& w, const ClusterTargets& t,
                             const std::vector<std::vector<double>>& points,
                             const std::vector<int>& labels);

// Three-interval hinge loss: plus points pay for leaving [a,b], minus points
// pay for entering it, each on the half of the line (split at t=(a+b)/2)
// they fall in. With smooth=true the half-membership indicator becomes the
// logistic sigma(beta*(y-t)).
double loss_3sep(const std::vector<double>& w, const ThreeSepParams& p,
                 const std::vector<std::vector<double>>& points,
                 const std::vector<int>& labels, bool smooth = false,
                 double beta = 1.0);

// Alternating-descent fit: for k = 2..k_max, multi-restart gradient descent
// on the direction with LVQ-style center re-estimation, accepting the
// smallest k that reaches label-pure intervals on the training data. If no
// k succeeds, the best-accuracy model seen is returned flagged non-pure.
IntervalModel fit_interval_model(const std::vector<std::vector<double>>& points,
                                 const std::vector<int>& labels,
                                 const TrainConfig& cfg, FitReport* report = nullptr);

// sigma(beta*(Y-a)) - sigma(beta*(Y-b)): ~1 inside [a,b], ~0 far outside.
double soft_window(double Y, double a, double b, double beta);

// Differentiable interval scorer: l1 + sum (l_{i+1}-l_i) * sigma(beta*(y-theta_i)).
// Its sign reproduces IntervalModel::predict for beta large relative to the
// smallest threshold spacing.
double interval_network_forward(const IntervalModel& m, const std::vector<double>& x);

// Sign of cos(pi * sum x_i): +1 for an even number of set bits, -1 for odd.
int parity_cos(const std::vector<int>& x);

// Gaussian kernel density per class on the projection line, combined with
// empirical class priors into a posterior.
struct PosteriorEstimate {
  double bandwidth = 0.0;
  double prior_plus = 0.0;
  bool degenerate = false;  // single-class input
  std::vector<double> proj_plus, proj_minus;

  double density(int label, double y) const;
  double posterior(int label, double y) const;
};

PosteriorEstimate posterior_estimate(const std::vector<std::vector<double>>& points,
                                     const std::vector<int>& labels,
                                     const std::vector<double>& w, double bandwidth);

}  // namespace ksep
