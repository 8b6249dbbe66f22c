// Minibatch gradient descent on mean binary cross-entropy, checkpoint
// selection on a validation set, and a finite-difference gradient check.

#ifndef NORDLID_TRAIN_H_
#define NORDLID_TRAIN_H_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nordlid/core.h"
#include "nordlid/model.h"

namespace nordlid {

enum class SelectionMetric : uint8_t { kExactMatch, kLooseAccuracy };

std::string_view SelectionMetricName(SelectionMetric metric);
SelectionMetric ParseSelectionMetric(std::string_view name);

struct TrainConfig {
  int epochs = 10;
  int batch_size = 32;
  double learning_rate = 1.0;
  // Heavy-ball momentum on the dense layers. Embedding rows are updated
  // sparsely with plain SGD.
  double momentum = 0.9;
  uint64_t seed = 1;
  int eval_interval = 200;  // steps
  int patience = 10;        // evaluations without improvement
  SelectionMetric selection_metric = SelectionMetric::kExactMatch;

  void Validate() const;
  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

class TrainingError : public std::runtime_error {
 public:
  explicit TrainingError(const std::string& what) : std::runtime_error(what) {}
};

struct EvalPoint {
  size_t step = 0;
  int epoch = 0;
  double train_loss = 0.0;  // mean over the steps since the previous point
  double valid_loss = 0.0;
  double valid_exact_match = 0.0;
  double valid_loose = 0.0;
};

struct TrainResult {
  FastModel model;  // best checkpoint
  std::vector<EvalPoint> history;
  size_t best_step = 0;
  double best_metric = 0.0;
  size_t total_steps = 0;
  bool stopped_early = false;
};

// Datasets are featurized as given; apply preprocessing beforehand. With an
// empty validation set the final weights are returned.
TrainResult Train(const Dataset& train_set, const Dataset& valid_set,
                  const FeaturizerConfig& featurizer, const TrainConfig& cfg,
                  const std::function<void(const EvalPoint&)>& on_eval = {});

// Continues from `initial` instead of a fresh initialization.
TrainResult TrainFrom(FastModel initial, const Dataset& train_set,
                      const Dataset& valid_set, const TrainConfig& cfg,
                      const std::function<void(const EvalPoint&)>& on_eval = {});

// Mean per-sample loss of `model` over `dataset`.
double MeanLoss(const FastModel& model, const Dataset& dataset);

// Sum over the batch of per-sample gradients (no 1/B scaling), evaluated in
// double precision.
Gradients BatchGradientSum(const NetworkParams<double>& net,
                           const std::vector<SparseFeatures>& batch,
                           const std::vector<Targets>& targets);

struct GradientCheckResult {
  double max_relative_error = 0.0;
  size_t checked = 0;
  // Coordinates whose +-step perturbation flips a ReLU unit; finite
  // differences are meaningless there.
  size_t skipped_kinks = 0;
};

// Compares analytic gradients of the mean batch loss against central finite
// differences for every parameter, including all embedding rows. Relative
// error is |a - n| / max(|a|, |n|, floor), 0 when both vanish.
GradientCheckResult GradientCheck(const NetworkParams<double>& net,
                                  const std::vector<SparseFeatures>& batch,
                                  const std::vector<Targets>& targets,
                                  double step = 1e-4, double floor = 1e-6);

// Featurizes `batch` with `featurizer` and checks a RandomNetwork(seed).
GradientCheckResult GradientCheck(const FeaturizerConfig& featurizer,
                                  const Dataset& batch, uint64_t seed);

// Small model with all parameters (biases included) uniform in +-scale.
NetworkParams<double> RandomNetwork(uint32_t bucket_count, int dim,
                                    uint64_t seed, double scale = 0.5);

}  // namespace nordlid

#endif  // NORDLID_TRAIN_H_
