#include "nordlid/train.h"

#include <cmath>
#include <sstream>

#include "nordlid/random.h"

namespace nordlid {

std::string_view SelectionMetricName(SelectionMetric metric) {
  switch (metric) {
    case SelectionMetric::kExactMatch:
      return "exact_match";
    case SelectionMetric::kLooseAccuracy:
      return "loose_accuracy";
  }
  return "exact_match";
}

SelectionMetric ParseSelectionMetric(std::string_view name) {
  if (name == "exact_match") return SelectionMetric::kExactMatch;
  if (name == "loose_accuracy") return SelectionMetric::kLooseAccuracy;
  throw std::invalid_argument("unknown selection metric '" +
                              std::string(name) + "'");
}

void TrainConfig::Validate() const {
  if (epochs < 1 || batch_size < 1 || eval_interval < 1 || patience < 1) {
    throw std::invalid_argument(
        "epochs, batch_size, eval_interval and patience must be positive");
  }
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning_rate must be finite and >= 0");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw std::invalid_argument("momentum must lie in [0, 1)");
  }
}

namespace {

struct Featurized {
  std::vector<SparseFeatures> features;
  std::vector<Targets> targets;
  std::vector<LabelSet> gold;
};

Featurized FeaturizeAll(const Dataset& dataset, const FeaturizerConfig& cfg) {
  Featurized out;
  out.features.reserve(dataset.size());
  out.targets.reserve(dataset.size());
  out.gold.reserve(dataset.size());
  for (const auto& item : dataset.items) {
    out.features.push_back(FeaturizeSparse(item.text, cfg));
    out.targets.push_back(TargetsFor(item.labels));
    out.gold.push_back(item.labels);
  }
  return out;
}

struct ValidScores {
  double loss = 0.0;
  double exact = 0.0;
  double loose = 0.0;
};

ValidScores Score(const FastModel& model, const Featurized& data) {
  ValidScores s;
  if (data.features.empty()) return s;
  Activations act;
  size_t exact = 0;
  size_t loose = 0;
  for (size_t i = 0; i < data.features.size(); ++i) {
    ForwardPass(model.params, data.features[i], act);
    s.loss += BceLoss(act.logits, data.targets[i]);
    if (Decide(act.probs, model.threshold) == data.gold[i]) ++exact;
    const LabelSet top = Top1(act.probs, model.threshold);
    if (data.gold[i].IsSupersetOf(top)) ++loose;
  }
  const double n = static_cast<double>(data.features.size());
  s.loss /= n;
  s.exact = exact / n;
  s.loose = loose / n;
  return s;
}

void StepDense(std::vector<float>& w, std::vector<double>& velocity,
               const std::vector<double>& g, double lr, double momentum) {
  for (size_t i = 0; i < w.size(); ++i) {
    velocity[i] = momentum * velocity[i] + g[i];
    w[i] = static_cast<float>(w[i] - lr * velocity[i]);
  }
}

}  // namespace

TrainResult Train(const Dataset& train_set, const Dataset& valid_set,
                  const FeaturizerConfig& featurizer, const TrainConfig& cfg,
                  const std::function<void(const EvalPoint&)>& on_eval) {
  cfg.Validate();
  return TrainFrom(FastModel::Initialize(featurizer, cfg.seed), train_set,
                   valid_set, cfg, on_eval);
}

TrainResult TrainFrom(FastModel model, const Dataset& train_set,
                      const Dataset& valid_set, const TrainConfig& cfg,
                      const std::function<void(const EvalPoint&)>& on_eval) {
  cfg.Validate();
  model.Validate();
  if (train_set.empty()) throw TrainingError("training set is empty");

  const Featurized train = FeaturizeAll(train_set, model.featurizer);
  const Featurized valid = FeaturizeAll(valid_set, model.featurizer);
  const bool has_valid = !valid.features.empty();
  const int dim = model.featurizer.embed_dim;
  auto& p = model.params;

  Gradients grads;
  grads.Reset(p.bucket_count, dim);
  std::vector<double> v_w1(p.w1.size(), 0.0), v_b1(p.b1.size(), 0.0),
      v_w2(p.w2.size(), 0.0), v_b2(p.b2.size(), 0.0);
  Activations act;

  TrainResult result;
  result.model = model;
  double best = -1.0;
  int evals_without_gain = 0;
  double loss_since_eval = 0.0;
  size_t steps_since_eval = 0;
  size_t step = 0;
  int epoch = 0;

  auto evaluate = [&] {
    EvalPoint point;
    point.step = step;
    point.epoch = epoch;
    point.train_loss =
        steps_since_eval ? loss_since_eval / steps_since_eval : 0.0;
    if (has_valid) {
      const ValidScores s = Score(model, valid);
      point.valid_loss = s.loss;
      point.valid_exact_match = s.exact;
      point.valid_loose = s.loose;
    }
    loss_since_eval = 0.0;
    steps_since_eval = 0;
    result.history.push_back(point);
    if (on_eval) on_eval(point);
    if (!has_valid) return false;
    const double metric = cfg.selection_metric == SelectionMetric::kExactMatch
                              ? point.valid_exact_match
                              : point.valid_loose;
    if (metric > best) {
      best = metric;
      result.model = model;
      result.best_step = step;
      result.best_metric = metric;
      evals_without_gain = 0;
    } else if (++evals_without_gain >= cfg.patience) {
      return true;
    }
    return false;
  };

  evaluate();
  std::vector<size_t> order(train.features.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng shuffle_rng(SplitMix64(cfg.seed ^ 0x5eedULL));
  const size_t batch = static_cast<size_t>(cfg.batch_size);
  bool stop = false;

  for (int e = 1; e <= cfg.epochs && !stop; ++e) {
    epoch = e;
    shuffle_rng.Shuffle(order);
    for (size_t begin = 0; begin < order.size() && !stop; begin += batch) {
      const size_t end = std::min(order.size(), begin + batch);
      const double scale = 1.0 / static_cast<double>(end - begin);
      grads.Clear();
      double batch_loss = 0.0;
      for (size_t b = begin; b < end; ++b) {
        const size_t i = order[b];
        batch_loss += scale * AccumulateGradients(p, train.features[i],
                                                  train.targets[i], scale, act,
                                                  grads);
      }
      if (!std::isfinite(batch_loss)) {
        std::ostringstream msg;
        msg << "non-finite loss " << batch_loss << " at epoch " << epoch
            << ", step " << step + 1 << " (batch of " << end - begin
            << " items starting with training item " << order[begin]
            << "); try a smaller learning rate";
        throw TrainingError(msg.str());
      }
      const double lr = cfg.learning_rate;
      StepDense(p.w1, v_w1, grads.w1, lr, cfg.momentum);
      StepDense(p.b1, v_b1, grads.b1, lr, cfg.momentum);
      StepDense(p.w2, v_w2, grads.w2, lr, cfg.momentum);
      StepDense(p.b2, v_b2, grads.b2, lr, cfg.momentum);
      for (uint32_t row : grads.embeddings.rows()) {
        const double* g = grads.embeddings.Find(row);
        float* w = &p.embeddings[static_cast<size_t>(row) * dim];
        for (int d = 0; d < dim; ++d) {
          w[d] = static_cast<float>(w[d] - lr * g[d]);
        }
      }
      ++step;
      ++steps_since_eval;
      loss_since_eval += batch_loss;
      if (step % static_cast<size_t>(cfg.eval_interval) == 0) {
        stop = evaluate();
        result.stopped_early = stop;
      }
    }
  }
  if (steps_since_eval > 0) evaluate();
  if (!has_valid) result.model = model;
  result.total_steps = step;
  return result;
}

double MeanLoss(const FastModel& model, const Dataset& dataset) {
  if (dataset.empty()) return 0.0;
  return Score(model, FeaturizeAll(dataset, model.featurizer)).loss;
}

Gradients BatchGradientSum(const NetworkParams<double>& net,
                           const std::vector<SparseFeatures>& batch,
                           const std::vector<Targets>& targets) {
  Gradients grads;
  grads.Reset(net.bucket_count, net.dim);
  Activations act;
  for (size_t i = 0; i < batch.size(); ++i) {
    AccumulateGradients(net, batch[i], targets[i], 1.0, act, grads);
  }
  return grads;
}

namespace {

double BatchLoss(const NetworkParams<double>& net,
                 const std::vector<SparseFeatures>& batch,
                 const std::vector<Targets>& targets,
                 std::vector<bool>* relu_mask) {
  Activations act;
  double loss = 0.0;
  if (relu_mask) relu_mask->clear();
  for (size_t i = 0; i < batch.size(); ++i) {
    ForwardPass(net, batch[i], act);
    loss += BceLoss(act.logits, targets[i]);
    if (relu_mask) {
      for (double a : act.pre_hidden) relu_mask->push_back(a > 0.0);
    }
  }
  return loss / static_cast<double>(batch.size());
}

}  // namespace

GradientCheckResult GradientCheck(const NetworkParams<double>& net,
                                  const std::vector<SparseFeatures>& batch,
                                  const std::vector<Targets>& targets,
                                  double step, double floor) {
  GradientCheckResult result;
  if (batch.empty()) return result;
  const Gradients sum = BatchGradientSum(net, batch, targets);
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  std::vector<bool> base_mask, mask_plus, mask_minus;
  BatchLoss(net, batch, targets, &base_mask);

  NetworkParams<double> probe = net;
  auto check = [&](std::vector<double>& values, size_t i, double analytic) {
    const double original = values[i];
    values[i] = original + step;
    const double plus = BatchLoss(probe, batch, targets, &mask_plus);
    values[i] = original - step;
    const double minus = BatchLoss(probe, batch, targets, &mask_minus);
    values[i] = original;
    if (mask_plus != base_mask || mask_minus != base_mask) {
      ++result.skipped_kinks;
      return;
    }
    const double numeric = (plus - minus) / (2.0 * step);
    const double diff = std::abs(analytic - numeric);
    double rel = 0.0;
    if (diff > 0.0) {
      rel = diff / std::max({std::abs(analytic), std::abs(numeric), floor});
    }
    result.max_relative_error = std::max(result.max_relative_error, rel);
    ++result.checked;
  };

  const int dim = net.dim;
  for (uint32_t row = 0; row < net.bucket_count; ++row) {
    const double* g = sum.embeddings.Find(row);
    for (int d = 0; d < dim; ++d) {
      const size_t i = static_cast<size_t>(row) * dim + d;
      check(probe.embeddings, i, g ? g[d] * inv_b : 0.0);
    }
  }
  for (size_t i = 0; i < probe.w1.size(); ++i) {
    check(probe.w1, i, sum.w1[i] * inv_b);
  }
  for (size_t i = 0; i < probe.b1.size(); ++i) {
    check(probe.b1, i, sum.b1[i] * inv_b);
  }
  for (size_t i = 0; i < probe.w2.size(); ++i) {
    check(probe.w2, i, sum.w2[i] * inv_b);
  }
  for (size_t i = 0; i < probe.b2.size(); ++i) {
    check(probe.b2, i, sum.b2[i] * inv_b);
  }
  return result;
}

GradientCheckResult GradientCheck(const FeaturizerConfig& featurizer,
                                  const Dataset& batch, uint64_t seed) {
  featurizer.Validate();
  std::vector<SparseFeatures> features;
  std::vector<Targets> targets;
  for (const auto& item : batch.items) {
    features.push_back(FeaturizeSparse(item.text, featurizer));
    targets.push_back(TargetsFor(item.labels));
  }
  return GradientCheck(
      RandomNetwork(featurizer.bucket_count, featurizer.embed_dim, seed),
      features, targets);
}

NetworkParams<double> RandomNetwork(uint32_t bucket_count, int dim,
                                    uint64_t seed, double scale) {
  NetworkParams<double> net;
  net.Resize(bucket_count, dim);
  Rng rng(seed);
  for (auto* v : {&net.embeddings, &net.w1, &net.b1, &net.w2, &net.b2}) {
    for (double& x : *v) x = rng.Uniform(-scale, scale);
  }
  return net;
}

}  // namespace nordlid
