#include "corrgt/state.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "corrgt/errors.hpp"

namespace corrgt {

StateVector::StateVector(std::vector<std::uint8_t> defective, double p, Seed seed, std::size_t component_count)
    : defective_(std::move(defective)), p_(p), seed_(seed), component_count_(component_count) {}

std::size_t StateVector::defective_count() const noexcept {
  return static_cast<std::size_t>(std::count(defective_.begin(), defective_.end(), std::uint8_t{1}));
}

StateVector assign_states(const ComponentLabeling& labeling, double p, Seed seed) {
  require_probability(p, "p");
  auto rng = make_rng(seed);
  std::vector<std::uint8_t> component_state(labeling.component_count);
  for (auto& s : component_state) s = bernoulli(rng, p) ? 1 : 0;
  std::vector<std::uint8_t> defective(labeling.label.size());
  for (std::size_t v = 0; v < defective.size(); ++v) defective[v] = component_state[labeling.label[v]];
  return StateVector(std::move(defective), p, seed, labeling.component_count);
}

void TestLedger::record(std::span<const NodeId> pool, bool result) {
  ++tests_;
  if (keep_transcript_) transcript_.push_back({std::vector<NodeId>(pool.begin(), pool.end()), result});
}

bool pool_test(const StateVector& states, std::span<const NodeId> pool, TestLedger& ledger) {
  require(!pool.empty(), "pool must be nonempty");
  bool positive = false;
  for (const auto v : pool) {
    require(v < states.size(), "pool node id out of range");
    positive = positive || states[v];
  }
  ledger.record(pool, positive);
  return positive;
}

std::size_t error_count(const StateVector& truth, std::span<const std::uint8_t> predicted) {
  require(predicted.size() == truth.size(), "prediction length must equal the node count");
  const auto t = truth.defective();
  std::size_t err = 0;
  for (std::size_t i = 0; i < t.size(); ++i) err += ((t[i] != 0) != (predicted[i] != 0)) ? 1 : 0;
  return err;
}

namespace {

TrialRecord run_trial(const Graph& graph, const MonteCarloParams& params, const Strategy& strategy, std::size_t t,
                      Seed seed) {
  const auto realized = realize_edges(graph, params.r, derive_seed(seed, 1));
  const auto labeling = components(realized);
  const auto states = assign_states(labeling, params.p, derive_seed(seed, 2));
  TestLedger ledger(false);
  PoolOracle oracle(states, ledger);
  const TrialContext ctx{graph, params.r, params.p, derive_seed(seed, 3), t};
  const auto prediction = strategy(ctx, oracle);

  TrialRecord rec;
  rec.trial = t;
  rec.seed = seed;
  rec.components = labeling.component_count;
  rec.tests = ledger.tests_performed();
  rec.err = error_count(states, prediction.states);
  rec.err_le_eps = static_cast<double>(rec.err) <= params.eps * static_cast<double>(graph.node_count());
  rec.fallback = prediction.fallback;
  return rec;
}

template <typename TrialFn>
ErrorReport run_trials(const MonteCarloParams& params, std::size_t node_count, TrialFn&& trial_fn) {
  require(params.trials >= 1, "trials must be >= 1");
  require_probability(params.r, "r");
  require_probability(params.p, "p");
  require(params.eps >= 0.0, "eps must be >= 0");

  std::vector<TrialRecord> records(params.trials);
  std::vector<std::exception_ptr> failures(params.trials);
  unsigned workers = params.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : params.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, params.trials));

  auto work = [&](unsigned w) {
    for (std::size_t t = w; t < params.trials; t += workers) {
      try {
        records[t] = trial_fn(t, trial_seed(params.seed, t));
      } catch (const std::exception& e) {
        failures[t] = std::make_exception_ptr(TrialError(t, e.what()));
      }
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  ErrorReport report;
  report.node_count = node_count;
  report.trials = params.trials;
  report.eps = params.eps;
  report.high_prevalence = params.p > 0.5;
  double sum_err = 0, sum_err2 = 0, sum_tests = 0, sum_tests2 = 0, sum_comp = 0;
  std::size_t exceed = 0;
  for (const auto& rec : records) {
    const auto e = static_cast<double>(rec.err);
    const auto k = static_cast<double>(rec.tests);
    sum_err += e;
    sum_err2 += e * e;
    sum_tests += k;
    sum_tests2 += k * k;
    sum_comp += static_cast<double>(rec.components);
    exceed += rec.err_le_eps ? 0 : 1;
    report.fallbacks += rec.fallback ? 1 : 0;
  }
  const auto n = static_cast<double>(params.trials);
  report.mean_error = sum_err / n;
  report.mean_tests = sum_tests / n;
  report.mean_components = sum_comp / n;
  report.tail_prob = static_cast<double>(exceed) / n;
  if (params.trials > 1) {
    report.sd_error = std::sqrt(std::max(0.0, (sum_err2 - n * report.mean_error * report.mean_error) / (n - 1)));
    report.sd_tests = std::sqrt(std::max(0.0, (sum_tests2 - n * report.mean_tests * report.mean_tests) / (n - 1)));
  }
  report.records = std::move(records);
  return report;
}

}  // namespace

ErrorReport monte_carlo_error(const Graph& graph, const MonteCarloParams& params, const Strategy& strategy) {
  return run_trials(params, graph.node_count(), [&](std::size_t t, Seed seed) {
    return run_trial(graph, params, strategy, t, seed);
  });
}

ErrorReport monte_carlo_error(const GraphFactory& factory, const MonteCarloParams& params,
                              const Strategy& strategy) {
  const auto probe = factory(derive_seed(trial_seed(params.seed, 0), 0));
  return run_trials(params, probe.node_count(), [&](std::size_t t, Seed seed) {
    const auto graph = factory(derive_seed(seed, 0));
    return run_trial(graph, params, strategy, t, seed);
  });
}

nlohmann::json to_json(const ErrorReport& report, bool include_records) {
  const double n = static_cast<double>(report.trials);
  const double half_err = report.trials > 1 ? 1.96 * report.sd_error / std::sqrt(n) : 0.0;
  const double half_tests = report.trials > 1 ? 1.96 * report.sd_tests / std::sqrt(n) : 0.0;
  nlohmann::json j = {
      {"node_count", report.node_count},
      {"trials", report.trials},
      {"eps", report.eps},
      {"mean_error", report.mean_error},
      {"mean_error_ci95", {report.mean_error - half_err, report.mean_error + half_err}},
      {"tail_prob", report.tail_prob},
      {"mean_tests", report.mean_tests},
      {"mean_tests_ci95", {report.mean_tests - half_tests, report.mean_tests + half_tests}},
      {"mean_components", report.mean_components},
      {"fallbacks", report.fallbacks},
      {"high_prevalence", report.high_prevalence},
  };
  if (include_records) {
    auto rows = nlohmann::json::array();
    for (const auto& r : report.records)
      rows.push_back({{"trial", r.trial},
                      {"seed", r.seed},
                      {"components", r.components},
                      {"tests", r.tests},
                      {"err", r.err},
                      {"err_le_eps", r.err_le_eps}});
    j["records"] = std::move(rows);
  }
  return j;
}

void write_trial_csv(std::ostream& out, const ErrorReport& report) {
  out << "# schema: " << kTrialCsvSchema << '\n';
  out << "trial,seed,components,tests,err,err_le_eps\n";
  for (const auto& r : report.records)
    out << r.trial << ',' << r.seed << ',' << r.components << ',' << r.tests << ',' << r.err << ','
        << (r.err_le_eps ? 1 : 0) << '\n';
}

}  // namespace corrgt
