#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

#include "corrgt/graph.hpp"
#include "corrgt/random.hpp"

namespace corrgt {

/// Ground-truth defective flags, constant on every component of the labeling
/// that generated them.
class StateVector {
 public:
  StateVector(std::vector<std::uint8_t> defective, double p, Seed seed, std::size_t component_count);

  std::span<const std::uint8_t> defective() const noexcept { return defective_; }
  bool operator[](NodeId v) const { return defective_[v] != 0; }
  std::size_t size() const noexcept { return defective_.size(); }
  std::size_t defective_count() const noexcept;
  double p() const noexcept { return p_; }
  Seed seed() const noexcept { return seed_; }
  std::size_t component_count() const noexcept { return component_count_; }

 private:
  std::vector<std::uint8_t> defective_;
  double p_;
  Seed seed_;
  std::size_t component_count_;
};

/// One Bernoulli(p) draw per component, in label order.
StateVector assign_states(const ComponentLabeling& labeling, double p, Seed seed);

struct TestRecord {
  std::vector<NodeId> pool;
  bool result = false;
};

/// Counts pool tests; optionally keeps the full transcript.
class TestLedger {
 public:
  explicit TestLedger(bool keep_transcript = true) : keep_transcript_(keep_transcript) {}

  void record(std::span<const NodeId> pool, bool result);
  std::size_t tests_performed() const noexcept { return tests_; }
  std::span<const TestRecord> transcript() const noexcept { return transcript_; }
  bool keeps_transcript() const noexcept { return keep_transcript_; }

 private:
  bool keep_transcript_;
  std::size_t tests_ = 0;
  std::vector<TestRecord> transcript_;
};

/// OR of the defective flags over `pool`, recorded in `ledger`.
/// Throws ValidationError for an empty pool or out-of-range node.
bool pool_test(const StateVector& states, std::span<const NodeId> pool, TestLedger& ledger);

/// Hamming distance between truth and prediction (#ERR).
std::size_t error_count(const StateVector& truth, std::span<const std::uint8_t> predicted);

/// The only view of the ground truth a strategy gets: pool tests.
class PoolOracle {
 public:
  PoolOracle(const StateVector& states, TestLedger& ledger) : states_(&states), ledger_(&ledger) {}

  bool test(std::span<const NodeId> pool) { return pool_test(*states_, pool, *ledger_); }
  std::size_t tests() const noexcept { return ledger_->tests_performed(); }
  std::size_t node_count() const noexcept { return states_->size(); }

 private:
  const StateVector* states_;
  TestLedger* ledger_;
};

struct TrialContext {
  const Graph& graph;
  double r;
  double p;
  Seed seed;  // strategy randomness for this trial
  std::size_t trial;
};

struct Prediction {
  std::vector<std::uint8_t> states;
  bool fallback = false;  // the strategy had to leave its primary plan
};

using Strategy = std::function<Prediction(const TrialContext&, PoolOracle&)>;
using GraphFactory = std::function<Graph(Seed)>;

struct TrialRecord {
  std::size_t trial = 0;
  Seed seed = 0;
  std::size_t components = 0;
  std::size_t tests = 0;
  std::size_t err = 0;
  bool err_le_eps = true;
  bool fallback = false;
};

struct ErrorReport {
  std::size_t node_count = 0;
  std::size_t trials = 0;
  double eps = 0.0;
  double mean_error = 0.0;
  double sd_error = 0.0;
  double tail_prob = 0.0;  // fraction of trials with #ERR > eps * n
  double mean_tests = 0.0;
  double sd_tests = 0.0;
  double mean_components = 0.0;
  std::size_t fallbacks = 0;
  bool high_prevalence = false;  // p > 0.5, outside the regime group testing targets
  std::vector<TrialRecord> records;
};

struct MonteCarloParams {
  double r = 0.0;
  double p = 0.0;
  std::size_t trials = 1;
  double eps = 0.0;
  Seed seed = 0;
  unsigned threads = 1;  // 0 = hardware concurrency; results never depend on it
};

/// Per trial t (seed s = seed ^ t): realize G_r, label components, assign
/// states, run the strategy, count tests and #ERR.
ErrorReport monte_carlo_error(const Graph& graph, const MonteCarloParams& params, const Strategy& strategy);

/// Same, with a fresh base graph drawn per trial from `factory`.
ErrorReport monte_carlo_error(const GraphFactory& factory, const MonteCarloParams& params, const Strategy& strategy);

inline constexpr const char* kTrialCsvSchema = "corrgt.trials/1";

nlohmann::json to_json(const ErrorReport& report, bool include_records = false);
/// Columns: trial,seed,components,tests,err,err_le_eps (preceded by a schema comment).
void write_trial_csv(std::ostream& out, const ErrorReport& report);

}  // namespace corrgt
