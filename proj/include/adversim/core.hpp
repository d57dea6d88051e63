#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "adversim/point.hpp"
#include "adversim/rng.hpp"

namespace adversim {

// Hypothesis handle: row/threshold index for finite classes, weight or
// coefficient vector for ball and simplex classes.
using Hypothesis = std::variant<int, std::vector<double>>;

inline int hyp_index(const Hypothesis& h) {
  if (auto* v = std::get_if<int>(&h)) return *v;
  throw DomainMismatchError("expected an index hypothesis");
}
inline const std::vector<double>& hyp_vector(const Hypothesis& h) {
  if (auto* v = std::get_if<std::vector<double>>(&h)) return *v;
  throw DomainMismatchError("expected a vector hypothesis");
}

class FunctionClass {
 public:
  struct FiniteTable {
    // values[f][x] for abstract domain points 0..num_points-1
    std::vector<std::vector<double>> values;
    int num_points = 0;
  };
  enum class BallNorm { Euclidean, SupDual };  // hypothesis ball in l2 or l1
  struct LinearBall {
    int dim = 0;
    double radius = 0;
    BallNorm norm = BallNorm::Euclidean;
  };
  struct Simplex {
    int dim = 0;
  };
  struct ThresholdGrid {
    std::vector<double> thetas;  // increasing
    double margin = 0;
  };

  // checked constructors
  static FunctionClass finite_table(std::vector<std::vector<double>> values, int num_points);
  // bypasses the [-1,1] range check; for derived classes (scaled/translated)
  static FunctionClass finite_table_unchecked(std::vector<std::vector<double>> values,
                                              int num_points);
  static FunctionClass linear_ball(int dim, double radius, BallNorm norm);
  static FunctionClass simplex(int dim);
  // thetas equally spaced in [margin, 1-margin]: theta_i = m + i*(1-2m)/(N+1)
  static FunctionClass threshold_grid(int resolution, double margin = 0.0);
  static FunctionClass threshold_grid_explicit(std::vector<double> thetas);

  const FiniteTable* finite() const { return std::get_if<FiniteTable>(&v_); }
  const LinearBall* ball() const { return std::get_if<LinearBall>(&v_); }
  const Simplex* simplex_p() const { return std::get_if<Simplex>(&v_); }
  const ThresholdGrid* grid() const { return std::get_if<ThresholdGrid>(&v_); }

  const char* variant_name() const;

  // Number of hypotheses for finite variants, nullopt otherwise.
  std::optional<int> finite_size() const;

  // f(x). ThresholdGrid on a labeled point gives |y - 1{z < theta}|; on a
  // scalar point the base indicator 1{z < theta}.
  double evaluate(const Hypothesis& h, const Point& x) const;

  // A random member of the class, for property tests.
  Hypothesis sample_hypothesis(Rng& rng) const;

  // sup_{f in F} sum_t eps[t] * f(x[t]); closed form for LinearBall/Simplex,
  // enumeration for finite variants.
  double sup_signed_sum(std::span<const double> eps, std::span<const Point> xs) const;

  struct Comparator {
    Hypothesis hypothesis;
    double loss = 0;
  };
  // Minimizer of cumulative loss over the class; ties broken by lowest
  // index / smallest theta. LinearBall: -R s/||s||; Simplex: best vertex.
  Comparator best_fixed_comparator(std::span<const Point> sequence) const;

 private:
  std::variant<FiniteTable, LinearBall, Simplex, ThresholdGrid> v_;
};

// Result of a comparator search: total loss plus the comparator's own
// per-round losses on the sequence (needed for prefix regret traces).
struct ComparatorEval {
  double total = 0;
  std::vector<double> round_losses;
};

// Pluggable comparator so games over huge implicit threshold grids (never
// materialized) and over the threshold continuum share the engine path.
using ComparatorFn = std::function<ComparatorEval(std::span<const Point>)>;

ComparatorFn class_comparator(const FunctionClass& cls);
// Best threshold over the full continuum theta in [0,1]: exact sorted scan
// over the T+1 cut positions. Used for halving games, where a consistent
// threshold always exists in the continuum but on no finite grid.
ComparatorFn continuum_threshold_comparator();
// Same scan restricted to a uniform grid of n_thetas thresholds in
// [margin, 1-margin]; exact for grids far too large to enumerate.
ComparatorFn uniform_grid_threshold_comparator(long long n_thetas, double margin);

enum class LossKind { Linear, Absolute };
enum class Protocol { Plain, Supervised, Smoothed };

struct GameSpec {
  int horizon = 1;
  FunctionClass cls;
  LossKind loss = LossKind::Linear;
  Protocol protocol = Protocol::Plain;

  void validate() const;
};

enum class ComparatorMode { FullHorizon, Prefix };

struct RegretRecord {
  std::vector<double> per_round_loss;
  double comparator_loss = 0;
  std::vector<double> cumulative_regret;
  uint64_t seed = 0;
};

// Builds the record from realized losses and the comparator evaluated on the
// realized sequence. FullHorizon mode charges every prefix against the
// full-horizon comparator; Prefix mode recomputes the comparator per prefix.
RegretRecord make_regret_record(const ComparatorFn& comparator, std::span<const Point> realized,
                                std::span<const double> losses, uint64_t seed,
                                ComparatorMode mode = ComparatorMode::FullHorizon);

}  // namespace adversim
