// thresholds.hpp
// Noise thresholds for isotropic families: the smallest p at which
// rho(p) = p |psi><psi| + (1-p) I / D starts violating a detection bound,
// located by bisection on the (empirically verified) monotone gap function.
// Also: reference-table comparison reports with embedded published values,
// and the six-qubit network-depth demonstration.

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "collective.hpp"
#include "criteria.hpp"
#include "linalg.hpp"
#include "mum.hpp"
#include "skew.hpp"
#include "states.hpp"

namespace mumsi {

enum class ThresholdStatus { Solved, NotDetectable, AlwaysViolated };

inline const char* threshold_status_label(ThresholdStatus status) {
  switch (status) {
    case ThresholdStatus::Solved: return "solved";
    case ThresholdStatus::NotDetectable: return "not-detectable";
    default: return "always-violated";
  }
}

struct ThresholdResult {
  std::string family;
  SParameter s = SParameter::zero();
  CriterionKind kind = CriterionKind::KSeparability;
  int k = 0;
  double kappa = 0.0;
  double bound = 0.0;
  double lhs_at_p1 = 0.0;
  ThresholdStatus status = ThresholdStatus::NotDetectable;
  std::optional<double> p_star;  // set iff Solved
  int iterations = 0;
  double residual = 0.0;  // |gap| at p_star, or the gap at the blocking endpoint
};

inline constexpr int kThresholdGridPoints = 64;
inline constexpr int kThresholdMaxIterations = 200;

// Find the noise threshold p* with lhs(p*) = bound for the given criterion.
// The gap g(p) = lhs_sum_isotropic(p) - bound is checked to be nondecreasing
// on a 64-point grid before bisection (no proof of uniqueness is assumed);
// a non-monotone grid aborts with the sampled values in the message.
inline ThresholdResult threshold_solve(const StateFamily& family, const MumSet& mum,
                                       const SParameter& s, CriterionKind kind, int k,
                                       double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("threshold_solve: tol must be positive");
  const int num_sites = sites_for_dim(family.total_dim(), mum.d, "threshold_solve");

  ThresholdResult out;
  out.family = family.description;
  out.s = s;
  out.kind = kind;
  out.k = k;
  out.kappa = mum.kappa;
  out.bound = criterion_bound(kind, num_sites, mum.d, mum.kappa, k);

  auto gap = [&](double p) { return lhs_sum_isotropic(family, p, mum, s) - out.bound; };

  std::vector<double> grid(kThresholdGridPoints);
  for (int i = 0; i < kThresholdGridPoints; ++i)
    grid[i] = gap(static_cast<double>(i) / (kThresholdGridPoints - 1));
  for (int i = 0; i + 1 < kThresholdGridPoints; ++i)
    if (grid[i + 1] < grid[i] - 1e-12) {
      std::string values;
      for (double g : grid) values += " " + num_str(g);
      throw std::runtime_error(
          "threshold_solve: gap function is not nondecreasing on the sample grid; "
          "bisection would be unsound. Sampled gaps:" + values);
    }

  out.lhs_at_p1 = grid.back() + out.bound;
  if (grid.back() <= 0.0) {
    out.status = ThresholdStatus::NotDetectable;
    out.residual = grid.back();
    return out;
  }
  if (grid.front() > 0.0) {
    out.status = ThresholdStatus::AlwaysViolated;
    out.residual = grid.front();
    return out;
  }

  double lo = 0.0;  // gap(lo) <= 0
  double hi = 1.0;  // gap(hi) > 0
  const double target = tol * std::abs(out.bound);
  for (int iter = 1; iter <= kThresholdMaxIterations; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double g = gap(mid);
    if (std::abs(g) <= target) {
      out.status = ThresholdStatus::Solved;
      out.p_star = mid;
      out.iterations = iter;
      out.residual = std::abs(g);
      return out;
    }
    if (g > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  throw std::runtime_error("threshold_solve: no convergence to |gap| <= " + num_str(target) +
                           " within " + std::to_string(kThresholdMaxIterations) +
                           " bisection steps (bracket [" + num_str(lo) + ", " + num_str(hi) +
                           "])");
}

// One row of a published-table comparison: our computed threshold (absent
// when the criterion cannot detect the family at any p), the published value,
// their difference, and the published competitor value where the table lists
// one.
struct TableRow {
  int k = 0;
  std::optional<double> computed;
  double paper_value = 0.0;
  std::optional<double> delta;
  std::optional<double> reference_value;
};

struct TableComparison {
  std::string table_id;
  std::string description;
  std::string family_spec;  // "" for bound-only tables
  std::string s_label;
  CriterionKind kind = CriterionKind::KProducibility;
  double kappa = 0.0;
  bool comparison_only = false;  // deltas reported, agreement not asserted
  std::vector<TableRow> rows;
};

namespace detail {

struct PublishedThresholdTable {
  const char* id;
  const char* family_spec;  // "w:6" or "ghz:11"
  const char* s_text;
  CriterionKind kind;
  int k_first;
  std::vector<double> paper;      // published thresholds, in k order
  std::vector<double> reference;  // published competitor values; NaN = blank
};

// Published noise thresholds being compared against. The source tables'
// measurement normalization is unstated and does not match the convention
// fixed by the bound table and the depth example (see README); deltas are
// reported, agreement is not asserted.
inline const std::vector<PublishedThresholdTable>& published_threshold_tables() {
  constexpr double na = std::numeric_limits<double>::quiet_NaN();
  static const std::vector<PublishedThresholdTable> tables = {
      {"I", "w:6", "-1", CriterionKind::KSeparability, 2,
       {0.6523, 0.5211, 0.4225, 0.3567, 0.3237},
       {na, 0.5816, 0.4433, 0.3443, 0.2649}},
      {"II", "w:6", "-1", CriterionKind::KProducibility, 1,
       {0.3237, 0.4225, 0.5211, 0.5539, 0.6523},
       {0.2649, 0.5026, 0.6210, 0.6605, 0.7591}},
      {"III", "w:6", "0", CriterionKind::KSeparability, 2,
       {0.9943, 0.9927, 0.9913, 0.9903, 0.9898},
       {na, 0.9990, 0.9978, 0.9961, 0.9939}},
      {"IV", "w:6", "0", CriterionKind::KProducibility, 1,
       {0.9898, 0.9913, 0.9927, 0.9931, 0.9943},
       {0.9939, 0.9961, 0.9990, na, na}},
      {"V", "w:6", "-inf", CriterionKind::KSeparability, 2,
       {0.3958, 0.3125, 0.25, 0.2083, 0.1875},
       {na, 0.75, 0.625, 0.5, 0.375}},
      {"VI", "w:6", "-inf", CriterionKind::KProducibility, 1,
       {0.1875, 0.25, 0.3125, 0.3333, 0.3958},
       {0.375, 0.5, 0.75, na, na}},
      {"VII", "ghz:11", "-inf", CriterionKind::KSeparability, 2,
       {0.4300, 0.3671, 0.3111, 0.2622, 0.2202, 0.1853, 0.1573, 0.1363, 0.1223, 0.1153},
       {0.8532, 0.7205, 0.6017, 0.4969, 0.4061, 0.3293, 0.2664, 0.2175, 0.1826, 0.1546}},
      {"VIII", "ghz:11", "-inf", CriterionKind::KProducibility, 1,
       {0.1153, 0.1503, 0.1853, 0.2202, 0.2552, 0.2902, 0.3041, 0.3321, 0.3741, 0.4300},
       {0.0009, 0.0312, 0.1248, 0.2498, 0.2498, 0.4997, 0.4997, 0.4997, 0.4997, 0.4997}}};
  return tables;
}

// Published producibility bound values for six qubits at kappa = 1 (the
// anchor that pins the measurement convention).
inline const std::vector<double>& published_bound_table() {
  static const std::vector<double> values = {9.0, 12.0, 15.0, 16.0, 19.0};
  return values;
}

}  // namespace detail

// Rebuild one published table: the bound table ("IX") as direct formula
// evaluations, the threshold tables ("I".."VIII") as threshold_solve runs at
// the requested kappa, each beside the embedded published value.
inline TableComparison reproduce_table(const std::string& table_id, double kappa) {
  TableComparison out;
  out.table_id = table_id;
  out.kappa = kappa;
  if (table_id == "IX") {
    out.description = "producibility bounds, 6 qubits";
    out.family_spec = "";
    out.s_label = "";
    out.kind = CriterionKind::KProducibility;
    out.comparison_only = false;
    const std::vector<double>& paper = detail::published_bound_table();
    for (int k = 1; k <= 5; ++k) {
      TableRow row;
      row.k = k;
      row.computed = kprod_bound(6, 2, kappa, k);
      row.paper_value = paper[static_cast<size_t>(k - 1)];
      row.delta = *row.computed - row.paper_value;
      out.rows.push_back(row);
    }
    return out;
  }

  for (const detail::PublishedThresholdTable& table : detail::published_threshold_tables()) {
    if (table_id != table.id) continue;
    out.family_spec = table.family_spec;
    out.s_label = table.s_text;
    out.kind = table.kind;
    out.comparison_only = true;
    out.description = std::string("noise thresholds, ") + table.family_spec + ", s=" +
                      table.s_text + ", " + criterion_kind_label(table.kind);
    const StateFamily family = parse_state_spec(table.family_spec);
    const MumSet mum = build_mum_set(2, t_of_kappa(2, kappa));
    const SParameter s = SParameter::parse(table.s_text);
    for (size_t i = 0; i < table.paper.size(); ++i) {
      TableRow row;
      row.k = table.k_first + static_cast<int>(i);
      row.paper_value = table.paper[i];
      if (!std::isnan(table.reference[i])) row.reference_value = table.reference[i];
      const ThresholdResult solved = threshold_solve(family, mum, s, table.kind, row.k, 1e-9);
      if (solved.status == ThresholdStatus::Solved) {
        row.computed = solved.p_star;
        row.delta = *row.computed - row.paper_value;
      }
      out.rows.push_back(row);
    }
    return out;
  }
  throw std::invalid_argument("reproduce_table: unknown table id '" + table_id +
                              "' (expected I..IX)");
}

inline std::vector<std::string> all_table_ids() {
  return {"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX"};
}

// Network-depth demonstration on the three six-qubit block-product states:
// certify the entanglement depth of each and match it to the network whose
// largest node group has that size.
struct NetworkAssignment {
  std::string state_label;  // "a", "b", "c"
  double lhs = 0.0;
  int depth = 0;
  int network = 0;
  std::vector<std::string> reasoning;
};

struct NetworkDemoReport {
  int num_sites = 6;
  int d = 2;
  double t = 0.0;
  double kappa = 0.0;
  std::string s_label;
  std::vector<double> producibility_bounds;  // k = 1..5
  std::vector<NetworkAssignment> assignments;
};

inline NetworkDemoReport network_depth_demo() {
  const MumSet mum = build_mum_set(2, max_positive_t(2));
  const SParameter s = SParameter::neg_infinity();  // pure states: any s gives the variance sum
  const DepthExampleStates states = example37_states();
  const int N = 6;

  NetworkDemoReport report;
  report.t = mum.t;
  report.kappa = mum.kappa;
  report.s_label = s.str();
  for (int k = 1; k <= 5; ++k)
    report.producibility_bounds.push_back(kprod_bound(N, 2, mum.kappa, k));

  // the three candidate networks, keyed by the size of their largest node group
  const std::vector<std::pair<int, int>> network_by_depth = {{3, 1}, {2, 2}, {4, 3}};

  const std::vector<std::pair<std::string, const PureState*>> labeled = {
      {"a", &states.a}, {"b", &states.b}, {"c", &states.c}};
  for (const auto& [label, psi] : labeled) {
    NetworkAssignment entry;
    entry.state_label = label;
    entry.lhs = lhs_sum(psi->projector(), mum, s, N);
    entry.depth = depth_from_lhs(entry.lhs, N, 2, mum.kappa);
    for (int k = 1; k <= entry.depth; ++k) {
      const double bound = kprod_bound(N, 2, mum.kappa, k);
      if (k < entry.depth)
        entry.reasoning.push_back("I_" + label + " = " + num_str(entry.lhs) + " > " +
                                  num_str(bound) + " = I_" + std::to_string(k) +
                                  ": not " + std::to_string(k) + "-producible, contains " +
                                  std::to_string(k + 1) + "-partite entanglement");
      else
        entry.reasoning.push_back("I_" + label + " = " + num_str(entry.lhs) +
                                  " <= " + num_str(bound) + " = I_" + std::to_string(k) +
                                  ": consistent with " + std::to_string(k) + "-producible");
    }
    entry.network = 0;
    for (const auto& [depth, net] : network_by_depth)
      if (depth == entry.depth) entry.network = net;
    if (entry.network == 0)
      throw std::runtime_error("network_depth_demo: no candidate network has largest group " +
                               std::to_string(entry.depth));
    report.assignments.push_back(std::move(entry));
  }
  return report;
}

}  // namespace mumsi
