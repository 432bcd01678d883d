// serialize.hpp
// JSON, aligned-text and CSV renderings of the library's report types, plus
// JSON loading of pure states and MUM sets. JSON layout is stable and
// deterministic: identical inputs serialize to identical bytes.

#pragma once

#include <json.hpp>

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "collective.hpp"
#include "criteria.hpp"
#include "linalg.hpp"
#include "mum.hpp"
#include "skew.hpp"
#include "states.hpp"
#include "thresholds.hpp"

namespace mumsi {

inline constexpr char kToolName[] = "mumsi";
inline constexpr char kToolVersion[] = "0.1.0";

using Json = nlohmann::json;

inline std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, x);
  return buf;
}

// ---------------------------------------------------------------------------
// JSON writers

inline Json matrix_to_json(const Matrix& m) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline Json mum_set_to_json(const MumSet& mum) {
  Json effects = Json::array();
  for (int b = 0; b <= mum.d; ++b) {
    Json row = Json::array();
    for (int n = 0; n < mum.d; ++n) row.push_back(matrix_to_json(mum.effects[b][n].matrix()));
    effects.push_back(std::move(row));
  }
  return Json{{"d", mum.d}, {"t", mum.t}, {"kappa", mum.kappa}, {"effects", std::move(effects)}};
}

inline Json mum_validation_to_json(const MumValidation& v) {
  return Json{{"unit_trace", v.unit_trace},
              {"pairwise_trace", v.pairwise_trace},
              {"sum_to_identity", v.sum_to_identity},
              {"generator_sum", v.generator_sum},
              {"sum_squares", v.sum_squares},
              {"kappa_relation", v.kappa_relation},
              {"max", v.max()}};
}

inline Json criterion_report_to_json(const CriterionReport& r) {
  return Json{{"criterion", criterion_kind_label(r.kind)},
              {"N", r.num_sites},
              {"d", r.d},
              {"t", r.t},
              {"kappa", r.kappa},
              {"s", r.s.str()},
              {"k", r.k},
              {"lhs", r.lhs},
              {"bound", r.bound},
              {"margin", r.margin},
              {"violated", r.violated},
              {"verdict", r.verdict()},
              {"certificate", r.certificate()}};
}

inline Json threshold_result_to_json(const ThresholdResult& r) {
  Json j{{"family", r.family},
         {"s", r.s.str()},
         {"criterion", criterion_kind_label(r.kind)},
         {"k", r.k},
         {"kappa", r.kappa},
         {"bound", r.bound},
         {"lhs_at_p1", r.lhs_at_p1},
         {"status", threshold_status_label(r.status)},
         {"iterations", r.iterations},
         {"residual", r.residual}};
  j["p_star"] = r.p_star ? Json(*r.p_star) : Json(nullptr);
  return j;
}

inline Json table_comparison_to_json(const TableComparison& t) {
  Json rows = Json::array();
  for (const TableRow& row : t.rows) {
    Json r{{"k", row.k}, {"paper", row.paper_value}};
    r["computed"] = row.computed ? Json(*row.computed) : Json(nullptr);
    r["delta"] = row.delta ? Json(*row.delta) : Json(nullptr);
    r["reference"] = row.reference_value ? Json(*row.reference_value) : Json(nullptr);
    rows.push_back(std::move(r));
  }
  return Json{{"table", t.table_id},
              {"description", t.description},
              {"family", t.family_spec},
              {"s", t.s_label},
              {"criterion", criterion_kind_label(t.kind)},
              {"kappa", t.kappa},
              {"comparison_only", t.comparison_only},
              {"rows", std::move(rows)}};
}

inline Json network_demo_to_json(const NetworkDemoReport& r) {
  Json assignments = Json::array();
  for (const NetworkAssignment& a : r.assignments)
    assignments.push_back(Json{{"state", a.state_label},
                               {"lhs", a.lhs},
                               {"depth", a.depth},
                               {"network", a.network},
                               {"reasoning", a.reasoning}});
  return Json{{"num_sites", r.num_sites},
              {"d", r.d},
              {"t", r.t},
              {"kappa", r.kappa},
              {"s", r.s_label},
              {"producibility_bounds", r.producibility_bounds},
              {"assignments", std::move(assignments)}};
}

// ---------------------------------------------------------------------------
// JSON readers

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw std::invalid_argument("matrix_from_json: expected {rows, cols, entries}");
  const long rows = j.at("rows").get<long>();
  const long cols = j.at("cols").get<long>();
  const Json& entries = j.at("entries");
  if (rows < 1 || cols < 1 || !entries.is_array() ||
      static_cast<long>(entries.size()) != rows * cols)
    throw std::invalid_argument("matrix_from_json: entries do not match rows*cols");
  Matrix m(rows, cols);
  long idx = 0;
  for (long i = 0; i < rows; ++i)
    for (long j2 = 0; j2 < cols; ++j2, ++idx) {
      const Json& e = entries[static_cast<size_t>(idx)];
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("matrix_from_json: each entry must be [re, im]");
      m(i, j2) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  return m;
}

inline PureState pure_state_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("amplitudes"))
    throw std::invalid_argument("pure_state_from_json: expected {dim, amplitudes}");
  const long dim = j.at("dim").get<long>();
  const Json& amps = j.at("amplitudes");
  if (!amps.is_array() || static_cast<long>(amps.size()) != dim)
    throw std::invalid_argument("pure_state_from_json: amplitude count does not match dim");
  Vector v(dim);
  for (long i = 0; i < dim; ++i) {
    const Json& e = amps[static_cast<size_t>(i)];
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("pure_state_from_json: each amplitude must be [re, im]");
    v(i) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return PureState(std::move(v));
}

inline MumSet mum_set_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("t") || !j.contains("effects"))
    throw std::invalid_argument("mum_set_from_json: expected {d, t, kappa, effects}");
  const int d = j.at("d").get<int>();
  const double t = j.at("t").get<double>();
  const Json& effects = j.at("effects");
  if (d < 2 || !effects.is_array() || static_cast<int>(effects.size()) != d + 1)
    throw std::invalid_argument("mum_set_from_json: need d+1 measurement rows");
  MumSet mum;
  mum.d = d;
  mum.t = t;
  mum.kappa = j.contains("kappa") ? j.at("kappa").get<double>() : kappa_of_t(d, t);
  mum.effects.resize(d + 1);
  mum.f_ops.resize(d + 1);
  const Matrix id = Matrix::Identity(d, d);
  for (int b = 0; b <= d; ++b) {
    const Json& row = effects[static_cast<size_t>(b)];
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw std::invalid_argument("mum_set_from_json: each measurement needs d effects");
    for (int n = 0; n < d; ++n) {
      Matrix p = matrix_from_json(row[static_cast<size_t>(n)]);
      if (p.rows() != d || p.cols() != d)
        throw std::invalid_argument("mum_set_from_json: effect dimension mismatch");
      Matrix f = (p - id / static_cast<double>(d)) / t;
      mum.effects[b].emplace_back(std::move(p));
      mum.f_ops[b].emplace_back(std::move(f));
    }
  }
  return mum;
}

// ---------------------------------------------------------------------------
// Text renderings

inline std::string render_text(const CriterionReport& r) {
  std::ostringstream out;
  out << "criterion    : " << criterion_kind_label(r.kind) << " (k = " << r.k << ")\n"
      << "system       : N = " << r.num_sites << " sites, d = " << r.d << "\n"
      << "measurements : t = " << fmt("%.12g", r.t) << ", kappa = " << fmt("%.12g", r.kappa)
      << "\n"
      << "s            : " << r.s.str() << "\n"
      << "lhs          : " << fmt("%.12g", r.lhs) << "\n"
      << "bound        : " << fmt("%.12g", r.bound) << "\n"
      << "margin       : " << fmt("%.12g", r.margin) << "\n"
      << "verdict      : " << r.verdict() << "\n"
      << "certificate  : " << r.certificate() << "\n";
  return out.str();
}

inline std::string render_text(const ThresholdResult& r) {
  std::ostringstream out;
  out << "family       : " << r.family << "\n"
      << "criterion    : " << criterion_kind_label(r.kind) << " (k = " << r.k << ")\n"
      << "kappa        : " << fmt("%.12g", r.kappa) << "\n"
      << "s            : " << r.s.str() << "\n"
      << "bound        : " << fmt("%.12g", r.bound) << "\n"
      << "lhs at p=1   : " << fmt("%.12g", r.lhs_at_p1) << "\n"
      << "status       : " << threshold_status_label(r.status) << "\n";
  if (r.p_star)
    out << "p*           : " << fmt("%.12g", *r.p_star) << "\n"
        << "iterations   : " << r.iterations << "\n"
        << "residual     : " << fmt("%.3g", r.residual) << "\n";
  else if (r.status == ThresholdStatus::NotDetectable)
    out << "note         : lhs stays at or below the bound for every p in [0, 1]\n";
  return out.str();
}

// Column-per-k layout, one row per quantity, matching the published tables.
inline std::string render_text(const TableComparison& t) {
  std::ostringstream out;
  out << "table " << t.table_id << ": " << t.description
      << " (kappa = " << fmt("%.12g", t.kappa) << ")\n";
  const bool thresholds = t.comparison_only;
  const char* value_format = thresholds ? "%.4f" : "%.6g";
  auto row_line = [&](const std::string& head, auto value_of) {
    std::ostringstream line;
    line << "  " << head;
    for (size_t pad = head.size(); pad < 10; ++pad) line << ' ';
    for (const TableRow& row : t.rows) {
      const std::string cell = value_of(row);
      line << ' ';
      for (size_t pad = cell.size(); pad < 9; ++pad) line << ' ';
      line << cell;
    }
    return line.str() + "\n";
  };
  out << row_line("k", [](const TableRow& row) { return std::to_string(row.k); });
  out << row_line("computed", [&](const TableRow& row) {
    return row.computed ? fmt(value_format, *row.computed) : std::string("ND");
  });
  out << row_line("published", [&](const TableRow& row) { return fmt(value_format, row.paper_value); });
  out << row_line("delta", [&](const TableRow& row) {
    return row.delta ? fmt("%+.4f", *row.delta) : std::string("NA");
  });
  const bool any_ref = std::any_of(t.rows.begin(), t.rows.end(),
                                   [](const TableRow& row) { return row.reference_value.has_value(); });
  if (any_ref)
    out << row_line("reference", [&](const TableRow& row) {
      return row.reference_value ? fmt(value_format, *row.reference_value) : std::string("\\");
    });
  if (t.comparison_only)
    out << "  note: published values use an unstated measurement normalization; "
           "deltas are reported, agreement is not asserted\n";
  return out.str();
}

inline std::string render_csv(const TableComparison& t) {
  std::ostringstream out;
  out << "table,k,computed,paper,delta\n";
  for (const TableRow& row : t.rows) {
    out << t.table_id << ',' << row.k << ','
        << (row.computed ? fmt("%.10g", *row.computed) : std::string("ND")) << ','
        << fmt("%.10g", row.paper_value) << ','
        << (row.delta ? fmt("%.10g", *row.delta) : std::string("NA")) << '\n';
  }
  return out.str();
}

inline std::string render_csv(const std::vector<TableComparison>& tables) {
  std::ostringstream out;
  out << "table,k,computed,paper,delta\n";
  for (const TableComparison& t : tables)
    for (const TableRow& row : t.rows)
      out << t.table_id << ',' << row.k << ','
          << (row.computed ? fmt("%.10g", *row.computed) : std::string("ND")) << ','
          << fmt("%.10g", row.paper_value) << ','
          << (row.delta ? fmt("%.10g", *row.delta) : std::string("NA")) << '\n';
  return out.str();
}

inline std::string render_text(const NetworkDemoReport& r) {
  std::ostringstream out;
  out << "network depth demo: N = " << r.num_sites << " qubits, kappa = "
      << fmt("%.12g", r.kappa) << ", s = " << r.s_label << "\n";
  out << "producibility bounds I_k (k = 1..5):";
  for (double b : r.producibility_bounds) out << ' ' << fmt("%.6g", b);
  out << "\n";
  for (const NetworkAssignment& a : r.assignments) {
    out << "state " << a.state_label << ": lhs = " << fmt("%.6g", a.lhs)
        << ", certified depth = " << a.depth << ", assigned network " << a.network << "\n";
    for (const std::string& line : a.reasoning) out << "    " << line << "\n";
  }
  return out.str();
}

inline std::string render_text(const MumValidation& v, const CrossTermCheck& cross) {
  std::ostringstream out;
  out << "unit-trace residual        : " << fmt("%.3e", v.unit_trace) << "\n"
      << "pairwise-trace residual    : " << fmt("%.3e", v.pairwise_trace) << "\n"
      << "sum-to-identity residual   : " << fmt("%.3e", v.sum_to_identity) << "\n"
      << "generator-sum residual     : " << fmt("%.3e", v.generator_sum) << "\n"
      << "sum-of-squares residual    : " << fmt("%.3e", v.sum_squares) << "\n"
      << "kappa-relation residual    : " << fmt("%.3e", v.kappa_relation) << "\n"
      << "cross-term max eigenvalue  : " << fmt("%.12g", cross.max_eigenvalue)
      << " (bound 1 + kappa = " << fmt("%.12g", cross.bound) << ")\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Report envelope shared by all CLI JSON output.

inline Json report_envelope(const std::string& command, const Json& parameters,
                            const Json& result) {
  return Json{{"tool", kToolName},
              {"version", kToolVersion},
              {"command", command},
              {"parameters", parameters},
              {"conventions",
               Json{{"site_order", "site 0 is the most significant computational-basis digit"},
                    {"effect_grid", "basis operators consumed column-major, flat index b*(d-1)+n"},
                    {"pair_summation", "lexicographic in (measurement b, outcome n)"},
                    {"s_convention", "s = -1 equals one quarter of the quantum Fisher information"}}},
              {"result", result}};
}

}  // namespace mumsi
