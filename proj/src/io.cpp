#include "ctqw/io.hpp"

#include <cstdio>

namespace ctqw {

namespace {

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& in) {
  Eigen::VectorXd v(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) v(i) = in[i].get<double>();
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

void to_json(nlohmann::json& out, const RootedGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  out = {{"label", g.label()},
         {"vertex_count", g.vertex_count()},
         {"root", g.root()},
         {"edges", std::move(edges)}};
}

void from_json(const nlohmann::json& in, RootedGraph& g) {
  std::vector<Edge> edges;
  for (const auto& e : in.at("edges"))
    edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  g = RootedGraph(in.at("vertex_count").get<int>(), std::move(edges),
                  in.at("root").get<int>(),
                  in.value("label", std::string{}));
}

void to_json(nlohmann::json& out, const JacobiSequences& j) {
  out = {{"omega", vector_to_json(j.omega)},
         {"alpha", vector_to_json(j.alpha)},
         {"tail", j.unit_tail ? nlohmann::json("unit") : nlohmann::json()}};
}

void from_json(const nlohmann::json& in, JacobiSequences& j) {
  const auto& tail = in.at("tail");
  j = make_jacobi_sequences(vector_from_json(in.at("omega")),
                            vector_from_json(in.at("alpha")),
                            !tail.is_null() && tail.get<std::string>() ==
                                                   "unit");
}

namespace {

std::string density_kind_name(DensityKind kind) {
  switch (kind) {
    case DensityKind::semicircle: return "semicircle";
    case DensityKind::arcsine: return "arcsine";
    case DensityKind::star_lattice: return "star_lattice";
  }
  throw std::logic_error("unknown density kind");
}

DensityKind density_kind_from_name(const std::string& name) {
  if (name == "semicircle") return DensityKind::semicircle;
  if (name == "arcsine") return DensityKind::arcsine;
  if (name == "star_lattice") return DensityKind::star_lattice;
  throw std::invalid_argument("unknown density kind: " + name);
}

}  // namespace

void to_json(nlohmann::json& out, const SpectralMeasure& m) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& atom : m.atoms) atoms.push_back({atom.position, atom.weight});
  nlohmann::json density;
  if (m.density) {
    density = {{"kind", density_kind_name(m.density->kind)},
               {"params", {{"rays", m.density->lattice_order}}},
               {"support", {m.density->support_lo, m.density->support_hi}}};
  }
  nlohmann::json tabulated;
  if (m.tabulated) {
    tabulated = nlohmann::json::array();
    for (int i = 0; i < m.tabulated->x.size(); ++i)
      tabulated.push_back({m.tabulated->x(i), m.tabulated->value(i)});
  }
  out = {{"atoms", std::move(atoms)},
         {"density", std::move(density)},
         {"tabulated", std::move(tabulated)}};
}

void from_json(const nlohmann::json& in, SpectralMeasure& m) {
  m = SpectralMeasure{};
  for (const auto& a : in.at("atoms"))
    m.atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
  const auto& density = in.at("density");
  if (!density.is_null()) {
    ClosedFormDensity d;
    d.kind = density_kind_from_name(density.at("kind").get<std::string>());
    d.lattice_order = density.at("params").at("rays").get<int>();
    d.support_lo = density.at("support").at(0).get<double>();
    d.support_hi = density.at("support").at(1).get<double>();
    m.density = d;
  }
  const auto& tabulated = in.at("tabulated");
  if (!tabulated.is_null()) {
    TabulatedDensity table;
    table.x.resize(tabulated.size());
    table.value.resize(tabulated.size());
    for (std::size_t i = 0; i < tabulated.size(); ++i) {
      table.x(i) = tabulated[i].at(0).get<double>();
      table.value(i) = tabulated[i].at(1).get<double>();
    }
    m.tabulated = std::move(table);
  }
}

std::string method_name(Method method) {
  switch (method) {
    case Method::spectral: return "spectral";
    case Method::oracle: return "oracle";
    case Method::closed_form: return "closed_form";
    case Method::qclt: return "qclt";
  }
  throw std::logic_error("unknown method");
}

Method method_from_name(const std::string& name) {
  if (name == "spectral") return Method::spectral;
  if (name == "oracle") return Method::oracle;
  if (name == "closed_form") return Method::closed_form;
  if (name == "qclt") return Method::qclt;
  throw std::invalid_argument("unknown method: " + name);
}

void to_json(nlohmann::json& out, const AmplitudeSeries& series) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t row = 0; row < series.times.size(); ++row) {
    nlohmann::json entries = nlohmann::json::array();
    for (int k = 0; k <= series.k_max(); ++k) {
      const Complex q = series.amplitudes(row, k);
      entries.push_back({q.real(), q.imag()});
    }
    rows.push_back(std::move(entries));
  }
  out = {{"method", method_name(series.method)},
         {"times", series.times},
         {"amplitudes", std::move(rows)}};
}

void from_json(const nlohmann::json& in, AmplitudeSeries& series) {
  series = AmplitudeSeries{};
  series.method = method_from_name(in.at("method").get<std::string>());
  series.times = in.at("times").get<std::vector<double>>();
  const auto& rows = in.at("amplitudes");
  if (rows.size() != series.times.size())
    throw std::invalid_argument("amplitude series: row/time count mismatch");
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  series.amplitudes.resize(rows.size(), cols);
  for (std::size_t row = 0; row < rows.size(); ++row) {
    if (rows[row].size() != cols)
      throw std::invalid_argument("amplitude series: ragged rows");
    for (std::size_t k = 0; k < cols; ++k)
      series.amplitudes(row, k) = Complex(rows[row][k].at(0).get<double>(),
                                          rows[row][k].at(1).get<double>());
  }
}

void to_json(nlohmann::json& out, const ConvergenceReport& report) {
  out = {{"n_values", report.n_values}, {"sup_errors", report.sup_errors}};
}

void from_json(const nlohmann::json& in, ConvergenceReport& report) {
  report.n_values = in.at("n_values").get<std::vector<int>>();
  report.sup_errors = in.at("sup_errors").get<std::vector<double>>();
}

std::string amplitude_csv(const AmplitudeSeries& series) {
  std::string out = "t";
  for (int k = 0; k <= series.k_max(); ++k) {
    const std::string idx = std::to_string(k);
    out += ", re_q" + idx + ", im_q" + idx;
  }
  out += "\n";
  for (std::size_t row = 0; row < series.times.size(); ++row) {
    out += format_double(series.times[row]);
    for (int k = 0; k <= series.k_max(); ++k) {
      const Complex q = series.amplitudes(row, k);
      out += ", " + format_double(q.real()) + ", " + format_double(q.imag());
    }
    out += "\n";
  }
  return out;
}

std::string probability_csv(const ProbabilityTable& table) {
  std::string out = "t, vertex, probability\n";
  for (std::size_t row = 0; row < table.times.size(); ++row)
    for (int v = 0; v < table.probabilities.cols(); ++v)
      out += format_double(table.times[row]) + ", " + std::to_string(v) +
             ", " + format_double(table.probabilities(row, v)) + "\n";
  return out;
}

}  // namespace ctqw
