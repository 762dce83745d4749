#pragma once

#include <string>

#include <json.hpp>

#include "ctqw/decomposition.hpp"
#include "ctqw/graph.hpp"
#include "ctqw/spectral.hpp"
#include "ctqw/walk.hpp"

namespace ctqw {

/// 17-significant-digit decimal; enough to round-trip any double, fixed so
/// emitted artifacts are byte-stable.
std::string format_double(double v);

// JSON shapes:
//   graph     {label, vertex_count, root, edges: [[i,j],...]}
//   sequences {omega: [...], alpha: [...], tail: "unit"|null}
//   measure   {atoms: [[x,w],...], density: {kind, params, support}|null,
//              tabulated: [[x,f(x)],...]|null}
//   series    {method, times: [...], amplitudes: [[[re,im],...],...]}
void to_json(nlohmann::json& out, const RootedGraph& g);
void from_json(const nlohmann::json& in, RootedGraph& g);

void to_json(nlohmann::json& out, const JacobiSequences& j);
void from_json(const nlohmann::json& in, JacobiSequences& j);

void to_json(nlohmann::json& out, const SpectralMeasure& m);
void from_json(const nlohmann::json& in, SpectralMeasure& m);

void to_json(nlohmann::json& out, const AmplitudeSeries& series);
void from_json(const nlohmann::json& in, AmplitudeSeries& series);

void to_json(nlohmann::json& out, const ConvergenceReport& report);
void from_json(const nlohmann::json& in, ConvergenceReport& report);

std::string method_name(Method method);
Method method_from_name(const std::string& name);

/// CSV with header `t, re_q0, im_q0, re_q1, im_q1, ...`.
std::string amplitude_csv(const AmplitudeSeries& series);

/// CSV with header `t, vertex, probability`, one row per (time, vertex).
std::string probability_csv(const ProbabilityTable& table);

}  // namespace ctqw
