#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "curvjet/metric_jet.hpp"
#include "curvjet/report.hpp"
#include "curvjet/tensor.hpp"
#include "curvjet/twojet.hpp"

namespace curvjet {

inline constexpr const char* kToolName = "curvjet";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

Json space_to_json(const Space& space);
Space space_from_json(const Json& doc);

// {dim, signature, valence, data}
Json tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const Json& doc);

// {dim, signature, R, dR, d2R}; d2R is omitted for a one-jet.
Json jet_to_json(const TwoJet& jet);
Json one_jet_to_json(const Tensor& R, const Tensor& dR);

struct JetDocument {
    Tensor R;
    Tensor dR;
    std::optional<Tensor> d2R;
};
JetDocument jet_from_json(const Json& doc);

// {dim, signature, degree, records: [{i, j, exponents, coefficient}]}, nonzero coefficients only.
Json polymetric_to_json(const PolyMetric& g);
PolyMetric polymetric_from_json(const Json& doc);

// {tool, version, config, records, pass}
Json report_to_json(const Report& report, const Json& config);
std::string report_to_text(const Report& report);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace curvjet
