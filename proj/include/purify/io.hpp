#pragma once

// JSON and text formats shared by the library and the CLI.
//
// Matrix:   {"dim": d, "entries": [[[re, im], ...], ...]}   (d x d)
// Ensemble: {"priors": [...], "states": [<matrix>, ...]}
// Channel:  {"in_dim": n, "out_dim": m, "kraus": [<m x n entries>, ...]}
// Verdict:  {"verdict": "...", "trace_distance": x, "wcd": y,
//            "components": [...], "certificate": {...} | null}

#include <string>

#include <json.hpp>

#include "purify/channels.hpp"
#include "purify/purification.hpp"
#include "purify/states.hpp"

namespace purify {

using Json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json entries_to_json(const Matrix& m);
Matrix entries_from_json(const Json& j);

Json to_json(const DensityMatrix& rho);
DensityMatrix density_matrix_from_json(const Json& j);

Json to_json(const Ensemble& ensemble);
Ensemble ensemble_from_json(const Json& j);

Json to_json(const KrausChannel& channel);
KrausChannel channel_from_json(const Json& j);

Json to_json(const PureStateVector& psi);
Json to_json(const EssentiallyPureCertificate& cert);
Json to_json(const DeltaBounds& bounds);
Json to_json(const PurifiabilityVerdict& verdict);

/// Reads a DensityMatrix JSON file. FormatError on I/O or parse problems.
DensityMatrix read_density_matrix(const std::string& path);

/// Shortest decimal that round-trips, capped at 12 significant digits.
std::string format_number(double x);

}  // namespace purify
