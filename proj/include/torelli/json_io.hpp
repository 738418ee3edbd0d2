#pragma once

#include <json.hpp>

#include "torelli/torelli.hpp"

namespace torelli {

using ordered_json = nlohmann::ordered_json;

/// Malformed or invariant-violating input documents (CLI exit code 1).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

uint64_t fnv1a64(const std::string& data);
std::string digest_hex(const std::string& data);

Field field_from_json(const ordered_json& j);
ordered_json field_to_json(const Field& f);

Arrangement arrangement_from_json(const ordered_json& j);
ordered_json arrangement_to_json(const Arrangement& z);

ProjPoint point_from_json(const ordered_json& j, size_t n, const Field& f);
ordered_json point_to_json(const ProjPoint& p);
ProjPoint point_from_string(const std::string& s, size_t n, const Field& f);

LinMatrix linmatrix_from_json(const ordered_json& j, const Field& f);
ordered_json linmatrix_to_json(const LinMatrix& m);

ordered_json steiner_to_json(const SteinerMatrix& m);
ordered_json verify_report_to_json(const VerifySteinerReport& r);
ordered_json resolution_to_json(const ResolutionData& r);

ordered_json kw_to_json(const KWVariety& y);
KWVariety kw_from_json(const ordered_json& j);

ordered_json witness_a_to_json(const WitnessA& w);
ordered_json witness_b_to_json(const WitnessB& w);
ordered_json scan_to_json(const std::vector<ScanEntry>& entries);
ordered_json verdict_to_json(const Verdict& v);
ordered_json decomposition_to_json(const Decomposition& d);
ordered_json reconstruct_to_json(const ReconstructReport& r);

/// Report wrapper: {"command", "input-digest", "result", "certificates",
/// "warnings"} with fixed key order.
ordered_json make_report(const std::string& command, const std::string& input_digest, ordered_json result,
                         ordered_json certificates, std::vector<std::string> warnings);

}  // namespace torelli
