#pragma once

// JSON request handling for the check-file, check-params and run-algorithms
// endpoints. Handlers are pure; the HTTP binding lives in server.hpp.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "matchkit/generator.hpp"
#include "matchkit/model.hpp"
#include "matchkit/runner.hpp"

namespace matchkit {

using OrderedJson = nlohmann::ordered_json;

/// Malformed request: missing or mistyped fields. Maps to HTTP 400.
class RequestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Generator parameters from their wire names (numOfRoommates, numOfResidents,
/// totalCapacity, ...). Throws DomainError naming an unknown or invalid field.
GeneratorParams params_from_wire(ProblemClass cls, const nlohmann::json& params);

/// "Preference Lists" text: every list with matched partners in angle brackets.
std::string preference_text(const Instance& inst, const Matching& m);
/// One "(a, b)" line per pair, 1-based.
std::string matched_pairs_text(const Matching& m);

/// Algorithms applicable to every instance, name -> description, in catalog
/// order. With several instances only single-output algorithms are offered.
OrderedJson available_algorithms(const std::vector<Instance>& instances);

/// One run-algorithms entry for the named algorithm over the instances.
OrderedJson run_result(const std::string& algorithm, ProblemClass cls, const std::vector<Instance>& instances,
                       const RunOptions& options = {});

OrderedJson check_file(const nlohmann::json& body);
OrderedJson check_params(const nlohmann::json& body);
OrderedJson run_algorithms(const nlohmann::json& body);

struct ServiceResponse {
    int status = 201;
    std::string body;
};

struct ServiceOptions {
    std::chrono::milliseconds timeout{30000};
};

/// Dispatches a POST body to the endpoint at `path` ("/check-file", ...).
ServiceResponse handle_request(const std::string& path, const std::string& body, const ServiceOptions& options = {});

}  // namespace matchkit
