#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "solsurf/immersion.hpp"

namespace solsurf::cli {

using Json = nlohmann::ordered_json;

enum class Command { Generate, Verify, Limit, ToOde, FromOde, ErfExample };

std::string to_string(Command c);

/// Fully resolved command configuration.
struct RunConfig {
    Command command = Command::Generate;
    std::string eta = "1";
    std::string psi;
    ParamMap params;
    std::vector<double> lambdas{1.0};
    Rect domain;
    int nx = 32, ny = 32;
    double tol = 1e-8;
    Target target = Target::H3;
    std::optional<cplx> z0;  ///< default: centre of the domain
    std::string out;
    std::string report;
    int points = 10;
    // ode
    std::string p, q;
    int n = 1;
    cplx c = 1.0, c1 = 0.0;
    // verify
    cplx perturb_q = 0.0;

    double lambda() const { return lambdas.front(); }
    cplx base_point() const;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "a:b:c:d" -> [a,b] x [c,d].
Rect parse_domain(const std::string& s);
/// "N" or "NxM".
std::pair<int, int> parse_resolution(const std::string& s);
/// "name=value", value a constant expression.
std::pair<std::string, cplx> parse_binding(const std::string& s);
cplx parse_constant(const std::string& s);

/// Checks the invariants of a RunConfig; UsageError otherwise.
void validate(const RunConfig& cfg);

struct Outcome {
    Json report;
    bool pass = true;
    std::string text;  ///< human-readable summary for standard output
};

Outcome cmd_generate(const RunConfig& cfg);
Outcome cmd_verify(const RunConfig& cfg);
Outcome cmd_limit(const RunConfig& cfg);
Outcome cmd_to_ode(const RunConfig& cfg);
Outcome cmd_from_ode(const RunConfig& cfg);
Outcome cmd_erf_example(const RunConfig& cfg);
Outcome dispatch(const RunConfig& cfg);

/// Parses arguments (without the program name), runs the command and writes
/// outputs. Returns 0 on success, 2 if a check failed, 1 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The report with its timing fields removed, for comparisons between runs.
Json strip_timing(Json report);

}  // namespace solsurf::cli
