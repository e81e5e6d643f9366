#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "finitezone/floquet.hpp"
#include "finitezone/types.hpp"

namespace fz {

// Malformed or inconsistent job description (exit status 1).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DivisorSpec {
    cplx E;
    int sheet = 1;  // w = sheet * principal sqrt(P(E))
};

struct JobConfig {
    std::vector<cplx> branch_points;
    std::optional<std::vector<DivisorSpec>> divisor;
    std::optional<std::vector<cplx>> z0;
    std::optional<std::string> claimed_class;
    // Sampling range in x; defaults to one period, or [-10, 10] if aperiodic.
    std::optional<std::pair<double, double>> x_range;
    int samples = 200;
    ScanGrid scan{-2.0, 3.0, -1.0, 1.0, 51, 21};
    double scan_eps = 1e-3;
    std::optional<std::vector<cplx>> floquet_guesses;  // default: next to each branch point
    Tolerances tol;
    std::string output_dir = "out";

    static JobConfig from_json(const nlohmann::json& j);
    // Every field with defaults filled in.
    nlohmann::json resolved() const;
};

JobConfig load_config(const std::string& path);

// JSON text with every floating-point number printed to 17 significant digits.
std::string dump_json(const nlohmann::json& j, int indent = 2);

enum ExitCode { kExitOk = 0, kExitConfig = 1, kExitNumerical = 2, kExitVerification = 3 };

// Runs one of curve, potential, verify, dubrovin, floquet, bloch. Files go to
// cfg.output_dir; a summary goes to out and diagnostics to err.
int run_job(const std::string& command, const JobConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace fz
