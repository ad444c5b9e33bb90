#ifndef SULLIVAN_REPORT_HPP
#define SULLIVAN_REPORT_HPP

#include <json.hpp>

#include "sullivan/parser.hpp"

namespace sullivan {

using json = nlohmann::ordered_json;

struct CmdOptions {
    int max_degree = -1;  // -1 selects the default bound
    bool loop = false;
    std::string route = "auto";
    bool reduce_semipure = false;
    bool modp_check = false;
};

/* Each command returns a JSON report: command, input digest, per-check
 * results and certificates. Certificates embed exact witnesses (tables,
 * generator-image maps, polynomials as strings) plus an `identities`
 * array that verify_report can re-check with polynomial arithmetic
 * alone. Reports are deterministic apart from the timing field. */
json cmd_check(const AlgebraFile& f, const CmdOptions& opt);
json cmd_models(const AlgebraFile& f, const CmdOptions& opt);
json cmd_shriek(const AlgebraFile& f, const CmdOptions& opt);
json cmd_triviality(const AlgebraFile& f, const CmdOptions& opt);
json cmd_cohomology(const AlgebraFile& f, const CmdOptions& opt);

json run_command(const std::string& command, const AlgebraFile& f, const CmdOptions& opt);

/* Re-runs every identity recorded in the report, using only the tables,
 * maps and polynomials embedded there. Returns the failures. */
std::vector<std::string> verify_report(const json& report);

std::string human_summary(const json& report);

std::string input_digest(const std::string& text);

}  // namespace sullivan

#endif
