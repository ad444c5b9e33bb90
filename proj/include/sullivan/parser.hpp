#ifndef SULLIVAN_PARSER_HPP
#define SULLIVAN_PARSER_HPP

#include <stdexcept>
#include <string>

#include "sullivan/presentation.hpp"

namespace sullivan {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

/* Text presentation of an algebra:
 *
 *   generator <name> <degree>
 *   d <name> = <polynomial expression>
 *   decompose dlcop <name>
 *   decompose dlp <name>
 *
 * Generator order is the filtration order; omitted d lines mean zero;
 * `#` starts a comment. Expressions use + - * ^, integer and rational
 * literals (p/q), and parentheses; products need explicit '*'. */
struct AlgebraFile {
    CdgaPresentation algebra;
    std::string dlcop_generator;
    std::string dlp_generator;
    std::string source;
};

AlgebraFile parse_algebra_file(const std::string& text);
AlgebraFile load_algebra_file(const std::string& path);

/* Expression parser over an existing table (also used to re-read witness
 * polynomials from reports). */
Poly parse_poly(const std::string& text, const TablePtr& table);

}  // namespace sullivan

#endif
