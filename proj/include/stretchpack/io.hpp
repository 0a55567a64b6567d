#ifndef STRETCHPACK_IO_HPP
#define STRETCHPACK_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "stretchpack/audit.hpp"
#include "stretchpack/engine.hpp"
#include "stretchpack/model.hpp"

namespace stretchpack {

// Raised on malformed input files or unparsable rationals. Maps to exit
// code 3 in the CLI.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "p/q" (q > 0) or a decimal with at most 9 fractional digits, parsed
// exactly: d.f == (d*10^k + f) / 10^k.
Rat parse_rational(const std::string& text);

// Canonical form: "p/q", plain "p" when q == 1.
std::string format_rational(const Rat& r);

// Instance file: '#' comments and blank lines ignored; "m <int>" first,
// optional "scale <12|1>" (default 12), one size per line, optional
// trailing "witness:" block with "item <i> -> bin <b>" lines.
Instance parse_instance(std::istream& in);
Instance load_instance(const std::string& path);
void write_instance(std::ostream& out, const Instance& instance);
void save_instance(const std::string& path, const Instance& instance);

// Trace stream: one JSON object per line. Event shapes:
//   {"ev":"place","i":..,"size":"p/q","class":..,"phase":..,"rule":..,
//    "bin":..,"load":"p/q","bintype":..}
//   {"ev":"phase2","branch":..,"lambda":..,"list":[..]}
//   {"ev":"fail","i":..}
//   {"ev":"done","max":"p/q","loads":[..]}
//   {"ev":"violation","clause":..,"bins":[..]}
std::string trace_lines(const Instance& instance, const RunResult& result,
                        const std::vector<ViolationAt>& violations);
void write_trace(std::ostream& out, const Instance& instance, const RunResult& result,
                 const std::vector<ViolationAt>& violations);

// Replays the instance through the algorithm recorded in the trace (place
// events with phase 0 mean the First Fit baseline) and compares record for
// record. Returns a human-readable mismatch description, empty on success.
std::string trace_check(std::istream& trace, const Instance& instance);

}  // namespace stretchpack

#endif
