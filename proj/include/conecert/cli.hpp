#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace conecert::cli {

using Json = nlohmann::ordered_json;

/// Malformed problem file. `line` is 1-based; 0 when no location is known.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& msg, int line) : std::runtime_error(msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Options {
  std::string kind;
  std::string input;
  std::string output;  // empty: stdout
  std::string format = "json";
  std::string dump_csv;
  double tol = -1.0;  // negative: take from the file or the default
  std::uint64_t seed = 0;
  bool timing = true;
};

struct Certificate {
  std::string name;
  double residual = 0.0;
  bool pass = false;
};

struct Report {
  std::string kind;
  Json input_echo;
  Json result;
  std::vector<Certificate> certificates;
  double runtime_ms = 0.0;

  bool all_pass() const;
  Json to_json() const;
  static Report from_json(const Json& j);
};

/// Parses JSON text, mapping syntax errors to InputError with a line number.
Json parse_problem_text(const std::string& text);

/// Solves a parsed problem of the given kind. Throws InputError on schema problems.
/// `text` is the original file contents, used only to locate keys for diagnostics.
Report solve(const std::string& kind, const Json& problem, const Options& opts,
             const std::string& text);

/// Serializes with every floating-point number printed to 17 significant digits.
std::string dump_json(const Json& j, int indent = 2);

std::string render_text(const Report& report);

/// Writes a CSV of sampled values for shape and quadrature results.
void write_csv(const Report& report, const std::string& path);

/// Entry point. Exit codes: 0 success with every certificate passing,
/// 2 result produced but some certificate failed, 1 input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conecert::cli
