#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "conecert/cli.hpp"
#include "conecert/types.hpp"

namespace conecert::cli {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open input '" + path + "'", 0);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void print_input_error(std::ostream& err, const std::string& path, const InputError& e) {
  err << path;
  if (e.line() > 0) err << ':' << e.line();
  err << ": error: " << e.what() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified projections onto finitely generated cones, Farkas alternatives, "
               "positive quadrature and shape-preserving polynomial fits"};
  app.require_subcommand(1);
  Options opts;

  for (const char* name : {"project", "farkas", "quadrature", "shape", "membership"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--input", opts.input, "problem file (JSON)")->required();
    sub->add_option("--output", opts.output, "report path (default: stdout)");
    sub->add_option("--tol", opts.tol, "relative tolerance (overrides the file)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", opts.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", opts.seed, "seed for randomized spot checks");
    sub->add_option("--dump-csv", opts.dump_csv, "write sampled values as CSV (shape, quadrature)");
    sub->add_flag("!--no-timing", opts.timing, "report runtime_ms as 0 for byte-stable output");
    sub->callback([&opts, name] { opts.kind = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  Report report;
  std::string text;
  try {
    text = read_file(opts.input);
    const Json problem = parse_problem_text(text);
    const auto start = std::chrono::steady_clock::now();
    report = solve(opts.kind, problem, opts, text);
    const auto stop = std::chrono::steady_clock::now();
    report.runtime_ms =
        opts.timing ? std::chrono::duration<double, std::milli>(stop - start).count() : 0.0;
  } catch (const InputError& e) {
    print_input_error(err, opts.input, e);
    return 1;
  } catch (const Error& e) {
    err << opts.input << ": computation failed: " << e.what() << '\n';
    return 2;
  }

  const std::string rendered =
      opts.format == "text" ? render_text(report) : dump_json(report.to_json()) + "\n";
  if (opts.output.empty()) {
    out << rendered;
  } else {
    std::ofstream f(opts.output, std::ios::binary);
    if (!f) {
      err << "cannot open output '" << opts.output << "'\n";
      return 1;
    }
    f << rendered;
  }
  if (!opts.dump_csv.empty()) {
    try {
      write_csv(report, opts.dump_csv);
    } catch (const InputError& e) {
      print_input_error(err, opts.dump_csv, e);
      return 1;
    }
  }
  return report.all_pass() ? 0 : 2;
}

}  // namespace conecert::cli
