#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "conecert/cli.hpp"

namespace conecert::cli {
namespace {

void write_string(std::ostringstream& os, const std::string& s) {
  // Reuse the library's escaping for strings.
  os << Json(s).dump();
}

void write_value(std::ostringstream& os, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad;
        write_string(os, it.key());
        os << (indent > 0 ? ": " : ":");
        write_value(os, it.value(), indent, depth + 1);
      }
      os << nl << close_pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Numeric arrays stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); });
      os << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << (flat ? ", " : ",");
        if (!flat) os << nl << pad;
        first = false;
        write_value(os, v, indent, depth + 1);
      }
      if (!flat) os << nl << close_pad;
      os << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      std::string s(buf);
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      os << s;
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::ostringstream os;
  write_value(os, j, indent, 0);
  return os.str();
}

bool Report::all_pass() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const Certificate& c) { return c.pass; });
}

Json Report::to_json() const {
  Json j;
  j["kind"] = kind;
  j["input_echo"] = input_echo;
  j["result"] = result;
  Json certs = Json::array();
  for (const auto& c : certificates) {
    Json e;
    e["name"] = c.name;
    e["residual"] = c.residual;
    e["pass"] = c.pass;
    certs.push_back(std::move(e));
  }
  j["certificates"] = std::move(certs);
  j["runtime_ms"] = runtime_ms;
  return j;
}

Report Report::from_json(const Json& j) {
  Report r;
  r.kind = j.at("kind").get<std::string>();
  r.input_echo = j.at("input_echo");
  r.result = j.at("result");
  for (const auto& e : j.at("certificates")) {
    const Json& res = e.at("residual");
    r.certificates.push_back({e.at("name").get<std::string>(),
                              res.is_null() ? std::nan("") : res.get<double>(),
                              e.at("pass").get<bool>()});
  }
  r.runtime_ms = j.at("runtime_ms").get<double>();
  return r;
}

std::string render_text(const Report& report) {
  std::ostringstream os;
  os << "kind: " << report.kind << '\n';
  os << "result:\n";
  for (auto it = report.result.begin(); it != report.result.end(); ++it) {
    const Json& v = it.value();
    if (v.is_array() && v.size() > 16) {
      os << "  " << it.key() << ": [" << v.size() << " entries, see JSON or --dump-csv]\n";
    } else {
      os << "  " << it.key() << ": " << dump_json(v, 0) << '\n';
    }
  }
  os << "certificates:\n";
  std::size_t width = 4;
  for (const auto& c : report.certificates) width = std::max(width, c.name.size());
  for (const auto& c : report.certificates) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", c.residual);
    os << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.name
       << std::string(width - c.name.size() + 2, ' ') << buf << '\n';
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", report.runtime_ms);
  os << "runtime_ms: " << buf << '\n';
  os << "status: " << (report.all_pass() ? "all certificates pass" : "certificate failure") << '\n';
  return os.str();
}

void write_csv(const Report& report, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot open CSV output '" + path + "'", 0);
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  if (report.kind == "shape") {
    const Json& s = report.result.at("samples");
    f << "t,target,solution,solution_derivative\n";
    for (const auto& row : s) {
      f << num(row[0].get<double>()) << ',' << num(row[1].get<double>()) << ','
        << num(row[2].get<double>()) << ',' << num(row[3].get<double>()) << '\n';
    }
  } else if (report.kind == "quadrature") {
    const Json& nodes = report.result.at("nodes");
    const Json& weights = report.result.at("weights");
    f << "node,weight\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      f << num(nodes[i].get<double>()) << ',' << num(weights[i].get<double>()) << '\n';
    }
  } else {
    throw InputError("--dump-csv is only available for shape and quadrature", 0);
  }
}

}  // namespace conecert::cli
