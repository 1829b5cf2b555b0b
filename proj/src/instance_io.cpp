#include "lpbal/instance_io.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "lpbal/errors.hpp"
#include "lpbal/norms.hpp"

namespace lpbal {

namespace {

using nlohmann::json;

json exponent_to_json(double p) {
  if (p == kInfinity) {
    return "inf";
  }
  return p;
}

double exponent_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") {
    return kInfinity;
  }
  if (j.is_number()) {
    return j.get<double>();
  }
  throw ParseError("instance: analytic_opt_p must be a number or \"inf\"");
}

void position_of(const std::string& text, std::size_t byte, std::size_t& line,
                 std::size_t& column) {
  line = 1;
  column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

double entry_at(const json& value, std::size_t job, std::size_t row, std::size_t col) {
  if (!value.is_number()) {
    throw ParseError("instance: jobs[" + std::to_string(job) + "][" + std::to_string(row) + "][" +
                     std::to_string(col) + "] is not a number");
  }
  const double x = value.get<double>();
  if (!(x >= 0.0 && x <= 1.0)) {
    throw RangeError("instance: jobs[" + std::to_string(job) + "][" + std::to_string(row) + "][" +
                     std::to_string(col) + "] = " + value.dump() + " outside [0,1]");
  }
  return x;
}

Instance from_json(const json& doc) {
  if (!doc.is_object()) {
    throw ParseError("instance: top level must be an object");
  }
  if (!doc.contains("m") || !doc["m"].is_number_unsigned() || doc["m"].get<std::size_t>() < 1) {
    throw ParseError("instance: missing or invalid field \"m\"");
  }
  if (!doc.contains("jobs") || !doc["jobs"].is_array()) {
    throw ParseError("instance: missing or invalid field \"jobs\"");
  }
  Instance inst;
  inst.m = doc["m"].get<std::size_t>();
  const json& jobs = doc["jobs"];
  for (std::size_t t = 0; t < jobs.size(); ++t) {
    const json& rows = jobs[t];
    if (!rows.is_array() || rows.size() != inst.m) {
      throw ParseError("instance: jobs[" + std::to_string(t) + "] must have m rows");
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < inst.m; ++i) {
      if (!rows[i].is_array() || rows[i].empty() || (i > 0 && rows[i].size() != k)) {
        throw ParseError("instance: jobs[" + std::to_string(t) + "] rows must be equal-length non-empty arrays");
      }
      k = rows[i].size();
    }
    std::vector<std::vector<double>> cols(k, std::vector<double>(inst.m));
    for (std::size_t i = 0; i < inst.m; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        cols[j][i] = entry_at(rows[i][j], t, i, j);
      }
    }
    inst.jobs.emplace_back(std::move(cols));
  }
  if (doc.contains("analytic_opt")) {
    if (!doc["analytic_opt"].is_number() || doc["analytic_opt"].get<double>() < 0.0) {
      throw ParseError("instance: analytic_opt must be a nonnegative number");
    }
    if (!doc.contains("analytic_opt_p")) {
      throw ParseError("instance: analytic_opt requires analytic_opt_p");
    }
    AnalyticOpt opt;
    opt.value = doc["analytic_opt"].get<double>();
    opt.p = exponent_from_json(doc["analytic_opt_p"]);
    if (doc.contains("provenance")) {
      if (!doc["provenance"].is_string()) {
        throw ParseError("instance: provenance must be a string");
      }
      opt.provenance = doc["provenance"].get<std::string>();
    }
    inst.analytic_opt = std::move(opt);
  }
  return inst;
}

json to_json(const Instance& inst) {
  json doc;
  doc["m"] = inst.m;
  json jobs = json::array();
  for (const auto& job : inst.jobs) {
    json rows = json::array();
    for (std::size_t i = 0; i < job.m(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < job.k(); ++j) {
        row.push_back(job.at(i, j));
      }
      rows.push_back(std::move(row));
    }
    jobs.push_back(std::move(rows));
  }
  doc["jobs"] = std::move(jobs);
  if (inst.analytic_opt) {
    doc["analytic_opt"] = inst.analytic_opt->value;
    doc["analytic_opt_p"] = exponent_to_json(inst.analytic_opt->p);
    doc["provenance"] = inst.analytic_opt->provenance;
  }
  return doc;
}

}  // namespace

std::string instance_to_string(const Instance& inst) { return to_json(inst).dump() + "\n"; }

Instance instance_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 0;
    std::size_t column = 0;
    position_of(text, e.byte, line, column);
    throw ParseError("instance: " + std::string(e.what()), line, column);
  }
  return from_json(doc);
}

void write_instance(std::ostream& os, const Instance& inst) {
  os << instance_to_string(inst);
  if (!os) {
    throw IoError("write_instance: stream error");
  }
}

void write_instance(const std::filesystem::path& path, const Instance& inst) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw IoError("write_instance: cannot open " + path.string());
  }
  write_instance(os, inst);
}

Instance read_instance(std::istream& is) {
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return instance_from_string(text);
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw IoError("read_instance: cannot open " + path.string());
  }
  return read_instance(is);
}

}  // namespace lpbal
