#include "stratpol/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace stratpol {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

const json& field(const json& doc, const char* key, const std::string& origin) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw IoError(origin + ": missing field '" + key + "'");
  return *it;
}

std::vector<double> number_array(const json& j, const char* key, std::size_t expect,
                                 const std::string& origin) {
  if (!j.is_array() || j.size() != expect)
    throw IoError(origin + ": field '" + key + "' must be an array of length " +
                  std::to_string(expect));
  std::vector<double> out;
  out.reserve(expect);
  for (const auto& v : j) {
    if (!v.is_number()) throw IoError(origin + ": field '" + key + "' has a non-numeric entry");
    out.push_back(v.get<double>());
  }
  return out;
}

json cost_entry_to_json(double c) {
  if (c < kInf) return json(c);
  return json("inf");
}

double cost_entry_from_json(const json& v, const std::string& origin) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && v.get<std::string>() == "inf") return kInf;
  throw IoError(origin + ": cost entries must be numbers or the string \"inf\"");
}

}  // namespace

Instance instance_from_json_text(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(origin + ": " + e.what());
  }
  if (!doc.is_object()) throw IoError(origin + ": top-level value must be an object");

  const auto& m_field = field(doc, "m", origin);
  if (!m_field.is_number_unsigned()) throw IoError(origin + ": 'm' must be a nonnegative integer");
  const auto m = m_field.get<std::size_t>();

  Instance inst;
  const auto& gamma_field = field(doc, "gamma", origin);
  if (!gamma_field.is_number()) throw IoError(origin + ": 'gamma' must be a number");
  inst.gamma = gamma_field.get<double>();
  inst.p = number_array(field(doc, "p", origin), "p", m, origin);

  const bool has_q = doc.contains("q");
  const bool has_reward = doc.contains("reward");
  if (has_q == has_reward) throw IoError(origin + ": exactly one of 'q' / 'reward' is required");
  if (has_q) inst.q = number_array(doc["q"], "q", m, origin);
  if (has_reward) inst.reward = number_array(doc["reward"], "reward", m, origin);

  const auto& cost = field(doc, "cost", origin);
  if (!cost.is_array() || cost.size() != m)
    throw IoError(origin + ": 'cost' must be an array of " + std::to_string(m) + " rows");
  inst.cost.reserve(m * m);
  for (const auto& row : cost) {
    if (!row.is_array() || row.size() != m)
      throw IoError(origin + ": 'cost' rows must have length " + std::to_string(m));
    for (const auto& v : row) inst.cost.push_back(cost_entry_from_json(v, origin));
  }

  if (doc.contains("meta")) {
    const auto& meta = doc["meta"];
    if (!meta.is_object()) throw IoError(origin + ": 'meta' must be an object");
    for (const auto& [key, value] : meta.items())
      inst.meta[key] = value.is_string() ? value.get<std::string>() : value.dump();
  }
  return inst;
}

std::string instance_to_json_text(const Instance& inst) {
  const std::size_t m = inst.size();
  json doc;
  doc["m"] = m;
  doc["gamma"] = inst.gamma;
  doc["p"] = inst.p;
  if (inst.q) doc["q"] = *inst.q;
  if (inst.reward) doc["reward"] = *inst.reward;
  json cost = json::array();
  for (std::size_t i = 0; i < m; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m; ++j) row.push_back(cost_entry_to_json(inst.cost_at(i, j)));
    cost.push_back(std::move(row));
  }
  doc["cost"] = std::move(cost);
  doc["meta"] = json::object();
  for (const auto& [key, value] : inst.meta) doc["meta"][key] = value;
  return doc.dump(2) + "\n";
}

Instance load_instance(const std::string& path) {
  return instance_from_json_text(read_text_file(path), path);
}

void save_instance(const Instance& inst, const std::string& path) {
  write_text_file(path, instance_to_json_text(inst));
}

Policy load_policy(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("pi") || !doc["pi"].is_array())
    throw IoError(path + ": expected an object with a 'pi' array");
  Policy pol;
  for (const auto& v : doc["pi"]) {
    if (!v.is_number()) throw IoError(path + ": 'pi' has a non-numeric entry");
    pol.pi.push_back(v.get<double>());
  }
  return pol;
}

void save_policy(const Policy& pol, const std::string& path,
                 const std::map<std::string, double>& annotations) {
  json doc;
  doc["pi"] = pol.pi;
  for (const auto& [key, value] : annotations) doc[key] = value;
  write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace stratpol
