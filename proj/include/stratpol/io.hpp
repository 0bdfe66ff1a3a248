#pragma once

#include <stdexcept>
#include <string>

#include "stratpol/instance.hpp"

namespace stratpol {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Instance JSON document: keys m, gamma, p, q or reward, cost (numbers or
/// the string "inf"), meta (string-valued object). Round trips losslessly.
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

Instance instance_from_json_text(const std::string& text, const std::string& origin = "<string>");
std::string instance_to_json_text(const Instance& inst);

/// Policy JSON document: {"pi": [...]} plus optional annotations that are
/// preserved on load only as far as the pi vector is concerned.
Policy load_policy(const std::string& path);
void save_policy(const Policy& pol, const std::string& path,
                 const std::map<std::string, double>& annotations = {});

std::string read_text_file(const std::string& path);

}  // namespace stratpol
