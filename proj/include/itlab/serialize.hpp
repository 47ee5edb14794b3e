#pragma once

#include <map>
#include <string>

#include "itlab/codes.hpp"
#include "itlab/distributions.hpp"

#include "json.hpp"

namespace itlab {

// Law serialization: JSON with alphabet labels, row-major mass arrays and the
// declared construction tolerance. EmpiricalType entries are exact "k/n".
nlohmann::json to_json(const Simplex& p);
nlohmann::json to_json(const Channel& c);
nlohmann::json to_json(const JointLaw& j);
nlohmann::json to_json(const EmpiricalType& t);

Simplex simplex_from_json(const nlohmann::json& j);
Channel channel_from_json(const nlohmann::json& j);
JointLaw joint_from_json(const nlohmann::json& j);
EmpiricalType empirical_from_json(const nlohmann::json& j);

// Block-code text format: header (n, M, alphabets, reproducibility metadata),
// codeword list, then the encoder as a run-length table "msg*count" keyed by
// lexicographic block index.
std::string serialize_code(const BlockCode& code,
                           const std::map<std::string, std::string>& meta = {});
BlockCode parse_code(const std::string& text,
                     std::map<std::string, std::string>* meta = nullptr);

void save_code(const BlockCode& code, const std::string& path,
               const std::map<std::string, std::string>& meta = {});
BlockCode load_code(const std::string& path, std::map<std::string, std::string>* meta = nullptr);

}  // namespace itlab
