#include "itlab/serialize.hpp"

#include <fstream>
#include <sstream>

namespace itlab {

namespace {

std::vector<std::string> default_labels(std::size_t k) {
  std::vector<std::string> labels(k);
  for (std::size_t i = 0; i < k; ++i) labels[i] = std::to_string(i);
  return labels;
}

}  // namespace

nlohmann::json to_json(const Simplex& p) {
  return {{"type", "simplex"},
          {"labels", default_labels(p.size())},
          {"mass", p.mass()},
          {"tolerance", kMassTol}};
}

nlohmann::json to_json(const Channel& c) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t x = 0; x < c.input_size(); ++x) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t y = 0; y < c.output_size(); ++y) row.push_back(c(x, y));
    rows.push_back(std::move(row));
  }
  return {{"type", "channel"},
          {"input_labels", default_labels(c.input_size())},
          {"output_labels", default_labels(c.output_size())},
          {"rows", std::move(rows)},
          {"tolerance", kMassTol}};
}

nlohmann::json to_json(const JointLaw& j) {
  return {{"type", "joint"},
          {"shape", {j.nx(), j.ny()}},
          {"mass", j.mass()},  // row-major
          {"tolerance", kMassTol}};
}

nlohmann::json to_json(const EmpiricalType& t) {
  std::vector<std::string> entries;
  entries.reserve(t.counts().size());
  for (std::uint64_t c : t.counts())
    entries.push_back(std::to_string(c) + "/" + std::to_string(t.n()));
  return {{"type", "empirical"}, {"shape", {t.nx(), t.ny()}}, {"n", t.n()}, {"entries", entries}};
}

Simplex simplex_from_json(const nlohmann::json& j) {
  if (j.at("type") != "simplex") throw std::invalid_argument("expected simplex record");
  return Simplex(j.at("mass").get<std::vector<double>>());
}

Channel channel_from_json(const nlohmann::json& j) {
  if (j.at("type") != "channel") throw std::invalid_argument("expected channel record");
  const auto rows = j.at("rows").get<std::vector<std::vector<double>>>();
  if (rows.empty()) throw std::invalid_argument("channel: no rows");
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw std::invalid_argument("channel: ragged rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return Channel(rows.size(), rows.front().size(), std::move(flat));
}

JointLaw joint_from_json(const nlohmann::json& j) {
  if (j.at("type") != "joint") throw std::invalid_argument("expected joint record");
  const auto shape = j.at("shape").get<std::vector<std::size_t>>();
  if (shape.size() != 2) throw std::invalid_argument("joint: bad shape");
  return JointLaw(shape[0], shape[1], j.at("mass").get<std::vector<double>>());
}

EmpiricalType empirical_from_json(const nlohmann::json& j) {
  if (j.at("type") != "empirical") throw std::invalid_argument("expected empirical record");
  const auto shape = j.at("shape").get<std::vector<std::size_t>>();
  const std::uint64_t n = j.at("n").get<std::uint64_t>();
  std::vector<std::uint64_t> counts;
  for (const auto& e : j.at("entries")) {
    const std::string s = e.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("empirical: entry not k/n");
    const std::uint64_t k = std::stoull(s.substr(0, slash));
    if (std::stoull(s.substr(slash + 1)) != n)
      throw std::invalid_argument("empirical: denominator mismatch");
    counts.push_back(k);
  }
  return EmpiricalType(shape.at(0), shape.at(1), n, std::move(counts));
}

std::string serialize_code(const BlockCode& code, const std::map<std::string, std::string>& meta) {
  code.validate();
  std::ostringstream out;
  out << "itlab-code v1\n";
  out << "n " << code.n << "\n";
  out << "M " << code.M() << "\n";
  out << "x_alphabet " << code.x_alphabet << "\n";
  out << "y_alphabet " << code.y_alphabet << "\n";
  for (const auto& [k, v] : meta) out << "meta " << k << "=" << v << "\n";
  for (std::size_t m = 0; m < code.codewords.size(); ++m) {
    out << "codeword " << m;
    for (std::uint8_t s : code.codewords[m]) out << " " << static_cast<int>(s);
    out << "\n";
  }
  out << "encoder";
  std::size_t i = 0;
  while (i < code.encoder.size()) {
    std::size_t run = 1;
    while (i + run < code.encoder.size() && code.encoder[i + run] == code.encoder[i]) ++run;
    out << " " << code.encoder[i] << "*" << run;
    i += run;
  }
  out << "\nend\n";
  return out.str();
}

BlockCode parse_code(const std::string& text, std::map<std::string, std::string>* meta) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "itlab-code v1")
    throw std::invalid_argument("parse_code: bad magic line");
  BlockCode code;
  std::uint64_t M = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "end") break;
    if (tag == "n") {
      ls >> code.n;
    } else if (tag == "M") {
      ls >> M;
    } else if (tag == "x_alphabet") {
      ls >> code.x_alphabet;
    } else if (tag == "y_alphabet") {
      ls >> code.y_alphabet;
    } else if (tag == "meta") {
      std::string kv;
      std::getline(ls, kv);
      const auto eq = kv.find('=');
      if (meta && eq != std::string::npos)
        (*meta)[kv.substr(1, eq - 1)] = kv.substr(eq + 1);
    } else if (tag == "codeword") {
      std::size_t m;
      ls >> m;
      if (code.codewords.size() != m) throw std::invalid_argument("parse_code: codeword order");
      std::vector<std::uint8_t> cw;
      int s;
      while (ls >> s) cw.push_back(static_cast<std::uint8_t>(s));
      code.codewords.push_back(std::move(cw));
    } else if (tag == "encoder") {
      std::string token;
      while (ls >> token) {
        const auto star = token.find('*');
        if (star == std::string::npos) throw std::invalid_argument("parse_code: bad run token");
        const std::uint32_t msg = static_cast<std::uint32_t>(std::stoul(token.substr(0, star)));
        const std::uint64_t run = std::stoull(token.substr(star + 1));
        code.encoder.insert(code.encoder.end(), run, msg);
      }
    } else if (!tag.empty()) {
      throw std::invalid_argument("parse_code: unknown tag " + tag);
    }
  }
  if (code.M() != M) throw std::invalid_argument("parse_code: M mismatch");
  code.validate();
  return code;
}

void save_code(const BlockCode& code, const std::string& path,
               const std::map<std::string, std::string>& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_code: cannot open " + path);
  out << serialize_code(code, meta);
}

BlockCode load_code(const std::string& path, std::map<std::string, std::string>* meta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_code: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_code(buf.str(), meta);
}

}  // namespace itlab
