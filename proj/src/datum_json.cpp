#include "bc/datum_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& path,
                       const std::string& what) {
  throw ConfigError(source + ": " + path + ": " + what);
}

json parse_root(const std::string& text, const std::string& source) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(source, "$", "malformed JSON");
  if (!j.is_object()) fail(source, "$", "expected an object");
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Rat parse_rat(const json& v, const std::string& source, const std::string& path) {
  if (v.is_number_integer()) return Rat(v.get<long long>());
  if (!v.is_string()) fail(source, path, "expected a rational as \"num/den\" or an integer");
  try {
    return Rat::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    fail(source, path, e.what());
  }
}

}  // namespace

Datum datum_from_json_text(const std::string& text, const std::string& source) {
  const json j = parse_root(text, source);
  for (const auto& [key, value] : j.items()) {
    if (key != "kind" && key != "q" && key != "generators")
      fail(source, "$." + key, "unknown key");
  }

  if (!j.contains("kind")) fail(source, "$.kind", "missing required key");
  if (!j["kind"].is_string()) fail(source, "$.kind", "expected a string");
  Kind kind;
  try {
    kind = kind_from_name(j["kind"].get<std::string>());
  } catch (const std::exception& e) {
    fail(source, "$.kind", e.what());
  }

  long long q = 0;
  if (j.contains("q")) {
    if (!j["q"].is_number_integer()) fail(source, "$.q", "expected an integer");
    q = j["q"].get<long long>();
  }

  std::vector<Rat> gens;
  if (j.contains("generators")) {
    if (kind != Kind::AlgNumModel)
      fail(source, "$.generators", "only algnum_model declares free generators");
    if (!j["generators"].is_array()) fail(source, "$.generators", "expected an array");
    std::size_t i = 0;
    for (const auto& v : j["generators"]) {
      gens.push_back(parse_rat(v, source, "$.generators[" + std::to_string(i) + "]"));
      ++i;
    }
  }

  try {
    return make_datum(kind, q, std::move(gens));
  } catch (const std::exception& e) {
    fail(source, "$", e.what());
  }
}

Datum datum_from_file(const std::string& path) {
  return datum_from_json_text(read_file(path), path);
}

std::string datum_to_json(const Datum& d) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(d.kind);
  if (d.q != 0) j["q"] = d.q;
  if (!d.generators.empty()) {
    auto arr = nlohmann::ordered_json::array();
    for (const Rat& r : d.generators) arr.push_back(r.str());
    j["generators"] = std::move(arr);
  }
  return j.dump();
}

GHom ghom_from_json_text(const std::string& text, const std::string& source) {
  const json j = parse_root(text, source);
  std::map<long long, double> lambda;
  for (const auto& [key, value] : j.items()) {
    long long p = 0;
    try {
      std::size_t used = 0;
      p = std::stoll(key, &used);
      if (used != key.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      fail(source, "$." + key, "expected a prime number key");
    }
    if (!value.is_number()) fail(source, "$." + key, "expected a numeric lambda");
    lambda[p] = value.get<double>();
  }
  try {
    return g_from_primes(lambda);
  } catch (const std::exception& e) {
    fail(source, "$", e.what());
  }
}

GHom ghom_from_file(const std::string& path) {
  return ghom_from_json_text(read_file(path), path);
}

}  // namespace bc
