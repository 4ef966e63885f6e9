#ifndef NKRANK_TOOLS_REPORT_HPP
#define NKRANK_TOOLS_REPORT_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "json.hpp"

namespace nkrank::cli {

inline constexpr int report_version = 1;

struct Verdict {
  std::string check;
  std::string statement;
  bool pass = false;
  std::optional<std::string> witness;
};

/// Everything a command prints. Field order is insertion order, so output is
/// a pure function of the invocation.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Verdict> verdicts;
  std::vector<std::pair<std::string, std::string>> numbers;
  std::optional<std::uint64_t> seed;

  void param(std::string key, std::string value) { parameters.emplace_back(std::move(key), std::move(value)); }
  void number(std::string key, std::string value) { numbers.emplace_back(std::move(key), std::move(value)); }
  void number(std::string key, const char* value) { numbers.emplace_back(std::move(key), value); }
  template <class Int>
    requires std::is_integral_v<Int>
  void number(std::string key, Int value) {
    numbers.emplace_back(std::move(key), std::to_string(value));
  }
  Verdict& verdict(std::string check, std::string statement, bool pass,
                   std::optional<std::string> witness = std::nullopt) {
    verdicts.push_back({std::move(check), std::move(statement), pass, std::move(witness)});
    return verdicts.back();
  }
  bool all_pass() const {
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }
};

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["version"] = report_version;
  j["command"] = r.command;
  j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) j["parameters"][k] = v;
  j["verdicts"] = nlohmann::ordered_json::array();
  for (const auto& v : r.verdicts) {
    nlohmann::ordered_json e;
    e["check"] = v.check;
    e["statement"] = v.statement;
    e["pass"] = v.pass;
    if (v.witness) e["witness"] = *v.witness;
    j["verdicts"].push_back(std::move(e));
  }
  j["numbers"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.numbers) j["numbers"][k] = v;
  if (r.seed)
    j["seed"] = std::to_string(*r.seed);
  else
    j["seed"] = nullptr;
  return j;
}

inline void write_text(std::ostream& os, const Report& r) {
  os << "command: " << r.command << '\n';
  for (const auto& [k, v] : r.parameters) os << "  " << k << " = " << v << '\n';
  if (r.seed) os << "seed: " << *r.seed << '\n';
  for (const auto& v : r.verdicts) {
    os << (v.pass ? "PASS " : "FAIL ") << v.check << " [" << v.statement << "]";
    if (v.witness) os << "  witness: " << *v.witness;
    os << '\n';
  }
  if (!r.numbers.empty()) os << "numbers:\n";
  for (const auto& [k, v] : r.numbers) os << "  " << k << " = " << v << '\n';
}

}  // namespace nkrank::cli

#endif  // NKRANK_TOOLS_REPORT_HPP
