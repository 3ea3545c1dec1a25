// Copyright 2026 The NGM Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/config.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ngm/error.h"
#include "ngm/graph_io.h"

namespace ngm::cli {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void BadValue(const std::string& key, const std::string& value,
                           const char* what) {
  Fail(ErrorCode::kInvalidConfig,
       "key '" + key + "': '" + value + "' is not " + what);
}

}  // namespace

RunConfig::RunConfig(std::string command, std::vector<KeySpec> keys)
    : command_(std::move(command)), keys_(std::move(keys)) {
  for (const KeySpec& k : keys_) values_[k.name] = k.default_value;
}

void RunConfig::Set(const std::string& key, const std::string& value) {
  auto it = values_.find(key);
  if (it == values_.end()) {
    Fail(ErrorCode::kInvalidConfig,
         "unknown key '" + key + "' for command '" + command_ + "'");
  }
  it->second = value;
}

void RunConfig::MergeFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kData, "cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    MergeJson(path, text);
  } else {
    MergeIni(path, text);
  }
}

void RunConfig::MergeIni(const std::string& path, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string section;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = Trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const std::string where = path + ":" + std::to_string(number) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') Fail(ErrorCode::kParse, where + "unterminated section");
      section = Trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) Fail(ErrorCode::kParse, where + "expected key = value");
    if (section.empty()) {
      Fail(ErrorCode::kParse, where + "key outside of a [command] section");
    }
    if (section != command_) continue;
    const std::string key = Trim(line.substr(0, eq));
    try {
      Set(key, Trim(line.substr(eq + 1)));
    } catch (const Error& e) {
      Fail(ErrorCode::kInvalidConfig, where + e.message());
    }
  }
}

void RunConfig::MergeJson(const std::string& path, const std::string& text) {
  nlohmann::json report;
  try {
    report = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, path + ": " + e.what());
  }
  if (!report.contains("command") || report["command"] != command_) {
    Fail(ErrorCode::kInvalidConfig, path + ": report was not written by '" +
                                        command_ + "'");
  }
  if (!report.contains("config") || !report["config"].is_object()) {
    Fail(ErrorCode::kInvalidConfig, path + ": report has no config object");
  }
  for (const auto& [key, value] : report["config"].items()) {
    if (!value.is_string()) {
      Fail(ErrorCode::kInvalidConfig, path + ": config value of '" + key +
                                          "' is not a string");
    }
    Set(key, value.get<std::string>());
  }
}

const std::string& RunConfig::Get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    Fail(ErrorCode::kInternal, "command '" + command_ + "' has no key '" + key + "'");
  }
  return it->second;
}

const std::string& RunConfig::Require(const std::string& key) const {
  const std::string& value = Get(key);
  if (value.empty()) {
    Fail(ErrorCode::kInvalidConfig, "'" + command_ + "' needs --" + key);
  }
  return value;
}

int RunConfig::GetInt(const std::string& key) const {
  const std::string& v = Get(key);
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    BadValue(key, v, "an integer");
  }
  return out;
}

std::uint64_t RunConfig::GetUint64(const std::string& key) const {
  const std::string& v = Get(key);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    BadValue(key, v, "an unsigned integer");
  }
  return out;
}

double RunConfig::GetDouble(const std::string& key) const {
  const std::string& v = Get(key);
  try {
    return ParseDouble(v);
  } catch (const Error&) {
    BadValue(key, v, "a number");
  }
}

bool RunConfig::GetBool(const std::string& key) const {
  const std::string& v = Get(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  BadValue(key, v, "a boolean");
}

std::vector<int> RunConfig::GetIntList(const std::string& key) const {
  const std::string& v = Get(key);
  std::vector<int> out;
  if (Trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    int x = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      BadValue(key, v, "a comma-separated integer list");
    }
    out.push_back(x);
  }
  return out;
}

nlohmann::ordered_json RunConfig::ToJson() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const KeySpec& k : keys_) j[k.name] = values_.at(k.name);
  return j;
}

}  // namespace ngm::cli
