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

// Per-command run settings. Values come from built-in defaults, then a config
// file, then command-line flags. Config files are either INI-style
//
//   # comment
//   [train]
//   epochs = 40
//
// (only the section named after the command is read) or a JSON run report
// written by an earlier invocation, whose "config" object is replayed.

#ifndef NGM_TOOLS_CLI_CONFIG_H_
#define NGM_TOOLS_CLI_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace ngm::cli {

struct KeySpec {
  std::string name;
  std::string default_value;
  std::string help;
};

class RunConfig {
 public:
  RunConfig(std::string command, std::vector<KeySpec> keys);

  const std::string& command() const { return command_; }
  const std::vector<KeySpec>& keys() const { return keys_; }

  // Throws kInvalidConfig for keys the command does not know.
  void Set(const std::string& key, const std::string& value);
  void MergeFile(const std::string& path);

  const std::string& Get(const std::string& key) const;
  bool Has(const std::string& key) const { return !Get(key).empty(); }
  int GetInt(const std::string& key) const;
  std::uint64_t GetUint64(const std::string& key) const;
  double GetDouble(const std::string& key) const;
  bool GetBool(const std::string& key) const;
  std::vector<int> GetIntList(const std::string& key) const;
  // Throws kInvalidConfig when the key is empty.
  const std::string& Require(const std::string& key) const;

  // Every key with its effective value, in declaration order.
  nlohmann::ordered_json ToJson() const;

 private:
  void MergeIni(const std::string& path, const std::string& text);
  void MergeJson(const std::string& path, const std::string& text);

  std::string command_;
  std::vector<KeySpec> keys_;
  std::map<std::string, std::string> values_;
};

}  // namespace ngm::cli

#endif  // NGM_TOOLS_CLI_CONFIG_H_
