// Copyright 2026 The possense Authors.
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

#ifndef POSSENSE_CLI_MANIFEST_H_
#define POSSENSE_CLI_MANIFEST_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace possense::cli {

inline constexpr const char* kVersion = "0.1.0";

std::string Sha256Hex(std::string_view data);
std::string Sha256File(const std::filesystem::path& path);

// run_manifest.json: command, version, config hash and text, plus the
// SHA-256 of every input and output. Inputs are listed by file name and
// outputs relative to out_dir, so bundles written to different directories
// compare equal. No timestamps.
void WriteManifest(const std::filesystem::path& out_dir,
                   const std::string& command,
                   const std::string& canonical_config,
                   const std::vector<std::filesystem::path>& inputs,
                   const std::vector<std::filesystem::path>& outputs);

}  // namespace possense::cli

#endif  // POSSENSE_CLI_MANIFEST_H_
