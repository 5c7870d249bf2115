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

#include "possense/cli/manifest.h"

#include <fstream>
#include <memory>

#include <json.hpp>
#include <openssl/evp.h>

#include "possense/model/errors.h"

namespace possense::cli {

namespace {

class Digest {
 public:
  Digest() : ctx_(EVP_MD_CTX_new(), EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw Error(ErrorCode::kIo, "SHA-256 unavailable");
    }
  }
  void Update(const void* data, std::size_t n) {
    EVP_DigestUpdate(ctx_.get(), data, n);
  }
  std::string Hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), md, &len);
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out += digits[md[i] >> 4];
      out += digits[md[i] & 15];
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, void (*)(EVP_MD_CTX*)> ctx_;
};

}  // namespace

std::string Sha256Hex(std::string_view data) {
  Digest d;
  d.Update(data.data(), data.size());
  return d.Hex();
}

std::string Sha256File(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  Digest d;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) d.Update(buf, static_cast<std::size_t>(in.gcount()));
  }
  return d.Hex();
}

void WriteManifest(const std::filesystem::path& out_dir,
                   const std::string& command,
                   const std::string& canonical_config,
                   const std::vector<std::filesystem::path>& inputs,
                   const std::vector<std::filesystem::path>& outputs) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["config_sha256"] = Sha256Hex(canonical_config);
  j["config"] = canonical_config;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& p : inputs) {
    j["inputs"].push_back(
        {{"name", p.filename().string()}, {"sha256", Sha256File(p)}});
  }
  j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& p : outputs) {
    j["outputs"].push_back(
        {{"name", std::filesystem::relative(p, out_dir).generic_string()},
         {"sha256", Sha256File(p)}});
  }
  const auto path = out_dir / "run_manifest.json";
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace possense::cli
