// Copyright 2026 The paircorr Authors
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

#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "paircorr/zero_table.hpp"

namespace paircorr::testing {

inline std::string data_path(const std::string& name) {
  return std::string(PAIRCORR_DATA_DIR) + "/" + name;
}

/// First 10^5 zeros on the critical line (ordinates to 14 significant digits).
inline const ZeroTable& genuine_table() {
  static const ZeroTable table =
      parse_zero_file(data_path("zeros_1e5.txt"), ZeroFormat::ordinates_only);
  return table;
}

/// Prefix of the genuine table holding its first `n` zeros.
inline ZeroTable genuine_prefix(std::size_t n) {
  const auto& all = genuine_table();
  std::vector<ZetaZero> z(all.zeros().begin(), all.zeros().begin() + n);
  return ZeroTable(std::move(z), all.provenance());
}

class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() / ("paircorr-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string write(const std::string& name, const std::string& contents) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << contents;
    return p.string();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace paircorr::testing
