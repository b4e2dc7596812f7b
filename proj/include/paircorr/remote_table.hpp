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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <regex>
#include <string>

#include "paircorr/errors.hpp"
#include "paircorr/hashing.hpp"
#include "paircorr/zero_table.hpp"

namespace paircorr {

struct CacheEntry {
  std::filesystem::path data;  // <cache_dir>/<sha256(url)>.zeros
  std::filesystem::path meta;  // <cache_dir>/<sha256(url)>.meta
};

inline CacheEntry cache_entry_for(const std::string& url, const std::filesystem::path& cache_dir) {
  const std::string key = sha256_hex(url);
  return {cache_dir / (key + ".zeros"), cache_dir / (key + ".meta")};
}

namespace detail {

struct ParsedUrl {
  std::string scheme_host_port;
  std::string path;
};

inline ParsedUrl split_url(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)", std::regex::icase);
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw DomainError("unsupported URL: " + url);
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

inline std::string download(const std::string& url) {
  const auto parts = split_url(url);
  httplib::Client client(parts.scheme_host_port);
  client.set_follow_location(true);
  client.set_connection_timeout(30);
  client.set_read_timeout(300);
  auto res = client.Get(parts.path);
  if (!res) throw NetworkError("fetch " + url + ": " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw NetworkError("fetch " + url + ": HTTP status " + std::to_string(res->status));
  return res->body;
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detail

/// Downloads `url` into `cache_dir` (or reuses a cached copy), verifies the
/// sha256 when `checksum` is given, and parses the bytes.
///
/// A checksum mismatch removes the cache entry and throws IntegrityError.
inline ZeroTable fetch_remote_table(const std::string& url, const std::filesystem::path& cache_dir,
                                    const std::optional<std::string>& checksum = std::nullopt,
                                    ZeroFormat format = ZeroFormat::ordinates_only) {
  namespace fs = std::filesystem;
  const CacheEntry entry = cache_entry_for(url, cache_dir);

  std::string bytes;
  if (fs::exists(entry.data)) {
    bytes = read_file_bytes(entry.data.string());
  } else {
    bytes = detail::download(url);
    fs::create_directories(cache_dir);
    {
      std::ofstream out(entry.data, std::ios::binary);
      out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
      if (!out) throw Error(ErrorKind::io, "cannot write " + entry.data.string());
    }
    nlohmann::ordered_json meta = {
        {"url", url}, {"fetched_at", detail::utc_timestamp()}, {"checksum", sha256_hex(bytes)}};
    std::ofstream(entry.meta) << meta.dump(2) << '\n';
  }

  const std::string digest = sha256_hex(bytes);
  if (checksum && !checksum->empty() && *checksum != digest) {
    std::error_code ec;
    fs::remove(entry.data, ec);
    fs::remove(entry.meta, ec);
    throw IntegrityError("checksum mismatch for " + url + ": expected " + *checksum + ", got " +
                         digest);
  }
  return parse_zero_text(bytes, format, Provenance{url, digest, false});
}

}  // namespace paircorr
